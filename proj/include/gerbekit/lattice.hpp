#pragma once

#include <Eigen/Dense>
#include <functional>
#include <map>
#include <string>
#include <vector>

namespace gerbekit {

using LatticeVector = std::vector<long long>;
using IntMatrix = Eigen::Matrix<long long, Eigen::Dynamic, Eigen::Dynamic>;

// Positive-definite integral lattice given by its Gram matrix in a fixed
// basis. The optional frame holds the basis vectors in orthonormal coordinates
// scaled by `frame_scale` (so that frame / frame_scale is the real basis).
class IntegralLattice {
public:
    IntegralLattice(std::string name, IntMatrix gram);
    IntegralLattice(std::string name, IntMatrix gram, IntMatrix frame, long long frame_scale);

    const std::string& name() const { return name_; }
    int rank() const { return int(gram_.rows()); }
    const IntMatrix& gram() const { return gram_; }
    bool has_frame() const { return frame_.size() > 0; }
    const IntMatrix& frame() const { return frame_; }
    long long frame_scale() const { return scale_; }

    long long inner(const LatticeVector& u, const LatticeVector& v) const;
    long long norm(const LatticeVector& v) const { return inner(v, v); }
    long long determinant() const;
    bool is_even() const;
    // Orthonormal coordinates of a lattice vector, times frame_scale.
    std::vector<long long> scaled_coordinates(const LatticeVector& v) const;

private:
    std::string name_;
    IntMatrix gram_;
    IntMatrix frame_;
    long long scale_ = 1;
};

// e8, e8e8, d16plus, spin16_coroot (and a1 for the rank-one root lattice).
IntegralLattice builtin(const std::string& name);

// Visit every vector of norm <= max_norm (Fincke-Pohst on the Cholesky
// factor). Work is split over the range of the last coordinate across
// GERBEKIT_THREADS threads; the visitor for each slice runs on one thread.
void for_each_vector(const IntegralLattice& L, long long max_norm,
                     const std::function<void(const LatticeVector&, long long)>& visit);
// Deterministic variant for reductions: the vectors are split into
// vector_slices(L, max_norm) slices, and all calls for one slice happen in a
// fixed order on a single thread.
std::size_t vector_slices(const IntegralLattice& L, long long max_norm);
void for_each_vector_in_slices(const IntegralLattice& L, long long max_norm,
                               const std::function<void(std::size_t, const LatticeVector&, long long)>& visit);
std::map<long long, std::vector<LatticeVector>> enumerate_by_norm(const IntegralLattice& L, long long max_norm);
std::map<long long, long long> count_by_norm(const IntegralLattice& L, long long max_norm);

std::vector<LatticeVector> roots(const IntegralLattice& L);
LatticeVector reflect(const IntegralLattice& L, const LatticeVector& root, const LatticeVector& v);

struct Rational {
    long long num = 0, den = 1;
    bool operator==(const Rational& o) const { return num * o.den == o.num * den; }
};

// c with sum_r <r, z1><r, z2> = 2 c <z1, z2> over basis pairs.
Rational coxeter_from_roots(const IntegralLattice& L);

// Doubling map from spin16_coroot (coordinates in its basis) to e8.
LatticeVector spin16_embedding(const LatticeVector& v);
// Orthonormal weight coordinates x_1..x_8 of a spin16_coroot vector.
std::vector<long long> spin16_weights(const LatticeVector& v);

struct WeightIdentityResult {
    // max over basis pairs of |sum over the 16 weights +-x_i of w(a) w(b) - 2 <a, b>|
    long long residual = 0;
    // max over basis pairs of |2 sum_i x_i(a) x_i(b) - <a, b>| with <,> the lattice form
    long long literal_residual = 0;
};
WeightIdentityResult weight_identity_check();

long long weyl_order_e8();
long long weyl_order_d8();
long long weyl_index_arithmetic();

struct AnomalyExponents {
    long long alpha = 0, beta = 0, r = 0, n = 0;
    bool holds() const { return alpha * (n + 22) == r + beta; }
};
AnomalyExponents anomaly_exponents(const std::string& which);

}  // namespace gerbekit
