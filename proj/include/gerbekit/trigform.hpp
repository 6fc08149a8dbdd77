#pragma once

#include <array>
#include <complex>
#include <cstdint>
#include <vector>

#include "json.hpp"

namespace gerbekit {

using cd = std::complex<double>;

inline constexpr int kMaxDim = 8;

using Freq = std::array<int, kMaxDim>;

// A term c * exp(i k.x) dx_{axes}. Axes are kept as a bitmask, which is the
// strictly increasing index list in disguise.
struct Term {
    Freq freq{};
    std::uint32_t axes = 0;
    cd coef{};
};

class TrigForm {
public:
    TrigForm() = default;
    TrigForm(int ambient_dim, int degree);

    static TrigForm zero(int ambient_dim, int degree) { return TrigForm(ambient_dim, degree); }
    static TrigForm constant(int ambient_dim, cd value);
    // c * exp(i k.x) dx_{axes}; axes must be strictly increasing.
    static TrigForm monomial(int ambient_dim, const std::vector<int>& freq,
                             const std::vector<int>& axes, cd c);

    int ambient_dim() const { return n_; }
    int degree() const { return p_; }
    const std::vector<Term>& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }

    // Adds a term, merging with an existing key; call normalize() afterwards
    // when many raw terms were pushed.
    void add_term(const Freq& k, std::uint32_t axes, cd c);
    void push_raw(const Term& t) { terms_.push_back(t); }
    void normalize();

    double max_abs() const;
    bool is_hermitian(double tol = 1e-12) const;
    cd evaluate_coefficient(std::uint32_t axes, const std::vector<double>& x) const;

    TrigForm& operator+=(const TrigForm& o);
    TrigForm& operator-=(const TrigForm& o);
    TrigForm& operator*=(cd s);
    friend TrigForm operator+(TrigForm a, const TrigForm& b) { return a += b; }
    friend TrigForm operator-(TrigForm a, const TrigForm& b) { return a -= b; }
    friend TrigForm operator*(cd s, TrigForm a) { return a *= s; }
    friend TrigForm operator*(TrigForm a, cd s) { return a *= s; }
    TrigForm operator-() const;

private:
    int n_ = 0;
    int p_ = 0;
    std::vector<Term> terms_;
};

std::vector<int> axes_list(std::uint32_t mask);
std::uint32_t axes_mask(const std::vector<int>& axes);
int popcount(std::uint32_t m);
// Sign of the permutation sorting the concatenation (a, b) of two disjoint
// axis sets.
int merge_sign(std::uint32_t a, std::uint32_t b);

TrigForm wedge(const TrigForm& a, const TrigForm& b);
TrigForm exterior_d(const TrigForm& a);
cd integrate_torus(const TrigForm& a);

// Oriented cells of dimension 0, 1 or 2, given by vertices in the coordinates
// of the axes they live in. A 2-cell is a polygon whose vertex order fixes the
// orientation (counterclockwise = positive w.r.t. the two axes in order);
// a 1-cell runs from points[0] to points[1]; a 0-cell is a point with sign.
struct Cell {
    int dim = 0;
    std::vector<std::array<double, 2>> points;
    int sign = 1;
};

// Integrates over a cell lying in the coordinate axes `cell_axes` (size 1 or
// 2 for the point coordinates; a 0-cell uses the same convention). The result
// is a form on the remaining axes, with the cell axes moved to the right before
// integrating.
TrigForm integrate_over_cell(const TrigForm& a, const Cell& cell, const std::vector<int>& cell_axes);
// Integrates a form of degree cell.dim over a cell in T^1 or T^2 (all axes).
cd integrate_cell(const TrigForm& a, const Cell& cell);

TrigForm fiber_integrate_global(const TrigForm& a, const std::vector<int>& fiber_axes);

class AffineTorusMap {
public:
    AffineTorusMap(int source_dim, int target_dim, const std::vector<std::vector<double>>& linear,
                   std::vector<double> shift);
    static AffineTorusMap identity(int dim);

    int source_dim() const { return src_; }
    int target_dim() const { return tgt_; }
    int linear(int row, int col) const { return lin_[row][col]; }
    double shift(int row) const { return shift_[row]; }

    // (this o inner)(x) = this(inner(x))
    AffineTorusMap compose(const AffineTorusMap& inner) const;

private:
    int src_, tgt_;
    std::vector<std::vector<int>> lin_;
    std::vector<double> shift_;
};

TrigForm pullback(const TrigForm& a, const AffineTorusMap& m);

nlohmann::json to_json(const TrigForm& a);
TrigForm trigform_from_json(const nlohmann::json& j);

}  // namespace gerbekit
