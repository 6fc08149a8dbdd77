#pragma once

#include <complex>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "gerbekit/lattice.hpp"

namespace gerbekit {

using cplx = std::complex<double>;

constexpr double kTauMin = 0.05;
constexpr double kDefaultSeriesTol = 1e-12;
constexpr long long kCoxeterG = 30;
constexpr long long kDimG = 496;

// A point (tau, z) of H x (C tensor Lambda). z holds coordinates in the lattice
// basis; the U(1) model uses a single coordinate u = z[0].
struct ModuliPoint {
    cplx tau;
    std::vector<cplx> z;
};

struct SElement {
    long long a = 1, b = 0, c = 0, d = 1;
};
struct TElement {
    LatticeVector q1, q2;
};
struct WElement {
    IntMatrix m;
};
using Generator = std::variant<SElement, TElement, WElement>;

// A word g_1 g_2 ... g_k acting right to left: g_k is applied first. The empty
// word is the identity.
class GroupElement {
public:
    GroupElement() = default;
    static GroupElement identity() { return {}; }
    static GroupElement S(long long a, long long b, long long c, long long d);
    static GroupElement T(LatticeVector q1, LatticeVector q2);
    // Checks that m is an integer isometry of L.
    static GroupElement W(const IntMatrix& m, const IntegralLattice& L);
    static GroupElement from_generators(std::vector<Generator> word);

    const std::vector<Generator>& word() const { return word_; }
    bool is_identity() const { return word_.empty(); }
    bool is_generator() const { return word_.size() == 1; }
    // Product of the SL2 parts (the image in SL2(Z)).
    SElement sl2() const;

    friend GroupElement operator*(const GroupElement& g, const GroupElement& h);

private:
    std::vector<Generator> word_;
};

GroupElement weyl_reflection(const IntegralLattice& L, const LatticeVector& root);
// The generators (0,-1,1,0) and (1,1,0,1) of SL2(Z).
GroupElement s_inversion();
GroupElement s_shift();

// Throws std::invalid_argument when the image has Im tau < tau_min.
ModuliPoint act(const GroupElement& g, const ModuliPoint& x, double tau_min = kTauMin);

cplx eta(cplx tau, double tol = kDefaultSeriesTol);
// chi(m) = eta(m tau0) / (sqrt(c tau0 + d) eta(tau0)) with the principal root.
// Throws if the measured value is not a 24th root of unity to 1e-9.
cplx eta_multiplier(const SElement& m);
cplx eta_multiplier(const GroupElement& g);
// The unrounded quotient eta(m tau0) / (sqrt(c tau0 + d) eta(tau0)).
cplx eta_multiplier_at(const SElement& m, cplx tau0);

cplx theta1(cplx tau, cplx u, double tol = kDefaultSeriesTol);
// theta1 / eta.
cplx det_section(cplx tau, cplx u, double tol = kDefaultSeriesTol);

struct ThetaResult {
    cplx value;
    long long terms_summed = 0;
    double tol_used = 0;
    long long max_norm = -1;  // enumeration cutoff, -1 for the coset product
};

enum class ThetaMethod { Auto, Enumerate, CosetProduct };

// Theta_L(tau, z) = sum_gamma exp(pi i (2<z, gamma> + tau <gamma, gamma>)).
// Auto uses the coset product for the builtin lattices with a frame and
// enumeration otherwise. Enumeration throws when the cutoff needed for `tol`
// exceeds `max_vectors`.
ThetaResult theta_lattice(const IntegralLattice& L, cplx tau, const std::vector<cplx>& z,
                          double tol = kDefaultSeriesTol, ThetaMethod method = ThetaMethod::Auto,
                          long long max_vectors = 20000000);
// Smallest norm cutoff R whose lattice-point tail bound is below tol.
long long theta_cutoff(const IntegralLattice& L, cplx tau, const std::vector<cplx>& z, double tol);

// Theta_L / eta^16 for a rank-16 lattice.
ThetaResult character(const IntegralLattice& L, cplx tau, const std::vector<cplx>& z,
                      double tol = kDefaultSeriesTol);

enum class FamilyName { Char, DetU1, Ad, Rho, AnomalyAd, AnomalyRho };

struct AutomorphyFamily {
    FamilyName name;
    IntegralLattice lattice;
};

FamilyName family_from_string(const std::string& s);
std::string to_string(FamilyName f);
// Default model per family: char/ad/anomaly_ad on e8e8, rho/anomaly_rho on
// spin16_coroot, det_u1 on the rank-one model with Gram [[1]].
AutomorphyFamily make_family(FamilyName name);
AutomorphyFamily make_family(FamilyName name, IntegralLattice lattice);
IntegralLattice u1_model();

// phi_g(x); words use phi_{gh}(x) = phi_g(h x) phi_h(x).
cplx factor(const AutomorphyFamily& fam, const GroupElement& g, const ModuliPoint& x);
// A logarithm of phi_g(x). The scale-30 families overflow doubles at moderate
// translations, so comparisons go through this.
cplx log_factor(const AutomorphyFamily& fam, const GroupElement& g, const ModuliPoint& x);
// Relative defect |phi_g(h x) phi_h(x) / phi_{gh}(x) - 1| when gh is again a
// single generator of the same kind (T.T, S.S, W.W); nullopt otherwise.
std::optional<double> cocycle_defect(const AutomorphyFamily& fam, const GroupElement& g, const GroupElement& h,
                                     const ModuliPoint& x);

enum class Section { Character, DetSection };

// |F(g x) - phi_g(x) F(x)| relative to the larger of the two sides. Throws if
// |F(x)| < 1e-12.
double transform_defect(Section F, const AutomorphyFamily& fam, const GroupElement& g, const ModuliPoint& x,
                        double tol = kDefaultSeriesTol);

struct ExtraMultiplier {
    cplx value;
    double spread = 0;  // max deviation across the sample points
};
// F(g x) / (phi^char_g(x) F(x)) with F the character of L, at 10 fixed points.
// Throws if the ratio varies by more than 1e-8.
ExtraMultiplier measure_extra_multiplier(const IntegralLattice& L, const GroupElement& g);

// Smallest k in [1, max_order] with |w^k - 1| <= tol, or 0.
int root_of_unity_order(cplx w, int max_order = 720, double tol = 1e-9);

}  // namespace gerbekit
