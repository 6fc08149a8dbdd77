#include "gerbekit/modform.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "gerbekit/random.hpp"

namespace gerbekit {

namespace {

constexpr double kPi = 3.14159265358979323846;
const cplx kI(0.0, 1.0);

void check_sl2(const SElement& m) {
    if (m.a * m.d - m.b * m.c != 1) throw std::invalid_argument("S element must have determinant 1");
}

SElement mul(const SElement& x, const SElement& y) {
    return {x.a * y.a + x.b * y.c, x.a * y.b + x.b * y.d, x.c * y.a + x.d * y.c, x.c * y.b + x.d * y.d};
}

cplx mobius(const SElement& m, cplx tau) { return (double(m.a) * tau + double(m.b)) / (double(m.c) * tau + double(m.d)); }

cplx bilinear(const IntegralLattice& L, const std::vector<cplx>& u, const std::vector<cplx>& v) {
    const auto& G = L.gram();
    cplx s = 0;
    for (int i = 0; i < L.rank(); ++i)
        for (int j = 0; j < L.rank(); ++j)
            if (G(i, j)) s += u[i] * double(G(i, j)) * v[j];
    return s;
}

std::vector<cplx> to_complex(const LatticeVector& v) { return {v.begin(), v.end()}; }

// sum over n in Z + c of exp(pi i (tau n^2 + 2 n w)), summed outward from the
// largest term until terms drop below rel * (largest term).
cplx gauss_sum(cplx tau, cplx w, double c, double rel, long long& terms) {
    const double t = tau.imag();
    const double centre = -w.imag() / t;
    const double n0 = c + std::round(centre - c);
    auto term = [&](double n) { return std::exp(kI * kPi * (tau * n * n + 2.0 * n * w)); };
    auto logmag = [&](double n) { return -kPi * t * n * n - 2.0 * kPi * n * w.imag(); };
    const double top = logmag(n0);
    const double cut = top + std::log(rel);
    cplx s = term(n0);
    ++terms;
    for (int dir : {1, -1}) {
        for (double n = n0 + dir;; n += dir) {
            if (logmag(n) < cut && (n - centre) * dir > 0) break;
            s += term(n);
            ++terms;
        }
    }
    return s;
}

double series_rel(double tol) { return std::max(tol * 1e-3, 1e-18); }

int chi_index(const SElement& m);

cplx chi_power(const SElement& m, long long p) {
    if (p == 0) return 1.0;
    long long k = ((long long)chi_index(m) * p) % 24;
    if (k < 0) k += 24;
    return std::polar(1.0, 2.0 * kPi * double(k) / 24.0);
}

cplx eta_unchecked(cplx tau, double tol) {
    const cplx q = std::exp(2.0 * kPi * kI * tau);
    const double aq = std::abs(q);
    long long M = 1;
    if (aq > 0) {
        double need = std::log(tol * (1.0 - aq) / 2.0) / std::log(aq);
        M = std::max<long long>(1, (long long)std::ceil(need));
    }
    cplx prod = 1.0, qm = 1.0;
    for (long long m = 1; m <= M; ++m) {
        qm *= q;
        prod *= 1.0 - qm;
    }
    return std::exp(kPi * kI * tau / 12.0) * prod;
}

int chi_index(const SElement& m) {
    check_sl2(m);
    cplx t0(0.0, 1.3);
    if (mobius(m, t0).imag() < kTauMin && m.c != 0)
        t0 = cplx(-double(m.d) / double(m.c), 1.0 / std::abs(double(m.c)));
    cplx chi = eta_multiplier_at(m, t0);
    double arg = std::arg(chi) * 24.0 / (2.0 * kPi);
    int k = int(std::lround(arg));
    cplx snapped = std::polar(1.0, 2.0 * kPi * k / 24.0);
    if (std::abs(chi - snapped) > 1e-9)
        throw std::runtime_error("eta multiplier is not a 24th root of unity (branch error)");
    return ((k % 24) + 24) % 24;
}

enum class CosetKind { None, E8Type, E8E8, D8 };

CosetKind coset_kind(const IntegralLattice& L) {
    static const char* names[] = {"e8", "d16plus", "e8e8", "spin16_coroot"};
    for (const char* nm : names) {
        if (L.name() != nm || !L.has_frame()) continue;
        IntegralLattice ref = builtin(nm);
        if (ref.frame() != L.frame() || ref.frame_scale() != L.frame_scale()) return CosetKind::None;
        if (L.name() == "e8e8") return CosetKind::E8E8;
        if (L.name() == "spin16_coroot") return CosetKind::D8;
        return CosetKind::E8Type;
    }
    return CosetKind::None;
}

// Theta of D_n (half = false) or D_n u (D_n + (1/2, ..., 1/2)) (half = true)
// at orthonormal coordinates Z, from one-dimensional sums.
cplx dn_theta(cplx tau, const std::vector<cplx>& Z, bool glue, double rel, long long& terms) {
    auto prod = [&](double c, double shift) {
        cplx p = 1.0;
        for (const auto& w : Z) p *= gauss_sum(tau, w + shift, c, rel, terms);
        return p;
    };
    cplx s = prod(0.0, 0.0) + prod(0.0, 0.5);
    if (glue) s += prod(0.5, 0.0) + prod(0.5, 0.5);
    return 0.5 * s;
}

ThetaResult theta_coset(const IntegralLattice& L, CosetKind kind, cplx tau, const std::vector<cplx>& z, double tol) {
    const auto& F = L.frame();
    std::vector<cplx> Z(F.cols(), 0.0);
    for (Eigen::Index i = 0; i < F.rows(); ++i)
        for (Eigen::Index c = 0; c < F.cols(); ++c)
            if (F(i, c)) Z[c] += z[i] * double(F(i, c));
    for (auto& w : Z) w /= double(L.frame_scale());
    ThetaResult r;
    r.tol_used = tol;
    const double rel = series_rel(tol) / double(Z.size());
    switch (kind) {
        case CosetKind::E8Type: r.value = dn_theta(tau, Z, true, rel, r.terms_summed); break;
        case CosetKind::D8: r.value = dn_theta(tau, Z, false, rel, r.terms_summed); break;
        case CosetKind::E8E8: {
            std::vector<cplx> a(Z.begin(), Z.begin() + 8), b(Z.begin() + 8, Z.end());
            r.value = dn_theta(tau, a, true, rel, r.terms_summed) * dn_theta(tau, b, true, rel, r.terms_summed);
            break;
        }
        case CosetKind::None: throw std::invalid_argument("no coset evaluator for lattice " + L.name());
    }
    return r;
}

double log_ball_count(int n, double R, long long det) {
    // Gaussian heuristic for the number of lattice vectors of norm <= R.
    return 0.5 * n * std::log(kPi * R) - std::lgamma(0.5 * n + 1.0) - 0.5 * std::log(double(det));
}

void check_point(const IntegralLattice& L, cplx tau, const std::vector<cplx>& z) {
    if (tau.imag() <= 0) throw std::invalid_argument("tau must lie in the upper half-plane");
    if (int(z.size()) != L.rank()) throw std::invalid_argument("z has the wrong number of coordinates");
}

struct FamilyShape {
    long long scale;
    long long chi_power;
    bool u1_sign;
};

FamilyShape shape(FamilyName f) {
    switch (f) {
        case FamilyName::Char: return {1, 0, false};
        case FamilyName::DetU1: return {1, 2, true};
        case FamilyName::Ad: return {kCoxeterG, kDimG, false};
        case FamilyName::Rho: return {1, 16, false};
        case FamilyName::AnomalyAd: return {kCoxeterG, 0, false};
        case FamilyName::AnomalyRho: return {1, 0, false};
    }
    throw std::invalid_argument("unknown family");
}

long long int_det(const IntMatrix& m) {
    // Only used for the sign of W on the rank-one model and small matrices.
    return (long long)std::llround(m.cast<double>().determinant());
}

// log phi_g(x) for a generator; the chi power enters as i * arg.
cplx log_factor_generator(const AutomorphyFamily& fam, const Generator& g, const ModuliPoint& x) {
    const FamilyShape sh = shape(fam.name);
    const IntegralLattice& L = fam.lattice;
    check_point(L, x.tau, x.z);
    const double sc = double(sh.scale);
    if (auto* s = std::get_if<SElement>(&g)) {
        cplx j = double(s->c) * x.tau + double(s->d);
        cplx e = sc * kPi * kI * double(s->c) * bilinear(L, x.z, x.z) / j;
        return e + kI * std::arg(chi_power(*s, sh.chi_power));
    }
    if (auto* t = std::get_if<TElement>(&g)) {
        if (int(t->q1.size()) != L.rank() || int(t->q2.size()) != L.rank())
            throw std::invalid_argument("translation has the wrong rank for this family");
        auto q2 = to_complex(t->q2);
        cplx e = sc * kPi * kI * (-2.0 * bilinear(L, x.z, q2) - x.tau * double(L.norm(t->q2)));
        if (sh.u1_sign) {
            long long s = 0;
            for (auto v : t->q1) s += v;
            for (auto v : t->q2) s += v;
            if (s % 2) e += kI * kPi;
        }
        return e;
    }
    const auto& w = std::get<WElement>(g);
    if (w.m.rows() != L.rank()) throw std::invalid_argument("isometry has the wrong rank for this family");
    if (sh.u1_sign && int_det(w.m) < 0) return kI * kPi;
    return 0.0;
}

}  // namespace

GroupElement GroupElement::S(long long a, long long b, long long c, long long d) {
    SElement s{a, b, c, d};
    check_sl2(s);
    GroupElement g;
    g.word_.push_back(s);
    return g;
}

GroupElement GroupElement::T(LatticeVector q1, LatticeVector q2) {
    if (q1.size() != q2.size()) throw std::invalid_argument("q1 and q2 must have the same rank");
    GroupElement g;
    g.word_.push_back(TElement{std::move(q1), std::move(q2)});
    return g;
}

GroupElement GroupElement::W(const IntMatrix& m, const IntegralLattice& L) {
    if (m.rows() != L.rank() || m.cols() != L.rank()) throw std::invalid_argument("isometry has the wrong size");
    if (IntMatrix(m.transpose() * L.gram() * m) != L.gram())
        throw std::invalid_argument("matrix does not preserve the Gram matrix");
    GroupElement g;
    g.word_.push_back(WElement{m});
    return g;
}

GroupElement GroupElement::from_generators(std::vector<Generator> word) {
    for (const auto& w : word) {
        if (auto* s = std::get_if<SElement>(&w)) check_sl2(*s);
        if (auto* t = std::get_if<TElement>(&w))
            if (t->q1.size() != t->q2.size()) throw std::invalid_argument("q1 and q2 must have the same rank");
    }
    GroupElement g;
    g.word_ = std::move(word);
    return g;
}

SElement GroupElement::sl2() const {
    SElement m;
    for (const auto& w : word_)
        if (auto* s = std::get_if<SElement>(&w)) m = mul(m, *s);
    return m;
}

GroupElement operator*(const GroupElement& g, const GroupElement& h) {
    GroupElement out = g;
    out.word_.insert(out.word_.end(), h.word_.begin(), h.word_.end());
    return out;
}

GroupElement weyl_reflection(const IntegralLattice& L, const LatticeVector& root) {
    const int n = L.rank();
    IntMatrix m(n, n);
    for (int j = 0; j < n; ++j) {
        LatticeVector e(n, 0);
        e[j] = 1;
        auto r = reflect(L, root, e);
        for (int i = 0; i < n; ++i) m(i, j) = r[i];
    }
    return GroupElement::W(m, L);
}

GroupElement s_inversion() { return GroupElement::S(0, -1, 1, 0); }
GroupElement s_shift() { return GroupElement::S(1, 1, 0, 1); }

ModuliPoint act(const GroupElement& g, const ModuliPoint& x, double tau_min) {
    ModuliPoint y = x;
    for (auto it = g.word().rbegin(); it != g.word().rend(); ++it) {
        if (auto* s = std::get_if<SElement>(&*it)) {
            cplx j = double(s->c) * y.tau + double(s->d);
            y.tau = mobius(*s, y.tau);
            for (auto& v : y.z) v /= j;
        } else if (auto* t = std::get_if<TElement>(&*it)) {
            if (t->q1.size() != y.z.size()) throw std::invalid_argument("translation rank does not match z");
            for (std::size_t i = 0; i < y.z.size(); ++i) y.z[i] += double(t->q1[i]) + y.tau * double(t->q2[i]);
        } else {
            const auto& m = std::get<WElement>(*it).m;
            if (std::size_t(m.rows()) != y.z.size()) throw std::invalid_argument("isometry rank does not match z");
            std::vector<cplx> out(y.z.size(), 0.0);
            for (Eigen::Index i = 0; i < m.rows(); ++i)
                for (Eigen::Index j = 0; j < m.cols(); ++j)
                    if (m(i, j)) out[i] += double(m(i, j)) * y.z[j];
            y.z = std::move(out);
        }
        if (y.tau.imag() < tau_min)
            throw std::invalid_argument("image leaves the admissible domain (Im tau = " + std::to_string(y.tau.imag()) +
                                        ")");
    }
    return y;
}

cplx eta(cplx tau, double tol) {
    if (tau.imag() <= 0) throw std::invalid_argument("eta needs tau in the upper half-plane");
    if (tol <= 0) throw std::invalid_argument("tol must be positive");
    return eta_unchecked(tau, tol);
}

cplx eta_multiplier(const SElement& m) { return chi_power(m, 1); }
cplx eta_multiplier(const GroupElement& g) { return eta_multiplier(g.sl2()); }

cplx eta_multiplier_at(const SElement& m, cplx tau0) {
    check_sl2(m);
    if (tau0.imag() <= 0) throw std::invalid_argument("tau0 must lie in the upper half-plane");
    cplx j = double(m.c) * tau0 + double(m.d);
    return eta_unchecked(mobius(m, tau0), 1e-15) / (std::sqrt(j) * eta_unchecked(tau0, 1e-15));
}

cplx theta1(cplx tau, cplx u, double tol) {
    if (tau.imag() <= 0) throw std::invalid_argument("theta1 needs tau in the upper half-plane");
    long long terms = 0;
    return gauss_sum(tau, u - 0.5, 0.5, series_rel(tol), terms);
}

cplx det_section(cplx tau, cplx u, double tol) { return theta1(tau, u, tol) / eta(tau, tol); }

long long theta_cutoff(const IntegralLattice& L, cplx tau, const std::vector<cplx>& z, double tol) {
    check_point(L, tau, z);
    const int n = L.rank();
    const double t = tau.imag();
    std::vector<double> im(n);
    for (int i = 0; i < n; ++i) im[i] = z[i].imag();
    double s2 = 0;
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) s2 += im[i] * double(L.gram()(i, j)) * im[j];
    const double s = std::sqrt(std::max(0.0, s2));
    // Vectors of norm N number at most (2 sqrt(N) + 1)^n (disjoint balls of
    // radius 1/2), and each term has modulus at most exp(-pi t N + 2 pi s sqrt(N)).
    auto logterm = [&](double N) { return n * std::log(2 * std::sqrt(N) + 1) - kPi * t * N + 2 * kPi * s * std::sqrt(N); };
    std::vector<double> terms;
    double peak = -1e300;
    for (long long N = 1;; ++N) {
        double lt = logterm(double(N));
        terms.push_back(lt);
        peak = std::max(peak, lt);
        if (lt < peak && lt < std::log(tol) - 40) break;
        if (N > 10000000) throw std::invalid_argument("theta cutoff search did not converge");
    }
    double tail = 0;
    for (long long R = (long long)terms.size(); R >= 1; --R) {
        double next = tail + std::exp(terms[R - 1]);
        if (next >= tol) return R;
        tail = next;
    }
    return 0;
}

ThetaResult theta_lattice(const IntegralLattice& L, cplx tau, const std::vector<cplx>& z, double tol,
                          ThetaMethod method, long long max_vectors) {
    check_point(L, tau, z);
    if (tol <= 0) throw std::invalid_argument("tol must be positive");
    CosetKind kind = coset_kind(L);
    if (method == ThetaMethod::CosetProduct || (method == ThetaMethod::Auto && kind != CosetKind::None))
        return theta_coset(L, kind, tau, z, tol);

    const long long R = theta_cutoff(L, tau, z, tol);
    const double est = std::exp(log_ball_count(L.rank(), double(R) + 1.0, L.determinant()));
    if (est > double(max_vectors))
        throw std::invalid_argument("theta enumeration needs norm cutoff " + std::to_string(R) + " (about " +
                                    std::to_string((long long)est) + " vectors), over budget");
    ThetaResult r;
    r.tol_used = tol;
    r.max_norm = R;
    bool zero = std::all_of(z.begin(), z.end(), [](cplx v) { return v == 0.0; });
    if (zero) {
        for (auto [N, cnt] : count_by_norm(L, R)) {
            r.value += double(cnt) * std::exp(kI * kPi * tau * double(N));
            r.terms_summed += cnt;
        }
        return r;
    }
    std::vector<cplx> w(L.rank(), 0.0);
    for (int i = 0; i < L.rank(); ++i)
        for (int j = 0; j < L.rank(); ++j) w[i] += double(L.gram()(i, j)) * z[j];
    const std::size_t slices = vector_slices(L, R);
    std::vector<cplx> part(slices, 0.0);
    std::vector<long long> cnt(slices, 0);
    for_each_vector_in_slices(L, R, [&](std::size_t sl, const LatticeVector& v, long long N) {
        cplx zg = 0;
        for (std::size_t i = 0; i < v.size(); ++i)
            if (v[i]) zg += w[i] * double(v[i]);
        part[sl] += std::exp(kI * kPi * (2.0 * zg + tau * double(N)));
        cnt[sl]++;
    });
    for (std::size_t s = 0; s < slices; ++s) {
        r.value += part[s];
        r.terms_summed += cnt[s];
    }
    return r;
}

ThetaResult character(const IntegralLattice& L, cplx tau, const std::vector<cplx>& z, double tol) {
    if (L.rank() != 16) throw std::invalid_argument("the character needs a rank-16 lattice");
    ThetaResult r = theta_lattice(L, tau, z, tol);
    r.value /= std::pow(eta(tau, tol), 16);
    return r;
}

FamilyName family_from_string(const std::string& s) {
    if (s == "char") return FamilyName::Char;
    if (s == "det_u1") return FamilyName::DetU1;
    if (s == "ad") return FamilyName::Ad;
    if (s == "rho") return FamilyName::Rho;
    if (s == "anomaly_ad") return FamilyName::AnomalyAd;
    if (s == "anomaly_rho") return FamilyName::AnomalyRho;
    throw std::invalid_argument("unknown automorphy family: " + s);
}

std::string to_string(FamilyName f) {
    switch (f) {
        case FamilyName::Char: return "char";
        case FamilyName::DetU1: return "det_u1";
        case FamilyName::Ad: return "ad";
        case FamilyName::Rho: return "rho";
        case FamilyName::AnomalyAd: return "anomaly_ad";
        case FamilyName::AnomalyRho: return "anomaly_rho";
    }
    return "?";
}

IntegralLattice u1_model() { return IntegralLattice("u1", IntMatrix::Constant(1, 1, 1)); }

AutomorphyFamily make_family(FamilyName name) {
    switch (name) {
        case FamilyName::DetU1: return {name, u1_model()};
        case FamilyName::Rho:
        case FamilyName::AnomalyRho: return {name, builtin("spin16_coroot")};
        default: return {name, builtin("e8e8")};
    }
}

AutomorphyFamily make_family(FamilyName name, IntegralLattice lattice) {
    if (name == FamilyName::DetU1 && lattice.rank() != 1)
        throw std::invalid_argument("det_u1 is defined on a rank-one model");
    return {name, std::move(lattice)};
}

cplx log_factor(const AutomorphyFamily& fam, const GroupElement& g, const ModuliPoint& x) {
    // phi_{g1 ... gk}(x) = phi_{g1}(g2 ... gk x) * phi_{g2 ... gk}(x)
    cplx out = 0.0;
    ModuliPoint y = x;
    const auto& w = g.word();
    for (auto it = w.rbegin(); it != w.rend(); ++it) {
        out += log_factor_generator(fam, *it, y);
        y = act(GroupElement::from_generators({*it}), y, 0.0);
    }
    return out;
}

cplx factor(const AutomorphyFamily& fam, const GroupElement& g, const ModuliPoint& x) {
    return std::exp(log_factor(fam, g, x));
}

std::optional<double> cocycle_defect(const AutomorphyFamily& fam, const GroupElement& g, const GroupElement& h,
                                     const ModuliPoint& x) {
    if (g.is_identity() || h.is_identity()) {
        const GroupElement& k = g.is_identity() ? h : g;
        return std::abs(std::exp(log_factor(fam, k, x) - log_factor(fam, k, x)) - 1.0);
    }
    if (!g.is_generator() || !h.is_generator()) return std::nullopt;
    const Generator& a = g.word()[0];
    const Generator& b = h.word()[0];
    std::optional<Generator> gh;
    if (auto* s = std::get_if<SElement>(&a)) {
        if (auto* s2 = std::get_if<SElement>(&b)) gh = mul(*s, *s2);
    } else if (auto* t = std::get_if<TElement>(&a)) {
        if (auto* t2 = std::get_if<TElement>(&b)) {
            if (t->q1.size() != t2->q1.size()) throw std::invalid_argument("translations of different rank");
            TElement sum = *t;
            for (std::size_t i = 0; i < sum.q1.size(); ++i) {
                sum.q1[i] += t2->q1[i];
                sum.q2[i] += t2->q2[i];
            }
            gh = sum;
        }
    } else if (auto* w2 = std::get_if<WElement>(&b)) {
        gh = WElement{IntMatrix(std::get<WElement>(a).m * w2->m)};
    }
    if (!gh) return std::nullopt;
    cplx lhs = log_factor(fam, GroupElement::from_generators({*gh}), x);
    cplx rhs = log_factor(fam, g, act(h, x, 0.0)) + log_factor(fam, h, x);
    return std::abs(std::exp(lhs - rhs) - 1.0);
}

namespace {

cplx section_value(Section F, const AutomorphyFamily& fam, const ModuliPoint& x, double tol) {
    if (F == Section::Character) return character(fam.lattice, x.tau, x.z, tol).value;
    if (x.z.size() != 1) throw std::invalid_argument("det_section needs a single coordinate u");
    return det_section(x.tau, x.z[0], tol);
}

}  // namespace

double transform_defect(Section F, const AutomorphyFamily& fam, const GroupElement& g, const ModuliPoint& x,
                        double tol) {
    cplx fx = section_value(F, fam, x, tol);
    if (std::abs(fx) < 1e-12) throw std::invalid_argument("point rejected: section is too close to zero");
    cplx fgx = section_value(F, fam, act(g, x), tol);
    cplx rhs = factor(fam, g, x) * fx;
    return std::abs(fgx - rhs) / std::max(std::abs(fgx), std::abs(rhs));
}

ExtraMultiplier measure_extra_multiplier(const IntegralLattice& L, const GroupElement& g) {
    const AutomorphyFamily fam{FamilyName::Char, L};
    const cplx taus[] = {{0.0, 1.1}, {0.3, 1.7}, {-0.4, 0.9}};
    Rng rng = split_rng(0x6d756c74ULL, 0);
    std::uniform_real_distribution<double> U(-0.28, 0.28);
    ExtraMultiplier out;
    for (int k = 0; k < 10; ++k) {
        ModuliPoint x{taus[k % 3], std::vector<cplx>(L.rank())};
        if (k > 0)
            for (auto& v : x.z) v = cplx(U(rng), U(rng));
        cplx fx = character(L, x.tau, x.z).value;
        cplx r = character(L, act(g, x).tau, act(g, x).z).value / (factor(fam, g, x) * fx);
        if (k == 0)
            out.value = r;
        else
            out.spread = std::max(out.spread, std::abs(r - out.value));
    }
    if (out.spread > 1e-8) throw std::runtime_error("extra multiplier is not constant across sample points");
    return out;
}

int root_of_unity_order(cplx w, int max_order, double tol) {
    cplx p = 1.0;
    for (int k = 1; k <= max_order; ++k) {
        p *= w;
        if (std::abs(p - 1.0) <= tol) return k;
    }
    return 0;
}

}  // namespace gerbekit
