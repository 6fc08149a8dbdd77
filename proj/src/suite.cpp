#include "gerbekit/suite.hpp"

#include <chrono>
#include <cmath>
#include <map>
#include <stdexcept>

#include "gerbekit/cochain.hpp"
#include "gerbekit/fiberint.hpp"
#include "gerbekit/holonomy.hpp"
#include "gerbekit/lattice.hpp"
#include "gerbekit/liecs.hpp"
#include "gerbekit/modform.hpp"
#include "gerbekit/parallel.hpp"
#include "gerbekit/random.hpp"

namespace gerbekit {

namespace {

constexpr double kPi = 3.14159265358979323846;
constexpr double kTwoPi = 2 * kPi;
const cplx kI(0.0, 1.0);

// Observations from one instance, in the order they were made.
struct Observations {
    std::vector<std::pair<std::string, double>> defects;
    std::vector<Measurement> measurements;
    void add(const std::string& name, double d) { defects.emplace_back(name, d); }
    void flag(const std::string& name, bool ok) { defects.emplace_back(name, ok ? 0.0 : 1.0); }
    void measure(const std::string& name, cplx v) { measurements.push_back({name, v.real(), v.imag()}); }
};

void merge(SuiteReport& rep, const std::vector<Observations>& obs) {
    std::map<std::string, std::size_t> pos;
    for (const auto& o : obs) {
        for (const auto& [name, d] : o.defects) {
            auto it = pos.find(name);
            if (it == pos.end()) {
                it = pos.emplace(name, rep.checks.size()).first;
                rep.checks.push_back({name, 0.0, rep.tolerance, 0, true});
            }
            auto& c = rep.checks[it->second];
            // NaN counts as a failure
            if (!(d <= c.max_defect)) c.max_defect = std::isnan(d) ? INFINITY : std::max(c.max_defect, d);
            c.samples++;
        }
        rep.measurements.insert(rep.measurements.end(), o.measurements.begin(), o.measurements.end());
    }
    for (auto& c : rep.checks) c.pass = c.max_defect <= c.tolerance;
}

template <class Fn>
std::vector<Observations> run_trials(int trials, Fn&& fn) {
    std::vector<Observations> out(std::size_t(std::max(trials, 0)));
    parallel_for(out.size(), [&](std::size_t i) { fn(int(i), out[i]); });
    return out;
}

double circular_distance(double a, double b) {
    double d = std::fmod(std::abs(a - b), kTwoPi);
    return std::min(d, kTwoPi - d);
}

// ---------------------------------------------------------------- cochain

std::vector<Observations> cochain_suite(int trials, std::uint64_t seed) {
    const std::vector<CoverPtr> covers = {make_circle_cover(4, 0.5), make_torus_cover(3, 3, 0.6)};
    std::vector<Refinement> refs;
    for (const auto& c : covers) refs.push_back(refine(c, 2));
    return run_trials(trials, [&](int i, Observations& o) {
        Rng rng = split_rng(seed, std::uint64_t(i));
        const int which = i % 2;
        const auto& cov = covers[which];
        const auto& ref = refs[which];
        const int deg = 1 + (i / 2) % 3;
        DiffCochain w = random_cochain(rng, deg, cov);
        o.add("total_d_squared", total_d(total_d(w)).max_abs());
        o.add("cech_delta_squared", cech_delta(cech_delta(w)).max_abs());
        DiffCochain lhs = total_d(homotopy_k(w, ref.sigma, ref.sigma_prime)) +
                          homotopy_k(total_d(w), ref.sigma, ref.sigma_prime);
        DiffCochain rhs = restrict(w, ref.sigma) - restrict(w, ref.sigma_prime);
        o.add("homotopy_identity", (lhs - rhs).max_abs());
        if (deg <= cov->num_factors() + 1) o.flag("homotopy_nonvacuous", rhs.max_abs() > 1e-3);
        o.add("restriction_commutes_with_d",
              (total_d(restrict(w, ref.sigma)) - restrict(total_d(w), ref.sigma)).max_abs());
        const int cdeg = std::min(deg, cov->num_factors() + 1);
        o.add("random_cocycle_closed", total_d(random_cocycle(rng, cdeg, cov)).max_abs());
    });
}

// ---------------------------------------------------------------- holonomy

std::vector<Observations> holonomy_suite(int trials, std::uint64_t seed) {
    const auto c4 = make_circle_cover(4, 0.5);
    const auto d4 = make_circle_decomposition(4);
    const auto rho4 = subordinate(*d4, *c4);
    const auto cand4 = containing_pieces(*d4, *c4);
    const auto t33 = make_torus_cover(3, 3, 0.45 * kTwoPi / 3);
    const auto hex = make_torus_hex_decomposition(9);
    const auto rhoT = subordinate(*hex, *t33);
    const auto candT = containing_pieces(*hex, *t33);
    return run_trials(trials, [&](int i, Observations& o) {
        Rng rng = split_rng(seed, std::uint64_t(i));
        std::uniform_real_distribution<double> U(-1.0, 1.0);
        {
            const int N = 3 + i % 4;
            auto cov = make_circle_cover(N, 0.2);
            auto dec = make_circle_decomposition(N);
            const double alpha = U(rng);
            DiffCochain w = from_global_form(TrigForm::monomial(1, {0}, {0}, alpha), cov);
            o.add("global_one_form_circle", std::abs(holonomy(w, *dec, subordinate(*dec, *cov)) - kTwoPi * alpha));
            const double theta = 3.0 * U(rng);
            o.add("flat_circle_cocycle", distance_to_2pi_z(holonomy(flat_circle_cocycle(cov, theta), *dec,
                                                                    subordinate(*dec, *cov)) -
                                                           theta));
        }
        {
            DiffCochain w = random_cocycle(rng, 1, c4);
            double worst = 0;
            for (int c = 0; c < d4->num_top(); ++c)
                for (int alt : cand4[c]) {
                    auto rho2 = rho4;
                    rho2[c] = alt;
                    worst = std::max(worst, distance_to_2pi_z(invariance_defect(w, *d4, rho4, rho2)));
                }
            o.add("subordination_change_circle", worst);
        }
        {
            DiffCochain w = random_cocycle(rng, 2, t33);
            auto rho2 = rhoT;
            for (int c = 0; c < hex->num_top(); ++c) rho2[c] = candT[c][rng() % candT[c].size()];
            o.add("subordination_change_torus", distance_to_2pi_z(invariance_defect(w, *hex, rhoT, rho2)));
        }
        {
            // flat 2-cocycles on T^2: the class is the holonomy mod 2 pi and
            // does not see flat coboundaries
            const double theta = 3.0 * U(rng);
            TrigForm vol = TrigForm::monomial(2, {0, 0}, {0, 1}, theta / (kTwoPi * kTwoPi));
            DiffCochain w = from_global_form(vol, t33) + random_flat_coboundary(rng, 2, t33);
            const double c0 = classify_flat_2cocycle(w, *hex, rhoT);
            o.add("flat_class_value", circular_distance(c0, theta));
            DiffCochain w2 = w + random_flat_coboundary(rng, 2, t33);
            o.add("flat_class_coboundary_invariance", circular_distance(classify_flat_2cocycle(w2, *hex, rhoT), c0));
        }
    });
}

// ---------------------------------------------------------------- pushforward

std::vector<Observations> pushforward_suite(int trials, std::uint64_t seed) {
    const ProductSetup circ(make_circle_cover(3, 0.3), make_circle_cover(3, 0.3), make_circle_decomposition(3));
    const ProductSetup tor(make_circle_cover(3, 0.3), make_torus_cover(3, 3, 0.45 * kTwoPi / 3),
                           make_torus_hex_decomposition(9));
    const ProductSetup circ_h(make_circle_cover(3, 0.3), make_circle_cover(4, 0.7), make_circle_decomposition(12));
    const auto rc = subordinate(*circ.dec, *circ.E);
    const auto rt = subordinate(*tor.dec, *tor.E);
    const auto rh = subordinate(*circ_h.dec, *circ_h.E);
    const auto cand_t = containing_pieces(*tor.dec, *tor.E);
    const auto cand_h = containing_pieces(*circ_h.dec, *circ_h.E);
    return run_trials(trials, [&](int i, Observations& o) {
        Rng rng = split_rng(seed, std::uint64_t(i));
        o.add("stokes_circle_fiber", pushforward_commutes_defect(random_cochain(rng, 2 + i % 2, circ.XE), circ, rc));
        o.add("stokes_torus_fiber", pushforward_commutes_defect(random_cochain(rng, 2 + i % 2, tor.XE), tor, rt));
        o.add("cocycle_preserved_circle",
              total_d(pushforward(random_cocycle(rng, 2 + i % 2, circ.XE), circ, rc)).max_abs());
        o.add("cocycle_preserved_torus", total_d(pushforward(random_cocycle(rng, 3, tor.XE), tor, rt)).max_abs());
        {
            auto rho2 = rh;
            const int c = int(rng() % rh.size());
            rho2[c] = cand_h[c].back() == rh[c] ? cand_h[c].front() : cand_h[c].back();
            DiffCochain w = random_cochain(rng, 2 + i % 2, circ_h.XE);
            o.add("subordination_homotopy_circle", pushforward_homotopy_residual(w, circ_h, rh, rho2));
        }
        {
            auto rho2 = rt;
            for (std::size_t c = 0; c < rt.size(); ++c) rho2[c] = cand_t[c][rng() % cand_t[c].size()];
            DiffCochain w = random_cochain(rng, 3, tor.XE);
            o.add("subordination_homotopy_torus", pushforward_homotopy_residual(w, tor, rt, rho2));
        }
    });
}

// ---------------------------------------------------------------- chernsimons

std::vector<Observations> chernsimons_suite(int trials, std::uint64_t seed) {
    const auto basis = su2_basis();
    auto out = run_trials(trials, [&](int i, Observations& o) {
        Rng rng = split_rng(seed, std::uint64_t(i));
        MatForm A = random_su_form(rng, 3, 1, 2);
        GaugeMap g = random_su2_gauge(rng, 3);
        MatForm F = curvature(A);
        o.add("cs_two_formulas", (cs_form(A) - cs_form_via_curvature(A)).max_abs());
        o.add("dcs_equals_ff_T3", (exterior_d(cs_form(A)) - pairing(F, F)).max_abs());
        o.add("bianchi", bianchi_residual(A).max_abs());
        o.flag("gauge_map_nonconstant", g.maurer_cartan().max_abs() > 1e-3);
        o.add("curvature_covariance", (curvature(gauge_transform(A, g)) - adjoint_action(F, g)).max_abs());
        o.add("gauge_variation", gauge_variation_defect(A, g));
        o.measure("bianchi_half_bracket_residual", bianchi_residual_half(A).max_abs());

        // On T^4 the identity d CS = <F, F> has content.
        MatForm B = random_su_form(rng, 4, 1, 2, {2, 3, true});
        for (int j = 0; j < 4; ++j) {
            std::vector<int> k(4, 0);
            k[(j + 1) % 4] = 1;
            B += MatForm::monomial(4, k, {j}, basis[j % 3]);
            k[(j + 1) % 4] = -1;
            B += MatForm::monomial(4, k, {j}, -Mat(basis[j % 3].adjoint()));
        }
        TrigForm FF = pairing(curvature(B), curvature(B));
        o.flag("ff_nonvanishing_T4", FF.max_abs() > 1e-3);
        o.add("dcs_equals_ff_T4", (exterior_d(cs_form(B)) - FF).max_abs());
    });
    // The half-bracket residual is reported once, as its largest value.
    double half = 0;
    for (auto& o : out) {
        for (const auto& m : o.measurements) half = std::max(half, m.re);
        o.measurements.clear();
    }
    if (!out.empty()) out.back().measure("bianchi_half_bracket_residual_max", half);
    return out;
}

// ---------------------------------------------------------------- lattice

std::vector<Observations> lattice_suite() {
    Observations o;
    auto exact = [&](const std::string& name, long long got, long long want) {
        o.add(name, double(std::llabs(got - want)));
    };
    const auto e8 = builtin("e8");
    auto counts = count_by_norm(e8, 4);
    exact("e8_norm2_count_240", counts[2], 240);
    exact("e8_norm4_count_2160", counts[4], 2160);
    for (const char* nm : {"e8", "e8e8", "d16plus"}) {
        const auto L = builtin(nm);
        exact(std::string(nm) + "_determinant_1", L.determinant(), 1);
        exact(std::string(nm) + "_even", L.is_even() ? 1 : 0, 1);
    }
    exact("d16plus_roots_480", (long long)roots(builtin("d16plus")).size(), 480);
    exact("spin16_series_roots_112", (long long)roots(builtin("spin16_coroot")).size(), 112);
    Rational c = coxeter_from_roots(e8);
    exact("coxeter_e8_30", c.num * 1, 30 * c.den);
    exact("weyl_index_135", weyl_index_arithmetic(), 135);
    exact("weyl_index_from_orders", weyl_order_e8() / weyl_order_d8(), 135);
    auto wi = weight_identity_check();
    exact("weight_identity_residual", wi.residual, 0);
    o.measure("weight_identity_literal_residual", double(wi.literal_residual));
    auto ad = anomaly_exponents("e8e8_adjoint");
    exact("anomaly_ad_30x32_eq_496p464", ad.alpha * (ad.n + 22) - (ad.r + ad.beta), 0);
    exact("anomaly_ad_values", std::llabs(ad.alpha - 30) + std::llabs(ad.r - 496) + std::llabs(ad.beta - 464), 0);
    auto rho = anomaly_exponents("spin16_rho");
    exact("anomaly_rho_1x32_eq_32p0", rho.alpha * (rho.n + 22) - (rho.r + rho.beta), 0);
    // E8+E8 coefficients are the self-convolution of the E8 ones
    auto c8 = count_by_norm(e8, 6);
    auto c16 = count_by_norm(builtin("e8e8"), 6);
    long long worst = 0;
    for (long long N = 0; N <= 6; N += 2) {
        long long conv = 0;
        for (long long k = 0; k <= N; k += 2) conv += c8[k] * c8[N - k];
        worst = std::max(worst, std::llabs(conv - c16[N]));
    }
    exact("e8e8_counts_are_e8_convolution", worst, 0);
    return {o};
}

// ---------------------------------------------------------------- modular

const cplx kSampleTaus[] = {{0.0, 1.1}, {0.3, 1.7}, {-0.4, 0.9}};

std::vector<cplx> sample_z(Rng& rng, int n) {
    std::uniform_real_distribution<double> U(-0.28, 0.28);
    std::vector<cplx> z(n);
    for (auto& v : z) v = cplx(U(rng), U(rng));
    return z;
}

template <class T>
const T& pick(Rng& rng, const std::vector<T>& v) {
    return v[rng() % v.size()];
}

SElement random_sl2(Rng& rng, int len) {
    const SElement gens[] = {{0, -1, 1, 0}, {0, 1, -1, 0}, {1, 1, 0, 1}, {1, -1, 0, 1}};
    GroupElement g;
    for (int k = 0; k < len; ++k) {
        const SElement& s = gens[rng() % 4];
        g = g * GroupElement::S(s.a, s.b, s.c, s.d);
    }
    return g.sl2();
}

cplx chi_raw(const SElement& m, cplx t0) { return eta_multiplier_at(m, t0); }

cplx base_point(const SElement& m, double y) {
    if (m.c == 0) return {0.0, y};
    return {-double(m.d) / double(m.c), y / std::abs(double(m.c))};
}

Observations modular_fixed() {
    Observations o;
    const auto e8 = builtin("e8"), e8e8 = builtin("e8e8");
    {
        const cplx tau(0.0, 1.7);
        cplx direct = 0;
        for (auto [N, c] : count_by_norm(e8e8, 8)) direct += double(c) * std::exp(kI * kPi * tau * double(N));
        cplx t8 = theta_lattice(e8, tau, std::vector<cplx>(8, 0.0)).value;
        o.add("theta_e8e8_equals_e8_squared", std::abs(direct - t8 * t8));
    }
    {
        Rng rng = split_rng(0xe8, 0);
        auto z = sample_z(rng, 8);
        for (auto& v : z) v *= 0.25;
        const cplx tau(0.2, 1.2);
        auto a = theta_lattice(e8, tau, z, 1e-12, ThetaMethod::CosetProduct);
        auto b = theta_lattice(e8, tau, z, 1e-12, ThetaMethod::Enumerate);
        o.add("theta_e8_coset_vs_enumeration", std::abs(a.value - b.value));
    }
    {
        auto counts = count_by_norm(e8, 4);
        std::vector<long long> s = {counts[0], counts[2]};
        s[1] += 8 * s[0];  // times prod (1 - q^m)^-8 through order q
        o.add("e8_over_eta8_coefficient_248", double(std::llabs(s[1] - 248)));
    }
    // extra multipliers of the character
    const auto rs = roots(e8e8);
    const std::vector<std::pair<std::string, GroupElement>> gens = {
        {"S(1,1,0,1)", s_shift()}, {"S(0,-1,1,0)", s_inversion()}, {"S(1,0,1,1)", GroupElement::S(1, 0, 1, 1)}};
    for (const char* nm : {"e8e8", "d16plus"}) {
        const auto L = builtin(nm);
        for (const auto& [label, g] : gens) {
            auto m = measure_extra_multiplier(L, g);
            o.measure("extra_multiplier[" + std::string(nm) + "," + label + "]", m.value);
            o.add("extra_multiplier_constant", m.spread);
            o.add("extra_multiplier_equals_eta_power_-16", std::abs(m.value - std::pow(eta_multiplier(g), -16)));
            const int ord = root_of_unity_order(m.value);
            o.flag("extra_multiplier_order_divides_30", ord > 0 && 30 % ord == 0);
        }
    }
    // translations by the image of the Spin(16) x Spin(16) coroots
    const auto sp = roots(builtin("spin16_coroot"));
    for (int k = 0; k < 4; ++k) {
        LatticeVector q1(16, 0), q2(16, 0);
        auto a = spin16_embedding(sp[(7 * k + 1) % sp.size()]), b = spin16_embedding(sp[(11 * k + 5) % sp.size()]);
        for (int i = 0; i < 8; ++i) {
            q1[i + (k % 2) * 8] = a[i];
            q2[i] = b[i];
        }
        auto m = measure_extra_multiplier(e8e8, GroupElement::T(q1, q2));
        o.add("extra_multiplier_trivial_on_spin16_translations", std::abs(m.value - 1.0));
    }
    return o;
}

std::vector<Observations> modular_suite(int trials, std::uint64_t seed) {
    std::vector<Observations> out;
    out.push_back(modular_fixed());
    const auto e8 = builtin("e8");
    const std::vector<IntegralLattice> rank16 = {builtin("e8e8"), builtin("d16plus")};
    std::vector<std::vector<LatticeVector>> roots16;
    for (const auto& L : rank16) roots16.push_back(roots(L));
    const auto sp = builtin("spin16_coroot");
    const auto sp_roots = roots(sp);
    IntMatrix A(8, 8);
    for (int j = 0; j < 8; ++j) {
        LatticeVector e(8, 0);
        e[j] = 1;
        auto img = spin16_embedding(e);
        for (int i = 0; i < 8; ++i) A(i, j) = img[i];
    }
    std::vector<AutomorphyFamily> fams;
    for (FamilyName f : {FamilyName::Char, FamilyName::DetU1, FamilyName::Ad, FamilyName::Rho, FamilyName::AnomalyAd,
                         FamilyName::AnomalyRho})
        fams.push_back(make_family(f));
    const auto u1 = make_family(FamilyName::DetU1);
    const auto ch = make_family(FamilyName::Char);
    const auto ad = make_family(FamilyName::Ad);
    const auto an_ad = make_family(FamilyName::AnomalyAd);
    const auto an_rho = make_family(FamilyName::AnomalyRho);
    const auto ch_e8 = make_family(FamilyName::Char, e8);

    auto trial_obs = run_trials(trials, [&](int i, Observations& o) {
        Rng rng = split_rng(seed, std::uint64_t(i));
        const cplx tau = kSampleTaus[i % 3];
        std::uniform_int_distribution<int> small(-2, 2);

        o.add("eta_shift", std::abs(eta(tau + 1.0) - std::polar(1.0, kPi / 12) * eta(tau)) / std::abs(eta(tau)));
        o.add("eta_inversion", std::abs(eta(-1.0 / tau) / (std::sqrt(-kI * tau) * eta(tau)) - 1.0));
        o.add("theta1_at_zero", std::abs(theta1(tau, 0.0)));

        {
            ModuliPoint x{tau, sample_z(rng, 1)};
            auto t = GroupElement::T({small(rng)}, {small(rng)});
            o.add("det_section_translation", transform_defect(Section::DetSection, u1, t, x));
            o.add("det_section_shift_1_0", transform_defect(Section::DetSection, u1, GroupElement::T({1}, {0}), x));
            for (const auto& s : {s_inversion(), s_shift(), GroupElement::S(1, 0, 1, 1)})
                o.add("det_section_sl2", transform_defect(Section::DetSection, u1, s, x));
            o.add("det_section_weyl",
                  transform_defect(Section::DetSection, u1, GroupElement::W(IntMatrix::Constant(1, 1, -1), u1.lattice), x));
        }
        {
            const std::size_t li = std::size_t(i) % rank16.size();
            const auto fam = make_family(FamilyName::Char, rank16[li]);
            const auto& rs = roots16[li];
            ModuliPoint x{tau, sample_z(rng, 16)};
            auto t = GroupElement::T(pick(rng, rs), pick(rng, rs));
            auto w = weyl_reflection(fam.lattice, pick(rng, rs));
            o.add("character_translation", transform_defect(Section::Character, fam, t, x));
            o.add("character_weyl", transform_defect(Section::Character, fam, w, x));
            auto y = act(w, x);
            cplx a = theta_lattice(fam.lattice, x.tau, x.z).value, b = theta_lattice(fam.lattice, y.tau, y.z).value;
            o.add("theta_weyl_invariance", std::abs(a - b) / std::abs(a));
        }
        {
            const auto& rs = roots16[0];
            ModuliPoint x{tau, sample_z(rng, 16)}, x2{tau, sample_z(rng, 16)};
            auto t = GroupElement::T(pick(rng, rs), pick(rng, rs));
            o.add("ad_over_char30_translation", std::abs(factor(ad, t, x) / std::pow(factor(ch, t, x), 30) - 1.0));
            o.add("anomaly_ad_over_char30", std::abs(factor(an_ad, t, x) / std::pow(factor(ch, t, x), 30) - 1.0));
            for (const auto& s : {s_inversion(), s_shift(), GroupElement::S(1, 0, 1, 1)}) {
                cplx r1 = factor(ad, s, x) / std::pow(factor(ch, s, x), 30);
                cplx r2 = factor(ad, s, x2) / std::pow(factor(ch, s, x2), 30);
                o.add("ad_over_char30_sl2_constant", std::abs(r1 - r2));
                o.add("ad_over_char30_sl2_is_chi496", std::abs(r1 - std::pow(eta_multiplier(s), 496)));
                o.add("anomaly_ad_over_char30", std::abs(factor(an_ad, s, x) / std::pow(factor(ch, s, x), 30) - 1.0));
            }
        }
        {
            // anomaly_rho is the pull-back of the E8 char factors along the coroot embedding
            ModuliPoint x{tau, sample_z(rng, 8)};
            ModuliPoint ax{tau, std::vector<cplx>(8, 0.0)};
            for (int r = 0; r < 8; ++r)
                for (int c = 0; c < 8; ++c) ax.z[r] += double(A(r, c)) * x.z[c];
            auto q1 = pick(rng, sp_roots), q2 = pick(rng, sp_roots);
            auto t = GroupElement::T(q1, q2);
            auto ti = GroupElement::T(spin16_embedding(q1), spin16_embedding(q2));
            o.add("rho_pullback_translation", std::abs(factor(an_rho, t, x) / factor(ch_e8, ti, ax) - 1.0));
            o.add("rho_pullback_sl2", std::abs(factor(an_rho, s_inversion(), x) / factor(ch_e8, s_inversion(), ax) - 1.0));
        }
        {
            const SElement m = random_sl2(rng, 1 + i % 8);
            const cplx c1 = chi_raw(m, base_point(m, 1.0)), c2 = chi_raw(m, base_point(m, 0.7) + 0.3);
            o.add("chi_24th_root", std::abs(std::pow(c1, 24) - 1.0));
            o.add("chi_base_point_independence", std::abs(c1 - c2));
            const SElement m2 = random_sl2(rng, 1 + (i + 3) % 5);
            const GroupElement g1 = GroupElement::S(m.a, m.b, m.c, m.d), g2 = GroupElement::S(m2.a, m2.b, m2.c, m2.d);
            cplx lhs = std::pow(eta_multiplier(g1 * g2), 2), rhs = std::pow(eta_multiplier(g1) * eta_multiplier(g2), 2);
            o.add("chi_squared_homomorphism", std::abs(lhs - rhs));
        }
        for (const auto& fam : fams) {
            const int n = fam.lattice.rank();
            std::vector<LatticeVector> rs =
                n == 1 ? std::vector<LatticeVector>{{1}, {-1}, {2}, {0}} : (n == 16 ? roots16[0] : sp_roots);
            ModuliPoint x{tau, sample_z(rng, n)};
            auto t1 = GroupElement::T(pick(rng, rs), pick(rng, rs)), t2 = GroupElement::T(pick(rng, rs), pick(rng, rs));
            o.add("cocycle_translations", *cocycle_defect(fam, t1, t2, x));
            for (const auto& [g, h] : {std::pair{s_inversion(), s_shift()}, std::pair{s_shift(), s_inversion()},
                                       std::pair{GroupElement::S(1, 2, 0, 1), GroupElement::S(-1, 1, 0, -1)}})
                o.add("cocycle_sl2", *cocycle_defect(fam, g, h, x));
            if (n > 1) {
                auto w1 = weyl_reflection(fam.lattice, pick(rng, rs)), w2 = weyl_reflection(fam.lattice, pick(rng, rs));
                o.add("cocycle_weyl", *cocycle_defect(fam, w1, w2, x));
            }
        }
        {
            const auto& rs = roots16[0];
            ModuliPoint x{tau, sample_z(rng, 16)};
            auto gen = [&]() -> GroupElement {
                switch (rng() % 3) {
                    case 0: return rng() % 2 ? s_inversion() : s_shift();
                    case 1: return GroupElement::T(pick(rng, rs), pick(rng, rs));
                    default: return weyl_reflection(rank16[0], pick(rng, rs));
                }
            };
            GroupElement g = gen() * gen(), h = gen();
            ModuliPoint a = act(g * h, x, 0.0), b = act(g, act(h, x, 0.0), 0.0);
            double d = std::abs(a.tau - b.tau);
            for (int k = 0; k < 16; ++k) d = std::max(d, std::abs(a.z[k] - b.z[k]) / (1.0 + std::abs(a.z[k])));
            o.add("act_composition", d);
        }
    });
    out.insert(out.end(), trial_obs.begin(), trial_obs.end());
    return out;
}

}  // namespace

bool SuiteReport::pass() const {
    for (const auto& c : checks)
        if (!c.pass) return false;
    return true;
}

const CheckRecord& SuiteReport::check(const std::string& name) const {
    for (const auto& c : checks)
        if (c.name == name) return c;
    throw std::invalid_argument("no check named " + name);
}

nlohmann::ordered_json SuiteReport::to_json(bool with_timing) const {
    nlohmann::ordered_json j;
    j["suite"] = suite;
    j["trials"] = trials;
    j["seed"] = seed;
    j["tolerance"] = tolerance;
    j["pass"] = pass();
    j["checks"] = nlohmann::ordered_json::array();
    for (const auto& c : checks) {
        nlohmann::ordered_json r;
        r["name"] = c.name;
        r["max_defect"] = c.max_defect;
        r["tolerance"] = c.tolerance;
        r["samples"] = c.samples;
        r["pass"] = c.pass;
        j["checks"].push_back(r);
    }
    j["measurements"] = nlohmann::ordered_json::array();
    for (const auto& m : measurements) {
        nlohmann::ordered_json r;
        r["name"] = m.name;
        r["re"] = m.re;
        r["im"] = m.im;
        j["measurements"].push_back(r);
    }
    if (with_timing) j["wall_time_s"] = wall_seconds;
    return j;
}

const std::vector<std::string>& suite_names() {
    static const std::vector<std::string> names = {"cochain", "holonomy", "pushforward", "chernsimons", "lattice",
                                                   "modular"};
    return names;
}

double default_tolerance(const std::string& suite) {
    if (suite == "cochain" || suite == "chernsimons") return 1e-10;
    if (suite == "holonomy" || suite == "modular") return 1e-8;
    if (suite == "pushforward") return 1e-9;
    if (suite == "lattice") return 0.0;
    throw std::invalid_argument("unknown suite: " + suite);
}

SuiteReport run_suite(const std::string& name, int trials, std::uint64_t seed, double tol) {
    if (trials < 0) throw std::invalid_argument("trials must be non-negative");
    if (!(tol >= 0)) throw std::invalid_argument("tolerance must be non-negative");
    const auto start = std::chrono::steady_clock::now();
    SuiteReport rep;
    rep.suite = name;
    rep.trials = trials;
    rep.seed = seed;
    rep.tolerance = tol;
    std::vector<Observations> obs;
    if (name == "cochain")
        obs = cochain_suite(trials, seed);
    else if (name == "holonomy")
        obs = holonomy_suite(trials, seed);
    else if (name == "pushforward")
        obs = pushforward_suite(trials, seed);
    else if (name == "chernsimons")
        obs = chernsimons_suite(trials, seed);
    else if (name == "lattice")
        obs = lattice_suite();
    else if (name == "modular")
        obs = modular_suite(trials, seed);
    else
        throw std::invalid_argument("unknown suite: " + name);
    merge(rep, obs);
    rep.wall_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return rep;
}

}  // namespace gerbekit
