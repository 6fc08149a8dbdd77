#include <cmath>

#include "doctest.h"
#include "gerbekit/fiberint.hpp"
#include "gerbekit/holonomy.hpp"
#include "gerbekit/random.hpp"

using namespace gerbekit;

namespace {
constexpr double kPi = 3.14159265358979323846;
}

TEST_CASE("path network counts and areas") {
    for (int r = 1; r <= 5; ++r)
        for (int k = 1; k <= 5; ++k) {
            auto net = make_path_network(r, k);
            CHECK((long long)net.paths.size() == binomial(r + k - 2, r - 1));
            for (const auto& p : net.paths) {
                CHECK((int)p.nodes.size() == r + k - 1);
                CHECK(p.area >= 0);
                CHECK(p.area <= (r - 1) * (k - 1));
            }
        }
}

TEST_CASE("t symbol with two by two network") {
    ProductSetup s(make_circle_cover(3, 0.3), make_circle_cover(3, 0.3), make_circle_decomposition(3));
    Rng rng = split_rng(2, 0);
    DiffCochain w = random_cochain(rng, 2, s.XE);
    MultiIndex a{0, 1}, b{1, 2};
    TrigForm expect = w.component({s.pair(0, 1), s.pair(0, 2), s.pair(1, 2)}) -
                      w.component({s.pair(0, 1), s.pair(1, 1), s.pair(1, 2)});
    CHECK((t_symbol(a, b, w, s) - expect).max_abs() <= 1e-15);
    CHECK((t_symbol({0}, {1}, w, s) - w.component({s.pair(0, 1)})).max_abs() == 0.0);
}

TEST_CASE("pushforward of a global form") {
    ProductSetup s(make_circle_cover(3, 0.3), make_circle_cover(4, 0.3), make_circle_decomposition(4));
    auto rho = subordinate(*s.dec, *s.E);
    TrigForm f = TrigForm::monomial(2, {1, 0}, {0, 1}, 0.5) + TrigForm::monomial(2, {-1, 0}, {0, 1}, 0.5) +
                 TrigForm::monomial(2, {2, 1}, {0, 1}, 0.3);
    DiffCochain out = pushforward(from_global_form(f, s.XE), s, rho);
    TrigForm expect = TrigForm::monomial(1, {1}, {0}, kPi) + TrigForm::monomial(1, {-1}, {0}, kPi);
    for (int a = 0; a < s.X->size(); ++a) CHECK((out.component({a}) - expect).max_abs() <= 1e-12);
    CHECK(out.field_strength()->is_zero());
    CHECK(pushforward(DiffCochain(2, s.XE), s, rho).max_abs() == 0.0);
}

TEST_CASE("pushforward commutes with the total differential") {
    ProductSetup s(make_circle_cover(3, 0.3), make_circle_cover(3, 0.3), make_circle_decomposition(3));
    auto rho = subordinate(*s.dec, *s.E);
    for (int t = 0; t < 8; ++t) {
        Rng rng = split_rng(31, t);
        DiffCochain w = random_cochain(rng, 2 + t % 2, s.XE);
        CHECK(pushforward_commutes_defect(w, s, rho) <= 1e-10);
    }
}

TEST_CASE("the other area convention breaks stokes") {
    ProductSetup s(make_circle_cover(3, 0.3), make_circle_cover(3, 0.3), make_circle_decomposition(3));
    auto rho = subordinate(*s.dec, *s.E);
    Rng rng = split_rng(31, 0);
    DiffCochain w = random_cochain(rng, 2, s.XE);
    CHECK(pushforward_commutes_defect(w, s, rho, {AreaConvention::BelowPath}) > 1e-3);
}

TEST_CASE("pushforward with torus fiber") {
    ProductSetup s(make_circle_cover(3, 0.3), make_torus_cover(3, 3, 0.45 * 2 * kPi / 3),
                   make_torus_hex_decomposition(9));
    auto rho = subordinate(*s.dec, *s.E);
    Rng rng = split_rng(41, 0);
    DiffCochain w = random_cochain(rng, 3, s.XE);
    CHECK(pushforward_commutes_defect(w, s, rho) <= 1e-9);
    DiffCochain c = random_cocycle(rng, 3, s.XE);
    CHECK(is_cocycle(pushforward(c, s, rho), 1e-9));
}

TEST_CASE("homotopy between subordinations") {
    ProductSetup s(make_circle_cover(3, 0.3), make_circle_cover(4, 0.7), make_circle_decomposition(12));
    auto rho = subordinate(*s.dec, *s.E);
    auto cands = containing_pieces(*s.dec, *s.E);
    for (int t = 0; t < 6; ++t) {
        Rng rng = split_rng(51, t);
        DiffCochain w = random_cochain(rng, 2 + t % 2, s.XE);
        auto rho2 = rho;
        int i = (3 * t + 2) % s.dec->num_top();
        rho2[i] = cands[i].back() == rho[i] ? cands[i].front() : cands[i].back();
        CHECK((pushforward(w, s, rho) - pushforward(w, s, rho2)).max_abs() > 1e-3);
        CHECK(pushforward_homotopy_residual(w, s, rho, rho2) <= 1e-9);
    }
    Rng rng = split_rng(52, 0);
    DiffCochain w = random_cochain(rng, 2, s.XE);
    CHECK(pushforward_homotopy(w, s, rho, rho).max_abs() == 0.0);
}

TEST_CASE("homotopy between subordinations on torus fiber") {
    ProductSetup s(make_circle_cover(3, 0.3), make_torus_cover(3, 3, 0.45 * 2 * kPi / 3),
                   make_torus_hex_decomposition(9));
    auto rho = subordinate(*s.dec, *s.E);
    auto cands = containing_pieces(*s.dec, *s.E);
    Rng rng = split_rng(61, 0);
    DiffCochain w = random_cochain(rng, 3, s.XE);
    auto rho2 = rho;
    for (int i = 0; i < s.dec->num_top(); ++i) rho2[i] = cands[i].back();
    CHECK((pushforward(w, s, rho) - pushforward(w, s, rho2)).max_abs() > 1e-3);
    CHECK(pushforward_homotopy_residual(w, s, rho, rho2) <= 1e-9);
}

TEST_CASE("refined decomposition with composed subordination gives the same pushforward") {
    auto X = make_circle_cover(3, 0.3);
    auto E = make_circle_cover(4, 0.3);
    ProductSetup coarse(X, E, make_circle_decomposition(4));
    ProductSetup fine(X, E, make_circle_decomposition(8));
    REQUIRE(coarse.XE->id() == fine.XE->id());
    auto rho = subordinate(*coarse.dec, *E);
    std::vector<int> rho_fine;
    for (int j = 0; j < 8; ++j) rho_fine.push_back(rho[j / 2]);
    for (int t = 0; t < 4; ++t) {
        Rng rng = split_rng(71, t);
        DiffCochain w = random_cocycle(rng, 2, coarse.XE);
        DiffCochain fw = cochain_from_json(to_json(w), fine.XE);
        CHECK((pushforward(w, coarse, rho) - cochain_from_json(to_json(pushforward(fw, fine, rho_fine)), X))
                  .max_abs() <= 1e-10);
    }
}

TEST_CASE("pushforward to level zero reproduces holonomy") {
    auto X = make_circle_cover(3, 0.3);
    {
        auto E = make_circle_cover(4, 0.5);
        ProductSetup s(X, E, make_circle_decomposition(4));
        auto rho = subordinate(*s.dec, *E);
        for (int t = 0; t < 4; ++t) {
            Rng rng = split_rng(81, t);
            DiffCochain wE = random_cocycle(rng, 1, E);
            DiffCochain out = pushforward(pullback_from_fiber(wE, s), s, rho);
            const auto phase = holonomy_phase(wE, *s.dec, rho);
            for (int a = 0; a < X->size(); ++a) {
                TrigForm f = out.component({a});
                std::complex<double> v = f.is_zero() ? 0.0 : f.evaluate_coefficient(0, {0.4});
                CHECK(std::abs(std::exp(std::complex<double>(0, 1) * v) - phase) <= 1e-8);
            }
        }
    }
    {
        auto E = make_torus_cover(3, 3, 0.45 * 2 * kPi / 3);
        ProductSetup s(X, E, make_torus_hex_decomposition(9));
        auto rho = subordinate(*s.dec, *E);
        Rng rng = split_rng(82, 0);
        DiffCochain wE = random_cocycle(rng, 2, E);
        DiffCochain out = pushforward(pullback_from_fiber(wE, s), s, rho);
        const auto phase = holonomy_phase(wE, *s.dec, rho);
        for (int a = 0; a < X->size(); ++a) {
            std::complex<double> v = out.component({a}).evaluate_coefficient(0, {1.3});
            CHECK(std::abs(std::exp(std::complex<double>(0, 1) * v) - phase) <= 1e-8);
        }
    }
}
