#include "doctest.h"
#include "gerbekit/cochain.hpp"
#include "gerbekit/random.hpp"

using namespace gerbekit;

TEST_CASE("cech delta of constant family vanishes") {
    auto c = make_circle_cover(4, 0.1);
    DiffCochain w(0, c);
    for (int a = 0; a < 4; ++a) w.set_component({a}, TrigForm::constant(1, 3.0));
    DiffCochain d = cech_delta(w);
    CHECK(d.level(1).empty());
}

TEST_CASE("cech delta on a triple of constants") {
    auto c = make_circle_cover(3, 0.3);
    auto t = make_torus_cover(3, 3, 0.3);
    // triple intersections on the torus cover exist for boxes sharing a corner
    DiffCochain w(1, t);
    const int a = t->piece_index({0, 0}), b = t->piece_index({0, 1}), e = t->piece_index({1, 0});
    MultiIndex abc{a, b, e};
    REQUIRE(t->intersects(abc));
    w.set_component({a, b}, TrigForm::constant(2, 1.0));
    w.set_component({b, e}, TrigForm::constant(2, 2.0));
    w.set_component({a, e}, TrigForm::constant(2, 4.0));
    DiffCochain d = cech_delta(w);
    CHECK(d.component(abc).max_abs() == doctest::Approx(1.0));
    CHECK(d.component(abc).terms()[0].coef.real() == doctest::Approx(-1.0));
    (void)c;
}

TEST_CASE("total differential squares to zero") {
    auto c1 = make_circle_cover(4, 0.2);
    auto c2 = make_torus_cover(3, 4, 0.3);
    for (int trial = 0; trial < 12; ++trial) {
        Rng rng = split_rng(11, trial);
        int deg = 1 + trial % 3;
        auto cov = (trial % 2) ? c2 : c1;
        DiffCochain w = random_cochain(rng, deg, cov);
        CHECK(total_d(total_d(w)).max_abs() <= 1e-10);
        CHECK(cech_delta(cech_delta(w)).max_abs() <= 1e-10);
    }
}

TEST_CASE("homotopy identity for refinements") {
    auto cs = {make_circle_cover(4, 0.5), make_torus_cover(3, 3, 0.6)};
    int trial = 0;
    for (const auto& cov : cs) {
        Refinement ref = refine(cov, 2);
        for (int deg = 1; deg <= 3; ++deg, ++trial) {
            Rng rng = split_rng(5, trial);
            DiffCochain w = random_cochain(rng, deg, cov);
            DiffCochain lhs = total_d(homotopy_k(w, ref.sigma, ref.sigma_prime)) +
                              homotopy_k(total_d(w), ref.sigma, ref.sigma_prime);
            DiffCochain rhs = restrict(w, ref.sigma) - restrict(w, ref.sigma_prime);
            if (deg <= cov->num_factors() + 1) CHECK(rhs.max_abs() > 1e-3);
            CHECK((lhs - rhs).max_abs() <= 1e-10);
        }
    }
}

TEST_CASE("restriction commutes with the total differential") {
    auto cov = make_torus_cover(3, 3, 0.6);
    Refinement ref = refine(cov, 2);
    Rng rng = split_rng(3, 0);
    DiffCochain w = random_cochain(rng, 2, cov);
    CHECK((total_d(restrict(w, ref.sigma)) - restrict(total_d(w), ref.sigma)).max_abs() <= 1e-12);
}

TEST_CASE("random cocycles are cocycles") {
    auto cov = make_torus_cover(3, 3, 0.4);
    for (int deg = 1; deg <= 3; ++deg) {
        Rng rng = split_rng(9, deg);
        CHECK(is_cocycle(random_cocycle(rng, deg, cov), 1e-10));
    }
}
