#include <cmath>

#include "doctest.h"
#include "gerbekit/holonomy.hpp"
#include "gerbekit/random.hpp"

using namespace gerbekit;

namespace {
constexpr double kPi = 3.14159265358979323846;
}

TEST_CASE("holonomy of a global one-form on the circle") {
    for (int N : {3, 5, 8}) {
        auto cov = make_circle_cover(N, 0.2);
        auto dec = make_circle_decomposition(N);
        auto rho = subordinate(*dec, *cov);
        const double alpha = 0.37;
        DiffCochain w = from_global_form(TrigForm::monomial(1, {0}, {0}, alpha), cov);
        CHECK(std::abs(holonomy(w, *dec, rho) - 2 * kPi * alpha) <= 1e-10);
    }
}

TEST_CASE("flat circle cocycle has the prescribed holonomy") {
    auto cov = make_circle_cover(5, 0.2);
    auto dec = make_circle_decomposition(5);
    auto rho = subordinate(*dec, *cov);
    DiffCochain w = flat_circle_cocycle(cov, 1.1);
    CHECK(distance_to_2pi_z(holonomy(w, *dec, rho) - 1.1) <= 1e-12);
}

TEST_CASE("holonomy changes by 2 pi Z under subordination change") {
    auto cov = make_circle_cover(4, 0.5);
    auto dec = make_circle_decomposition(4);
    auto rho = subordinate(*dec, *cov);
    auto cands = containing_pieces(*dec, *cov);
    for (int t = 0; t < 6; ++t) {
        Rng rng = split_rng(21, t);
        DiffCochain w = random_cocycle(rng, 1, cov);
        for (int i = 0; i < dec->num_top(); ++i)
            for (int alt : cands[i]) {
                auto rho2 = rho;
                rho2[i] = alt;
                CHECK(distance_to_2pi_z(invariance_defect(w, *dec, rho, rho2)) <= 1e-8);
            }
    }
}

TEST_CASE("surface holonomy of global two-form and invariance") {
    auto cov = make_torus_cover(3, 3, 0.45 * 2 * kPi / 3);
    auto dec = make_torus_hex_decomposition(9);
    auto rho = subordinate(*dec, *cov);
    auto cands = containing_pieces(*dec, *cov);
    TrigForm T = TrigForm::monomial(2, {0, 0}, {0, 1}, 0.25) + TrigForm::monomial(2, {1, 0}, {0, 1}, 0.5);
    DiffCochain g = from_global_form(T, cov);
    CHECK(std::abs(holonomy(g, *dec, rho) - 0.25 * 4 * kPi * kPi) <= 1e-10);
    for (int t = 0; t < 4; ++t) {
        Rng rng = split_rng(23, t);
        DiffCochain w = random_cocycle(rng, 2, cov);
        Rng pick = split_rng(24, t);
        auto rho2 = rho;
        for (int i = 0; i < dec->num_top(); ++i) rho2[i] = cands[i][pick() % cands[i].size()];
        double def = invariance_defect(w, *dec, rho, rho2);
        CHECK(distance_to_2pi_z(def) <= 1e-8);
    }
}
