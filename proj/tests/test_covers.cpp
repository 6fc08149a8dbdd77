#include <cmath>
#include <set>

#include "doctest.h"
#include "gerbekit/covers.hpp"

using namespace gerbekit;

namespace {
constexpr double kPi = 3.14159265358979323846;
}

TEST_CASE("circle covers") {
    auto c4 = make_circle_cover(4, 0.1);
    CHECK(c4->size() == 4);
    CHECK(c4->nerve(2, false).size() == 4);
    auto c3 = make_circle_cover(3, 0.3);
    CHECK(c3->nerve(2, false).size() == 3);
    CHECK(c3->nerve(3, false).empty());
    for (int i = 0; i < 10000; ++i) {
        double x = 2 * kPi * i / 10000.0;
        bool any = false;
        for (int p = 0; p < 4; ++p) any = any || c4->contains_point(p, {x});
        CHECK(any);
    }
    CHECK_THROWS_AS(make_circle_cover(4, 0.9), std::invalid_argument);
    CHECK_THROWS_AS(make_circle_cover(2, 0.1), std::invalid_argument);
}

TEST_CASE("torus covers") {
    auto t = make_torus_cover(4, 4, 0.1);
    CHECK(t->size() == 16);
    CHECK(t->intersects({t->piece_index({0, 0}), t->piece_index({1, 0})}));
    auto t5 = make_torus_cover(5, 5, 0.1);
    CHECK_FALSE(t5->intersects({t5->piece_index({0, 0}), t5->piece_index({2, 0})}));
}

TEST_CASE("refinement gives two distinct subordinations") {
    auto c = make_circle_cover(4, 0.5);
    Refinement r = refine(c, 2);
    CHECK(r.cover->size() == 8);
    CHECK(is_valid_subordination(r.sigma));
    CHECK(is_valid_subordination(r.sigma_prime));
    int differ = 0;
    for (int j = 0; j < 8; ++j) {
        CHECK(r.sigma.map[j] == j / 2);
        differ += r.sigma.map[j] != r.sigma_prime.map[j];
    }
    CHECK(differ == 4);
    auto t = refine(make_torus_cover(3, 3, 0.6), 2);
    CHECK(is_valid_subordination(t.sigma));
    CHECK(is_valid_subordination(t.sigma_prime));
}

TEST_CASE("circle decomposition") {
    auto d = make_circle_decomposition(4);
    CHECK(d->num_top() == 4);
    CHECK(d->faces_of_length(2).size() == 4);
    double total = 0;
    for (int i = 0; i < 4; ++i) total += cell_volume(d->top(i));
    CHECK(std::abs(total - 2 * kPi) <= 1e-12);
    auto c = make_circle_cover(4, 0.01);
    auto rho = subordinate(*d, *c);
    for (int j = 0; j < 4; ++j) CHECK(rho[j] == j);
    CHECK_THROWS_AS(make_circle_decomposition(2), std::invalid_argument);
}

TEST_CASE("hexagonal decomposition") {
    auto d = make_torus_hex_decomposition(4);
    CHECK(d->num_top() == 16);
    CHECK(d->faces_of_length(2).size() == 48);
    CHECK(d->faces_of_length(3).size() == 32);
    double area = 0;
    for (int i = 0; i < 16; ++i) area += cell_volume(d->top(i));
    CHECK(std::abs(area - 4 * kPi * kPi) <= 1e-10);
    std::map<int, int> edges_per_hex;
    for (const auto& e : d->faces_of_length(2)) {
        CHECK(d->face(e).dim == 1);
        for (int i : e) edges_per_hex[i]++;
    }
    for (const auto& [h, c] : edges_per_hex) CHECK(c == 6);
    // permuting a face flips its orientation by the permutation sign
    const auto& e = d->faces_of_length(2).front();
    CHECK(d->face({e[1], e[0]}).sign == -d->face(e).sign);
    // each face is the common boundary of its parents: its vertices lie on all of them
    for (const auto& v : d->faces_of_length(3)) {
        const auto p = d->face(v).points[0];
        for (int i : v) {
            bool found = false;
            for (const auto& q : d->top(i).points)
                found = found || (std::abs(std::remainder(q[0] - p[0], 2 * kPi)) < 1e-12 &&
                                  std::abs(std::remainder(q[1] - p[1], 2 * kPi)) < 1e-12);
            CHECK(found);
        }
    }
    auto cov = make_torus_cover(4, 4, 0.3);
    CHECK(is_subordinate(*d, *cov, subordinate(*d, *cov)));
    CHECK_THROWS_AS(subordinate(*d, *make_torus_cover(4, 4, 0.05)), std::invalid_argument);
}
