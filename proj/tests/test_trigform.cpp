#include <algorithm>
#include <cmath>

#include "doctest.h"
#include "gerbekit/random.hpp"
#include "gerbekit/trigform.hpp"

using namespace gerbekit;

namespace {

constexpr double kPi = 3.14159265358979323846;

// Coefficient of dx_K at x of a wedge b, summed pointwise over all splittings
// of K, with the sign found by bubble-sorting the concatenated axis list.
cd wedge_oracle(const TrigForm& a, const TrigForm& b, std::uint32_t K, const std::vector<double>& x) {
    cd acc = 0;
    for (std::uint32_t I = K;; I = (I - 1) & K) {
        std::uint32_t J = K & ~I;
        if (popcount(I) == a.degree() && popcount(J) == b.degree()) {
            std::vector<int> seq = axes_list(I);
            for (int j : axes_list(J)) seq.push_back(j);
            int sign = 1;
            for (std::size_t p = 0; p < seq.size(); ++p)
                for (std::size_t q = 0; q + 1 < seq.size() - p; ++q)
                    if (seq[q] > seq[q + 1]) {
                        std::swap(seq[q], seq[q + 1]);
                        sign = -sign;
                    }
            acc += double(sign) * a.evaluate_coefficient(I, x) * b.evaluate_coefficient(J, x);
        }
        if (I == 0) break;
    }
    return acc;
}

}  // namespace

TEST_CASE("wedge of monomials") {
    TrigForm dx1 = TrigForm::monomial(2, {0, 0}, {0}, 1.0);
    CHECK(wedge(dx1, dx1).is_zero());
    TrigForm a = TrigForm::monomial(2, {1, 0}, {0}, 1.0), b = TrigForm::monomial(2, {0, 1}, {1}, 1.0);
    CHECK((wedge(a, b) - TrigForm::monomial(2, {1, 1}, {0, 1}, 1.0)).is_zero());
    CHECK_THROWS_AS(wedge(TrigForm::monomial(2, {0, 0}, {0, 1}, 1.0), a), std::invalid_argument);
    CHECK_THROWS_AS(wedge(a, TrigForm::monomial(3, {0, 0, 0}, {0}, 1.0)), std::invalid_argument);
}

TEST_CASE("wedge against pointwise oracle and graded commutativity") {
    for (int t = 0; t < 20; ++t) {
        Rng rng = split_rng(101, t);
        int p = t % 3, q = (t / 3) % 2 + 1;
        TrigForm a = random_trigform(rng, 4, p, {3, 5, false});
        TrigForm b = random_trigform(rng, 4, q, {3, 5, false});
        TrigForm w = wedge(a, b);
        std::vector<double> x{0.3, -1.2, 2.5, 0.7};
        for (std::uint32_t K = 0; K < 16; ++K)
            if (popcount(K) == p + q) CHECK(std::abs(w.evaluate_coefficient(K, x) - wedge_oracle(a, b, K, x)) <= 1e-12);
        double s = ((p * q) % 2) ? -1.0 : 1.0;
        CHECK((w - s * wedge(b, a)).max_abs() <= 1e-12);
    }
}

TEST_CASE("exterior derivative") {
    TrigForm e = TrigForm::monomial(1, {1}, {}, 1.0);
    CHECK((exterior_d(e) - TrigForm::monomial(1, {1}, {0}, cd(0, 1))).is_zero());
    // cos x2 dx1
    TrigForm c = TrigForm::monomial(2, {0, 1}, {0}, 0.5) + TrigForm::monomial(2, {0, -1}, {0}, 0.5);
    // sin x2 = (e^{ix2} - e^{-ix2}) / 2i
    TrigForm sn = TrigForm::monomial(2, {0, 1}, {0, 1}, cd(0, -0.5)) + TrigForm::monomial(2, {0, -1}, {0, 1}, cd(0, 0.5));
    CHECK((exterior_d(c) - sn).max_abs() <= 1e-15);
    for (int t = 0; t < 20; ++t) {
        Rng rng = split_rng(102, t);
        TrigForm a = random_trigform(rng, 3, t % 3);
        CHECK(exterior_d(exterior_d(a)).is_zero());
        TrigForm b = random_trigform(rng, 3, 1);
        if (a.degree() + 2 <= 3) {
            double s = (a.degree() % 2) ? -1.0 : 1.0;
            TrigForm lhs = exterior_d(wedge(a, b));
            TrigForm rhs = wedge(exterior_d(a), b) + s * wedge(a, exterior_d(b));
            CHECK((lhs - rhs).max_abs() <= 1e-12);
        }
    }
}

TEST_CASE("torus integrals") {
    CHECK(std::abs(integrate_torus(TrigForm::monomial(2, {0, 0}, {0, 1}, 1.0)) - 4 * kPi * kPi) <= 1e-12);
    CHECK(std::abs(integrate_torus(TrigForm::monomial(2, {1, 0}, {0, 1}, 1.0))) == 0.0);
    TrigForm f = TrigForm::monomial(1, {0}, {0}, 1.0) + TrigForm::monomial(1, {1}, {0}, 0.5) +
                 TrigForm::monomial(1, {-1}, {0}, 0.5);
    CHECK(std::abs(integrate_torus(f) - 2 * kPi) <= 1e-12);
    CHECK_THROWS_AS(integrate_torus(TrigForm::monomial(2, {0, 0}, {0}, 1.0)), std::invalid_argument);
    for (int t = 0; t < 10; ++t) {
        Rng rng = split_rng(103, t);
        CHECK(std::abs(integrate_torus(exterior_d(random_trigform(rng, 3, 2)))) <= 1e-12);
    }
}

TEST_CASE("cell integrals") {
    TrigForm dx = TrigForm::monomial(1, {0}, {0}, 1.0);
    CHECK(std::abs(integrate_cell(dx, Cell{1, {{0.0, 0.0}, {kPi, 0.0}}, 1}) - kPi) <= 1e-14);
    CHECK(std::abs(integrate_cell(TrigForm::monomial(1, {1}, {0}, 1.0), Cell{1, {{0.0, 0.0}, {2 * kPi, 0.0}}, 1})) <=
          1e-14);
    TrigForm vol = TrigForm::monomial(2, {0, 0}, {0, 1}, 1.0);
    CHECK(std::abs(integrate_cell(vol, Cell{2, {{0.0, 0.0}, {1.0, 0.0}, {1.0, 1.0}}, 1}) - 0.5) <= 1e-14);
    CHECK(std::abs(integrate_cell(TrigForm::constant(2, 2.0), Cell{0, {{0.1, 0.2}}, -1}) + 2.0) <= 1e-14);
}

TEST_CASE("cell integrals are additive under subdivision") {
    for (int t = 0; t < 10; ++t) {
        Rng rng = split_rng(104, t);
        TrigForm f = random_trigform(rng, 2, 2);
        std::array<double, 2> A{0.1, 0.2}, B{2.3, 0.4}, C{1.1, 2.9}, M{(A[0] + B[0]) / 2, (A[1] + B[1]) / 2};
        cd whole = integrate_cell(f, Cell{2, {A, B, C}, 1});
        cd parts = integrate_cell(f, Cell{2, {A, M, C}, 1}) + integrate_cell(f, Cell{2, {M, B, C}, 1});
        CHECK(std::abs(whole - parts) <= 1e-12);
        TrigForm g = random_trigform(rng, 1, 1);
        cd seg = integrate_cell(g, Cell{1, {{0.3, 0}, {2.0, 0}}, 1});
        cd segs = integrate_cell(g, Cell{1, {{0.3, 0}, {1.1, 0}}, 1}) + integrate_cell(g, Cell{1, {{1.1, 0}, {2.0, 0}}, 1});
        CHECK(std::abs(seg - segs) <= 1e-12);
    }
}

TEST_CASE("triangle integral against quadrature") {
    Rng rng = split_rng(105, 0);
    TrigForm f = random_trigform(rng, 2, 2);
    std::array<double, 2> A{0.1, 0.2}, B{2.3, 0.4}, C{1.1, 2.9};
    cd exact = integrate_cell(f, Cell{2, {A, B, C}, 1});
    // Dunavant-free oracle: midpoint rule on a fine barycentric grid
    const int M = 400;
    cd acc = 0;
    double det = (B[0] - A[0]) * (C[1] - A[1]) - (C[0] - A[0]) * (B[1] - A[1]);
    for (int i = 0; i < M; ++i)
        for (int j = 0; j < M - i; ++j) {
            auto pt = [&](double u, double v) {
                return std::vector<double>{A[0] + u * (B[0] - A[0]) + v * (C[0] - A[0]),
                                           A[1] + u * (B[1] - A[1]) + v * (C[1] - A[1])};
            };
            double u = (i + 1.0 / 3) / M, v = (j + 1.0 / 3) / M;
            acc += f.evaluate_coefficient(3, pt(u, v));
            if (j < M - i - 1) acc += f.evaluate_coefficient(3, pt((i + 2.0 / 3) / M, (j + 2.0 / 3) / M));
        }
    acc *= det / (2.0 * M * M);
    CHECK(std::abs(exact - acc) <= 1e-4 * std::max(1.0, std::abs(exact)));
}

TEST_CASE("fiber integration") {
    // f(x) dx ^ dy over the y circle
    TrigForm f = TrigForm::monomial(2, {1, 0}, {0, 1}, 0.7);
    CHECK((fiber_integrate_global(f, {1}) - TrigForm::monomial(1, {1}, {0}, 0.7 * 2 * kPi)).max_abs() <= 1e-12);
    CHECK(fiber_integrate_global(TrigForm::monomial(2, {1, 0}, {0}, 1.0), {1}).is_zero());
    for (int t = 0; t < 5; ++t) {
        Rng rng = split_rng(106, t);
        TrigForm a = random_trigform(rng, 3, 2);
        TrigForm g = fiber_integrate_global(a, {1, 2});
        double x0 = 0.4 + t;
        const int M = 9;
        cd acc = 0;
        for (int i = 0; i < M; ++i)
            for (int j = 0; j < M; ++j) acc += a.evaluate_coefficient(6, {x0, 2 * kPi * i / M, 2 * kPi * j / M});
        acc *= 4 * kPi * kPi / (M * M);
        CHECK(std::abs(g.evaluate_coefficient(0, {x0}) - acc) <= 1e-10);
    }
}

TEST_CASE("pullback") {
    Rng rng = split_rng(107, 0);
    TrigForm a = random_trigform(rng, 2, 1);
    CHECK((pullback(a, AffineTorusMap::identity(2)) - a).max_abs() == 0.0);
    AffineTorusMap swap(2, 2, {{0, 1}, {1, 0}}, {0, 0});
    TrigForm vol = TrigForm::monomial(2, {0, 0}, {0, 1}, 1.0);
    CHECK((pullback(vol, swap) + vol).is_zero());
    CHECK_THROWS_AS(AffineTorusMap(2, 2, {{0.5, 0}, {0, 1}}, {0, 0}), std::invalid_argument);
    for (int t = 0; t < 20; ++t) {
        Rng r = split_rng(108, t);
        std::uniform_int_distribution<int> e(-2, 2);
        std::uniform_real_distribution<double> u(-3, 3);
        std::vector<std::vector<double>> L1(3, std::vector<double>(3)), L2(3, std::vector<double>(2));
        for (auto& row : L1)
            for (auto& v : row) v = e(r);
        for (auto& row : L2)
            for (auto& v : row) v = e(r);
        AffineTorusMap m1(3, 3, L1, {u(r), u(r), u(r)}), m2(2, 3, L2, {u(r), u(r), u(r)});
        TrigForm b = random_trigform(r, 3, 1);
        CHECK((exterior_d(pullback(b, m1)) - pullback(exterior_d(b), m1)).max_abs() <= 1e-12);
        CHECK((pullback(b, m1.compose(m2)) - pullback(pullback(b, m1), m2)).max_abs() <= 1e-12);
    }
}

TEST_CASE("json round trip") {
    Rng rng = split_rng(109, 0);
    TrigForm a = random_trigform(rng, 3, 2);
    CHECK((trigform_from_json(to_json(a)) - a).max_abs() == 0.0);
    CHECK(a.is_hermitian());
}
