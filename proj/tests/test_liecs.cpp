#include <algorithm>
#include <numeric>

#include "doctest.h"
#include "gerbekit/liecs.hpp"

using namespace gerbekit;

namespace {

// Alternating multilinear evaluation of a form on basis vectors: the
// coefficient of dx_K at x times the sign sorting `axes` into K.
Mat eval_on(const MatForm& a, const std::vector<int>& axes, const std::vector<double>& x) {
    std::vector<int> s = axes;
    int sign = 1;
    for (std::size_t p = 0; p < s.size(); ++p)
        for (std::size_t q = 0; q + 1 < s.size() - p; ++q) {
            if (s[q] == s[q + 1]) return Mat::Zero(a.matrix_dim(), a.matrix_dim());
            if (s[q] > s[q + 1]) {
                std::swap(s[q], s[q + 1]);
                sign = -sign;
            }
        }
    for (std::size_t q = 0; q + 1 < s.size(); ++q)
        if (s[q] == s[q + 1]) return Mat::Zero(a.matrix_dim(), a.matrix_dim());
    return double(sign) * a.evaluate(axes_mask(s), x);
}

int perm_sign(const std::vector<int>& p) {
    int s = 1;
    for (std::size_t i = 0; i < p.size(); ++i)
        for (std::size_t j = i + 1; j < p.size(); ++j)
            if (p[i] > p[j]) s = -s;
    return s;
}

double factorial(int n) { return n <= 1 ? 1.0 : n * factorial(n - 1); }

// Shuffle-sum definition of the bracket evaluated on (e_{k1}, ..., e_{k_{p+q}}):
// (p+q)!/(p! q! (p+q)!) sum over permutations of sign * [a(..), b(..)].
Mat bracket_oracle(const MatForm& a, const MatForm& b, const std::vector<int>& K, const std::vector<double>& x) {
    const int p = a.degree(), q = b.degree();
    std::vector<int> perm(p + q);
    std::iota(perm.begin(), perm.end(), 0);
    Mat acc = Mat::Zero(a.matrix_dim(), a.matrix_dim());
    do {
        std::vector<int> va, vb;
        for (int i = 0; i < p; ++i) va.push_back(K[perm[i]]);
        for (int i = p; i < p + q; ++i) vb.push_back(K[perm[i]]);
        Mat A = eval_on(a, va, x), B = eval_on(b, vb, x);
        acc += double(perm_sign(perm)) * (A * B - B * A);
    } while (std::next_permutation(perm.begin(), perm.end()));
    return acc / (factorial(p) * factorial(q));
}

}  // namespace

TEST_CASE("bracket of constant monomials") {
    auto B = su2_basis();
    MatForm a = MatForm::monomial(3, {0, 0, 0}, {0}, B[0]), b = MatForm::monomial(3, {0, 0, 0}, {1}, B[1]);
    MatForm expect = MatForm::monomial(3, {0, 0, 0}, {0, 1}, B[0] * B[1] - B[1] * B[0]);
    CHECK((graded_bracket(a, b) - expect).max_abs() <= 1e-15);
    CHECK(std::abs(pairing(a, b).max_abs() - std::abs((-(B[0] * B[1]).trace())))<= 1e-15);
}

TEST_CASE("bracket against shuffle-sum oracle, antisymmetry and jacobi") {
    for (int t = 0; t < 20; ++t) {
        Rng rng = split_rng(201, t);
        int p = t % 2, q = 1 + (t / 2) % 2, r = t % 3 == 0 ? 0 : 1;
        MatForm a = random_su_form(rng, 4, p, 2), b = random_su_form(rng, 4, q, 2), c = random_su_form(rng, 4, r, 2);
        MatForm ab = graded_bracket(a, b);
        std::vector<double> x{0.2, 1.3, -0.7, 2.2};
        std::vector<int> K(p + q);
        std::iota(K.begin(), K.end(), 0);
        CHECK((eval_on(ab, K, x) - bracket_oracle(a, b, K, x)).cwiseAbs().maxCoeff() <= 1e-11);
        double s = ((p * q) % 2) ? -1.0 : 1.0;
        CHECK((ab + s * graded_bracket(b, a)).max_abs() <= 1e-12);
        if (p + q + r <= 4) {
            MatForm lhs = graded_bracket(a, graded_bracket(b, c));
            MatForm rhs = graded_bracket(ab, c) + s * graded_bracket(b, graded_bracket(a, c));
            CHECK((lhs - rhs).max_abs() <= 1e-11);
            // invariance and symmetry of the pairing
            CHECK((pairing(a, graded_bracket(b, c)) - pairing(ab, c)).max_abs() <= 1e-11);
        }
        CHECK((pairing(a, b) - s * pairing(b, a)).max_abs() <= 1e-12);
        CHECK(ab.in_su(1e-12));
    }
}

TEST_CASE("curvature") {
    auto B = su2_basis();
    MatForm A = MatForm::monomial(2, {0, 0}, {0}, B[0]) + MatForm::monomial(2, {0, 0}, {1}, B[1]);
    CHECK((curvature(A) - MatForm::monomial(2, {0, 0}, {0, 1}, B[0] * B[1] - B[1] * B[0])).max_abs() <= 1e-15);
    MatForm ab = MatForm::from_scalar(TrigForm::monomial(2, {1, 2}, {0}, 0.3), B[2]) +
                 MatForm::from_scalar(TrigForm::monomial(2, {-1, 0}, {1}, 0.7), B[2]);
    CHECK((curvature(ab) - exterior_d(ab)).max_abs() <= 1e-15);
    Rng rng = split_rng(202, 0);
    GaugeMap g = random_su2_gauge(rng, 3);
    CHECK(g.unitarity_defect() <= 1e-12);
    CHECK(curvature(g.maurer_cartan()).max_abs() <= 1e-11);
}

TEST_CASE("bianchi identity normalisation") {
    for (int t = 0; t < 5; ++t) {
        Rng rng = split_rng(203, t);
        MatForm A = random_su_form(rng, 3, 1, 2);
        CHECK(bianchi_residual(A).max_abs() <= 1e-11);
        CHECK(bianchi_residual_half(A).max_abs() > 1e-3);
    }
}

TEST_CASE("chern simons forms") {
    for (int t = 0; t < 20; ++t) {
        Rng rng = split_rng(204, t);
        MatForm A = random_su_form(rng, 3, 1, 2);
        CHECK((cs_form(A) - cs_form_via_curvature(A)).max_abs() <= 1e-12);
        CHECK(cs_form(A).is_hermitian(1e-12));
    }
    for (int t = 0; t < 8; ++t) {
        Rng rng = split_rng(205, t);
        const int m = t % 2 ? 3 : 2;
        MatForm A = random_su_form(rng, 4, 1, m, {2, 3, true});
        const auto basis = m == 2 ? su2_basis() : su3_basis();
        // make sure every direction carries a non-abelian component
        for (int j = 0; j < 4; ++j) {
            std::vector<int> k(4, 0);
            k[(j + 1) % 4] = 1;
            A += MatForm::monomial(4, k, {j}, basis[j % basis.size()]);
            k[(j + 1) % 4] = -1;
            A += MatForm::monomial(4, k, {j}, -Mat(basis[j % basis.size()].adjoint()));
        }
        REQUIRE(A.in_su());
        MatForm F = curvature(A);
        TrigForm FF = pairing(F, F);
        CHECK(FF.max_abs() > 1e-3);
        CHECK((exterior_d(cs_form(A)) - FF).max_abs() <= 1e-11);
    }
    // constant non-commuting connection
    auto B = su2_basis();
    MatForm A = MatForm::monomial(3, {0, 0, 0}, {0}, B[0]) + MatForm::monomial(3, {0, 0, 0}, {1}, B[1]) +
                MatForm::monomial(3, {0, 0, 0}, {2}, B[2]);
    TrigForm expect = (-1.0 / 6.0) * pairing(A, graded_bracket(A, A));
    CHECK((cs_form_via_curvature(A) - (pairing(A, curvature(A)) + expect)).max_abs() <= 1e-14);
    CHECK((cs_form(A) - (1.0 / 3.0) * pairing(A, graded_bracket(A, A))).max_abs() <= 1e-14);
}

TEST_CASE("gauge transformations") {
    auto B = su2_basis();
    Rng rng = split_rng(206, 0);
    MatForm A = random_su_form(rng, 3, 1, 2);
    GaugeMap c(3, 2);
    c.times_constant(Mat(std::cos(0.4) * Mat::Identity(2, 2) + std::sin(0.4) * B[1]));
    CHECK((gauge_transform(A, c) - adjoint_action(A, c)).max_abs() <= 1e-14);
    CHECK(gauge_variation_defect(A, c) <= 1e-12);
    CHECK(pulled_back_wzw(c).max_abs() == 0.0);
    GaugeMap g = random_su2_gauge(rng, 3);
    CHECK((gauge_transform(MatForm(3, 1, 2), g) - g.maurer_cartan()).max_abs() == 0.0);
    for (int t = 0; t < 10; ++t) {
        Rng r = split_rng(207, t);
        MatForm a = random_su_form(r, 3, 1, 2);
        GaugeMap h = random_su2_gauge(r, 3);
        MatForm at = gauge_transform(a, h);
        CHECK(at.in_su(1e-12));
        CHECK((curvature(at) - adjoint_action(curvature(a), h)).max_abs() <= 1e-11);
        CHECK(gauge_variation_defect(a, h) <= 1e-10);
    }
    // abelian connection and diagonal gauge map
    MatForm ab = MatForm::from_scalar(TrigForm::monomial(3, {1, 0, 2}, {1}, 0.5) +
                                          TrigForm::monomial(3, {-1, 0, -2}, {1}, 0.5),
                                      B[2]);
    GaugeMap d(3, 2);
    d.times_exp(0, 2, B[2]);
    CHECK(gauge_variation_defect(ab, d) <= 1e-14);
}

TEST_CASE("pulled back three form is closed and F.F is gauge invariant on T4") {
    for (int t = 0; t < 3; ++t) {
        Rng rng = split_rng(208, t);
        GaugeMap g = random_su2_gauge(rng, 4);
        CHECK(exterior_d(pulled_back_wzw(g)).max_abs() <= 1e-11);
        MatForm A = random_su_form(rng, 4, 1, 2, {2, 3, true});
        TrigForm FF = pairing(curvature(A), curvature(A));
        MatForm At = gauge_transform(A, g);
        CHECK((pairing(curvature(At), curvature(At)) - FF).max_abs() <= 1e-10);
    }
}
