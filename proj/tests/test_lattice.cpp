#include <random>
#include <set>

#include "doctest.h"
#include "gerbekit/lattice.hpp"

using namespace gerbekit;

namespace {

// Independent oracle for E8: vectors of Z^8 u (Z+1/2)^8 with even coordinate
// sum, counted by brute force over doubled coordinates in [-4, 4].
std::map<int, long long> e8_bruteforce_counts(int max_norm) {
    std::map<int, long long> out;
    std::vector<int> y(8);
    for (int parity = 0; parity < 2; ++parity) {
        std::vector<int> vals;
        for (int v = -4; v <= 4; ++v)
            if ((v & 1) == parity) vals.push_back(v);
        std::vector<std::size_t> idx(8, 0);
        while (true) {
            int s = 0, nrm4 = 0;
            for (int i = 0; i < 8; ++i) {
                y[i] = vals[idx[i]];
                s += y[i];
                nrm4 += y[i] * y[i];
            }
            // y = 2x; sum x even <=> sum y divisible by 4; norm = |y|^2 / 4
            if (s % 4 == 0 && nrm4 % 4 == 0 && nrm4 / 4 <= max_norm) out[nrm4 / 4]++;
            int k = 0;
            while (k < 8 && ++idx[k] == vals.size()) idx[k++] = 0;
            if (k == 8) break;
        }
    }
    return out;
}

}  // namespace

TEST_CASE("builtin lattices") {
    auto e8 = builtin("e8");
    CHECK(e8.rank() == 8);
    CHECK(e8.determinant() == 1);
    CHECK(e8.is_even());
    auto ee = builtin("e8e8");
    CHECK(ee.rank() == 16);
    CHECK(ee.determinant() == 1);
    CHECK(ee.gram().topRightCorner(8, 8).isZero());
    auto d = builtin("d16plus");
    CHECK(d.rank() == 16);
    CHECK(d.determinant() == 1);
    CHECK(d.is_even());
    auto s = builtin("spin16_coroot");
    CHECK(s.determinant() == 4);
    CHECK(s.is_even());
    CHECK_THROWS_AS(builtin("e7"), std::invalid_argument);
}

TEST_CASE("e8 enumeration against brute force") {
    auto e8 = builtin("e8");
    auto oracle = e8_bruteforce_counts(4);
    CHECK(oracle[2] == 240);
    CHECK(oracle[4] == 2160);
    auto by = enumerate_by_norm(e8, 4);
    CHECK(by[0].size() == 1);
    CHECK(by[0][0] == LatticeVector(8, 0));
    CHECK((long long)by[2].size() == oracle[2]);
    CHECK((long long)by[4].size() == oracle[4]);
    CHECK(by.count(1) == 0);
    auto cnt = count_by_norm(e8, 6);
    CHECK(cnt[6] == 6720);
    // closed under negation and distinct
    std::set<LatticeVector> all(by[4].begin(), by[4].end());
    CHECK(all.size() == by[4].size());
    for (auto v : by[4]) {
        for (auto& c : v) c = -c;
        CHECK(all.count(v) == 1);
    }
}

TEST_CASE("theta coefficients of e8e8 are the self convolution of e8") {
    auto c8 = count_by_norm(builtin("e8"), 6);
    auto c16 = count_by_norm(builtin("e8e8"), 6);
    for (long long k = 0; k <= 6; k += 2) {
        long long conv = 0;
        for (long long j = 0; j <= k; j += 2) conv += c8[j] * c8[k - j];
        CHECK(c16[k] == conv);
    }
}

TEST_CASE("roots and reflections") {
    auto e8 = builtin("e8");
    auto rs = roots(e8);
    CHECK(rs.size() == 240);
    CHECK(roots(builtin("e8e8")).size() == 480);
    CHECK(roots(builtin("d16plus")).size() == 480);
    CHECK(roots(builtin("spin16_coroot")).size() == 112);
    std::set<LatticeVector> rset(rs.begin(), rs.end());
    std::mt19937_64 rng(5);
    std::uniform_int_distribution<int> c(-3, 3);
    for (int t = 0; t < 50; ++t) {
        const auto& r = rs[rng() % rs.size()];
        LatticeVector v(8);
        for (auto& x : v) x = c(rng);
        auto w = reflect(e8, r, v);
        CHECK(e8.norm(w) == e8.norm(v));
        CHECK(reflect(e8, r, w) == v);
        CHECK(rset.count(reflect(e8, r, rs[rng() % rs.size()])) == 1);
    }
    LatticeVector neg = rs[0];
    for (auto& x : neg) x = -x;
    CHECK(reflect(e8, rs[0], rs[0]) == neg);
    CHECK_THROWS_AS(reflect(e8, LatticeVector(8, 0), rs[0]), std::invalid_argument);
}

TEST_CASE("coxeter numbers from roots") {
    CHECK(coxeter_from_roots(builtin("e8")) == Rational{30, 1});
    CHECK(coxeter_from_roots(builtin("a1")) == Rational{2, 1});
    CHECK(coxeter_from_roots(builtin("d16plus")) == Rational{30, 1});
    CHECK_THROWS_AS(coxeter_from_roots(builtin("e8e8")), std::invalid_argument);
}

TEST_CASE("spin16 embedding") {
    auto e8 = builtin("e8");
    auto s = builtin("spin16_coroot");
    // the coroot labelled (x1 + x2)/2 has weights (1, 1, 0, ...)
    LatticeVector a(8, 0);
    // e1-e2 + 2(e2-e3) + ... : build from weights by solving in the D8 basis
    auto coroots = roots(s);
    CHECK(coroots.size() == 112);
    int found = 0;
    for (const auto& r : coroots) {
        auto w = spin16_weights(r);
        if (w == std::vector<long long>{1, 1, 0, 0, 0, 0, 0, 0}) {
            ++found;
            auto img = spin16_embedding(r);
            CHECK(e8.norm(img) == 2);
            CHECK(e8.scaled_coordinates(img) == std::vector<long long>{2, 2, 0, 0, 0, 0, 0, 0});
        }
    }
    CHECK(found == 1);
    CHECK(spin16_embedding(a) == LatticeVector(8, 0));
    std::set<LatticeVector> e8roots;
    for (const auto& r : roots(e8)) e8roots.insert(r);
    std::set<LatticeVector> images;
    for (const auto& r : coroots) {
        auto img = spin16_embedding(r);
        CHECK(e8roots.count(img) == 1);
        CHECK(e8.norm(img) == s.norm(r));
        images.insert(img);
    }
    CHECK(images.size() == 112);
}

TEST_CASE("weight identity, weyl index, anomaly exponents") {
    auto w = weight_identity_check();
    CHECK(w.residual == 0);
    CHECK(w.literal_residual == 2);
    CHECK(weyl_order_e8() == 696729600LL);
    CHECK(weyl_order_d8() == 5160960LL);
    CHECK(weyl_index_arithmetic() == 135);
    CHECK(135 == 3 * 3 * 3 * 5);
    auto a = anomaly_exponents("e8e8_adjoint");
    CHECK(a.alpha == 30);
    CHECK(a.beta == 464);
    CHECK(a.alpha * (a.n + 22) == 960);
    CHECK(a.r + a.beta == 960);
    auto b = anomaly_exponents("spin16_rho");
    CHECK(b.alpha * (b.n + 22) == b.r + b.beta);
    CHECK(b.r == 32);
    CHECK_THROWS_AS(anomaly_exponents("e7"), std::invalid_argument);
}
