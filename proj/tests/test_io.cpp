#include <cstdio>
#include <fstream>
#include <string>

#include "doctest.h"
#include "gerbekit/covers.hpp"
#include "gerbekit/io.hpp"
#include "gerbekit/suite.hpp"

using namespace gerbekit;

namespace {

std::string temp_file(const std::string& name, const std::string& text) {
    std::string path = "/tmp/gerbekit_test_" + name;
    std::ofstream(path) << text;
    return path;
}

}  // namespace

TEST_CASE("cover ids round-trip") {
    auto c = make_circle_cover(4, 0.5);
    auto t = make_torus_cover(3, 3, 0.6);
    auto prod = product_cover(refine(c, 2).cover, t);
    for (const auto& orig : {c, t, refine(c, 2).cover, prod}) {
        auto back = cover_from_id(orig->id());
        CHECK(back->id() == orig->id());
        CHECK(back->size() == orig->size());
        CHECK(back->nerve(2, true).size() == orig->nerve(2, true).size());
    }
    CHECK(cover_components_from_id(prod->id()).size() == 2);
    CHECK_THROWS_AS(cover_from_id("sphere(N=3)"), std::invalid_argument);
    CHECK_THROWS_AS(cover_from_id("circle(N=4,ov=0.5)x"), std::invalid_argument);
}

TEST_CASE("decomposition ids round-trip") {
    for (const auto& d : {make_circle_decomposition(12), make_torus_hex_decomposition(9)}) {
        auto back = decomposition_from_id(d->id());
        CHECK(back->id() == d->id());
        CHECK(back->num_top() == d->num_top());
    }
    CHECK_THROWS_AS(decomposition_from_id("torus_square(N=3)"), std::invalid_argument);
}

TEST_CASE("complex and coordinate parsing") {
    CHECK(parse_complex("1.5,-2") == cplx(1.5, -2));
    CHECK(parse_complex("0.25") == cplx(0.25, 0));
    CHECK_THROWS_AS(parse_complex("1,2x"), std::invalid_argument);
    CHECK_THROWS_AS(parse_complex("abc"), std::invalid_argument);

    CHECK(read_z("zeros", 3) == std::vector<cplx>(3, 0.0));
    auto js = temp_file("z.json", "[[0.1, 0.2], [0.3, -0.4]]");
    CHECK(read_z(js, 2) == std::vector<cplx>{{0.1, 0.2}, {0.3, -0.4}});
    auto txt = temp_file("z.txt", "0.1 0.2\n0.3 -0.4\n");
    CHECK(read_z(txt, 2) == std::vector<cplx>{{0.1, 0.2}, {0.3, -0.4}});
    CHECK_THROWS_AS(read_z(txt, 3), std::invalid_argument);
    CHECK_THROWS_AS(read_z(temp_file("bad.txt", "0.1 zz\n"), 1), std::invalid_argument);
    CHECK_THROWS_AS(read_z("/nonexistent/z.txt", 1), std::invalid_argument);
    std::remove(js.c_str());
    std::remove(txt.c_str());
}

TEST_CASE("lattice and group element parsing") {
    auto path = temp_file("a2.json", R"({"name": "a2", "rank": 2, "gram": [[2, -1], [-1, 2]]})");
    auto L = lattice_from_spec(path);
    CHECK(L.name() == "a2");
    CHECK(L.norm({1, 1}) == 2);
    CHECK(to_json(L)["gram"][0][1] == -1);
    CHECK(lattice_from_spec("e8").rank() == 8);
    CHECK_THROWS_AS(lattice_from_json(nlohmann::json::parse(R"({"rank": 2, "gram": [[2]]})")), std::invalid_argument);
    std::remove(path.c_str());

    auto word = group_element_from_json(
        nlohmann::json::parse(R"([{"S": [0, -1, 1, 0]}, {"T": {"q1": [1, 0], "q2": [0, 1]}}, {"reflection": [1, 0]}])"), L);
    CHECK(word.word().size() == 3);
    CHECK(group_element_from_json(nlohmann::json::parse(R"({"W": [[0, 1], [1, 0]]})"), L).is_generator());
    CHECK_THROWS_AS(group_element_from_json(nlohmann::json::parse(R"({"S": [1, 1, 1, 1]})"), L), std::invalid_argument);
    CHECK_THROWS_AS(group_element_from_json(nlohmann::json::parse(R"({"W": [[1, 1], [0, 1]]})"), L),
                    std::invalid_argument);
    CHECK_THROWS_AS(group_element_from_json(nlohmann::json::parse(R"({"reflection": [1, 1, 0]})"), L),
                    std::invalid_argument);
    CHECK_THROWS_AS(group_element_from_json(nlohmann::json::parse(R"({"U": 1})"), L), std::invalid_argument);

    auto x = moduli_point_from_json(nlohmann::json::parse(R"({"tau": [0.1, 1.2], "z": [[0.1, 0], [0, 0.2]]})"), 2);
    CHECK(x.tau == cplx(0.1, 1.2));
    CHECK(x.z[1] == cplx(0, 0.2));
    auto back = moduli_point_from_json(to_json(x), 2);
    CHECK(back.z == x.z);
    CHECK(moduli_point_from_json(nlohmann::json::parse(R"({"tau": [0, 1], "z": "zeros"})"), 2).z.size() == 2);
    CHECK_THROWS_AS(moduli_point_from_json(nlohmann::json::parse(R"({"tau": [0, 1], "z": [[0, 0]]})"), 2),
                    std::invalid_argument);
}

TEST_CASE("suite reports are deterministic and complete") {
    CHECK(suite_names().size() == 6);
    CHECK_THROWS_AS(run_suite("nonsense", 1, 0, 1e-9), std::invalid_argument);
    for (const auto& name : {"cochain", "lattice", "chernsimons"}) {
        auto a = run_suite(name, 4, 11, default_tolerance(name));
        auto b = run_suite(name, 4, 11, default_tolerance(name));
        CHECK(a.pass());
        CHECK(a.to_json().dump() == b.to_json().dump());
        CHECK_FALSE(a.to_json().contains("wall_time_s"));
        CHECK(a.to_json(true).contains("wall_time_s"));
        for (const auto& c : a.checks) CHECK(c.samples > 0);
    }
    auto c = run_suite("cochain", 6, 3, 1e-10);
    CHECK(c.check("total_d_squared").samples == 6);
    CHECK_THROWS(c.check("no_such_check"));
}
