#include "gerbekit/io.hpp"

#include <filesystem>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace gerbekit {

namespace {

cplx complex_from_json(const nlohmann::json& j) {
    if (j.is_number()) return {j.get<double>(), 0.0};
    if (!j.is_array() || j.size() != 2) throw std::invalid_argument("expected a [re, im] pair");
    return {j[0].get<double>(), j[1].get<double>()};
}

std::string slurp(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("cannot open " + path);
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

Generator generator_from_json(const nlohmann::json& j, const IntegralLattice& L) {
    if (!j.is_object() || j.size() != 1) throw std::invalid_argument("group element must have exactly one key");
    const std::string key = j.begin().key();
    const nlohmann::json& v = j.begin().value();
    if (key == "S") {
        auto m = v.get<std::vector<long long>>();
        if (m.size() != 4) throw std::invalid_argument("S needs [a, b, c, d]");
        return GroupElement::S(m[0], m[1], m[2], m[3]).word()[0];
    }
    if (key == "T") {
        auto q1 = v.at("q1").get<LatticeVector>(), q2 = v.at("q2").get<LatticeVector>();
        if (int(q1.size()) != L.rank() || int(q2.size()) != L.rank())
            throw std::invalid_argument("translation rank does not match the lattice");
        return GroupElement::T(q1, q2).word()[0];
    }
    if (key == "W") {
        auto rows = v.get<std::vector<std::vector<long long>>>();
        IntMatrix m(rows.size(), rows.empty() ? 0 : rows[0].size());
        for (std::size_t i = 0; i < rows.size(); ++i) {
            if (rows[i].size() != rows.size()) throw std::invalid_argument("W must be square");
            for (std::size_t k = 0; k < rows[i].size(); ++k) m(i, k) = rows[i][k];
        }
        return GroupElement::W(m, L).word()[0];
    }
    if (key == "reflection") {
        auto r = v.get<LatticeVector>();
        if (int(r.size()) != L.rank() || L.norm(r) != 2) throw std::invalid_argument("reflection needs a root");
        return weyl_reflection(L, r).word()[0];
    }
    throw std::invalid_argument("unknown group element kind: " + key);
}

}  // namespace

cplx parse_complex(const std::string& s) {
    auto comma = s.find(',');
    try {
        std::size_t used = 0;
        if (comma == std::string::npos) {
            double re = std::stod(s, &used);
            if (used != s.size()) throw std::invalid_argument("");
            return {re, 0.0};
        }
        std::string a = s.substr(0, comma), b = s.substr(comma + 1);
        double re = std::stod(a, &used);
        if (used != a.size()) throw std::invalid_argument("");
        double im = std::stod(b, &used);
        if (used != b.size()) throw std::invalid_argument("");
        return {re, im};
    } catch (const std::exception&) {
        throw std::invalid_argument("expected RE,IM but got '" + s + "'");
    }
}

std::vector<cplx> read_z(const std::string& spec, int rank) {
    if (spec == "zeros") return std::vector<cplx>(rank, 0.0);
    std::string text = slurp(spec);
    std::vector<cplx> z;
    auto first = text.find_first_not_of(" \t\r\n");
    if (first != std::string::npos && text[first] == '[') {
        for (const auto& p : nlohmann::json::parse(text)) z.push_back(complex_from_json(p));
    } else {
        std::istringstream in(text);
        double re, im;
        while (in >> re >> im) z.emplace_back(re, im);
        if (!in.eof()) throw std::invalid_argument("malformed coordinate file " + spec);
    }
    if (int(z.size()) != rank)
        throw std::invalid_argument("expected " + std::to_string(rank) + " coordinates, got " + std::to_string(z.size()));
    return z;
}

IntegralLattice lattice_from_json(const nlohmann::json& j) {
    auto rows = j.at("gram").get<std::vector<std::vector<long long>>>();
    const int rank = j.value("rank", int(rows.size()));
    if (int(rows.size()) != rank) throw std::invalid_argument("gram does not match rank");
    IntMatrix g(rank, rank);
    for (int i = 0; i < rank; ++i) {
        if (int(rows[i].size()) != rank) throw std::invalid_argument("gram must be square");
        for (int k = 0; k < rank; ++k) g(i, k) = rows[i][k];
    }
    return IntegralLattice(j.value("name", std::string("custom")), g);
}

IntegralLattice lattice_from_spec(const std::string& spec) {
    if (std::filesystem::exists(spec)) return lattice_from_json(nlohmann::json::parse(slurp(spec)));
    return builtin(spec);
}

nlohmann::json to_json(const IntegralLattice& L) {
    nlohmann::json g = nlohmann::json::array();
    for (int i = 0; i < L.rank(); ++i) {
        std::vector<long long> row(L.rank());
        for (int k = 0; k < L.rank(); ++k) row[k] = L.gram()(i, k);
        g.push_back(row);
    }
    return {{"name", L.name()}, {"rank", L.rank()}, {"gram", g}};
}

GroupElement group_element_from_json(const nlohmann::json& j, const IntegralLattice& L) {
    std::vector<Generator> word;
    if (j.is_array())
        for (const auto& g : j) word.push_back(generator_from_json(g, L));
    else
        word.push_back(generator_from_json(j, L));
    return GroupElement::from_generators(std::move(word));
}

ModuliPoint moduli_point_from_json(const nlohmann::json& j, int rank) {
    ModuliPoint x;
    x.tau = complex_from_json(j.at("tau"));
    const auto& z = j.at("z");
    if (z.is_string() && z.get<std::string>() == "zeros") {
        x.z.assign(rank, 0.0);
    } else {
        for (const auto& p : z) x.z.push_back(complex_from_json(p));
    }
    if (int(x.z.size()) != rank) throw std::invalid_argument("point has the wrong number of coordinates");
    return x;
}

nlohmann::json to_json(const ModuliPoint& x) {
    nlohmann::json z = nlohmann::json::array();
    for (auto v : x.z) z.push_back({v.real(), v.imag()});
    return {{"tau", {x.tau.real(), x.tau.imag()}}, {"z", z}};
}

nlohmann::json json_argument(const std::string& arg) {
    auto first = arg.find_first_not_of(" \t\r\n");
    if (first != std::string::npos && (arg[first] == '{' || arg[first] == '[')) return nlohmann::json::parse(arg);
    return nlohmann::json::parse(slurp(arg));
}

}  // namespace gerbekit
