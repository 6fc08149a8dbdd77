#include <cmath>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>

#include "CLI11.hpp"
#include "gerbekit/cochain.hpp"
#include "gerbekit/fiberint.hpp"
#include "gerbekit/holonomy.hpp"
#include "gerbekit/io.hpp"
#include "gerbekit/modform.hpp"
#include "gerbekit/random.hpp"
#include "gerbekit/suite.hpp"
#include "json.hpp"

using namespace gerbekit;
using ojson = nlohmann::ordered_json;

namespace {

constexpr double kPi = 3.14159265358979323846;

struct UsageError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

void emit(const ojson& j) { std::cout << j.dump(2) << "\n"; }

nlohmann::json read_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw UsageError("cannot open " + path);
    return nlohmann::json::parse(in);
}

ojson value_json(cplx v, double tol, long long terms) {
    ojson j;
    j["value_re"] = v.real();
    j["value_im"] = v.imag();
    j["tol_used"] = tol;
    j["terms_summed"] = terms;
    return j;
}

ModuliPoint point_from_flags(const std::string& point, const std::string& tau, const std::string& z, int rank) {
    if (!point.empty()) return moduli_point_from_json(json_argument(point), rank);
    if (tau.empty()) throw UsageError("give --point or --tau");
    return {parse_complex(tau), read_z(z, rank)};
}

ThetaMethod method_from_string(const std::string& s) {
    if (s == "auto") return ThetaMethod::Auto;
    if (s == "enumerate") return ThetaMethod::Enumerate;
    if (s == "coset") return ThetaMethod::CosetProduct;
    throw UsageError("unknown theta method: " + s);
}

int default_trials(const std::string& suite) {
    if (suite == "cochain") return 50;
    if (suite == "lattice") return 1;
    return 20;
}

DiffCochain example_cochain(const std::string& name, DecompositionPtr& dec, std::vector<int>& rho) {
    if (name == "circle-flat") {
        auto cov = make_circle_cover(5, 0.2);
        dec = make_circle_decomposition(5);
        rho = subordinate(*dec, *cov);
        return flat_circle_cocycle(cov, 1.1);
    }
    if (name == "circle-global") {
        auto cov = make_circle_cover(4, 0.3);
        dec = make_circle_decomposition(4);
        rho = subordinate(*dec, *cov);
        return from_global_form(TrigForm::monomial(1, {0}, {0}, 0.37), cov);
    }
    if (name == "torus-global") {
        auto cov = make_torus_cover(3, 3, 0.45 * 2 * kPi / 3);
        dec = make_torus_hex_decomposition(9);
        rho = subordinate(*dec, *cov);
        return from_global_form(TrigForm::monomial(2, {0, 0}, {0, 1}, 0.25), cov);
    }
    throw UsageError("unknown example: " + name + " (circle-flat, circle-global, torus-global)");
}

std::vector<int> parse_rho(const std::string& s) {
    std::vector<int> out;
    std::stringstream in(s);
    std::string item;
    while (std::getline(in, item, ',')) {
        try {
            out.push_back(std::stoi(item));
        } catch (const std::exception&) {
            throw UsageError("malformed --rho entry '" + item + "'");
        }
    }
    return out;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"gerbekit: differential cochains, holonomy, fiber integration, Chern-Simons forms, lattices and "
                 "automorphy factors"};
    app.require_subcommand(1);

    // verify
    std::string suite;
    std::optional<int> trials;
    std::uint64_t seed = 0;
    std::optional<double> tol;
    std::string report_path;
    bool timing = false;
    auto* verify = app.add_subcommand("verify", "run a verification suite and print its JSON report");
    verify->add_option("--suite", suite, "cochain, holonomy, pushforward, chernsimons, lattice or modular")->required();
    verify->add_option("--trials", trials, "number of random instances");
    verify->add_option("--seed", seed, "seed of the instance generator");
    verify->add_option("--tol", tol, "tolerance (pass iff max defect <= tol)");
    verify->add_option("--report", report_path, "also write the report to this file");
    verify->add_flag("--timing", timing, "include wall time in the report");

    // theta / character
    std::string lattice_spec, tau_s, z_s = "zeros", method_s = "auto";
    double series_tol = kDefaultSeriesTol;
    auto* theta = app.add_subcommand("theta", "lattice theta function");
    theta->add_option("--lattice", lattice_spec, "builtin name or definition file")->required();
    theta->add_option("--tau", tau_s, "RE,IM")->required();
    theta->add_option("--z", z_s, "file of complex coordinate pairs, or 'zeros'");
    theta->add_option("--tol", series_tol, "series tolerance");
    theta->add_option("--method", method_s, "auto, enumerate or coset");
    auto* charc = app.add_subcommand("character", "Theta / eta^16 for a rank-16 lattice");
    charc->add_option("--lattice", lattice_spec, "builtin name or definition file")->required();
    charc->add_option("--tau", tau_s, "RE,IM")->required();
    charc->add_option("--z", z_s, "file of complex coordinate pairs, or 'zeros'");
    charc->add_option("--tol", series_tol, "series tolerance");

    // factor / act
    std::string family_s, element_s, point_s;
    auto* fac = app.add_subcommand("factor", "automorphy factor phi_g(x)");
    fac->add_option("--family", family_s, "char, det_u1, ad, rho, anomaly_ad or anomaly_rho")->required();
    fac->add_option("--lattice", lattice_spec, "override the family's lattice");
    fac->add_option("--element", element_s, "group element as JSON or a JSON file")->required();
    fac->add_option("--point", point_s, "point as JSON or a JSON file");
    fac->add_option("--tau", tau_s, "RE,IM (with --z instead of --point)");
    fac->add_option("--z", z_s, "file of complex coordinate pairs, or 'zeros'");
    auto* actc = app.add_subcommand("act", "apply a group element to a point");
    actc->add_option("--group,--lattice", lattice_spec, "lattice of the group")->required();
    actc->add_option("--element", element_s, "group element as JSON or a JSON file")->required();
    actc->add_option("--point", point_s, "point as JSON or a JSON file");
    actc->add_option("--tau", tau_s, "RE,IM (with --z instead of --point)");
    actc->add_option("--z", z_s, "file of complex coordinate pairs, or 'zeros'");

    // holonomy / pushforward
    std::string example_s, cochain_path, dec_id, rho_s, output_path;
    auto* hol = app.add_subcommand("holonomy", "holonomy of a cocycle over a dual cell decomposition");
    hol->add_option("--example", example_s, "circle-flat, circle-global or torus-global");
    hol->add_option("--cochain", cochain_path, "cochain file");
    hol->add_option("--decomposition", dec_id, "e.g. circle_dec(N=4) or torus_hex(N=9)");
    hol->add_option("--rho", rho_s, "comma-separated subordination (default: first containing piece)");
    auto* push = app.add_subcommand("pushforward", "integrate a cochain on X x E over the fiber E");
    push->add_option("--cochain", cochain_path, "cochain file on a product cover")->required();
    push->add_option("--decomposition", dec_id, "decomposition of the fiber")->required();
    push->add_option("--rho", rho_s, "comma-separated subordination");
    push->add_option("--output", output_path, "write the output cochain here instead of stdout");

    // lattice
    std::string name_s;
    long long enum_norm = -1;
    auto* lat = app.add_subcommand("lattice", "lattice data and vector counts");
    lat->add_option("--name", name_s, "builtin name or definition file")->required();
    lat->add_option("--enumerate-norm", enum_norm, "print the number of vectors of each norm up to K");

    // random-cochain
    std::string cover_id;
    int degree = 1;
    bool cocycle = false, flat = false;
    auto* rnd = app.add_subcommand("random-cochain", "write a random cochain file");
    rnd->add_option("--cover", cover_id, "cover id, e.g. circle(N=3,ov=0.3)xcircle(N=3,ov=0.3)")->required();
    rnd->add_option("--degree", degree, "degree")->required();
    rnd->add_option("--seed", seed, "seed");
    rnd->add_flag("--cocycle", cocycle, "draw a cocycle");
    rnd->add_flag("--flat", flat, "flat cochain (no field strength)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (*verify) {
            const double t = tol.value_or(default_tolerance(suite));
            SuiteReport rep = run_suite(suite, trials.value_or(default_trials(suite)), seed, t);
            ojson j = rep.to_json(timing);
            emit(j);
            if (!report_path.empty()) {
                std::ofstream out(report_path);
                if (!out) throw UsageError("cannot write " + report_path);
                out << j.dump(2) << "\n";
            }
            for (const auto& c : rep.checks)
                std::cerr << (c.pass ? "[PASS] " : "[FAIL] ") << c.name << " max_defect=" << c.max_defect
                          << " samples=" << c.samples << "\n";
            for (const auto& m : rep.measurements)
                std::cerr << "[INFO] " << m.name << " = " << m.re << (m.im < 0 ? " - " : " + ") << std::abs(m.im)
                          << "i\n";
            std::cerr << suite << ": " << (rep.pass() ? "PASS" : "FAIL") << " in " << rep.wall_seconds << " s\n";
            return rep.pass() ? 0 : 1;
        }
        if (*theta || *charc) {
            IntegralLattice L = lattice_from_spec(lattice_spec);
            const cplx tau = parse_complex(tau_s);
            auto z = read_z(z_s, L.rank());
            ThetaResult r = *theta ? theta_lattice(L, tau, z, series_tol, method_from_string(method_s))
                                   : character(L, tau, z, series_tol);
            emit(value_json(r.value, r.tol_used, r.terms_summed));
            return 0;
        }
        if (*fac) {
            AutomorphyFamily fam = make_family(family_from_string(family_s));
            if (!lattice_spec.empty()) fam = make_family(fam.name, lattice_from_spec(lattice_spec));
            GroupElement g = group_element_from_json(json_argument(element_s), fam.lattice);
            ModuliPoint x = point_from_flags(point_s, tau_s, z_s, fam.lattice.rank());
            emit(value_json(factor(fam, g, x), 0.0, 0));
            return 0;
        }
        if (*actc) {
            IntegralLattice L = lattice_from_spec(lattice_spec);
            GroupElement g = group_element_from_json(json_argument(element_s), L);
            ModuliPoint x = point_from_flags(point_s, tau_s, z_s, L.rank());
            ojson j = to_json(act(g, x));
            emit(j);
            return 0;
        }
        if (*hol) {
            DecompositionPtr dec;
            std::vector<int> rho;
            std::optional<DiffCochain> w;
            if (!example_s.empty()) {
                w = example_cochain(example_s, dec, rho);
            } else {
                if (cochain_path.empty() || dec_id.empty()) throw UsageError("give --example or --cochain with --decomposition");
                auto j = read_json_file(cochain_path);
                w = cochain_from_json(j, cover_from_id(j.at("cover_id").get<std::string>()));
                dec = decomposition_from_id(dec_id);
                rho = subordinate(*dec, *w->cover());
            }
            if (!rho_s.empty()) rho = parse_rho(rho_s);
            HolonomyResult r = holonomy_detail(*w, *dec, rho);
            ojson j;
            j["value"] = r.value;
            j["phase_re"] = std::cos(r.value);
            j["phase_im"] = std::sin(r.value);
            j["cells_used"] = r.cells_used;
            emit(j);
            return 0;
        }
        if (*push) {
            auto j = read_json_file(cochain_path);
            const std::string id = j.at("cover_id").get<std::string>();
            auto parts = cover_components_from_id(id);
            if (parts.size() < 2) throw UsageError("pushforward needs a cochain on a product cover");
            CoverPtr X = parts[0];
            for (std::size_t i = 1; i + 1 < parts.size(); ++i) X = product_cover(X, parts[i]);
            ProductSetup s(X, parts.back(), decomposition_from_id(dec_id));
            if (s.XE->id() != id) throw UsageError("cover id " + id + " is not base x fiber");
            DiffCochain w = cochain_from_json(j, s.XE);
            std::vector<int> rho = rho_s.empty() ? subordinate(*s.dec, *s.E) : parse_rho(rho_s);
            DiffCochain out = pushforward(w, s, rho);
            ojson rep;
            rep["input_cover"] = id;
            rep["decomposition"] = s.dec->id();
            rep["output_cover"] = X->id();
            rep["stokes_defect"] = pushforward_commutes_defect(w, s, rho);
            rep["input_is_cocycle"] = is_cocycle(w);
            rep["output_is_cocycle"] = is_cocycle(out);
            if (!output_path.empty()) {
                std::ofstream f(output_path);
                if (!f) throw UsageError("cannot write " + output_path);
                f << to_json(out).dump(2) << "\n";
                rep["output"] = output_path;
            } else {
                rep["cochain"] = to_json(out);
            }
            emit(rep);
            return 0;
        }
        if (*lat) {
            IntegralLattice L = lattice_from_spec(name_s);
            ojson j;
            if (enum_norm < 0) {
                j["name"] = L.name();
                j["rank"] = L.rank();
                j["determinant"] = L.determinant();
                j["even"] = L.is_even();
                j["gram"] = to_json(L)["gram"];
            } else {
                for (auto [N, c] : count_by_norm(L, enum_norm)) j[std::to_string(N)] = c;
            }
            emit(j);
            return 0;
        }
        if (*rnd) {
            CoverPtr cov = cover_from_id(cover_id);
            Rng rng = split_rng(seed, 0);
            DiffCochain w = cocycle ? random_cocycle(rng, degree, cov) : random_cochain(rng, degree, cov, flat);
            std::cout << to_json(w).dump(2) << "\n";
            return 0;
        }
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const nlohmann::json::exception& e) {
        std::cerr << "error: malformed JSON: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 2;
}
