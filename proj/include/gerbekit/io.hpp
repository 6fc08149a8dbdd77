#pragma once

#include <string>
#include <vector>

#include "gerbekit/lattice.hpp"
#include "gerbekit/modform.hpp"
#include "json.hpp"

namespace gerbekit {

// "RE,IM" -> complex.
cplx parse_complex(const std::string& s);

// Complex coordinates from a file holding either a JSON array of [re, im]
// pairs or whitespace-separated "re im" pairs. The word "zeros" gives the zero
// vector of the requested rank.
std::vector<cplx> read_z(const std::string& spec, int rank);

// Builtin name or a JSON definition file {name, rank, gram}.
IntegralLattice lattice_from_spec(const std::string& spec);
IntegralLattice lattice_from_json(const nlohmann::json& j);
nlohmann::json to_json(const IntegralLattice& L);

// {"S": [a, b, c, d]}, {"T": {"q1": [...], "q2": [...]}}, {"W": [[...]]},
// {"reflection": root}, or an array of these read as a word.
GroupElement group_element_from_json(const nlohmann::json& j, const IntegralLattice& L);

// {"tau": [re, im], "z": [[re, im], ...]}; "z": "zeros" is allowed.
ModuliPoint moduli_point_from_json(const nlohmann::json& j, int rank);
nlohmann::json to_json(const ModuliPoint& x);

// A JSON string argument, or the contents of a file when the argument names one.
nlohmann::json json_argument(const std::string& arg);

}  // namespace gerbekit
