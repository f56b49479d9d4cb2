#pragma once
#include "superspin/clifford.hpp"
#include "superspin/grassmann.hpp"
#include "superspin/orthosymplectic.hpp"
#include "superspin/spin.hpp"
#include "superspin/supermatrix.hpp"

#include <nlohmann/json.hpp>

#include <string>

namespace superspin {

using Json = nlohmann::json;

// Every reader throws FormatError on schema violations. Grassmann values also
// accept a bare number as a real body.

Json to_json(const GrassmannNumber &g);
GrassmannNumber grassmann_from_json(const Json &j, int order = -1);

Json to_json(const Supermatrix &M);
Supermatrix supermatrix_from_json(const Json &j);

Json to_json(const Supervector &v);
Supervector supervector_from_json(const Json &j);

// Entries are 1-based {"j", "k", "value"} triples; zero entries are omitted.
Json to_json(const ExtendedSuperbivector &B);
ExtendedSuperbivector bivector_from_json(const Json &j);

Json to_json(const SpinElement &s);
SpinElement spin_from_json(const Json &j);

Json to_json(const CliffordElement &x);
CliffordElement clifford_from_json(const Json &j);

Json to_json(const So0Decomposition &d);
So0Decomposition decomposition_from_json(const Json &j);

// Parses text, converting parse errors (with byte position) into FormatError.
Json parse_json(const std::string &text);

} // namespace superspin
