#pragma once

#include <json.hpp>

#include "radop/algebra.hpp"
#include "radop/norms.hpp"
#include "radop/operators.hpp"

namespace radop {

using Json = nlohmann::json;

// IndexSet <-> JSON array of integer arrays, canonical order.
Json index_set_to_json(const IndexSet& set);
IndexSet index_set_from_json(const Json& j);

// Domain + weight: {"name": str, "dim": int, "shadow": {...}, "weight": {...}}.
// Shadow kinds: {"kind":"box","intervals":[[a,b],...]}, {"kind":"ball"},
// {"kind":"ordered-simplex"}. Weight kinds: {"kind":"constant","value":c},
// {"kind":"radial-power","exponents":[...]}. Custom shadows/weights are
// API-only and do not serialize.
Json domain_to_json(const DomainSpec& domain, const WeightSpec& weight);

// Space: the domain schema plus optional "space": "bergman" | "hardy-disk"
// | "dirichlet-disk" (default bergman when a shadow is present).
Json space_to_json(const SpaceSpec& space);
SpaceSpec space_from_json(const Json& j);

// Symbols: {"kind":"finite","entries":[[[a...],[re,im]],...]},
// {"kind":"sampled","bound":N,"values":[[re,im]...],"extension":"zero"|"error"},
// {"kind":"builtin","name":"one"|"reciprocal-succ"|"indicator","set":[[a...]...]},
// all with optional "decay".
Json symbol_to_json(const Symbol& s);
Symbol symbol_from_json(const Json& j, int dim);

// LaurentPoly: {"dim": n, "terms": [[[a...],[re,im]], ...]}.
Json poly_to_json(const LaurentPoly& f);
LaurentPoly poly_from_json(const Json& j);

Json spectrum_to_json(const SpectrumReport& report);
Json membership_to_json(const MembershipReport& report);
Json feasibility_to_json(const FeasibilityReport& report);
Json norm_table_to_json(const MonomialNormTable& table);

Json complex_to_json(Complex v);
Complex complex_from_json(const Json& j);

Json load_json_file(const std::string& path);

} // namespace radop
