#pragma once

#include <string>

#include "json.hpp"
#include "incalg/family.hpp"
#include "incalg/functor_cat.hpp"
#include "incalg/incidence.hpp"
#include "incalg/lazy.hpp"
#include "incalg/recovery.hpp"

namespace incalg::io {

using nlohmann::json;

// Prosets: {"elements": [...], "relations": [[a, b], ...]} or a shorthand
// string "chain:n", "antichain:n", "full:n", "two_block:m,n".
json to_json(const Proset& p);
Proset proset_from_json(const json& j);

// Rings: "Z", "Q", {"mod": n}, {"gf": p}; strings "Z/n" and "Fp" also parse.
json to_json(const CoeffRing& r);
CoeffRing ring_from_json(const json& j);
json value_to_json(const CoeffRing& r, const RingValue& v);
RingValue value_from_json(const CoeffRing& r, const json& j);

// {"proset": ..., "ring": ..., "entries": [[s1, s2, v], ...]}
json to_json(const IncMatrix& a);
IncMatrix matrix_from_json(const json& j);

// "N", "Z", "Zig", "nstar_div", {"two_block": [m, n]}, {"finite": proset},
// {"augment": {"base": family, "sets": [[...], ...]}}
FamilyRef family_from_json(const json& j);

// {"family", "ring", "diagonal_default", "diagonal": [[s, v]], "off_diagonal": [[s1, s2, v]]}
// or {"family", "ring", "oracle": "upper_ones"}. The family descriptor is echoed back as given.
json to_json(const LazyMatrix& a, const json& family_desc);
LazyMatrix lazy_from_json(const json& j);

IdealSpec ideal_from_json(const Proset& p, const CoeffRing& r, const json& j);

// {"domain": proset, "codomain": proset, "map": {"a": "x", ...}}
json to_json(const FccMap& f);
FccMap fcc_from_json(const json& j);

// {"ring", "rank", "one", "table": [[[k, v], ...], ...]}
json to_json(const StructureConstants& sc);
StructureConstants structure_constants_from_json(const json& j);

json to_json(const GenTree& t);

Subset names_to_subset(const Proset& p, const json& names);
json subset_to_json(const Proset& p, const Subset& s);

}  // namespace incalg::io
