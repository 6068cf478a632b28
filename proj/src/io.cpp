#include "incalg/io.hpp"

#include <algorithm>

#include "incalg/error.hpp"

namespace incalg::io {

namespace {

[[noreturn]] void bad(const std::string& what) { throw Error(ErrorCode::ParseError, what); }

const json& field(const json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) bad(std::string("missing field '") + key + "'");
  return j.at(key);
}

std::size_t to_count(const std::string& s) {
  std::size_t used = 0;
  unsigned long long v = 0;
  try {
    v = std::stoull(s, &used);
  } catch (const std::exception&) {
    bad("expected a count, got '" + s + "'");
  }
  if (used != s.size()) bad("expected a count, got '" + s + "'");
  return static_cast<std::size_t>(v);
}

std::string element_name(const json& j) {
  if (j.is_string()) return j.get<std::string>();
  if (j.is_number_integer()) return std::to_string(j.get<long long>());
  bad("element names are strings");
}

Proset proset_shorthand(const std::string& s) {
  const auto colon = s.find(':');
  if (colon == std::string::npos) bad("unknown proset shorthand '" + s + "'");
  const std::string kind = s.substr(0, colon), arg = s.substr(colon + 1);
  if (kind == "chain") return Proset::chain(to_count(arg));
  if (kind == "antichain") return Proset::antichain(to_count(arg));
  if (kind == "full") return Proset::full(to_count(arg));
  if (kind == "two_block") {
    const auto comma = arg.find(',');
    if (comma == std::string::npos) bad("two_block needs m,n");
    return Proset::two_block(to_count(arg.substr(0, comma)), to_count(arg.substr(comma + 1)));
  }
  bad("unknown proset shorthand '" + s + "'");
}

}  // namespace

json to_json(const Proset& p) {
  json rel = json::array();
  for (auto [a, b] : p.strict_relation()) rel.push_back({p.name(a), p.name(b)});
  return {{"elements", p.names()}, {"relations", rel}};
}

Proset proset_from_json(const json& j) {
  if (j.is_string()) return proset_shorthand(j.get<std::string>());
  std::vector<std::string> names;
  for (auto& e : field(j, "elements")) names.push_back(element_name(e));
  std::vector<std::pair<std::string, std::string>> gens;
  if (j.contains("relations"))
    for (auto& r : j.at("relations")) {
      if (!r.is_array() || r.size() != 2) bad("relations are pairs");
      gens.emplace_back(element_name(r[0]), element_name(r[1]));
    }
  return Proset::from_relations(std::move(names), gens);
}

json to_json(const CoeffRing& r) {
  switch (r.kind()) {
    case RingKind::Integer: return "Z";
    case RingKind::Rational: return "Q";
    case RingKind::ModN: return {{"mod", r.modulus()}};
    case RingKind::PrimeField: return {{"gf", r.modulus()}};
  }
  return nullptr;
}

CoeffRing ring_from_json(const json& j) {
  if (j.is_string()) {
    const std::string s = j.get<std::string>();
    if (s == "Z") return CoeffRing::integers();
    if (s == "Q") return CoeffRing::rationals();
    if (s.rfind("Z/", 0) == 0) return CoeffRing::mod(static_cast<std::int64_t>(to_count(s.substr(2))));
    if (s.rfind("F", 0) == 0) return CoeffRing::prime_field(static_cast<std::int64_t>(to_count(s.substr(1))));
    bad("unknown ring '" + s + "'");
  }
  if (j.is_object() && j.contains("mod")) return CoeffRing::mod(j.at("mod").get<std::int64_t>());
  if (j.is_object() && j.contains("gf")) return CoeffRing::prime_field(j.at("gf").get<std::int64_t>());
  bad("unknown ring descriptor " + j.dump());
}

json value_to_json(const CoeffRing& r, const RingValue& v) {
  if (r.is_finite()) return v.residue();
  return r.format(v);
}

RingValue value_from_json(const CoeffRing& r, const json& j) {
  if (j.is_number_integer()) return r.from_int(j.get<std::int64_t>());
  if (j.is_string()) return r.parse(j.get<std::string>());
  bad("ring values are integers or strings");
}

json to_json(const IncMatrix& a) {
  json entries = json::array();
  for (auto& [k, v] : a.entries())
    entries.push_back({a.proset().name(k.first), a.proset().name(k.second), value_to_json(a.ring(), v)});
  return {{"proset", to_json(a.proset())}, {"ring", to_json(a.ring())}, {"entries", entries}};
}

IncMatrix matrix_from_json(const json& j) {
  auto p = make_proset(proset_from_json(field(j, "proset")));
  const CoeffRing r = ring_from_json(field(j, "ring"));
  IncMatrix a(p, r);
  if (j.contains("entries"))
    for (auto& e : j.at("entries")) {
      if (!e.is_array() || e.size() != 3) bad("entries are [s1, s2, value]");
      a.set(p->index(element_name(e[0])), p->index(element_name(e[1])), value_from_json(r, e[2]));
    }
  return a;
}

FamilyRef family_from_json(const json& j) {
  if (j.is_string()) {
    const std::string s = j.get<std::string>();
    if (s == "N") return family_n();
    if (s == "Z") return family_z();
    if (s == "Zig") return family_zig();
    if (s == "nstar_div" || s == "NStarDiv") return family_nstar_div();
    bad("unknown family '" + s + "'");
  }
  if (j.is_object() && j.contains("two_block")) {
    const auto& mn = j.at("two_block");
    return family_two_block(mn.at(0).get<std::size_t>(), mn.at(1).get<std::size_t>());
  }
  if (j.is_object() && j.contains("finite")) return family_finite(proset_from_json(j.at("finite")));
  if (j.is_object() && j.contains("augment")) {
    const auto& aug = j.at("augment");
    std::vector<ElemSet> sets;
    for (auto& s : field(aug, "sets")) sets.push_back(s.get<ElemSet>());
    return family_augmented(family_from_json(field(aug, "base")), std::move(sets));
  }
  bad("unknown family descriptor " + j.dump());
}

json to_json(const LazyMatrix& a, const json& family_desc) {
  if (!a.is_finitary()) throw Error(ErrorCode::InvalidArgument, "only finitary matrices have a finite description");
  const auto& f = *a.finitary_form();
  const CoeffRing& r = a.ring();
  json diag = json::array(), off = json::array();
  for (auto& [s, v] : f.diagonal_exceptions) diag.push_back({s, value_to_json(r, v)});
  for (auto& [k, v] : f.off_diagonal) off.push_back({k.first, k.second, value_to_json(r, v)});
  return {{"family", family_desc},
          {"ring", to_json(r)},
          {"diagonal_default", value_to_json(r, f.diagonal_default)},
          {"diagonal", diag},
          {"off_diagonal", off}};
}

LazyMatrix lazy_from_json(const json& j) {
  FamilyRef fam = family_from_json(field(j, "family"));
  const CoeffRing r = ring_from_json(field(j, "ring"));
  if (j.contains("oracle")) {
    if (j.at("oracle") == "upper_ones") return LazyMatrix::upper_ones(fam, r);
    bad("unknown oracle " + j.at("oracle").dump());
  }
  LazyMatrix::Finitary f;
  f.diagonal_default = j.contains("diagonal_default") ? value_from_json(r, j.at("diagonal_default")) : r.one();
  if (j.contains("diagonal"))
    for (auto& e : j.at("diagonal")) f.diagonal_exceptions[e.at(0).get<Elem>()] = value_from_json(r, e.at(1));
  if (j.contains("off_diagonal"))
    for (auto& e : j.at("off_diagonal"))
      f.off_diagonal[{e.at(0).get<Elem>(), e.at(1).get<Elem>()}] = value_from_json(r, e.at(2));
  return LazyMatrix::finitary(fam, r, std::move(f));
}

Subset names_to_subset(const Proset& p, const json& names) {
  Subset s;
  for (auto& n : names) s.push_back(p.index(element_name(n)));
  std::sort(s.begin(), s.end());
  s.erase(std::unique(s.begin(), s.end()), s.end());
  return s;
}

json subset_to_json(const Proset& p, const Subset& s) {
  json out = json::array();
  for (auto x : s) out.push_back(p.name(x));
  return out;
}

IdealSpec ideal_from_json(const Proset& p, const CoeffRing& r, const json& j) {
  if (j.contains("interval")) {
    const auto& iv = j.at("interval");
    return {IntervalIdeal{p.index(element_name(iv.at(0))), p.index(element_name(iv.at(1)))}};
  }
  if (j.contains("convex")) return {ConvexIdeal{names_to_subset(p, j.at("convex"))}};
  if (j.contains("locally_convex")) {
    LocallyConvexIdeal lc;
    for (auto& part : j.at("locally_convex")) lc.parts.push_back(names_to_subset(p, part));
    return {lc};
  }
  if (j.contains("coeff")) return {CoeffIdeal{value_from_json(r, j.at("coeff"))}};
  if (j.contains("sum")) {
    SumIdeal s;
    for (auto& part : j.at("sum")) s.parts.push_back(ideal_from_json(p, r, part));
    return {s};
  }
  bad("unknown ideal descriptor " + j.dump());
}

json to_json(const FccMap& f) {
  json m = json::object();
  for (std::size_t s = 0; s < f.mapping().size(); ++s) m[f.domain()->name(s)] = f.codomain()->name(f(s));
  return {{"domain", to_json(*f.domain())}, {"codomain", to_json(*f.codomain())}, {"map", m}};
}

FccMap fcc_from_json(const json& j) {
  auto dom = make_proset(proset_from_json(field(j, "domain")));
  auto cod = make_proset(proset_from_json(field(j, "codomain")));
  std::vector<std::pair<std::string, std::string>> m;
  const auto& mj = field(j, "map");
  if (!mj.is_object()) bad("map must be an object");
  for (auto& [k, v] : mj.items()) m.emplace_back(k, element_name(v));
  return validate_fcc_by_name(dom, cod, m);
}

json to_json(const StructureConstants& sc) {
  json table = json::array();
  for (auto& row : sc.table) {
    json cell = json::array();
    for (auto& [k, v] : row) cell.push_back({k, v});
    table.push_back(cell);
  }
  return {{"ring", to_json(sc.ring)}, {"rank", sc.rank}, {"one", sc.one}, {"table", table}};
}

StructureConstants structure_constants_from_json(const json& j) {
  StructureConstants sc;
  sc.ring = ring_from_json(field(j, "ring"));
  if (!sc.ring.is_finite()) throw Error(ErrorCode::InvalidArgument, "structure constants need a finite ring");
  sc.rank = field(j, "rank").get<std::size_t>();
  sc.one = field(j, "one").get<std::vector<std::int64_t>>();
  if (sc.one.size() != sc.rank) bad("'one' has the wrong length");
  const auto& t = field(j, "table");
  if (t.size() != sc.rank * sc.rank) bad("table must have rank^2 cells");
  for (auto& cell : t) {
    std::vector<std::pair<std::size_t, std::int64_t>> row;
    for (auto& e : cell) {
      const auto k = e.at(0).get<std::size_t>();
      if (k >= sc.rank) bad("table index out of range");
      row.emplace_back(k, e.at(1).get<std::int64_t>());
    }
    sc.table.push_back(std::move(row));
  }
  return sc;
}

json to_json(const GenTree& t) {
  switch (t.kind) {
    case GenTree::Kind::Leaf: return {{"kind", "leaf"}, {"lower", t.lower}, {"upper", t.upper}};
    case GenTree::Kind::Union: {
      json parts = json::array();
      for (auto& c : t.children) parts.push_back(to_json(*c));
      return {{"kind", "union"}, {"parts", parts}};
    }
    case GenTree::Kind::Pushout:
      return {{"kind", "pushout"},
              {"alpha", t.alpha},
              {"left", to_json(*t.children[0])},
              {"right", to_json(*t.children[1])},
              {"alpha_tree", to_json(*t.children[2])}};
  }
  return nullptr;
}

}  // namespace incalg::io
