#include "incalg/functor_cat.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <optional>
#include <set>

#include "incalg/error.hpp"
#include "incalg/random.hpp"

namespace incalg {

namespace {

bool same_proset(const ProsetRef& a, const ProsetRef& b) { return a == b || *a == *b; }

struct Violation {
  ErrorCode code;
  std::string what;
};

// FCC condition on one domain component (order preservation checked elsewhere).
std::optional<Violation> check_component(const Proset& dom, const Proset& cod, const std::vector<std::size_t>& map,
                                         const Subset& comp, ComponentKind& kind) {
  std::set<std::size_t> image;
  for (auto x : comp) image.insert(map[x]);
  if (image.size() == 1) {
    // a point inside a bigger class is not convex: [t, t] is the whole class
    const std::size_t t = *image.begin();
    if (!cod.is_interval_closed({t}))
      return Violation{ErrorCode::NotConvexImage, "component of " + dom.name(comp[0]) + " is sent to " + cod.name(t) +
                                                      ", which is not alone in its class"};
    kind = ComponentKind::Constant;
    return std::nullopt;
  }
  if (image.size() != comp.size())
    return Violation{ErrorCode::NotFcc, "component of " + dom.name(comp[0]) + " is neither constant nor injective"};
  const Proset piece = dom.induced(comp);
  for (const auto& s : piece.gamma_enumerate(comp.size())) {
    Subset img;
    for (auto x : s) img.push_back(map[comp[x]]);
    std::sort(img.begin(), img.end());
    if (!cod.is_interval_closed(img)) {
      std::string names;
      for (auto x : s) names += (names.empty() ? "" : ",") + dom.name(comp[x]);
      return Violation{ErrorCode::NotConvexImage, "image of convex set {" + names + "} is not convex"};
    }
  }
  kind = ComponentKind::ConvexEmbedding;
  return std::nullopt;
}

}  // namespace

FccMap validate_fcc(ProsetRef domain, ProsetRef codomain, std::vector<std::size_t> mapping) {
  if (mapping.size() != domain->size()) throw Error(ErrorCode::InvalidArgument, "map is not total on the domain");
  for (auto v : mapping)
    if (v >= codomain->size()) throw Error(ErrorCode::InvalidArgument, "map leaves the codomain");
  for (auto [i, j] : domain->relation())
    if (!codomain->leq(mapping[i], mapping[j]))
      throw Error(ErrorCode::NotOrderPreserving, domain->name(i) + " <= " + domain->name(j) + " but " +
                                                     codomain->name(mapping[i]) + " is not below " +
                                                     codomain->name(mapping[j]));
  FccMap f;
  f.kinds_.resize(domain->components().size());
  for (std::size_t c = 0; c < domain->components().size(); ++c)
    if (auto v = check_component(*domain, *codomain, mapping, domain->components()[c], f.kinds_[c]))
      throw Error(v->code, v->what);
  f.dom_ = std::move(domain);
  f.cod_ = std::move(codomain);
  f.map_ = std::move(mapping);
  return f;
}

FccMap validate_fcc_by_name(ProsetRef domain, ProsetRef codomain,
                            const std::vector<std::pair<std::string, std::string>>& mapping) {
  std::vector<std::size_t> m(domain->size(), SIZE_MAX);
  for (auto& [a, b] : mapping) m[domain->index(a)] = codomain->index(b);
  for (std::size_t i = 0; i < m.size(); ++i)
    if (m[i] == SIZE_MAX) throw Error(ErrorCode::InvalidArgument, "no image given for " + domain->name(i));
  return validate_fcc(std::move(domain), std::move(codomain), std::move(m));
}

bool FccMap::is_surjective() const {
  std::vector<char> hit(cod_->size(), 0);
  for (auto v : map_) hit[v] = 1;
  return std::all_of(hit.begin(), hit.end(), [](char c) { return c; });
}

FccMap identity_map(const ProsetRef& p) {
  std::vector<std::size_t> m(p->size());
  std::iota(m.begin(), m.end(), 0);
  return validate_fcc(p, p, std::move(m));
}

FccMap compose(const FccMap& g, const FccMap& f) {
  if (!same_proset(f.codomain(), g.domain()))
    throw Error(ErrorCode::NotComposable, "codomain of the first map is not the domain of the second");
  std::vector<std::size_t> m(f.mapping().size());
  for (std::size_t i = 0; i < m.size(); ++i) m[i] = g(f(i));
  return validate_fcc(f.domain(), g.codomain(), std::move(m));
}

IncMatrix induced_hom(const FccMap& f, const IncMatrix& a) {
  if (!same_proset(a.proset_ref(), f.codomain()))
    throw Error(ErrorCode::IncompatibleOperands, "matrix does not live on the codomain of the map");
  IncMatrix out(f.domain(), a.ring());
  for (auto [t1, t2] : f.domain()->relation())
    if (t1 == t2 || f(t1) != f(t2)) out.set(t1, t2, a.at(f(t1), f(t2)));
  return out;
}

namespace {

std::vector<IncMatrix> spanning_set(const ProsetRef& p, const CoeffRing& r) {
  std::vector<IncMatrix> gens{IncMatrix::identity(p, r)};
  for (auto [i, j] : p->relation()) gens.push_back(IncMatrix::unit(p, r, i, j));
  return gens;
}

}  // namespace

CheckReport functoriality_check(const FccMap& f, const FccMap& g, const CoeffRing& r, Rng& rng,
                                std::size_t random_samples) {
  const FccMap h = compose(g, f);
  std::vector<IncMatrix> tests = spanning_set(g.codomain(), r);
  tests.push_back(IncMatrix::scalar_diag(g.codomain(), r, r.random(rng)));
  for (std::size_t k = 0; k < random_samples; ++k) tests.push_back(random_matrix(g.codomain(), r, rng));
  CheckReport rep;
  for (auto& x : tests) {
    ++rep.checked;
    if (induced_hom(h, x) != induced_hom(f, induced_hom(g, x))) {
      rep.holds = false;
      rep.detail = "M[g o f] and M[f] o M[g] differ";
    }
  }
  return rep;
}

CheckReport surjective_implies_injective_check(const FccMap& f, const CoeffRing& r, Rng& rng,
                                               std::size_t random_samples) {
  if (!f.is_surjective()) throw Error(ErrorCode::InvalidArgument, "map is not surjective");
  CheckReport rep;
  std::set<IncMatrix::Key> used;
  for (auto [i, j] : f.codomain()->relation()) {
    ++rep.checked;
    IncMatrix img = induced_hom(f, IncMatrix::unit(f.codomain(), r, i, j));
    if (img.is_zero()) {
      rep.holds = false;
      rep.detail = "a generator has zero image";
    }
    for (auto& [k, v] : img.entries())
      if (!used.insert(k).second) {
        rep.holds = false;
        rep.detail = "generator images overlap";
      }
  }
  for (std::size_t k = 0; k < random_samples; ++k) {
    IncMatrix x = random_matrix(f.codomain(), r, rng);
    if (x.is_zero()) continue;
    ++rep.checked;
    if (induced_hom(f, x).is_zero()) {
      rep.holds = false;
      rep.detail = "nonzero matrix in the kernel";
    }
  }
  return rep;
}

Coproduct coproduct(const std::vector<ProsetRef>& parts) {
  std::vector<Proset> ps;
  for (auto& p : parts) ps.push_back(*p);
  Coproduct c;
  c.object = make_proset(Proset::disjoint_union(ps));
  std::size_t offset = 0;
  for (auto& p : parts) {
    std::vector<std::size_t> m(p->size());
    std::iota(m.begin(), m.end(), offset);
    c.embeddings.push_back(validate_fcc(p, c.object, std::move(m)));
    offset += p->size();
  }
  return c;
}

FccMap mediating_map(const Coproduct& c, const std::vector<FccMap>& legs) {
  if (legs.size() != c.embeddings.size()) throw Error(ErrorCode::InvalidArgument, "one leg per summand is required");
  if (legs.empty()) return validate_fcc(c.object, c.object, {});
  std::vector<std::size_t> m(c.object->size());
  for (std::size_t k = 0; k < legs.size(); ++k) {
    if (!same_proset(legs[k].domain(), c.embeddings[k].domain()))
      throw Error(ErrorCode::IncompatibleOperands, "leg " + std::to_string(k) + " starts at the wrong proset");
    if (!same_proset(legs[k].codomain(), legs[0].codomain()))
      throw Error(ErrorCode::IncompatibleOperands, "legs end at different prosets");
    for (std::size_t s = 0; s < legs[k].mapping().size(); ++s) m[c.embeddings[k](s)] = legs[k](s);
  }
  return validate_fcc(c.object, legs[0].codomain(), std::move(m));
}

namespace {

struct UnionFind {
  std::vector<std::size_t> parent;
  explicit UnionFind(std::size_t n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
  std::size_t find(std::size_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  }
  bool unite(std::size_t a, std::size_t b) {
    a = find(a);
    b = find(b);
    if (a == b) return false;
    parent[std::max(a, b)] = std::min(a, b);
    return true;
  }
};

struct Quotient {
  ProsetRef object;
  std::vector<std::vector<std::size_t>> maps;  // per source
};

// (⊔ sources)/uf with the order generated by the sources, then collapse
// every source component whose quotient map is not FCC until none is left.
// A constant component landing in a bigger class merges that class instead.
Quotient quotient_with_repair(const std::vector<const Proset*>& srcs, UnionFind& uf) {
  std::vector<std::size_t> offset{0};
  for (auto* s : srcs) offset.push_back(offset.back() + s->size());
  const std::size_t total = offset.back();

  std::set<std::string> seen;
  bool unique = true;
  for (auto* s : srcs)
    for (auto& nm : s->names())
      if (!seen.insert(nm).second) unique = false;
  std::vector<std::string> base(total), tagged(total);
  for (std::size_t k = 0; k < srcs.size(); ++k)
    for (std::size_t i = 0; i < srcs[k]->size(); ++i) {
      base[offset[k] + i] = srcs[k]->name(i);
      tagged[offset[k] + i] = unique ? srcs[k]->name(i) : std::to_string(k) + ":" + srcs[k]->name(i);
    }

  for (;;) {
    std::map<std::size_t, std::size_t> cls;
    std::vector<std::vector<std::size_t>> members;
    for (std::size_t x = 0; x < total; ++x) {
      auto [it, fresh] = cls.emplace(uf.find(x), members.size());
      if (fresh) members.emplace_back();
      members[it->second].push_back(x);
    }
    auto join = [&](const std::vector<std::string>& src, const std::vector<std::size_t>& m) {
      std::set<std::string> parts;
      for (auto x : m) parts.insert(src[x]);
      std::string out;
      for (auto& p : parts) out += (out.empty() ? "" : "|") + p;
      return out;
    };
    std::vector<std::string> names;
    for (auto& m : members) names.push_back(join(base, m));
    if (std::set<std::string>(names.begin(), names.end()).size() != names.size()) {
      names.clear();
      for (auto& m : members) names.push_back(join(tagged, m));
    }
    std::vector<std::pair<std::size_t, std::size_t>> gens;
    for (std::size_t k = 0; k < srcs.size(); ++k)
      for (auto [a, b] : srcs[k]->strict_relation())
        gens.emplace_back(cls.at(uf.find(offset[k] + a)), cls.at(uf.find(offset[k] + b)));
    Quotient q;
    q.object = make_proset(Proset::from_pairs(names, gens));
    bool changed = false, failed = false;
    for (std::size_t k = 0; k < srcs.size(); ++k) {
      std::vector<std::size_t> m(srcs[k]->size());
      for (std::size_t i = 0; i < m.size(); ++i) m[i] = cls.at(uf.find(offset[k] + i));
      for (const auto& comp : srcs[k]->components()) {
        ComponentKind kind;
        if (!check_component(*srcs[k], *q.object, m, comp, kind)) continue;
        bool merged = false;
        for (auto x : comp) merged |= uf.unite(offset[k] + comp[0], offset[k] + x);
        if (!merged)
          for (auto c : q.object->classes()[q.object->class_of(m[comp[0]])])
            for (auto x : members[c]) merged |= uf.unite(members[m[comp[0]]][0], x);
        failed = true;
        changed |= merged;
      }
      q.maps.push_back(std::move(m));
    }
    if (!failed) return q;
    if (!changed) throw Error(ErrorCode::NotFcc, "quotient map cannot be repaired");
  }
}

}  // namespace

Pushout pushout(const FccMap& f, const FccMap& g) {
  if (!same_proset(f.domain(), g.domain())) throw Error(ErrorCode::IncompatibleOperands, "span legs have different domains");
  const Proset& dom = *f.domain();
  const Proset& a = *f.codomain();
  const Proset& b = *g.codomain();
  const std::size_t na = a.size();
  UnionFind uf(na + b.size());

  const auto& comps = dom.components();
  enum Cls { J0, J1, J2, J3 };
  auto classify = [&](const FccMap& m, const Proset& target) {
    std::vector<char> any(target.components().size(), 0), all_embed(any.size(), 1), all_const(any.size(), 1);
    for (std::size_t i = 0; i < comps.size(); ++i) {
      const std::size_t j = target.component_of(m(comps[i][0]));
      any[j] = 1;
      const bool singleton = comps[i].size() == 1;
      if (!singleton && m.kinds()[i] != ComponentKind::ConvexEmbedding) all_embed[j] = 0;
      if (!singleton && m.kinds()[i] != ComponentKind::Constant) all_const[j] = 0;
    }
    std::vector<std::vector<char>> out(4, std::vector<char>(any.size(), 0));
    for (std::size_t j = 0; j < any.size(); ++j) {
      out[J0][j] = !any[j];
      out[J1][j] = any[j] && all_embed[j];
      out[J2][j] = any[j] && all_const[j];
      out[J3][j] = any[j] && !all_embed[j] && !all_const[j];
    }
    return out;
  };
  const auto jc = classify(f, a), kc = classify(g, b);
  auto collapse = [&](const Subset& comp, std::size_t offset) {
    for (auto x : comp) uf.unite(offset + comp[0], offset + x);
  };

  for (std::size_t s = 0; s < dom.size(); ++s) uf.unite(f(s), na + g(s));
  for (std::size_t j = 0; j < a.components().size(); ++j)
    if (jc[J3][j]) collapse(a.components()[j], 0);
  for (std::size_t k = 0; k < b.components().size(); ++k)
    if (kc[J3][k]) collapse(b.components()[k], na);
  for (std::size_t i = 0; i < comps.size(); ++i) {
    if (comps[i].size() == 1) continue;
    const std::size_t j = a.component_of(f(comps[i][0])), k = b.component_of(g(comps[i][0]));
    if (jc[J1][j] && kc[J2][k]) collapse(a.components()[j], 0);
    if (jc[J2][j] && kc[J1][k]) collapse(b.components()[k], na);
  }

  Quotient q = quotient_with_repair({&a, &b}, uf);
  return Pushout{q.object, validate_fcc(f.codomain(), q.object, q.maps[0]),
                 validate_fcc(g.codomain(), q.object, q.maps[1])};
}

FccMap pushout_mediating(const Pushout& po, const FccMap& q1, const FccMap& q2) {
  if (!same_proset(q1.domain(), po.p1.domain()) || !same_proset(q2.domain(), po.p2.domain()) ||
      !same_proset(q1.codomain(), q2.codomain()))
    throw Error(ErrorCode::IncompatibleOperands, "cocone does not match the span");
  std::vector<std::size_t> u(po.object->size(), SIZE_MAX);
  auto put = [&](std::size_t cls, std::size_t target) {
    if (u[cls] != SIZE_MAX && u[cls] != target)
      throw Error(ErrorCode::NotFcc, "cocone does not factor through the pushout");
    u[cls] = target;
  };
  for (std::size_t s = 0; s < q1.mapping().size(); ++s) put(po.p1(s), q1(s));
  for (std::size_t s = 0; s < q2.mapping().size(); ++s) put(po.p2(s), q2(s));
  return validate_fcc(po.object, q1.codomain(), std::move(u));
}

Coequalizer coequalizer(const FccMap& f1, const FccMap& f2) {
  if (!same_proset(f1.domain(), f2.domain()) || !same_proset(f1.codomain(), f2.codomain()))
    throw Error(ErrorCode::NotParallel, "maps do not share domain and codomain");
  const Proset& cod = *f1.codomain();
  UnionFind uf(cod.size());
  for (std::size_t t = 0; t < f1.mapping().size(); ++t) {
    uf.unite(f1(t), f2(t));
    if (f1(t) != f2(t) && cod.component_of(f1(t)) == cod.component_of(f2(t))) {
      const Subset& comp = cod.components()[cod.component_of(f1(t))];
      for (auto x : comp) uf.unite(comp[0], x);
    }
  }
  Quotient q = quotient_with_repair({&cod}, uf);
  return Coequalizer{q.object, validate_fcc(f1.codomain(), q.object, q.maps[0])};
}

EqualizerReport equalizer_check(const FccMap& f1, const FccMap& f2, const CoeffRing& r, Rng& rng,
                                std::size_t test_homs) {
  const Coequalizer co = coequalizer(f1, f2);
  EqualizerReport rep;
  std::set<IncMatrix::Key> used;
  const auto gens = spanning_set(co.object, r);
  for (std::size_t g = 0; g < gens.size(); ++g) {
    ++rep.checked;
    const IncMatrix img = induced_hom(co.p, gens[g]);
    if (induced_hom(f1, img) != induced_hom(f2, img)) rep.equalizes = false;
    if (img.is_zero() && !gens[g].is_zero()) rep.injective = false;
    // the unit generators must have disjoint supports
    if (g > 0)
      for (auto& [k, v] : img.entries())
        if (!used.insert(k).second) rep.injective = false;
  }
  // A hom equalizing M[f1], M[f2] that comes from q = h o p must factor as M[p] o M[h].
  for (std::size_t t = 0; t < test_homs; ++t) {
    Proset raw = random_proset(1 + rng() % 5, rng, rng() % 2 == 0);
    if (std::none_of(raw.classes().begin(), raw.classes().end(), [](const Subset& c) { return c.size() == 1; }))
      raw = Proset::disjoint_union({raw, Proset::chain(1)});
    ProsetRef target = make_proset(std::move(raw));
    const FccMap h = random_fcc_map(co.object, target, rng);
    const FccMap q = compose(h, co.p);
    if (compose(q, f1).mapping() != compose(q, f2).mapping()) rep.factors = false;
    for (auto& x : spanning_set(target, r)) {
      ++rep.checked;
      if (induced_hom(q, x) != induced_hom(co.p, induced_hom(h, x))) rep.factors = false;
    }
  }
  return rep;
}

DirectLimitReport direct_limit_window_check(const FamilyRef& family, std::size_t windows) {
  DirectLimitReport rep;
  rep.windows = windows;
  std::vector<ElemSet> ws;
  for (std::size_t k = 0; k < windows; ++k) ws.push_back(family->window(k));
  for (std::size_t k = 0; k < windows; ++k) {
    if (!family->is_convex(ws[k])) rep.nested = false;
    if (k + 1 == windows) break;
    if (!std::includes(ws[k + 1].begin(), ws[k + 1].end(), ws[k].begin(), ws[k].end())) {
      rep.nested = false;
      continue;
    }
    auto small = make_proset(family->restrict(ws[k]));
    auto big = make_proset(family->restrict(ws[k + 1]));
    std::vector<std::pair<std::string, std::string>> m;
    for (auto& nm : small->names()) m.emplace_back(nm, nm);
    try {
      const FccMap j = validate_fcc_by_name(small, big, m);
      for (auto kind : j.kinds())
        if (kind != ComponentKind::ConvexEmbedding && small->size() > 1) rep.embeddings_fcc = false;
    } catch (const Error&) {
      rep.embeddings_fcc = false;
    }
  }
  if (!ws.empty())
    for (Elem a : ws.back()) {
      const ElemSet cls = family->interval(a, a);
      if (!std::includes(ws.back().begin(), ws.back().end(), cls.begin(), cls.end())) rep.covers = false;
    }
  return rep;
}

namespace {

bool same_by_name(const Proset& x, const Proset& y) {
  if (x.size() != y.size()) return false;
  std::vector<std::size_t> to(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) {
    auto j = y.find(x.name(i));
    if (!j) return false;
    to[i] = *j;
  }
  for (std::size_t i = 0; i < x.size(); ++i)
    for (std::size_t j = 0; j < x.size(); ++j)
      if (x.leq(i, j) != y.leq(to[i], to[j])) return false;
  return true;
}

std::optional<GenTree> as_leaf(const Proset& p) {
  const auto& cl = p.classes();
  GenTree t;
  auto names = [&](const Subset& s) {
    std::vector<std::string> out;
    for (auto x : s) out.push_back(p.name(x));
    return out;
  };
  if (cl.size() == 1) {
    t.upper = names(cl[0]);
    return t;
  }
  if (cl.size() == 2 && p.class_leq(0, 1) != p.class_leq(1, 0)) {
    const bool zero_low = p.class_leq(0, 1);
    t.lower = names(cl[zero_low ? 0 : 1]);
    t.upper = names(cl[zero_low ? 1 : 0]);
    return t;
  }
  return std::nullopt;
}

FccMap inclusion(const ProsetRef& small, const ProsetRef& big) {
  std::vector<std::pair<std::string, std::string>> m;
  for (auto& nm : small->names()) m.emplace_back(nm, nm);
  return validate_fcc_by_name(small, big, m);
}

GenTree decompose_any(const Proset& p) {
  if (p.is_irreducible()) return generation_decompose(p);
  GenTree t;
  t.kind = GenTree::Kind::Union;
  for (const auto& comp : p.components())
    t.children.push_back(std::make_shared<GenTree>(generation_decompose(p.induced(comp))));
  return t;
}

}  // namespace

GenTree generation_decompose(const Proset& p) {
  if (p.size() == 0 || !p.is_irreducible()) throw Error(ErrorCode::NotIrreducible, "proset is empty or reducible");
  if (auto leaf = as_leaf(p)) return *leaf;
  const auto& cl = p.classes();
  for (std::size_t a = 0; a < cl.size(); ++a)
    for (std::size_t b = a + 1; b < cl.size(); ++b) {
      Subset l1, l2, alpha;
      for (std::size_t x = 0; x < p.size(); ++x) {
        const std::size_t c = p.class_of(x);
        if (c != a) l1.push_back(x);
        if (c != b) l2.push_back(x);
        if (c != a && c != b) alpha.push_back(x);
      }
      if (alpha.empty()) continue;
      auto p1 = make_proset(p.induced(l1)), p2 = make_proset(p.induced(l2)), pa = make_proset(p.induced(alpha));
      if (!p1->is_irreducible() || !p2->is_irreducible()) continue;
      Pushout po;
      try {
        po = pushout(inclusion(pa, p1), inclusion(pa, p2));
      } catch (const Error&) {
        continue;
      }
      if (!same_by_name(*po.object, p)) continue;
      GenTree t;
      t.kind = GenTree::Kind::Pushout;
      t.alpha = pa->names();
      t.children = {std::make_shared<GenTree>(generation_decompose(*p1)),
                    std::make_shared<GenTree>(generation_decompose(*p2)),
                    std::make_shared<GenTree>(decompose_any(*pa))};
      return t;
    }
  throw Error(ErrorCode::NoValidCutPair, "no pair of classes splits the proset into a pushout");
}

Proset reassemble(const GenTree& t) {
  switch (t.kind) {
    case GenTree::Kind::Leaf: {
      std::vector<std::string> names = t.lower;
      names.insert(names.end(), t.upper.begin(), t.upper.end());
      std::vector<std::pair<std::size_t, std::size_t>> gens;
      const std::size_t n = t.lower.size(), m = t.upper.size();
      for (std::size_t i = 0; i + 1 < n; ++i) {
        gens.emplace_back(i, i + 1);
        gens.emplace_back(i + 1, i);
      }
      for (std::size_t i = 0; i + 1 < m; ++i) {
        gens.emplace_back(n + i, n + i + 1);
        gens.emplace_back(n + i + 1, n + i);
      }
      if (n > 0 && m > 0) gens.emplace_back(0, n);
      return Proset::from_pairs(std::move(names), gens);
    }
    case GenTree::Kind::Union: {
      std::vector<Proset> parts;
      for (auto& c : t.children) parts.push_back(reassemble(*c));
      return Proset::disjoint_union(parts);
    }
    case GenTree::Kind::Pushout: {
      auto left = make_proset(reassemble(*t.children[0]));
      auto right = make_proset(reassemble(*t.children[1]));
      auto alpha = make_proset(reassemble(*t.children[2]));
      return *pushout(inclusion(alpha, left), inclusion(alpha, right)).object;
    }
  }
  return {};
}

FccMap random_fcc_map(const ProsetRef& domain, const ProsetRef& codomain, Rng& rng, double embed_bias) {
  if (domain->size() > 0 && codomain->size() == 0)
    throw Error(ErrorCode::InvalidArgument, "no map from a nonempty proset to the empty one");
  std::vector<std::size_t> m(domain->size(), 0);
  std::bernoulli_distribution embed(embed_bias);
  // constants may only land on singleton classes
  std::vector<std::size_t> alone;
  for (auto& c : codomain->classes())
    if (c.size() == 1) alone.push_back(c[0]);
  for (const auto& comp : domain->components()) {
    bool done = false;
    if ((comp.size() > 1 && embed(rng)) || alone.empty()) {
      std::vector<std::size_t> order(codomain->size());
      std::iota(order.begin(), order.end(), 0);
      std::vector<char> used(codomain->size(), 0);
      std::size_t steps = 0;
      std::function<bool(std::size_t)> place = [&](std::size_t k) -> bool {
        if (++steps > 4000) return false;
        if (k == comp.size()) {
          ComponentKind kind;
          return !check_component(*domain, *codomain, m, comp, kind);
        }
        std::vector<std::size_t> cand = order;
        std::shuffle(cand.begin(), cand.end(), rng);
        for (auto c : cand) {
          if (used[c]) continue;
          bool ok = true;
          for (std::size_t e = 0; e < k && ok; ++e) {
            if (domain->leq(comp[e], comp[k]) && !codomain->leq(m[comp[e]], c)) ok = false;
            if (domain->leq(comp[k], comp[e]) && !codomain->leq(c, m[comp[e]])) ok = false;
          }
          if (!ok) continue;
          used[c] = 1;
          m[comp[k]] = c;
          if (place(k + 1)) return true;
          used[c] = 0;
        }
        return false;
      };
      done = place(0);
    }
    if (!done) {
      if (alone.empty()) throw Error(ErrorCode::NotFcc, "no convex point to send a component to");
      const std::size_t c = alone[std::uniform_int_distribution<std::size_t>(0, alone.size() - 1)(rng)];
      for (auto x : comp) m[x] = c;
    }
  }
  return validate_fcc(domain, codomain, std::move(m));
}

}  // namespace incalg
