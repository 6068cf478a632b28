#include "incalg/cli.hpp"

#include <filesystem>
#include <fstream>
#include <functional>
#include <map>
#include <sstream>

#include "CLI11.hpp"
#include "incalg/error.hpp"
#include "incalg/glgroup.hpp"
#include "incalg/io.hpp"
#include "incalg/random.hpp"

namespace incalg {

namespace {

using io::json;

struct Opts {
  std::string proset, other, ring, family, a, b, input, map, map2, ideal, subset, sets, config, name;
  std::string from, to, alpha, beta, mode = "exhaustive";
  std::uint64_t seed = 0;
  std::size_t budget = 100000, window = 3, k = 1, depth = 1, trials = 100, bound = 4, exp = 2, n = 2;
  std::int64_t q = 5;
};

// Inline JSON, a file, or a bare shorthand string. Whole reports unwrap to their result.
json load(const std::string& arg) {
  json j;
  if (!arg.empty() && (arg[0] == '{' || arg[0] == '[' || arg[0] == '"')) {
    j = json::parse(arg);
  } else if (std::filesystem::is_regular_file(arg)) {
    std::ifstream in(arg);
    j = json::parse(in);
  } else {
    j = arg;
  }
  if (j.is_object() && j.contains("command") && j.contains("result")) return j.at("result");
  return j;
}

std::vector<std::string> split_list(const std::string& s) {
  std::vector<std::string> out;
  if (!s.empty() && s[0] == '[') {
    for (auto& v : json::parse(s)) out.push_back(v.is_string() ? v.get<std::string>() : v.dump());
    return out;
  }
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ','))
    if (!item.empty()) out.push_back(item);
  return out;
}

ElemSet elems(const ProsetFamily& f, const std::string& s) {
  ElemSet out;
  for (auto& t : split_list(s)) out.push_back(f.parse_element(t));
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

Subset names(const Proset& p, const std::string& s) { return io::names_to_subset(p, json(split_list(s))); }

ProsetRef proset_arg(const std::string& s) { return make_proset(io::proset_from_json(load(s))); }
CoeffRing ring_arg(const std::string& s) { return io::ring_from_json(load(s)); }

json proset_summary(const Proset& p) {
  json classes = json::array(), comps = json::array();
  for (auto& c : p.classes()) classes.push_back(io::subset_to_json(p, c));
  for (auto& c : p.components()) comps.push_back(io::subset_to_json(p, c));
  return {{"size", p.size()},
          {"relation_size", p.relation_size()},
          {"classes", classes},
          {"components", comps},
          {"is_poset", p.is_poset()},
          {"irreducible", p.is_irreducible()},
          {"z_like", p.is_z_like()}};
}

json elem_json(const ElemSet& s) { return json(s); }

void need(const std::string& v, const char* flag) {
  if (v.empty()) throw CLI::RequiredError(flag);
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Incidence rings of locally finite prosets", "incalg"};
  app.require_subcommand(1);
  app.set_version_flag("--version", kVersion);
  Opts o;
  std::string command;
  std::function<json()> action;

  auto leaf = [&](CLI::App* parent, const std::string& name, const std::string& desc, std::function<json()> fn) {
    CLI::App* sub = parent->add_subcommand(name, desc);
    sub->callback([&command, &action, parent, name, fn] {
      command = (parent->get_parent() ? parent->get_name() + " " : "") + name;
      action = fn;
    });
    return sub;
  };
  auto opt_proset = [&](CLI::App* s, bool req = true) { s->add_option("--proset", o.proset, "proset JSON, file or shorthand")->required(req); };
  auto opt_ring = [&](CLI::App* s) { s->add_option("--ring", o.ring, "Z, Q, Z/n, Fp or JSON")->required(); };
  auto opt_family = [&](CLI::App* s, bool req = true) { s->add_option("--family", o.family, "N, Z, Zig, nstar_div or JSON")->required(req); };
  auto opt_seed = [&](CLI::App* s) { s->add_option("--seed", o.seed, "RNG seed")->capture_default_str(); };

  // proset
  CLI::App* ps = app.add_subcommand("proset", "finite prosets and families");
  ps->require_subcommand(1);
  opt_proset(leaf(ps, "info", "classes, components and predicates", [&] { return proset_summary(*proset_arg(o.proset)); }));
  {
    auto* s = leaf(ps, "intervals", "the interval [from, to]", [&]() -> json {
      if (!o.family.empty()) {
        auto f = io::family_from_json(load(o.family));
        return elem_json(f->interval(f->parse_element(o.from), f->parse_element(o.to)));
      }
      need(o.proset, "--proset or --family");
      auto p = proset_arg(o.proset);
      return io::subset_to_json(*p, p->interval(p->index(o.from), p->index(o.to)));
    });
    opt_proset(s, false);
    opt_family(s, false);
    s->add_option("--from", o.from)->required();
    s->add_option("--to", o.to)->required();
  }
  {
    auto* s = leaf(ps, "neighborhood", "N_k of an element", [&]() -> json {
      if (!o.family.empty()) {
        auto f = io::family_from_json(load(o.family));
        return elem_json(f->neighborhood(f->parse_element(o.from), o.k));
      }
      need(o.proset, "--proset or --family");
      auto p = proset_arg(o.proset);
      return io::subset_to_json(*p, p->neighborhood(p->index(o.from), o.k));
    });
    opt_proset(s, false);
    opt_family(s, false);
    s->add_option("--element", o.from)->required();
    s->add_option("--k", o.k)->capture_default_str();
  }
  {
    auto* s = leaf(ps, "closure", "interval and convex closures of a set", [&]() -> json {
      if (!o.family.empty()) {
        auto f = io::family_from_json(load(o.family));
        const ElemSet x = elems(*f, o.subset);
        return {{"interval_closure", f->interval_closure(x)}, {"convex_closure", f->convex_closure(x)},
                {"convex", f->is_convex(x)}};
      }
      need(o.proset, "--proset or --family");
      auto p = proset_arg(o.proset);
      const Subset x = names(*p, o.subset);
      return {{"interval_closure", io::subset_to_json(*p, p->interval_closure(x))},
              {"convex_closure", io::subset_to_json(*p, p->convex_closure(x))},
              {"convex", p->is_convex(x)}};
    });
    opt_proset(s, false);
    opt_family(s, false);
    s->add_option("--set", o.subset)->required();
  }
  {
    auto* s = leaf(ps, "gamma", "finite convex subsets up to a size", [&]() -> json {
      auto p = proset_arg(o.proset);
      json sets = json::array();
      for (auto& g : p->gamma_enumerate(o.bound)) sets.push_back(io::subset_to_json(*p, g));
      return sets;
    });
    opt_proset(s);
    s->add_option("--bound", o.bound)->capture_default_str();
  }
  {
    auto* s = leaf(ps, "window", "k-th convex window of a family", [&]() -> json {
      auto f = io::family_from_json(load(o.family));
      const ElemSet w = f->window(o.window);
      return {{"elements", w}, {"proset", io::to_json(f->restrict(w))}};
    });
    opt_family(s);
    s->add_option("--window", o.window)->capture_default_str();
  }
  {
    auto* s = leaf(ps, "augment", "merge disjoint subsets into classes", [&]() -> json {
      auto p = proset_arg(o.proset);
      std::vector<Subset> sets;
      for (auto& part : json::parse(o.sets)) sets.push_back(io::names_to_subset(*p, part));
      return io::to_json(p->augment(sets));
    });
    opt_proset(s);
    s->add_option("--sets", o.sets, "JSON list of name lists")->required();
  }
  opt_proset(leaf(ps, "opposite", "reversed order", [&] { return io::to_json(proset_arg(o.proset)->opposite()); }));
  {
    auto* s = leaf(ps, "iso", "order isomorphism between two prosets", [&]() -> json {
      auto p = proset_arg(o.proset), q = proset_arg(o.other);
      auto m = poset_isomorphic(*p, *q);
      if (!m) return {{"isomorphic", false}};
      json mj = json::object();
      for (std::size_t i = 0; i < m->size(); ++i) mj[p->name(i)] = q->name((*m)[i]);
      return {{"isomorphic", true}, {"map", mj}};
    });
    opt_proset(s);
    s->add_option("--other", o.other)->required();
  }
  {
    auto* s = leaf(ps, "decompose", "pushout tree of two-block leaves", [&]() -> json {
      auto p = proset_arg(o.proset);
      const GenTree t = generation_decompose(*p);
      const Proset back = reassemble(t);
      return {{"tree", io::to_json(t)}, {"reassembled", io::to_json(back)},
              {"isomorphic", poset_isomorphic(back, *p).has_value()}};
    });
    opt_proset(s);
  }

  // algebra
  CLI::App* al = app.add_subcommand("algebra", "incidence ring arithmetic");
  al->require_subcommand(1);
  auto binary = [&](const std::string& name, std::function<IncMatrix(const IncMatrix&, const IncMatrix&)> op) {
    auto* s = leaf(al, name, name + " of two matrices", [&o, op] {
      return io::to_json(op(io::matrix_from_json(load(o.a)), io::matrix_from_json(load(o.b))));
    });
    s->add_option("--a", o.a)->required();
    s->add_option("--b", o.b)->required();
  };
  binary("mul", [](const IncMatrix& x, const IncMatrix& y) { return x * y; });
  binary("add", [](const IncMatrix& x, const IncMatrix& y) { return x + y; });
  binary("sub", [](const IncMatrix& x, const IncMatrix& y) { return x - y; });
  {
    auto* s = leaf(al, "pow", "power of a matrix", [&] { return io::to_json(io::matrix_from_json(load(o.a)).pow(o.exp)); });
    s->add_option("--a", o.a)->required();
    s->add_option("--exp", o.exp)->capture_default_str();
  }
  {
    auto* s = leaf(al, "project", "restriction to a convex subset", [&] {
      const IncMatrix a = io::matrix_from_json(load(o.a));
      return io::to_json(project(a, names(a.proset(), o.subset)));
    });
    s->add_option("--a", o.a)->required();
    s->add_option("--subset", o.subset)->required();
  }
  {
    auto* s = leaf(al, "ideal", "membership in an ideal", [&]() -> json {
      const IncMatrix a = io::matrix_from_json(load(o.a));
      return {{"member", ideal_membership(a, io::ideal_from_json(a.proset(), a.ring(), load(o.ideal)))}};
    });
    s->add_option("--a", o.a)->required();
    s->add_option("--ideal", o.ideal, "{interval|convex|locally_convex|coeff|sum: ...}")->required();
  }
  {
    auto* s = leaf(al, "random", "random matrix", [&] {
      Rng rng(o.seed);
      return io::to_json(random_matrix(proset_arg(o.proset), ring_arg(o.ring), rng));
    });
    opt_proset(s);
    opt_ring(s);
    opt_seed(s);
  }
  {
    auto* s = leaf(al, "classify", "idempotent data of a matrix", [&]() -> json {
      const IncMatrix a = io::matrix_from_json(load(o.a));
      json r = {{"idempotent", a * a == a}};
      if (a.proset().is_poset()) r["topologically_nilpotent"] = is_topologically_nilpotent(a);
      if (a * a == a) r["b"] = io::subset_to_json(a.proset(), b_of(a));
      return r;
    });
    s->add_option("--a", o.a)->required();
  }
  {
    auto* s = leaf(al, "idempotents", "all idempotents, grouped by diagonal support", [&]() -> json {
      auto p = proset_arg(o.proset);
      const auto all = all_idempotents(p, ring_arg(o.ring));
      std::map<std::string, std::size_t> by_b;
      for (auto& e : all) by_b[io::subset_to_json(*p, b_of(e)).dump()]++;
      return {{"count", all.size()}, {"by_support", by_b}};
    });
    opt_proset(s);
    opt_ring(s);
  }
  {
    auto* s = leaf(al, "erase", "erase part of the diagonal support of an idempotent", [&] {
      const IncMatrix a = io::matrix_from_json(load(o.a));
      return io::to_json(erase(a, names(a.proset(), o.subset)));
    });
    s->add_option("--a", o.a)->required();
    s->add_option("--subset", o.subset)->required();
  }

  // group
  CLI::App* gr = app.add_subcommand("group", "unit group GL");
  gr->require_subcommand(1);
  {
    auto* s = leaf(gr, "invert", "inverse of a unit", [&] { return io::to_json(invert(io::matrix_from_json(load(o.a)))); });
    s->add_option("--a", o.a)->required();
  }
  {
    auto* s = leaf(gr, "is-invertible", "unit test", [&]() -> json {
      return {{"invertible", is_invertible(io::matrix_from_json(load(o.a)))}};
    });
    s->add_option("--a", o.a)->required();
  }
  {
    auto* s = leaf(gr, "central", "centrality of a unit", [&]() -> json {
      const auto rep = is_central(io::matrix_from_json(load(o.a)));
      json r = {{"central", rep.central}, {"scalar", rep.scalar}, {"hypothesis_holds", rep.hypothesis_holds},
                {"hypothesis_failure", rep.hypothesis_failure}};
      if (rep.witness) r["witness"] = io::to_json(*rep.witness);
      return r;
    });
    s->add_option("--a", o.a)->required();
  }
  {
    auto* s = leaf(gr, "center", "all central units by enumeration", [&]() -> json {
      json list = json::array();
      for (auto& c : exhaustive_centrality_set(proset_arg(o.proset), ring_arg(o.ring))) list.push_back(io::to_json(c));
      return {{"count", list.size()}, {"elements", list}};
    });
    opt_proset(s);
    opt_ring(s);
  }
  {
    auto* s = leaf(gr, "order", "order of GL", [&]() -> json {
      return {{"order", gl_order(*proset_arg(o.proset), ring_arg(o.ring)).get_str()}};
    });
    opt_proset(s);
    opt_ring(s);
  }
  {
    auto* s = leaf(gr, "commutator", "sampled iterated commutators", [&]() -> json {
      Rng rng(o.seed);
      auto p = proset_arg(o.proset);
      const auto rep = iterated_commutator_sample(p, ring_arg(o.ring), o.depth, o.trials, rng);
      json r = {{"depth", rep.depth}, {"samples", rep.samples}, {"pattern_holds", rep.pattern_holds},
                {"bounded", rep.bounded}, {"identity_holds", rep.identity_holds}};
      if (rep.violation) r["violation"] = {p->name(rep.violation->first), p->name(rep.violation->second)};
      return r;
    });
    opt_proset(s);
    opt_ring(s);
    opt_seed(s);
    s->add_option("--depth", o.depth)->capture_default_str();
    s->add_option("--trials", o.trials)->capture_default_str();
  }
  {
    auto* s = leaf(gr, "transpose", "image in GL over the opposite proset", [&] {
      return io::to_json(transpose_op_iso(GroupElement::certify(io::matrix_from_json(load(o.a)))).matrix());
    });
    s->add_option("--a", o.a)->required();
  }
  {
    auto* s = leaf(gr, "normal", "membership in a normal subgroup N", [&]() -> json {
      const IncMatrix a = io::matrix_from_json(load(o.a));
      const auto spec = io::ideal_from_json(a.proset(), a.ring(), load(o.ideal));
      return {{"member", normal_subgroup_membership(GroupElement::certify(a), spec)}};
    });
    s->add_option("--a", o.a)->required();
    s->add_option("--ideal", o.ideal)->required();
  }

  // lazy
  CLI::App* lz = app.add_subcommand("lazy", "matrices over infinite families");
  lz->require_subcommand(1);
  auto window_of = [&](const LazyMatrix& m) -> ElemSet {
    if (!o.subset.empty()) return elems(*m.family(), o.subset);
    return m.family()->window(o.window);
  };
  auto lazy_out = [&](const LazyMatrix& m, const json& desc) -> json {
    if (m.is_finitary()) return io::to_json(m, desc);
    return {{"window", window_of(m)}, {"projection", io::to_json(m.project(window_of(m)))}};
  };
  {
    auto* s = leaf(lz, "project", "projection onto a finite convex window", [&] {
      const LazyMatrix m = io::lazy_from_json(load(o.input));
      return io::to_json(m.project(window_of(m)));
    });
    s->add_option("--input", o.input)->required();
    s->add_option("--window", o.window)->capture_default_str();
    s->add_option("--subset", o.subset, "explicit convex subset");
  }
  {
    auto* s = leaf(lz, "mul", "product", [&] {
      const json ja = load(o.a);
      return lazy_out(lazy_mul(io::lazy_from_json(ja), io::lazy_from_json(load(o.b))), ja.at("family"));
    });
    s->add_option("--a", o.a)->required();
    s->add_option("--b", o.b)->required();
    s->add_option("--window", o.window)->capture_default_str();
  }
  {
    auto* s = leaf(lz, "add", "sum", [&] {
      const json ja = load(o.a);
      return lazy_out(lazy_add(io::lazy_from_json(ja), io::lazy_from_json(load(o.b))), ja.at("family"));
    });
    s->add_option("--a", o.a)->required();
    s->add_option("--b", o.b)->required();
    s->add_option("--window", o.window)->capture_default_str();
  }
  {
    auto* s = leaf(lz, "invert", "inverse", [&] {
      const json ja = load(o.a);
      return lazy_out(lazy_invert(io::lazy_from_json(ja)), ja.at("family"));
    });
    s->add_option("--a", o.a)->required();
    s->add_option("--window", o.window)->capture_default_str();
  }
  {
    auto* s = leaf(lz, "qz", "G_S lifts generate GL of an inner window", [&]() -> json {
      auto f = io::family_from_json(load(o.family));
      const auto rep = qz_window_check(f, ring_arg(o.ring), elems(*f, o.alpha), elems(*f, o.beta), o.budget);
      return {{"generators", rep.generators}, {"generators_hit", rep.generators_hit},
              {"closure_order", rep.closure_order}, {"target_order", rep.target_order}, {"surjective", rep.surjective}};
    });
    opt_family(s);
    opt_ring(s);
    s->add_option("--alpha", o.alpha, "outer window")->required();
    s->add_option("--beta", o.beta, "inner window")->required();
    s->add_option("--budget", o.budget)->capture_default_str();
  }
  {
    auto* s = leaf(lz, "limit", "window chain checks for the direct limit", [&]() -> json {
      const auto rep = direct_limit_window_check(io::family_from_json(load(o.family)), o.window);
      return {{"windows", rep.windows}, {"nested", rep.nested}, {"embeddings_fcc", rep.embeddings_fcc},
              {"covers", rep.covers}};
    });
    opt_family(s);
    s->add_option("--window", o.window, "number of windows")->capture_default_str();
  }

  // recover / scramble
  {
    auto* s = app.add_subcommand("recover", "recover the poset from a ring given by structure constants");
    s->add_option("--input", o.input)->required();
    s->add_option("--mode", o.mode)->check(CLI::IsMember({"exhaustive", "witness"}))->capture_default_str();
    s->add_option("--budget", o.budget)->capture_default_str();
    opt_seed(s);
    s->callback([&] {
      command = "recover";
      action = [&]() -> json {
        StructureConstantsRing ring(io::structure_constants_from_json(load(o.input)));
        const auto res = recover_poset(ring, o.mode == "witness" ? RecoveryMode::Witness : RecoveryMode::Exhaustive,
                                       o.budget, o.seed);
        return {{"poset", io::to_json(res.poset)}, {"classes", res.classes},
                {"idempotents_examined", res.idempotents_examined}, {"samples_used", res.samples_used}};
      };
    });
  }
  {
    auto* s = app.add_subcommand("scramble", "structure constants of a disguised incidence ring");
    opt_proset(s);
    opt_ring(s);
    opt_seed(s);
    s->callback([&] {
      command = "scramble";
      action = [&] { return io::to_json(scramble(proset_arg(o.proset), ring_arg(o.ring), o.seed)); };
    });
  }

  // functor
  CLI::App* fn = app.add_subcommand("functor", "FCC maps and induced homomorphisms");
  fn->require_subcommand(1);
  auto fcc = [](const std::string& s) { return io::fcc_from_json(load(s)); };
  {
    auto* s = leaf(fn, "validate", "check the FCC condition", [&]() -> json {
      const FccMap f = fcc(o.map);
      json kinds = json::array();
      for (auto k : f.kinds()) kinds.push_back(k == ComponentKind::Constant ? "constant" : "convex_embedding");
      return {{"map", io::to_json(f)}, {"kinds", kinds}, {"surjective", f.is_surjective()}};
    });
    s->add_option("--map", o.map)->required();
  }
  {
    auto* s = leaf(fn, "apply", "M[f] applied to a matrix over the codomain", [&] {
      return io::to_json(induced_hom(fcc(o.map), io::matrix_from_json(load(o.a))));
    });
    s->add_option("--map", o.map)->required();
    s->add_option("--a", o.a)->required();
  }
  {
    auto* s = leaf(fn, "compose", "g o f", [&] { return io::to_json(compose(fcc(o.map2), fcc(o.map))); });
    s->add_option("--map", o.map, "f")->required();
    s->add_option("--map2", o.map2, "g")->required();
  }
  {
    auto* s = leaf(fn, "pushout", "pushout of a span", [&]() -> json {
      const Pushout po = pushout(fcc(o.map), fcc(o.map2));
      return {{"object", io::to_json(*po.object)}, {"p1", io::to_json(po.p1)}, {"p2", io::to_json(po.p2)}};
    });
    s->add_option("--map", o.map)->required();
    s->add_option("--map2", o.map2)->required();
  }
  {
    auto* s = leaf(fn, "coeq", "coequalizer of a parallel pair", [&]() -> json {
      const Coequalizer c = coequalizer(fcc(o.map), fcc(o.map2));
      return {{"object", io::to_json(*c.object)}, {"p", io::to_json(c.p)}};
    });
    s->add_option("--map", o.map)->required();
    s->add_option("--map2", o.map2)->required();
  }
  {
    auto* s = leaf(fn, "equalizer", "M[p] is an equalizer of M[f1], M[f2]", [&]() -> json {
      Rng rng(o.seed);
      const auto rep = equalizer_check(fcc(o.map), fcc(o.map2), ring_arg(o.ring), rng, o.trials);
      return {{"equalizes", rep.equalizes}, {"injective", rep.injective}, {"factors", rep.factors},
              {"checked", rep.checked}};
    });
    s->add_option("--map", o.map)->required();
    s->add_option("--map2", o.map2)->required();
    opt_ring(s);
    opt_seed(s);
    s->add_option("--trials", o.trials, "test homomorphisms")->capture_default_str();
  }

  // experiment
  {
    auto* s = app.add_subcommand("experiment", "experiment configs");
    s->add_option("--config", o.config, "JSON config, e.g. {\"experiment\": \"dickson\", ...}");
    s->add_option("--name", o.name, "dickson, commutator, qz or center");
    s->add_option("--n", o.n)->capture_default_str();
    s->add_option("--q", o.q)->capture_default_str();
    opt_proset(s, false);
    s->add_option("--ring", o.ring);
    opt_family(s, false);
    s->add_option("--alpha", o.alpha);
    s->add_option("--beta", o.beta);
    s->add_option("--depth", o.depth)->capture_default_str();
    s->add_option("--trials", o.trials)->capture_default_str();
    s->add_option("--budget", o.budget)->capture_default_str();
    opt_seed(s);
    s->callback([&] {
      command = "experiment";
      action = [&]() -> json {
        json cfg = o.config.empty() ? json::object() : load(o.config);
        const std::string name = cfg.value("experiment", o.name);
        auto str = [&](const char* key, const std::string& fallback) {
          return cfg.contains(key) ? (cfg.at(key).is_string() ? cfg.at(key).get<std::string>() : cfg.at(key).dump())
                                   : fallback;
        };
        const std::uint64_t seed = cfg.value("seed", o.seed);
        if (name == "dickson") {
          const auto rep = dickson_normal_closure(cfg.value("n", o.n), cfg.value("q", o.q), seed,
                                                  cfg.value("budget", std::size_t{1000000}));
          const auto p = make_proset(Proset::full(rep.n));
          IncMatrix seed_m(p, CoeffRing::prime_field(rep.q));
          for (auto& [k, v] : rep.seed_element) seed_m.set(k.first, k.second, v);
          return {{"experiment", "dickson"}, {"n", rep.n}, {"q", rep.q}, {"seed", rep.seed},
                  {"seed_element", io::to_json(seed_m)}, {"closure_size", rep.closure_size},
                  {"sl_order", rep.sl_order}, {"gl_order", rep.gl_order},
                  {"contains_sl_generators", rep.contains_sl_generators}, {"divisible_by_sl", rep.divisible_by_sl},
                  {"equals_gl", rep.equals_gl}};
        }
        if (name == "commutator") {
          Rng rng(seed);
          auto p = proset_arg(str("proset", o.proset));
          const auto rep = iterated_commutator_sample(p, ring_arg(str("ring", o.ring)), cfg.value("depth", o.depth),
                                                      cfg.value("trials", o.trials), rng);
          return {{"experiment", "commutator"}, {"depth", rep.depth}, {"samples", rep.samples},
                  {"pattern_holds", rep.pattern_holds}, {"bounded", rep.bounded},
                  {"identity_holds", rep.identity_holds}};
        }
        if (name == "qz") {
          auto f = io::family_from_json(load(str("family", o.family)));
          const auto rep = qz_window_check(f, ring_arg(str("ring", o.ring)), elems(*f, str("alpha", o.alpha)),
                                           elems(*f, str("beta", o.beta)), cfg.value("budget", o.budget));
          return {{"experiment", "qz"}, {"generators", rep.generators}, {"generators_hit", rep.generators_hit},
                  {"closure_order", rep.closure_order}, {"target_order", rep.target_order},
                  {"surjective", rep.surjective}};
        }
        if (name == "center") {
          auto p = proset_arg(str("proset", o.proset));
          const CoeffRing r = ring_arg(str("ring", o.ring));
          const auto set = exhaustive_centrality_set(p, r);
          bool all_scalar = true;
          for (auto& c : set) all_scalar = all_scalar && is_central(c).scalar;
          return {{"experiment", "center"}, {"central_units", set.size()}, {"all_scalar", all_scalar},
                  {"has_unit_pair", r.has_unit_pair()}, {"irreducible", p->is_irreducible()}};
        }
        throw Error(ErrorCode::InvalidArgument, "unknown experiment '" + name + "'");
      };
    });
  }

  try {
    std::vector<std::string> rev(args.rbegin(), args.rend());
    app.parse(rev);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return 0;
  } catch (const CLI::CallForVersion&) {
    out << kVersion << "\n";
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "usage error: " << e.what() << "\n";
    return 2;
  }

  json report = {{"command", command}, {"invocation", args}, {"version", kVersion}};
  try {
    report["result"] = action();
  } catch (const CLI::RequiredError& e) {
    err << "usage error: " << e.what() << "\n";
    return 2;
  } catch (const Error& e) {
    report["error"] = {{"name", e.name()}, {"message", e.what()}};
    out << report.dump(2) << "\n";
    err << e.what() << "\n";
    return 1;
  } catch (const json::exception& e) {
    report["error"] = {{"name", error_name(ErrorCode::ParseError)}, {"message", e.what()}};
    out << report.dump(2) << "\n";
    err << e.what() << "\n";
    return 1;
  }
  out << report.dump(2) << "\n";
  return 0;
}

}  // namespace incalg
