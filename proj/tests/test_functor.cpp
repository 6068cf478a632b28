#include <gtest/gtest.h>

#include <set>

#include "incalg/error.hpp"
#include "incalg/functor_cat.hpp"
#include "incalg/random.hpp"
#include "oracle.hpp"

using namespace incalg;

namespace {

ErrorCode code_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "no error thrown";
  return ErrorCode::InvalidArgument;
}

ProsetRef chain(std::size_t n) { return make_proset(Proset::chain(n)); }

// Pull back coordinates along f, dropping strict pairs that f collapses.
oracle::Mat pullback(const FccMap& f, const oracle::Mat& a) {
  const Proset& d = *f.domain();
  oracle::Mat out(d.size(), std::vector<std::int64_t>(d.size(), 0));
  for (std::size_t i = 0; i < d.size(); ++i)
    for (std::size_t j = 0; j < d.size(); ++j)
      if (d.leq(i, j) && (i == j || f(i) != f(j))) out[i][j] = a[f(i)][f(j)];
  return out;
}

// Random proset with at least one singleton class, so constants have a target.
ProsetRef target(Rng& rng, std::size_t max_size, bool poset_only = false) {
  for (;;) {
    Proset p = random_proset(1 + rng() % max_size, rng, poset_only);
    for (auto& c : p.classes())
      if (c.size() == 1) return make_proset(std::move(p));
  }
}

bool same_map(const FccMap& a, const FccMap& b) { return a.mapping() == b.mapping(); }

std::size_t components_of(const Proset& p) { return p.components().size(); }

}  // namespace

TEST(Functor, ValidateExamples) {
  EXPECT_EQ(code_of([] { validate_fcc(chain(2), chain(3), {0, 2}); }), ErrorCode::NotConvexImage);
  EXPECT_EQ(code_of([] { validate_fcc(chain(4), chain(2), {0, 0, 1, 1}); }), ErrorCode::NotFcc);
  EXPECT_EQ(code_of([] { validate_fcc(chain(2), chain(2), {1, 0}); }), ErrorCode::NotOrderPreserving);
  EXPECT_EQ(code_of([] { validate_fcc(chain(2), chain(2), {0}); }), ErrorCode::InvalidArgument);
  // a point inside a two-element class is not convex
  auto cls = make_proset(Proset::two_block(2, 1));
  EXPECT_EQ(code_of([&] { validate_fcc(chain(1), cls, {2}); }), ErrorCode::NotConvexImage);
  EXPECT_EQ(code_of([&] { validate_fcc(chain(2), cls, {2, 2}); }), ErrorCode::NotConvexImage);
  EXPECT_EQ(validate_fcc(chain(2), cls, {0, 0}).kinds(), std::vector<ComponentKind>{ComponentKind::Constant});
  auto c = validate_fcc(chain(3), chain(2), {1, 1, 1});
  EXPECT_EQ(c.kinds(), std::vector<ComponentKind>{ComponentKind::Constant});
  auto e = validate_fcc(chain(2), chain(3), {1, 2});
  EXPECT_EQ(e.kinds(), std::vector<ComponentKind>{ComponentKind::ConvexEmbedding});
  auto two = make_proset(Proset::disjoint_union({Proset::chain(2), Proset::chain(2)}));
  auto fold = validate_fcc(two, chain(2), {0, 1, 0, 1});
  EXPECT_TRUE(fold.is_surjective());
  auto byname = validate_fcc_by_name(chain(2), chain(3), {{"0", "1"}, {"1", "2"}});
  EXPECT_EQ(byname.mapping(), (std::vector<std::size_t>{1, 2}));
}

TEST(Functor, InducedHomExamples) {
  const CoeffRing z = CoeffRing::integers();
  auto c2 = chain(2), one = chain(1);
  IncMatrix s(one, z);
  s.set(0, 0, z.from_int(7));
  auto pulled = induced_hom(validate_fcc(c2, one, {0, 0}), s);
  EXPECT_EQ(pulled, IncMatrix::scalar_diag(c2, z, z.from_int(7)));
  auto iso = validate_fcc(c2, make_proset(Proset::from_relations({"a", "b"}, {{"a", "b"}})), {0, 1});
  IncMatrix a(iso.codomain(), z);
  a.set(0, 1, z.from_int(3));
  a.set(1, 1, z.from_int(2));
  EXPECT_EQ(induced_hom(iso, a).at(0, 1), z.from_int(3));
  EXPECT_EQ(induced_hom(iso, a).at(1, 1), z.from_int(2));
  EXPECT_EQ(code_of([&] { induced_hom(iso, IncMatrix::identity(c2, z)); }), ErrorCode::IncompatibleOperands);
}

TEST(Functor, InducedHomIsUnitalMultiplicative) {
  Rng rng(61);
  const CoeffRing f5 = CoeffRing::prime_field(5);
  for (int t = 0; t < 50; ++t) {
    auto dom = make_proset(random_proset(1 + rng() % 6, rng, t % 2 == 0));
    auto cod = target(rng, 6, t % 3 == 0);
    auto f = random_fcc_map(dom, cod, rng);
    EXPECT_EQ(induced_hom(f, IncMatrix::identity(cod, f5)), IncMatrix::identity(dom, f5));
    for (int k = 0; k < 40; ++k) {
      auto a = random_matrix(cod, f5, rng), b = random_matrix(cod, f5, rng);
      EXPECT_EQ(oracle::dense(induced_hom(f, a)), pullback(f, oracle::dense(a)));
      EXPECT_EQ(induced_hom(f, a * b), induced_hom(f, a) * induced_hom(f, b));
      EXPECT_EQ(induced_hom(f, a + b), induced_hom(f, a) + induced_hom(f, b));
    }
  }
}

TEST(Functor, Functoriality) {
  Rng rng(62);
  const CoeffRing f3 = CoeffRing::prime_field(3);
  for (int t = 0; t < 100; ++t) {
    auto a = make_proset(random_proset(1 + rng() % 5, rng, false));
    auto b = target(rng, 5);
    auto c = target(rng, 5);
    auto f = random_fcc_map(a, b, rng), g = random_fcc_map(b, c, rng);
    auto gf = compose(g, f);
    for (std::size_t i = 0; i < a->size(); ++i) EXPECT_EQ(gf(i), g(f(i)));
    auto x = random_matrix(c, f3, rng);
    EXPECT_EQ(oracle::dense(induced_hom(gf, x)), pullback(f, pullback(g, oracle::dense(x))));
    EXPECT_TRUE(functoriality_check(f, g, f3, rng, 5).holds);
    EXPECT_TRUE(same_map(compose(identity_map(b), f), f));
  }
  auto f = validate_fcc(chain(1), chain(2), {0});
  EXPECT_EQ(code_of([&] { compose(f, f); }), ErrorCode::NotComposable);
}

// Every strict pair of the codomain is the image of a strict pair.
bool covers_relation(const FccMap& f) {
  std::set<std::pair<std::size_t, std::size_t>> hit;
  for (auto [i, j] : f.domain()->strict_relation())
    if (f(i) != f(j)) hit.emplace(f(i), f(j));
  for (auto pr : f.codomain()->strict_relation())
    if (!hit.count(pr)) return false;
  return f.is_surjective();
}

std::size_t image_count(const FccMap& f, const CoeffRing& r) {
  std::set<oracle::Mat> img;
  for_each_matrix(f.codomain(), r, [&](const IncMatrix& m) { img.insert(oracle::dense(induced_hom(f, m))); });
  return img.size();
}

TEST(Functor, NonzeroGeneratorImagesAreDisjoint) {
  Rng rng(63);
  const CoeffRing f5 = CoeffRing::prime_field(5);
  for (int t = 0; t < 100; ++t) {
    auto dom = make_proset(random_proset(1 + rng() % 5, rng, false));
    auto f = random_fcc_map(dom, target(rng, 4), rng, 0.9);
    std::set<IncMatrix::Key> used;
    for (auto [i, j] : f.codomain()->relation()) {
      const IncMatrix img = induced_hom(f, IncMatrix::unit(f.codomain(), f5, i, j));
      for (auto& [k, v] : img.entries()) {
        EXPECT_TRUE(used.insert(k).second);
        EXPECT_EQ(v, f5.one());
      }
    }
  }
}

TEST(Functor, RelationSurjectiveGivesInjective) {
  Rng rng(64);
  const CoeffRing f2 = CoeffRing::prime_field(2);
  auto two = make_proset(Proset::disjoint_union({Proset::chain(2), Proset::chain(2)}));
  auto fold = validate_fcc(two, chain(2), {0, 1, 0, 1});
  ASSERT_TRUE(covers_relation(fold));
  EXPECT_EQ(image_count(fold, f2), matrix_count(*chain(2), f2));
  std::size_t seen = 0;
  for (int t = 0; t < 2000 && seen < 30; ++t) {
    auto dom = make_proset(random_proset(1 + rng() % 5, rng, false));
    auto f = random_fcc_map(dom, target(rng, 3), rng, 0.9);
    if (!covers_relation(f)) continue;
    ++seen;
    EXPECT_TRUE(surjective_implies_injective_check(f, CoeffRing::prime_field(5), rng).holds);
    if (matrix_count(*f.codomain(), f2) <= 4096) EXPECT_EQ(image_count(f, f2), matrix_count(*f.codomain(), f2));
  }
  EXPECT_GT(seen, 5u);
}

// Surjective on points but not on the relation: e^{(0,2)} has no preimage pair.
TEST(Functor, SurjectiveOnPointsIsNotEnough) {
  Rng rng(66);
  const CoeffRing f2 = CoeffRing::prime_field(2);
  auto two = make_proset(Proset::disjoint_union({Proset::chain(2), Proset::chain(2)}));
  auto f = validate_fcc(two, chain(3), {0, 1, 1, 2});
  EXPECT_TRUE(f.is_surjective());
  EXPECT_EQ(f.kinds(), (std::vector<ComponentKind>{ComponentKind::ConvexEmbedding, ComponentKind::ConvexEmbedding}));
  EXPECT_TRUE(induced_hom(f, IncMatrix::unit(chain(3), f2, 0, 2)).is_zero());
  EXPECT_FALSE(surjective_implies_injective_check(f, f2, rng).holds);
  EXPECT_LT(image_count(f, f2), matrix_count(*chain(3), f2));
}

TEST(Functor, Coproduct) {
  Rng rng(64);
  const CoeffRing f3 = CoeffRing::prime_field(3);
  for (int t = 0; t < 30; ++t) {
    std::vector<ProsetRef> parts;
    for (int k = 0; k < 3; ++k) parts.push_back(make_proset(random_proset(1 + rng() % 3, rng, false)));
    auto c = coproduct(parts);
    std::size_t total = 0;
    for (auto& p : parts) total += p->size();
    EXPECT_EQ(c.object->size(), total);
    auto to = target(rng, 4);
    std::vector<FccMap> legs;
    for (auto& p : parts) legs.push_back(random_fcc_map(p, to, rng));
    auto u = mediating_map(c, legs);
    for (std::size_t k = 0; k < parts.size(); ++k) {
      EXPECT_TRUE(same_map(compose(u, c.embeddings[k]), legs[k]));
      EXPECT_EQ(c.embeddings[k].kinds().size(), components_of(*parts[k]));
    }
    // M of a coproduct is the product of the Ms
    auto x = random_matrix(c.object, f3, rng);
    IncMatrix rebuilt(c.object, f3);
    for (std::size_t k = 0; k < parts.size(); ++k) {
      auto piece = induced_hom(c.embeddings[k], x);
      for (auto& [key, v] : piece.entries()) rebuilt.set(c.embeddings[k](key.first), c.embeddings[k](key.second), v);
    }
    EXPECT_EQ(rebuilt, x);
  }
}

TEST(Functor, PushoutBasics) {
  auto empty = make_proset(Proset::antichain(0));
  auto a = chain(2), b = chain(3);
  auto po = pushout(validate_fcc(empty, a, {}), validate_fcc(empty, b, {}));
  EXPECT_EQ(po.object->size(), 5u);
  EXPECT_EQ(components_of(*po.object), 2u);
  auto id = identity_map(b);
  auto self = pushout(id, id);
  EXPECT_TRUE(poset_isomorphic(*self.object, *b));
  // 1 -> 2< and 1 -> 1 glue a point onto the bottom
  auto glued = pushout(validate_fcc(chain(1), a, {0}), validate_fcc(chain(1), chain(1), {0}));
  EXPECT_EQ(glued.object->size(), 2u);
  EXPECT_TRUE(poset_isomorphic(*glued.object, *a));
}

TEST(Functor, PushoutOfReversedIntegersAndZig) {
  // windows of Z^op and Zig glued along a 2-chain
  ElemSet w{-3, -2, -1, 0, 1, 2, 3};
  auto zop = make_proset(family_z()->restrict(w).opposite());
  auto zig = make_proset(family_zig()->restrict(w));
  auto idx = [&](Elem e) { return static_cast<std::size_t>(e + 3); };
  auto f = validate_fcc(chain(2), zop, {idx(0), idx(-1)});
  auto g = validate_fcc(chain(2), zig, {idx(0), idx(1)});
  auto po = pushout(f, g);
  EXPECT_EQ(po.object->size(), zop->size() + zig->size() - 2);
  for (std::size_t s = 0; s < 2; ++s) EXPECT_EQ(po.p1(f(s)), po.p2(g(s)));
  const Proset& q = *po.object;
  EXPECT_TRUE(q.leq(po.p1(idx(1)), po.p2(idx(1))));
  EXPECT_TRUE(q.leq(po.p2(idx(2)), po.p1(idx(-2))));
  EXPECT_TRUE(q.leq(po.p2(idx(0)), po.p1(idx(-3))));
  EXPECT_FALSE(q.leq(po.p2(idx(1)), po.p1(idx(1))));
}

TEST(Functor, RandomPushoutsAndCoequalizers) {
  Rng rng(65);
  for (int t = 0; t < 100; ++t) {
    auto lam = make_proset(random_proset(1 + rng() % 3, rng, false));
    auto a = target(rng, 5), b = target(rng, 5);
    auto f = random_fcc_map(lam, a, rng), g = random_fcc_map(lam, b, rng);
    auto po = pushout(f, g);
    for (std::size_t s = 0; s < lam->size(); ++s) EXPECT_EQ(po.p1(f(s)), po.p2(g(s)));
    auto h = random_fcc_map(po.object, target(rng, 4), rng);
    auto q1 = compose(h, po.p1), q2 = compose(h, po.p2);
    auto u = pushout_mediating(po, q1, q2);
    EXPECT_TRUE(same_map(compose(u, po.p1), q1));
    EXPECT_TRUE(same_map(compose(u, po.p2), q2));

    auto src = make_proset(random_proset(1 + rng() % 3, rng, false));
    auto dst = target(rng, 5);
    auto f1 = random_fcc_map(src, dst, rng), f2 = random_fcc_map(src, dst, rng);
    auto co = coequalizer(f1, f2);
    EXPECT_TRUE(same_map(compose(co.p, f1), compose(co.p, f2)));
    auto rep = equalizer_check(f1, f2, CoeffRing::prime_field(3), rng);
    EXPECT_TRUE(rep.equalizes);
    EXPECT_TRUE(rep.injective);
    EXPECT_TRUE(rep.factors);
  }
}

TEST(Functor, CoequalizerExamples) {
  auto two = chain(2);
  auto f1 = validate_fcc(chain(1), two, {0}), f2 = validate_fcc(chain(1), two, {1});
  auto co = coequalizer(f1, f2);
  EXPECT_EQ(co.object->size(), 1u);
  auto same = coequalizer(f1, f1);
  EXPECT_TRUE(poset_isomorphic(*same.object, *two));
  auto disc = make_proset(Proset::antichain(2));
  auto g1 = validate_fcc(chain(1), disc, {0}), g2 = validate_fcc(chain(1), disc, {1});
  EXPECT_EQ(coequalizer(g1, g2).object->size(), 1u);
  EXPECT_EQ(code_of([&] { coequalizer(f1, validate_fcc(chain(1), chain(3), {0})); }), ErrorCode::NotParallel);
  // gluing the top of one chain to the bottom of another creates 0:0 < 1:1
  // with no preimage pair, so M[p] equalizes but has a kernel
  auto pair = make_proset(Proset::disjoint_union({Proset::chain(2), Proset::chain(2)}));
  auto h1 = validate_fcc(chain(1), pair, {1}), h2 = validate_fcc(chain(1), pair, {2});
  auto glued = coequalizer(h1, h2);
  EXPECT_TRUE(poset_isomorphic(*glued.object, Proset::chain(3)));
  Rng rng(67);
  auto rep = equalizer_check(h1, h2, CoeffRing::prime_field(2), rng);
  EXPECT_TRUE(rep.equalizes);
  EXPECT_FALSE(rep.injective);
  EXPECT_TRUE(rep.factors);
}

TEST(Functor, DirectLimitWindows) {
  for (auto fam : {family_n(), family_z(), family_zig(), family_nstar_div()}) {
    auto rep = direct_limit_window_check(fam, 6);
    EXPECT_EQ(rep.windows, 6u);
    EXPECT_TRUE(rep.nested);
    EXPECT_TRUE(rep.embeddings_fcc);
    EXPECT_TRUE(rep.covers);
  }
}

TEST(Functor, GenerationExamples) {
  auto t3 = generation_decompose(Proset::chain(3));
  EXPECT_EQ(t3.kind, GenTree::Kind::Pushout);
  EXPECT_TRUE(poset_isomorphic(reassemble(t3), Proset::chain(3)));
  auto leaf = generation_decompose(Proset::two_block(2, 1));
  EXPECT_EQ(leaf.kind, GenTree::Kind::Leaf);
  EXPECT_EQ(leaf.lower.size(), 1u);
  EXPECT_EQ(leaf.upper.size(), 2u);
  EXPECT_TRUE(poset_isomorphic(reassemble(leaf), Proset::two_block(2, 1)));
  EXPECT_EQ(generation_decompose(Proset::full(3)).kind, GenTree::Kind::Leaf);
  EXPECT_EQ(code_of([] { generation_decompose(Proset::antichain(2)); }), ErrorCode::NotIrreducible);
}

TEST(Functor, GenerationCoversSmallIrreducibles) {
  std::size_t checked = 0;
  for (std::size_t n = 1; n <= 5; ++n)
    for (const Proset& p : prosets_up_to_iso(n, false)) {
      if (!p.is_irreducible()) continue;
      ++checked;
      auto tree = generation_decompose(p);
      EXPECT_TRUE(poset_isomorphic(reassemble(tree), p)) << n;
    }
  EXPECT_GT(checked, 100u);
}
