#include <gtest/gtest.h>

#include "incalg/error.hpp"
#include "incalg/family.hpp"
#include "incalg/proset.hpp"
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

Proset diamond() { return Proset::from_relations({"a", "b", "c", "d"}, {{"a", "b"}, {"a", "c"}, {"b", "d"}, {"c", "d"}}); }

}  // namespace

TEST(Proset, ClosureIsReflexiveAndTransitive) {
  Rng rng(5);
  for (int t = 0; t < 50; ++t) {
    const Proset p = random_proset(1 + rng() % 8, rng, t % 2 == 0);
    for (std::size_t i = 0; i < p.size(); ++i) {
      EXPECT_TRUE(p.leq(i, i));
      for (std::size_t j = 0; j < p.size(); ++j)
        for (std::size_t k = 0; k < p.size(); ++k)
          if (p.leq(i, j) && p.leq(j, k)) EXPECT_TRUE(p.leq(i, k));
    }
    // closing an already closed relation changes nothing
    EXPECT_EQ(Proset::from_pairs(p.names(), p.relation()), p);
  }
}

TEST(Proset, ComponentsAreIndependentIrreducibleCover) {
  Rng rng(6);
  for (int t = 0; t < 50; ++t) {
    const Proset p = random_proset(1 + rng() % 8, rng, t % 3 == 0, 0.2);
    std::vector<int> seen(p.size(), 0);
    for (auto& c : p.components()) {
      for (auto x : c) ++seen[x];
      EXPECT_TRUE(p.induced(c).is_irreducible());
      EXPECT_TRUE(oracle::convex(p, c));
    }
    for (auto s : seen) EXPECT_EQ(s, 1);
    for (std::size_t i = 0; i < p.size(); ++i)
      for (std::size_t j = 0; j < p.size(); ++j)
        if (p.component_of(i) != p.component_of(j)) EXPECT_FALSE(p.comparable(i, j));
  }
}

TEST(Proset, ComponentExamples) {
  const Proset u = Proset::disjoint_union({Proset::chain(2), Proset::chain(3)});
  ASSERT_EQ(u.components().size(), 2u);
  EXPECT_EQ(u.components()[0].size(), 2u);
  EXPECT_EQ(u.components()[1].size(), 3u);
  EXPECT_EQ(Proset::antichain(3).components().size(), 3u);
  const Proset zig = family_zig()->restrict({-2, -1, 0, 1, 2, 3});
  EXPECT_TRUE(zig.is_irreducible());
}

TEST(Proset, TwoBlockOrientation) {
  const Proset tb = Proset::two_block(2, 1);
  ASSERT_EQ(tb.size(), 3u);
  EXPECT_EQ(tb.classes().size(), 2u);
  EXPECT_TRUE(tb.leq(tb.index("0"), tb.index("1")));
  EXPECT_TRUE(tb.leq(tb.index("0"), tb.index("2")));
  EXPECT_TRUE(tb.equivalent(tb.index("1"), tb.index("2")));
  EXPECT_FALSE(tb.leq(tb.index("1"), tb.index("0")));
  EXPECT_EQ(Proset::two_block(3, 0).classes().size(), 1u);
}

TEST(Proset, ConvexityAndClosure) {
  const Proset c4 = Proset::chain(4);
  EXPECT_EQ(c4.convex_closure({0, 2}), (Subset{0, 1, 2}));
  EXPECT_FALSE(c4.is_convex({0, 2}));
  auto zig = family_zig();
  EXPECT_FALSE(zig->is_convex({0, 2}));
  EXPECT_TRUE(zig->is_convex({0, 1, 2}));
  EXPECT_EQ(code_of([] { Proset::antichain(2).convex_closure({0, 1}); }), ErrorCode::NotConnected);
  Rng rng(8);
  for (int t = 0; t < 30; ++t) {
    const Proset p = random_proset(1 + rng() % 7, rng, t % 2 == 0);
    for (auto& g : p.gamma_enumerate(p.size())) EXPECT_EQ(p.convex_closure(g), g);
  }
}

TEST(Proset, GammaMatchesSubsetScan) {
  const Proset two = Proset::chain(2);
  EXPECT_EQ(two.gamma_enumerate(2).size(), 3u);
  Rng rng(9);
  for (int t = 0; t < 40; ++t) {
    const Proset p = random_proset(1 + rng() % 7, rng, t % 2 == 0);
    const std::size_t bound = 1 + rng() % p.size();
    std::set<Subset> expected;
    for (std::uint32_t mask = 1; mask < (1u << p.size()); ++mask) {
      Subset s;
      for (std::size_t i = 0; i < p.size(); ++i)
        if (mask >> i & 1) s.push_back(i);
      if (s.size() <= bound && oracle::convex(p, s)) expected.insert(s);
    }
    auto got = p.gamma_enumerate(bound);
    EXPECT_EQ(std::set<Subset>(got.begin(), got.end()), expected);
    EXPECT_EQ(got.size(), expected.size());
  }
}

TEST(Proset, FamilyWindowsAreNestedConvex) {
  for (auto f : {family_n(), family_z(), family_zig(), family_nstar_div()}) {
    auto ws = f->gamma_windows(5);
    for (std::size_t k = 0; k < ws.size(); ++k) {
      EXPECT_TRUE(f->is_convex(ws[k])) << f->describe();
      if (k) EXPECT_TRUE(std::includes(ws[k].begin(), ws[k].end(), ws[k - 1].begin(), ws[k - 1].end()));
    }
  }
  EXPECT_EQ(family_n()->window(2), (ElemSet{0, 1, 2}));
  EXPECT_EQ(family_zig()->window(1), (ElemSet{-1, 0, 1}));
}

TEST(Family, Intervals) {
  EXPECT_EQ(family_nstar_div()->interval(3, 30), (ElemSet{3, 6, 15, 30}));
  EXPECT_EQ(family_zig()->interval(2, 3), (ElemSet{2, 3}));
  EXPECT_EQ(family_zig()->interval(2, 1), (ElemSet{1, 2}));
  EXPECT_TRUE(family_zig()->interval(1, 2).empty());
  EXPECT_TRUE(family_nstar_div()->interval(4, 6).empty());
  EXPECT_EQ(family_n()->interval(2, 5), (ElemSet{2, 3, 4, 5}));
  const Proset c = Proset::chain(3);
  EXPECT_TRUE(c.interval(2, 0).empty());
}

TEST(Family, DivisorIntervalsMatchArithmetic) {
  auto f = family_nstar_div();
  for (Elem a = 1; a <= 12; ++a)
    for (Elem b = 1; b <= 72; ++b) {
      ElemSet expected;
      if (b % a == 0)
        for (Elem s = a; s <= b; ++s)
          if (s % a == 0 && b % s == 0) expected.push_back(s);
      EXPECT_EQ(f->interval(a, b), expected);
    }
}

TEST(Family, Neighborhoods) {
  EXPECT_EQ(family_zig()->neighborhood(0, 1), (ElemSet{-1, 0, 1}));
  EXPECT_EQ(family_zig()->neighborhood(0, 2), (ElemSet{-2, -1, 0, 1, 2}));
  EXPECT_EQ(code_of([] { family_nstar_div()->neighborhood(1, 1); }), ErrorCode::InfiniteNeighborhood);
  EXPECT_EQ(code_of([] { family_n()->neighborhood(3, 1); }), ErrorCode::InfiniteNeighborhood);
  const Proset d = diamond();
  for (std::size_t s = 0; s < d.size(); ++s) EXPECT_EQ(d.neighborhood(s, 0), (Subset{s}));
  EXPECT_EQ(d.neighborhood(d.index("b"), 1), (Subset{0, 1, 3}));
}

TEST(Family, IntervalInsideNeighborhood) {
  Rng rng(10);
  for (int t = 0; t < 30; ++t) {
    const Proset p = random_proset(2 + rng() % 6, rng, false);
    for (std::size_t a = 0; a < p.size(); ++a)
      for (std::size_t b = 0; b < p.size(); ++b)
        if (p.leq(a, b)) {
          auto iv = p.interval(a, b);
          auto nb = p.neighborhood(a, 1);
          EXPECT_TRUE(std::includes(nb.begin(), nb.end(), iv.begin(), iv.end()));
        }
  }
}

TEST(Family, ZigAugmentation) {
  auto f = family_augmented(family_zig(), {{0, 3}, {2, 4}});
  EXPECT_TRUE(f->equivalent(0, 3));
  EXPECT_TRUE(f->equivalent(2, 4));
  EXPECT_FALSE(f->equivalent(0, 2));
  EXPECT_TRUE(f->leq(2, 0));
  EXPECT_TRUE(f->leq(4, 0));
  EXPECT_TRUE(f->leq(2, 5));
  EXPECT_TRUE(f->leq(2, 1));
  EXPECT_FALSE(f->leq(0, 2));
  EXPECT_FALSE(f->leq(0, 5));
  EXPECT_TRUE(f->leq(-2, -1));
  EXPECT_FALSE(f->leq(-2, 0));
  EXPECT_EQ(f->interval(2, 0), (ElemSet{0, 2, 3, 4}));
}

TEST(Family, AugmentationBasics) {
  auto n = family_augmented(family_n(), {{0, 1}});
  EXPECT_TRUE(n->equivalent(0, 1));
  EXPECT_TRUE(n->leq(1, 0));
  EXPECT_TRUE(n->leq(1, 7));
  EXPECT_FALSE(n->leq(2, 1));
  auto same = family_augmented(family_n(), {});
  for (Elem a = 0; a < 6; ++a)
    for (Elem b = 0; b < 6; ++b) EXPECT_EQ(same->leq(a, b), family_n()->leq(a, b));
  EXPECT_EQ(code_of([] { family_augmented(family_n(), {{0, 1}, {1, 2}}); }), ErrorCode::OverlappingAugmentation);
  EXPECT_EQ(code_of([] { Proset::chain(3).augment({{0, 1}, {1, 2}}); }), ErrorCode::OverlappingAugmentation);
  EXPECT_FALSE(Proset::chain(3).augment({{0, 2}}).is_poset());
  EXPECT_EQ(Proset::chain(3).augment({{0, 2}}).classes().size(), 1u);
  EXPECT_EQ(Proset::chain(3).augment({}), Proset::chain(3));
}

TEST(Family, CustomBudget) {
  CustomFamilySpec spec;
  spec.contains = [](Elem) { return true; };
  spec.leq = [](Elem a, Elem b) { return a <= b; };
  spec.interval_candidates = [](Elem a, Elem, const std::function<void(Elem)>& emit) {
    for (Elem x = a;; ++x) emit(x);
  };
  spec.window = [](std::size_t k) {
    ElemSet w;
    for (Elem x = 0; x <= static_cast<Elem>(k); ++x) w.push_back(x);
    return w;
  };
  spec.budget = 1000;
  auto f = family_custom(spec);
  EXPECT_EQ(code_of([&] { f->interval(0, 5); }), ErrorCode::LocalFinitenessBudgetExceeded);
}

TEST(Proset, Predicates) {
  EXPECT_TRUE(family_n()->is_z_like());
  EXPECT_FALSE(family_zig()->is_z_like());
  EXPECT_TRUE(Proset::chain(4).is_z_like());
  EXPECT_FALSE(Proset::antichain(2).is_z_like());
  EXPECT_FALSE(diamond().is_z_like());
  EXPECT_TRUE(Proset::chain(2).is_n_bounded(2));
  EXPECT_FALSE(Proset::chain(3).is_n_bounded(2));
  EXPECT_TRUE(Proset::full(2).is_irreducible());
  EXPECT_FALSE(Proset::full(2).is_poset());
  Rng rng(12);
  for (int t = 0; t < 20; ++t) {
    const Proset p = random_proset(1 + rng() % 7, rng, false);
    EXPECT_EQ(p.opposite().opposite(), p);
    for (std::size_t i = 0; i < p.size(); ++i)
      for (std::size_t j = 0; j < p.size(); ++j) EXPECT_EQ(p.opposite().leq(i, j), p.leq(j, i));
  }
}

TEST(Proset, Isomorphism) {
  const Proset rev = Proset::from_relations({"x", "y"}, {{"y", "x"}});
  EXPECT_TRUE(poset_isomorphic(Proset::chain(2), rev).has_value());
  EXPECT_FALSE(poset_isomorphic(Proset::chain(2), Proset::antichain(2)).has_value());
  EXPECT_TRUE(poset_isomorphic(Proset::chain(2).opposite(), Proset::chain(2)).has_value());
  auto four = prosets_up_to_iso(4, true);
  ASSERT_EQ(four.size(), 16u);
  for (std::size_t i = 0; i < four.size(); ++i)
    for (std::size_t j = 0; j < four.size(); ++j) EXPECT_EQ(poset_isomorphic(four[i], four[j]).has_value(), i == j);
}

TEST(Proset, IsomorphismTypeCounts) {
  // unlabeled posets and preorders on n points
  const std::size_t posets[] = {1, 1, 2, 5, 16, 63};
  const std::size_t preorders[] = {1, 1, 3, 9, 33};
  for (std::size_t n = 0; n <= 5; ++n) EXPECT_EQ(prosets_up_to_iso(n, true).size(), posets[n]) << n;
  for (std::size_t n = 0; n <= 4; ++n) EXPECT_EQ(prosets_up_to_iso(n, false).size(), preorders[n]) << n;
}

TEST(Proset, IsomorphismMapIsOrderIsomorphism) {
  Rng rng(13);
  for (int t = 0; t < 30; ++t) {
    const Proset p = random_proset(1 + rng() % 7, rng, t % 2 == 0);
    std::vector<std::size_t> perm(p.size());
    std::iota(perm.begin(), perm.end(), 0);
    std::shuffle(perm.begin(), perm.end(), rng);
    std::vector<std::string> names(p.size());
    for (std::size_t i = 0; i < p.size(); ++i) names[perm[i]] = "n" + std::to_string(i);
    std::vector<std::pair<std::size_t, std::size_t>> gens;
    for (auto [a, b] : p.relation()) gens.emplace_back(perm[a], perm[b]);
    const Proset q = Proset::from_pairs(names, gens);
    auto m = poset_isomorphic(p, q);
    ASSERT_TRUE(m.has_value());
    for (std::size_t i = 0; i < p.size(); ++i)
      for (std::size_t j = 0; j < p.size(); ++j) EXPECT_EQ(p.leq(i, j), q.leq((*m)[i], (*m)[j]));
  }
}

TEST(Proset, InducedAndDisjointUnionNames) {
  const Proset d = diamond();
  const Proset sub = d.induced({0, 3});
  EXPECT_EQ(sub.names(), (std::vector<std::string>{"a", "d"}));
  EXPECT_TRUE(sub.leq(0, 1));
  const Proset u = Proset::disjoint_union({Proset::chain(2), Proset::chain(2)});
  EXPECT_EQ(u.size(), 4u);
  EXPECT_EQ(u.components().size(), 2u);
  EXPECT_EQ(code_of([] { Proset::from_relations({"a", "a"}, {}); }), ErrorCode::InvalidArgument);
  EXPECT_EQ(code_of([] { Proset::from_relations({"a"}, {{"a", "b"}}); }), ErrorCode::InvalidArgument);
}

TEST(Proset, LinearExtension) {
  Rng rng(14);
  for (int t = 0; t < 30; ++t) {
    const Proset p = random_proset(1 + rng() % 8, rng, false);
    auto order = p.class_linear_extension();
    ASSERT_EQ(order.size(), p.classes().size());
    std::vector<std::size_t> pos(order.size());
    for (std::size_t k = 0; k < order.size(); ++k) pos[order[k]] = k;
    for (std::size_t a = 0; a < order.size(); ++a)
      for (std::size_t b = 0; b < order.size(); ++b)
        if (a != b && p.class_leq(a, b)) EXPECT_LT(pos[a], pos[b]);
  }
}
