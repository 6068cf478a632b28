#include <gtest/gtest.h>

#include "incalg/error.hpp"
#include "incalg/family.hpp"
#include "incalg/incidence.hpp"
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

std::vector<Subset> all_subsets(std::size_t n) {
  std::vector<Subset> out;
  for (std::uint32_t m = 0; m < (1u << n); ++m) {
    Subset s;
    for (std::size_t i = 0; i < n; ++i)
      if (m >> i & 1) s.push_back(i);
    out.push_back(s);
  }
  return out;
}

}  // namespace

TEST(Incidence, ProductAgreesWithDenseOracle) {
  Rng rng(21);
  for (std::int64_t mod : {2, 6, 9}) {
    const CoeffRing r = CoeffRing::mod(mod);
    for (int t = 0; t < 60; ++t) {
      auto p = make_proset(random_proset(1 + rng() % 8, rng, t % 2 == 0));
      auto a = random_matrix(p, r, rng, 0.6), b = random_matrix(p, r, rng, 0.6);
      EXPECT_EQ(oracle::dense(a * b), oracle::mul(oracle::dense(a), oracle::dense(b), mod));
      EXPECT_EQ(oracle::dense(a + b), oracle::add(oracle::dense(a), oracle::dense(b), mod));
    }
  }
}

TEST(Incidence, RingAxioms) {
  Rng rng(22);
  for (auto r : {CoeffRing::mod(6), CoeffRing::prime_field(5), CoeffRing::rationals()}) {
    for (int t = 0; t < 10; ++t) {
      auto p = make_proset(random_proset(1 + rng() % 8, rng, t % 2 == 0));
      const IncMatrix one = IncMatrix::identity(p, r);
      for (int k = 0; k < 30; ++k) {
        auto a = random_matrix(p, r, rng), b = random_matrix(p, r, rng), c = random_matrix(p, r, rng);
        EXPECT_EQ((a * b) * c, a * (b * c));
        EXPECT_EQ(a * (b + c), a * b + a * c);
        EXPECT_EQ((a + b) * c, a * c + b * c);
        EXPECT_EQ(a * one, a);
        EXPECT_EQ(one * a, a);
      }
    }
  }
}

TEST(Incidence, SupportInvariant) {
  Rng rng(23);
  auto p = make_proset(random_proset(6, rng, false));
  const CoeffRing r = CoeffRing::prime_field(3);
  for (int t = 0; t < 50; ++t) {
    auto a = random_matrix(p, r, rng) * random_matrix(p, r, rng);
    for (auto& [k, v] : a.entries()) {
      EXPECT_TRUE(p->leq(k.first, k.second));
      EXPECT_FALSE(r.is_zero(v));
    }
  }
  IncMatrix a(p, r);
  for (std::size_t i = 0; i < p->size(); ++i)
    for (std::size_t j = 0; j < p->size(); ++j)
      if (!p->leq(i, j)) {
        EXPECT_EQ(code_of([&] { a.set(i, j, r.one()); }), ErrorCode::NotComparable);
        EXPECT_EQ(code_of([&] { IncMatrix::unit(p, r, i, j); }), ErrorCode::NotComparable);
      }
}

TEST(Incidence, IncompatibleOperands) {
  auto c2 = make_proset(Proset::chain(2)), a2 = make_proset(Proset::antichain(2));
  const CoeffRing f2 = CoeffRing::prime_field(2), f3 = CoeffRing::prime_field(3);
  EXPECT_EQ(code_of([&] { (void)(IncMatrix::identity(c2, f2) * IncMatrix::identity(a2, f2)); }),
            ErrorCode::IncompatibleOperands);
  EXPECT_EQ(code_of([&] { (void)(IncMatrix::identity(c2, f2) + IncMatrix::identity(c2, f3)); }),
            ErrorCode::IncompatibleOperands);
  // structurally equal prosets behind different pointers are compatible
  EXPECT_NO_THROW((void)(IncMatrix::identity(c2, f2) * IncMatrix::identity(make_proset(Proset::chain(2)), f2)));
}

// Every relation of the generator table, on every proset with at most 4 points.
TEST(Incidence, GeneratorRelationTable) {
  for (std::int64_t q : {2, 3}) {
    const CoeffRing r = CoeffRing::prime_field(q);
    for (std::size_t n = 1; n <= 4; ++n)
      for (const Proset& base : prosets_up_to_iso(n, false)) {
        auto p = make_proset(base);
        const auto rel = p->relation();
        for (auto [s1, s2] : rel)
          for (auto [t1, t2] : rel) {
            const IncMatrix prod = IncMatrix::unit(p, r, s1, s2) * IncMatrix::unit(p, r, t1, t2);
            EXPECT_EQ(prod, s2 == t1 ? IncMatrix::unit(p, r, s1, t2) : IncMatrix::zero(p, r));
          }
        const auto subsets = all_subsets(n);
        for (auto& s : subsets) {
          const IncMatrix ind = IncMatrix::indicator(p, r, s);
          for (auto& t : subsets) {
            Subset both;
            std::set_intersection(s.begin(), s.end(), t.begin(), t.end(), std::back_inserter(both));
            EXPECT_EQ(ind * IncMatrix::indicator(p, r, t), IncMatrix::indicator(p, r, both));
          }
          for (auto [s1, s2] : rel) {
            const bool left = std::binary_search(s.begin(), s.end(), s1);
            const bool right = std::binary_search(s.begin(), s.end(), s2);
            const IncMatrix e = IncMatrix::unit(p, r, s1, s2);
            EXPECT_EQ(ind * e, left ? e : IncMatrix::zero(p, r));
            EXPECT_EQ(e * ind, right ? e : IncMatrix::zero(p, r));
          }
        }
        for (std::size_t s = 0; s < n; ++s) EXPECT_EQ(IncMatrix::unit(p, r, s, s), IncMatrix::indicator(p, r, {s}));
        for (auto& v : r.elements()) {
          const IncMatrix sc = IncMatrix::scalar_diag(p, r, v);
          for (auto [s1, s2] : rel) {
            const IncMatrix e = IncMatrix::unit(p, r, s1, s2);
            EXPECT_EQ(sc * e, e * sc);
            EXPECT_EQ(sc * e, e.scaled(v));
          }
        }
        // 1^{s} A keeps row s, A 1^{s} keeps column s, (A 1^{s} A)_{t1,t2} = A_{t1,s} A_{s,t2}
        Rng rng(n * 10 + static_cast<std::size_t>(q));
        for (int k = 0; k < 5; ++k) {
          const IncMatrix a = random_matrix(p, r, rng);
          for (std::size_t s = 0; s < n; ++s) {
            const IncMatrix is = IncMatrix::indicator(p, r, {s});
            const IncMatrix row = is * a, col = a * is, sandwich = a * is * a;
            for (std::size_t t1 = 0; t1 < n; ++t1)
              for (std::size_t t2 = 0; t2 < n; ++t2) {
                EXPECT_EQ(row.at(t1, t2), t1 == s ? a.at(t1, t2) : r.zero());
                EXPECT_EQ(col.at(t1, t2), t2 == s ? a.at(t1, t2) : r.zero());
                EXPECT_EQ(sandwich.at(t1, t2), r.mul(a.at(t1, s), a.at(s, t2)));
              }
          }
        }
      }
  }
}

TEST(Incidence, GeneratorExamples) {
  auto p = make_proset(Proset::chain(3));
  const CoeffRing r = CoeffRing::integers();
  EXPECT_EQ(IncMatrix::indicator(p, r, {0, 1, 2}), IncMatrix::identity(p, r));
  EXPECT_TRUE(IncMatrix::scalar_diag(p, r, r.zero()).is_zero());
}

TEST(Incidence, FiniteSpanIsWholeRing) {
  auto p = make_proset(Proset::from_relations({"a", "b", "c"}, {{"a", "b"}, {"b", "a"}, {"a", "c"}}));
  const CoeffRing r = CoeffRing::prime_field(2);
  std::size_t count = 0;
  for_each_matrix(p, r, [&](const IncMatrix& m) {
    IncMatrix sum(p, r);
    for (auto [s1, s2] : p->relation()) sum = sum + IncMatrix::unit(p, r, s1, s2).scaled(m.at(s1, s2));
    EXPECT_EQ(sum, m);
    ++count;
  });
  EXPECT_EQ(count, matrix_count(*p, r));
  EXPECT_EQ(count, 1u << p->relation_size());
}

TEST(Incidence, Ideals) {
  auto f = family_n();
  auto p = make_proset(f->restrict(f->window(4)));
  const CoeffRing r = CoeffRing::mod(8);
  Rng rng(24);
  IncMatrix a = random_matrix(p, r, rng);
  for (std::size_t i = 0; i <= 2; ++i)
    for (std::size_t j = i; j <= 2; ++j) a.set(i, j, r.zero());
  a.set(0, 4, r.one());
  EXPECT_TRUE(ideal_membership(a, {IntervalIdeal{0, 2}}));
  EXPECT_TRUE(ideal_membership(a, {ConvexIdeal{{0, 1, 2}}}));
  a.set(1, 2, r.one());
  EXPECT_FALSE(ideal_membership(a, {IntervalIdeal{0, 2}}));

  const IncMatrix zero(p, r), one = IncMatrix::identity(p, r);
  const std::vector<IdealSpec> specs = {{IntervalIdeal{1, 3}}, {ConvexIdeal{{2, 3}}}, {LocallyConvexIdeal{{{0}, {3, 4}}}},
                                        {CoeffIdeal{r.from_int(2)}}};
  for (auto& s : specs) {
    EXPECT_TRUE(ideal_membership(zero, s));
    EXPECT_FALSE(ideal_membership(one, s));
  }
  EXPECT_TRUE(ideal_membership(one.scaled(r.from_int(4)), {CoeffIdeal{r.from_int(2)}}));
  EXPECT_FALSE(ideal_membership(one.scaled(r.from_int(3)), {CoeffIdeal{r.from_int(2)}}));
  // sum: coefficient ideal (2) plus the convex ideal of {0}
  IncMatrix m = one.scaled(r.from_int(2));
  m.set(0, 0, r.one());
  EXPECT_TRUE(ideal_membership(m, {SumIdeal{{{CoeffIdeal{r.from_int(2)}}, {ConvexIdeal{{1, 2, 3, 4}}}}}}));
  EXPECT_FALSE(ideal_membership(m, {SumIdeal{{{CoeffIdeal{r.from_int(2)}}, {ConvexIdeal{{0, 1}}}}}}));
  EXPECT_EQ(code_of([&] { ideal_membership(zero, {ConvexIdeal{{0, 2}}}); }), ErrorCode::NotConvex);
}

TEST(Incidence, ProjectionIsUnitalHomWithConvexKernel) {
  Rng rng(25);
  const CoeffRing r = CoeffRing::prime_field(5);
  for (int t = 0; t < 10; ++t) {
    auto p = make_proset(random_proset(2 + rng() % 6, rng, t % 2 == 0));
    auto gam = p->gamma_enumerate(p->size());
    const Subset sub = gam[rng() % gam.size()];
    EXPECT_EQ(project(IncMatrix::identity(p, r), sub), IncMatrix::identity(make_proset(p->induced(sub)), r));
    for (int k = 0; k < 50; ++k) {
      auto a = random_matrix(p, r, rng), b = random_matrix(p, r, rng);
      EXPECT_EQ(project(a * b, sub), project(a, sub) * project(b, sub));
      EXPECT_EQ(project(a + b, sub), project(a, sub) + project(b, sub));
      auto sparse = random_matrix(p, r, rng, 0.3);
      EXPECT_EQ(project(sparse, sub).is_zero(), ideal_membership(sparse, {ConvexIdeal{sub}}));
    }
  }
  auto c = make_proset(Proset::chain(3));
  EXPECT_EQ(code_of([&] { project(IncMatrix::identity(c, r), {0, 2}); }), ErrorCode::NotConvex);
}

TEST(Incidence, WindowQuotientIsThreeChain) {
  auto f = family_n();
  auto p = make_proset(f->restrict(f->window(4)));
  const CoeffRing r = CoeffRing::mod(8);
  Rng rng(26);
  auto three = make_proset(Proset::chain(3));
  for (int k = 0; k < 100; ++k) {
    auto a = random_matrix(p, r, rng), b = random_matrix(p, r, rng);
    IncMatrix pa = project(a, {0, 1, 2}), pb = project(b, {0, 1, 2});
    EXPECT_EQ(pa.proset(), three->induced({0, 1, 2}));
    EXPECT_EQ(oracle::dense(project(a * b, {0, 1, 2})), oracle::mul(oracle::dense(pa), oracle::dense(pb), 8));
  }
}

TEST(Incidence, SplitJoinComponents) {
  auto p = make_proset(Proset::disjoint_union({Proset::chain(2), Proset::chain(3)}));
  const CoeffRing r = CoeffRing::integers();
  IncMatrix a(p, r);
  a.set(0, 1, r.from_int(7));
  a.set(2, 4, r.from_int(-3));
  a.set(3, 3, r.from_int(2));
  auto parts = split_components(a);
  ASSERT_EQ(parts.size(), 2u);
  EXPECT_EQ(parts[0].at(0, 1), r.from_int(7));
  EXPECT_EQ(parts[1].at(0, 2), r.from_int(-3));
  EXPECT_EQ(parts[1].at(1, 1), r.from_int(2));
  for (auto& part : split_components(IncMatrix::identity(p, r)))
    EXPECT_EQ(part, IncMatrix::identity(part.proset_ref(), r));
  Rng rng(27);
  for (int t = 0; t < 200; ++t) {
    auto q = make_proset(random_proset(1 + rng() % 7, rng, false, 0.15));
    auto m = random_matrix(q, CoeffRing::prime_field(3), rng);
    auto n = random_matrix(q, CoeffRing::prime_field(3), rng);
    EXPECT_EQ(join_components(q, m.ring(), split_components(m)), m);
    auto sm = split_components(m), sn = split_components(n), smn = split_components(m * n);
    for (std::size_t c = 0; c < sm.size(); ++c) EXPECT_EQ(smn[c], sm[c] * sn[c]);
  }
}

TEST(Incidence, PowerAndScaling) {
  auto p = make_proset(Proset::chain(4));
  const CoeffRing z = CoeffRing::integers();
  IncMatrix n(p, z);
  for (std::size_t i = 0; i + 1 < 4; ++i) n.set(i, i + 1, z.one());
  EXPECT_TRUE(n.pow(4).is_zero());
  EXPECT_FALSE(n.pow(3).is_zero());
  EXPECT_EQ(n.pow(0), IncMatrix::identity(p, z));
  EXPECT_EQ(n.scaled(z.from_int(3)), n + n + n);
}
