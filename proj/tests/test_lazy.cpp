#include <gtest/gtest.h>

#include <algorithm>

#include "incalg/error.hpp"
#include "incalg/glgroup.hpp"
#include "incalg/lazy.hpp"
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

struct Case {
  FamilyRef family;
  Elem lo, hi;  // every interval among window elements lies in [lo, hi]
};

std::vector<Case> families() { return {{family_n(), 0, 200}, {family_zig(), -200, 200}, {family_nstar_div(), 1, 800}}; }

// Brute-force interval by scanning a range with the order oracle.
ElemSet scan_interval(const Case& c, Elem a, Elem b) {
  ElemSet out;
  for (Elem t = c.lo; t <= c.hi; ++t)
    if (c.family->leq(a, t) && c.family->leq(t, b)) out.push_back(t);
  return out;
}

LazyMatrix::Finitary random_finitary(const Case& c, const CoeffRing& r, const ElemSet& pool, Rng& rng, bool unit_diag) {
  LazyMatrix::Finitary f;
  f.diagonal_default = r.one();
  for (int k = 0; k < 8; ++k) {
    Elem a = pool[rng() % pool.size()], b = pool[rng() % pool.size()];
    if (a != b && c.family->leq(a, b)) f.off_diagonal[{a, b}] = r.random(rng);
  }
  for (int k = 0; k < 2; ++k) f.diagonal_exceptions[pool[rng() % pool.size()]] = unit_diag ? r.random_unit(rng) : r.random(rng);
  std::erase_if(f.off_diagonal, [&](auto& kv) { return r.is_zero(kv.second); });
  return f;
}

Subset positions(const ElemSet& outer, const ElemSet& inner) {
  Subset s;
  for (Elem x : inner) s.push_back(std::lower_bound(outer.begin(), outer.end(), x) - outer.begin());
  return s;
}

int mobius(Elem n) {
  int mu = 1;
  for (Elem p = 2; p * p <= n; ++p)
    if (n % p == 0) {
      n /= p;
      if (n % p == 0) return 0;
      mu = -mu;
    }
  return n > 1 ? -mu : mu;
}

}  // namespace

TEST(Lazy, UpperOnesProjection) {
  const CoeffRing z = CoeffRing::integers();
  auto u = LazyMatrix::upper_ones(family_n(), z);
  EXPECT_EQ(u.at(0, 5), z.one());
  EXPECT_EQ(u.at(5, 0), z.zero());
  auto m = u.project({0, 1, 2, 3});
  for (std::size_t i = 0; i < 4; ++i)
    for (std::size_t j = 0; j < 4; ++j) EXPECT_EQ(m.at(i, j), i <= j ? z.one() : z.zero());
  auto zig = LazyMatrix::upper_ones(family_zig(), z).project({-1, 0, 1});
  EXPECT_EQ(zig.nnz(), 5u);
  EXPECT_EQ(code_of([&] { u.project({0, 2}); }), ErrorCode::NotConvex);
}

TEST(Lazy, UpperOnesInverse) {
  const CoeffRing z = CoeffRing::integers();
  auto n = lazy_invert(LazyMatrix::upper_ones(family_n(), z));
  for (Elem i = 0; i < 12; ++i)
    for (Elem j = i; j < 12; ++j) EXPECT_EQ(n.at(i, j), z.from_int(j == i ? 1 : j == i + 1 ? -1 : 0));
  auto zig = lazy_invert(LazyMatrix::upper_ones(family_zig(), z));
  for (Elem i = -6; i <= 6; ++i)
    for (Elem j = -6; j <= 6; ++j)
      if (family_zig()->leq(i, j)) EXPECT_EQ(zig.at(i, j), z.from_int(i == j ? 1 : -1));
  // zeta of divisibility inverts to the Moebius function
  auto d = lazy_invert(LazyMatrix::upper_ones(family_nstar_div(), z));
  for (Elem b = 1; b <= 120; ++b)
    for (Elem a = 1; a <= b; ++a)
      if (b % a == 0) EXPECT_EQ(d.at(a, b), z.from_int(mobius(b / a))) << a << " " << b;
}

TEST(Lazy, NestedWindowsAreCompatible) {
  Rng rng(41);
  const CoeffRing f5 = CoeffRing::prime_field(5);
  for (auto& c : families()) {
    auto a = LazyMatrix::from_oracle(c.family, f5, [&](Elem s1, Elem s2) {
      return f5.from_int((3 * s1 + 7 * s2 + s1 * s2) % 5);
    });
    std::vector<ElemSet> ws;
    for (std::size_t k = 1; k <= 5; ++k) ws.push_back(c.family->window(k));
    for (std::size_t k = 0; k + 1 < ws.size(); ++k) {
      ASSERT_TRUE(std::includes(ws[k + 1].begin(), ws[k + 1].end(), ws[k].begin(), ws[k].end()));
      EXPECT_EQ(project(a.project(ws[k + 1]), positions(ws[k + 1], ws[k])), a.project(ws[k]));
    }
  }
}

TEST(Lazy, ProductMatchesIntervalSum) {
  Rng rng(42);
  const CoeffRing f7 = CoeffRing::prime_field(7);
  for (auto& c : families()) {
    auto a = LazyMatrix::from_oracle(c.family, f7, [&](Elem s1, Elem s2) { return f7.from_int(s1 * 2 + s2 + 1); });
    auto b = LazyMatrix::upper_ones(c.family, f7);
    auto ab = lazy_mul(a, b);
    const ElemSet w = c.family->window(4);
    for (Elem s1 : w)
      for (Elem s2 : w) {
        if (!c.family->leq(s1, s2)) {
          EXPECT_EQ(ab.at(s1, s2), f7.zero());
          continue;
        }
        RingValue sum = f7.zero();
        for (Elem t : scan_interval(c, s1, s2)) f7.add_mul(sum, a.at(s1, t), b.at(t, s2));
        EXPECT_EQ(ab.at(s1, s2), sum);
      }
  }
}

TEST(Lazy, InverseLimitCompatibility) {
  Rng rng(43);
  for (auto r : {CoeffRing::prime_field(5), CoeffRing::mod(9)}) {
    for (auto& c : families()) {
      const ElemSet pool = c.family->window(3);
      for (int t = 0; t < 20; ++t) {
        auto a = LazyMatrix::finitary(c.family, r, random_finitary(c, r, pool, rng, true));
        auto b = LazyMatrix::finitary(c.family, r, random_finitary(c, r, pool, rng, false));
        auto ab = lazy_mul(a, b), sum = lazy_add(a, b), inv = lazy_invert(a);
        for (std::size_t k = 1; k <= 5; ++k) {
          const ElemSet w = c.family->window(k);
          auto pa = a.project(w), pb = b.project(w);
          EXPECT_EQ(oracle::dense(ab.project(w)), oracle::mul(oracle::dense(pa), oracle::dense(pb), r.modulus()));
          EXPECT_EQ(oracle::dense(sum.project(w)), oracle::add(oracle::dense(pa), oracle::dense(pb), r.modulus()));
          EXPECT_EQ(oracle::mul(oracle::dense(inv.project(w)), oracle::dense(pa), r.modulus()),
                    oracle::identity(w.size()));
        }
      }
    }
  }
}

TEST(Lazy, FinitaryRoundTrip) {
  Rng rng(44);
  const CoeffRing q = CoeffRing::rationals();
  for (auto& c : families()) {
    const ElemSet pool = c.family->window(3);
    for (int t = 0; t < 20; ++t) {
      auto a = LazyMatrix::finitary(c.family, q, random_finitary(c, q, pool, rng, true));
      auto back = lazy_invert(lazy_invert(a));
      const ElemSet w = c.family->window(5);
      EXPECT_EQ(back.project(w), a.project(w));
      EXPECT_EQ(lazy_mul(a, lazy_invert(a)).project(w), IncMatrix::identity(a.project(w).proset_ref(), q));
    }
  }
}

TEST(Lazy, FinitaryInverseExamples) {
  const CoeffRing z = CoeffRing::integers();
  LazyMatrix::Finitary f;
  f.diagonal_default = z.one();
  f.off_diagonal[{0, 3}] = z.from_int(5);
  auto inv = lazy_invert(LazyMatrix::finitary(family_n(), z, f));
  EXPECT_EQ(inv.at(0, 3), z.from_int(-5));
  EXPECT_EQ(inv.at(0, 2), z.zero());
  EXPECT_EQ(inv.at(7, 7), z.one());
  f.diagonal_exceptions[2] = z.from_int(2);
  EXPECT_EQ(code_of([&] { lazy_invert(LazyMatrix::finitary(family_n(), z, f)); }), ErrorCode::NotInvertible);
  LazyMatrix::Finitary bad;
  bad.diagonal_default = z.one();
  bad.off_diagonal[{3, 0}] = z.one();
  EXPECT_EQ(code_of([&] { LazyMatrix::finitary(family_n(), z, bad); }), ErrorCode::NotComparable);
  EXPECT_EQ(code_of([&] { lazy_mul(LazyMatrix::identity(family_n(), z), LazyMatrix::identity(family_zig(), z)); }),
            ErrorCode::IncompatibleOperands);
}

TEST(Lazy, ProductSupportStaysBounded) {
  Rng rng(45);
  const CoeffRing f3 = CoeffRing::prime_field(3);
  for (auto& c : families()) {
    const ElemSet pool = c.family->window(2);
    for (int t = 0; t < 20; ++t) {
      auto a = LazyMatrix::finitary(c.family, f3, random_finitary(c, f3, pool, rng, true));
      auto b = LazyMatrix::finitary(c.family, f3, random_finitary(c, f3, pool, rng, true));
      ElemSet u = a.support();
      for (Elem x : b.support()) u.push_back(x);
      std::sort(u.begin(), u.end());
      u.erase(std::unique(u.begin(), u.end()), u.end());
      const ElemSet hull = u.empty() ? u : c.family->interval_closure(u);
      auto ab = lazy_mul(a, b);
      const ElemSet w = c.family->window(5);
      for (Elem s1 : w)
        for (Elem s2 : w) {
          if (s1 == s2 || !c.family->leq(s1, s2)) continue;
          if (!std::binary_search(hull.begin(), hull.end(), s1) || !std::binary_search(hull.begin(), hull.end(), s2))
            EXPECT_EQ(ab.at(s1, s2), f3.zero());
        }
      // far diagonal is the product of the defaults
      EXPECT_EQ(ab.at(w.back(), w.back()), f3.one());
    }
  }
}

TEST(Lazy, AglMultiplication) {
  const CoeffRing f5 = CoeffRing::prime_field(5);
  LazyMatrix::Finitary bg, bh;
  bg.diagonal_default = f5.one();
  bg.off_diagonal[{1, 0}] = f5.from_int(3);
  bh.diagonal_default = f5.one();
  bh.off_diagonal[{3, 2}] = f5.from_int(2);
  bh.off_diagonal[{2, 3}] = f5.from_int(4);
  bh.diagonal_exceptions[3] = f5.from_int(2);
  auto g = AglElement::make(family_z(), f5, {0, 1}, bg);
  auto h = AglElement::make(family_z(), f5, {2, 3}, bh);
  auto gh = agl_mul(g, h);
  EXPECT_EQ(gh.augmentation(), (ElemSet{0, 1, 2, 3}));
  const ElemSet w{-2, -1, 0, 1, 2, 3, 4, 5};
  auto pg = g.embed({0, 1, 2, 3}).body().project(w), ph = h.embed({0, 1, 2, 3}).body().project(w);
  EXPECT_EQ(oracle::dense(gh.body().project(w)), oracle::mul(oracle::dense(pg), oracle::dense(ph), 5));
  EXPECT_EQ(gh.body().at(1, 0), f5.from_int(3));
  auto one = agl_mul(gh, agl_invert(gh));
  EXPECT_EQ(one.body().project(w), IncMatrix::identity(one.body().project(w).proset_ref(), f5));
  auto id = agl_mul(AglElement::identity(family_z(), f5), g);
  EXPECT_EQ(id.body().project(w), g.body().project(w));
  EXPECT_EQ(code_of([&] { g.embed({0, 2}); }), ErrorCode::InvalidArgument);
}

TEST(Lazy, QzWindow) {
  const CoeffRing f2 = CoeffRing::prime_field(2);
  auto rep = qz_window_check(family_zig(), f2, {-4, -3, -2, -1, 0, 1, 2, 3, 4}, {-1, 0, 1});
  EXPECT_TRUE(rep.surjective);
  EXPECT_EQ(rep.closure_order, rep.target_order);
  EXPECT_EQ(rep.generators_hit, rep.generators);
  std::uint64_t count = 0;
  for_each_matrix(make_proset(family_zig()->restrict({-1, 0, 1})), f2, [&](const IncMatrix& m) {
    bool unit = true;
    for (std::size_t i = 0; i < 3; ++i) unit = unit && m.at(i, i) == f2.one();
    count += unit;
  });
  EXPECT_EQ(rep.target_order, count);
  EXPECT_EQ(code_of([&] { qz_window_check(family_nstar_div(), f2, {1, 2}, {1}); }), ErrorCode::InfiniteNeighborhood);
  EXPECT_EQ(code_of([&] { qz_window_check(family_zig(), f2, {-1, 0, 1}, {-1, 0, 1, 2}); }),
            ErrorCode::InvalidArgument);
}
