#include "incalg/glgroup.hpp"

#include <algorithm>
#include <set>

#include "incalg/dense.hpp"
#include "incalg/error.hpp"
#include "incalg/random.hpp"

namespace incalg {

namespace {

Dense class_block(const IncMatrix& a, const Subset& cls) {
  Dense d(cls.size(), a.ring().zero());
  for (std::size_t i = 0; i < cls.size(); ++i)
    for (std::size_t j = 0; j < cls.size(); ++j) d.at(i, j) = a.at(cls[i], cls[j]);
  return d;
}

}  // namespace

bool is_invertible(const IncMatrix& a) {
  for (const auto& cls : a.proset().classes())
    if (!a.ring().is_unit(det(a.ring(), class_block(a, cls)))) return false;
  return true;
}

// Block back-substitution along a linear extension of the class order:
// B[c1,c2] = -D1^{-1} sum_{c1 < c <= c2} A[c1,c] B[c,c2].
IncMatrix invert(const IncMatrix& a) {
  const Proset& p = a.proset();
  const CoeffRing& r = a.ring();
  const std::size_t n = p.size();
  const auto& classes = p.classes();
  const auto order = p.class_linear_extension();

  std::vector<Dense> dinv(classes.size());
  for (std::size_t c = 0; c < classes.size(); ++c) {
    try {
      dinv[c] = dense_inverse(r, class_block(a, classes[c]));
    } catch (const Error&) {
      throw Error(ErrorCode::NotInvertible, "diagonal block of class {" + p.name(classes[c][0]) + ", ...} is singular");
    }
  }

  std::vector<std::vector<std::pair<std::size_t, const RingValue*>>> rows(n);
  for (auto& [k, v] : a.entries()) rows[k.first].emplace_back(k.second, &v);

  std::vector<RingValue> b(n * n, r.zero());
  for (std::size_t q = 0; q < order.size(); ++q) {
    const std::size_t c2 = order[q];
    const Subset& cls2 = classes[c2];
    for (std::size_t i = 0; i < cls2.size(); ++i)
      for (std::size_t j = 0; j < cls2.size(); ++j) b[cls2[i] * n + cls2[j]] = dinv[c2].at(i, j);
    for (std::size_t pi = q; pi-- > 0;) {
      const std::size_t c1 = order[pi];
      if (!p.class_leq(c1, c2)) continue;
      const Subset& cls1 = classes[c1];
      const std::size_t m1 = cls1.size(), m2 = cls2.size();
      std::vector<RingValue> s(m1 * m2, r.zero());
      for (std::size_t i = 0; i < m1; ++i)
        for (auto [k, v] : rows[cls1[i]]) {
          if (p.class_of(k) == c1) continue;
          for (std::size_t j = 0; j < m2; ++j) r.add_mul(s[i * m2 + j], *v, b[k * n + cls2[j]]);
        }
      for (std::size_t i = 0; i < m1; ++i)
        for (std::size_t j = 0; j < m2; ++j) {
          RingValue acc = r.zero();
          for (std::size_t t = 0; t < m1; ++t) r.add_mul(acc, dinv[c1].at(i, t), s[t * m2 + j]);
          b[cls1[i] * n + cls2[j]] = r.neg(acc);
        }
    }
  }

  IncMatrix out(a.proset_ref(), r);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      if (!r.is_zero(b[i * n + j])) out.set(i, j, b[i * n + j]);
  return out;
}

GroupElement GroupElement::certify(IncMatrix m) {
  if (!is_invertible(m)) throw Error(ErrorCode::NotInvertible, "matrix is not a unit");
  return GroupElement(std::move(m), true);
}

GroupElement GroupElement::identity(ProsetRef p, CoeffRing r) {
  return GroupElement(IncMatrix::identity(std::move(p), r), true);
}

GroupElement GroupElement::inverse() const { return GroupElement(invert(m_), true); }

GroupElement operator*(const GroupElement& a, const GroupElement& b) {
  return GroupElement(a.m_ * b.m_, a.certified_ && b.certified_);
}

bool normal_subgroup_membership(const GroupElement& a, const IdealSpec& spec) {
  if (std::holds_alternative<CoeffIdeal>(spec.spec) || std::holds_alternative<SumIdeal>(spec.spec))
    throw Error(ErrorCode::InvalidArgument, "normal subgroups are indexed by interval, convex or locally convex specs");
  const IncMatrix& m = a.matrix();
  return ideal_membership(m - IncMatrix::identity(m.proset_ref(), m.ring()), spec);
}

GroupElement quotient_project(const GroupElement& a, const Subset& convex) {
  return GroupElement::certify(project(a.matrix(), convex));
}

namespace {

std::vector<RingValue> unit_generators(const CoeffRing& r) {
  switch (r.kind()) {
    case RingKind::Integer:
      return {r.from_int(-1)};
    case RingKind::Rational:
      return {r.from_int(2)};
    default: {
      std::vector<RingValue> out;
      for (auto& u : r.units())
        if (!r.is_one(u)) out.push_back(u);
      return out;
    }
  }
}

}  // namespace

std::vector<IncMatrix> centrality_generators(const ProsetRef& p, const CoeffRing& r) {
  std::vector<IncMatrix> gens;
  const auto units = unit_generators(r);
  for (std::size_t s = 0; s < p->size(); ++s)
    for (auto& u : units) {
      IncMatrix g = IncMatrix::identity(p, r);
      g.set(s, s, u);
      gens.push_back(std::move(g));
    }
  for (auto [i, j] : p->relation())
    if (i != j) gens.push_back(IncMatrix::identity(p, r) + IncMatrix::unit(p, r, i, j));
  return gens;
}

CentralityReport is_central(const IncMatrix& a) {
  const Proset& p = a.proset();
  const CoeffRing& r = a.ring();
  CentralityReport rep;
  rep.hypothesis_holds = p.is_irreducible() && r.has_unit_pair();

  rep.scalar = a.nnz() == p.size();
  if (p.size() > 0) {
    const RingValue d = a.at(0, 0);
    rep.scalar = rep.scalar && r.is_unit(d);
    for (auto& [k, v] : a.entries())
      if (k.first != k.second || v != d) rep.scalar = false;
  }

  if (is_invertible(a)) {
    rep.central = true;
    for (auto& g : centrality_generators(a.proset_ref(), r))
      if (a * g != g * a) {
        rep.central = false;
        rep.witness = g;
        break;
      }
  }
  rep.hypothesis_failure = rep.scalar != rep.central;
  return rep;
}

// Dense residue kernel: A commutes with I + X iff AX = XA.
std::vector<IncMatrix> exhaustive_centrality_set(const ProsetRef& p, const CoeffRing& r) {
  if (!r.is_finite()) throw Error(ErrorCode::InvalidArgument, "exhaustive centrality needs a finite ring");
  const std::size_t n = p->size();
  const std::int64_t m = r.modulus();
  const auto rel = p->relation();

  struct Sparse {
    std::vector<std::tuple<std::size_t, std::size_t, std::int64_t>> x;
  };
  std::vector<Sparse> gens;
  for (auto& g : centrality_generators(p, r)) {
    Sparse s;
    for (auto& [k, v] : g.entries()) {
      std::int64_t val = v.residue() - (k.first == k.second ? 1 : 0);
      val = ((val % m) + m) % m;
      if (val) s.x.emplace_back(k.first, k.second, val);
    }
    gens.push_back(std::move(s));
  }

  std::vector<std::int64_t> a(n * n, 0), lhs(n * n), rhs(n * n);
  std::vector<std::size_t> digits(rel.size(), 0);
  std::vector<IncMatrix> out;
  auto commutes = [&](const Sparse& g) {
    std::fill(lhs.begin(), lhs.end(), 0);
    std::fill(rhs.begin(), rhs.end(), 0);
    for (auto [k, j, x] : g.x)
      for (std::size_t i = 0; i < n; ++i) {
        lhs[i * n + j] = (lhs[i * n + j] + static_cast<std::int64_t>(static_cast<__int128>(a[i * n + k]) * x % m)) % m;
        rhs[k * n + i] = (rhs[k * n + i] + static_cast<std::int64_t>(static_cast<__int128>(x) * a[j * n + i] % m)) % m;
      }
    return lhs == rhs;
  };
  for (;;) {
    for (std::size_t t = 0; t < rel.size(); ++t)
      a[rel[t].first * n + rel[t].second] = static_cast<std::int64_t>(digits[t]);
    bool ok = true;
    for (auto& g : gens)
      if (!commutes(g)) {
        ok = false;
        break;
      }
    if (ok) {
      IncMatrix cand(p, r);
      for (auto [i, j] : rel)
        if (a[i * n + j]) cand.set(i, j, RingValue(a[i * n + j]));
      if (is_invertible(cand)) out.push_back(std::move(cand));
    }
    std::size_t t = 0;
    while (t < digits.size() && ++digits[t] == static_cast<std::size_t>(m)) digits[t++] = 0;
    if (t == digits.size()) break;
  }
  return out;
}

GroupElement commutator(const GroupElement& a, const GroupElement& b) {
  return a * b * a.inverse() * b.inverse();
}

GroupElement random_iterated_commutator(const ProsetRef& p, const CoeffRing& r, std::size_t depth, Rng& rng) {
  if (depth == 0) return GroupElement::certify(random_invertible(p, r, rng));
  GroupElement x = random_iterated_commutator(p, r, depth - 1, rng);
  GroupElement y = random_iterated_commutator(p, r, depth - 1, rng);
  return commutator(x, y);
}

CommutatorReport iterated_commutator_sample(const ProsetRef& p, const CoeffRing& r, std::size_t depth,
                                            std::size_t trials, Rng& rng) {
  CommutatorReport rep;
  rep.depth = depth;
  rep.bounded = p->is_n_bounded(depth);
  std::vector<std::pair<std::size_t, std::size_t>> small;
  for (auto [i, j] : p->relation())
    if (p->interval(i, j).size() <= depth) small.emplace_back(i, j);
  const IncMatrix one = IncMatrix::identity(p, r);
  for (std::size_t t = 0; t < trials; ++t) {
    GroupElement c = random_iterated_commutator(p, r, depth, rng);
    ++rep.samples;
    for (auto [i, j] : small)
      if (c.matrix().at(i, j) != one.at(i, j)) {
        rep.pattern_holds = false;
        if (!rep.violation) rep.violation = std::make_pair(i, j);
      }
    if (c.matrix() != one) rep.identity_holds = false;
  }
  return rep;
}

namespace {

using Flat = std::vector<std::int64_t>;

Flat flat_mul(const Flat& x, const Flat& y, std::size_t n, std::int64_t q) {
  Flat z(n * n, 0);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t k = 0; k < n; ++k)
      if (x[i * n + k])
        for (std::size_t j = 0; j < n; ++j) z[i * n + j] = (z[i * n + j] + x[i * n + k] * y[k * n + j]) % q;
  return z;
}

Flat to_flat(const IncMatrix& m) {
  const std::size_t n = m.proset().size();
  Flat f(n * n, 0);
  for (auto& [k, v] : m.entries()) f[k.first * n + k.second] = v.residue();
  return f;
}

std::uint64_t gl_order_field(std::size_t n, std::uint64_t q) {
  std::uint64_t order = 1, qn = 1;
  for (std::size_t i = 0; i < n; ++i) qn *= q;
  std::uint64_t qi = 1;
  for (std::size_t i = 0; i < n; ++i) {
    order *= qn - qi;
    qi *= q;
  }
  return order;
}

}  // namespace

DicksonReport dickson_normal_closure(std::size_t n, std::int64_t q, std::uint64_t seed, std::size_t budget) {
  if (n < 2) throw Error(ErrorCode::HypothesisViolation, "need n >= 2");
  if (!is_prime(static_cast<std::uint64_t>(q))) throw Error(ErrorCode::InvalidArgument, "q must be prime");
  if (n == 2 && q <= 3) throw Error(ErrorCode::HypothesisViolation, "n = 2 requires q > 3");

  const CoeffRing f = CoeffRing::prime_field(q);
  const ProsetRef full = make_proset(Proset::full(n));
  DicksonReport rep;
  rep.n = n;
  rep.q = q;
  rep.seed = seed;
  rep.gl_order = gl_order_field(n, static_cast<std::uint64_t>(q));
  rep.sl_order = rep.gl_order / static_cast<std::uint64_t>(q - 1);

  Rng rng(seed);
  IncMatrix g = random_invertible(full, f, rng);
  while (is_central(g).scalar) g = random_invertible(full, f, rng);
  rep.seed_element = g.entries();

  std::vector<std::pair<Flat, Flat>> gens;  // (x, x^{-1})
  for (auto& x : centrality_generators(full, f)) gens.emplace_back(to_flat(x), to_flat(invert(x)));

  std::set<Flat> cls{to_flat(g)};
  std::vector<Flat> frontier{to_flat(g)};
  while (!frontier.empty()) {
    std::vector<Flat> next;
    for (auto& h : frontier)
      for (auto& [x, xi] : gens) {
        Flat c = flat_mul(flat_mul(x, h, n, q), xi, n, q);
        if (cls.insert(c).second) next.push_back(std::move(c));
        if (cls.size() > budget) throw Error(ErrorCode::SearchBudgetExceeded, "conjugacy class exceeds budget");
      }
    frontier = std::move(next);
  }

  Flat id = to_flat(IncMatrix::identity(full, f));
  std::set<Flat> group{id};
  frontier = {id};
  const std::vector<Flat> cls_list(cls.begin(), cls.end());
  while (!frontier.empty()) {
    std::vector<Flat> next;
    for (auto& h : frontier)
      for (auto& c : cls_list) {
        Flat y = flat_mul(h, c, n, q);
        if (group.insert(y).second) next.push_back(std::move(y));
        if (group.size() > budget) throw Error(ErrorCode::SearchBudgetExceeded, "normal closure exceeds budget");
      }
    frontier = std::move(next);
  }

  rep.closure_size = group.size();
  rep.contains_sl_generators = true;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      if (i != j) {
        Flat t = id;
        t[i * n + j] = 1;
        if (!group.count(t)) rep.contains_sl_generators = false;
      }
  rep.divisible_by_sl = rep.closure_size % rep.sl_order == 0;
  rep.equals_gl = rep.closure_size == rep.gl_order;
  return rep;
}

GroupElement transpose_op_iso(const GroupElement& a) {
  IncMatrix inv = invert(a.matrix());
  IncMatrix out(make_proset(a.matrix().proset().opposite()), a.matrix().ring());
  for (auto& [k, v] : inv.entries()) out.set(k.second, k.first, v);
  return GroupElement::certify(std::move(out));
}

mpz_class gl_order(const Proset& p, const CoeffRing& r) {
  if (!r.is_finite()) throw Error(ErrorCode::InvalidArgument, "group order needs a finite ring");
  std::vector<std::pair<std::uint64_t, unsigned>> factors;
  std::uint64_t rest = static_cast<std::uint64_t>(r.modulus());
  for (std::uint64_t d = 2; d * d <= rest; ++d)
    if (rest % d == 0) {
      unsigned e = 0;
      while (rest % d == 0) {
        rest /= d;
        ++e;
      }
      factors.emplace_back(d, e);
    }
  if (rest > 1) factors.emplace_back(rest, 1);

  mpz_class order = 1;
  for (const auto& cls : p.classes()) {
    const unsigned long k = cls.size();
    for (auto [prime, e] : factors) {
      mpz_class pz = static_cast<unsigned long>(prime), pk, pi = 1, t;
      mpz_pow_ui(pk.get_mpz_t(), pz.get_mpz_t(), k);
      for (unsigned long i = 0; i < k; ++i) {
        order *= pk - pi;
        pi *= pz;
      }
      mpz_pow_ui(t.get_mpz_t(), pz.get_mpz_t(), (e - 1) * k * k);
      order *= t;
    }
  }
  std::size_t strict = 0;
  for (auto [i, j] : p.relation())
    if (!p.leq(j, i)) ++strict;
  mpz_class sz = static_cast<unsigned long>(r.modulus()), t;
  mpz_pow_ui(t.get_mpz_t(), sz.get_mpz_t(), strict);
  return order * t;
}

}  // namespace incalg
