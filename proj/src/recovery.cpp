#include "incalg/recovery.hpp"

#include <algorithm>
#include <map>
#include <numeric>

#include "incalg/dense.hpp"
#include "incalg/error.hpp"
#include "incalg/glgroup.hpp"
#include "incalg/random.hpp"

namespace incalg {

namespace {

void require_poset(const Proset& p) {
  if (!p.is_poset())
    throw Error(ErrorCode::PosetRequired, "the idempotent criteria need singleton classes; zero diagonal does not force "
                                          "nilpotence over a proset");
}

void require_boolean(const CoeffRing& r) {
  if (r.boolean_part().size() != 2)
    throw Error(ErrorCode::RingBooleanPartTooLarge, r.describe() + " has idempotents other than 0 and 1");
}

void require_idempotent(const IncMatrix& a) {
  if (a * a != a) throw Error(ErrorCode::NotIdempotent, "matrix is not idempotent");
}

}  // namespace

// Over Z/n the diagonal entries need only be nilpotent, and the power bound
// grows by the largest prime exponent of n.
bool is_topologically_nilpotent(const IncMatrix& a) {
  require_poset(a.proset());
  const CoeffRing& r = a.ring();
  std::uint64_t index = 1;
  std::int64_t radical = 1;
  if (r.kind() == RingKind::ModN) {
    std::int64_t n = r.modulus();
    for (std::int64_t p = 2; p * p <= n; ++p)
      if (n % p == 0) {
        std::uint64_t e = 0;
        while (n % p == 0) n /= p, ++e;
        radical *= p;
        index = std::max(index, e);
      }
    if (n > 1) radical *= n;
  }
  bool diag_nilpotent = true;
  for (auto& [k, v] : a.entries())
    if (k.first == k.second && (r.kind() != RingKind::ModN || v.residue() % radical != 0)) diag_nilpotent = false;
  const bool power_zero = a.pow(std::max<std::size_t>(a.proset().size(), 1) * index).is_zero();
  if (diag_nilpotent != power_zero)
    throw Error(ErrorCode::InvalidArgument, "diagonal and power criteria disagree");
  return diag_nilpotent;
}

Subset b_of(const IncMatrix& a) {
  require_poset(a.proset());
  require_boolean(a.ring());
  require_idempotent(a);
  Subset s;
  for (std::size_t i = 0; i < a.proset().size(); ++i)
    if (a.ring().is_one(a.at(i, i))) s.push_back(i);
  return s;
}

IncMatrix erase(const IncMatrix& a, const Subset& s) {
  const Subset b = b_of(a);
  IncMatrix out = a;
  for (auto x : s) {
    if (!std::binary_search(b.begin(), b.end(), x))
      throw Error(ErrorCode::NotInDiagonalSupport, a.proset().name(x) + " is not in b(A)");
    out = out - out * IncMatrix::indicator(a.proset_ref(), a.ring(), {x}) * out;
  }
  return out;
}

bool class_equiv(const IncMatrix& a, const IncMatrix& b) {
  require_compatible(a, b);
  const bool by_support = b_of(a) == b_of(b);
  const bool by_nilpotence = is_topologically_nilpotent(a - b);
  if (by_support != by_nilpotence)
    throw Error(ErrorCode::InvalidArgument, "support and nilpotence criteria disagree");
  return by_support;
}

bool class_leq(const IncMatrix& a, const IncMatrix& b) {
  require_compatible(a, b);
  const Subset x = b_of(a), y = b_of(b);
  return std::includes(y.begin(), y.end(), x.begin(), x.end());
}

std::vector<IncMatrix> all_idempotents(const ProsetRef& p, const CoeffRing& r) {
  std::vector<IncMatrix> out;
  for_each_matrix(p, r, [&](const IncMatrix& m) {
    if (m * m == m) out.push_back(m);
  });
  return out;
}

// ---- black-box rings ----

RingAccess::Elt RingAccess::add(const Elt& x, const Elt& y) const {
  const std::int64_t m = coefficients().modulus();
  Elt z(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) z[i] = (x[i] + y[i]) % m;
  return z;
}

RingAccess::Elt RingAccess::neg(const Elt& x) const {
  const std::int64_t m = coefficients().modulus();
  Elt z(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) z[i] = x[i] ? m - x[i] : 0;
  return z;
}

bool RingAccess::is_zero(const Elt& x) const {
  return std::all_of(x.begin(), x.end(), [](std::int64_t v) { return v == 0; });
}

RingAccess::Elt RingAccess::random(Rng& rng) const {
  std::uniform_int_distribution<std::int64_t> dist(0, coefficients().modulus() - 1);
  Elt z(rank());
  for (auto& v : z) v = dist(rng);
  return z;
}

std::uint64_t RingAccess::size() const {
  std::uint64_t total = 1, m = static_cast<std::uint64_t>(coefficients().modulus());
  for (std::size_t k = 0; k < rank(); ++k) {
    if (total > UINT64_MAX / m) return UINT64_MAX;
    total *= m;
  }
  return total;
}

void RingAccess::for_each_element(const std::function<void(const Elt&)>& f) const {
  const std::int64_t m = coefficients().modulus();
  Elt x(rank(), 0);
  for (;;) {
    f(x);
    std::size_t k = 0;
    while (k < x.size() && ++x[k] == m) x[k++] = 0;
    if (k == x.size()) return;
  }
}

StructureConstantsRing::StructureConstantsRing(StructureConstants sc) : sc_(std::move(sc)) {
  if (!sc_.ring.is_finite()) throw Error(ErrorCode::InvalidArgument, "structure constants need a finite ring");
  if (sc_.one.size() != sc_.rank || sc_.table.size() != sc_.rank * sc_.rank)
    throw Error(ErrorCode::InvalidArgument, "structure constant table has the wrong shape");
}

RingAccess::Elt StructureConstantsRing::mul(const Elt& x, const Elt& y) const {
  const std::int64_t m = sc_.ring.modulus();
  const std::size_t d = sc_.rank;
  Elt z(d, 0);
  for (std::size_t i = 0; i < d; ++i) {
    if (!x[i]) continue;
    for (std::size_t j = 0; j < d; ++j) {
      if (!y[j]) continue;
      const std::int64_t c = static_cast<std::int64_t>(static_cast<__int128>(x[i]) * y[j] % m);
      for (auto [k, t] : sc_.table[i * d + j])
        z[k] = static_cast<std::int64_t>((z[k] + static_cast<__int128>(c) * t) % m);
    }
  }
  return z;
}

StructureConstants incidence_structure_constants(const ProsetRef& p, const CoeffRing& r) {
  if (!r.is_finite()) throw Error(ErrorCode::InvalidArgument, "structure constants need a finite ring");
  const auto rel = p->relation();
  std::map<std::pair<std::size_t, std::size_t>, std::size_t> pos;
  for (std::size_t k = 0; k < rel.size(); ++k) pos[rel[k]] = k;
  StructureConstants sc;
  sc.ring = r;
  sc.rank = rel.size();
  sc.one.assign(sc.rank, 0);
  for (std::size_t i = 0; i < p->size(); ++i) sc.one[pos.at({i, i})] = 1;
  sc.table.resize(sc.rank * sc.rank);
  for (std::size_t a = 0; a < rel.size(); ++a)
    for (std::size_t b = 0; b < rel.size(); ++b)
      if (rel[a].second == rel[b].first) sc.table[a * sc.rank + b].emplace_back(pos.at({rel[a].first, rel[b].second}), 1);
  return sc;
}

StructureConstants scramble(const ProsetRef& p, const CoeffRing& r, std::uint64_t seed) {
  if (!r.is_finite()) throw Error(ErrorCode::InvalidArgument, "scramble needs a finite ring");
  Rng rng(seed);
  const auto rel = p->relation();
  const std::size_t d = rel.size();

  const IncMatrix u = random_invertible(p, r, rng);
  const IncMatrix uinv = invert(u);
  std::vector<std::size_t> perm(d);
  std::iota(perm.begin(), perm.end(), 0);
  std::shuffle(perm.begin(), perm.end(), rng);
  Dense g(d, r.zero());
  do {
    for (auto& x : g.a) x = r.random(rng);
  } while (!r.is_unit(det(r, g)));
  const Dense ginv = dense_inverse(r, g);

  std::vector<IncMatrix> basis;
  for (std::size_t k = 0; k < d; ++k) {
    IncMatrix gk(p, r);
    for (std::size_t l = 0; l < d; ++l) gk.set(rel[perm[l]].first, rel[perm[l]].second, g.at(l, k));
    basis.push_back(u * gk * uinv);
  }
  auto coords = [&](const IncMatrix& x) {
    const IncMatrix y = uinv * x * u;
    std::vector<RingValue> v(d);
    for (std::size_t l = 0; l < d; ++l) v[l] = y.at(rel[perm[l]].first, rel[perm[l]].second);
    std::vector<std::int64_t> out(d);
    for (std::size_t k = 0; k < d; ++k) {
      RingValue acc = r.zero();
      for (std::size_t l = 0; l < d; ++l) r.add_mul(acc, ginv.at(k, l), v[l]);
      out[k] = acc.residue();
    }
    return out;
  };

  StructureConstants sc;
  sc.ring = r;
  sc.rank = d;
  sc.one = coords(IncMatrix::identity(p, r));
  sc.table.resize(d * d);
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = 0; j < d; ++j) {
      auto c = coords(basis[i] * basis[j]);
      for (std::size_t k = 0; k < d; ++k)
        if (c[k]) sc.table[i * d + j].emplace_back(k, c[k]);
    }
  return sc;
}

// ---- recovery ----

namespace {

using Elt = RingAccess::Elt;

struct Ops {
  const RingAccess& ring;

  Elt pow(Elt x, std::uint64_t e) const {
    Elt acc = ring.one();
    while (e) {
      if (e & 1) acc = ring.mul(acc, x);
      e >>= 1;
      if (e) x = ring.mul(x, x);
    }
    return acc;
  }

  bool nilpotent(const Elt& x) const {
    std::uint64_t bits = 0;
    for (std::uint64_t m = 1; m < static_cast<std::uint64_t>(ring.coefficients().modulus()); m <<= 1) ++bits;
    const std::uint64_t bound = ring.rank() * bits + 1;
    Elt y = x;
    for (std::uint64_t e = 1; e < bound; e <<= 1) y = ring.mul(y, y);
    return ring.is_zero(y);
  }

  bool idempotent(const Elt& x) const { return ring.mul(x, x) == x; }
  bool below(const Elt& e, const Elt& f) const { return ring.mul(e, f) == e && ring.mul(f, e) == e; }

  // The unique idempotent among the powers of x.
  Elt idempotent_power(const Elt& x) const {
    std::map<Elt, std::uint64_t> seen;
    Elt p = x;
    std::uint64_t k = 1;
    while (!seen.count(p)) {
      seen.emplace(p, k++);
      p = ring.mul(p, x);
    }
    const std::uint64_t start = seen.at(p), period = k - start;
    return pow(x, (start + period - 1) / period * period);
  }

  // x^{-1} if x is a unit.
  std::optional<Elt> unit_inverse(const Elt& x) const {
    const Elt one = ring.one();
    std::map<Elt, bool> seen;
    Elt prev = one, p = x;
    while (!seen.count(p)) {
      if (p == one) return prev;
      seen.emplace(p, true);
      prev = p;
      p = ring.mul(p, x);
    }
    return std::nullopt;
  }
};

Proset assemble(std::size_t nodes, const std::vector<std::pair<std::size_t, std::size_t>>& edges) {
  std::vector<std::string> names;
  for (std::size_t i = 0; i < nodes; ++i) names.push_back("x" + std::to_string(i));
  return Proset::from_pairs(std::move(names), edges);
}

RecoveryResult recover_exhaustive(const RingAccess& ring, std::size_t budget) {
  Ops ops{ring};
  if (ring.size() > budget)
    throw Error(ErrorCode::SearchBudgetExceeded, "ring has more elements than the enumeration budget");
  std::vector<Elt> idem;
  ring.for_each_element([&](const Elt& x) {
    if (ops.idempotent(x)) idem.push_back(x);
  });

  std::vector<std::size_t> parent(idem.size());
  std::iota(parent.begin(), parent.end(), 0);
  std::function<std::size_t(std::size_t)> find = [&](std::size_t x) {
    return parent[x] == x ? x : parent[x] = find(parent[x]);
  };
  for (std::size_t i = 0; i < idem.size(); ++i)
    for (std::size_t j = i + 1; j < idem.size(); ++j)
      if (find(i) != find(j) && ops.nilpotent(ring.sub(idem[i], idem[j]))) parent[find(i)] = find(j);

  std::map<std::size_t, std::vector<std::size_t>> by_root;
  for (std::size_t i = 0; i < idem.size(); ++i) by_root[find(i)].push_back(i);
  std::vector<std::vector<std::size_t>> classes;
  std::size_t zero_class = SIZE_MAX;
  for (auto& [root, members] : by_root) {
    for (auto m : members)
      if (ring.is_zero(idem[m])) zero_class = classes.size();
    classes.push_back(members);
  }

  auto class_below = [&](std::size_t c1, std::size_t c2) {
    for (auto a : classes[c1])
      for (auto b : classes[c2])
        if (ops.below(idem[a], idem[b])) return true;
    return false;
  };
  std::vector<std::size_t> minimal;
  for (std::size_t c = 0; c < classes.size(); ++c) {
    if (c == zero_class) continue;
    bool is_min = true;
    for (std::size_t d = 0; d < classes.size() && is_min; ++d)
      if (d != c && d != zero_class && class_below(d, c)) is_min = false;
    if (is_min) minimal.push_back(c);
  }

  std::vector<std::pair<std::size_t, std::size_t>> edges;
  for (std::size_t i = 0; i < minimal.size(); ++i)
    for (std::size_t j = 0; j < minimal.size(); ++j) {
      bool some = false, every = true;
      for (auto a : classes[minimal[i]])
        for (auto b : classes[minimal[j]]) {
          if (ring.is_zero(ring.mul(idem[a], idem[b]))) every = false;
          else some = true;
        }
      if (i != j && some) edges.emplace_back(i, j);
      if ((i == j) != every)
        throw Error(ErrorCode::PosetRequired, "minimal classes violate the product law of a poset incidence ring");
    }

  RecoveryResult res{assemble(minimal.size(), edges), idem.size(), classes.size(), 0};
  if (!res.poset.is_poset() || res.poset.relation_size() != ring.rank())
    throw Error(ErrorCode::PosetRequired, "ring is not the incidence ring of a finite poset");
  return res;
}

RecoveryResult recover_witness(const RingAccess& ring, std::size_t budget, std::uint64_t seed) {
  Ops ops{ring};
  Rng rng(seed);
  std::size_t samples = 0;
  auto draw = [&] {
    if (++samples > budget) throw Error(ErrorCode::SearchBudgetExceeded, "witness sampling exceeded its budget");
    return ring.random(rng);
  };
  constexpr std::size_t kTrials = 48;

  // Split 1 into orthogonal primitive idempotents by repeatedly shrinking
  // inside the corner e R e.
  std::vector<Elt> prim;
  Elt rest = ring.one();
  while (!ring.is_zero(rest)) {
    Elt e = rest;
    for (std::size_t fails = 0; fails < kTrials;) {
      const Elt y = ring.mul(ring.mul(e, draw()), e);
      const Elt f = ops.idempotent_power(y);
      if (ring.is_zero(f) || f == e) {
        ++fails;
        continue;
      }
      e = f;
      fails = 0;
    }
    prim.push_back(e);
    rest = ring.sub(rest, e);
    if (prim.size() > ring.rank()) throw Error(ErrorCode::PosetRequired, "more orthogonal idempotents than the rank");
  }

  auto random_unit = [&]() -> std::pair<Elt, Elt> {
    for (;;) {
      Elt x = draw();
      if (auto inv = ops.unit_inverse(x)) return {x, *inv};
    }
  };
  auto conjugate = [&](const Elt& e) {
    auto [w, winv] = random_unit();
    return ring.mul(ring.mul(w, e), winv);
  };

  std::vector<std::pair<std::size_t, std::size_t>> edges;
  for (std::size_t i = 0; i < prim.size(); ++i)
    for (std::size_t j = 0; j < prim.size(); ++j) {
      if (i == j) continue;
      for (std::size_t t = 0; t < kTrials; ++t)
        if (!ring.is_zero(ring.mul(conjugate(prim[i]), conjugate(prim[j])))) {
          edges.emplace_back(i, j);
          break;
        }
    }

  RecoveryResult res{assemble(prim.size(), edges), prim.size(), prim.size(), samples};
  if (!res.poset.is_poset()) throw Error(ErrorCode::PosetRequired, "recovered relation is not antisymmetric");
  if (res.poset.relation_size() != ring.rank())
    throw Error(ErrorCode::SearchBudgetExceeded, "recovered relation does not account for the whole rank");
  return res;
}

}  // namespace

RecoveryResult recover_poset(const RingAccess& ring, RecoveryMode mode, std::size_t budget, std::uint64_t seed) {
  require_boolean(ring.coefficients());
  return mode == RecoveryMode::Exhaustive ? recover_exhaustive(ring, budget) : recover_witness(ring, budget, seed);
}

}  // namespace incalg
