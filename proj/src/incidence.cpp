#include "incalg/incidence.hpp"

#include <algorithm>

#include "incalg/error.hpp"

namespace incalg {

IncMatrix::IncMatrix(ProsetRef proset, CoeffRing ring) : proset_(std::move(proset)), ring_(ring) {
  if (!proset_) throw Error(ErrorCode::InvalidArgument, "null proset");
}

IncMatrix IncMatrix::identity(ProsetRef p, CoeffRing r) { return scalar_diag(std::move(p), r, r.one()); }

IncMatrix IncMatrix::scalar_diag(ProsetRef p, CoeffRing r, const RingValue& v) {
  IncMatrix m(std::move(p), r);
  if (!r.is_zero(v))
    for (std::size_t i = 0; i < m.proset().size(); ++i) m.entries_.emplace_hint(m.entries_.end(), Key{i, i}, v);
  return m;
}

IncMatrix IncMatrix::indicator(ProsetRef p, CoeffRing r, const Subset& s) {
  IncMatrix m(std::move(p), r);
  for (auto x : s) {
    if (x >= m.proset().size()) throw Error(ErrorCode::InvalidArgument, "indicator index out of range");
    m.entries_[{x, x}] = r.one();
  }
  return m;
}

IncMatrix IncMatrix::unit(ProsetRef p, CoeffRing r, std::size_t s1, std::size_t s2) {
  IncMatrix m(std::move(p), r);
  if (s1 >= m.proset().size() || s2 >= m.proset().size())
    throw Error(ErrorCode::InvalidArgument, "unit index out of range");
  if (!m.proset().leq(s1, s2))
    throw Error(ErrorCode::NotComparable, m.proset().name(s1) + " is not below " + m.proset().name(s2));
  m.entries_[{s1, s2}] = r.one();
  return m;
}

RingValue IncMatrix::at(std::size_t i, std::size_t j) const {
  auto it = entries_.find({i, j});
  return it == entries_.end() ? ring_.zero() : it->second;
}

void IncMatrix::set(std::size_t i, std::size_t j, const RingValue& v) {
  if (ring_.is_zero(v)) {
    entries_.erase({i, j});
    return;
  }
  if (i >= proset().size() || j >= proset().size()) throw Error(ErrorCode::InvalidArgument, "index out of range");
  if (!proset().leq(i, j))
    throw Error(ErrorCode::NotComparable, proset().name(i) + " is not below " + proset().name(j));
  entries_[{i, j}] = v;
}

bool IncMatrix::compatible(const IncMatrix& other) const {
  return ring_ == other.ring_ && (proset_ == other.proset_ || *proset_ == *other.proset_);
}

void require_compatible(const IncMatrix& a, const IncMatrix& b) {
  if (!a.compatible(b))
    throw Error(ErrorCode::IncompatibleOperands, "operands differ in proset or ring (" + a.ring().describe() +
                                                     " vs " + b.ring().describe() + ")");
}

IncMatrix operator+(const IncMatrix& a, const IncMatrix& b) {
  require_compatible(a, b);
  IncMatrix c = a;
  for (auto& [k, v] : b.entries_) {
    auto it = c.entries_.find(k);
    if (it == c.entries_.end()) {
      c.entries_.emplace(k, v);
    } else {
      a.ring_.add_to(it->second, v);
      if (a.ring_.is_zero(it->second)) c.entries_.erase(it);
    }
  }
  return c;
}

IncMatrix operator-(const IncMatrix& a) {
  IncMatrix c = a;
  for (auto& [k, v] : c.entries_) v = a.ring_.neg(v);
  return c;
}

IncMatrix operator-(const IncMatrix& a, const IncMatrix& b) { return a + (-b); }

// Row by row: each stored a_{i,t} meets the stored row t of B, and a_{i,t}
// b_{t,j} != 0 already forces t into [i, j].
IncMatrix operator*(const IncMatrix& a, const IncMatrix& b) {
  require_compatible(a, b);
  const CoeffRing& r = a.ring_;
  const std::size_t n = a.proset().size();
  IncMatrix c(a.proset_, r);
  std::vector<RingValue> acc(n, r.zero());
  std::vector<char> touched(n, 0);
  std::vector<std::size_t> cols;
  auto it = a.entries_.begin();
  while (it != a.entries_.end()) {
    const std::size_t i = it->first.first;
    for (; it != a.entries_.end() && it->first.first == i; ++it) {
      const std::size_t t = it->first.second;
      for (auto jt = b.entries_.lower_bound({t, 0}); jt != b.entries_.end() && jt->first.first == t; ++jt) {
        const std::size_t j = jt->first.second;
        if (!touched[j]) {
          touched[j] = 1;
          cols.push_back(j);
        }
        r.add_mul(acc[j], it->second, jt->second);
      }
    }
    std::sort(cols.begin(), cols.end());
    for (auto j : cols) {
      if (!r.is_zero(acc[j])) c.entries_.emplace_hint(c.entries_.end(), IncMatrix::Key{i, j}, acc[j]);
      acc[j] = r.zero();
      touched[j] = 0;
    }
    cols.clear();
  }
  return c;
}

IncMatrix IncMatrix::scaled(const RingValue& v) const {
  IncMatrix c(proset_, ring_);
  for (auto& [k, x] : entries_) {
    RingValue y = ring_.mul(x, v);
    if (!ring_.is_zero(y)) c.entries_.emplace_hint(c.entries_.end(), k, std::move(y));
  }
  return c;
}

IncMatrix IncMatrix::pow(std::uint64_t e) const {
  IncMatrix result = identity(proset_, ring_);
  IncMatrix base = *this;
  while (e) {
    if (e & 1) result = result * base;
    e >>= 1;
    if (e) base = base * base;
  }
  return result;
}

bool operator==(const IncMatrix& a, const IncMatrix& b) { return a.compatible(b) && a.entries_ == b.entries_; }

namespace {

struct CoordGroup {
  enum Kind { Zero, Principal, All } kind;
  RingValue gen;
};

CoordGroup group_sum(const CoeffRing& r, const CoordGroup& x, const CoordGroup& y) {
  if (x.kind == CoordGroup::All || y.kind == CoordGroup::All) return {CoordGroup::All, {}};
  if (x.kind == CoordGroup::Zero) return y;
  if (y.kind == CoordGroup::Zero) return x;
  return {CoordGroup::Principal, r.ideal_sum(x.gen, y.gen)};
}

bool contains(const Subset& s, std::size_t x) { return std::binary_search(s.begin(), s.end(), x); }

void validate(const Proset& p, const IdealSpec& spec) {
  if (auto* c = std::get_if<ConvexIdeal>(&spec.spec)) {
    if (!std::is_sorted(c->subset.begin(), c->subset.end()) || !p.is_convex(c->subset))
      throw Error(ErrorCode::NotConvex, "ideal subset is not convex");
  } else if (auto* lc = std::get_if<LocallyConvexIdeal>(&spec.spec)) {
    std::vector<char> used(p.size(), 0);
    for (auto& part : lc->parts) {
      if (!std::is_sorted(part.begin(), part.end()) || !p.is_convex(part))
        throw Error(ErrorCode::NotConvex, "collection member is not convex");
      for (auto x : part) {
        if (used[x]) throw Error(ErrorCode::InvalidArgument, "collection members overlap");
        used[x] = 1;
      }
    }
  } else if (auto* iv = std::get_if<IntervalIdeal>(&spec.spec)) {
    if (iv->s1 >= p.size() || iv->s2 >= p.size()) throw Error(ErrorCode::InvalidArgument, "interval index out of range");
  } else if (auto* sum = std::get_if<SumIdeal>(&spec.spec)) {
    for (auto& part : sum->parts) validate(p, part);
  }
}

CoordGroup group_at(const Proset& p, const CoeffRing& r, const IdealSpec& spec, std::size_t i, std::size_t j) {
  const CoordGroup zero{CoordGroup::Zero, {}}, all{CoordGroup::All, {}};
  return std::visit(
      [&](const auto& s) -> CoordGroup {
        using T = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<T, IntervalIdeal>) {
          auto iv = p.interval(s.s1, s.s2);
          return contains(iv, i) && contains(iv, j) ? zero : all;
        } else if constexpr (std::is_same_v<T, ConvexIdeal>) {
          return contains(s.subset, i) && contains(s.subset, j) ? zero : all;
        } else if constexpr (std::is_same_v<T, LocallyConvexIdeal>) {
          for (auto& part : s.parts)
            if (contains(part, i) && contains(part, j)) return zero;
          return all;
        } else if constexpr (std::is_same_v<T, CoeffIdeal>) {
          return {CoordGroup::Principal, s.generator};
        } else {
          CoordGroup g = zero;
          for (auto& part : s.parts) g = group_sum(r, g, group_at(p, r, part, i, j));
          return g;
        }
      },
      spec.spec);
}

}  // namespace

bool ideal_membership(const IncMatrix& a, const IdealSpec& spec) {
  validate(a.proset(), spec);
  for (auto& [k, v] : a.entries()) {
    CoordGroup g = group_at(a.proset(), a.ring(), spec, k.first, k.second);
    if (g.kind == CoordGroup::Zero) return false;
    if (g.kind == CoordGroup::Principal && !a.ring().in_ideal(v, g.gen)) return false;
  }
  return true;
}

IncMatrix project(const IncMatrix& a, const Subset& convex) {
  if (!std::is_sorted(convex.begin(), convex.end()) || !a.proset().is_convex(convex))
    throw Error(ErrorCode::NotConvex, "projection target is not convex");
  std::vector<std::size_t> pos(a.proset().size(), SIZE_MAX);
  for (std::size_t k = 0; k < convex.size(); ++k) pos[convex[k]] = k;
  IncMatrix out(make_proset(a.proset().induced(convex)), a.ring());
  for (auto& [k, v] : a.entries())
    if (pos[k.first] != SIZE_MAX && pos[k.second] != SIZE_MAX) out.set(pos[k.first], pos[k.second], v);
  return out;
}

std::vector<IncMatrix> split_components(const IncMatrix& a) {
  std::vector<IncMatrix> out;
  const auto& comps = a.proset().components();
  for (auto& c : comps) out.emplace_back(make_proset(a.proset().induced(c)), a.ring());
  std::vector<std::size_t> pos(a.proset().size());
  for (auto& c : comps)
    for (std::size_t k = 0; k < c.size(); ++k) pos[c[k]] = k;
  for (auto& [k, v] : a.entries()) out[a.proset().component_of(k.first)].set(pos[k.first], pos[k.second], v);
  return out;
}

IncMatrix join_components(const ProsetRef& whole, const CoeffRing& ring, const std::vector<IncMatrix>& parts) {
  const auto& comps = whole->components();
  if (parts.size() != comps.size())
    throw Error(ErrorCode::IncompatibleOperands, "component count mismatch");
  IncMatrix out(whole, ring);
  for (std::size_t c = 0; c < comps.size(); ++c) {
    if (parts[c].ring() != ring || parts[c].proset() != whole->induced(comps[c]))
      throw Error(ErrorCode::IncompatibleOperands, "part " + std::to_string(c) + " does not match its component");
    for (auto& [k, v] : parts[c].entries()) out.set(comps[c][k.first], comps[c][k.second], v);
  }
  return out;
}

std::uint64_t matrix_count(const Proset& p, const CoeffRing& r) {
  std::uint64_t n = r.size(), total = 1;
  for (std::size_t k = 0; k < p.relation_size(); ++k) {
    if (total > UINT64_MAX / n) return UINT64_MAX;
    total *= n;
  }
  return total;
}

}  // namespace incalg
