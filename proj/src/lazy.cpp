#include "incalg/lazy.hpp"

#include <algorithm>
#include <mutex>
#include <set>

#include "incalg/error.hpp"
#include "incalg/glgroup.hpp"

namespace incalg {

bool same_family(const ProsetFamily& a, const ProsetFamily& b) {
  if (&a == &b) return true;
  const std::string d = a.describe();
  return d == b.describe() && d.find("finite(") == std::string::npos && d.find("custom") == std::string::npos;
}

LazyMatrix LazyMatrix::from_oracle(FamilyRef family, CoeffRing ring, Oracle oracle) {
  auto impl = std::make_shared<Impl>(std::move(family), ring);
  impl->oracle = std::move(oracle);
  return LazyMatrix(std::move(impl));
}

LazyMatrix LazyMatrix::finitary(FamilyRef family, CoeffRing ring, Finitary f) {
  Finitary g;
  g.diagonal_default = f.diagonal_default;
  for (auto& [s, v] : f.diagonal_exceptions) {
    if (!family->contains(s)) throw Error(ErrorCode::InvalidArgument, std::to_string(s) + " is not in " + family->describe());
    if (v != f.diagonal_default) g.diagonal_exceptions[s] = v;
  }
  for (auto& [k, v] : f.off_diagonal) {
    if (ring.is_zero(v)) continue;
    if (k.first == k.second) {
      auto it = g.diagonal_exceptions.find(k.first);
      RingValue base = it == g.diagonal_exceptions.end() ? g.diagonal_default : it->second;
      RingValue sum = ring.add(base, v);
      if (sum == g.diagonal_default) g.diagonal_exceptions.erase(k.first);
      else g.diagonal_exceptions[k.first] = sum;
      continue;
    }
    if (!family->contains(k.first) || !family->contains(k.second) || !family->leq(k.first, k.second))
      throw Error(ErrorCode::NotComparable,
                  std::to_string(k.first) + " is not below " + std::to_string(k.second) + " in " + family->describe());
    g.off_diagonal[k] = v;
  }
  auto impl = std::make_shared<Impl>(std::move(family), ring);
  impl->fin = std::move(g);
  return LazyMatrix(std::move(impl));
}

LazyMatrix LazyMatrix::scalar(FamilyRef family, CoeffRing ring, const RingValue& v) {
  Finitary f;
  f.diagonal_default = v;
  return finitary(std::move(family), ring, std::move(f));
}

LazyMatrix LazyMatrix::upper_ones(FamilyRef family, CoeffRing ring) {
  return from_oracle(std::move(family), ring, [ring](Elem, Elem) { return ring.one(); });
}

RingValue LazyMatrix::at(Elem s1, Elem s2) const {
  const Impl& m = *impl_;
  if (!m.family->contains(s1) || !m.family->contains(s2) || !m.family->leq(s1, s2)) return m.ring.zero();
  if (m.fin) {
    if (s1 == s2) {
      auto it = m.fin->diagonal_exceptions.find(s1);
      return it == m.fin->diagonal_exceptions.end() ? m.fin->diagonal_default : it->second;
    }
    auto it = m.fin->off_diagonal.find({s1, s2});
    return it == m.fin->off_diagonal.end() ? m.ring.zero() : it->second;
  }
  {
    std::shared_lock lock(m.memo_mutex);
    auto it = m.memo.find({s1, s2});
    if (it != m.memo.end()) return it->second;
  }
  RingValue v = m.oracle(s1, s2);
  std::unique_lock lock(m.memo_mutex);
  m.memo.emplace(std::make_pair(s1, s2), v);
  return v;
}

IncMatrix LazyMatrix::project(const ElemSet& alpha0) const {
  ElemSet alpha = alpha0;
  std::sort(alpha.begin(), alpha.end());
  alpha.erase(std::unique(alpha.begin(), alpha.end()), alpha.end());
  if (!family()->is_convex(alpha)) throw Error(ErrorCode::NotConvex, "window is not convex in " + family()->describe());
  ProsetRef p = make_proset(family()->restrict(alpha));
  IncMatrix out(p, ring());
  for (auto [i, j] : p->relation()) out.set(i, j, at(alpha[i], alpha[j]));
  return out;
}

ElemSet LazyMatrix::support() const {
  if (!impl_->fin) throw Error(ErrorCode::InvalidArgument, "support is defined for finitary matrices only");
  ElemSet s;
  for (auto& [k, v] : impl_->fin->off_diagonal) {
    s.push_back(k.first);
    s.push_back(k.second);
  }
  for (auto& [k, v] : impl_->fin->diagonal_exceptions) s.push_back(k);
  std::sort(s.begin(), s.end());
  s.erase(std::unique(s.begin(), s.end()), s.end());
  return s;
}

void require_compatible(const LazyMatrix& a, const LazyMatrix& b) {
  if (a.ring() != b.ring() || !same_family(*a.family(), *b.family()))
    throw Error(ErrorCode::IncompatibleOperands,
                "operands live over " + a.family()->describe() + "/" + a.ring().describe() + " and " +
                    b.family()->describe() + "/" + b.ring().describe());
}

namespace {

RingValue diag_of(const LazyMatrix::Finitary& f, Elem s) {
  auto it = f.diagonal_exceptions.find(s);
  return it == f.diagonal_exceptions.end() ? f.diagonal_default : it->second;
}

}  // namespace

LazyMatrix lazy_add(const LazyMatrix& a, const LazyMatrix& b) {
  require_compatible(a, b);
  const CoeffRing r = a.ring();
  if (a.is_finitary() && b.is_finitary()) {
    const auto &fa = *a.finitary_form(), &fb = *b.finitary_form();
    LazyMatrix::Finitary c;
    c.diagonal_default = r.add(fa.diagonal_default, fb.diagonal_default);
    for (auto& [s, v] : fa.diagonal_exceptions) c.diagonal_exceptions[s] = r.add(v, diag_of(fb, s));
    for (auto& [s, v] : fb.diagonal_exceptions) c.diagonal_exceptions[s] = r.add(diag_of(fa, s), v);
    c.off_diagonal = fa.off_diagonal;
    for (auto& [k, v] : fb.off_diagonal) {
      auto it = c.off_diagonal.find(k);
      if (it == c.off_diagonal.end()) c.off_diagonal.emplace(k, v);
      else r.add_to(it->second, v);
    }
    return LazyMatrix::finitary(a.family(), r, std::move(c));
  }
  return LazyMatrix::from_oracle(a.family(), r, [a, b, r](Elem s1, Elem s2) { return r.add(a.at(s1, s2), b.at(s1, s2)); });
}

// (D_A + N_A)(D_B + N_B) term by term; N_A N_B can land on the diagonal
// when s1 and s2 are equivalent and equal.
LazyMatrix lazy_mul(const LazyMatrix& a, const LazyMatrix& b) {
  require_compatible(a, b);
  const CoeffRing r = a.ring();
  if (a.is_finitary() && b.is_finitary()) {
    const auto &fa = *a.finitary_form(), &fb = *b.finitary_form();
    LazyMatrix::Finitary c;
    auto slot = [&](Elem s1, Elem s2) -> RingValue& { return c.off_diagonal.try_emplace({s1, s2}, r.zero()).first->second; };
    c.diagonal_default = r.mul(fa.diagonal_default, fb.diagonal_default);
    for (auto& [s, v] : fa.diagonal_exceptions) c.diagonal_exceptions[s] = r.mul(v, diag_of(fb, s));
    for (auto& [s, v] : fb.diagonal_exceptions) c.diagonal_exceptions[s] = r.mul(diag_of(fa, s), v);
    for (auto& [k, v] : fb.off_diagonal) r.add_mul(slot(k.first, k.second), diag_of(fa, k.first), v);
    for (auto& [k, v] : fa.off_diagonal) r.add_mul(slot(k.first, k.second), v, diag_of(fb, k.second));
    for (auto& [ka, va] : fa.off_diagonal)
      for (auto it = fb.off_diagonal.lower_bound({ka.second, INT64_MIN});
           it != fb.off_diagonal.end() && it->first.first == ka.second; ++it) {
        if (ka.first == it->first.second) {
          auto d = c.diagonal_exceptions.find(ka.first);
          if (d == c.diagonal_exceptions.end())
            d = c.diagonal_exceptions.emplace(ka.first, r.mul(diag_of(fa, ka.first), diag_of(fb, ka.first))).first;
          r.add_mul(d->second, va, it->second);
        } else {
          r.add_mul(slot(ka.first, it->first.second), va, it->second);
        }
      }
    return LazyMatrix::finitary(a.family(), r, std::move(c));
  }
  FamilyRef fam = a.family();
  return LazyMatrix::from_oracle(fam, r, [a, b, r, fam](Elem s1, Elem s2) {
    RingValue acc = r.zero();
    for (Elem t : fam->interval(s1, s2)) r.add_mul(acc, a.at(s1, t), b.at(t, s2));
    return acc;
  });
}

namespace {

// Restriction to an interval-closed finite set is a ring map, so inverses
// commute with it.
IncMatrix restrict_to(const LazyMatrix& a, const ElemSet& w) {
  ProsetRef p = make_proset(a.family()->restrict(w));
  IncMatrix m(p, a.ring());
  for (auto [i, j] : p->relation()) m.set(i, j, a.at(w[i], w[j]));
  return m;
}

}  // namespace

LazyMatrix lazy_invert(const LazyMatrix& a) {
  const CoeffRing r = a.ring();
  if (a.is_finitary()) {
    const auto& fa = *a.finitary_form();
    if (!r.is_unit(fa.diagonal_default))
      throw Error(ErrorCode::NotInvertible, "diagonal default " + r.format(fa.diagonal_default) + " is not a unit");
    const RingValue dinv = r.inv(fa.diagonal_default);
    LazyMatrix::Finitary c;
    c.diagonal_default = dinv;
    ElemSet supp = a.support();
    if (!supp.empty()) {
      ElemSet w = a.family()->interval_closure(supp);
      IncMatrix inv = invert(restrict_to(a, w));
      for (auto& [k, v] : inv.entries()) {
        if (k.first == k.second) c.diagonal_exceptions[w[k.first]] = v;
        else c.off_diagonal[{w[k.first], w[k.second]}] = v;
      }
      for (std::size_t i = 0; i < w.size(); ++i)
        if (!inv.entries().count({i, i})) c.diagonal_exceptions[w[i]] = r.zero();
    }
    return LazyMatrix::finitary(a.family(), r, std::move(c));
  }
  FamilyRef fam = a.family();
  return LazyMatrix::from_oracle(fam, r, [a, fam](Elem s1, Elem s2) {
    ElemSet w = fam->interval(s1, s2);
    IncMatrix inv = invert(restrict_to(a, w));
    auto i = static_cast<std::size_t>(std::lower_bound(w.begin(), w.end(), s1) - w.begin());
    auto j = static_cast<std::size_t>(std::lower_bound(w.begin(), w.end(), s2) - w.begin());
    return inv.at(i, j);
  });
}

LazyMatrix rehome(const LazyMatrix& a, FamilyRef family) {
  if (!a.is_finitary())
    return LazyMatrix::from_oracle(family, a.ring(), [a](Elem s1, Elem s2) { return a.at(s1, s2); });
  return LazyMatrix::finitary(std::move(family), a.ring(), *a.finitary_form());
}

namespace {

ElemSet normalized(ElemSet s) {
  std::sort(s.begin(), s.end());
  s.erase(std::unique(s.begin(), s.end()), s.end());
  return s;
}

FamilyRef agl_family(const FamilyRef& base, const ElemSet& s) {
  return s.size() <= 1 ? base : family_augmented(base, {s});
}

}  // namespace

AglElement AglElement::make(FamilyRef base, CoeffRing ring, ElemSet augmentation, LazyMatrix::Finitary body) {
  ElemSet s = normalized(std::move(augmentation));
  LazyMatrix m = LazyMatrix::finitary(agl_family(base, s), ring, std::move(body));
  auto inv = std::make_shared<const LazyMatrix>(lazy_invert(m));
  return AglElement(std::move(base), std::move(s), std::move(m), std::move(inv));
}

AglElement AglElement::identity(FamilyRef base, CoeffRing ring) {
  LazyMatrix::Finitary f;
  f.diagonal_default = ring.one();
  return make(std::move(base), ring, {}, std::move(f));
}

AglElement AglElement::embed(const ElemSet& bigger0) const {
  ElemSet bigger = normalized(bigger0);
  if (!std::includes(bigger.begin(), bigger.end(), s_.begin(), s_.end()))
    throw Error(ErrorCode::InvalidArgument, "embedding target does not contain the augmentation");
  FamilyRef fam = agl_family(base_, bigger);
  return AglElement(base_, bigger, rehome(body_, fam), std::make_shared<const LazyMatrix>(rehome(*inverse_, fam)));
}

AglElement agl_mul(const AglElement& g, const AglElement& h) {
  if (!same_family(*g.base_, *h.base_) || g.body_.ring() != h.body_.ring())
    throw Error(ErrorCode::IncompatibleOperands, "aGL elements over different bases");
  ElemSet u = g.s_;
  u.insert(u.end(), h.s_.begin(), h.s_.end());
  u = normalized(std::move(u));
  AglElement g2 = g.embed(u), h2 = h.embed(u);
  return AglElement(g.base_, u, lazy_mul(g2.body_, h2.body_),
                    std::make_shared<const LazyMatrix>(lazy_mul(*h2.inverse_, *g2.inverse_)));
}

AglElement agl_invert(const AglElement& g) {
  return AglElement(g.base_, g.s_, *g.inverse_, std::make_shared<const LazyMatrix>(g.body_));
}

QzReport qz_window_check(const FamilyRef& family, const CoeffRing& ring, const ElemSet& alpha0, const ElemSet& beta0,
                         std::size_t budget) {
  if (!ring.is_finite()) throw Error(ErrorCode::InvalidArgument, "QZ window check needs a finite ring");
  ElemSet alpha = normalized(alpha0), beta = normalized(beta0);
  if (!std::includes(alpha.begin(), alpha.end(), beta.begin(), beta.end()))
    throw Error(ErrorCode::InvalidArgument, "inner window is not inside the outer window");
  if (!family->is_convex(alpha) || !family->is_convex(beta))
    throw Error(ErrorCode::NotConvex, "windows must be convex");
  for (Elem s : alpha) family->neighbors(s);

  ProsetRef pb = make_proset(family->restrict(beta));
  Subset beta_in_alpha;
  for (Elem x : beta)
    beta_in_alpha.push_back(static_cast<std::size_t>(std::lower_bound(alpha.begin(), alpha.end(), x) - alpha.begin()));

  struct Gen {
    LazyMatrix::Finitary lift;
    ElemSet s;
    IncMatrix target;
  };
  std::vector<Gen> gens;
  for (auto [i, j] : pb->relation()) {
    if (i == j) continue;
    Gen g{{}, normalized({beta[i], beta[j]}), IncMatrix::identity(pb, ring) + IncMatrix::unit(pb, ring, i, j)};
    g.lift.diagonal_default = ring.one();
    g.lift.off_diagonal[{beta[i], beta[j]}] = ring.one();
    gens.push_back(std::move(g));
  }
  for (std::size_t i = 0; i < beta.size(); ++i)
    for (auto& u : ring.units()) {
      if (ring.is_one(u)) continue;
      IncMatrix t = IncMatrix::identity(pb, ring);
      t.set(i, i, u);
      Gen g{{}, {beta[i]}, t};
      g.lift.diagonal_default = ring.one();
      g.lift.diagonal_exceptions[beta[i]] = u;
      gens.push_back(std::move(g));
    }

  QzReport rep;
  rep.generators = gens.size();
  std::vector<IncMatrix> hits;
  for (auto& g : gens) {
    ElemSet n1;
    for (Elem s : g.s) {
      ElemSet nb = family->neighbors(s);
      n1.insert(n1.end(), nb.begin(), nb.end());
    }
    n1 = normalized(std::move(n1));
    if (!std::includes(alpha.begin(), alpha.end(), n1.begin(), n1.end())) continue;
    IncMatrix in_alpha = LazyMatrix::finitary(family, ring, g.lift).project(alpha);
    if (!is_invertible(in_alpha)) continue;
    bool in_gs = true;  // identity away from S x S
    for (auto [i, j] : in_alpha.proset().relation()) {
      bool inside = std::binary_search(g.s.begin(), g.s.end(), alpha[i]) &&
                    std::binary_search(g.s.begin(), g.s.end(), alpha[j]);
      if (!inside && in_alpha.at(i, j) != (i == j ? ring.one() : ring.zero())) in_gs = false;
    }
    if (!in_gs) continue;
    IncMatrix img = incalg::project(in_alpha, beta_in_alpha);
    if (img == g.target) {
      ++rep.generators_hit;
      hits.push_back(std::move(img));
    }
  }

  const auto rel = pb->relation();
  auto key = [&](const IncMatrix& m) {
    std::vector<std::int64_t> k;
    for (auto [i, j] : rel) k.push_back(m.at(i, j).residue());
    return k;
  };
  IncMatrix id = IncMatrix::identity(pb, ring);
  std::set<std::vector<std::int64_t>> seen{key(id)};
  std::vector<IncMatrix> frontier{id};
  while (!frontier.empty()) {
    std::vector<IncMatrix> next;
    for (auto& x : frontier)
      for (auto& h : hits) {
        IncMatrix y = x * h;
        if (seen.insert(key(y)).second) next.push_back(std::move(y));
        if (seen.size() > budget) throw Error(ErrorCode::SearchBudgetExceeded, "generated subgroup exceeds budget");
      }
    frontier = std::move(next);
  }
  rep.closure_order = seen.size();
  rep.target_order = gl_order(*pb, ring).get_ui();
  rep.surjective = rep.generators_hit == rep.generators && rep.closure_order == rep.target_order;
  return rep;
}

}  // namespace incalg
