#include "incalg/random.hpp"

#include <algorithm>
#include <numeric>

#include "incalg/dense.hpp"

namespace incalg {

Proset random_proset(std::size_t n, Rng& rng, bool poset_only, double density) {
  std::vector<std::size_t> perm(n);
  std::iota(perm.begin(), perm.end(), 0);
  std::shuffle(perm.begin(), perm.end(), rng);
  std::bernoulli_distribution edge(density), back(0.15);
  std::vector<std::pair<std::size_t, std::size_t>> gens;
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = a + 1; b < n; ++b) {
      if (!edge(rng)) continue;
      gens.emplace_back(perm[a], perm[b]);
      if (!poset_only && back(rng)) gens.emplace_back(perm[b], perm[a]);
    }
  std::vector<std::string> names(n);
  for (std::size_t i = 0; i < n; ++i) names[i] = std::to_string(i);
  return Proset::from_pairs(std::move(names), gens);
}

IncMatrix random_matrix(const ProsetRef& p, const CoeffRing& r, Rng& rng, double density) {
  IncMatrix m(p, r);
  std::bernoulli_distribution keep(density);
  for (auto [i, j] : p->relation())
    if (keep(rng)) m.set(i, j, r.random(rng));
  return m;
}

namespace {

// det(L U D) = det(D) is a unit whatever L and U are.
Dense random_unit_block(const CoeffRing& r, std::size_t n, Rng& rng) {
  if (r.is_finite()) {
    for (int tries = 0; tries < 1000; ++tries) {
      Dense d(n, r.zero());
      for (auto& x : d.a) x = r.random(rng);
      if (r.is_unit(det(r, d))) return d;
    }
  }
  Dense l = dense_identity(r, n), u = dense_identity(r, n), d = dense_identity(r, n);
  for (std::size_t i = 0; i < n; ++i) {
    d.at(i, i) = r.random_unit(rng);
    for (std::size_t j = 0; j < i; ++j) {
      l.at(i, j) = r.random(rng);
      u.at(j, i) = r.random(rng);
    }
  }
  return dense_mul(r, dense_mul(r, l, u), d);
}

}  // namespace

IncMatrix random_invertible(const ProsetRef& p, const CoeffRing& r, Rng& rng) {
  IncMatrix m(p, r);
  for (auto [i, j] : p->relation())
    if (!p->equivalent(i, j)) m.set(i, j, r.random(rng));
  for (const auto& cls : p->classes()) {
    Dense b = random_unit_block(r, cls.size(), rng);
    for (std::size_t a = 0; a < cls.size(); ++a)
      for (std::size_t c = 0; c < cls.size(); ++c) m.set(cls[a], cls[c], b.at(a, c));
  }
  return m;
}

}  // namespace incalg
