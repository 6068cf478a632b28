#pragma once

#include "incalg/incidence.hpp"

namespace incalg {

// Random closure of random generating pairs; posets come from a random
// order-compatible DAG, prosets may merge elements into classes.
Proset random_proset(std::size_t n, Rng& rng, bool poset_only, double density = 0.35);

IncMatrix random_matrix(const ProsetRef& p, const CoeffRing& r, Rng& rng, double density = 1.0);
IncMatrix random_invertible(const ProsetRef& p, const CoeffRing& r, Rng& rng);

}  // namespace incalg
