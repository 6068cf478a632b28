#pragma once

#include <gmpxx.h>

#include <optional>
#include <string>
#include <vector>

#include "incalg/incidence.hpp"

namespace incalg {

bool is_invertible(const IncMatrix& a);
IncMatrix invert(const IncMatrix& a);  // NotInvertible

// An IncMatrix known to be a unit.
class GroupElement {
 public:
  static GroupElement certify(IncMatrix m);  // NotInvertible
  static GroupElement identity(ProsetRef p, CoeffRing r);

  const IncMatrix& matrix() const { return m_; }
  bool certified() const { return certified_; }

  GroupElement inverse() const;
  friend GroupElement operator*(const GroupElement& a, const GroupElement& b);
  friend bool operator==(const GroupElement& a, const GroupElement& b) { return a.m_ == b.m_; }
  friend bool operator!=(const GroupElement& a, const GroupElement& b) { return !(a == b); }

 private:
  GroupElement(IncMatrix m, bool certified) : m_(std::move(m)), certified_(certified) {}
  IncMatrix m_;
  bool certified_;
};

// N for Interval, Convex or LocallyConvex specs: A - 1 lies in the ideal.
bool normal_subgroup_membership(const GroupElement& a, const IdealSpec& spec);
GroupElement quotient_project(const GroupElement& a, const Subset& convex);

// Generators whose centralizer in GL is the center: one-coordinate diagonal
// units and the transvections 1 + e^{(s1,s2)}, s1 != s2.
std::vector<IncMatrix> centrality_generators(const ProsetRef& p, const CoeffRing& r);

struct CentralityReport {
  bool central = false;            // commutes with every generator
  bool scalar = false;             // unit scalar matrix
  bool hypothesis_holds = false;   // irreducible and has_unit_pair
  bool hypothesis_failure = false; // scalar test disagrees with the witness search
  std::optional<IncMatrix> witness;  // a generator that does not commute
};
CentralityReport is_central(const IncMatrix& a);

// All central units, by enumerating every matrix on the relation (finite rings).
std::vector<IncMatrix> exhaustive_centrality_set(const ProsetRef& p, const CoeffRing& r);

GroupElement commutator(const GroupElement& a, const GroupElement& b);

struct CommutatorReport {
  std::size_t depth = 0, samples = 0;
  bool pattern_holds = true;   // identity-patterned on intervals of size <= depth
  bool bounded = false;        // proset is depth-bounded
  bool identity_holds = true;  // every sample is 1 (meaningful when bounded)
  std::optional<std::pair<std::size_t, std::size_t>> violation;
};
// depth 0 samples random units, depth k commutes two depth k-1 samples.
GroupElement random_iterated_commutator(const ProsetRef& p, const CoeffRing& r, std::size_t depth, Rng& rng);
CommutatorReport iterated_commutator_sample(const ProsetRef& p, const CoeffRing& r, std::size_t depth,
                                            std::size_t trials, Rng& rng);

struct DicksonReport {
  std::size_t n = 0;
  std::int64_t q = 0;
  std::uint64_t seed = 0;
  IncMatrix::Entries seed_element;
  std::uint64_t closure_size = 0;
  std::uint64_t sl_order = 0, gl_order = 0;
  bool contains_sl_generators = false;
  bool divisible_by_sl = false;
  bool equals_gl = false;
};
DicksonReport dickson_normal_closure(std::size_t n, std::int64_t q, std::uint64_t seed,
                                     std::size_t budget = 1000000);

// A -> transpose(A^{-1}) into GL over the opposite proset.
GroupElement transpose_op_iso(const GroupElement& a);

// |GL_Λ(P)| for finite P.
mpz_class gl_order(const Proset& p, const CoeffRing& r);

}  // namespace incalg
