#pragma once

#include <map>
#include <memory>
#include <utility>
#include <variant>
#include <vector>

#include "incalg/proset.hpp"
#include "incalg/ring.hpp"

namespace incalg {

using ProsetRef = std::shared_ptr<const Proset>;

inline ProsetRef make_proset(Proset p) { return std::make_shared<const Proset>(std::move(p)); }

// Element of M_Λ(P) for a finite proset Λ. Zeros are never stored, so
// entry-map equality is ring equality.
class IncMatrix {
 public:
  using Key = std::pair<std::size_t, std::size_t>;
  using Entries = std::map<Key, RingValue>;

  IncMatrix(ProsetRef proset, CoeffRing ring);

  static IncMatrix zero(ProsetRef p, CoeffRing r) { return IncMatrix(std::move(p), r); }
  static IncMatrix identity(ProsetRef p, CoeffRing r);
  static IncMatrix scalar_diag(ProsetRef p, CoeffRing r, const RingValue& v);
  static IncMatrix indicator(ProsetRef p, CoeffRing r, const Subset& s);
  static IncMatrix unit(ProsetRef p, CoeffRing r, std::size_t s1, std::size_t s2);

  const Proset& proset() const { return *proset_; }
  const ProsetRef& proset_ref() const { return proset_; }
  const CoeffRing& ring() const { return ring_; }
  const Entries& entries() const { return entries_; }
  std::size_t nnz() const { return entries_.size(); }
  bool is_zero() const { return entries_.empty(); }

  RingValue at(std::size_t i, std::size_t j) const;
  void set(std::size_t i, std::size_t j, const RingValue& v);  // NotComparable off the relation

  bool compatible(const IncMatrix& other) const;

  friend IncMatrix operator+(const IncMatrix& a, const IncMatrix& b);
  friend IncMatrix operator-(const IncMatrix& a, const IncMatrix& b);
  friend IncMatrix operator-(const IncMatrix& a);
  friend IncMatrix operator*(const IncMatrix& a, const IncMatrix& b);
  IncMatrix scaled(const RingValue& v) const;
  IncMatrix pow(std::uint64_t e) const;

  friend bool operator==(const IncMatrix& a, const IncMatrix& b);
  friend bool operator!=(const IncMatrix& a, const IncMatrix& b) { return !(a == b); }

 private:
  ProsetRef proset_;
  CoeffRing ring_;
  Entries entries_;
};

void require_compatible(const IncMatrix& a, const IncMatrix& b);

struct IntervalIdeal {
  std::size_t s1, s2;
};
struct ConvexIdeal {
  Subset subset;
};
struct LocallyConvexIdeal {
  std::vector<Subset> parts;
};
struct CoeffIdeal {
  RingValue generator;  // principal ideal (generator) of P
};
struct IdealSpec;
struct SumIdeal {
  std::vector<IdealSpec> parts;
};
struct IdealSpec {
  std::variant<IntervalIdeal, ConvexIdeal, LocallyConvexIdeal, CoeffIdeal, SumIdeal> spec;
};

bool ideal_membership(const IncMatrix& a, const IdealSpec& spec);

// Restriction to a convex subset; the result lives on the induced proset.
IncMatrix project(const IncMatrix& a, const Subset& convex);

std::vector<IncMatrix> split_components(const IncMatrix& a);
IncMatrix join_components(const ProsetRef& whole, const CoeffRing& ring, const std::vector<IncMatrix>& parts);

// Every matrix supported on the relation, in a fixed order (finite rings).
std::uint64_t matrix_count(const Proset& p, const CoeffRing& r);
template <class F>
void for_each_matrix(const ProsetRef& p, const CoeffRing& r, F&& f);

}  // namespace incalg

#include "incalg/detail/for_each_matrix.hpp"
