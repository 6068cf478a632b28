#pragma once

#include <functional>
#include <vector>

#include "incalg/incidence.hpp"

namespace incalg {

bool is_topologically_nilpotent(const IncMatrix& a);  // PosetRequired
Subset b_of(const IncMatrix& a);                      // RingBooleanPartTooLarge, NotIdempotent, PosetRequired
IncMatrix erase(const IncMatrix& a, const Subset& s);  // NotInDiagonalSupport
bool class_equiv(const IncMatrix& a, const IncMatrix& b);
bool class_leq(const IncMatrix& a, const IncMatrix& b);

std::vector<IncMatrix> all_idempotents(const ProsetRef& p, const CoeffRing& r);

// Opaque ring access: elements are coordinate vectors in some basis over a
// finite coefficient ring, and only ring operations are used on them.
class RingAccess {
 public:
  using Elt = std::vector<std::int64_t>;
  virtual ~RingAccess() = default;

  virtual const CoeffRing& coefficients() const = 0;
  virtual std::size_t rank() const = 0;
  virtual Elt one() const = 0;
  virtual Elt mul(const Elt& x, const Elt& y) const = 0;

  Elt zero() const { return Elt(rank(), 0); }
  Elt add(const Elt& x, const Elt& y) const;
  Elt neg(const Elt& x) const;
  Elt sub(const Elt& x, const Elt& y) const { return add(x, neg(y)); }
  bool is_zero(const Elt& x) const;
  Elt random(Rng& rng) const;
  std::uint64_t size() const;  // saturates
  void for_each_element(const std::function<void(const Elt&)>& f) const;
};

// Multiplication table on a free basis: table[i * rank + j] lists the
// nonzero coordinates of b_i b_j.
struct StructureConstants {
  CoeffRing ring = CoeffRing::prime_field(2);
  std::size_t rank = 0;
  std::vector<std::int64_t> one;
  std::vector<std::vector<std::pair<std::size_t, std::int64_t>>> table;
};

class StructureConstantsRing final : public RingAccess {
 public:
  explicit StructureConstantsRing(StructureConstants sc);
  const CoeffRing& coefficients() const override { return sc_.ring; }
  std::size_t rank() const override { return sc_.rank; }
  Elt one() const override { return sc_.one; }
  Elt mul(const Elt& x, const Elt& y) const override;
  const StructureConstants& constants() const { return sc_; }

 private:
  StructureConstants sc_;
};

// M_Λ(P) in the basis e^{(s1,s2)}, relation order.
StructureConstants incidence_structure_constants(const ProsetRef& p, const CoeffRing& r);
// Same ring after conjugation by a random unit, a random relabelling of
// the basis and a random change of basis over P.
StructureConstants scramble(const ProsetRef& p, const CoeffRing& r, std::uint64_t seed);

enum class RecoveryMode { Exhaustive, Witness };

struct RecoveryResult {
  Proset poset;
  std::size_t idempotents_examined = 0;
  std::size_t classes = 0;
  std::size_t samples_used = 0;
};
RecoveryResult recover_poset(const RingAccess& ring, RecoveryMode mode, std::size_t budget, std::uint64_t seed = 0);

}  // namespace incalg
