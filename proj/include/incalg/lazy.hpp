#pragma once

#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <shared_mutex>

#include "incalg/family.hpp"
#include "incalg/incidence.hpp"

namespace incalg {

// Same family object, or the same built-in description.
bool same_family(const ProsetFamily& a, const ProsetFamily& b);

// Element of M_Λ(P) for a family Λ, given coordinate by coordinate. Finitary
// matrices also carry an exact finite description.
class LazyMatrix {
 public:
  using Oracle = std::function<RingValue(Elem, Elem)>;
  struct Finitary {
    std::map<std::pair<Elem, Elem>, RingValue> off_diagonal;  // s1 != s2
    std::map<Elem, RingValue> diagonal_exceptions;
    RingValue diagonal_default;
  };

  // The oracle is queried only on comparable pairs.
  static LazyMatrix from_oracle(FamilyRef family, CoeffRing ring, Oracle oracle);
  static LazyMatrix finitary(FamilyRef family, CoeffRing ring, Finitary f);  // NotComparable
  static LazyMatrix scalar(FamilyRef family, CoeffRing ring, const RingValue& v);
  static LazyMatrix identity(FamilyRef family, CoeffRing ring) { return scalar(family, ring, ring.one()); }
  static LazyMatrix upper_ones(FamilyRef family, CoeffRing ring);

  const FamilyRef& family() const { return impl_->family; }
  const CoeffRing& ring() const { return impl_->ring; }
  const std::optional<Finitary>& finitary_form() const { return impl_->fin; }
  bool is_finitary() const { return impl_->fin.has_value(); }

  RingValue at(Elem s1, Elem s2) const;
  IncMatrix project(const ElemSet& alpha) const;  // NotConvex
  // Elements touched by the off-diagonal part or the diagonal exceptions.
  ElemSet support() const;

 private:
  struct Impl {
    Impl(FamilyRef f, CoeffRing r) : family(std::move(f)), ring(r) {}
    FamilyRef family;
    CoeffRing ring;
    Oracle oracle;
    std::optional<Finitary> fin;
    mutable std::map<std::pair<Elem, Elem>, RingValue> memo;
    mutable std::shared_mutex memo_mutex;
  };
  explicit LazyMatrix(std::shared_ptr<Impl> impl) : impl_(std::move(impl)) {}
  std::shared_ptr<Impl> impl_;
};

void require_compatible(const LazyMatrix& a, const LazyMatrix& b);
LazyMatrix lazy_add(const LazyMatrix& a, const LazyMatrix& b);
LazyMatrix lazy_mul(const LazyMatrix& a, const LazyMatrix& b);
LazyMatrix lazy_invert(const LazyMatrix& a);  // NotInvertible (eagerly for finitary input)
// Same coordinates, re-homed on a family whose order contains the old one.
LazyMatrix rehome(const LazyMatrix& a, FamilyRef family);

// Element of aGL: a finitary unit of M over Λ + {S}.
class AglElement {
 public:
  static AglElement make(FamilyRef base, CoeffRing ring, ElemSet augmentation, LazyMatrix::Finitary body);
  static AglElement identity(FamilyRef base, CoeffRing ring);

  const FamilyRef& base() const { return base_; }
  const ElemSet& augmentation() const { return s_; }
  const LazyMatrix& body() const { return body_; }
  const LazyMatrix& inverse_body() const { return *inverse_; }

  // The embedding j_{S -> S'}, S a subset of S'.
  AglElement embed(const ElemSet& bigger) const;

 private:
  AglElement(FamilyRef base, ElemSet s, LazyMatrix body, std::shared_ptr<const LazyMatrix> inv)
      : base_(std::move(base)), s_(std::move(s)), body_(std::move(body)), inverse_(std::move(inv)) {}
  FamilyRef base_;
  ElemSet s_;
  LazyMatrix body_;
  std::shared_ptr<const LazyMatrix> inverse_;

  friend AglElement agl_mul(const AglElement& g, const AglElement& h);
  friend AglElement agl_invert(const AglElement& g);
};

AglElement agl_mul(const AglElement& g, const AglElement& h);
AglElement agl_invert(const AglElement& g);

struct QzReport {
  std::size_t generators = 0;       // generating set of GL over the inner window
  std::size_t generators_hit = 0;   // realized by projections of G_S lifts
  std::uint64_t closure_order = 0;  // order of the group the hits generate
  std::uint64_t target_order = 0;   // |GL| over the inner window
  bool surjective = false;
};
QzReport qz_window_check(const FamilyRef& family, const CoeffRing& ring, const ElemSet& alpha, const ElemSet& beta,
                         std::size_t budget = 1000000);

}  // namespace incalg
