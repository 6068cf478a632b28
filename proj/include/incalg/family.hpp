#pragma once

#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "incalg/proset.hpp"

namespace incalg {

using Elem = std::int64_t;
using ElemSet = std::vector<Elem>;  // sorted

// Infinite (or finite) locally finite proset given by oracles.
class ProsetFamily {
 public:
  virtual ~ProsetFamily() = default;

  virtual std::string describe() const = 0;
  virtual bool contains(Elem s) const = 0;
  virtual bool leq(Elem a, Elem b) const = 0;
  virtual ElemSet interval(Elem a, Elem b) const = 0;
  // nullopt when the set is infinite
  virtual std::optional<ElemSet> up_set(Elem s) const = 0;
  virtual std::optional<ElemSet> down_set(Elem s) const = 0;
  // k-th member of a cofinal increasing chain of finite convex windows
  virtual ElemSet window(std::size_t k) const = 0;
  // some finite convex window containing s
  virtual ElemSet window_containing(const ElemSet& s) const;
  virtual bool is_z_like() const = 0;

  bool equivalent(Elem a, Elem b) const { return leq(a, b) && leq(b, a); }
  bool comparable(Elem a, Elem b) const { return leq(a, b) || leq(b, a); }
  ElemSet neighbors(Elem s) const;  // N1(s); throws InfiniteNeighborhood
  ElemSet neighborhood(Elem s, std::size_t k) const;
  ElemSet interval_closure(const ElemSet& s) const;
  bool is_convex(const ElemSet& s) const;
  ElemSet convex_closure(const ElemSet& s) const;
  std::vector<ElemSet> gamma_windows(std::size_t count) const;

  Proset restrict(const ElemSet& s) const;  // names are decimal element ids
  Elem parse_element(const std::string& text) const;
};

using FamilyRef = std::shared_ptr<const ProsetFamily>;

FamilyRef family_n();
FamilyRef family_z();
FamilyRef family_zig();  // 2k below 2k-1 and 2k+1
FamilyRef family_nstar_div();
FamilyRef family_finite(Proset p);  // elements are indices
FamilyRef family_two_block(std::size_t m, std::size_t n);
FamilyRef family_augmented(FamilyRef base, std::vector<ElemSet> sets);

struct CustomFamilySpec {
  std::string name = "custom";
  std::function<bool(Elem)> contains;
  std::function<bool(Elem, Elem)> leq;
  // emits candidates for [a, b]; may be unbounded, the budget stops it
  std::function<void(Elem, Elem, const std::function<void(Elem)>&)> interval_candidates;
  std::function<ElemSet(std::size_t)> window;
  std::size_t budget = 1000000;
};
FamilyRef family_custom(CustomFamilySpec spec);

}  // namespace incalg
