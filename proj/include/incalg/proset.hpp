#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

namespace incalg {

using Subset = std::vector<std::size_t>;  // sorted element indices

// Finite preordered set. Elements are opaque names; the relation is the
// reflexive-transitive closure of the generating pairs.
class Proset {
 public:
  Proset() = default;

  static Proset from_relations(std::vector<std::string> elements,
                               const std::vector<std::pair<std::string, std::string>>& generators);
  static Proset from_pairs(std::vector<std::string> elements,
                           const std::vector<std::pair<std::size_t, std::size_t>>& generators);

  static Proset chain(std::size_t n);
  static Proset antichain(std::size_t n);
  static Proset full(std::size_t n);
  // n-block below the m-block; n == 0 gives the full block of size m.
  static Proset two_block(std::size_t m, std::size_t n);
  static Proset disjoint_union(const std::vector<Proset>& parts);

  std::size_t size() const { return names_.size(); }
  const std::vector<std::string>& names() const { return names_; }
  const std::string& name(std::size_t i) const { return names_[i]; }
  std::optional<std::size_t> find(const std::string& name) const;
  std::size_t index(const std::string& name) const;

  bool leq(std::size_t i, std::size_t j) const {
    return (bits_[i * words_ + j / 64] >> (j % 64)) & 1U;
  }
  bool equivalent(std::size_t i, std::size_t j) const { return leq(i, j) && leq(j, i); }
  bool comparable(std::size_t i, std::size_t j) const { return leq(i, j) || leq(j, i); }

  Subset interval(std::size_t i, std::size_t j) const;
  Subset neighborhood(std::size_t s, std::size_t k) const;
  Subset up_set(std::size_t s) const;
  Subset down_set(std::size_t s) const;

  const std::vector<Subset>& classes() const { return classes_; }
  std::size_t class_of(std::size_t i) const { return class_of_[i]; }
  bool class_leq(std::size_t c1, std::size_t c2) const { return leq(classes_[c1][0], classes_[c2][0]); }
  // Classes in a linear extension of the class order, ties broken by smallest member.
  std::vector<std::size_t> class_linear_extension() const;

  const std::vector<Subset>& components() const { return components_; }
  std::size_t component_of(std::size_t i) const { return component_of_[i]; }

  bool is_interval_closed(const Subset& s) const;
  bool is_connected(const Subset& s) const;
  bool is_convex(const Subset& s) const { return is_interval_closed(s) && is_connected(s); }
  Subset interval_closure(const Subset& s) const;
  Subset convex_closure(const Subset& s) const;
  std::vector<Subset> gamma_enumerate(std::size_t bound) const;

  Proset augment(const std::vector<Subset>& sets) const;
  Proset opposite() const;
  Proset induced(const Subset& subset) const;

  bool is_z_like() const;
  bool is_n_bounded(std::size_t n) const;
  bool is_poset() const;
  bool is_irreducible() const { return components_.size() == 1; }

  std::vector<std::pair<std::size_t, std::size_t>> relation() const;
  std::vector<std::pair<std::size_t, std::size_t>> strict_relation() const;
  std::size_t relation_size() const { return relation_size_; }

  friend bool operator==(const Proset& a, const Proset& b) {
    return a.names_ == b.names_ && a.bits_ == b.bits_;
  }
  friend bool operator!=(const Proset& a, const Proset& b) { return !(a == b); }

 private:
  void init(std::vector<std::string> names);
  void set(std::size_t i, std::size_t j) { bits_[i * words_ + j / 64] |= std::uint64_t{1} << (j % 64); }
  void close_and_derive();

  std::vector<std::string> names_;
  std::unordered_map<std::string, std::size_t> index_;
  std::size_t words_ = 0;
  std::vector<std::uint64_t> bits_;
  std::vector<Subset> classes_;
  std::vector<std::size_t> class_of_;
  std::vector<Subset> components_;
  std::vector<std::size_t> component_of_;
  std::size_t relation_size_ = 0;
};

// Order isomorphism a -> b as an index map, if one exists.
std::optional<std::vector<std::size_t>> poset_isomorphic(const Proset& a, const Proset& b);

// One representative per isomorphism type on n elements (n <= 5).
std::vector<Proset> prosets_up_to_iso(std::size_t n, bool posets_only);

}  // namespace incalg
