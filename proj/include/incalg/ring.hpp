#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <random>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace incalg {

using Rng = std::mt19937_64;

// Residues live in the int64 alternative, integers in mpz, rationals in mpq.
class RingValue {
 public:
  using Rep = std::variant<std::int64_t, mpz_class, mpq_class>;

  RingValue() : rep_(std::int64_t{0}) {}
  explicit RingValue(std::int64_t r) : rep_(r) {}
  explicit RingValue(mpz_class z) : rep_(std::move(z)) {}
  explicit RingValue(mpq_class q) : rep_(std::move(q)) {}

  const Rep& rep() const { return rep_; }
  Rep& rep() { return rep_; }

  std::int64_t residue() const { return std::get<std::int64_t>(rep_); }
  const mpz_class& integer() const { return std::get<mpz_class>(rep_); }
  const mpq_class& rational() const { return std::get<mpq_class>(rep_); }

  friend bool operator==(const RingValue& a, const RingValue& b) { return a.rep_ == b.rep_; }
  friend bool operator!=(const RingValue& a, const RingValue& b) { return !(a == b); }

 private:
  Rep rep_;
};

enum class RingKind { Integer, Rational, ModN, PrimeField };

class CoeffRing {
 public:
  static CoeffRing integers();
  static CoeffRing rationals();
  static CoeffRing mod(std::int64_t n);
  static CoeffRing prime_field(std::int64_t p);

  RingKind kind() const { return kind_; }
  std::int64_t modulus() const { return n_; }
  bool is_finite() const { return kind_ == RingKind::ModN || kind_ == RingKind::PrimeField; }
  bool is_field() const { return kind_ == RingKind::Rational || kind_ == RingKind::PrimeField; }
  std::uint64_t size() const;

  RingValue zero() const;
  RingValue one() const;
  RingValue from_int(std::int64_t v) const;
  RingValue from_mpz(const mpz_class& v) const;

  RingValue add(const RingValue& a, const RingValue& b) const;
  RingValue sub(const RingValue& a, const RingValue& b) const;
  RingValue neg(const RingValue& a) const;
  RingValue mul(const RingValue& a, const RingValue& b) const;
  // acc += a * b
  void add_mul(RingValue& acc, const RingValue& a, const RingValue& b) const;
  void add_to(RingValue& acc, const RingValue& a) const;
  RingValue pow(const RingValue& a, std::uint64_t e) const;

  bool is_zero(const RingValue& a) const;
  bool is_one(const RingValue& a) const;
  bool is_unit(const RingValue& a) const;
  RingValue inv(const RingValue& a) const;  // throws NotInvertible

  // Total order used only for canonical sorting.
  int compare(const RingValue& a, const RingValue& b) const;

  std::vector<RingValue> elements() const;  // finite rings only
  std::vector<RingValue> units() const;     // finite rings only
  std::vector<RingValue> boolean_part() const;
  bool has_unit_pair() const;

  // Principal ideals: every ideal of Z, Z/n and of a field is principal.
  bool in_ideal(const RingValue& r, const RingValue& generator) const;
  RingValue ideal_sum(const RingValue& g1, const RingValue& g2) const;

  RingValue random(Rng& rng) const;
  RingValue random_unit(Rng& rng) const;

  RingValue parse(std::string_view text) const;
  std::string format(const RingValue& a) const;
  std::string describe() const;

  friend bool operator==(const CoeffRing& a, const CoeffRing& b) {
    return a.kind_ == b.kind_ && a.n_ == b.n_;
  }
  friend bool operator!=(const CoeffRing& a, const CoeffRing& b) { return !(a == b); }

 private:
  CoeffRing(RingKind kind, std::int64_t n) : kind_(kind), n_(n) {}
  std::int64_t reduce(const mpz_class& v) const;

  RingKind kind_;
  std::int64_t n_;
};

bool is_prime(std::uint64_t n);

}  // namespace incalg
