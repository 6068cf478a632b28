#include "incalg/ring.hpp"

#include <numeric>

#include "incalg/error.hpp"

namespace incalg {

namespace {

std::uint64_t mulmod_u64(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
  return static_cast<std::uint64_t>(static_cast<unsigned __int128>(a) * b % m);
}

std::uint64_t powmod_u64(std::uint64_t b, std::uint64_t e, std::uint64_t m) {
  std::uint64_t r = 1 % m;
  b %= m;
  while (e) {
    if (e & 1) r = mulmod_u64(r, b, m);
    b = mulmod_u64(b, b, m);
    e >>= 1;
  }
  return r;
}

std::int64_t gcd64(std::int64_t a, std::int64_t b) { return std::gcd(a, b); }

// Inverse of a modulo n, or 0 when gcd(a, n) != 1.
std::int64_t inv_mod(std::int64_t a, std::int64_t n) {
  std::int64_t t = 0, new_t = 1, r = n, new_r = a % n;
  if (new_r < 0) new_r += n;
  while (new_r != 0) {
    std::int64_t q = r / new_r;
    std::int64_t tmp = t - q * new_t;
    t = new_t;
    new_t = tmp;
    tmp = r - q * new_r;
    r = new_r;
    new_r = tmp;
  }
  if (r != 1) return 0;
  return t < 0 ? t + n : t;
}

}  // namespace

bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t p : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL, 17ULL, 19ULL, 23ULL, 29ULL, 31ULL, 37ULL}) {
    if (n % p == 0) return n == p;
  }
  std::uint64_t d = n - 1;
  int s = 0;
  while ((d & 1) == 0) {
    d >>= 1;
    ++s;
  }
  for (std::uint64_t a : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL, 17ULL, 19ULL, 23ULL, 29ULL, 31ULL, 37ULL}) {
    std::uint64_t x = powmod_u64(a, d, n);
    if (x == 1 || x == n - 1) continue;
    bool composite = true;
    for (int i = 1; i < s; ++i) {
      x = mulmod_u64(x, x, n);
      if (x == n - 1) {
        composite = false;
        break;
      }
    }
    if (composite) return false;
  }
  return true;
}

CoeffRing CoeffRing::integers() { return CoeffRing(RingKind::Integer, 0); }
CoeffRing CoeffRing::rationals() { return CoeffRing(RingKind::Rational, 0); }

CoeffRing CoeffRing::mod(std::int64_t n) {
  if (n < 2) throw Error(ErrorCode::InvalidArgument, "ModN requires n >= 2");
  if (n > (std::int64_t{1} << 62)) throw Error(ErrorCode::InvalidArgument, "modulus too large");
  return CoeffRing(RingKind::ModN, n);
}

CoeffRing CoeffRing::prime_field(std::int64_t p) {
  if (p < 2 || !is_prime(static_cast<std::uint64_t>(p)))
    throw Error(ErrorCode::InvalidArgument, "PrimeField requires a prime, got " + std::to_string(p));
  if (p > (std::int64_t{1} << 62)) throw Error(ErrorCode::InvalidArgument, "modulus too large");
  return CoeffRing(RingKind::PrimeField, p);
}

std::uint64_t CoeffRing::size() const {
  if (!is_finite()) throw Error(ErrorCode::InvalidArgument, describe() + " is infinite");
  return static_cast<std::uint64_t>(n_);
}

std::int64_t CoeffRing::reduce(const mpz_class& v) const {
  mpz_class r = v % n_;
  if (r < 0) r += n_;
  return r.get_si();
}

RingValue CoeffRing::zero() const { return from_int(0); }
RingValue CoeffRing::one() const { return from_int(1); }

RingValue CoeffRing::from_int(std::int64_t v) const {
  switch (kind_) {
    case RingKind::Integer: return RingValue(mpz_class(static_cast<long>(v)));
    case RingKind::Rational: return RingValue(mpq_class(static_cast<long>(v)));
    default: {
      std::int64_t r = v % n_;
      return RingValue(r < 0 ? r + n_ : r);
    }
  }
}

RingValue CoeffRing::from_mpz(const mpz_class& v) const {
  switch (kind_) {
    case RingKind::Integer: return RingValue(v);
    case RingKind::Rational: return RingValue(mpq_class(v));
    default: return RingValue(reduce(v));
  }
}

RingValue CoeffRing::add(const RingValue& a, const RingValue& b) const {
  switch (kind_) {
    case RingKind::Integer: return RingValue(mpz_class(a.integer() + b.integer()));
    case RingKind::Rational: return RingValue(mpq_class(a.rational() + b.rational()));
    default: {
      std::int64_t s = a.residue() + b.residue();
      return RingValue(s >= n_ ? s - n_ : s);
    }
  }
}

RingValue CoeffRing::sub(const RingValue& a, const RingValue& b) const {
  switch (kind_) {
    case RingKind::Integer: return RingValue(mpz_class(a.integer() - b.integer()));
    case RingKind::Rational: return RingValue(mpq_class(a.rational() - b.rational()));
    default: {
      std::int64_t s = a.residue() - b.residue();
      return RingValue(s < 0 ? s + n_ : s);
    }
  }
}

RingValue CoeffRing::neg(const RingValue& a) const {
  switch (kind_) {
    case RingKind::Integer: return RingValue(mpz_class(-a.integer()));
    case RingKind::Rational: return RingValue(mpq_class(-a.rational()));
    default: return RingValue(a.residue() == 0 ? 0 : n_ - a.residue());
  }
}

RingValue CoeffRing::mul(const RingValue& a, const RingValue& b) const {
  switch (kind_) {
    case RingKind::Integer: return RingValue(mpz_class(a.integer() * b.integer()));
    case RingKind::Rational: return RingValue(mpq_class(a.rational() * b.rational()));
    default:
      return RingValue(static_cast<std::int64_t>(static_cast<__int128>(a.residue()) * b.residue() % n_));
  }
}

void CoeffRing::add_mul(RingValue& acc, const RingValue& a, const RingValue& b) const {
  switch (kind_) {
    case RingKind::Integer:
      std::get<mpz_class>(acc.rep()) += a.integer() * b.integer();
      return;
    case RingKind::Rational:
      std::get<mpq_class>(acc.rep()) += a.rational() * b.rational();
      return;
    default: {
      auto& r = std::get<std::int64_t>(acc.rep());
      r = static_cast<std::int64_t>((static_cast<__int128>(a.residue()) * b.residue() + r) % n_);
      return;
    }
  }
}

void CoeffRing::add_to(RingValue& acc, const RingValue& a) const {
  switch (kind_) {
    case RingKind::Integer:
      std::get<mpz_class>(acc.rep()) += a.integer();
      return;
    case RingKind::Rational:
      std::get<mpq_class>(acc.rep()) += a.rational();
      return;
    default: {
      auto& r = std::get<std::int64_t>(acc.rep());
      r += a.residue();
      if (r >= n_) r -= n_;
      return;
    }
  }
}

RingValue CoeffRing::pow(const RingValue& a, std::uint64_t e) const {
  RingValue result = one();
  RingValue base = a;
  while (e) {
    if (e & 1) result = mul(result, base);
    e >>= 1;
    if (e) base = mul(base, base);
  }
  return result;
}

bool CoeffRing::is_zero(const RingValue& a) const {
  switch (kind_) {
    case RingKind::Integer: return a.integer() == 0;
    case RingKind::Rational: return a.rational() == 0;
    default: return a.residue() == 0;
  }
}

bool CoeffRing::is_one(const RingValue& a) const {
  switch (kind_) {
    case RingKind::Integer: return a.integer() == 1;
    case RingKind::Rational: return a.rational() == 1;
    default: return a.residue() == 1;
  }
}

bool CoeffRing::is_unit(const RingValue& a) const {
  switch (kind_) {
    case RingKind::Integer: return a.integer() == 1 || a.integer() == -1;
    case RingKind::Rational: return a.rational() != 0;
    case RingKind::PrimeField: return a.residue() != 0;
    case RingKind::ModN: return gcd64(a.residue(), n_) == 1;
  }
  return false;
}

RingValue CoeffRing::inv(const RingValue& a) const {
  if (!is_unit(a)) throw Error(ErrorCode::NotInvertible, format(a) + " is not a unit in " + describe());
  switch (kind_) {
    case RingKind::Integer: return a;
    case RingKind::Rational: return RingValue(mpq_class(1 / a.rational()));
    default: return RingValue(inv_mod(a.residue(), n_));
  }
}

int CoeffRing::compare(const RingValue& a, const RingValue& b) const {
  switch (kind_) {
    case RingKind::Integer: return cmp(a.integer(), b.integer());
    case RingKind::Rational: return cmp(a.rational(), b.rational());
    default: return a.residue() < b.residue() ? -1 : (a.residue() > b.residue() ? 1 : 0);
  }
}

std::vector<RingValue> CoeffRing::elements() const {
  size();
  std::vector<RingValue> out;
  out.reserve(static_cast<std::size_t>(n_));
  for (std::int64_t r = 0; r < n_; ++r) out.emplace_back(r);
  return out;
}

std::vector<RingValue> CoeffRing::units() const {
  std::vector<RingValue> out;
  for (auto& r : elements())
    if (is_unit(r)) out.push_back(r);
  return out;
}

std::vector<RingValue> CoeffRing::boolean_part() const {
  if (!is_finite()) return {zero(), one()};
  std::vector<RingValue> out;
  for (auto& a : elements())
    if (mul(a, a) == a) out.push_back(a);
  return out;
}

bool CoeffRing::has_unit_pair() const {
  switch (kind_) {
    case RingKind::Integer: return false;
    case RingKind::Rational: return true;
    default:
      // p1, p2 with p1 - p2 a unit exist iff some unit u has u - 1 a unit (u = p1/p2).
      for (std::int64_t u = 0; u < n_; ++u) {
        if (gcd64(u, n_) == 1 && gcd64(u - 1 < 0 ? u - 1 + n_ : u - 1, n_) == 1) return true;
      }
      return false;
  }
}

bool CoeffRing::in_ideal(const RingValue& r, const RingValue& g) const {
  switch (kind_) {
    case RingKind::Integer:
      if (g.integer() == 0) return r.integer() == 0;
      return mpz_divisible_p(r.integer().get_mpz_t(), g.integer().get_mpz_t()) != 0;
    case RingKind::Rational: return is_zero(g) ? is_zero(r) : true;
    case RingKind::PrimeField: return is_zero(g) ? is_zero(r) : true;
    case RingKind::ModN: {
      std::int64_t d = gcd64(g.residue(), n_);
      return r.residue() % d == 0;
    }
  }
  return false;
}

RingValue CoeffRing::ideal_sum(const RingValue& g1, const RingValue& g2) const {
  switch (kind_) {
    case RingKind::Integer: {
      mpz_class d;
      mpz_gcd(d.get_mpz_t(), g1.integer().get_mpz_t(), g2.integer().get_mpz_t());
      return RingValue(d);
    }
    case RingKind::ModN: {
      std::int64_t d = gcd64(gcd64(g1.residue(), g2.residue()), n_);
      return RingValue(d == n_ ? 0 : d);
    }
    default: return (is_zero(g1) && is_zero(g2)) ? zero() : one();
  }
}

RingValue CoeffRing::random(Rng& rng) const {
  switch (kind_) {
    case RingKind::Integer: {
      std::uniform_int_distribution<long> d(-9, 9);
      return RingValue(mpz_class(d(rng)));
    }
    case RingKind::Rational: {
      std::uniform_int_distribution<long> num(-9, 9), den(1, 9);
      mpq_class q(num(rng), den(rng));
      q.canonicalize();
      return RingValue(q);
    }
    default: {
      std::uniform_int_distribution<std::int64_t> d(0, n_ - 1);
      return RingValue(d(rng));
    }
  }
}

RingValue CoeffRing::random_unit(Rng& rng) const {
  if (kind_ == RingKind::Integer) return from_int(std::uniform_int_distribution<int>(0, 1)(rng) ? 1 : -1);
  for (;;) {
    RingValue r = random(rng);
    if (is_unit(r)) return r;
  }
}

RingValue CoeffRing::parse(std::string_view text) const {
  std::string s(text);
  while (!s.empty() && s.front() == ' ') s.erase(s.begin());
  while (!s.empty() && s.back() == ' ') s.pop_back();
  if (!s.empty() && s.front() == '+') s.erase(s.begin());
  mpq_class q;
  if (s.empty() || q.set_str(s, 10) != 0) throw Error(ErrorCode::ParseError, "bad ring value '" + s + "'");
  if (q.get_den() == 0) throw Error(ErrorCode::ParseError, "zero denominator in '" + s + "'");
  q.canonicalize();
  switch (kind_) {
    case RingKind::Rational: return RingValue(q);
    case RingKind::Integer:
      if (q.get_den() != 1) throw Error(ErrorCode::ParseError, "'" + s + "' is not an integer");
      return RingValue(mpz_class(q.get_num()));
    default: {
      RingValue num(reduce(q.get_num()));
      RingValue den(reduce(q.get_den()));
      if (!is_unit(den)) throw Error(ErrorCode::ParseError, "denominator of '" + s + "' is not a unit mod " + std::to_string(n_));
      return mul(num, inv(den));
    }
  }
}

std::string CoeffRing::format(const RingValue& a) const {
  switch (kind_) {
    case RingKind::Integer: return a.integer().get_str();
    case RingKind::Rational: return a.rational().get_str();
    default: return std::to_string(a.residue());
  }
}

std::string CoeffRing::describe() const {
  switch (kind_) {
    case RingKind::Integer: return "Z";
    case RingKind::Rational: return "Q";
    case RingKind::ModN: return "Z/" + std::to_string(n_);
    case RingKind::PrimeField: return "GF(" + std::to_string(n_) + ")";
  }
  return "?";
}

}  // namespace incalg
