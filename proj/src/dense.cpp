#include "incalg/dense.hpp"

#include "incalg/error.hpp"

namespace incalg {

Dense dense_identity(const CoeffRing& r, std::size_t n) {
  Dense d(n, r.zero());
  for (std::size_t i = 0; i < n; ++i) d.at(i, i) = r.one();
  return d;
}

Dense dense_mul(const CoeffRing& r, const Dense& x, const Dense& y) {
  Dense z(x.n, r.zero());
  for (std::size_t i = 0; i < x.n; ++i)
    for (std::size_t k = 0; k < x.n; ++k) {
      const RingValue& v = x.at(i, k);
      if (r.is_zero(v)) continue;
      for (std::size_t j = 0; j < x.n; ++j) r.add_mul(z.at(i, j), v, y.at(k, j));
    }
  return z;
}

Dense dense_add(const CoeffRing& r, const Dense& x, const Dense& y) {
  Dense z = x;
  for (std::size_t k = 0; k < z.a.size(); ++k) r.add_to(z.a[k], y.a[k]);
  return z;
}

Dense dense_scaled(const CoeffRing& r, const Dense& x, const RingValue& v) {
  Dense z = x;
  for (auto& e : z.a) e = r.mul(e, v);
  return z;
}

bool dense_equal(const Dense& x, const Dense& y) { return x.n == y.n && x.a == y.a; }

// Berkowitz: grow the leading principal submatrix one row at a time; each
// step multiplies by a Toeplitz matrix built from -a_rr and -R A^k C.
std::vector<RingValue> char_poly(const CoeffRing& r, const Dense& x) {
  const std::size_t n = x.n;
  std::vector<RingValue> poly{r.one()};
  for (std::size_t s = 0; s < n; ++s) {
    std::vector<RingValue> t(s + 2, r.zero());
    t[0] = r.one();
    t[1] = r.neg(x.at(s, s));
    std::vector<RingValue> col(s);
    for (std::size_t i = 0; i < s; ++i) col[i] = x.at(i, s);
    for (std::size_t k = 0; k < s; ++k) {
      RingValue dot = r.zero();
      for (std::size_t i = 0; i < s; ++i) r.add_mul(dot, x.at(s, i), col[i]);
      t[k + 2] = r.neg(dot);
      std::vector<RingValue> next(s, r.zero());
      for (std::size_t i = 0; i < s; ++i)
        for (std::size_t j = 0; j < s; ++j) r.add_mul(next[i], x.at(i, j), col[j]);
      col = std::move(next);
    }
    std::vector<RingValue> grown(s + 2, r.zero());
    for (std::size_t i = 0; i < s + 2; ++i)
      for (std::size_t j = 0; j <= std::min(i, s); ++j) r.add_mul(grown[i], t[i - j], poly[j]);
    poly = std::move(grown);
  }
  return poly;
}

RingValue det(const CoeffRing& r, const Dense& x) {
  auto p = char_poly(r, x);
  return x.n % 2 ? r.neg(p[x.n]) : p[x.n];
}

// Cayley-Hamilton: X (X^{n-1} + c1 X^{n-2} + ... + c_{n-1}) = -c_n.
Dense adjugate(const CoeffRing& r, const Dense& x) {
  const std::size_t n = x.n;
  if (n == 0) return x;
  auto p = char_poly(r, x);
  Dense acc = dense_identity(r, n);
  for (std::size_t k = 1; k < n; ++k) {
    acc = dense_mul(r, acc, x);
    for (std::size_t i = 0; i < n; ++i) r.add_to(acc.at(i, i), p[k]);
  }
  return n % 2 ? acc : dense_scaled(r, acc, r.neg(r.one()));
}

Dense dense_inverse(const CoeffRing& r, const Dense& x) {
  RingValue d = det(r, x);
  if (!r.is_unit(d)) throw Error(ErrorCode::NotInvertible, "block determinant " + r.format(d) + " is not a unit");
  return dense_scaled(r, adjugate(r, x), r.inv(d));
}

}  // namespace incalg
