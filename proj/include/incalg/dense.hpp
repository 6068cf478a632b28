#pragma once

#include <vector>

#include "incalg/ring.hpp"

namespace incalg {

// Small square matrices over a coefficient ring, used for class blocks.
struct Dense {
  std::size_t n = 0;
  std::vector<RingValue> a;

  Dense() = default;
  Dense(std::size_t size, const RingValue& fill) : n(size), a(size * size, fill) {}

  RingValue& at(std::size_t i, std::size_t j) { return a[i * n + j]; }
  const RingValue& at(std::size_t i, std::size_t j) const { return a[i * n + j]; }
};

Dense dense_identity(const CoeffRing& r, std::size_t n);
Dense dense_mul(const CoeffRing& r, const Dense& x, const Dense& y);
Dense dense_add(const CoeffRing& r, const Dense& x, const Dense& y);
Dense dense_scaled(const CoeffRing& r, const Dense& x, const RingValue& v);
bool dense_equal(const Dense& x, const Dense& y);

// Coefficients [1, c1, ..., cn] of det(tI - X), computed without division.
std::vector<RingValue> char_poly(const CoeffRing& r, const Dense& x);
RingValue det(const CoeffRing& r, const Dense& x);
Dense adjugate(const CoeffRing& r, const Dense& x);
Dense dense_inverse(const CoeffRing& r, const Dense& x);  // NotInvertible unless det is a unit

}  // namespace incalg
