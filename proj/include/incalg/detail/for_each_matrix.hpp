#pragma once

namespace incalg {

template <class F>
void for_each_matrix(const ProsetRef& p, const CoeffRing& r, F&& f) {
  const auto rel = p->relation();
  const auto n = static_cast<std::int64_t>(r.size());
  std::vector<std::int64_t> digits(rel.size(), 0);
  for (;;) {
    IncMatrix m(p, r);
    for (std::size_t k = 0; k < rel.size(); ++k)
      if (digits[k]) m.set(rel[k].first, rel[k].second, RingValue(digits[k]));
    f(m);
    std::size_t k = 0;
    while (k < digits.size() && ++digits[k] == n) digits[k++] = 0;
    if (k == digits.size()) return;
  }
}

}  // namespace incalg
