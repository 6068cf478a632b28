#include "incalg/family.hpp"

#include <algorithm>
#include <deque>
#include <numeric>
#include <set>

#include "incalg/error.hpp"

namespace incalg {

namespace {

ElemSet range(Elem lo, Elem hi) {
  ElemSet out;
  for (Elem x = lo; x <= hi; ++x) out.push_back(x);
  return out;
}

ElemSet divisors(Elem n) {
  ElemSet small, large;
  for (Elem d = 1; d * d <= n; ++d) {
    if (n % d) continue;
    small.push_back(d);
    if (d * d != n) large.push_back(n / d);
  }
  small.insert(small.end(), large.rbegin(), large.rend());
  return small;
}

ElemSet merge(ElemSet a, const ElemSet& b) {
  a.insert(a.end(), b.begin(), b.end());
  std::sort(a.begin(), a.end());
  a.erase(std::unique(a.begin(), a.end()), a.end());
  return a;
}

bool includes(const ElemSet& big, const ElemSet& small) {
  return std::includes(big.begin(), big.end(), small.begin(), small.end());
}

ElemSet sorted(ElemSet s) {
  std::sort(s.begin(), s.end());
  s.erase(std::unique(s.begin(), s.end()), s.end());
  return s;
}

}  // namespace

ElemSet ProsetFamily::window_containing(const ElemSet& s) const {
  ElemSet want = sorted(s);
  for (std::size_t k = 0; k < 64; ++k) {
    ElemSet w = window(k);
    if (includes(w, want)) return w;
  }
  throw Error(ErrorCode::InvalidArgument, "no window of " + describe() + " contains the requested set");
}

ElemSet ProsetFamily::neighbors(Elem s) const {
  auto up = up_set(s);
  auto down = down_set(s);
  if (!up || !down)
    throw Error(ErrorCode::InfiniteNeighborhood, "N1(" + std::to_string(s) + ") is infinite in " + describe());
  return merge(*up, *down);
}

ElemSet ProsetFamily::neighborhood(Elem s, std::size_t k) const {
  ElemSet cur = interval(s, s);
  for (std::size_t step = 0; step < k; ++step) {
    ElemSet next = cur;
    for (Elem x : cur) next = merge(std::move(next), neighbors(x));
    if (next == cur) break;
    cur = std::move(next);
  }
  return cur;
}

ElemSet ProsetFamily::interval_closure(const ElemSet& s) const {
  ElemSet out = sorted(s);
  for (Elem x : s)
    for (Elem y : s)
      if (x != y && leq(x, y)) out = merge(std::move(out), interval(x, y));
  return out;
}

bool ProsetFamily::is_convex(const ElemSet& s0) const {
  ElemSet s = sorted(s0);
  for (Elem x : s)
    for (Elem y : s)
      if (x != y && leq(x, y) && !includes(s, interval(x, y))) return false;
  if (s.empty()) return true;
  std::vector<char> seen(s.size(), 0);
  std::deque<std::size_t> q{0};
  seen[0] = 1;
  std::size_t reached = 1;
  while (!q.empty()) {
    auto a = q.front();
    q.pop_front();
    for (std::size_t b = 0; b < s.size(); ++b)
      if (!seen[b] && comparable(s[a], s[b])) {
        seen[b] = 1;
        ++reached;
        q.push_back(b);
      }
  }
  return reached == s.size();
}

// A convex window is convex in the family, so the closure can be taken there.
ElemSet ProsetFamily::convex_closure(const ElemSet& s0) const {
  ElemSet s = sorted(s0);
  if (s.empty()) return s;
  ElemSet w = window_containing(s);
  Proset p = restrict(w);
  Subset idx;
  for (Elem x : s) idx.push_back(static_cast<std::size_t>(std::lower_bound(w.begin(), w.end(), x) - w.begin()));
  ElemSet out;
  for (auto i : p.convex_closure(idx)) out.push_back(w[i]);
  return out;
}

std::vector<ElemSet> ProsetFamily::gamma_windows(std::size_t count) const {
  std::vector<ElemSet> out;
  for (std::size_t k = 0; k < count; ++k) out.push_back(window(k));
  return out;
}

Proset ProsetFamily::restrict(const ElemSet& s0) const {
  ElemSet s = sorted(s0);
  std::vector<std::string> names;
  for (Elem x : s) {
    if (!contains(x)) throw Error(ErrorCode::InvalidArgument, std::to_string(x) + " is not in " + describe());
    names.push_back(std::to_string(x));
  }
  std::vector<std::pair<std::size_t, std::size_t>> gens;
  for (std::size_t a = 0; a < s.size(); ++a)
    for (std::size_t b = 0; b < s.size(); ++b)
      if (a != b && leq(s[a], s[b])) gens.emplace_back(a, b);
  return Proset::from_pairs(std::move(names), gens);
}

Elem ProsetFamily::parse_element(const std::string& text) const {
  Elem v = 0;
  std::size_t used = 0;
  try {
    v = std::stoll(text, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used != text.size() || text.empty()) throw Error(ErrorCode::ParseError, "bad element '" + text + "'");
  if (!contains(v)) throw Error(ErrorCode::InvalidArgument, text + " is not in " + describe());
  return v;
}

namespace {

class NFamily final : public ProsetFamily {
 public:
  std::string describe() const override { return "N"; }
  bool contains(Elem s) const override { return s >= 0; }
  bool leq(Elem a, Elem b) const override { return a <= b; }
  ElemSet interval(Elem a, Elem b) const override { return a <= b ? range(a, b) : ElemSet{}; }
  std::optional<ElemSet> up_set(Elem) const override { return std::nullopt; }
  std::optional<ElemSet> down_set(Elem s) const override { return range(0, s); }
  ElemSet window(std::size_t k) const override { return range(0, static_cast<Elem>(k)); }
  ElemSet window_containing(const ElemSet& s) const override {
    return range(0, s.empty() ? 0 : *std::max_element(s.begin(), s.end()));
  }
  bool is_z_like() const override { return true; }
};

class ZFamily final : public ProsetFamily {
 public:
  std::string describe() const override { return "Z"; }
  bool contains(Elem) const override { return true; }
  bool leq(Elem a, Elem b) const override { return a <= b; }
  ElemSet interval(Elem a, Elem b) const override { return a <= b ? range(a, b) : ElemSet{}; }
  std::optional<ElemSet> up_set(Elem) const override { return std::nullopt; }
  std::optional<ElemSet> down_set(Elem) const override { return std::nullopt; }
  ElemSet window(std::size_t k) const override { return range(-static_cast<Elem>(k), static_cast<Elem>(k)); }
  ElemSet window_containing(const ElemSet& s) const override {
    Elem m = 0;
    for (Elem x : s) m = std::max(m, x < 0 ? -x : x);
    return range(-m, m);
  }
  bool is_z_like() const override { return true; }
};

class ZigFamily final : public ProsetFamily {
 public:
  std::string describe() const override { return "Zig"; }
  bool contains(Elem) const override { return true; }
  static bool even(Elem a) { return a % 2 == 0; }
  bool leq(Elem a, Elem b) const override { return a == b || (even(a) && (b == a + 1 || b == a - 1)); }
  ElemSet interval(Elem a, Elem b) const override {
    if (!leq(a, b)) return {};
    if (a == b) return {a};
    return {std::min(a, b), std::max(a, b)};
  }
  std::optional<ElemSet> up_set(Elem s) const override {
    if (even(s)) return ElemSet{s - 1, s, s + 1};
    return ElemSet{s};
  }
  std::optional<ElemSet> down_set(Elem s) const override {
    if (even(s)) return ElemSet{s};
    return ElemSet{s - 1, s, s + 1};
  }
  ElemSet window(std::size_t k) const override { return range(-static_cast<Elem>(k), static_cast<Elem>(k)); }
  ElemSet window_containing(const ElemSet& s) const override {
    Elem m = 0;
    for (Elem x : s) m = std::max(m, x < 0 ? -x : x);
    return range(-m, m);
  }
  bool is_z_like() const override { return false; }
};

class NStarDivFamily final : public ProsetFamily {
 public:
  static constexpr Elem kLimit = Elem{1} << 40;
  std::string describe() const override { return "NStarDiv"; }
  bool contains(Elem s) const override { return s >= 1; }
  bool leq(Elem a, Elem b) const override { return b % a == 0; }
  ElemSet interval(Elem a, Elem b) const override {
    if (!leq(a, b)) return {};
    ElemSet out;
    for (Elem d : divisors(b / a)) out.push_back(a * d);
    return out;
  }
  std::optional<ElemSet> up_set(Elem) const override { return std::nullopt; }
  std::optional<ElemSet> down_set(Elem s) const override { return divisors(s); }
  // divisors of (k+1)!
  ElemSet window(std::size_t k) const override {
    Elem f = 1;
    for (Elem i = 2; i <= static_cast<Elem>(k) + 1; ++i) {
      if (f > kLimit / i) throw Error(ErrorCode::InvalidArgument, "NStarDiv window index too large");
      f *= i;
    }
    return divisors(f);
  }
  ElemSet window_containing(const ElemSet& s) const override {
    Elem l = 1;
    for (Elem x : s) {
      Elem g = std::gcd(l, x);
      if (l / g > kLimit / x) throw Error(ErrorCode::InvalidArgument, "NStarDiv window too large");
      l = l / g * x;
    }
    return divisors(l);
  }
  bool is_z_like() const override { return false; }
};

class FiniteFamily final : public ProsetFamily {
 public:
  explicit FiniteFamily(Proset p) : p_(std::move(p)) {}
  std::string describe() const override { return "finite(" + std::to_string(p_.size()) + ")"; }
  bool contains(Elem s) const override { return s >= 0 && static_cast<std::size_t>(s) < p_.size(); }
  bool leq(Elem a, Elem b) const override {
    return contains(a) && contains(b) && p_.leq(static_cast<std::size_t>(a), static_cast<std::size_t>(b));
  }
  ElemSet interval(Elem a, Elem b) const override {
    return convert(p_.interval(static_cast<std::size_t>(a), static_cast<std::size_t>(b)));
  }
  std::optional<ElemSet> up_set(Elem s) const override { return convert(p_.up_set(static_cast<std::size_t>(s))); }
  std::optional<ElemSet> down_set(Elem s) const override {
    return convert(p_.down_set(static_cast<std::size_t>(s)));
  }
  ElemSet window(std::size_t) const override { return range(0, static_cast<Elem>(p_.size()) - 1); }
  ElemSet window_containing(const ElemSet&) const override { return window(0); }
  bool is_z_like() const override { return p_.is_z_like(); }

 private:
  static ElemSet convert(const Subset& s) { return ElemSet(s.begin(), s.end()); }
  Proset p_;
};

class AugmentedFamily final : public ProsetFamily {
 public:
  AugmentedFamily(FamilyRef base, std::vector<ElemSet> sets) : base_(std::move(base)) {
    std::set<Elem> used;
    for (auto& s : sets) {
      ElemSet t = sorted(s);
      if (t.size() != s.size()) throw Error(ErrorCode::OverlappingAugmentation, "repeated element in a set");
      for (Elem x : t) {
        if (!base_->contains(x)) throw Error(ErrorCode::InvalidArgument, std::to_string(x) + " not in base");
        if (!used.insert(x).second)
          throw Error(ErrorCode::OverlappingAugmentation, "element " + std::to_string(x) + " in two sets");
      }
      if (!t.empty()) sets_.push_back(std::move(t));
    }
    for (auto& s : sets_) all_ = merge(std::move(all_), s);
    const std::size_t m = sets_.size();
    reach_.assign(m, std::vector<char>(m, 0));
    for (std::size_t i = 0; i < m; ++i)
      for (std::size_t j = 0; j < m; ++j) reach_[i][j] = (i == j) || base_step(i, j);
    for (std::size_t k = 0; k < m; ++k)
      for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = 0; j < m; ++j)
          if (reach_[i][k] && reach_[k][j]) reach_[i][j] = 1;
  }

  std::string describe() const override {
    std::string d = base_->describe() + "+{";
    for (std::size_t i = 0; i < sets_.size(); ++i) {
      if (i) d += ",";
      d += "{";
      for (std::size_t j = 0; j < sets_[i].size(); ++j) d += (j ? "," : "") + std::to_string(sets_[i][j]);
      d += "}";
    }
    return d + "}";
  }
  bool contains(Elem s) const override { return base_->contains(s); }

  bool leq(Elem a, Elem b) const override {
    if (base_->leq(a, b)) return true;
    for (std::size_t j : reachable_from(a))
      for (Elem q : sets_[j])
        if (base_->leq(q, b)) return true;
    return false;
  }

  ElemSet interval(Elem a, Elem b) const override {
    if (!leq(a, b)) return {};
    std::vector<Elem> lows{a}, highs{b};
    for (std::size_t j : reachable_from(a)) lows.insert(lows.end(), sets_[j].begin(), sets_[j].end());
    for (std::size_t k : reaching(b)) highs.insert(highs.end(), sets_[k].begin(), sets_[k].end());
    ElemSet cand;
    for (Elem lo : lows)
      for (Elem hi : highs)
        if (base_->leq(lo, hi)) cand = merge(std::move(cand), base_->interval(lo, hi));
    ElemSet out;
    for (Elem c : cand)
      if (leq(a, c) && leq(c, b)) out.push_back(c);
    return out;
  }

  std::optional<ElemSet> up_set(Elem s) const override {
    auto out = base_->up_set(s);
    if (!out) return std::nullopt;
    for (std::size_t j : reachable_from(s))
      for (Elem q : sets_[j]) {
        auto u = base_->up_set(q);
        if (!u) return std::nullopt;
        out = merge(std::move(*out), *u);
      }
    return out;
  }

  std::optional<ElemSet> down_set(Elem s) const override {
    auto out = base_->down_set(s);
    if (!out) return std::nullopt;
    for (std::size_t k : reaching(s))
      for (Elem t : sets_[k]) {
        auto d = base_->down_set(t);
        if (!d) return std::nullopt;
        out = merge(std::move(*out), *d);
      }
    return out;
  }

  ElemSet window(std::size_t k) const override { return window_containing(base_->window(k)); }
  ElemSet window_containing(const ElemSet& s) const override {
    return interval_closure(base_->window_containing(merge(sorted(s), all_)));
  }
  bool is_z_like() const override { return base_->is_z_like(); }

 private:
  bool base_step(std::size_t i, std::size_t j) const {
    for (Elem q : sets_[i])
      for (Elem t : sets_[j])
        if (base_->leq(q, t)) return true;
    return false;
  }
  std::vector<std::size_t> reachable_from(Elem a) const {
    std::vector<char> hit(sets_.size(), 0);
    for (std::size_t i = 0; i < sets_.size(); ++i) {
      bool enters = false;
      for (Elem t : sets_[i])
        if (base_->leq(a, t)) {
          enters = true;
          break;
        }
      if (enters)
        for (std::size_t j = 0; j < sets_.size(); ++j)
          if (reach_[i][j]) hit[j] = 1;
    }
    std::vector<std::size_t> out;
    for (std::size_t j = 0; j < sets_.size(); ++j)
      if (hit[j]) out.push_back(j);
    return out;
  }
  std::vector<std::size_t> reaching(Elem b) const {
    std::vector<char> hit(sets_.size(), 0);
    for (std::size_t j = 0; j < sets_.size(); ++j) {
      bool exits = false;
      for (Elem q : sets_[j])
        if (base_->leq(q, b)) {
          exits = true;
          break;
        }
      if (exits)
        for (std::size_t i = 0; i < sets_.size(); ++i)
          if (reach_[i][j]) hit[i] = 1;
    }
    std::vector<std::size_t> out;
    for (std::size_t i = 0; i < sets_.size(); ++i)
      if (hit[i]) out.push_back(i);
    return out;
  }

  FamilyRef base_;
  std::vector<ElemSet> sets_;
  ElemSet all_;
  std::vector<std::vector<char>> reach_;
};

class CustomFamily final : public ProsetFamily {
 public:
  explicit CustomFamily(CustomFamilySpec spec) : spec_(std::move(spec)) {
    if (!spec_.contains || !spec_.leq || !spec_.interval_candidates)
      throw Error(ErrorCode::InvalidArgument, "custom family needs contains, leq and interval_candidates");
  }
  std::string describe() const override { return spec_.name; }
  bool contains(Elem s) const override { return spec_.contains(s); }
  bool leq(Elem a, Elem b) const override { return spec_.leq(a, b); }
  ElemSet interval(Elem a, Elem b) const override {
    if (!leq(a, b)) return {};
    std::size_t seen = 0;
    ElemSet out;
    spec_.interval_candidates(a, b, [&](Elem c) {
      if (++seen > spec_.budget)
        throw Error(ErrorCode::LocalFinitenessBudgetExceeded,
                    "interval [" + std::to_string(a) + "," + std::to_string(b) + "] exceeded " +
                        std::to_string(spec_.budget) + " candidates");
      if (leq(a, c) && leq(c, b)) out.push_back(c);
    });
    return sorted(std::move(out));
  }
  std::optional<ElemSet> up_set(Elem) const override { return std::nullopt; }
  std::optional<ElemSet> down_set(Elem) const override { return std::nullopt; }
  ElemSet window(std::size_t k) const override {
    if (!spec_.window) throw Error(ErrorCode::InvalidArgument, spec_.name + " has no windows");
    return sorted(spec_.window(k));
  }
  bool is_z_like() const override { return false; }

 private:
  CustomFamilySpec spec_;
};

}  // namespace

FamilyRef family_n() {
  static const FamilyRef f = std::make_shared<NFamily>();
  return f;
}
FamilyRef family_z() {
  static const FamilyRef f = std::make_shared<ZFamily>();
  return f;
}
FamilyRef family_zig() {
  static const FamilyRef f = std::make_shared<ZigFamily>();
  return f;
}
FamilyRef family_nstar_div() {
  static const FamilyRef f = std::make_shared<NStarDivFamily>();
  return f;
}
FamilyRef family_finite(Proset p) { return std::make_shared<FiniteFamily>(std::move(p)); }
FamilyRef family_two_block(std::size_t m, std::size_t n) { return family_finite(Proset::two_block(m, n)); }
FamilyRef family_augmented(FamilyRef base, std::vector<ElemSet> sets) {
  return std::make_shared<AugmentedFamily>(std::move(base), std::move(sets));
}
FamilyRef family_custom(CustomFamilySpec spec) { return std::make_shared<CustomFamily>(std::move(spec)); }

}  // namespace incalg
