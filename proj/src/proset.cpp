#include "incalg/proset.hpp"

#include <algorithm>
#include <deque>
#include <numeric>
#include <queue>
#include <set>

#include "incalg/error.hpp"

namespace incalg {

void Proset::init(std::vector<std::string> names) {
  names_ = std::move(names);
  index_.clear();
  for (std::size_t i = 0; i < names_.size(); ++i) {
    if (!index_.emplace(names_[i], i).second)
      throw Error(ErrorCode::InvalidArgument, "duplicate element '" + names_[i] + "'");
  }
  words_ = (names_.size() + 63) / 64;
  bits_.assign(names_.size() * words_, 0);
  for (std::size_t i = 0; i < names_.size(); ++i) set(i, i);
}

void Proset::close_and_derive() {
  const std::size_t n = size();
  for (std::size_t k = 0; k < n; ++k) {
    const std::uint64_t* row_k = &bits_[k * words_];
    for (std::size_t i = 0; i < n; ++i) {
      if (i == k || !leq(i, k)) continue;
      std::uint64_t* row_i = &bits_[i * words_];
      for (std::size_t w = 0; w < words_; ++w) row_i[w] |= row_k[w];
    }
  }

  classes_.clear();
  class_of_.assign(n, SIZE_MAX);
  for (std::size_t i = 0; i < n; ++i) {
    if (class_of_[i] != SIZE_MAX) continue;
    Subset c;
    for (std::size_t j = i; j < n; ++j)
      if (equivalent(i, j)) {
        c.push_back(j);
        class_of_[j] = classes_.size();
      }
    classes_.push_back(std::move(c));
  }

  components_.clear();
  component_of_.assign(n, SIZE_MAX);
  for (std::size_t i = 0; i < n; ++i) {
    if (component_of_[i] != SIZE_MAX) continue;
    Subset comp;
    std::deque<std::size_t> queue{i};
    component_of_[i] = components_.size();
    while (!queue.empty()) {
      std::size_t x = queue.front();
      queue.pop_front();
      comp.push_back(x);
      for (std::size_t y = 0; y < n; ++y) {
        if (component_of_[y] == SIZE_MAX && comparable(x, y)) {
          component_of_[y] = components_.size();
          queue.push_back(y);
        }
      }
    }
    std::sort(comp.begin(), comp.end());
    components_.push_back(std::move(comp));
  }

  relation_size_ = 0;
  for (auto w : bits_) relation_size_ += static_cast<std::size_t>(__builtin_popcountll(w));
}

Proset Proset::from_pairs(std::vector<std::string> elements,
                          const std::vector<std::pair<std::size_t, std::size_t>>& generators) {
  Proset p;
  p.init(std::move(elements));
  for (auto [a, b] : generators) {
    if (a >= p.size() || b >= p.size()) throw Error(ErrorCode::InvalidArgument, "relation index out of range");
    p.set(a, b);
  }
  p.close_and_derive();
  return p;
}

Proset Proset::from_relations(std::vector<std::string> elements,
                              const std::vector<std::pair<std::string, std::string>>& generators) {
  Proset p;
  p.init(std::move(elements));
  for (auto& [a, b] : generators) p.set(p.index(a), p.index(b));
  p.close_and_derive();
  return p;
}

namespace {
std::vector<std::string> numeric_names(std::size_t n) {
  std::vector<std::string> names;
  for (std::size_t i = 0; i < n; ++i) names.push_back(std::to_string(i));
  return names;
}
}  // namespace

Proset Proset::chain(std::size_t n) {
  std::vector<std::pair<std::size_t, std::size_t>> gens;
  for (std::size_t i = 0; i + 1 < n; ++i) gens.emplace_back(i, i + 1);
  return from_pairs(numeric_names(n), gens);
}

Proset Proset::antichain(std::size_t n) { return from_pairs(numeric_names(n), {}); }

Proset Proset::full(std::size_t n) { return two_block(n, 0); }

Proset Proset::two_block(std::size_t m, std::size_t n) {
  if (m == 0) throw Error(ErrorCode::InvalidArgument, "TwoBlock needs m >= 1");
  std::vector<std::pair<std::size_t, std::size_t>> gens;
  auto block = [&](std::size_t lo, std::size_t len) {
    for (std::size_t i = 0; i + 1 < len; ++i) {
      gens.emplace_back(lo + i, lo + i + 1);
      gens.emplace_back(lo + i + 1, lo + i);
    }
  };
  block(0, n);
  block(n, m);
  if (n > 0) gens.emplace_back(0, n);
  return from_pairs(numeric_names(m + n), gens);
}

Proset Proset::disjoint_union(const std::vector<Proset>& parts) {
  std::set<std::string> seen;
  bool unique = true;
  for (auto& p : parts)
    for (auto& nm : p.names())
      if (!seen.insert(nm).second) unique = false;
  std::vector<std::string> names;
  std::vector<std::pair<std::size_t, std::size_t>> gens;
  std::size_t offset = 0;
  for (std::size_t k = 0; k < parts.size(); ++k) {
    const Proset& p = parts[k];
    for (auto& nm : p.names()) names.push_back(unique ? nm : std::to_string(k) + ":" + nm);
    for (auto [a, b] : p.strict_relation()) gens.emplace_back(offset + a, offset + b);
    offset += p.size();
  }
  return from_pairs(std::move(names), gens);
}

std::optional<std::size_t> Proset::find(const std::string& name) const {
  auto it = index_.find(name);
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

std::size_t Proset::index(const std::string& name) const {
  auto i = find(name);
  if (!i) throw Error(ErrorCode::InvalidArgument, "unknown element '" + name + "'");
  return *i;
}

Subset Proset::interval(std::size_t i, std::size_t j) const {
  Subset out;
  if (!leq(i, j)) return out;
  for (std::size_t k = 0; k < size(); ++k)
    if (leq(i, k) && leq(k, j)) out.push_back(k);
  return out;
}

Subset Proset::up_set(std::size_t s) const {
  Subset out;
  for (std::size_t k = 0; k < size(); ++k)
    if (leq(s, k)) out.push_back(k);
  return out;
}

Subset Proset::down_set(std::size_t s) const {
  Subset out;
  for (std::size_t k = 0; k < size(); ++k)
    if (leq(k, s)) out.push_back(k);
  return out;
}

Subset Proset::neighborhood(std::size_t s, std::size_t k) const {
  std::vector<char> in(size(), 0);
  for (auto x : classes_[class_of_[s]]) in[x] = 1;
  for (std::size_t step = 0; step < k; ++step) {
    std::vector<char> next = in;
    for (std::size_t x = 0; x < size(); ++x) {
      if (!in[x]) continue;
      for (std::size_t y = 0; y < size(); ++y)
        if (comparable(x, y)) next[y] = 1;
    }
    if (next == in) break;
    in = std::move(next);
  }
  Subset out;
  for (std::size_t x = 0; x < size(); ++x)
    if (in[x]) out.push_back(x);
  return out;
}

std::vector<std::size_t> Proset::class_linear_extension() const {
  const std::size_t c = classes_.size();
  std::vector<std::size_t> indeg(c, 0);
  for (std::size_t a = 0; a < c; ++a)
    for (std::size_t b = 0; b < c; ++b)
      if (a != b && class_leq(a, b)) ++indeg[b];
  std::priority_queue<std::size_t, std::vector<std::size_t>, std::greater<>> ready;
  for (std::size_t a = 0; a < c; ++a)
    if (indeg[a] == 0) ready.push(a);
  std::vector<std::size_t> order;
  while (!ready.empty()) {
    std::size_t a = ready.top();
    ready.pop();
    order.push_back(a);
    for (std::size_t b = 0; b < c; ++b)
      if (a != b && class_leq(a, b) && --indeg[b] == 0) ready.push(b);
  }
  return order;
}

bool Proset::is_interval_closed(const Subset& s) const {
  std::vector<char> in(size(), 0);
  for (auto x : s) in[x] = 1;
  for (auto x : s)
    for (auto y : s) {
      if (!leq(x, y)) continue;
      for (std::size_t z = 0; z < size(); ++z)
        if (!in[z] && leq(x, z) && leq(z, y)) return false;
    }
  return true;
}

bool Proset::is_connected(const Subset& s) const {
  if (s.empty()) return true;
  std::vector<char> seen(s.size(), 0);
  std::deque<std::size_t> queue{0};
  seen[0] = 1;
  std::size_t reached = 1;
  while (!queue.empty()) {
    std::size_t a = queue.front();
    queue.pop_front();
    for (std::size_t b = 0; b < s.size(); ++b) {
      if (!seen[b] && comparable(s[a], s[b])) {
        seen[b] = 1;
        ++reached;
        queue.push_back(b);
      }
    }
  }
  return reached == s.size();
}

Subset Proset::interval_closure(const Subset& s) const {
  std::vector<char> in(size(), 0);
  for (auto x : s) in[x] = 1;
  for (auto x : s)
    for (auto y : s)
      if (leq(x, y))
        for (std::size_t z = 0; z < size(); ++z)
          if (leq(x, z) && leq(z, y)) in[z] = 1;
  Subset out;
  for (std::size_t z = 0; z < size(); ++z)
    if (in[z]) out.push_back(z);
  return out;
}

// Interval closure, then repeatedly join the piece holding the smallest
// element to its nearest other piece by a shortest comparability path.
Subset Proset::convex_closure(const Subset& s) const {
  if (s.empty()) return {};
  for (auto x : s)
    if (component_of_[x] != component_of_[s[0]])
      throw Error(ErrorCode::NotConnected, "subset meets several components");
  Subset cur = interval_closure(s);
  for (;;) {
    if (is_connected(cur)) return cur;
    std::vector<char> in(size(), 0);
    for (auto x : cur) in[x] = 1;
    // piece of cur containing cur[0]
    std::vector<char> piece(size(), 0);
    std::deque<std::size_t> q{cur[0]};
    piece[cur[0]] = 1;
    while (!q.empty()) {
      auto x = q.front();
      q.pop_front();
      for (auto y : cur)
        if (!piece[y] && comparable(x, y)) {
          piece[y] = 1;
          q.push_back(y);
        }
    }
    // multi-source BFS from the piece through the whole proset
    std::vector<std::size_t> parent(size(), SIZE_MAX);
    std::deque<std::size_t> bfs;
    for (std::size_t x = 0; x < size(); ++x)
      if (piece[x]) {
        parent[x] = x;
        bfs.push_back(x);
      }
    std::size_t hit = SIZE_MAX;
    while (!bfs.empty() && hit == SIZE_MAX) {
      auto x = bfs.front();
      bfs.pop_front();
      for (std::size_t y = 0; y < size(); ++y) {
        if (parent[y] != SIZE_MAX || !comparable(x, y)) continue;
        parent[y] = x;
        if (in[y]) {
          hit = y;
          break;
        }
        bfs.push_back(y);
      }
    }
    if (hit == SIZE_MAX) throw Error(ErrorCode::NotConnected, "no connecting path");
    Subset grown = cur;
    for (std::size_t y = parent[hit]; !piece[y]; y = parent[y]) grown.push_back(y);
    std::sort(grown.begin(), grown.end());
    cur = interval_closure(grown);
  }
}

std::vector<Subset> Proset::gamma_enumerate(std::size_t bound) const {
  std::vector<Subset> out;
  std::set<Subset> level;
  for (std::size_t i = 0; i < size(); ++i) level.insert(Subset{i});
  for (std::size_t k = 1; k <= bound && !level.empty(); ++k) {
    for (auto& s : level)
      if (is_interval_closed(s)) out.push_back(s);
    if (k == bound) break;
    std::set<Subset> next;
    for (auto& s : level) {
      std::vector<char> in(size(), 0);
      for (auto x : s) in[x] = 1;
      for (std::size_t v = 0; v < size(); ++v) {
        if (in[v]) continue;
        bool adjacent = false;
        for (auto x : s)
          if (comparable(x, v)) {
            adjacent = true;
            break;
          }
        if (!adjacent) continue;
        Subset t = s;
        t.insert(std::upper_bound(t.begin(), t.end(), v), v);
        next.insert(std::move(t));
      }
    }
    level = std::move(next);
  }
  return out;
}

Proset Proset::augment(const std::vector<Subset>& sets) const {
  std::vector<char> used(size(), 0);
  std::vector<std::pair<std::size_t, std::size_t>> gens = strict_relation();
  for (auto& s : sets) {
    for (auto x : s) {
      if (x >= size()) throw Error(ErrorCode::InvalidArgument, "augmentation index out of range");
      if (used[x]) throw Error(ErrorCode::OverlappingAugmentation, "element '" + names_[x] + "' appears twice");
      used[x] = 1;
    }
    for (std::size_t i = 0; i + 1 < s.size(); ++i) {
      gens.emplace_back(s[i], s[i + 1]);
      gens.emplace_back(s[i + 1], s[i]);
    }
  }
  return from_pairs(names_, gens);
}

Proset Proset::opposite() const {
  std::vector<std::pair<std::size_t, std::size_t>> gens;
  for (auto [a, b] : strict_relation()) gens.emplace_back(b, a);
  return from_pairs(names_, gens);
}

Proset Proset::induced(const Subset& subset) const {
  std::vector<std::string> names;
  for (auto x : subset) names.push_back(names_.at(x));
  std::vector<std::pair<std::size_t, std::size_t>> gens;
  for (std::size_t a = 0; a < subset.size(); ++a)
    for (std::size_t b = 0; b < subset.size(); ++b)
      if (a != b && leq(subset[a], subset[b])) gens.emplace_back(a, b);
  return from_pairs(std::move(names), gens);
}

bool Proset::is_z_like() const {
  for (std::size_t i = 0; i < size(); ++i)
    for (std::size_t j = 0; j < size(); ++j)
      if (!comparable(i, j)) return false;
  return true;
}

bool Proset::is_n_bounded(std::size_t n) const {
  for (std::size_t i = 0; i < size(); ++i) {
    std::size_t count = 0;
    for (std::size_t j = 0; j < size(); ++j)
      if (comparable(i, j)) ++count;
    if (count > n) return false;
  }
  return true;
}

bool Proset::is_poset() const { return classes_.size() == size(); }

std::vector<std::pair<std::size_t, std::size_t>> Proset::relation() const {
  std::vector<std::pair<std::size_t, std::size_t>> out;
  for (std::size_t i = 0; i < size(); ++i)
    for (std::size_t j = 0; j < size(); ++j)
      if (leq(i, j)) out.emplace_back(i, j);
  return out;
}

std::vector<std::pair<std::size_t, std::size_t>> Proset::strict_relation() const {
  std::vector<std::pair<std::size_t, std::size_t>> out;
  for (std::size_t i = 0; i < size(); ++i)
    for (std::size_t j = 0; j < size(); ++j)
      if (i != j && leq(i, j)) out.emplace_back(i, j);
  return out;
}

namespace {

struct Signature {
  std::size_t up, down, cls;
  auto operator<=>(const Signature&) const = default;
};

bool extend(const Proset& a, const Proset& b, const std::vector<std::size_t>& order,
            const std::vector<Signature>& sa, const std::vector<Signature>& sb, std::size_t pos,
            std::vector<std::size_t>& map, std::vector<char>& used) {
  if (pos == order.size()) return true;
  std::size_t x = order[pos];
  for (std::size_t y = 0; y < b.size(); ++y) {
    if (used[y] || sa[x] != sb[y]) continue;
    bool ok = true;
    for (std::size_t p = 0; p < pos && ok; ++p) {
      std::size_t x2 = order[p], y2 = map[x2];
      ok = a.leq(x, x2) == b.leq(y, y2) && a.leq(x2, x) == b.leq(y2, y);
    }
    if (!ok) continue;
    map[x] = y;
    used[y] = 1;
    if (extend(a, b, order, sa, sb, pos + 1, map, used)) return true;
    used[y] = 0;
  }
  return false;
}

std::vector<Signature> signatures(const Proset& p) {
  std::vector<Signature> out;
  for (std::size_t i = 0; i < p.size(); ++i)
    out.push_back({p.up_set(i).size(), p.down_set(i).size(), p.classes()[p.class_of(i)].size()});
  return out;
}

}  // namespace

std::optional<std::vector<std::size_t>> poset_isomorphic(const Proset& a, const Proset& b) {
  if (a.size() != b.size() || a.relation_size() != b.relation_size()) return std::nullopt;
  auto sa = signatures(a), sb = signatures(b);
  auto ma = sa, mb = sb;
  std::sort(ma.begin(), ma.end());
  std::sort(mb.begin(), mb.end());
  if (ma != mb) return std::nullopt;
  // place elements connected to already placed ones first
  std::vector<std::size_t> order;
  std::vector<char> placed(a.size(), 0);
  for (std::size_t start = 0; start < a.size(); ++start) {
    if (placed[start]) continue;
    std::deque<std::size_t> q{start};
    placed[start] = 1;
    while (!q.empty()) {
      auto x = q.front();
      q.pop_front();
      order.push_back(x);
      for (std::size_t y = 0; y < a.size(); ++y)
        if (!placed[y] && a.comparable(x, y)) {
          placed[y] = 1;
          q.push_back(y);
        }
    }
  }
  std::vector<std::size_t> map(a.size(), SIZE_MAX);
  std::vector<char> used(b.size(), 0);
  if (!extend(a, b, order, sa, sb, 0, map, used)) return std::nullopt;
  return map;
}

std::vector<Proset> prosets_up_to_iso(std::size_t n, bool posets_only) {
  if (n > 5) throw Error(ErrorCode::InvalidArgument, "isomorphism-type enumeration supports n <= 5");
  std::vector<std::pair<std::size_t, std::size_t>> pairs;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      if (i != j) pairs.emplace_back(i, j);
  std::vector<std::vector<std::size_t>> perms;
  std::vector<std::size_t> perm(n);
  std::iota(perm.begin(), perm.end(), 0);
  do perms.push_back(perm);
  while (std::next_permutation(perm.begin(), perm.end()));
  // pair index lookup
  std::vector<std::size_t> pair_index(n * n, 0);
  for (std::size_t p = 0; p < pairs.size(); ++p) pair_index[pairs[p].first * n + pairs[p].second] = p;

  std::set<std::uint32_t> codes;
  const std::uint32_t limit = std::uint32_t{1} << pairs.size();
  for (std::uint32_t mask = 0; mask < limit; ++mask) {
    std::uint32_t rows[5] = {0, 0, 0, 0, 0};
    for (std::size_t i = 0; i < n; ++i) rows[i] = 1U << i;
    for (std::size_t p = 0; p < pairs.size(); ++p)
      if (mask >> p & 1U) rows[pairs[p].first] |= 1U << pairs[p].second;
    bool ok = true;
    for (std::size_t i = 0; i < n && ok; ++i)
      for (std::size_t j = 0; j < n && ok; ++j) {
        if (!(rows[i] >> j & 1U)) continue;
        if ((rows[j] & ~rows[i]) != 0) ok = false;
        if (posets_only && i != j && (rows[j] >> i & 1U)) ok = false;
      }
    if (!ok) continue;
    std::uint32_t best = UINT32_MAX;
    for (auto& pi : perms) {
      std::uint32_t code = 0;
      for (std::size_t p = 0; p < pairs.size(); ++p)
        if (mask >> p & 1U) code |= 1U << pair_index[pi[pairs[p].first] * n + pi[pairs[p].second]];
      best = std::min(best, code);
    }
    codes.insert(best);
  }
  std::vector<Proset> out;
  for (auto code : codes) {
    std::vector<std::pair<std::size_t, std::size_t>> gens;
    for (std::size_t p = 0; p < pairs.size(); ++p)
      if (code >> p & 1U) gens.push_back(pairs[p]);
    out.push_back(Proset::from_pairs(numeric_names(n), gens));
  }
  return out;
}

}  // namespace incalg
