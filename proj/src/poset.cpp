#include "inca/poset.hpp"

#include <algorithm>
#include <array>
#include <map>
#include <numeric>

namespace inca {

PosetAutomorphism::PosetAutomorphism(const Poset& p, std::vector<int> perm)
    : perm_(std::move(perm)) {
  if (static_cast<int>(perm_.size()) != p.size())
    fail(Errc::DimensionMismatch, "permutation size mismatch");
  if (!p.is_order_preserving_bijection(perm_))
    fail(Errc::NotAutomorphism, "permutation does not preserve the order");
}

PosetAutomorphism PosetAutomorphism::inverse(const Poset& p) const {
  std::vector<int> inv(perm_.size());
  for (std::size_t i = 0; i < perm_.size(); ++i) inv[static_cast<std::size_t>(perm_[i])] = static_cast<int>(i);
  return PosetAutomorphism(p, std::move(inv));
}

PosetAutomorphism PosetAutomorphism::compose(const Poset& p, const PosetAutomorphism& other) const {
  std::vector<int> out(perm_.size());
  for (std::size_t i = 0; i < perm_.size(); ++i) out[i] = perm_[static_cast<std::size_t>(other.perm_[i])];
  return PosetAutomorphism(p, std::move(out));
}

bool PosetAutomorphism::is_identity() const {
  for (std::size_t i = 0; i < perm_.size(); ++i)
    if (perm_[i] != static_cast<int>(i)) return false;
  return true;
}

bool Poset::is_order_preserving_bijection(const std::vector<int>& perm) const {
  if (static_cast<int>(perm.size()) != n_) return false;
  std::vector<char> seen(static_cast<std::size_t>(n_), 0);
  for (int v : perm) {
    if (v < 0 || v >= n_ || seen[static_cast<std::size_t>(v)]) return false;
    seen[static_cast<std::size_t>(v)] = 1;
  }
  // Finiteness would make one direction enough; both are checked anyway.
  for (int u = 0; u < n_; ++u)
    for (int v = 0; v < n_; ++v)
      if (leq(u, v) != leq(perm[static_cast<std::size_t>(u)], perm[static_cast<std::size_t>(v)]))
        return false;
  return true;
}

Poset Poset::from_covers(std::vector<std::string> elements,
                         const std::vector<std::pair<std::string, std::string>>& covers) {
  Poset p;
  p.names_ = std::move(elements);
  p.n_ = static_cast<int>(p.names_.size());
  std::map<std::string, int> index;
  for (int i = 0; i < p.n_; ++i) {
    if (!index.emplace(p.names_[static_cast<std::size_t>(i)], i).second)
      fail(Errc::DuplicateElement, p.names_[static_cast<std::size_t>(i)]);
  }
  const std::size_t nn = static_cast<std::size_t>(p.n_) * static_cast<std::size_t>(p.n_);
  p.leq_.assign(nn, 0);
  for (int i = 0; i < p.n_; ++i) p.leq_[static_cast<std::size_t>(i * p.n_ + i)] = 1;
  for (const auto& [a, b] : covers) {
    auto ia = index.find(a), ib = index.find(b);
    if (ia == index.end()) fail(Errc::UnknownElement, a);
    if (ib == index.end()) fail(Errc::UnknownElement, b);
    p.leq_[static_cast<std::size_t>(ia->second * p.n_ + ib->second)] = 1;
  }
  // Warshall closure.
  for (int k = 0; k < p.n_; ++k)
    for (int i = 0; i < p.n_; ++i)
      if (p.leq(i, k))
        for (int j = 0; j < p.n_; ++j)
          if (p.leq(k, j)) p.leq_[static_cast<std::size_t>(i * p.n_ + j)] = 1;
  for (int i = 0; i < p.n_; ++i)
    for (int j = 0; j < p.n_; ++j)
      if (i != j && p.leq(i, j) && p.leq(j, i))
        fail(Errc::CycleDetected,
             p.names_[static_cast<std::size_t>(i)] + " and " + p.names_[static_cast<std::size_t>(j)] +
                 " are mutually comparable");
  // Transitive reduction: u covered by v iff u<v with nothing strictly between.
  for (int u = 0; u < p.n_; ++u)
    for (int v = 0; v < p.n_; ++v) {
      if (!p.less(u, v)) continue;
      bool direct = true;
      for (int z = 0; z < p.n_ && direct; ++z)
        if (z != u && z != v && p.leq(u, z) && p.leq(z, v)) direct = false;
      if (direct) p.covers_.emplace_back(u, v);
    }
  return p;
}

int Poset::index_of(const std::string& name) const {
  for (int i = 0; i < n_; ++i)
    if (names_[static_cast<std::size_t>(i)] == name) return i;
  fail(Errc::UnknownElement, name);
}

int Poset::interval_length(int x, int y) const {
  if (x < 0 || x >= n_ || y < 0 || y >= n_) fail(Errc::UnknownElement, "index out of range");
  if (!leq(x, y))
    fail(Errc::NotComparable, name(x) + " <= " + name(y) + " does not hold");
  // Longest strict chain from x to y inside [x,y].
  std::vector<int> best(static_cast<std::size_t>(n_), -1);
  best[static_cast<std::size_t>(x)] = 0;
  // Process interval members in an order compatible with <=: by number of
  // elements below within the interval.
  std::vector<int> members;
  for (int z = 0; z < n_; ++z)
    if (leq(x, z) && leq(z, y)) members.push_back(z);
  std::vector<int> down(static_cast<std::size_t>(n_), 0);
  for (int z : members)
    for (int w : members)
      if (leq(w, z)) ++down[static_cast<std::size_t>(z)];
  std::stable_sort(members.begin(), members.end(), [&](int a, int b) {
    return down[static_cast<std::size_t>(a)] < down[static_cast<std::size_t>(b)];
  });
  for (int z : members) {
    if (best[static_cast<std::size_t>(z)] < 0) continue;
    for (int w : members)
      if (less(z, w))
        best[static_cast<std::size_t>(w)] = std::max(best[static_cast<std::size_t>(w)], best[static_cast<std::size_t>(z)] + 1);
  }
  return best[static_cast<std::size_t>(y)];
}

int Poset::length() const {
  int best = 0;
  for (int x = 0; x < n_; ++x)
    for (int y = 0; y < n_; ++y)
      if (leq(x, y)) best = std::max(best, interval_length(x, y));
  return best;
}

bool Poset::is_connected() const {
  if (n_ == 0) fail(Errc::EmptyPoset, "connectivity of the empty poset");
  std::vector<char> visited(static_cast<std::size_t>(n_), 0);
  std::vector<int> stack{0};
  visited[0] = 1;
  while (!stack.empty()) {
    int u = stack.back();
    stack.pop_back();
    for (const auto& [a, b] : covers_) {
      int next = -1;
      if (a == u && !visited[static_cast<std::size_t>(b)]) next = b;
      if (b == u && !visited[static_cast<std::size_t>(a)]) next = a;
      if (next >= 0) {
        visited[static_cast<std::size_t>(next)] = 1;
        stack.push_back(next);
      }
    }
  }
  return std::all_of(visited.begin(), visited.end(), [](char c) { return c != 0; });
}

int Poset::comparable_pair_count() const {
  int count = 0;
  for (std::uint8_t bit : leq_) count += bit;
  return count;
}

std::vector<std::pair<int, int>> Poset::comparable_pairs() const {
  std::vector<std::pair<int, int>> pairs;
  pairs.reserve(static_cast<std::size_t>(comparable_pair_count()));
  for (int u = 0; u < n_; ++u)
    for (int v = 0; v < n_; ++v)
      if (leq(u, v)) pairs.emplace_back(u, v);
  return pairs;
}

Poset Poset::delete_element(int x) const {
  if (x < 0 || x >= n_) fail(Errc::UnknownElement, "index out of range");
  if (n_ <= 1) fail(Errc::WouldBeEmpty, "cannot delete the last element");
  Poset q;
  q.n_ = n_ - 1;
  std::vector<int> keep;
  for (int i = 0; i < n_; ++i)
    if (i != x) {
      keep.push_back(i);
      q.names_.push_back(names_[static_cast<std::size_t>(i)]);
    }
  q.leq_.assign(static_cast<std::size_t>(q.n_) * static_cast<std::size_t>(q.n_), 0);
  for (int i = 0; i < q.n_; ++i)
    for (int j = 0; j < q.n_; ++j)
      q.leq_[static_cast<std::size_t>(i * q.n_ + j)] = leq(keep[static_cast<std::size_t>(i)], keep[static_cast<std::size_t>(j)]) ? 1 : 0;
  for (int u = 0; u < q.n_; ++u)
    for (int v = 0; v < q.n_; ++v) {
      if (u == v || !q.leq(u, v)) continue;
      bool direct = true;
      for (int z = 0; z < q.n_ && direct; ++z)
        if (z != u && z != v && q.leq(u, z) && q.leq(z, v)) direct = false;
      if (direct) q.covers_.emplace_back(u, v);
    }
  return q;
}

namespace {

struct AutoSearch {
  const Poset& p;
  int n;
  std::vector<std::array<int, 3>> invariant;  // (cover in-degree, cover out-degree, height)
  std::vector<int> image;
  std::vector<char> used;
  std::vector<std::vector<int>>* out;
  int want_x = -1, want_y = -1;  // stop at first perm with image[want_x]==want_y
  bool found = false;
  std::vector<int> found_perm;

  explicit AutoSearch(const Poset& poset) : p(poset), n(poset.size()) {
    invariant.resize(static_cast<std::size_t>(n), {0, 0, 0});
    for (const auto& [a, b] : p.cover_pairs()) {
      invariant[static_cast<std::size_t>(b)][0]++;
      invariant[static_cast<std::size_t>(a)][1]++;
    }
    for (int z = 0; z < n; ++z) {
      int h = 0;
      for (int w = 0; w < n; ++w)
        if (p.leq(w, z)) h = std::max(h, p.interval_length(w, z));
      invariant[static_cast<std::size_t>(z)][2] = h;
    }
    image.assign(static_cast<std::size_t>(n), -1);
    used.assign(static_cast<std::size_t>(n), 0);
  }

  bool consistent(int u, int v) const {
    if (invariant[static_cast<std::size_t>(u)] != invariant[static_cast<std::size_t>(v)]) return false;
    for (int w = 0; w < n; ++w) {
      int iw = image[static_cast<std::size_t>(w)];
      if (iw < 0) continue;
      if (p.leq(u, w) != p.leq(v, iw)) return false;
      if (p.leq(w, u) != p.leq(iw, v)) return false;
    }
    return true;
  }

  void run(int depth) {
    if (found) return;
    if (depth == n) {
      if (want_x >= 0) {
        if (image[static_cast<std::size_t>(want_x)] == want_y) {
          found = true;
          found_perm = image;
        }
      } else {
        out->push_back(image);
      }
      return;
    }
    for (int v = 0; v < n; ++v) {
      if (used[static_cast<std::size_t>(v)]) continue;
      if (want_x == depth && v != want_y) continue;
      if (!consistent(depth, v)) continue;
      image[static_cast<std::size_t>(depth)] = v;
      used[static_cast<std::size_t>(v)] = 1;
      run(depth + 1);
      image[static_cast<std::size_t>(depth)] = -1;
      used[static_cast<std::size_t>(v)] = 0;
      if (found) return;
    }
  }
};

}  // namespace

std::vector<PosetAutomorphism> Poset::automorphisms() const {
  std::vector<std::vector<int>> perms;
  AutoSearch search(*this);
  search.out = &perms;
  search.run(0);
  std::vector<PosetAutomorphism> result;
  result.reserve(perms.size());
  for (auto& perm : perms) result.emplace_back(*this, std::move(perm));
  return result;
}

std::optional<PosetAutomorphism> Poset::same_orbit(int x, int y) const {
  if (x < 0 || x >= n_ || y < 0 || y >= n_) fail(Errc::UnknownElement, "index out of range");
  AutoSearch search(*this);
  search.want_x = x;
  search.want_y = y;
  search.run(0);
  if (!search.found) return std::nullopt;
  return PosetAutomorphism(*this, std::move(search.found_perm));
}

std::vector<std::vector<int>> Poset::orbits() const {
  std::vector<int> root(static_cast<std::size_t>(n_));
  std::iota(root.begin(), root.end(), 0);
  auto find = [&](int a) {
    while (root[static_cast<std::size_t>(a)] != a) a = root[static_cast<std::size_t>(a)] = root[static_cast<std::size_t>(root[static_cast<std::size_t>(a)])];
    return a;
  };
  for (const auto& g : automorphisms())
    for (int z = 0; z < n_; ++z) {
      int a = find(z), b = find(g(z));
      if (a != b) root[static_cast<std::size_t>(std::max(a, b))] = std::min(a, b);
    }
  std::vector<std::vector<int>> classes(static_cast<std::size_t>(n_));
  for (int z = 0; z < n_; ++z) classes[static_cast<std::size_t>(find(z))].push_back(z);
  std::vector<std::vector<int>> out;
  for (auto& c : classes)
    if (!c.empty()) out.push_back(std::move(c));
  return out;
}

}  // namespace inca
