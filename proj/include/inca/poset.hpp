#pragma once

#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "inca/error.hpp"

namespace inca {

class Poset;
using PosetPtr = std::shared_ptr<const Poset>;

/// Permutation of element indices that preserves the order relation in both
/// directions. Interpreted relative to the poset it was built against.
class PosetAutomorphism {
public:
  PosetAutomorphism(const Poset& p, std::vector<int> perm);  // validates
  int operator()(int i) const { return perm_[static_cast<std::size_t>(i)]; }
  const std::vector<int>& perm() const { return perm_; }
  PosetAutomorphism inverse(const Poset& p) const;
  /// this after other: z -> this(other(z)).
  PosetAutomorphism compose(const Poset& p, const PosetAutomorphism& other) const;
  bool is_identity() const;
  friend bool operator==(const PosetAutomorphism& a, const PosetAutomorphism& b) {
    return a.perm_ == b.perm_;
  }

private:
  std::vector<int> perm_;
};

/// Finite poset over named elements. The full reflexive order relation is
/// stored; covers are the transitive reduction. Immutable after construction.
class Poset {
public:
  /// Builds from a cover list: the relation is the reflexive-transitive
  /// closure. Rejects duplicate names, unknown names and cycles.
  static Poset from_covers(std::vector<std::string> elements,
                           const std::vector<std::pair<std::string, std::string>>& covers);

  int size() const { return n_; }
  const std::vector<std::string>& elements() const { return names_; }
  const std::string& name(int i) const { return names_[static_cast<std::size_t>(i)]; }
  int index_of(const std::string& name) const;  // UnknownElement

  bool leq(int u, int v) const { return leq_[static_cast<std::size_t>(u * n_ + v)] != 0; }
  bool less(int u, int v) const { return u != v && leq(u, v); }
  const std::vector<std::pair<int, int>>& cover_pairs() const { return covers_; }

  /// Maximal chain length within [x,y]; requires x <= y.
  int interval_length(int x, int y) const;
  /// Maximal chain length of the whole poset.
  int length() const;
  /// True iff the undirected cover graph is connected. EmptyPoset on |X|=0.
  bool is_connected() const;

  /// |X^2_<=|, the dimension of the incidence algebra.
  int comparable_pair_count() const;
  /// All pairs (u,v) with u <= v, lexicographic by (source index, target
  /// index). This ordering is the canonical basis order everywhere.
  std::vector<std::pair<int, int>> comparable_pairs() const;

  Poset delete_element(int x) const;  // WouldBeEmpty on |X|=1

  /// The full automorphism group, backtracking with degree/height pruning.
  /// Identity comes first; order is deterministic (lexicographic on images).
  std::vector<PosetAutomorphism> automorphisms() const;
  /// Some automorphism mapping x to y (first in enumeration order), if any.
  std::optional<PosetAutomorphism> same_orbit(int x, int y) const;
  /// Orbit partition of the automorphism group action, each orbit sorted.
  std::vector<std::vector<int>> orbits() const;

  bool is_order_preserving_bijection(const std::vector<int>& perm) const;

  friend bool operator==(const Poset& a, const Poset& b) {
    return a.names_ == b.names_ && a.leq_ == b.leq_;
  }

private:
  Poset() = default;
  int n_ = 0;
  std::vector<std::string> names_;
  std::vector<std::uint8_t> leq_;  // n*n row-major
  std::vector<std::pair<int, int>> covers_;
};

inline PosetPtr make_poset(std::vector<std::string> elements,
                           const std::vector<std::pair<std::string, std::string>>& covers) {
  return std::make_shared<const Poset>(Poset::from_covers(std::move(elements), covers));
}

}  // namespace inca
