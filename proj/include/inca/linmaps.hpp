#pragma once

#include <map>
#include <string>
#include <utility>
#include <vector>

#include "inca/incidence.hpp"
#include "inca/poset.hpp"
#include "inca/scalar.hpp"

namespace inca {

/// Canonical coordinates for I(X,F): all comparable pairs sorted
/// lexicographically by (source index, target index). The element order of
/// the poset fixes this ordering bit-exactly.
class BasisOrder {
public:
  explicit BasisOrder(PosetPtr poset);

  const PosetPtr& poset() const { return poset_; }
  int dim() const { return static_cast<int>(pairs_.size()); }
  const std::pair<int, int>& pair_at(int k) const { return pairs_[static_cast<std::size_t>(k)]; }
  int index_of(int u, int v) const;  // NotComparable
  const std::vector<std::pair<int, int>>& pairs() const { return pairs_; }

  std::vector<Scalar> coordinates(const IncidenceElement& f) const;
  IncidenceElement element(const std::vector<Scalar>& coords, Field field) const;

  friend bool operator==(const BasisOrder& a, const BasisOrder& b) {
    return a.poset_ == b.poset_ || *a.poset_ == *b.poset_;
  }

private:
  PosetPtr poset_;
  std::vector<std::pair<int, int>> pairs_;
  std::vector<int> index_;  // n*n -> pair index or -1
};

/// Linear endomorphism of I(X,F) as a d x d matrix over the canonical basis;
/// column j holds the coordinates of the image of the j-th basis element.
class LinearMap {
public:
  LinearMap(BasisOrder order, Field field);  // zero map
  static LinearMap identity(BasisOrder order, Field field);

  const BasisOrder& order() const { return order_; }
  Field field() const { return field_; }
  int dim() const { return order_.dim(); }

  const Scalar& at(int row, int col) const { return m_[static_cast<std::size_t>(row * dim() + col)]; }
  void set(int row, int col, const Scalar& v);

  IncidenceElement apply(const IncidenceElement& f) const;
  std::vector<Scalar> apply_coords(const std::vector<Scalar>& x) const;
  /// this . other (apply other first).
  LinearMap compose(const LinearMap& other) const;
  bool is_bijective() const;
  LinearMap inverse() const;  // Singular
  LinearMap negated() const;
  LinearMap scaled(const Scalar& r) const;

  friend bool operator==(const LinearMap& a, const LinearMap& b);
  friend bool operator!=(const LinearMap& a, const LinearMap& b) { return !(a == b); }

private:
  BasisOrder order_;
  Field field_;
  std::vector<Scalar> m_;  // row-major d*d
};

/// Multiplicative cocycle: nonzero values on comparable pairs with
/// s(x,x) = 1 and s(x,y) s(y,z) = s(x,z) for all x <= y <= z.
class Cocycle {
public:
  /// Validates the cocycle identity over all chains x <= y <= z; reports the
  /// first offending triple. Reflexive values default to 1 and must be 1 when
  /// supplied. Missing or zero strict values raise ZeroValue.
  static Cocycle validate(PosetPtr poset, Field field,
                          const std::map<std::pair<int, int>, Scalar>& values);
  static Cocycle trivial(PosetPtr poset, Field field);
  /// s(u,v) = rho(u) * rho(v)^-1 for nonzero rho; always a valid cocycle.
  static Cocycle coboundary(PosetPtr poset, Field field, const std::vector<Scalar>& rho);

  const PosetPtr& poset() const { return poset_; }
  Field field() const { return field_; }
  const Scalar& at(int u, int v) const;
  const std::map<std::pair<int, int>, Scalar>& values() const { return values_; }

private:
  Cocycle(PosetPtr poset, Field field) : poset_(std::move(poset)), field_(field) {}
  PosetPtr poset_;
  Field field_;
  std::map<std::pair<int, int>, Scalar> values_;
};

/// e_xy -> e_{lambda(x) lambda(y)} as a permutation matrix.
LinearMap induced_automorphism(const BasisOrder& order, Field field, const PosetAutomorphism& lambda);
/// e_xy -> sigma(x,y) e_xy as a diagonal matrix.
LinearMap multiplicative_automorphism(const BasisOrder& order, const Cocycle& sigma);
/// f -> beta f beta^-1 for invertible beta.
LinearMap inner_automorphism(const BasisOrder& order, const IncidenceElement& beta);

enum class PmVerdict { automorphism, negative_of_automorphism, neither };
const char* pm_verdict_name(PmVerdict v);

/// Bijectivity plus multiplicativity of phi or -phi on all basis pairs
/// (linearity makes the basis check sufficient). Over characteristic 2 the
/// two signed verdicts coincide and "automorphism" is reported.
PmVerdict is_pm_automorphism(const LinearMap& phi);

struct AutomorphismDecomposition {
  IncidenceElement beta;
  PosetAutomorphism lambda;
  Cocycle sigma;
  std::vector<Scalar> diagonal_scalars;  // coefficient of e_{lambda(z)} in phi(e_z)
};

/// Splits an algebra automorphism as inner(beta) . induced(lambda) .
/// multiplicative(sigma); only the recomposition equality is contracted
/// (inner and multiplicative factors are not unique). The equality is checked
/// before returning.
AutomorphismDecomposition decompose_automorphism(const LinearMap& phi);

LinearMap recompose(const AutomorphismDecomposition& d, const BasisOrder& order, Field field);

}  // namespace inca
