#pragma once

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "inca/poset.hpp"
#include "inca/scalar.hpp"

namespace inca {

/// Element of the incidence algebra I(X,F): a sparse map from comparable
/// pairs (u,v), u <= v, to nonzero scalars. Zero entries are never stored, so
/// equality is structural. Immutable value type.
class IncidenceElement {
public:
  IncidenceElement(PosetPtr poset, Field field);  // zero

  static IncidenceElement basis(PosetPtr poset, Field field, int x, int y);
  static IncidenceElement identity(PosetPtr poset, Field field);

  const PosetPtr& poset() const { return poset_; }
  Field field() const { return field_; }

  /// Coefficient f(u,v); requires u <= v.
  Scalar at(int u, int v) const;
  IncidenceElement with(int u, int v, const Scalar& value) const;

  using EntryMap = std::map<std::pair<int, int>, Scalar>;
  const EntryMap& entries() const { return entries_; }

  bool is_zero() const { return entries_.empty(); }

  friend IncidenceElement operator+(const IncidenceElement& a, const IncidenceElement& b);
  friend IncidenceElement operator-(const IncidenceElement& a, const IncidenceElement& b);
  /// Convolution product: (fg)(x,y) = sum_{x<=z<=y} f(x,z) g(z,y).
  friend IncidenceElement operator*(const IncidenceElement& a, const IncidenceElement& b);
  IncidenceElement operator-() const;
  IncidenceElement scaled(const Scalar& r) const;

  /// f_D: restriction to reflexive pairs.
  IncidenceElement diagonal_part() const;
  /// f_U: restriction to strict pairs; f = f_D + f_U.
  IncidenceElement strict_part() const;

  friend bool operator==(const IncidenceElement& a, const IncidenceElement& b);
  friend bool operator!=(const IncidenceElement& a, const IncidenceElement& b) { return !(a == b); }
  /// Deterministic total order (entry-wise lexicographic), for sorting only.
  friend bool operator<(const IncidenceElement& a, const IncidenceElement& b);

  std::string to_string() const;

private:
  PosetPtr poset_;
  Field field_;
  EntryMap entries_;
};

void require_same_algebra(const IncidenceElement& a, const IncidenceElement& b);

/// Membership in the Jacobson radical J(I(X,F)): zero diagonal part.
bool in_radical(const IncidenceElement& f);
/// Membership in J(I(Y,F)) viewed inside I(X,F): support on strict pairs
/// within Y^2.
bool in_radical(const IncidenceElement& f, const std::vector<int>& subset);
/// Support inside Y^2_<= (the subspace I(Y,F) of I(X,F)).
bool supported_on(const IncidenceElement& f, const std::vector<int>& subset);

/// Inverse by triangular recursion on interval length; NotInvertible (with
/// the offending position) when some diagonal entry vanishes.
IncidenceElement invert(const IncidenceElement& f);
bool is_invertible(const IncidenceElement& f);

enum class IdempotentKind { not_idempotent, idempotent_non_primitive, primitive };

struct IdempotentClassification {
  IdempotentKind kind;
  std::optional<int> base;  // present iff primitive: f_D = e_base
};

/// f^2 != f -> not_idempotent; idempotent with diagonal equal to a single
/// e_x -> primitive (base x); any other idempotent -> non-primitive.
IdempotentClassification classify_idempotent(const IncidenceElement& f);

/// Invertible beta with beta * eps * beta^-1 = e_x for a primitive eps with
/// base x, via u = e_x eps + (delta - e_x)(delta - eps). The conjugation
/// identity is checked before returning.
IncidenceElement conjugator_to_standard(const IncidenceElement& eps);

}  // namespace inca
