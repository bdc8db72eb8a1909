#include "inca/incidence.hpp"

#include <algorithm>

namespace inca {

IncidenceElement::IncidenceElement(PosetPtr poset, Field field)
    : poset_(std::move(poset)), field_(field) {
  if (!poset_ || poset_->size() == 0) fail(Errc::EmptyPoset, "algebra of an empty poset");
}

IncidenceElement IncidenceElement::basis(PosetPtr poset, Field field, int x, int y) {
  IncidenceElement e(std::move(poset), field);
  if (x < 0 || x >= e.poset_->size() || y < 0 || y >= e.poset_->size())
    fail(Errc::UnknownElement, "basis index out of range");
  if (!e.poset_->leq(x, y))
    fail(Errc::NotComparable, e.poset_->name(x) + " <= " + e.poset_->name(y) + " does not hold");
  e.entries_.emplace(std::make_pair(x, y), Scalar::one(field));
  return e;
}

IncidenceElement IncidenceElement::identity(PosetPtr poset, Field field) {
  IncidenceElement e(std::move(poset), field);
  for (int x = 0; x < e.poset_->size(); ++x)
    e.entries_.emplace(std::make_pair(x, x), Scalar::one(field));
  return e;
}

Scalar IncidenceElement::at(int u, int v) const {
  if (!poset_->leq(u, v))
    fail(Errc::NotComparable, poset_->name(u) + " <= " + poset_->name(v) + " does not hold");
  auto it = entries_.find({u, v});
  return it == entries_.end() ? Scalar::zero(field_) : it->second;
}

IncidenceElement IncidenceElement::with(int u, int v, const Scalar& value) const {
  if (!poset_->leq(u, v))
    fail(Errc::NotComparable, poset_->name(u) + " <= " + poset_->name(v) + " does not hold");
  if (value.field() != field_) fail(Errc::MixedFields, "entry from a different field");
  IncidenceElement out = *this;
  if (value.is_zero())
    out.entries_.erase({u, v});
  else
    out.entries_.insert_or_assign({u, v}, value);
  return out;
}

void require_same_algebra(const IncidenceElement& a, const IncidenceElement& b) {
  if (a.field() != b.field()) fail(Errc::MixedAlgebras, "elements over different fields");
  if (a.poset() != b.poset() && !(*a.poset() == *b.poset()))
    fail(Errc::MixedAlgebras, "elements over different posets");
}

IncidenceElement operator+(const IncidenceElement& a, const IncidenceElement& b) {
  require_same_algebra(a, b);
  IncidenceElement out = a;
  for (const auto& [pair, value] : b.entries_) {
    auto it = out.entries_.find(pair);
    if (it == out.entries_.end()) {
      out.entries_.emplace(pair, value);
    } else {
      it->second += value;
      if (it->second.is_zero()) out.entries_.erase(it);
    }
  }
  return out;
}

IncidenceElement operator-(const IncidenceElement& a, const IncidenceElement& b) {
  return a + (-b);
}

IncidenceElement IncidenceElement::operator-() const {
  IncidenceElement out(poset_, field_);
  for (const auto& [pair, value] : entries_) out.entries_.emplace(pair, -value);
  return out;
}

IncidenceElement IncidenceElement::scaled(const Scalar& r) const {
  if (r.field() != field_) fail(Errc::MixedFields, "scaling by a different field");
  IncidenceElement out(poset_, field_);
  if (r.is_zero()) return out;
  for (const auto& [pair, value] : entries_) {
    Scalar v = value * r;
    if (!v.is_zero()) out.entries_.emplace(pair, v);
  }
  return out;
}

IncidenceElement operator*(const IncidenceElement& a, const IncidenceElement& b) {
  require_same_algebra(a, b);
  IncidenceElement out(a.poset_, a.field_);
  for (const auto& [ap, av] : a.entries_) {
    const auto [x, z] = ap;
    // all entries of b with source z
    auto lo = b.entries_.lower_bound({z, 0});
    auto hi = b.entries_.lower_bound({z + 1, 0});
    for (auto it = lo; it != hi; ++it) {
      const int y = it->first.second;
      Scalar term = av * it->second;
      if (term.is_zero()) continue;
      auto [slot, inserted] = out.entries_.emplace(std::make_pair(x, y), term);
      if (!inserted) {
        slot->second += term;
        if (slot->second.is_zero()) out.entries_.erase(slot);
      }
    }
  }
  return out;
}

IncidenceElement IncidenceElement::diagonal_part() const {
  IncidenceElement out(poset_, field_);
  for (const auto& [pair, value] : entries_)
    if (pair.first == pair.second) out.entries_.emplace(pair, value);
  return out;
}

IncidenceElement IncidenceElement::strict_part() const {
  IncidenceElement out(poset_, field_);
  for (const auto& [pair, value] : entries_)
    if (pair.first != pair.second) out.entries_.emplace(pair, value);
  return out;
}

bool operator==(const IncidenceElement& a, const IncidenceElement& b) {
  if (a.field_ != b.field_) return false;
  if (a.poset_ != b.poset_ && !(*a.poset_ == *b.poset_)) return false;
  return a.entries_ == b.entries_;
}

bool operator<(const IncidenceElement& a, const IncidenceElement& b) {
  return std::lexicographical_compare(
      a.entries_.begin(), a.entries_.end(), b.entries_.begin(), b.entries_.end(),
      [](const auto& x, const auto& y) {
        if (x.first != y.first) return x.first < y.first;
        return x.second < y.second;
      });
}

std::string IncidenceElement::to_string() const {
  if (entries_.empty()) return "0";
  std::string out;
  for (const auto& [pair, value] : entries_) {
    if (!out.empty()) out += " + ";
    out += value.to_string() + "*e[" + poset_->name(pair.first) + "," + poset_->name(pair.second) + "]";
  }
  return out;
}

bool in_radical(const IncidenceElement& f) {
  return f.diagonal_part().is_zero();
}

namespace {
std::vector<char> subset_mask(const IncidenceElement& f, const std::vector<int>& subset) {
  std::vector<char> mask(static_cast<std::size_t>(f.poset()->size()), 0);
  for (int z : subset) {
    if (z < 0 || z >= f.poset()->size()) fail(Errc::UnknownElement, "subset index out of range");
    mask[static_cast<std::size_t>(z)] = 1;
  }
  return mask;
}
}  // namespace

bool in_radical(const IncidenceElement& f, const std::vector<int>& subset) {
  auto mask = subset_mask(f, subset);
  for (const auto& [pair, value] : f.entries()) {
    (void)value;
    if (pair.first == pair.second) return false;
    if (!mask[static_cast<std::size_t>(pair.first)] || !mask[static_cast<std::size_t>(pair.second)]) return false;
  }
  return true;
}

bool supported_on(const IncidenceElement& f, const std::vector<int>& subset) {
  auto mask = subset_mask(f, subset);
  for (const auto& [pair, value] : f.entries()) {
    (void)value;
    if (!mask[static_cast<std::size_t>(pair.first)] || !mask[static_cast<std::size_t>(pair.second)]) return false;
  }
  return true;
}

bool is_invertible(const IncidenceElement& f) {
  for (int x = 0; x < f.poset()->size(); ++x)
    if (f.at(x, x).is_zero()) return false;
  return true;
}

IncidenceElement invert(const IncidenceElement& f) {
  const Poset& p = *f.poset();
  for (int x = 0; x < p.size(); ++x)
    if (f.at(x, x).is_zero())
      fail(Errc::NotInvertible, "diagonal entry at " + p.name(x) + " is zero");

  // g(x,x) = f(x,x)^-1 ; g(x,y) = -f(x,x)^-1 sum_{x<z<=y} f(x,z) g(z,y),
  // filled in increasing interval length.
  auto pairs = p.comparable_pairs();
  std::stable_sort(pairs.begin(), pairs.end(), [&](const auto& a, const auto& b) {
    return p.interval_length(a.first, a.second) < p.interval_length(b.first, b.second);
  });
  IncidenceElement g(f.poset(), f.field());
  for (const auto& [x, y] : pairs) {
    if (x == y) {
      g = g.with(x, x, f.at(x, x).inverse());
      continue;
    }
    Scalar acc = Scalar::zero(f.field());
    for (int z = 0; z < p.size(); ++z)
      if (z != x && p.leq(x, z) && p.leq(z, y)) acc += f.at(x, z) * g.at(z, y);
    g = g.with(x, y, -(f.at(x, x).inverse() * acc));
  }
  return g;
}

IdempotentClassification classify_idempotent(const IncidenceElement& f) {
  if (f * f != f) return {IdempotentKind::not_idempotent, std::nullopt};
  int base = -1;
  int nonzero_diag = 0;
  for (const auto& [pair, value] : f.entries())
    if (pair.first == pair.second) {
      ++nonzero_diag;
      if (value.is_one()) base = pair.first;
    }
  if (nonzero_diag == 1 && base >= 0)
    return {IdempotentKind::primitive, base};
  return {IdempotentKind::idempotent_non_primitive, std::nullopt};
}

IncidenceElement conjugator_to_standard(const IncidenceElement& eps) {
  auto cls = classify_idempotent(eps);
  if (cls.kind != IdempotentKind::primitive)
    fail(Errc::NotPrimitive, "conjugator requires a primitive idempotent");
  const int x = *cls.base;
  const auto delta = IncidenceElement::identity(eps.poset(), eps.field());
  const auto ex = IncidenceElement::basis(eps.poset(), eps.field(), x, x);
  IncidenceElement u = ex * eps + (delta - ex) * (delta - eps);
  IncidenceElement conjugated = u * eps * invert(u);
  if (conjugated != ex)
    fail(Errc::NotPrimitive, "conjugation identity failed");
  return u;
}

}  // namespace inca
