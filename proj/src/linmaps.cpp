#include "inca/linmaps.hpp"

#include <algorithm>

namespace inca {

BasisOrder::BasisOrder(PosetPtr poset) : poset_(std::move(poset)) {
  if (!poset_ || poset_->size() == 0) fail(Errc::EmptyPoset, "basis of an empty poset");
  pairs_ = poset_->comparable_pairs();  // already lexicographic
  const int n = poset_->size();
  index_.assign(static_cast<std::size_t>(n) * static_cast<std::size_t>(n), -1);
  for (std::size_t k = 0; k < pairs_.size(); ++k)
    index_[static_cast<std::size_t>(pairs_[k].first * n + pairs_[k].second)] = static_cast<int>(k);
}

int BasisOrder::index_of(int u, int v) const {
  const int n = poset_->size();
  if (u < 0 || u >= n || v < 0 || v >= n) fail(Errc::UnknownElement, "pair index out of range");
  int k = index_[static_cast<std::size_t>(u * n + v)];
  if (k < 0)
    fail(Errc::NotComparable, poset_->name(u) + " <= " + poset_->name(v) + " does not hold");
  return k;
}

std::vector<Scalar> BasisOrder::coordinates(const IncidenceElement& f) const {
  if (f.poset() != poset_ && !(*f.poset() == *poset_))
    fail(Errc::MixedAlgebras, "element over a different poset");
  std::vector<Scalar> coords(static_cast<std::size_t>(dim()), Scalar::zero(f.field()));
  for (const auto& [pair, value] : f.entries())
    coords[static_cast<std::size_t>(index_of(pair.first, pair.second))] = value;
  return coords;
}

IncidenceElement BasisOrder::element(const std::vector<Scalar>& coords, Field field) const {
  if (static_cast<int>(coords.size()) != dim()) fail(Errc::DimensionMismatch, "coordinate size");
  IncidenceElement f(poset_, field);
  for (int k = 0; k < dim(); ++k)
    if (!coords[static_cast<std::size_t>(k)].is_zero())
      f = f.with(pairs_[static_cast<std::size_t>(k)].first, pairs_[static_cast<std::size_t>(k)].second,
                 coords[static_cast<std::size_t>(k)]);
  return f;
}

LinearMap::LinearMap(BasisOrder order, Field field)
    : order_(std::move(order)), field_(field),
      m_(static_cast<std::size_t>(order_.dim()) * static_cast<std::size_t>(order_.dim()),
         Scalar::zero(field)) {}

LinearMap LinearMap::identity(BasisOrder order, Field field) {
  LinearMap id(std::move(order), field);
  for (int k = 0; k < id.dim(); ++k) id.set(k, k, Scalar::one(field));
  return id;
}

void LinearMap::set(int row, int col, const Scalar& v) {
  if (v.field() != field_) fail(Errc::MixedFields, "matrix entry from a different field");
  m_[static_cast<std::size_t>(row * dim() + col)] = v;
}

std::vector<Scalar> LinearMap::apply_coords(const std::vector<Scalar>& x) const {
  const int d = dim();
  if (static_cast<int>(x.size()) != d) fail(Errc::DimensionMismatch, "coordinate size");
  std::vector<Scalar> y(static_cast<std::size_t>(d), Scalar::zero(field_));
  for (int j = 0; j < d; ++j) {
    if (x[static_cast<std::size_t>(j)].is_zero()) continue;
    for (int i = 0; i < d; ++i) {
      const Scalar& mij = at(i, j);
      if (!mij.is_zero()) y[static_cast<std::size_t>(i)] += mij * x[static_cast<std::size_t>(j)];
    }
  }
  return y;
}

IncidenceElement LinearMap::apply(const IncidenceElement& f) const {
  if (f.field() != field_) fail(Errc::MixedFields, "element over a different field");
  return order_.element(apply_coords(order_.coordinates(f)), field_);
}

LinearMap LinearMap::compose(const LinearMap& other) const {
  if (!(order_ == other.order_) || field_ != other.field_)
    fail(Errc::DimensionMismatch, "composing maps over different bases");
  const int d = dim();
  LinearMap out(order_, field_);
  for (int i = 0; i < d; ++i)
    for (int k = 0; k < d; ++k) {
      const Scalar& a = at(i, k);
      if (a.is_zero()) continue;
      for (int j = 0; j < d; ++j) {
        const Scalar& b = other.at(k, j);
        if (!b.is_zero()) out.m_[static_cast<std::size_t>(i * d + j)] += a * b;
      }
    }
  return out;
}

namespace {

// Row echelon over the field; returns rank. When inv != nullptr, carries an
// identity block along (Gauss-Jordan), producing the inverse for full rank.
int echelon(std::vector<Scalar>& a, int d, Field field, std::vector<Scalar>* inv) {
  auto idx = [d](int r, int c) { return static_cast<std::size_t>(r * d + c); };
  if (inv) {
    inv->assign(static_cast<std::size_t>(d) * static_cast<std::size_t>(d), Scalar::zero(field));
    for (int i = 0; i < d; ++i) (*inv)[idx(i, i)] = Scalar::one(field);
  }
  int rank = 0;
  for (int col = 0; col < d && rank < d; ++col) {
    int pivot = -1;
    for (int r = rank; r < d; ++r)
      if (!a[idx(r, col)].is_zero()) {
        pivot = r;
        break;
      }
    if (pivot < 0) continue;
    if (pivot != rank) {
      for (int c = 0; c < d; ++c) {
        std::swap(a[idx(pivot, c)], a[idx(rank, c)]);
        if (inv) std::swap((*inv)[idx(pivot, c)], (*inv)[idx(rank, c)]);
      }
    }
    Scalar piv_inv = a[idx(rank, col)].inverse();
    for (int c = 0; c < d; ++c) {
      a[idx(rank, c)] *= piv_inv;
      if (inv) (*inv)[idx(rank, c)] *= piv_inv;
    }
    for (int r = 0; r < d; ++r) {
      if (r == rank) continue;
      Scalar factor = a[idx(r, col)];
      if (factor.is_zero()) continue;
      for (int c = 0; c < d; ++c) {
        a[idx(r, c)] -= factor * a[idx(rank, c)];
        if (inv) (*inv)[idx(r, c)] -= factor * (*inv)[idx(rank, c)];
      }
    }
    ++rank;
  }
  return rank;
}

}  // namespace

bool LinearMap::is_bijective() const {
  std::vector<Scalar> a = m_;
  return echelon(a, dim(), field_, nullptr) == dim();
}

LinearMap LinearMap::inverse() const {
  std::vector<Scalar> a = m_;
  std::vector<Scalar> inv;
  if (echelon(a, dim(), field_, &inv) != dim())
    fail(Errc::Singular, "map is not bijective");
  LinearMap out(order_, field_);
  out.m_ = std::move(inv);
  return out;
}

LinearMap LinearMap::negated() const {
  LinearMap out(order_, field_);
  for (std::size_t i = 0; i < m_.size(); ++i) out.m_[i] = -m_[i];
  return out;
}

LinearMap LinearMap::scaled(const Scalar& r) const {
  LinearMap out(order_, field_);
  for (std::size_t i = 0; i < m_.size(); ++i) out.m_[i] = m_[i] * r;
  return out;
}

bool operator==(const LinearMap& a, const LinearMap& b) {
  return a.field_ == b.field_ && a.order_ == b.order_ && a.m_ == b.m_;
}

Cocycle Cocycle::validate(PosetPtr poset, Field field,
                          const std::map<std::pair<int, int>, Scalar>& values) {
  Cocycle s(std::move(poset), field);
  const Poset& p = *s.poset_;
  for (const auto& [pair, value] : values) {
    if (!p.leq(pair.first, pair.second))
      fail(Errc::NotComparable, "cocycle value on a non-comparable pair");
    if (value.field() != field) fail(Errc::MixedFields, "cocycle value from a different field");
    if (value.is_zero())
      fail(Errc::ZeroValue, "cocycle value at (" + p.name(pair.first) + "," + p.name(pair.second) + ") is zero");
  }
  for (int x = 0; x < p.size(); ++x) {
    auto it = values.find({x, x});
    if (it != values.end() && !it->second.is_one())
      fail(Errc::CocycleViolation, "reflexive value at " + p.name(x) + " must be 1");
    s.values_.emplace(std::make_pair(x, x), Scalar::one(field));
  }
  for (const auto& [u, v] : p.comparable_pairs()) {
    if (u == v) continue;
    auto it = values.find({u, v});
    if (it == values.end())
      fail(Errc::ZeroValue, "cocycle value at (" + p.name(u) + "," + p.name(v) + ") is missing");
    s.values_.emplace(std::make_pair(u, v), it->second);
  }
  for (int x = 0; x < p.size(); ++x)
    for (int y = 0; y < p.size(); ++y) {
      if (!p.leq(x, y)) continue;
      for (int z = 0; z < p.size(); ++z) {
        if (!p.leq(y, z)) continue;
        if (s.at(x, y) * s.at(y, z) != s.at(x, z))
          fail(Errc::CocycleViolation, "triple (" + p.name(x) + "," + p.name(y) + "," + p.name(z) + ")");
      }
    }
  return s;
}

Cocycle Cocycle::trivial(PosetPtr poset, Field field) {
  Cocycle s(std::move(poset), field);
  for (const auto& [u, v] : s.poset_->comparable_pairs())
    s.values_.emplace(std::make_pair(u, v), Scalar::one(field));
  return s;
}

Cocycle Cocycle::coboundary(PosetPtr poset, Field field, const std::vector<Scalar>& rho) {
  Cocycle s(std::move(poset), field);
  const Poset& p = *s.poset_;
  if (static_cast<int>(rho.size()) != p.size())
    fail(Errc::DimensionMismatch, "one value per element required");
  for (const Scalar& r : rho)
    if (r.is_zero()) fail(Errc::ZeroValue, "coboundary requires nonzero values");
  for (const auto& [u, v] : p.comparable_pairs())
    s.values_.emplace(std::make_pair(u, v),
                      rho[static_cast<std::size_t>(u)] * rho[static_cast<std::size_t>(v)].inverse());
  return s;
}

const Scalar& Cocycle::at(int u, int v) const {
  auto it = values_.find({u, v});
  if (it == values_.end()) fail(Errc::NotComparable, "cocycle queried on a non-comparable pair");
  return it->second;
}

LinearMap induced_automorphism(const BasisOrder& order, Field field, const PosetAutomorphism& lambda) {
  LinearMap out(order, field);
  for (int k = 0; k < order.dim(); ++k) {
    const auto& [u, v] = order.pair_at(k);
    out.set(order.index_of(lambda(u), lambda(v)), k, Scalar::one(field));
  }
  return out;
}

LinearMap multiplicative_automorphism(const BasisOrder& order, const Cocycle& sigma) {
  if (sigma.poset() != order.poset() && !(*sigma.poset() == *order.poset()))
    fail(Errc::MixedAlgebras, "cocycle over a different poset");
  LinearMap out(order, sigma.field());
  for (int k = 0; k < order.dim(); ++k) {
    const auto& [u, v] = order.pair_at(k);
    out.set(k, k, sigma.at(u, v));
  }
  return out;
}

LinearMap inner_automorphism(const BasisOrder& order, const IncidenceElement& beta) {
  const IncidenceElement beta_inv = invert(beta);  // NotInvertible when singular
  LinearMap out(order, beta.field());
  for (int k = 0; k < order.dim(); ++k) {
    const auto& [u, v] = order.pair_at(k);
    const auto image = beta * IncidenceElement::basis(order.poset(), beta.field(), u, v) * beta_inv;
    for (const auto& [pair, value] : image.entries())
      out.set(order.index_of(pair.first, pair.second), k, value);
  }
  return out;
}

const char* pm_verdict_name(PmVerdict v) {
  switch (v) {
    case PmVerdict::automorphism: return "automorphism";
    case PmVerdict::negative_of_automorphism: return "negative_of_automorphism";
    case PmVerdict::neither: return "neither";
  }
  return "neither";
}

namespace {

// phi(e_i) phi(e_j) == sign * phi(e_i e_j) on all basis pairs, and
// phi(delta) == sign * delta.
bool multiplicative_with_sign(const LinearMap& phi, bool negative) {
  const BasisOrder& order = phi.order();
  const Field field = phi.field();
  const PosetPtr& poset = order.poset();
  const int d = order.dim();

  std::vector<IncidenceElement> images;
  images.reserve(static_cast<std::size_t>(d));
  for (int k = 0; k < d; ++k) {
    const auto& [u, v] = order.pair_at(k);
    images.push_back(phi.apply(IncidenceElement::basis(poset, field, u, v)));
  }
  IncidenceElement delta = IncidenceElement::identity(poset, field);
  IncidenceElement delta_image = phi.apply(delta);
  if (delta_image != (negative ? -delta : delta)) return false;

  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) {
      const auto& [x, y] = order.pair_at(i);
      const auto& [u, v] = order.pair_at(j);
      IncidenceElement expected(poset, field);
      if (y == u) {
        auto img = phi.apply(IncidenceElement::basis(poset, field, x, v));
        expected = negative ? -img : img;
      }
      if (images[static_cast<std::size_t>(i)] * images[static_cast<std::size_t>(j)] != expected) return false;
    }
  return true;
}

}  // namespace

PmVerdict is_pm_automorphism(const LinearMap& phi) {
  if (!phi.is_bijective()) return PmVerdict::neither;
  if (multiplicative_with_sign(phi, false)) return PmVerdict::automorphism;
  if (phi.field().characteristic() != 2 && multiplicative_with_sign(phi, true))
    return PmVerdict::negative_of_automorphism;
  return PmVerdict::neither;
}

AutomorphismDecomposition decompose_automorphism(const LinearMap& phi) {
  if (is_pm_automorphism(phi) != PmVerdict::automorphism)
    fail(Errc::NotAutomorphism, "decomposition requires an algebra automorphism");
  const BasisOrder& order = phi.order();
  const PosetPtr& poset = order.poset();
  const Field field = phi.field();
  const int n = poset->size();

  // lambda(z) read off the diagonal of the primitive idempotent phi(e_z).
  std::vector<int> perm(static_cast<std::size_t>(n), -1);
  std::vector<Scalar> diag_scalars;
  std::vector<IncidenceElement> ez_images;
  for (int z = 0; z < n; ++z) {
    auto image = phi.apply(IncidenceElement::basis(poset, field, z, z));
    auto cls = classify_idempotent(image);
    if (cls.kind != IdempotentKind::primitive)
      fail(Errc::NotAutomorphism, "image of a standard idempotent is not primitive");
    perm[static_cast<std::size_t>(z)] = *cls.base;
    diag_scalars.push_back(image.at(*cls.base, *cls.base));
    ez_images.push_back(std::move(image));
  }
  PosetAutomorphism lambda(*poset, perm);

  // beta = sum_z e_{lambda(z)} phi(e_z) conjugates every phi(e_z) to
  // e_{lambda(z)} at once; its diagonal is identically 1, so it is a unit.
  IncidenceElement beta_norm(poset, field);
  for (int z = 0; z < n; ++z)
    beta_norm = beta_norm + IncidenceElement::basis(poset, field, perm[static_cast<std::size_t>(z)],
                                                    perm[static_cast<std::size_t>(z)]) *
                                ez_images[static_cast<std::size_t>(z)];
  const LinearMap normalizer = inner_automorphism(order, beta_norm);
  const LinearMap lambda_inv_map =
      induced_automorphism(order, field, lambda.inverse(*poset));
  // chi fixes every e_z, hence acts diagonally on strict basis elements.
  const LinearMap chi = lambda_inv_map.compose(normalizer.compose(phi));

  std::map<std::pair<int, int>, Scalar> sigma_values;
  for (int k = 0; k < order.dim(); ++k) {
    const auto& [u, v] = order.pair_at(k);
    if (u == v) continue;
    sigma_values.emplace(std::make_pair(u, v), chi.at(k, k));
  }
  Cocycle sigma = Cocycle::validate(poset, field, sigma_values);

  AutomorphismDecomposition result{invert(beta_norm), lambda, sigma, diag_scalars};
  if (recompose(result, order, field) != phi)
    fail(Errc::NotAutomorphism, "recomposition mismatch");
  return result;
}

LinearMap recompose(const AutomorphismDecomposition& d, const BasisOrder& order, Field field) {
  return inner_automorphism(order, d.beta)
      .compose(induced_automorphism(order, field, d.lambda))
      .compose(multiplicative_automorphism(order, d.sigma));
}

}  // namespace inca
