#include "inca/preserver.hpp"

#include <algorithm>

#include "inca/dense.hpp"
#include "inca/kernels.hpp"
#include "inca/rng.hpp"

namespace inca {

namespace {

constexpr std::uint64_t kExhaustiveCap = 1ull << 24;
constexpr std::uint64_t kDecideExhaustiveCap = 1ull << 20;
constexpr std::uint64_t kDefaultSampleCount = 10000;
constexpr std::uint64_t kDefaultSampleSeed = 1;

std::uint64_t space_size_or_zero(std::uint32_t p, int d, std::uint64_t cap) {
  std::uint64_t size = 1;
  for (int k = 0; k < d; ++k) {
    if (size > cap / p) return 0;
    size *= p;
  }
  return size;
}

}  // namespace

PreserverProblem PreserverProblem::make(PosetPtr poset, Field field, IncidenceElement epsilon,
                                        IncidenceElement eta) {
  if (!poset->is_connected()) fail(Errc::NotConnected, "the poset must be connected");
  auto ce = classify_idempotent(epsilon);
  auto cn = classify_idempotent(eta);
  if (ce.kind != IdempotentKind::primitive)
    fail(Errc::NotPrimitive, "epsilon is not a primitive idempotent");
  if (cn.kind != IdempotentKind::primitive)
    fail(Errc::NotPrimitive, "eta is not a primitive idempotent");
  if (epsilon.field() != field || eta.field() != field)
    fail(Errc::MixedFields, "idempotents not over the requested field");
  return PreserverProblem{std::move(poset), field, std::move(epsilon), std::move(eta),
                          *ce.base, *cn.base};
}

std::optional<std::uint64_t> RightFactors::solution_count() const {
  if (!consistent) return 0;
  Field field = particular.field();
  if (field.is_rational()) {
    if (kernel.empty()) return 1;
    return std::nullopt;
  }
  std::uint64_t count = 1;
  const std::uint64_t p = field.modulus();
  for (std::size_t i = 0; i < kernel.size(); ++i) {
    if (count > (1ull << 62) / p) return std::nullopt;
    count *= p;
  }
  return count;
}

std::vector<IncidenceElement> RightFactors::enumerate(std::uint64_t limit) const {
  std::vector<IncidenceElement> out;
  if (!consistent) return out;
  auto count = solution_count();
  if (!count) fail(Errc::InfiniteField, "infinitely many solutions over the rationals");
  if (*count > limit) fail(Errc::TooLargeForExhaustive, "solution space has " + std::to_string(*count) + " points");
  const Field field = particular.field();
  const std::uint32_t p = field.is_prime_field() ? field.modulus() : 1;
  std::vector<std::uint32_t> t(kernel.size(), 0);
  IncidenceElement g = particular;
  for (std::uint64_t s = 0; s < *count; ++s) {
    if (s != 0) {
      std::size_t pos = 0;
      for (;;) {
        t[pos]++;
        g = g + kernel[pos];
        if (t[pos] == p) {
          // wrapping p-1 -> 0 is one more addition of the basis vector mod p
          t[pos] = 0;
          ++pos;
        } else {
          break;
        }
      }
    }
    out.push_back(g);
  }
  return out;
}

RightFactors right_factors(const IncidenceElement& f, const IncidenceElement& a) {
  require_same_algebra(f, a);
  const Poset& poset = *f.poset();
  const Field field = f.field();
  const Scalar zero = Scalar::zero(field);
  RightFactors out(f.poset(), field);
  out.consistent = true;

  std::vector<int> below(static_cast<std::size_t>(poset.size()), 0);
  for (int z = 0; z < poset.size(); ++z)
    for (int w = 0; w < poset.size(); ++w)
      if (poset.leq(w, z)) ++below[static_cast<std::size_t>(z)];

  for (int y = 0; y < poset.size(); ++y) {
    std::vector<int> members;
    for (int z = 0; z < poset.size(); ++z)
      if (poset.leq(z, y)) members.push_back(z);
    std::stable_sort(members.begin(), members.end(), [&](int l, int r) {
      return below[static_cast<std::size_t>(l)] > below[static_cast<std::size_t>(r)];
    });
    const int m = static_cast<int>(members.size());
    const int w = m + 1;
    std::vector<Scalar> mat(static_cast<std::size_t>(m) * static_cast<std::size_t>(w), zero);
    for (int i = 0; i < m; ++i) {
      for (int j = 0; j < m; ++j)
        if (poset.leq(members[static_cast<std::size_t>(i)], members[static_cast<std::size_t>(j)]))
          mat[static_cast<std::size_t>(i * w + j)] =
              f.at(members[static_cast<std::size_t>(i)], members[static_cast<std::size_t>(j)]);
      mat[static_cast<std::size_t>(i * w + m)] = a.at(members[static_cast<std::size_t>(i)], y);
    }

    std::vector<int> pivot_of_col(static_cast<std::size_t>(m), -1);
    int rank = 0;
    for (int c = 0; c < m; ++c) {
      int pivot = -1;
      for (int r = rank; r < m; ++r)
        if (!mat[static_cast<std::size_t>(r * w + c)].is_zero()) {
          pivot = r;
          break;
        }
      if (pivot < 0) continue;
      if (pivot != rank)
        for (int c2 = 0; c2 <= m; ++c2)
          std::swap(mat[static_cast<std::size_t>(pivot * w + c2)], mat[static_cast<std::size_t>(rank * w + c2)]);
      Scalar inv = mat[static_cast<std::size_t>(rank * w + c)].inverse();
      for (int c2 = c; c2 <= m; ++c2) mat[static_cast<std::size_t>(rank * w + c2)] *= inv;
      for (int r = 0; r < m; ++r) {
        if (r == rank) continue;
        Scalar factor = mat[static_cast<std::size_t>(r * w + c)];
        if (factor.is_zero()) continue;
        for (int c2 = c; c2 <= m; ++c2)
          mat[static_cast<std::size_t>(r * w + c2)] -= factor * mat[static_cast<std::size_t>(rank * w + c2)];
      }
      pivot_of_col[static_cast<std::size_t>(c)] = rank;
      ++rank;
    }
    for (int r = rank; r < m; ++r)
      if (!mat[static_cast<std::size_t>(r * w + m)].is_zero()) {
        out.consistent = false;
        out.kernel.clear();
        out.particular = IncidenceElement(f.poset(), field);
        return out;
      }
    for (int c = 0; c < m; ++c) {
      int r = pivot_of_col[static_cast<std::size_t>(c)];
      if (r >= 0 && !mat[static_cast<std::size_t>(r * w + m)].is_zero())
        out.particular = out.particular.with(members[static_cast<std::size_t>(c)], y,
                                             mat[static_cast<std::size_t>(r * w + m)]);
    }
    for (int c = 0; c < m; ++c) {
      if (pivot_of_col[static_cast<std::size_t>(c)] >= 0) continue;
      IncidenceElement basis(f.poset(), field);
      basis = basis.with(members[static_cast<std::size_t>(c)], y, Scalar::one(field));
      for (int c2 = 0; c2 < m; ++c2) {
        int r = pivot_of_col[static_cast<std::size_t>(c2)];
        if (r >= 0 && !mat[static_cast<std::size_t>(r * w + c)].is_zero())
          basis = basis.with(members[static_cast<std::size_t>(c2)], y,
                             -mat[static_cast<std::size_t>(r * w + c)]);
      }
      out.kernel.push_back(std::move(basis));
    }
  }
  return out;
}

namespace {

void require_map_matches(const LinearMap& phi, const IncidenceElement& eps,
                         const IncidenceElement& eta) {
  require_same_algebra(eps, eta);
  if (phi.field() != eps.field()) fail(Errc::MixedFields, "map and idempotents over different fields");
  if (phi.order().poset() != eps.poset() && !(*phi.order().poset() == *eps.poset()))
    fail(Errc::MixedAlgebras, "map and idempotents over different posets");
}

VerificationReport verify_exhaustive(const LinearMap& phi, const IncidenceElement& eps,
                                     const IncidenceElement& eta, int jobs) {
  const Field field = eps.field();
  if (!field.is_prime_field())
    fail(Errc::TooLargeForExhaustive, "exhaustive verification needs a finite prime field");
  const std::uint32_t p = field.modulus();
  const int d = phi.dim();
  if (space_size_or_zero(p, d, kExhaustiveCap) == 0)
    fail(Errc::TooLargeForExhaustive,
         "p^d exceeds 2^24 for p=" + std::to_string(p) + ", d=" + std::to_string(d));

  dense::Algebra algebra(*phi.order().poset(), p);
  dense::Matrix matrix = dense::Matrix::from_linear_map(phi);
  auto res = kernels::exhaustive_verify_parallel(algebra, matrix, algebra.from_element(eps),
                                                 algebra.from_element(eta), jobs);
  VerificationReport report;
  report.mode = VerifyMode::exhaustive();
  report.holds = res.holds;
  report.pairs_checked = res.pairs_checked;
  if (res.has_counterexample)
    report.counterexample = {algebra.to_element(res.ce_f, eps.poset(), field),
                             algebra.to_element(res.ce_g, eps.poset(), field)};
  return report;
}

VerificationReport verify_sampled_prime(const LinearMap& phi, const IncidenceElement& eps,
                                        const IncidenceElement& eta, VerifyMode mode) {
  const Field field = eps.field();
  const std::uint32_t p = field.modulus();
  dense::Algebra algebra(*phi.order().poset(), p);
  dense::Matrix matrix = dense::Matrix::from_linear_map(phi);
  const dense::Vec eps_v = algebra.from_element(eps);
  const dense::Vec eta_v = algebra.from_element(eta);

  VerificationReport report;
  report.mode = mode;
  Rng rng(mode.seed);
  dense::Vec f(static_cast<std::size_t>(algebra.d));
  dense::Vec g, phi_f, phi_g;
  dense::FastSolution sol;
  dense::SolveWorkspace ws;
  std::uint64_t retries = 0;
  for (std::uint64_t i = 0; i < mode.n; ++i) {
    for (;;) {
      for (auto& c : f) c = static_cast<std::uint32_t>(rng.below(p));
      if (dense::solve_right_fast(algebra, f, eps_v, sol, ws)) break;
      if (++retries > 10000000lu) fail(Errc::TooLarge, "sampling cannot find a consistent factor");
    }
    g = sol.particular;
    for (int kv = 0; kv < sol.kernel_dim; ++kv) {
      const std::uint32_t* k = sol.kernel_row(kv);
      std::uint32_t t = static_cast<std::uint32_t>(rng.below(p));
      if (t == 0) continue;
      for (int c = 0; c < algebra.d; ++c)
        g[static_cast<std::size_t>(c)] =
            algebra.add(g[static_cast<std::size_t>(c)], algebra.mul(t, k[static_cast<std::size_t>(c)]));
    }
    matrix.apply(algebra, f, phi_f);
    matrix.apply(algebra, g, phi_g);
    ++report.pairs_checked;
    if (!algebra.multiply_equals(phi_f, phi_g, eta_v)) {
      report.holds = false;
      report.counterexample = {algebra.to_element(f, eps.poset(), field),
                               algebra.to_element(g, eps.poset(), field)};
      break;
    }
  }
  return report;
}

Scalar random_rational(Rng& rng) {
  long long num = static_cast<long long>(rng.below(19)) - 9;
  long long den = static_cast<long long>(rng.below(9)) + 1;
  return Scalar::fraction(num, den);
}

VerificationReport verify_sampled_rational(const LinearMap& phi, const IncidenceElement& eps,
                                           const IncidenceElement& eta, VerifyMode mode) {
  // Uniform sampling over Q is undefined; coordinates are drawn from the
  // bounded fraction grid {-9..9}/{1..9}.
  const Field field = eps.field();
  const BasisOrder& order = phi.order();
  VerificationReport report;
  report.mode = mode;
  Rng rng(mode.seed);
  std::uint64_t retries = 0;
  for (std::uint64_t i = 0; i < mode.n; ++i) {
    IncidenceElement f(eps.poset(), field);
    RightFactors factors(eps.poset(), field);
    for (;;) {
      f = IncidenceElement(eps.poset(), field);
      for (int k = 0; k < order.dim(); ++k) {
        const auto& [u, v] = order.pair_at(k);
        Scalar value = random_rational(rng);
        if (!value.is_zero()) f = f.with(u, v, value);
      }
      factors = right_factors(f, eps);
      if (factors.consistent) break;
      if (++retries > 1000000lu) fail(Errc::TooLarge, "sampling cannot find a consistent factor");
    }
    IncidenceElement g = factors.particular;
    for (const IncidenceElement& k : factors.kernel) {
      Scalar t = random_rational(rng);
      if (!t.is_zero()) g = g + k.scaled(t);
    }
    ++report.pairs_checked;
    if (phi.apply(f) * phi.apply(g) != eta) {
      report.holds = false;
      report.counterexample = {std::move(f), std::move(g)};
      break;
    }
  }
  return report;
}

}  // namespace

VerificationReport verify_product_preserver(const LinearMap& phi, const IncidenceElement& eps,
                                            const IncidenceElement& eta, VerifyMode mode,
                                            int jobs) {
  require_map_matches(phi, eps, eta);
  if (mode.kind == VerifyModeKind::exhaustive) return verify_exhaustive(phi, eps, eta, jobs);
  if (eps.field().is_prime_field()) return verify_sampled_prime(phi, eps, eta, mode);
  return verify_sampled_rational(phi, eps, eta, mode);
}

bool zero_product_basis_check(const LinearMap& phi) {
  const BasisOrder& order = phi.order();
  const PosetPtr& poset = order.poset();
  const Field field = phi.field();
  const int d = order.dim();

  std::vector<IncidenceElement> images;
  images.reserve(static_cast<std::size_t>(d));
  for (int k = 0; k < d; ++k) {
    const auto& [u, v] = order.pair_at(k);
    images.push_back(phi.apply(IncidenceElement::basis(poset, field, u, v)));
  }

  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) {
      const auto& [x, y] = order.pair_at(i);
      const auto& [u, v] = order.pair_at(j);
      if (y == u) continue;  // e_xy e_uv != 0
      if (!(images[static_cast<std::size_t>(i)] * images[static_cast<std::size_t>(j)]).is_zero())
        return false;
    }

  for (int k = 0; k < d; ++k) {
    const auto& [x, y] = order.pair_at(k);
    if (x == y) continue;
    const IncidenceElement reference =
        images[static_cast<std::size_t>(order.index_of(x, x))] * images[static_cast<std::size_t>(k)];
    if (images[static_cast<std::size_t>(k)] * images[static_cast<std::size_t>(order.index_of(y, y))] !=
        reference)
      return false;
    for (int z = 0; z < poset->size(); ++z) {
      if (z == x || z == y || !poset->leq(x, z) || !poset->leq(z, y)) continue;
      if (images[static_cast<std::size_t>(order.index_of(x, z))] *
              images[static_cast<std::size_t>(order.index_of(z, y))] !=
          reference)
        return false;
    }
  }
  return true;
}

VerificationReport zero_product_exhaustive_check(const LinearMap& phi, int jobs) {
  IncidenceElement zero(phi.order().poset(), phi.field());
  return verify_exhaustive(phi, zero, zero, jobs);
}

PreserverVerdict decide_existence(const PreserverProblem& problem, int jobs) {
  PreserverVerdict verdict;
  auto orbit = problem.poset->same_orbit(problem.x, problem.y);
  if (!orbit) {
    verdict.exists = false;
    Obstruction obstruction;
    obstruction.count_without_x =
        problem.poset->delete_element(problem.x).comparable_pair_count();
    obstruction.count_without_y =
        problem.poset->delete_element(problem.y).comparable_pair_count();
    obstruction.kind = obstruction.count_without_x > obstruction.count_without_y
                           ? Obstruction::Kind::pair_count
                           : Obstruction::Kind::no_orbit_automorphism;
    verdict.obstruction = obstruction;
    return verdict;
  }
  verdict.exists = true;
  verdict.witness_lambda = *orbit;
  verdict.witness = construct_preserver(problem);
  VerifyMode mode = VerifyMode::sampled(kDefaultSampleCount, kDefaultSampleSeed);
  if (problem.field.is_prime_field() &&
      space_size_or_zero(problem.field.modulus(), problem.poset->comparable_pair_count(),
                         kDecideExhaustiveCap) != 0)
    mode = VerifyMode::exhaustive();
  verdict.verification =
      verify_product_preserver(*verdict.witness, problem.epsilon, problem.eta, mode, jobs);
  return verdict;
}

namespace {

/// c*u fixes e_base under conjugation: c standardizes u e_base u^-1.
IncidenceElement stabilizing_unit(const IncidenceElement& u, int base) {
  const auto e = IncidenceElement::basis(u.poset(), u.field(), base, base);
  const auto conjugated = u * e * invert(u);
  return conjugator_to_standard(conjugated) * u;
}

}  // namespace

LinearMap construct_preserver(const PreserverProblem& problem, const ConstructOptions& opts) {
  if (opts.sign != 1 && opts.sign != -1)
    fail(Errc::BadOptions, "sign must be +1 or -1");
  auto orbit = problem.poset->same_orbit(problem.x, problem.y);
  if (!orbit)
    fail(Errc::NoPreserver, "no automorphism maps " + problem.poset->name(problem.x) + " to " +
                                problem.poset->name(problem.y));

  const BasisOrder order(problem.poset);
  const Field field = problem.field;

  Cocycle sigma = opts.sigma ? *opts.sigma : Cocycle::trivial(problem.poset, field);
  if (opts.sigma) {
    if (sigma.field() != field) fail(Errc::BadOptions, "cocycle over a different field");
    if (sigma.poset() != problem.poset && !(*sigma.poset() == *problem.poset))
      fail(Errc::BadOptions, "cocycle over a different poset");
  }

  LinearMap core =
      induced_automorphism(order, field, *orbit).compose(multiplicative_automorphism(order, sigma));
  if (opts.inner_left) {
    if (opts.inner_left->field() != field) fail(Errc::BadOptions, "left twist over a different field");
    if (!is_invertible(*opts.inner_left)) fail(Errc::BadOptions, "left twist is not invertible");
    core = core.compose(inner_automorphism(order, stabilizing_unit(*opts.inner_left, problem.x)));
  }
  if (opts.inner_right) {
    if (opts.inner_right->field() != field) fail(Errc::BadOptions, "right twist over a different field");
    if (!is_invertible(*opts.inner_right)) fail(Errc::BadOptions, "right twist is not invertible");
    core = inner_automorphism(order, stabilizing_unit(*opts.inner_right, problem.y)).compose(core);
  }

  const IncidenceElement std_eps = conjugator_to_standard(problem.epsilon);
  const IncidenceElement std_eta = conjugator_to_standard(problem.eta);
  LinearMap phi = inner_automorphism(order, invert(std_eta))
                      .compose(core)
                      .compose(inner_automorphism(order, std_eps));
  if (opts.sign == -1) phi = phi.negated();
  return phi;
}

std::vector<IncidenceElement> square_roots_of(const PosetPtr& poset, Field field, int y,
                                              int jobs) {
  if (!field.is_prime_field())
    fail(Errc::TooLargeForExhaustive, "square-root enumeration needs a finite prime field");
  if (y < 0 || y >= poset->size()) fail(Errc::UnknownElement, "index out of range");
  const std::uint32_t p = field.modulus();
  const int d = poset->comparable_pair_count();
  if (space_size_or_zero(p, d, kExhaustiveCap) == 0)
    fail(Errc::TooLargeForExhaustive,
         "p^d exceeds 2^24 for p=" + std::to_string(p) + ", d=" + std::to_string(d));

  dense::Algebra algebra(*poset, p);
  const dense::Vec target = algebra.basis(algebra.diag_index[static_cast<std::size_t>(y)]);
  auto indices = kernels::square_roots_parallel(algebra, target, jobs);
  std::vector<IncidenceElement> out;
  out.reserve(indices.size());
  dense::Vec f;
  for (std::uint64_t idx : indices) {
    algebra.decode(idx, f);
    out.push_back(algebra.to_element(f, poset, field));
  }
  return out;
}

namespace {

struct LemmaEvaluator {
  const PosetPtr& poset;
  Field field;
  int x, y;
  std::vector<IncidenceElement> images;  // standardized basis images
  const BasisOrder& order;
  LemmaSuiteReport report;

  const IncidenceElement& image(int u, int v) const {
    return images[static_cast<std::size_t>(order.index_of(u, v))];
  }

  void add(const std::string& id, bool pass, const std::string& detail) {
    report.checks.push_back({id, pass, pass ? "" : detail});
    if (!pass) report.all_pass = false;
  }

  std::string pair_name(int u, int v) const {
    return "(" + poset->name(u) + "," + poset->name(v) + ")";
  }
};

}  // namespace

LemmaSuiteReport lemma_suite(const LinearMap& phi, const IncidenceElement& eps,
                             const IncidenceElement& eta) {
  require_map_matches(phi, eps, eta);
  auto ce = classify_idempotent(eps);
  auto cn = classify_idempotent(eta);
  if (ce.kind != IdempotentKind::primitive || cn.kind != IdempotentKind::primitive)
    fail(Errc::NotPrimitive, "the suite needs primitive idempotents");
  const int x = *ce.base, y = *cn.base;
  const BasisOrder& order = phi.order();
  const PosetPtr& poset = order.poset();
  const Field field = phi.field();
  const Poset& P = *poset;

  // Standardize: conjugate so the pair becomes (e_x, e_y).
  const LinearMap std_phi =
      inner_automorphism(order, conjugator_to_standard(eta))
          .compose(phi)
          .compose(inner_automorphism(order, invert(conjugator_to_standard(eps))));

  LemmaEvaluator ev{poset, field, x, y, {}, order, {}};
  for (int k = 0; k < order.dim(); ++k) {
    const auto& [u, v] = order.pair_at(k);
    ev.images.push_back(std_phi.apply(IncidenceElement::basis(poset, field, u, v)));
  }

  const IncidenceElement ey = IncidenceElement::basis(poset, field, y, y);

  {
    bool ok = ev.image(x, x) * ev.image(x, x) == ey;
    ev.add("square_of_base_image", ok, "image of " + ev.pair_name(x, x));
  }
  {
    bool ok = true;
    std::string detail;
    for (int k = 0; k < order.dim() && ok; ++k) {
      const auto& [u, v] = order.pair_at(k);
      if (u == x) continue;
      if (!(ev.image(x, x) * ev.image(u, v)).is_zero()) {
        ok = false;
        detail = ev.pair_name(u, v);
      }
    }
    ev.add("base_image_annihilates_left", ok, detail);
  }
  {
    bool ok = true;
    std::string detail;
    for (int k = 0; k < order.dim() && ok; ++k) {
      const auto& [u, v] = order.pair_at(k);
      if (v == x) continue;
      if (!(ev.image(u, v) * ev.image(x, x)).is_zero()) {
        ok = false;
        detail = ev.pair_name(u, v);
      }
    }
    ev.add("base_image_annihilates_right", ok, detail);
  }
  {
    bool ok = true;
    std::string detail;
    for (int u = 0; u < P.size() && ok; ++u) {
      if (!P.leq(u, x)) continue;
      for (int z = 0; z < P.size() && ok; ++z) {
        if (z == u) continue;
        if (!(ev.image(z, z) * ev.image(u, x)).is_zero()) {
          ok = false;
          detail = "z=" + P.name(z) + ", arrow " + ev.pair_name(u, x);
        }
      }
    }
    ev.add("arrows_into_base_annihilated", ok, detail);
  }
  {
    bool ok = true;
    std::string detail;
    for (int v = 0; v < P.size() && ok; ++v) {
      if (!P.leq(x, v)) continue;
      for (int z = 0; z < P.size() && ok; ++z) {
        if (z == v) continue;
        if (!(ev.image(x, v) * ev.image(z, z)).is_zero()) {
          ok = false;
          detail = "arrow " + ev.pair_name(x, v) + ", z=" + P.name(z);
        }
      }
    }
    ev.add("arrows_out_of_base_annihilated", ok, detail);
  }
  {
    bool ok = true;
    std::string detail;
    for (int u = 0; u < P.size() && ok; ++u)
      for (int v = 0; v < P.size() && ok; ++v) {
        if (u == v) continue;
        if (!(ev.image(u, u) * ev.image(v, v)).is_zero()) {
          ok = false;
          detail = P.name(u) + " vs " + P.name(v);
        }
      }
    ev.add("diagonal_images_orthogonal", ok, detail);
  }
  {
    // scaling identities, quantified over all r in F* (r in {1,2,3} over Q)
    std::vector<Scalar> rs;
    if (field.is_prime_field()) {
      for (std::uint32_t r = 1; r < field.modulus(); ++r) rs.push_back(Scalar::of(field, r));
    } else {
      for (long long r : {1, 2, 3}) rs.push_back(Scalar::of(field, r));
    }
    bool ok_in = true, ok_out = true;
    std::string detail_in, detail_out;
    for (int u = 0; u < P.size(); ++u) {
      if (!P.less(u, x)) continue;
      const IncidenceElement lhs =
          ev.image(u, x) * ev.image(x, x) - ev.image(u, u) * ev.image(u, x);
      const IncidenceElement sq = ev.image(u, x) * ev.image(u, x);
      for (const Scalar& r : rs)
        if (ok_in && lhs != sq.scaled(r)) {
          ok_in = false;
          detail_in = "arrow " + ev.pair_name(u, x) + ", r=" + r.to_string();
        }
    }
    for (int v = 0; v < P.size(); ++v) {
      if (!P.less(x, v)) continue;
      const IncidenceElement lhs =
          ev.image(x, x) * ev.image(x, v) - ev.image(x, v) * ev.image(v, v);
      const IncidenceElement sq = ev.image(x, v) * ev.image(x, v);
      for (const Scalar& r : rs)
        if (ok_out && lhs != sq.scaled(r)) {
          ok_out = false;
          detail_out = "arrow " + ev.pair_name(x, v) + ", r=" + r.to_string();
        }
    }
    ev.add("arrow_scaling_into_base", ok_in, detail_in);
    ev.add("arrow_scaling_out_of_base", ok_out, detail_out);
  }
  {
    bool ok = true;
    std::string detail;
    for (int u = 0; u < P.size() && ok; ++u) {
      if (!P.leq(u, x)) continue;
      for (int z = 0; z < P.size() && ok; ++z) {
        if (z == u || z == x) continue;
        if (!(ev.image(u, x) * ev.image(z, z)).is_zero()) {
          ok = false;
          detail = "arrow " + ev.pair_name(u, x) + ", z=" + P.name(z);
        }
      }
    }
    ev.add("arrows_into_base_kill_off_endpoint_diagonals", ok, detail);
  }
  {
    bool ok = true;
    std::string detail;
    for (int v = 0; v < P.size() && ok; ++v) {
      if (!P.leq(x, v)) continue;
      for (int z = 0; z < P.size() && ok; ++z) {
        if (z == x || z == v) continue;
        if (!(ev.image(z, z) * ev.image(x, v)).is_zero()) {
          ok = false;
          detail = "z=" + P.name(z) + ", arrow " + ev.pair_name(x, v);
        }
      }
    }
    ev.add("off_endpoint_diagonals_kill_arrows_out_of_base", ok, detail);
  }
  {
    bool ok = true;
    std::string detail;
    for (int z = 0; z < P.size() && ok; ++z) {
      if (z == y) continue;
      for (int u = 0; u < P.size() && ok; ++u) {
        if (P.less(u, x) && ev.image(u, u).at(z, z).is_zero() &&
            !ev.image(u, x).at(z, z).is_zero()) {
          ok = false;
          detail = "arrow " + ev.pair_name(u, x) + " at z=" + P.name(z);
        }
      }
      for (int v = 0; v < P.size() && ok; ++v) {
        if (P.less(x, v) && ev.image(v, v).at(z, z).is_zero() &&
            !ev.image(x, v).at(z, z).is_zero()) {
          ok = false;
          detail = "arrow " + ev.pair_name(x, v) + " at z=" + P.name(z);
        }
      }
    }
    ev.add("diagonal_vanishing_propagates", ok, detail);
  }
  {
    std::vector<int> without_y;
    for (int z = 0; z < P.size(); ++z)
      if (z != y) without_y.push_back(z);
    bool ok_subspace = true, ok_radical = true;
    std::string detail_subspace, detail_radical;
    for (int k = 0; k < order.dim(); ++k) {
      const auto& [u, v] = order.pair_at(k);
      if (u == x || v == x) continue;
      if (ok_subspace && !supported_on(ev.images[static_cast<std::size_t>(k)], without_y)) {
        ok_subspace = false;
        detail_subspace = "image of " + ev.pair_name(u, v);
      }
      if (u != v && ok_radical &&
          !in_radical(ev.images[static_cast<std::size_t>(k)], without_y)) {
        ok_radical = false;
        detail_radical = "image of " + ev.pair_name(u, v);
      }
    }
    ev.add("deleted_subspace_preserved", ok_subspace, detail_subspace);
    ev.add("deleted_radical_preserved", ok_radical, detail_radical);
  }
  {
    // phi(J) = J: strict images inside J plus full rank on the strict block.
    bool contained = true;
    std::string detail;
    std::vector<std::vector<Scalar>> strict_rows;
    for (int k = 0; k < order.dim(); ++k) {
      const auto& [u, v] = order.pair_at(k);
      if (u == v) continue;
      if (!in_radical(ev.images[static_cast<std::size_t>(k)])) {
        contained = false;
        detail = "image of " + ev.pair_name(u, v);
        break;
      }
      std::vector<Scalar> row;
      for (int j = 0; j < order.dim(); ++j) {
        const auto& [a, b] = order.pair_at(j);
        if (a != b) row.push_back(ev.images[static_cast<std::size_t>(k)].at(a, b));
      }
      strict_rows.push_back(std::move(row));
    }
    bool ok = contained;
    if (contained && !strict_rows.empty()) {
      // row-reduce to confirm the strict images span the whole radical
      const std::size_t rows = strict_rows.size(), cols = strict_rows[0].size();
      std::size_t rank = 0;
      for (std::size_t c = 0; c < cols && rank < rows; ++c) {
        std::size_t pivot = rank;
        while (pivot < rows && strict_rows[pivot][c].is_zero()) ++pivot;
        if (pivot == rows) continue;
        std::swap(strict_rows[pivot], strict_rows[rank]);
        Scalar inv = strict_rows[rank][c].inverse();
        for (std::size_t cc = 0; cc < cols; ++cc) strict_rows[rank][cc] *= inv;
        for (std::size_t r = 0; r < rows; ++r) {
          if (r == rank || strict_rows[r][c].is_zero()) continue;
          Scalar factor = strict_rows[r][c];
          for (std::size_t cc = 0; cc < cols; ++cc)
            strict_rows[r][cc] -= factor * strict_rows[rank][cc];
        }
        ++rank;
      }
      if (rank != rows) {
        ok = false;
        detail = "strict images span a proper subspace";
      }
    }
    ev.add("radical_preserved", ok, detail);
  }
  {
    const IncidenceElement delta = IncidenceElement::identity(poset, field);
    const IncidenceElement image = std_phi.apply(delta);
    bool ok = image == delta || image == -delta;
    ev.add("identity_to_signed_identity", ok, "image of the identity");
  }
  return ev.report;
}

BruteforceCensus bruteforce_classify(const PosetPtr& poset, std::uint32_t p, int x, int y,
                                     const BruteforceBudget& budget, int jobs) {
  if (x < 0 || x >= poset->size() || y < 0 || y >= poset->size())
    fail(Errc::UnknownElement, "index out of range");
  const int d = poset->comparable_pair_count();
  if (d > budget.max_dim)
    fail(Errc::TooLarge, "dimension " + std::to_string(d) + " exceeds the census budget");
  if (!is_prime_number(p)) fail(Errc::BadOptions, std::to_string(p) + " is not prime");
  if (p > budget.max_prime)
    fail(Errc::TooLarge, "prime " + std::to_string(p) + " exceeds the census budget");
  const std::uint64_t group = kernels::gl_order(p, d);
  if (group == 0 || group > budget.max_group)
    fail(Errc::TooLarge, "|GL(" + std::to_string(d) + "," + std::to_string(p) + ")| exceeds the census budget");

  dense::Algebra algebra(*poset, p);
  auto raw = kernels::census_parallel(algebra, x, y, jobs);

  BruteforceCensus census;
  census.total = raw.total;
  census.pruned = raw.pruned;
  census.fully_checked = raw.fully_checked;
  census.preservers_found = raw.preservers.size();
  census.audit_sampled = raw.audit_sampled;
  census.audit_violations = raw.audit_violations;
  census.connected = poset->is_connected();

  const BasisOrder order(poset);
  const Field field = Field::prime(p);
  for (const dense::Matrix& m : raw.preservers) {
    LinearMap map = m.to_linear_map(order, field);
    PmVerdict verdict = is_pm_automorphism(map);
    std::optional<PosetAutomorphism> lambda;
    if (verdict == PmVerdict::automorphism)
      lambda = decompose_automorphism(map).lambda;
    else if (verdict == PmVerdict::negative_of_automorphism)
      lambda = decompose_automorphism(map.negated()).lambda;
    else
      census.all_pm_automorphisms = false;
    if (lambda && (*lambda)(x) != y) census.all_lambda_map_x_to_y = false;
    if (census.preservers.size() < budget.max_report)
      census.preservers.push_back({std::move(map), verdict, std::move(lambda)});
  }
  return census;
}

}  // namespace inca
