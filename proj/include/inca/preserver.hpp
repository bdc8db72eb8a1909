#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "inca/incidence.hpp"
#include "inca/linmaps.hpp"
#include "inca/poset.hpp"

namespace inca {

/// Decision instance: a connected poset, a field, and primitive idempotents
/// eps, eta with diagonal bases x, y.
struct PreserverProblem {
  PosetPtr poset;
  Field field;
  IncidenceElement epsilon;
  IncidenceElement eta;
  int x;
  int y;

  /// Validates connectivity (NotConnected) and primitivity (NotPrimitive)
  /// and extracts the bases.
  static PreserverProblem make(PosetPtr poset, Field field, IncidenceElement epsilon,
                               IncidenceElement eta);
};

/// Affine description of {g : f*g = a}.
struct RightFactors {
  bool consistent = false;
  IncidenceElement particular;
  std::vector<IncidenceElement> kernel;

  RightFactors(PosetPtr poset, Field field) : particular(std::move(poset), field) {}
  /// Number of solutions: 0 when inconsistent, p^k over F_p, nullopt
  /// (infinite) over the rationals with a nontrivial kernel.
  std::optional<std::uint64_t> solution_count() const;
  /// Materializes every solution (finite case), particular first, kernel
  /// coefficients in odometer order. TooLargeForExhaustive over `limit`.
  std::vector<IncidenceElement> enumerate(std::uint64_t limit = (1ull << 24)) const;
};

RightFactors right_factors(const IncidenceElement& f, const IncidenceElement& a);

enum class VerifyModeKind { exhaustive, sampled };

struct VerifyMode {
  VerifyModeKind kind = VerifyModeKind::exhaustive;
  std::uint64_t n = 0;     // sample count (sampled mode)
  std::uint64_t seed = 0;  // required for reproducibility (sampled mode)

  static VerifyMode exhaustive() { return {VerifyModeKind::exhaustive, 0, 0}; }
  static VerifyMode sampled(std::uint64_t n, std::uint64_t seed) {
    return {VerifyModeKind::sampled, n, seed};
  }
};

struct VerificationReport {
  VerifyMode mode;
  bool holds = true;
  std::uint64_t pairs_checked = 0;
  /// (f, g) with f*g = eps but phi(f)*phi(g) != eta.
  std::optional<std::pair<IncidenceElement, IncidenceElement>> counterexample;
};

/// Checks f*g = eps  =>  phi(f)*phi(g) = eta.
/// Exhaustive mode requires a prime field with p^d <= 2^24 and scans every f,
/// solving for all right factors g; sampled mode draws n seeded (f,g) pairs.
VerificationReport verify_product_preserver(const LinearMap& phi, const IncidenceElement& eps,
                                            const IncidenceElement& eta, VerifyMode mode,
                                            int jobs = 0);

/// The two basis conditions equivalent to zero-product preservation:
/// phi(e_xy) phi(e_uv) = 0 whenever e_xy e_uv = 0, and the chain condition
/// phi(e_x) phi(e_xy) = phi(e_xz) phi(e_zy) = phi(e_xy) phi(e_y).
bool zero_product_basis_check(const LinearMap& phi);

/// Definitional companion: scans all (f,g) with f*g = 0 over a small prime
/// field. Same report shape as the preserver verifier (eps = eta = 0).
VerificationReport zero_product_exhaustive_check(const LinearMap& phi, int jobs = 0);

struct Obstruction {
  enum class Kind { no_orbit_automorphism, pair_count };
  Kind kind = Kind::no_orbit_automorphism;
  int count_without_x = 0;  // |(X\{x})^2_<=|
  int count_without_y = 0;
};

struct PreserverVerdict {
  bool exists = false;
  std::optional<LinearMap> witness;
  std::optional<PosetAutomorphism> witness_lambda;
  std::optional<Obstruction> obstruction;
  std::optional<VerificationReport> verification;  // pre-verification of the witness
};

/// Existence is equivalent to an automorphism of X mapping x to y. On
/// existence the witness is the default construction, pre-verified
/// (exhaustive when p^d <= 2^20, sampled(10^4) otherwise). On non-existence
/// the pair-count obstruction is reported when it fires.
PreserverVerdict decide_existence(const PreserverProblem& problem, int jobs = 0);

struct ConstructOptions {
  int sign = 1;  // +1 or -1; over characteristic 2 both give the same map
  std::optional<Cocycle> sigma;
  std::optional<IncidenceElement> inner_left;   // any unit; shaped to fix e_x
  std::optional<IncidenceElement> inner_right;  // any unit; shaped to fix e_y
};

/// Builds sign * psi2^-1 . inner(b_r) . induced(lambda) . mult(sigma) .
/// inner(b_l) . psi1^-1 where psi1, psi2 standardize eps, eta and the inner
/// twists are corrected to stabilize e_x resp. e_y, so the result always
/// satisfies the preserver property. NoPreserver when no orbit automorphism
/// exists.
LinearMap construct_preserver(const PreserverProblem& problem, const ConstructOptions& opts = {});

/// All f with f^2 = e_y, by exhaustive enumeration over a prime field with
/// p^d <= 2^24, in ascending enumeration order.
std::vector<IncidenceElement> square_roots_of(const PosetPtr& poset, Field field, int y,
                                              int jobs = 0);

struct LemmaCheck {
  std::string id;
  bool pass = true;
  std::string detail;  // violating instance, empty when passing
};

struct LemmaSuiteReport {
  bool all_pass = true;
  std::vector<LemmaCheck> checks;
};

/// Evaluates the structural consequences of the preserver hypothesis on the
/// standardization of phi by the conjugators of eps and eta: annihilation
/// patterns on basis images, diagonal-vanishing propagation, subspace and
/// radical containments, and phi(delta) = +/- delta. Failures are reported,
/// not thrown.
LemmaSuiteReport lemma_suite(const LinearMap& phi, const IncidenceElement& eps,
                             const IncidenceElement& eta);

struct BruteforceBudget {
  int max_dim = 5;
  std::uint32_t max_prime = 3;
  std::uint64_t max_group = (1ull << 25);  // |GL(d,p)| cap
  std::size_t max_report = 64;             // preservers embedded in the census
};

struct FoundPreserver {
  LinearMap map;
  PmVerdict verdict;
  std::optional<PosetAutomorphism> lambda;
};

struct BruteforceCensus {
  std::uint64_t total = 0;
  std::uint64_t pruned = 0;
  std::uint64_t fully_checked = 0;
  std::uint64_t preservers_found = 0;
  bool all_pm_automorphisms = true;
  bool all_lambda_map_x_to_y = true;
  bool connected = true;  // theorem hypothesis; false marks out-of-scope runs
  std::uint64_t audit_sampled = 0;
  std::uint64_t audit_violations = 0;
  std::vector<FoundPreserver> preservers;  // capped at budget.max_report
};

/// Enumerates all of GL(d,p) by rank extension, prunes with the cheap
/// necessary basis conditions, fully verifies survivors against (e_x, e_y)
/// and classifies every preserver found.
BruteforceCensus bruteforce_classify(const PosetPtr& poset, std::uint32_t p, int x, int y,
                                     const BruteforceBudget& budget = {}, int jobs = 0);

}  // namespace inca
