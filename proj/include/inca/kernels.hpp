#pragma once

#include <cstdint>
#include <vector>

#include "inca/dense.hpp"

namespace inca::kernels {

/// Result of scanning products f*g = eps against phi(f)phi(g) = eta.
/// Exhaustive scans cover the whole space regardless of failures so that
/// pairs_checked is deterministic; the counterexample is the first one in
/// (f index, solution index) order.
struct VerifyResult {
  bool holds = true;
  std::uint64_t pairs_checked = 0;
  bool has_counterexample = false;
  std::uint64_t ce_f_index = 0;
  std::uint64_t ce_sol_index = 0;
  dense::Vec ce_f;
  dense::Vec ce_g;
};

/// Scans f indices in [lo, hi). With early_exit the scan stops at the first
/// counterexample (pairs_checked then covers only the scanned prefix).
VerifyResult verify_scan_range(const dense::Algebra& a, const dense::Matrix& phi,
                               const dense::Vec& eps, const dense::Vec& eta,
                               std::uint64_t lo, std::uint64_t hi, bool early_exit);

/// Serial reference implementation: one full-range scan.
VerifyResult exhaustive_verify_serial(const dense::Algebra& a, const dense::Matrix& phi,
                                      const dense::Vec& eps, const dense::Vec& eta);

/// OpenMP implementation: disjoint ranges per worker, merged by summing
/// counts and taking the lowest-index counterexample. Identical output to
/// the serial reference.
VerifyResult exhaustive_verify_parallel(const dense::Algebra& a, const dense::Matrix& phi,
                                        const dense::Vec& eps, const dense::Vec& eta, int jobs);

/// All f with f*f = target, as ascending indices.
std::vector<std::uint64_t> square_roots_serial(const dense::Algebra& a, const dense::Vec& target);
std::vector<std::uint64_t> square_roots_parallel(const dense::Algebra& a, const dense::Vec& target,
                                                 int jobs);

/// Full sweep of GL(d,p) by column-by-column rank extension, pruning with
/// cheap necessary basis conditions, fully verifying survivors against
/// (e_x, e_y). A deterministic ~1% sample of pruned candidates is re-checked
/// in full; none may pass (audit_violations counts any that do).
struct CensusResult {
  std::uint64_t total = 0;          // |GL(d,p)|: visited leaves + pruned completions
  std::uint64_t pruned = 0;         // eliminated by the basis conditions
  std::uint64_t fully_checked = 0;  // leaves that reached full verification
  std::vector<dense::Matrix> preservers;  // in leaf enumeration order
  std::uint64_t audit_sampled = 0;
  std::uint64_t audit_violations = 0;
};

CensusResult census_serial(const dense::Algebra& a, int x, int y);
CensusResult census_parallel(const dense::Algebra& a, int x, int y, int jobs);

/// |GL(d,p)| for the census budget check; 0 on overflow.
std::uint64_t gl_order(std::uint32_t p, int d);

}  // namespace inca::kernels
