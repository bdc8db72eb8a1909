#include "inca/kernels.hpp"

#include <omp.h>

#include <algorithm>

#include "inca/rng.hpp"

namespace inca::kernels {

namespace {

int resolve_jobs(int jobs) {
  if (jobs > 0) return jobs;
  return omp_get_max_threads();
}

}  // namespace

VerifyResult verify_scan_range(const dense::Algebra& a, const dense::Matrix& phi,
                               const dense::Vec& eps, const dense::Vec& eta,
                               std::uint64_t lo, std::uint64_t hi, bool early_exit) {
  VerifyResult res;
  if (lo >= hi) return res;
  const std::uint32_t p = a.p;
  const int d = a.d;
  const std::size_t dd = static_cast<std::size_t>(d);

  // Matrix columns, for incremental phi(f) updates along the odometer.
  std::vector<dense::Vec> cols(dd, dense::Vec(dd));
  for (int j = 0; j < d; ++j)
    for (int i = 0; i < d; ++i) cols[static_cast<std::size_t>(j)][static_cast<std::size_t>(i)] = phi.at(i, j);

  // phi applied to a (typically sparse) vector, written into out
  auto apply_sparse = [&](const std::uint32_t* x, std::uint32_t* out) {
    std::fill(out, out + dd, 0);
    for (std::size_t j = 0; j < dd; ++j) {
      const std::uint32_t xj = x[j];
      if (xj == 0) continue;
      const std::uint32_t* col = cols[j].data();
      if (xj == 1) {
        for (std::size_t i = 0; i < dd; ++i) {
          const std::uint32_t v = out[i] + col[i];
          out[i] = v >= p ? v - p : v;
        }
      } else {
        for (std::size_t i = 0; i < dd; ++i)
          out[i] = static_cast<std::uint32_t>((out[i] + std::uint64_t(col[i]) * xj) % p);
      }
    }
  };

  dense::Vec f;
  a.decode(lo, f);
  dense::Vec phi_f(dd);
  apply_sparse(f.data(), phi_f.data());

  dense::FastSolution sol;
  dense::SolveWorkspace ws;
  dense::Vec g(dd), phi_g(dd);
  std::vector<std::uint32_t> phi_kernel_flat;
  std::vector<std::uint32_t> t;
  bool checking = true;

  for (std::uint64_t idx = lo; idx < hi; ++idx) {
    if (idx != lo) {
      // odometer step: each digit bump adds one matrix column to phi(f)
      int pos = 0;
      for (;;) {
        f[static_cast<std::size_t>(pos)]++;
        a.add_into(phi_f, cols[static_cast<std::size_t>(pos)]);
        if (f[static_cast<std::size_t>(pos)] == p) {
          f[static_cast<std::size_t>(pos)] = 0;
          ++pos;
        } else {
          break;
        }
      }
    }
    if (!dense::solve_right_fast(a, f, eps, sol, ws)) continue;
    const int kdim = sol.kernel_dim;
    std::uint64_t nsol = 1;
    for (int i = 0; i < kdim; ++i) nsol *= p;

    if (!checking) {
      res.pairs_checked += nsol;
      continue;
    }

    g = sol.particular;
    apply_sparse(g.data(), phi_g.data());
    if (phi_kernel_flat.size() < static_cast<std::size_t>(kdim) * dd)
      phi_kernel_flat.resize(static_cast<std::size_t>(kdim) * dd);
    for (int i = 0; i < kdim; ++i)
      apply_sparse(sol.kernel_row(i), phi_kernel_flat.data() + static_cast<std::size_t>(i) * dd);
    t.assign(static_cast<std::size_t>(kdim), 0);

    for (std::uint64_t sidx = 0; sidx < nsol; ++sidx) {
      if (sidx != 0) {
        std::size_t pos = 0;
        for (;;) {
          t[pos]++;
          const std::uint32_t* krow = sol.kernel_row(static_cast<int>(pos));
          const std::uint32_t* pkrow = phi_kernel_flat.data() + pos * dd;
          for (std::size_t i = 0; i < dd; ++i) {
            std::uint32_t v = g[i] + krow[i];
            g[i] = v >= p ? v - p : v;
            v = phi_g[i] + pkrow[i];
            phi_g[i] = v >= p ? v - p : v;
          }
          if (t[pos] == p) {
            t[pos] = 0;
            ++pos;
          } else {
            break;
          }
        }
      }
      ++res.pairs_checked;
      if (!a.multiply_equals(phi_f, phi_g, eta)) {
        res.holds = false;
        res.has_counterexample = true;
        res.ce_f_index = idx;
        res.ce_sol_index = sidx;
        res.ce_f = f;
        res.ce_g = g;
        checking = false;
        if (early_exit) return res;
        res.pairs_checked += nsol - sidx - 1;
        break;
      }
    }
  }
  return res;
}

VerifyResult exhaustive_verify_serial(const dense::Algebra& a, const dense::Matrix& phi,
                                      const dense::Vec& eps, const dense::Vec& eta) {
  return verify_scan_range(a, phi, eps, eta, 0, a.space_size, false);
}

VerifyResult exhaustive_verify_parallel(const dense::Algebra& a, const dense::Matrix& phi,
                                        const dense::Vec& eps, const dense::Vec& eta, int jobs) {
  const int threads = resolve_jobs(jobs);
  const std::uint64_t total = a.space_size;
  // Oversplit for balance: solution counts vary a lot across the f space.
  const int chunks = static_cast<int>(std::min<std::uint64_t>(std::max(1, threads * 64), std::max<std::uint64_t>(total, 1)));
  std::vector<VerifyResult> parts(static_cast<std::size_t>(chunks));

#pragma omp parallel for num_threads(threads) schedule(dynamic, 1)
  for (int c = 0; c < chunks; ++c) {
    std::uint64_t lo = total * static_cast<std::uint64_t>(c) / static_cast<std::uint64_t>(chunks);
    std::uint64_t hi = total * static_cast<std::uint64_t>(c + 1) / static_cast<std::uint64_t>(chunks);
    parts[static_cast<std::size_t>(c)] = verify_scan_range(a, phi, eps, eta, lo, hi, false);
  }

  VerifyResult merged;
  for (const VerifyResult& part : parts) {
    merged.pairs_checked += part.pairs_checked;
    if (!part.holds && (!merged.has_counterexample ||
                        part.ce_f_index < merged.ce_f_index ||
                        (part.ce_f_index == merged.ce_f_index && part.ce_sol_index < merged.ce_sol_index))) {
      merged.holds = false;
      merged.has_counterexample = true;
      merged.ce_f_index = part.ce_f_index;
      merged.ce_sol_index = part.ce_sol_index;
      merged.ce_f = part.ce_f;
      merged.ce_g = part.ce_g;
    }
  }
  return merged;
}

namespace {

std::vector<std::uint64_t> square_roots_range(const dense::Algebra& a, const dense::Vec& target,
                                              std::uint64_t lo, std::uint64_t hi) {
  std::vector<std::uint64_t> out;
  if (lo >= hi) return out;
  dense::Vec f;
  a.decode(lo, f);
  for (std::uint64_t idx = lo; idx < hi; ++idx) {
    if (idx != lo) {
      int pos = 0;
      for (;;) {
        f[static_cast<std::size_t>(pos)]++;
        if (f[static_cast<std::size_t>(pos)] == a.p) {
          f[static_cast<std::size_t>(pos)] = 0;
          ++pos;
        } else {
          break;
        }
      }
    }
    if (a.multiply_equals(f, f, target)) out.push_back(idx);
  }
  return out;
}

}  // namespace

std::vector<std::uint64_t> square_roots_serial(const dense::Algebra& a, const dense::Vec& target) {
  return square_roots_range(a, target, 0, a.space_size);
}

std::vector<std::uint64_t> square_roots_parallel(const dense::Algebra& a, const dense::Vec& target,
                                                 int jobs) {
  const int threads = resolve_jobs(jobs);
  const std::uint64_t total = a.space_size;
  const int chunks = std::max(1, threads);
  std::vector<std::vector<std::uint64_t>> parts(static_cast<std::size_t>(chunks));

#pragma omp parallel for num_threads(threads) schedule(static, 1)
  for (int c = 0; c < chunks; ++c) {
    std::uint64_t lo = total * static_cast<std::uint64_t>(c) / static_cast<std::uint64_t>(chunks);
    std::uint64_t hi = total * static_cast<std::uint64_t>(c + 1) / static_cast<std::uint64_t>(chunks);
    parts[static_cast<std::size_t>(c)] = square_roots_range(a, target, lo, hi);
  }

  std::vector<std::uint64_t> merged;
  for (auto& part : parts) merged.insert(merged.end(), part.begin(), part.end());
  return merged;
}

std::uint64_t gl_order(std::uint32_t p, int d) {
  // prod_{j<d} (p^d - p^j)
  long double approx = 1.0L;
  std::uint64_t pd = 1;
  for (int k = 0; k < d; ++k) {
    if (pd > (1ull << 62) / p) return 0;
    pd *= p;
  }
  std::uint64_t order = 1;
  std::uint64_t pj = 1;
  for (int j = 0; j < d; ++j) {
    std::uint64_t factor = pd - pj;
    approx *= static_cast<long double>(factor);
    if (approx > static_cast<long double>(1ull << 62)) return 0;
    order *= factor;
    pj *= p;
  }
  return order;
}

namespace {

// Vector-index tables for the tiny GL sweeps: every algebra element is an
// index below N = p^d, so products, sums and scalar multiples become table
// lookups.
struct CensusTables {
  const dense::Algebra& a;
  std::uint32_t N;
  std::vector<std::uint32_t> prod;               // N*N
  std::vector<std::uint32_t> sum;                // N*N
  std::vector<std::vector<std::uint32_t>> smul;  // p x N
  std::uint32_t ex, ey;                          // indices of e_x, e_y
  std::vector<int> dfs_to_basis;                 // depth -> basis coordinate
  std::vector<std::uint64_t> completions;        // depth -> invertible completions below
  std::vector<std::uint64_t> pow_p;

  CensusTables(const dense::Algebra& alg, int x, int y) : a(alg) {
    N = static_cast<std::uint32_t>(a.space_size);
    prod.resize(static_cast<std::size_t>(N) * N);
    sum.resize(static_cast<std::size_t>(N) * N);
    smul.assign(a.p, std::vector<std::uint32_t>(N));
    dense::Vec u, v, w;
    for (std::uint32_t i = 0; i < N; ++i) {
      a.decode(i, u);
      for (std::uint32_t t = 0; t < a.p; ++t) {
        w = u;
        for (auto& c : w) c = a.mul(c, t);
        smul[t][i] = static_cast<std::uint32_t>(a.encode(w));
      }
      for (std::uint32_t j = 0; j < N; ++j) {
        a.decode(j, v);
        a.multiply(u, v, w);
        prod[static_cast<std::size_t>(i) * N + j] = static_cast<std::uint32_t>(a.encode(w));
        w = u;
        a.add_into(w, v);
        sum[static_cast<std::size_t>(i) * N + j] = static_cast<std::uint32_t>(a.encode(w));
      }
    }
    ex = static_cast<std::uint32_t>(a.pow_p[static_cast<std::size_t>(a.diag_index[static_cast<std::size_t>(x)])]);
    ey = static_cast<std::uint32_t>(a.pow_p[static_cast<std::size_t>(a.diag_index[static_cast<std::size_t>(y)])]);

    // DFS column order: (x,x) first, then the other diagonals, then strict
    // pairs; the cheap conditions then fire as early as possible.
    dfs_to_basis.push_back(a.diag_index[static_cast<std::size_t>(x)]);
    for (int z = 0; z < a.n; ++z)
      if (z != x) dfs_to_basis.push_back(a.diag_index[static_cast<std::size_t>(z)]);
    for (int k = 0; k < a.d; ++k)
      if (a.pairs[static_cast<std::size_t>(k)].first != a.pairs[static_cast<std::size_t>(k)].second)
        dfs_to_basis.push_back(k);

    pow_p.assign(static_cast<std::size_t>(a.d) + 1, 1);
    for (int k = 1; k <= a.d; ++k) pow_p[static_cast<std::size_t>(k)] = pow_p[static_cast<std::size_t>(k - 1)] * a.p;
    completions.assign(static_cast<std::size_t>(a.d) + 1, 1);
    for (int depth = a.d - 1; depth >= 0; --depth)
      completions[static_cast<std::size_t>(depth)] =
          completions[static_cast<std::size_t>(depth + 1)] * (N - pow_p[static_cast<std::size_t>(depth)]);
    // completions[k] counts invertible extensions when k columns are chosen.
  }

  std::uint32_t multiply(std::uint32_t i, std::uint32_t j) const {
    return prod[static_cast<std::size_t>(i) * N + j];
  }

  /// Conditions for the column at `depth` against earlier columns. True when
  /// the candidate survives.
  bool column_ok(const std::vector<std::uint32_t>& cols, int depth) const {
    std::uint32_t c = cols[static_cast<std::size_t>(depth)];
    if (depth == 0) return multiply(c, c) == ey;  // phi(e_x)^2 = e_y
    if (depth < a.n) {
      // orthogonality of diagonal images, both orders
      for (int j = 0; j < depth; ++j) {
        std::uint32_t cj = cols[static_cast<std::size_t>(j)];
        if (multiply(c, cj) != 0 || multiply(cj, c) != 0) return false;
      }
      return true;
    }
    const auto& pair = a.pairs[static_cast<std::size_t>(dfs_to_basis[static_cast<std::size_t>(depth)])];
    std::uint32_t c0 = cols[0];
    if (pair.first != a.pairs[static_cast<std::size_t>(dfs_to_basis[0])].first &&
        multiply(c0, c) != 0)
      return false;  // phi(e_x) phi(e_uv) = 0 for u != x
    if (pair.second != a.pairs[static_cast<std::size_t>(dfs_to_basis[0])].first &&
        multiply(c, c0) != 0)
      return false;  // phi(e_uv) phi(e_x) = 0 for v != x
    return true;
  }

  dense::Matrix assemble(const std::vector<std::uint32_t>& cols) const {
    dense::Matrix m;
    m.d = a.d;
    m.m.assign(static_cast<std::size_t>(a.d) * static_cast<std::size_t>(a.d), 0);
    dense::Vec col;
    for (int depth = 0; depth < a.d; ++depth) {
      a.decode(cols[static_cast<std::size_t>(depth)], col);
      int basis_col = dfs_to_basis[static_cast<std::size_t>(depth)];
      for (int r = 0; r < a.d; ++r)
        m.m[static_cast<std::size_t>(r * a.d + basis_col)] = col[static_cast<std::size_t>(r)];
    }
    return m;
  }
};

struct Span {
  std::vector<char> member;       // indicator over vector indices
  std::vector<std::uint32_t> list;

  explicit Span(std::uint32_t N) : member(N, 0), list{0} { member[0] = 1; }

  void extend(const CensusTables& tb, std::uint32_t v) {
    std::size_t old_size = list.size();
    for (std::uint32_t t = 1; t < tb.a.p; ++t) {
      std::uint32_t tv = tb.smul[t][v];
      for (std::size_t i = 0; i < old_size; ++i) {
        std::uint32_t s = tb.sum[static_cast<std::size_t>(list[i]) * tb.N + tv];
        if (!member[s]) {
          member[s] = 1;
          list.push_back(s);
        }
      }
    }
  }
};

// Pruned node: its prefix (including the column that failed the check)
// and the number of invertible completions it stands for.
struct PrunedNode {
  std::vector<std::uint32_t> cols;
};

// Runs the ~1% audit of one pruned node: deterministic pseudo-random
// completions of the prefix to full invertible matrices, each re-checked in
// full. Returns (sampled, violations).
std::pair<std::uint64_t, std::uint64_t> audit_pruned_node(const CensusTables& tb,
                                                          const std::vector<std::uint32_t>& cols,
                                                          const dense::Vec& eps,
                                                          const dense::Vec& eta) {
  const int depth = static_cast<int>(cols.size()) - 1;
  const std::uint64_t completions = tb.completions[static_cast<std::size_t>(depth + 1)];
  const std::uint64_t samples = completions / 100;
  if (samples == 0) return {0, 0};
  Span span(tb.N);
  for (std::uint32_t c : cols) span.extend(tb, c);
  std::uint64_t node_code = static_cast<std::uint64_t>(depth + 1);
  for (std::uint32_t c : cols) node_code = node_code * tb.N + c;
  std::uint64_t violations = 0;
  std::vector<std::uint32_t> full(static_cast<std::size_t>(tb.a.d), 0);
  std::copy(cols.begin(), cols.end(), full.begin());
  for (std::uint64_t s = 0; s < samples; ++s) {
    Rng rng(mix_seed(node_code, s));
    Span local = span;
    for (int k = depth + 1; k < tb.a.d; ++k) {
      std::uint32_t v;
      do {
        v = static_cast<std::uint32_t>(rng.below(tb.N));
      } while (local.member[v]);
      full[static_cast<std::size_t>(k)] = v;
      if (k + 1 < tb.a.d) local.extend(tb, v);
    }
    dense::Matrix m = tb.assemble(full);
    VerifyResult check = verify_scan_range(tb.a, m, eps, eta, 0, tb.a.space_size, true);
    if (check.holds) ++violations;
  }
  return {samples, violations};
}

struct CensusAccumulator {
  CensusResult result;
  dense::Vec eps, eta;
  // when set, pruned nodes are queued here instead of audited inline
  std::vector<PrunedNode>* deferred_audits = nullptr;

  void visit_leaf(const CensusTables& tb, const std::vector<std::uint32_t>& cols) {
    ++result.total;
    ++result.fully_checked;
    dense::Matrix m = tb.assemble(cols);
    VerifyResult check = verify_scan_range(tb.a, m, eps, eta, 0, tb.a.space_size, true);
    if (check.holds) result.preservers.push_back(std::move(m));
  }

  void prune(const CensusTables& tb, const std::vector<std::uint32_t>& cols, int depth) {
    std::uint64_t completions = tb.completions[static_cast<std::size_t>(depth + 1)];
    result.total += completions;
    result.pruned += completions;
    std::vector<std::uint32_t> prefix(cols.begin(), cols.begin() + depth + 1);
    if (deferred_audits) {
      deferred_audits->push_back({std::move(prefix)});
    } else {
      auto [sampled, violations] = audit_pruned_node(tb, prefix, eps, eta);
      result.audit_sampled += sampled;
      result.audit_violations += violations;
    }
  }
};

void census_dfs(const CensusTables& tb, CensusAccumulator& acc,
                std::vector<std::uint32_t>& cols, const Span& span, int depth) {
  const int d = tb.a.d;
  for (std::uint32_t v = 1; v < tb.N; ++v) {
    if (span.member[v]) continue;
    cols[static_cast<std::size_t>(depth)] = v;
    if (!tb.column_ok(cols, depth)) {
      acc.prune(tb, cols, depth);
      continue;
    }
    if (depth + 1 == d) {
      acc.visit_leaf(tb, cols);
      continue;
    }
    Span next = span;
    next.extend(tb, v);
    census_dfs(tb, acc, cols, next, depth + 1);
  }
}

struct CensusTask {
  std::vector<std::uint32_t> cols;  // surviving prefix (depth fixed by size)
  Span span;
};

// Runs levels 0..(prefix_depth-1) serially in lexicographic order, emitting
// surviving prefixes as tasks and accounting pruned prefixes directly.
void census_prefix_dfs(const CensusTables& tb, CensusAccumulator& acc, int prefix_depth,
                       std::vector<std::uint32_t>& cols, const Span& span, int depth,
                       std::vector<CensusTask>& tasks) {
  for (std::uint32_t v = 1; v < tb.N; ++v) {
    if (span.member[v]) continue;
    cols[static_cast<std::size_t>(depth)] = v;
    if (!tb.column_ok(cols, depth)) {
      acc.prune(tb, cols, depth);
      continue;
    }
    if (depth + 1 == tb.a.d) {
      acc.visit_leaf(tb, cols);
      continue;
    }
    Span next = span;
    next.extend(tb, v);
    if (depth + 1 == prefix_depth) {
      tasks.push_back({std::vector<std::uint32_t>(cols.begin(), cols.begin() + depth + 1), next});
    } else {
      census_prefix_dfs(tb, acc, prefix_depth, cols, next, depth + 1, tasks);
    }
  }
}

std::vector<CensusTask> census_prefixes(const CensusTables& tb, CensusAccumulator& acc,
                                        int prefix_depth) {
  std::vector<CensusTask> tasks;
  std::vector<std::uint32_t> cols(static_cast<std::size_t>(tb.a.d), 0);
  census_prefix_dfs(tb, acc, prefix_depth, cols, Span(tb.N), 0, tasks);
  return tasks;
}

void census_budget_check(const dense::Algebra& a) {
  if (a.space_size == 0 || a.space_size > (1u << 20))
    fail(Errc::TooLarge, "algebra too large for a census sweep");
}

CensusResult census_merge(CensusResult base, std::vector<CensusResult> parts) {
  for (CensusResult& part : parts) {
    base.total += part.total;
    base.pruned += part.pruned;
    base.fully_checked += part.fully_checked;
    base.audit_sampled += part.audit_sampled;
    base.audit_violations += part.audit_violations;
    for (dense::Matrix& m : part.preservers) base.preservers.push_back(std::move(m));
  }
  return base;
}

}  // namespace

CensusResult census_serial(const dense::Algebra& a, int x, int y) {
  census_budget_check(a);
  CensusTables tb(a, x, y);
  CensusAccumulator acc;
  acc.eps = a.basis(a.diag_index[static_cast<std::size_t>(x)]);
  acc.eta = a.basis(a.diag_index[static_cast<std::size_t>(y)]);
  std::vector<std::uint32_t> cols(static_cast<std::size_t>(a.d), 0);
  census_dfs(tb, acc, cols, Span(tb.N), 0);
  return acc.result;
}

CensusResult census_parallel(const dense::Algebra& a, int x, int y, int jobs) {
  census_budget_check(a);
  CensusTables tb(a, x, y);
  const dense::Vec eps = a.basis(a.diag_index[static_cast<std::size_t>(x)]);
  const dense::Vec eta = a.basis(a.diag_index[static_cast<std::size_t>(y)]);

  CensusAccumulator prefix_acc;
  prefix_acc.eps = eps;
  prefix_acc.eta = eta;
  std::vector<PrunedNode> prefix_prunes;
  prefix_acc.deferred_audits = &prefix_prunes;  // audit them in parallel below
  const int prefix_depth = std::min(2, a.d);
  std::vector<CensusTask> tasks = census_prefixes(tb, prefix_acc, prefix_depth);

  const int threads = resolve_jobs(jobs);
  std::vector<CensusResult> parts(tasks.size());
#pragma omp parallel num_threads(threads)
  {
#pragma omp for schedule(dynamic, 1) nowait
    for (std::int64_t i = 0; i < static_cast<std::int64_t>(tasks.size()); ++i) {
      CensusAccumulator acc;
      acc.eps = eps;
      acc.eta = eta;
      std::vector<std::uint32_t> cols(static_cast<std::size_t>(a.d), 0);
      std::copy(tasks[static_cast<std::size_t>(i)].cols.begin(),
                tasks[static_cast<std::size_t>(i)].cols.end(), cols.begin());
      census_dfs(tb, acc, cols, tasks[static_cast<std::size_t>(i)].span,
                 static_cast<int>(tasks[static_cast<std::size_t>(i)].cols.size()));
      parts[static_cast<std::size_t>(i)] = std::move(acc.result);
    }
#pragma omp for schedule(dynamic, 1)
    for (std::int64_t i = 0; i < static_cast<std::int64_t>(prefix_prunes.size()); ++i) {
      auto [sampled, violations] =
          audit_pruned_node(tb, prefix_prunes[static_cast<std::size_t>(i)].cols, eps, eta);
#pragma omp atomic
      prefix_acc.result.audit_sampled += sampled;
#pragma omp atomic
      prefix_acc.result.audit_violations += violations;
    }
  }
  return census_merge(std::move(prefix_acc.result), std::move(parts));
}

}  // namespace inca::kernels
