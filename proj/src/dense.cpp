#include "inca/dense.hpp"

#include <algorithm>

namespace inca::dense {

Algebra::Algebra(const Poset& poset, std::uint32_t prime) {
  Field field = Field::prime(prime);  // validates primality and size
  p = field.modulus();
  n = poset.size();
  pairs = poset.comparable_pairs();
  d = static_cast<int>(pairs.size());

  pair_index.assign(static_cast<std::size_t>(n) * static_cast<std::size_t>(n), -1);
  diag_index.assign(static_cast<std::size_t>(n), -1);
  for (int k = 0; k < d; ++k) {
    pair_index[static_cast<std::size_t>(pairs[static_cast<std::size_t>(k)].first * n +
                                        pairs[static_cast<std::size_t>(k)].second)] = k;
    if (pairs[static_cast<std::size_t>(k)].first == pairs[static_cast<std::size_t>(k)].second)
      diag_index[static_cast<std::size_t>(pairs[static_cast<std::size_t>(k)].first)] = k;
  }

  terms_by_result.assign(static_cast<std::size_t>(d), {});
  for (int i = 0; i < d; ++i) {
    const auto& [x, z] = pairs[static_cast<std::size_t>(i)];
    for (int j = 0; j < d; ++j) {
      const auto& [z2, y] = pairs[static_cast<std::size_t>(j)];
      if (z2 != z) continue;
      terms_by_result[static_cast<std::size_t>(pair_index[static_cast<std::size_t>(x * n + y)])]
          .push_back({i, j});
    }
  }

  // Per-target triangular systems. Members of the down-set of y are ordered
  // by descending size of their own down-set, which is a linear extension
  // reversed, so the matrix f(x,z) is lower triangular.
  columns.assign(static_cast<std::size_t>(n), {});
  std::vector<int> below(static_cast<std::size_t>(n), 0);
  for (int z = 0; z < n; ++z)
    for (int w = 0; w < n; ++w)
      if (poset.leq(w, z)) ++below[static_cast<std::size_t>(z)];
  for (int y = 0; y < n; ++y) {
    Column& col = columns[static_cast<std::size_t>(y)];
    std::vector<int> members;
    for (int z = 0; z < n; ++z)
      if (poset.leq(z, y)) members.push_back(z);
    std::stable_sort(members.begin(), members.end(), [&](int a, int b) {
      return below[static_cast<std::size_t>(a)] > below[static_cast<std::size_t>(b)];
    });
    col.m = static_cast<int>(members.size());
    col.member_pair.resize(static_cast<std::size_t>(col.m));
    col.fmat.assign(static_cast<std::size_t>(col.m) * static_cast<std::size_t>(col.m), -1);
    for (int i = 0; i < col.m; ++i) {
      col.member_pair[static_cast<std::size_t>(i)] =
          pair_index[static_cast<std::size_t>(members[static_cast<std::size_t>(i)] * n + y)];
      for (int j = 0; j < col.m; ++j) {
        int x = members[static_cast<std::size_t>(i)];
        int z = members[static_cast<std::size_t>(j)];
        if (poset.leq(x, z)) col.fmat[static_cast<std::size_t>(i * col.m + j)] = pair_index[static_cast<std::size_t>(x * n + z)];
      }
    }
  }

  inv_table.assign(p, 0);
  for (std::uint32_t a = 1; a < p; ++a) inv_table[a] = mod_inverse(a, p);

  pow_p.assign(static_cast<std::size_t>(d) + 1, 0);
  pow_p[0] = 1;
  bool overflow = false;
  for (int k = 1; k <= d; ++k) {
    if (overflow || pow_p[static_cast<std::size_t>(k - 1)] > (1ull << 62) / p) {
      overflow = true;
      pow_p[static_cast<std::size_t>(k)] = 0;
    } else {
      pow_p[static_cast<std::size_t>(k)] = pow_p[static_cast<std::size_t>(k - 1)] * p;
    }
  }
  space_size = overflow ? 0 : pow_p[static_cast<std::size_t>(d)];
}

void Algebra::multiply(const Vec& a, const Vec& b, Vec& out) const {
  out.assign(static_cast<std::size_t>(d), 0);
  for (int k = 0; k < d; ++k) {
    std::uint64_t acc = 0;
    for (const Term& t : terms_by_result[static_cast<std::size_t>(k)])
      acc += std::uint64_t(a[static_cast<std::size_t>(t.left)]) * b[static_cast<std::size_t>(t.right)];
    out[static_cast<std::size_t>(k)] = static_cast<std::uint32_t>(acc % p);
  }
}

bool Algebra::multiply_equals(const Vec& a, const Vec& b, const Vec& expect) const {
  for (int k = 0; k < d; ++k) {
    std::uint64_t acc = 0;
    for (const Term& t : terms_by_result[static_cast<std::size_t>(k)])
      acc += std::uint64_t(a[static_cast<std::size_t>(t.left)]) * b[static_cast<std::size_t>(t.right)];
    if (acc % p != expect[static_cast<std::size_t>(k)]) return false;
  }
  return true;
}

void Algebra::decode(std::uint64_t index, Vec& out) const {
  out.resize(static_cast<std::size_t>(d));
  for (int k = 0; k < d; ++k) {
    out[static_cast<std::size_t>(k)] = static_cast<std::uint32_t>(index % p);
    index /= p;
  }
}

std::uint64_t Algebra::encode(const Vec& v) const {
  std::uint64_t index = 0;
  for (int k = d - 1; k >= 0; --k) index = index * p + v[static_cast<std::size_t>(k)];
  return index;
}

Vec Algebra::delta() const {
  Vec v = zero();
  for (int z = 0; z < n; ++z) v[static_cast<std::size_t>(diag_index[static_cast<std::size_t>(z)])] = 1;
  return v;
}

Vec Algebra::basis(int k) const {
  Vec v = zero();
  v[static_cast<std::size_t>(k)] = 1;
  return v;
}

Vec Algebra::from_element(const IncidenceElement& f) const {
  if (!f.field().is_prime_field() || f.field().modulus() != p)
    fail(Errc::MixedFields, "element is not over F_" + std::to_string(p));
  Vec v = zero();
  for (const auto& [pair, value] : f.entries())
    v[static_cast<std::size_t>(pair_index[static_cast<std::size_t>(pair.first * n + pair.second)])] =
        value.residue();
  return v;
}

IncidenceElement Algebra::to_element(const Vec& v, const PosetPtr& poset, Field field) const {
  IncidenceElement f(poset, field);
  for (int k = 0; k < d; ++k)
    if (v[static_cast<std::size_t>(k)] != 0)
      f = f.with(pairs[static_cast<std::size_t>(k)].first, pairs[static_cast<std::size_t>(k)].second,
                 Scalar::of(field, v[static_cast<std::size_t>(k)]));
  return f;
}

void Algebra::add_into(Vec& acc, const Vec& v) const {
  for (int k = 0; k < d; ++k)
    acc[static_cast<std::size_t>(k)] = add(acc[static_cast<std::size_t>(k)], v[static_cast<std::size_t>(k)]);
}

Matrix Matrix::from_linear_map(const LinearMap& map) {
  Matrix out;
  out.d = map.dim();
  out.m.resize(static_cast<std::size_t>(out.d) * static_cast<std::size_t>(out.d));
  for (int r = 0; r < out.d; ++r)
    for (int c = 0; c < out.d; ++c)
      out.m[static_cast<std::size_t>(r * out.d + c)] = map.at(r, c).residue();
  return out;
}

LinearMap Matrix::to_linear_map(const BasisOrder& order, Field field) const {
  LinearMap map(order, field);
  for (int r = 0; r < d; ++r)
    for (int c = 0; c < d; ++c)
      map.set(r, c, Scalar::of(field, at(r, c)));
  return map;
}

void Matrix::apply(const Algebra& a, const Vec& x, Vec& out) const {
  out.assign(static_cast<std::size_t>(d), 0);
  for (int j = 0; j < d; ++j) {
    std::uint32_t xj = x[static_cast<std::size_t>(j)];
    if (xj == 0) continue;
    for (int i = 0; i < d; ++i) {
      std::uint32_t mij = m[static_cast<std::size_t>(i * d + j)];
      if (mij != 0)
        out[static_cast<std::size_t>(i)] =
            static_cast<std::uint32_t>((out[static_cast<std::size_t>(i)] + std::uint64_t(mij) * xj) % a.p);
    }
  }
}

std::uint64_t Solutions::count(std::uint32_t p) const {
  if (!consistent) return 0;
  std::uint64_t c = 1;
  for (std::size_t i = 0; i < kernel.size(); ++i) c *= p;
  return c;
}

bool solve_right_fast(const Algebra& a, const Vec& f, const Vec& rhs, FastSolution& out,
                      SolveWorkspace& ws) {
  const std::size_t dd = static_cast<std::size_t>(a.d);
  out.consistent = true;
  out.kernel_dim = 0;
  out.particular.assign(dd, 0);

  for (const Algebra::Column& col : a.columns) {
    const int m = col.m;
    const int w = m + 1;
    ws.mat.assign(static_cast<std::size_t>(m) * static_cast<std::size_t>(w), 0);
    for (int i = 0; i < m; ++i) {
      for (int j = 0; j < m; ++j) {
        int k = col.fmat[static_cast<std::size_t>(i * m + j)];
        if (k >= 0) ws.mat[static_cast<std::size_t>(i * w + j)] = f[static_cast<std::size_t>(k)];
      }
      ws.mat[static_cast<std::size_t>(i * w + m)] = rhs[static_cast<std::size_t>(col.member_pair[static_cast<std::size_t>(i)])];
    }

    ws.pivot_of_col.assign(static_cast<std::size_t>(m), -1);
    ws.free_cols.clear();
    int rank = 0;
    for (int c = 0; c < m; ++c) {
      int pivot = -1;
      for (int r = rank; r < m; ++r)
        if (ws.mat[static_cast<std::size_t>(r * w + c)] != 0) {
          pivot = r;
          break;
        }
      if (pivot < 0) {
        ws.free_cols.push_back(c);
        continue;
      }
      if (pivot != rank)
        for (int c2 = 0; c2 <= m; ++c2)
          std::swap(ws.mat[static_cast<std::size_t>(pivot * w + c2)], ws.mat[static_cast<std::size_t>(rank * w + c2)]);
      std::uint32_t inv = a.inv_table[ws.mat[static_cast<std::size_t>(rank * w + c)]];
      for (int c2 = c; c2 <= m; ++c2)
        ws.mat[static_cast<std::size_t>(rank * w + c2)] = a.mul(ws.mat[static_cast<std::size_t>(rank * w + c2)], inv);
      for (int r = 0; r < m; ++r) {
        if (r == rank) continue;
        std::uint32_t factor = ws.mat[static_cast<std::size_t>(r * w + c)];
        if (factor == 0) continue;
        for (int c2 = c; c2 <= m; ++c2)
          ws.mat[static_cast<std::size_t>(r * w + c2)] =
              a.sub(ws.mat[static_cast<std::size_t>(r * w + c2)],
                    a.mul(factor, ws.mat[static_cast<std::size_t>(rank * w + c2)]));
      }
      ws.pivot_of_col[static_cast<std::size_t>(c)] = rank;
      ++rank;
    }
    for (int r = rank; r < m; ++r)
      if (ws.mat[static_cast<std::size_t>(r * w + m)] != 0) {
        out.consistent = false;
        out.kernel_dim = 0;
        return false;
      }
    for (int c = 0; c < m; ++c) {
      int r = ws.pivot_of_col[static_cast<std::size_t>(c)];
      if (r >= 0)
        out.particular[static_cast<std::size_t>(col.member_pair[static_cast<std::size_t>(c)])] =
            ws.mat[static_cast<std::size_t>(r * w + m)];
    }
    for (int fc : ws.free_cols) {
      const std::size_t base = static_cast<std::size_t>(out.kernel_dim) * dd;
      if (out.kernel_flat.size() < base + dd) out.kernel_flat.resize(base + dd);
      std::uint32_t* row = out.kernel_flat.data() + base;
      std::fill(row, row + dd, 0);
      row[static_cast<std::size_t>(col.member_pair[static_cast<std::size_t>(fc)])] = 1;
      for (int c = 0; c < m; ++c) {
        int r = ws.pivot_of_col[static_cast<std::size_t>(c)];
        if (r >= 0) {
          std::uint32_t v = ws.mat[static_cast<std::size_t>(r * w + fc)];
          if (v != 0)
            row[static_cast<std::size_t>(col.member_pair[static_cast<std::size_t>(c)])] = a.sub(0, v);
        }
      }
      ++out.kernel_dim;
    }
  }
  return true;
}

bool solve_right_into(const Algebra& a, const Vec& f, const Vec& rhs, Solutions& out,
                      SolveWorkspace& ws) {
  FastSolution fast;
  bool ok = solve_right_fast(a, f, rhs, fast, ws);
  out.consistent = fast.consistent;
  out.kernel.clear();
  for (int i = 0; i < fast.kernel_dim; ++i)
    out.kernel.emplace_back(fast.kernel_row(i), fast.kernel_row(i) + a.d);
  out.particular = std::move(fast.particular);
  return ok;
}

Solutions solve_right(const Algebra& a, const Vec& f, const Vec& rhs) {
  Solutions out;
  SolveWorkspace ws;
  solve_right_into(a, f, rhs, out, ws);
  return out;
}

}  // namespace inca::dense
