#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "inca/incidence.hpp"
#include "inca/linmaps.hpp"
#include "inca/poset.hpp"

namespace inca::dense {

/// Flat coordinate vector over F_p in the canonical basis order.
using Vec = std::vector<std::uint32_t>;

/// Precomputed structure of I(X,F_p) for the enumeration kernels: the
/// multiplication table grouped by result coordinate, and per-target-column
/// triangular systems for solving f*g = rhs.
struct Algebra {
  Algebra(const Poset& poset, std::uint32_t prime);

  std::uint32_t p;
  int d;  // comparable pair count
  int n;  // element count
  std::vector<std::pair<int, int>> pairs;
  std::vector<int> pair_index;  // n*n -> coordinate or -1
  std::vector<int> diag_index;  // z -> coordinate of (z,z)

  struct Term {
    int left, right;
  };
  std::vector<std::vector<Term>> terms_by_result;

  // For target y: unknowns g(z,y) over the down-set of y, ordered so the
  // system matrix f(x,z) is lower triangular.
  struct Column {
    int m = 0;
    std::vector<int> member_pair;  // coordinate of (member_j, y)
    std::vector<int> fmat;         // m*m -> coordinate of (member_i, member_j) or -1
  };
  std::vector<Column> columns;

  std::vector<std::uint32_t> inv_table;  // modular inverses, [0] unused
  std::vector<std::uint64_t> pow_p;      // p^0 .. p^d (saturated at 2^63)
  std::uint64_t space_size;              // p^d, 0 if it overflows the cap

  std::uint32_t add(std::uint32_t a, std::uint32_t b) const { return (a + b) % p; }
  std::uint32_t sub(std::uint32_t a, std::uint32_t b) const { return (a + p - b) % p; }
  std::uint32_t mul(std::uint32_t a, std::uint32_t b) const {
    return static_cast<std::uint32_t>(std::uint64_t(a) * b % p);
  }

  void multiply(const Vec& a, const Vec& b, Vec& out) const;
  bool multiply_equals(const Vec& a, const Vec& b, const Vec& expect) const;

  void decode(std::uint64_t index, Vec& out) const;
  std::uint64_t encode(const Vec& v) const;

  Vec zero() const { return Vec(static_cast<std::size_t>(d), 0); }
  Vec delta() const;
  Vec basis(int k) const;

  Vec from_element(const IncidenceElement& f) const;
  IncidenceElement to_element(const Vec& v, const PosetPtr& poset, Field field) const;
  void add_into(Vec& acc, const Vec& v) const;  // acc += v
};

/// Row-major d x d matrix over F_p; column j is the image of basis j.
struct Matrix {
  int d = 0;
  std::vector<std::uint32_t> m;

  static Matrix from_linear_map(const LinearMap& map);
  LinearMap to_linear_map(const BasisOrder& order, Field field) const;
  void apply(const Algebra& a, const Vec& x, Vec& out) const;
  std::uint32_t at(int r, int c) const { return m[static_cast<std::size_t>(r * d + c)]; }
};

/// Affine solution set of f*g = rhs in the coordinates of g.
struct Solutions {
  bool consistent = false;
  Vec particular;
  std::vector<Vec> kernel;
  /// p^dim(kernel); 0 when inconsistent.
  std::uint64_t count(std::uint32_t p) const;
};

/// Reusable elimination buffers for the hot loops.
struct SolveWorkspace {
  std::vector<std::uint32_t> mat;
  std::vector<int> pivot_of_col;
  std::vector<int> free_cols;
};

/// Allocation-free variant for enumeration loops: the kernel basis lives in
/// one flat buffer of kernel_dim rows of length d, reused across calls.
struct FastSolution {
  bool consistent = false;
  Vec particular;
  std::vector<std::uint32_t> kernel_flat;
  int kernel_dim = 0;
  const std::uint32_t* kernel_row(int i) const { return kernel_flat.data() + static_cast<std::size_t>(i) * particular.size(); }
};

bool solve_right_fast(const Algebra& a, const Vec& f, const Vec& rhs, FastSolution& out,
                      SolveWorkspace& ws);

/// Solves f*g = rhs column by column (the system is block lower triangular
/// per target element). Kernel vectors are returned in a deterministic order.
Solutions solve_right(const Algebra& a, const Vec& f, const Vec& rhs);
bool solve_right_into(const Algebra& a, const Vec& f, const Vec& rhs, Solutions& out,
                      SolveWorkspace& ws);

}  // namespace inca::dense
