#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "inca/kernels.hpp"
#include "inca/preserver.hpp"
#include "inca/rng.hpp"
#include "poset_catalog.hpp"

using namespace inca;
namespace ts = inca::testsupport;

namespace {

dense::Matrix random_matrix(const dense::Algebra& a, Rng& rng) {
  dense::Matrix m;
  m.d = a.d;
  m.m.resize(static_cast<std::size_t>(a.d) * static_cast<std::size_t>(a.d));
  for (auto& e : m.m) e = static_cast<std::uint32_t>(rng.below(a.p));
  return m;
}

bool same_verify(const kernels::VerifyResult& a, const kernels::VerifyResult& b) {
  if (a.holds != b.holds || a.pairs_checked != b.pairs_checked) return false;
  if (a.has_counterexample != b.has_counterexample) return false;
  if (a.has_counterexample)
    return a.ce_f_index == b.ce_f_index && a.ce_sol_index == b.ce_sol_index && a.ce_f == b.ce_f &&
           a.ce_g == b.ce_g;
  return true;
}

}  // namespace

TEST_CASE("dense multiplication matches the sparse algebra on all pairs (V, F_3)") {
  auto v = ts::v_poset();
  auto f3 = Field::prime(3);
  dense::Algebra a(*v, 3);
  dense::Vec x, y, z;
  for (std::uint64_t i = 0; i < a.space_size; ++i) {
    a.decode(i, x);
    auto xs = a.to_element(x, v, f3);
    for (std::uint64_t j = 0; j < a.space_size; ++j) {
      a.decode(j, y);
      a.multiply(x, y, z);
      CHECK(a.to_element(z, v, f3) == xs * a.to_element(y, v, f3));
    }
  }
}

TEST_CASE("dense solver agrees with the generic right-factor solver") {
  for (std::uint32_t p : {2u, 3u, 5u}) {
    for (const auto& poset : {ts::v_poset(), ts::chain(3)}) {
      dense::Algebra a(*poset, p);
      Field field = Field::prime(p);
      Rng rng(p * 31 + static_cast<std::uint64_t>(poset->size()));
      for (int trial = 0; trial < 20; ++trial) {
        dense::Vec f(static_cast<std::size_t>(a.d)), rhs(static_cast<std::size_t>(a.d));
        for (auto& c : f) c = static_cast<std::uint32_t>(rng.below(p));
        for (auto& c : rhs) c = static_cast<std::uint32_t>(rng.below(p));
        auto got = dense::solve_right(a, f, rhs);
        auto expected = right_factors(a.to_element(f, poset, field), a.to_element(rhs, poset, field));
        REQUIRE(got.consistent == expected.consistent);
        if (!got.consistent) continue;
        CHECK(a.to_element(got.particular, poset, field) == expected.particular);
        REQUIRE(got.kernel.size() == expected.kernel.size());
        for (std::size_t k = 0; k < got.kernel.size(); ++k)
          CHECK(a.to_element(got.kernel[k], poset, field) == expected.kernel[k]);
      }
    }
  }
}

TEST_CASE("serial and parallel verification agree, including counterexamples") {
  for (std::uint32_t p : {2u, 3u}) {
    for (const auto& poset : {ts::v_poset(), ts::chain(3)}) {
      dense::Algebra a(*poset, p);
      dense::Vec eps = a.basis(a.diag_index[0]);
      dense::Vec eta = a.basis(a.diag_index[poset->size() - 1]);
      Rng rng(p * 1000 + static_cast<std::uint64_t>(poset->size()));
      for (int trial = 0; trial < 15; ++trial) {
        auto m = random_matrix(a, rng);
        auto rs = kernels::exhaustive_verify_serial(a, m, eps, eta);
        for (int jobs : {1, 2, 3}) {
          auto rp = kernels::exhaustive_verify_parallel(a, m, eps, eta, jobs);
          CHECK(same_verify(rs, rp));
        }
      }
    }
  }
}

TEST_CASE("serial and parallel square roots agree") {
  for (std::uint32_t p : {2u, 3u}) {
    auto poset = ts::chain(3);
    dense::Algebra a(*poset, p);
    for (int y = 0; y < poset->size(); ++y) {
      auto target = a.basis(a.diag_index[static_cast<std::size_t>(y)]);
      auto rs = kernels::square_roots_serial(a, target);
      for (int jobs : {1, 2, 3}) CHECK(kernels::square_roots_parallel(a, target, jobs) == rs);
    }
  }
}

TEST_CASE("serial and parallel censuses agree") {
  struct Case {
    PosetPtr poset;
    std::uint32_t p;
    int x, y;
  };
  for (const Case& c : {Case{ts::chain(2), 2, 0, 0}, Case{ts::chain(2), 2, 0, 1},
                        Case{ts::chain(2), 3, 0, 0}, Case{ts::chain(1), 3, 0, 0}}) {
    dense::Algebra a(*c.poset, c.p);
    auto rs = kernels::census_serial(a, c.x, c.y);
    for (int jobs : {1, 2, 3}) {
      auto rp = kernels::census_parallel(a, c.x, c.y, jobs);
      CHECK(rs.total == rp.total);
      CHECK(rs.pruned == rp.pruned);
      CHECK(rs.fully_checked == rp.fully_checked);
      CHECK(rs.audit_sampled == rp.audit_sampled);
      CHECK(rs.audit_violations == rp.audit_violations);
      REQUIRE(rs.preservers.size() == rp.preservers.size());
      for (std::size_t i = 0; i < rs.preservers.size(); ++i)
        CHECK(rs.preservers[i].m == rp.preservers[i].m);
    }
  }
}

TEST_CASE("census totals equal the group order") {
  CHECK(kernels::gl_order(2, 3) == 168);
  CHECK(kernels::gl_order(2, 5) == 9999360);
  CHECK(kernels::gl_order(3, 3) == 11232);
  auto c2 = ts::chain(2);
  dense::Algebra a(*c2, 2);
  auto census = kernels::census_serial(a, 0, 1);
  CHECK(census.total == 168);
  CHECK(census.total == census.pruned + census.fully_checked);
}

TEST_CASE("verify scan counts pairs exactly like the definitional loop (chain 2, F_2)") {
  auto c2 = ts::chain(2);
  dense::Algebra a(*c2, 2);
  Field f2 = Field::prime(2);
  dense::Vec eps = a.basis(a.diag_index[0]);
  Rng rng(5);
  for (int trial = 0; trial < 10; ++trial) {
    auto m = random_matrix(a, rng);
    auto res = kernels::exhaustive_verify_serial(a, m, eps, eps);
    std::uint64_t expected = 0;
    dense::Vec f, g, prod;
    for (std::uint64_t i = 0; i < a.space_size; ++i) {
      a.decode(i, f);
      for (std::uint64_t j = 0; j < a.space_size; ++j) {
        a.decode(j, g);
        a.multiply(f, g, prod);
        if (prod == eps) ++expected;
      }
    }
    CHECK(res.pairs_checked == expected);
    (void)f2;
  }
}
