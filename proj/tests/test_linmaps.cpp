#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "inca/linmaps.hpp"
#include "inca/rng.hpp"
#include "poset_catalog.hpp"

using namespace inca;
namespace ts = inca::testsupport;

namespace {

IncidenceElement random_unit(const PosetPtr& p, Field f, Rng& rng) {
  IncidenceElement out(p, f);
  for (const auto& [u, v] : p->comparable_pairs()) {
    long long r;
    if (u == v) {
      r = f.is_prime_field() ? 1 + static_cast<long long>(rng.below(f.modulus() - 1))
                             : 1 + static_cast<long long>(rng.below(5));
    } else {
      r = f.is_prime_field() ? static_cast<long long>(rng.below(f.modulus()))
                             : static_cast<long long>(rng.below(7)) - 3;
    }
    if (r != 0) out = out.with(u, v, Scalar::of(f, r));
  }
  return out;
}

std::vector<Scalar> random_rho(const PosetPtr& p, Field f, Rng& rng) {
  std::vector<Scalar> rho;
  for (int z = 0; z < p->size(); ++z) {
    long long r = f.is_prime_field() ? 1 + static_cast<long long>(rng.below(f.modulus() - 1))
                                     : 1 + static_cast<long long>(rng.below(5));
    rho.push_back(Scalar::of(f, r));
    (void)z;
  }
  return rho;
}

}  // namespace

TEST_CASE("basis order is lexicographic by (source, target)") {
  auto v = ts::v_poset();
  BasisOrder order(v);
  REQUIRE(order.dim() == 5);
  CHECK(order.pair_at(0) == std::pair<int, int>{0, 0});
  CHECK(order.pair_at(1) == std::pair<int, int>{0, 2});
  CHECK(order.pair_at(2) == std::pair<int, int>{1, 1});
  CHECK(order.pair_at(3) == std::pair<int, int>{1, 2});
  CHECK(order.pair_at(4) == std::pair<int, int>{2, 2});
  CHECK(order.index_of(1, 2) == 3);
  CHECK_THROWS_AS(order.index_of(0, 1), Error);
}

TEST_CASE("map arithmetic") {
  auto v = ts::v_poset();
  auto f3 = Field::prime(3);
  BasisOrder order(v);
  auto id = LinearMap::identity(order, f3);

  Rng rng(5);
  auto f = IncidenceElement::basis(v, f3, 0, 2) + IncidenceElement::identity(v, f3);
  CHECK(id.apply(f) == f);

  // a random bijective map composed with its inverse is the identity
  LinearMap m(order, f3);
  for (;;) {
    for (int r = 0; r < order.dim(); ++r)
      for (int c = 0; c < order.dim(); ++c)
        m.set(r, c, Scalar::of(f3, static_cast<long long>(rng.below(3))));
    if (m.is_bijective()) break;
  }
  CHECK(m.compose(m.inverse()) == id);
  CHECK(m.inverse().compose(m) == id);

  LinearMap zero(order, f3);
  CHECK_FALSE(zero.is_bijective());
  CHECK_THROWS_AS(zero.inverse(), Error);

  BasisOrder other(ts::chain(3));
  CHECK_THROWS_AS(id.compose(LinearMap::identity(other, f3)), Error);
}

TEST_CASE("induced automorphisms") {
  auto v = ts::v_poset();
  auto f2 = Field::prime(2);
  BasisOrder order(v);
  auto autos = v->automorphisms();
  REQUIRE(autos.size() == 2);

  CHECK(induced_automorphism(order, f2, autos[0]) == LinearMap::identity(order, f2));

  auto swapped = induced_automorphism(order, f2, autos[1]);
  CHECK(swapped.apply(IncidenceElement::basis(v, f2, 0, 2)) ==
        IncidenceElement::basis(v, f2, 1, 2));

  // functoriality
  for (const auto& a : autos)
    for (const auto& b : autos)
      CHECK(induced_automorphism(order, f2, a.compose(*v, b)) ==
            induced_automorphism(order, f2, a).compose(induced_automorphism(order, f2, b)));
}

TEST_CASE("cocycles and multiplicative automorphisms") {
  auto v = ts::v_poset();
  auto f5 = Field::prime(5);
  BasisOrder order(v);

  CHECK(multiplicative_automorphism(order, Cocycle::trivial(v, f5)) ==
        LinearMap::identity(order, f5));

  Rng rng(71);
  auto sigma = Cocycle::coboundary(v, f5, random_rho(v, f5, rng));
  for (int x = 0; x < 3; ++x)
    for (int y = 0; y < 3; ++y) {
      if (!v->leq(x, y)) continue;
      for (int z = 0; z < 3; ++z)
        if (v->leq(y, z)) CHECK(sigma.at(x, y) * sigma.at(y, z) == sigma.at(x, z));
    }

  // the frozen violating triple: 2*3 = 6 = 1 != 4 mod 5
  auto c3 = ts::chain(3);
  std::map<std::pair<int, int>, Scalar> bad;
  bad.emplace(std::make_pair(0, 1), Scalar::of(f5, 2));
  bad.emplace(std::make_pair(1, 2), Scalar::of(f5, 3));
  bad.emplace(std::make_pair(0, 2), Scalar::of(f5, 4));
  try {
    Cocycle::validate(c3, f5, bad);
    CHECK(false);
  } catch (const Error& e) {
    CHECK(e.code() == Errc::CocycleViolation);
  }

  std::map<std::pair<int, int>, Scalar> zero_value;
  zero_value.emplace(std::make_pair(0, 1), Scalar::zero(f5));
  CHECK_THROWS_AS(Cocycle::validate(c3, f5, zero_value), Error);
  CHECK_THROWS_AS(Cocycle::coboundary(v, f5, {Scalar::zero(f5), Scalar::one(f5), Scalar::one(f5)}),
                  Error);
}

TEST_CASE("inner automorphisms") {
  auto v = ts::v_poset();
  auto f2 = Field::prime(2);
  auto f5 = Field::prime(5);
  BasisOrder order(v);

  CHECK(inner_automorphism(order, IncidenceElement::identity(v, f2)) ==
        LinearMap::identity(order, f2));
  CHECK(inner_automorphism(order, IncidenceElement::identity(v, f5).scaled(Scalar::of(f5, 2))) ==
        LinearMap::identity(BasisOrder(v), f5));

  auto beta = IncidenceElement::identity(v, f2) + IncidenceElement::basis(v, f2, 0, 2);
  auto phi = inner_automorphism(order, beta);
  CHECK(phi.apply(IncidenceElement::basis(v, f2, 2, 2)) ==
        IncidenceElement::basis(v, f2, 2, 2) + IncidenceElement::basis(v, f2, 0, 2));

  CHECK_THROWS_AS(inner_automorphism(order, IncidenceElement::basis(v, f2, 0, 0)), Error);
}

TEST_CASE("plus-minus automorphism recognition") {
  auto v = ts::v_poset();
  auto f3 = Field::prime(3);
  auto f2 = Field::prime(2);
  BasisOrder order3(v);
  BasisOrder order2(v);
  auto swap = v->automorphisms()[1];

  CHECK(is_pm_automorphism(induced_automorphism(order3, f3, swap)) == PmVerdict::automorphism);
  CHECK(is_pm_automorphism(induced_automorphism(order3, f3, swap).negated()) ==
        PmVerdict::negative_of_automorphism);
  CHECK(is_pm_automorphism(induced_automorphism(order2, f2, swap).negated()) ==
        PmVerdict::automorphism);  // characteristic 2 collapses the sign

  // e_ac -> 0, everything else fixed: not bijective
  LinearMap broken = LinearMap::identity(order2, f2);
  broken.set(1, 1, Scalar::zero(f2));
  CHECK(is_pm_automorphism(broken) == PmVerdict::neither);

  // bijective but not multiplicative: swap e_aa and e_ac coordinates
  LinearMap shuffled = LinearMap::identity(order2, f2);
  shuffled.set(0, 0, Scalar::zero(f2));
  shuffled.set(1, 1, Scalar::zero(f2));
  shuffled.set(0, 1, Scalar::one(f2));
  shuffled.set(1, 0, Scalar::one(f2));
  CHECK(shuffled.is_bijective());
  CHECK(is_pm_automorphism(shuffled) == PmVerdict::neither);
}

TEST_CASE("the three families are automorphisms, exhaustively over F_2 on |X| <= 4") {
  auto f2 = Field::prime(2);
  for (const auto& p : ts::all_posets_up_to(4)) {
    BasisOrder order(p);
    for (const auto& lambda : p->automorphisms())
      CHECK(is_pm_automorphism(induced_automorphism(order, f2, lambda)) ==
            PmVerdict::automorphism);

    // all units over F_2: unit diagonal, arbitrary strict part
    std::vector<std::pair<int, int>> strict;
    for (const auto& pr : p->comparable_pairs())
      if (pr.first != pr.second) strict.push_back(pr);
    for (std::uint64_t mask = 0; mask < (1ull << strict.size()); ++mask) {
      auto beta = IncidenceElement::identity(p, f2);
      for (std::size_t b = 0; b < strict.size(); ++b)
        if (mask & (1ull << b))
          beta = beta.with(strict[b].first, strict[b].second, Scalar::one(f2));
      CHECK(is_pm_automorphism(inner_automorphism(order, beta)) == PmVerdict::automorphism);
    }

    // F_2 admits only the trivial cocycle
    CHECK(is_pm_automorphism(multiplicative_automorphism(order, Cocycle::trivial(p, f2))) ==
          PmVerdict::automorphism);
  }
}

TEST_CASE("decomposition round trips") {
  auto v = ts::v_poset();
  auto f5 = Field::prime(5);
  BasisOrder order(v);
  auto swap = v->automorphisms()[1];

  // identity decomposes trivially
  auto id = LinearMap::identity(order, f5);
  auto d0 = decompose_automorphism(id);
  CHECK(recompose(d0, order, f5) == id);
  CHECK(d0.lambda.is_identity());

  // induced(swap): recomposition equality and the swap is recovered
  auto phi1 = induced_automorphism(order, f5, swap);
  auto d1 = decompose_automorphism(phi1);
  CHECK(d1.lambda.perm() == swap.perm());
  CHECK(recompose(d1, order, f5) == phi1);
  for (const Scalar& s : d1.diagonal_scalars) CHECK(s.is_one());

  // the frozen composite example over F_5
  Rng rng(29);
  auto beta = IncidenceElement::identity(v, f5) + IncidenceElement::basis(v, f5, 0, 2);
  auto sigma = Cocycle::coboundary(v, f5, random_rho(v, f5, rng));
  auto phi2 = inner_automorphism(order, beta)
                  .compose(induced_automorphism(order, f5, swap))
                  .compose(multiplicative_automorphism(order, sigma));
  auto d2 = decompose_automorphism(phi2);
  CHECK(recompose(d2, order, f5) == phi2);

  CHECK_THROWS_AS(decompose_automorphism(phi2.negated()), Error);
  CHECK_THROWS_AS(decompose_automorphism(LinearMap(order, f5)), Error);
}

TEST_CASE("decomposition handles a non-coboundary cocycle on the 4-crown") {
  // a < c, a < d, b < c, b < d: no chains of length 2, so any nonzero values
  // form a cocycle; generic values are not of the form rho(u)/rho(v)
  auto crown = make_poset({"a", "b", "c", "d"}, {{"a", "c"}, {"a", "d"}, {"b", "c"}, {"b", "d"}});
  auto f5 = Field::prime(5);
  BasisOrder order(crown);
  std::map<std::pair<int, int>, Scalar> values;
  values.emplace(std::make_pair(0, 2), Scalar::of(f5, 1));
  values.emplace(std::make_pair(0, 3), Scalar::of(f5, 2));
  values.emplace(std::make_pair(1, 2), Scalar::of(f5, 3));
  values.emplace(std::make_pair(1, 3), Scalar::of(f5, 4));
  auto sigma = Cocycle::validate(crown, f5, values);
  auto phi = multiplicative_automorphism(order, sigma);
  auto d = decompose_automorphism(phi);
  CHECK(recompose(d, order, f5) == phi);
}

TEST_CASE("random composites decompose and recompose exactly") {
  auto f5 = Field::prime(5);
  Rng rng(31);
  for (const auto& p : ts::connected_posets_up_to(4)) {
    BasisOrder order(p);
    auto autos = p->automorphisms();
    for (int trial = 0; trial < 10; ++trial) {
      auto beta = random_unit(p, f5, rng);
      auto lambda = autos[rng.below(autos.size())];
      auto sigma = Cocycle::coboundary(p, f5, random_rho(p, f5, rng));
      auto phi = inner_automorphism(order, beta)
                     .compose(induced_automorphism(order, f5, lambda))
                     .compose(multiplicative_automorphism(order, sigma));
      auto d = decompose_automorphism(phi);
      CHECK(recompose(d, order, f5) == phi);
    }
  }
}
