#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "mmc/constraints.hpp"

using namespace mmc;

namespace {

TPolynomial t(int v) { return TPolynomial::variable(v); }

TPolynomial random_poly(std::mt19937_64& rng, int max_var = 4, int max_deg = 3) {
  std::uniform_int_distribution<int> nterms(0, 3), var(0, max_var), deg(0, max_deg),
      coeff(-4, 4), power(-1, 1);
  TPolynomial p;
  const int k = nterms(rng);
  for (int i = 0; i < k; ++i) {
    ExpVec e;
    const int d = deg(rng);
    for (int j = 0; j < d; ++j) e.emplace_back(var(rng), 1);
    p += TPolynomial::monomial(e, NLaurent::monomial(power(rng), coeff(rng)));
  }
  return p;
}

WeylOperator random_weyl(std::mt19937_64& rng) {
  std::uniform_int_distribution<int> nterms(1, 3), var(0, 3), cnt(0, 2), coeff(-3, 3);
  WeylOperator w;
  const int k = nterms(rng);
  for (int i = 0; i < k; ++i) {
    ExpVec te, de;
    for (int j = cnt(rng); j > 0; --j) te.emplace_back(var(rng), 1);
    for (int j = cnt(rng); j > 0; --j) de.emplace_back(var(rng), 1);
    w.add(NLaurent(coeff(rng)), te, de);
  }
  return w;
}

}  // namespace

TEST_CASE("polynomial arithmetic") {
  CHECK(t(1) * t(1) == TPolynomial::monomial({{1, 2}}, NLaurent(1)));
  const TPolynomial p = t(1) + t(2);
  CHECK(p + TPolynomial() == p);
  CHECK((t(1) + t(2)) * t(3) == t(1) * t(3) + t(2) * t(3));
}

TEST_CASE("weyl apply product rule") {
  // t1 d2 applied to t2^2
  const WeylOperator op = WeylOperator::term(NLaurent(1), {{1, 1}}, {{2, 1}});
  const TPolynomial t2sq = t(2) * t(2);
  CHECK(op.apply(t2sq) == NLaurent(2) * (t(1) * t(2)));
}

TEST_CASE("weyl compose canonical commutation") {
  const WeylOperator d1 = WeylOperator::d_var(1), t1 = WeylOperator::t_var(1);
  CHECK(d1.compose(t1) ==
        WeylOperator::term(NLaurent(1), {{1, 1}}, {{1, 1}}) + WeylOperator::identity());
  CHECK(d1.compose(WeylOperator::t_var(2)) ==
        WeylOperator::term(NLaurent(1), {{2, 1}}, {{1, 1}}));
  // d1^2 t1 = t1 d1^2 + 2 d1
  const WeylOperator d1sq = WeylOperator::term(NLaurent(1), {}, {{1, 2}});
  CHECK(d1sq.compose(t1) ==
        WeylOperator::term(NLaurent(1), {{1, 1}}, {{1, 2}}) +
            NLaurent(2) * WeylOperator::d_var(1));
}

TEST_CASE("compose contract: apply(compose(A,B),p) == apply(A, apply(B,p))") {
  std::mt19937_64 rng(42);
  for (int i = 0; i < 120; ++i) {
    const WeylOperator a = random_weyl(rng), b = random_weyl(rng);
    const TPolynomial p = random_poly(rng);
    CHECK(a.compose(b).apply(p) == a.apply(b.apply(p)));
  }
}

TEST_CASE("commutator actions") {
  const WeylOperator d1 = WeylOperator::d_var(1), t1 = WeylOperator::t_var(1);
  CHECK(commutator_action(d1, t1, TPolynomial(1)) == TPolynomial(1));

  // [L_1, L_-1] = 2 L_0 on t1
  const Family l1 = virasoro_constraint(1), lm1 = virasoro_constraint(-1),
               l0 = virasoro_constraint(0);
  CHECK(commutator_action(l1, lm1, t(1)) == NLaurent(2) * l0.apply(t(1)));
  CHECK(l0.apply(t(1)) == t(1));
  std::mt19937_64 rng(3);
  CHECK(commutator_action(l0, l0, random_poly(rng)).is_zero());
}

TEST_CASE("virasoro constraint examples") {
  CHECK(virasoro_constraint(-1).apply(t(1)) == NLaurent(2) * t(2));
  CHECK(virasoro_constraint(0).apply(t(3)) == NLaurent(3) * t(3));
  CHECK(virasoro_constraint(2).apply(t(2) * t(2)).is_zero());
  CHECK_THROWS_AS(virasoro_constraint(-2), std::invalid_argument);
}

TEST_CASE("hat_l branches") {
  CHECK(hat_l(-2).apply(TPolynomial(1)) ==
        TPolynomial::monomial({{1, 2}}, NLaurent::monomial(2, Rational(1, 4))));
  CHECK(hat_l(-1).apply(TPolynomial(1)).is_zero());
  CHECK(equal_on_window(hat_l(1), virasoro_constraint(1), 6, 3).ok);
}

TEST_CASE("current mode forms") {
  // j_{-3} at level 2 is multiplication by 3N t3
  CHECK(current_mode(-3).apply(TPolynomial(1)) == NLaurent::monomial(1, 3) * t(3));
  // j_2 = (2/N) d2
  CHECK(current_mode(2).apply(t(2)) == TPolynomial(NLaurent::monomial(-1, 2)));
  // [j_1, j_-1] = 2 on constants at level 2
  CHECK(commutator_action(current_mode(1), current_mode(-1), TPolynomial(1)) ==
        TPolynomial(NLaurent(2)));
}

TEST_CASE("sugawara examples") {
  CHECK(sugawara_mode(0, 2).apply(t(2)) == NLaurent(2) * t(2));
  CHECK(sugawara_mode(-2, 2).apply(TPolynomial(1)) ==
        TPolynomial::monomial({{1, 2}}, NLaurent::monomial(2, Rational(1, 4))));
}

TEST_CASE("equal_on_window") {
  // explicit truncation of L_0: sum_k k t_k d_k + (1/N^2) d0^2
  WeylOperator b;
  for (int k = 1; k <= 9; ++k) b.add(NLaurent(k), {{k, 1}}, {{k, 1}});
  b.add(NLaurent::monomial(-2, 1), {}, {{0, 2}});
  CHECK(equal_on_window(virasoro_constraint(0), b, 6, 3).ok);

  const auto fail = equal_on_window(WeylOperator::d_var(1), WeylOperator::d_var(2), 2, 1);
  REQUIRE_FALSE(fail.ok);
  CHECK(*fail.monomial == ExpVec{{1, 1}});

  CHECK(equal_on_window(hat_l(-3), hat_l(-3), 4, 2).ok);
}

TEST_CASE("family application is cutoff independent") {
  std::mt19937_64 rng(77);
  const std::vector<Family> families = {
      virasoro_constraint(-1), virasoro_constraint(0), virasoro_constraint(3),
      hat_l(-4), hat_l(2), sugawara_mode(-3, 2), sugawara_mode(1, 2),
      generalized_constraint(1, Partition{2, 1}), current_mode(-2), current_mode(2),
      Family::product({hat_l(-2), current_mode(1)})};
  for (const Family& f : families)
    for (int i = 0; i < 12; ++i) {
      const TPolynomial p = random_poly(rng);
      CHECK(f.apply(p) == f.apply(p, 5));
    }
}

TEST_CASE("family application is linear") {
  std::mt19937_64 rng(123);
  const std::vector<Family> families = {virasoro_constraint(1), hat_l(-3),
                                        sugawara_mode(0, 2),
                                        generalized_constraint(0, Partition{1})};
  for (const Family& f : families)
    for (int i = 0; i < 10; ++i) {
      const TPolynomial p = random_poly(rng), q = random_poly(rng);
      const NLaurent alpha = NLaurent::monomial(1, 2), beta = NLaurent(Rational(1, 3));
      CHECK(f.apply(alpha * p + beta * q) == alpha * f.apply(p) + beta * f.apply(q));
    }
}

TEST_CASE("virasoro constraint grading") {
  // L_n sends a degree-d monomial to terms of degree d or d-2, with the
  // variable-index weight shifted by exactly -n.
  for (int n = -1; n <= 3; ++n) {
    const Family ln = virasoro_constraint(n);
    for (const ExpVec& e : window_monomials(5, 3)) {
      const int d = expvec_degree(e), w = expvec_index_weight(e);
      const TPolynomial out = ln.apply(TPolynomial::monomial(e, NLaurent(1)));
      for (const auto& [oe, oc] : out.terms()) {
        const int od = expvec_degree(oe);
        CHECK((od == d || od == d - 2));
        CHECK(expvec_index_weight(oe) == w - n);
      }
    }
  }
}

TEST_CASE("weyl operator json shape") {
  const WeylOperator op = WeylOperator::term(NLaurent(2), {{1, 1}}, {{0, 2}});
  CHECK(op.to_json().dump() ==
        R"([{"coeff":{"terms":[[0,"2/1"]]},"t":[[1,1]],"d":[[0,2]]}])");
}
