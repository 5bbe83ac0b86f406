#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "mmc/nlaurent.hpp"
#include "mmc/partition.hpp"

using namespace mmc;

namespace {

NLaurent random_nlaurent(std::mt19937_64& rng) {
  std::uniform_int_distribution<int> nterms(0, 4), power(-3, 3), num(-6, 6);
  std::uniform_int_distribution<int> den(1, 4);
  NLaurent x;
  const int k = nterms(rng);
  for (int i = 0; i < k; ++i)
    x += NLaurent::monomial(power(rng), Rational(num(rng), den(rng)));
  return x;
}

}  // namespace

TEST_CASE("nlaurent arithmetic basics") {
  const NLaurent two_n_plus_inv = NLaurent::monomial(1, 2) + NLaurent::monomial(-1, 1);
  CHECK(two_n_plus_inv * NLaurent::n() ==
        NLaurent::monomial(2, 2) + NLaurent(1));

  std::mt19937_64 rng(11);
  const NLaurent x = random_nlaurent(rng);
  CHECK((x - x).is_zero());
  CHECK(NLaurent(1) * x == x);
}

TEST_CASE("nlaurent ring axioms on random triples") {
  std::mt19937_64 rng(2024);
  for (int i = 0; i < 200; ++i) {
    const NLaurent a = random_nlaurent(rng), b = random_nlaurent(rng), c = random_nlaurent(rng);
    CHECK(a + b == b + a);
    CHECK(a * b == b * a);
    CHECK((a + b) + c == a + (b + c));
    CHECK((a * b) * c == a * (b * c));
    CHECK(a * (b + c) == a * b + a * c);
  }
}

TEST_CASE("nlaurent eval") {
  const NLaurent x = NLaurent::monomial(1, 2) + NLaurent::monomial(-1, 1);
  CHECK(x.eval(2) == Rational(9, 2));
  CHECK(NLaurent().eval(7) == 0);
  CHECK((NLaurent::monomial(2, 1) + NLaurent(2)).eval(3) == 11);
  CHECK_THROWS_AS(x.eval(0), std::domain_error);
}

TEST_CASE("nlaurent power split round trip") {
  const NLaurent x = NLaurent::monomial(2, 1) + NLaurent(2);
  auto split = x.power_split();
  REQUIRE(split.size() == 2);
  CHECK(split[0] == std::pair<int, Rational>{2, 1});
  CHECK(split[1] == std::pair<int, Rational>{0, 2});
  CHECK(NLaurent().power_split().empty());

  std::mt19937_64 rng(7);
  for (int i = 0; i < 50; ++i) {
    const NLaurent x2 = random_nlaurent(rng);
    NLaurent back;
    for (const auto& [p, c] : x2.power_split()) back += NLaurent::monomial(p, c);
    CHECK(back == x2);
  }
}

TEST_CASE("nlaurent json round trip") {
  std::mt19937_64 rng(5);
  for (int i = 0; i < 30; ++i) {
    const NLaurent x = random_nlaurent(rng);
    CHECK(NLaurent::from_json(x.to_json()) == x);
  }
  const NLaurent x = NLaurent::monomial(1, 2) + NLaurent(1);
  CHECK(x.to_json().dump() == R"({"terms":[[1,"2/1"],[0,"1/1"]]})");
}

TEST_CASE("partition union and remove") {
  CHECK(partition_union(Partition{3, 1}, Partition{2, 2}) == Partition{3, 2, 2, 1});
  CHECK(partition_union(Partition{3, 1}, Partition{}) == Partition{3, 1});
  CHECK(partition_union(GeneralizedPartition{-2, 1}, GeneralizedPartition{0}) ==
        GeneralizedPartition{-2, 0, 1});

  CHECK(partition_remove(Partition{3, 2, 1}, 2) == Partition{3, 1});
  CHECK(partition_remove(Partition{2, 2}, 2) == Partition{2});
  CHECK_THROWS_AS(partition_remove(Partition{1}, 3), std::out_of_range);
}

TEST_CASE("partition weight and length") {
  CHECK(Partition{3, 2, 2}.weight() == 7);
  CHECK(GeneralizedPartition{-2, 1, 3}.weight() == 2);
  CHECK(Partition{}.length() == 0);
  CHECK(IndexMultiset{2, 0, 0}.weight() == 2);
  CHECK_THROWS_AS(Partition{std::vector<int>{0}}, std::invalid_argument);
  CHECK_THROWS_AS(IndexMultiset{std::vector<int>{-1}}, std::invalid_argument);
}

TEST_CASE("partition algebra properties") {
  std::mt19937_64 rng(99);
  std::uniform_int_distribution<int> len(0, 4), part(1, 5);
  auto random_partition = [&] {
    std::vector<int> parts;
    const int l = len(rng);
    for (int i = 0; i < l; ++i) parts.push_back(part(rng));
    return Partition(parts);
  };
  for (int i = 0; i < 100; ++i) {
    const Partition a = random_partition(), b = random_partition();
    CHECK(partition_union(a, b).weight() == a.weight() + b.weight());
    CHECK(partition_union(a, b).length() == a.length() + b.length());
    const int p = part(rng);
    CHECK(partition_remove(partition_union(a, Partition{p}), p) == a);
  }
}

TEST_CASE("monomial symmetric functions") {
  const ExponentPoly m11 = monomial_symmetric(Partition{1, 1}, 2);
  CHECK(m11 == ExponentPoly{{{1, 1}, 1}});

  const ExponentPoly m2 = monomial_symmetric(Partition{2}, 2);
  CHECK(m2 == ExponentPoly{{{2, 0}, 1}, {{0, 2}, 1}});

  const ExponentPoly m21 = monomial_symmetric(Partition{2, 1}, 2);
  CHECK(m21 == ExponentPoly{{{2, 1}, 1}, {{1, 2}, 1}});

  CHECK(monomial_symmetric(Partition{1, 1, 1}, 2).empty());
}

TEST_CASE("monomial symmetric is symmetric under variable exchange") {
  std::mt19937_64 rng(4);
  std::uniform_int_distribution<int> len(1, 3), part(1, 4), vars(1, 4);
  for (int i = 0; i < 40; ++i) {
    std::vector<int> parts;
    const int l = len(rng);
    for (int j = 0; j < l; ++j) parts.push_back(part(rng));
    const int v = vars(rng);
    const ExponentPoly poly = monomial_symmetric(Partition(parts), v);
    // permuting variables permutes exponent vectors; the term set is stable
    std::vector<int> perm(static_cast<size_t>(v));
    std::iota(perm.begin(), perm.end(), 0);
    std::shuffle(perm.begin(), perm.end(), rng);
    ExponentPoly permuted;
    for (const auto& [e, c] : poly) {
      std::vector<int> pe(e.size());
      for (size_t k = 0; k < e.size(); ++k) pe[perm[k]] = e[k];
      permuted[pe] = c;
    }
    CHECK(permuted == poly);
  }
}
