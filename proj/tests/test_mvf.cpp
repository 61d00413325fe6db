#include <algorithm>
#include <set>
#include <vector>

#include "conley/mvf.hpp"
#include "conley/randgen.hpp"
#include "doctest.h"
#include "fixtures.hpp"
#include "oracles.hpp"

using namespace conley;

TEST_CASE("convexity on the annulus") {
  auto K = fx::annulus_complex();
  CHECK(is_convex(K, std::vector<SimplexId>{0, 4}));         // A, AB
  CHECK(is_convex(K, std::vector<SimplexId>{4, 9}));         // AB, ABC
  CHECK(is_convex(K, std::vector<SimplexId>{5}));            // AC
  CHECK(is_convex(K, std::vector<SimplexId>{}));             // empty set
  CHECK_FALSE(is_convex(K, std::vector<SimplexId>{0, 9}));   // A..ABC misses AB, AC
  CHECK_FALSE(is_convex(K, std::vector<SimplexId>{0, 2, 9}));
  CHECK(is_convex(K, std::vector<SimplexId>{0, 4, 5, 9}));   // the full interval
}

TEST_CASE("convexity matches the interval oracle on random subsets") {
  Rng rng(401);
  for (int rep = 0; rep < 40; ++rep) {
    auto K = fx::random_instance(500 + rep % 5).complex;
    std::vector<SimplexId> S;
    for (SimplexId s = 0; s < K.size(); ++s)
      if (rng.below(4) == 0) S.push_back(s);
    CHECK(is_convex(K, S) == oracle::is_convex(K, S));
  }
}

TEST_CASE("singleton field") {
  auto K = fx::annulus_complex();
  auto V = MultivectorField::singletons(K);
  CHECK(V.vector_count() == 11);
  CHECK(V.complex_size() == 11);
  for (SimplexId s = 0; s < K.size(); ++s) {
    CHECK(V.vector_of(s) == s);
    CHECK(V.members(s) == std::vector<SimplexId>{s});
    CHECK(V.is_live(s));
  }
  CHECK(connection_probability(V) == 0.0);
}

TEST_CASE("from_vectors validates the partition") {
  auto K = fx::annulus_complex();
  CHECK_THROWS_WITH_AS(MultivectorField::from_vectors(K, {{0, 9}}),
                       "convexity violated in vector 0", ValidationError);
  CHECK_THROWS_WITH_AS(
      MultivectorField::from_vectors(
          K, {{0, 4}, {1, 7}, {2, 8}, {3, 6}, {5}, {9}, {10}, {5}}),
      "partition violated: simplex 5 covered twice", ValidationError);
  CHECK_THROWS_WITH_AS(
      MultivectorField::from_vectors(K, {{0, 4}, {1, 7}, {2, 8}, {3, 6}, {9}, {10}}),
      "partition violated: simplex 5 uncovered", ValidationError);
  CHECK_THROWS_WITH_AS(MultivectorField::from_vectors(K, {{0, 0, 4}}),
                       "duplicate simplex in vector 0", ValidationError);
  CHECK_THROWS_WITH_AS(MultivectorField::from_vectors(K, {{}}), "empty vector 0",
                       ValidationError);
  auto V = fx::annulus_field(K);
  CHECK(V.vector_count() == 7);
  CHECK(V.vector_of(4) == V.vector_of(0));
  CHECK(V.members(V.vector_of(3)) == std::vector<SimplexId>{3, 6});
}

TEST_CASE("merge absorbs whole vectors until convex") {
  auto K = fx::triangle_complex();
  auto V = MultivectorField::singletons(K);
  auto W = V.merge_vectors(K, 0, 6);  // A with ABC pulls in AB and AC
  CHECK(W.vector_count() == 4);
  CHECK(W.members(0) == std::vector<SimplexId>{0, 3, 4, 6});
  CHECK(W.members(0) == oracle::merge_fixpoint(K, V, 0, 6));
  CHECK_FALSE(W.is_live(3));
  CHECK_FALSE(W.is_live(6));
  CHECK(V.vector_count() == 7);  // source untouched

  MergeScratch scratch;
  auto U = V;
  auto out = U.merge_in_place(K, 6, 0, scratch);
  CHECK(out.survivor == 0);
  CHECK(out.survivor_old_size == 1);
  CHECK(out.new_size == 4);
  REQUIRE(out.absorbed.size() == 3);
  CHECK(out.absorbed[0] == std::pair<VectorId, std::uint32_t>{3, 1});
  CHECK(out.absorbed[1] == std::pair<VectorId, std::uint32_t>{4, 1});
  CHECK(out.absorbed[2] == std::pair<VectorId, std::uint32_t>{6, 1});
  CHECK(U.members(0) == W.members(0));
}

TEST_CASE("merge rejects retired and identical ids") {
  auto K = fx::triangle_complex();
  auto V = MultivectorField::singletons(K);
  CHECK_THROWS_WITH_AS(V.merge_vectors(K, 2, 2), "merge requires two distinct vectors",
                       ValidationError);
  auto W = V.merge_vectors(K, 0, 6);
  CHECK_THROWS_WITH_AS(W.merge_vectors(K, 0, 3), "merge of a retired vector id",
                       ValidationError);
}

TEST_CASE("random merges agree with the fixpoint oracle and stay valid") {
  Rng rng(402);
  for (int rep = 0; rep < 25; ++rep) {
    auto [K, V] = fx::random_instance(600 + rep % 7);
    auto live = V.live_ids();
    if (live.size() < 2) continue;
    VectorId a = live[rng.below(live.size())], b = a;
    while (b == a) b = live[rng.below(live.size())];
    auto oracle_members = oracle::merge_fixpoint(K, V, a, b);
    auto W = V.merge_vectors(K, a, b);
    VectorId survivor = std::min(a, b);
    CHECK(W.members(survivor) == oracle_members);
    CHECK(is_convex(K, W.members(survivor)));
    std::vector<std::vector<SimplexId>> parts;
    for (VectorId v : W.live_ids()) parts.push_back(W.members(v));
    CHECK_NOTHROW(MultivectorField::from_vectors(K, parts));
  }
}

TEST_CASE("fv includes the vector and the closure") {
  auto K = fx::annulus_complex();
  auto V = fx::annulus_field(K);
  CHECK(fv(K, V, 4) == std::vector<SimplexId>{0, 1, 4});
  CHECK(fv(K, V, 0) == std::vector<SimplexId>{0, 4});
  CHECK(fv(K, V, 9) == std::vector<SimplexId>{0, 1, 2, 4, 5, 7, 9});
  auto edges = oracle::fv_edges(K, V);
  for (SimplexId s = 0; s < K.size(); ++s) {
    auto f = fv(K, V, s);
    f.erase(std::remove(f.begin(), f.end(), s), f.end());
    CHECK(f == edges[s]);
  }
}

TEST_CASE("connection probability counts ordered pairs inside vectors") {
  auto K = fx::annulus_complex();
  auto V = fx::annulus_field(K);
  auto [num, den] = connection_ratio(V);
  CHECK(num == 8);    // four vectors of size 2
  CHECK(den == 110);  // 11 * 10
  CHECK(connection_probability(V) == doctest::Approx(8.0 / 110.0));
  auto K1 = SimplicialComplex::build({{0}});
  auto V1 = MultivectorField::singletons(K1);
  CHECK_THROWS_AS(connection_ratio(V1), ValidationError);
}
