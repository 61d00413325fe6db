#include <algorithm>
#include <vector>

#include "conley/complex.hpp"
#include "conley/randgen.hpp"
#include "doctest.h"
#include "fixtures.hpp"

using namespace conley;

TEST_CASE("annulus closure has frozen ids") {
  auto K = fx::annulus_complex();
  REQUIRE(K.size() == 11);
  CHECK(K.max_dim() == 2);
  std::vector<std::vector<VertexId>> want = {{0},    {1},    {2},    {3},      {0, 1}, {0, 2},
                                             {0, 3}, {1, 2}, {2, 3}, {0, 1, 2}, {0, 2, 3}};
  for (SimplexId s = 0; s < K.size(); ++s) CHECK(K.simplex(s).vertices == want[s]);
  CHECK(K.dim(0) == 0);
  CHECK(K.dim(4) == 1);
  CHECK(K.dim(10) == 2);
}

TEST_CASE("facets and cofacets are mutually inverse") {
  auto K = fx::annulus_complex();
  CHECK(K.facets(9) == std::vector<SimplexId>{4, 5, 7});
  CHECK(K.facets(10) == std::vector<SimplexId>{5, 6, 8});
  CHECK(K.facets(4) == std::vector<SimplexId>{0, 1});
  CHECK(K.facets(0).empty());
  CHECK(K.cofacets(5) == std::vector<SimplexId>{9, 10});
  CHECK(K.cofacets(0) == std::vector<SimplexId>{4, 5, 6});
  CHECK(K.cofacets(9).empty());
  CHECK(K.boundary_chain(9) == K.facets(9));
}

TEST_CASE("find normalizes vertex lists") {
  auto K = fx::annulus_complex();
  CHECK(K.find({2, 0}) == SimplexId{5});
  CHECK(K.find({3, 2, 0}) == SimplexId{10});
  CHECK(K.find({2, 0, 2}) == SimplexId{5});  // duplicates collapse
  CHECK(!K.find({1, 3}).has_value());
  CHECK(!K.find({7}).has_value());
}

TEST_CASE("closure and star on the annulus") {
  auto K = fx::annulus_complex();
  CHECK(K.closure(9) == std::vector<SimplexId>{0, 1, 2, 4, 5, 7, 9});
  CHECK(K.closure(0) == std::vector<SimplexId>{0});
  std::vector<SimplexId> seed{4, 8};
  CHECK(K.closure(seed) == std::vector<SimplexId>{0, 1, 2, 3, 4, 8});
  std::vector<SimplexId> vseed{2};
  CHECK(K.star(vseed) == std::vector<SimplexId>{2, 5, 7, 8, 9, 10});
  std::vector<SimplexId> eseed{5};
  CHECK(K.star(eseed) == std::vector<SimplexId>{5, 9, 10});
}

TEST_CASE("build merges duplicates and accepts unsorted input") {
  auto a = SimplicialComplex::build({{2, 1, 0}, {0, 2, 3}, {3, 2, 0}, {1}});
  auto b = fx::annulus_complex();
  REQUIRE(a.size() == b.size());
  for (SimplexId s = 0; s < a.size(); ++s) CHECK(a.simplex(s).vertices == b.simplex(s).vertices);
}

TEST_CASE("vertex ids follow vertex rank, not raw labels") {
  auto K = SimplicialComplex::build({{9, 2}, {5}});
  REQUIRE(K.size() == 4);
  CHECK(K.simplex(0).vertices == std::vector<VertexId>{2});
  CHECK(K.simplex(1).vertices == std::vector<VertexId>{5});
  CHECK(K.simplex(2).vertices == std::vector<VertexId>{9});
  CHECK(K.simplex(3).vertices == std::vector<VertexId>{2, 9});
}

TEST_CASE("build rejects bad input") {
  CHECK_THROWS_WITH_AS(SimplicialComplex::build({}), "empty complex", ValidationError);
  CHECK_THROWS_WITH_AS(SimplicialComplex::build({{0, 1}, {}}), "empty simplex in input",
                       ValidationError);
  std::vector<VertexId> big(26);
  for (VertexId v = 0; v < 26; ++v) big[v] = v;
  CHECK_THROWS_AS(SimplicialComplex::build({big}), ValidationError);
}

TEST_CASE("random complexes are closed, ordered, and consistent") {
  for (std::uint64_t seed : {11u, 12u, 13u}) {
    auto K = fx::random_instance(seed).complex;
    for (SimplexId s = 0; s < K.size(); ++s) {
      if (s + 1 < K.size()) {
        auto &u = K.simplex(s), &v = K.simplex(s + 1);
        CHECK((u.dim() < v.dim() || (u.dim() == v.dim() && u.vertices < v.vertices)));
      }
      CHECK(K.find(K.simplex(s).vertices) == s);
      CHECK(std::is_sorted(K.facets(s).begin(), K.facets(s).end()));
      for (SimplexId f : K.facets(s)) {
        CHECK(K.dim(f) == K.dim(s) - 1);
        auto cf = K.cofacets(f);
        CHECK(std::find(cf.begin(), cf.end(), s) != cf.end());
      }
      CHECK(K.facets(s).size() == K.simplex(s).vertices.size() * (K.dim(s) > 0));
      CHECK(K.closure(s).size() == (std::size_t{1} << K.simplex(s).vertices.size()) - 1);
    }
  }
}
