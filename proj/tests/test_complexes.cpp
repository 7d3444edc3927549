#include "oracle.hpp"
#include "torusspace/complexes.hpp"

#include <catch_amalgamated.hpp>

using namespace torusspace;

namespace {
using Q = RationalField;
std::vector<std::size_t> reduced(const SimplicialPoset& s) {
  return homology_dims(cellular_chain_complex(Q{}, s, std::nullopt, true));
}
template <class F>
void check_d_squared(const ChainComplex<F>& c) {
  for (int i = c.min_degree() + 1; i <= c.max_degree(); ++i) CHECK((c.differential(i - 1) * c.differential(i)).is_zero());
}
}  // namespace

TEST_CASE("cellular homology of fixtures", "[complexes]") {
  auto circle = boundary_of_simplex(2);
  auto c = cellular_chain_complex(Q{}, circle, std::nullopt, true);
  CHECK(c.min_degree() == -1);
  CHECK(c.dim(-1) == 1);
  CHECK(c.dim(0) == 3);
  CHECK(c.dim(1) == 3);
  CHECK(homology_dims(c) == std::vector<std::size_t>{0, 0, 1});
  CHECK(reduced(torus_7()) == std::vector<std::size_t>{0, 0, 2, 1});
  CHECK(reduced(boundary_of_simplex(3)) == std::vector<std::size_t>{0, 0, 0, 1});
  CHECK(reduced(digon_cycle(2)) == std::vector<std::size_t>{0, 1, 2});
  for (const auto& s : {circle, torus_7(), digon_cycle(2), preset("octahedron")}) check_d_squared(cellular_chain_complex(Q{}, s, std::nullopt, true));
}

TEST_CASE("homology agrees with the subset-enumeration oracle", "[complexes]") {
  for (const auto& facets : {oracle::torus_7_facets(), oracle::octahedron_facets(), oracle::simplex_boundary_facets(4)}) {
    auto s = SimplicialPoset::from_facets(facets);
    auto want = oracle::reduced_betti(oracle::from_facets(facets));
    auto got = reduced(s);
    for (std::size_t i = 0; i < want.size(); ++i) CHECK(static_cast<long long>(got[i + 1]) == want[i]);
  }
}

TEST_CASE("relative homology", "[complexes]") {
  auto s = boundary_of_simplex(2);
  int e = s.of_rank(2)[0];
  auto m = complement_of_link(s, e);
  auto h = homology_dims(cellular_chain_complex(Q{}, s, m, false));
  std::size_t total = 0;
  for (auto x : h) total += x;
  CHECK(total == 1);
  CHECK(h.back() == 1);  // degree 1
}

TEST_CASE("induced maps on homology", "[complexes]") {
  auto s = boundary_of_simplex(2);
  auto c = cellular_chain_complex(Q{}, s, std::nullopt, false);
  auto h = homology(c);
  ChainMap<Q> id;
  for (int i = c.min_degree(); i <= c.max_degree(); ++i) id.components.emplace(i, Matrix<Q>::identity(Q{}, c.dim(i)));
  auto m = induced_map(id, c, c, h, h);
  for (int i = c.min_degree(); i <= c.max_degree(); ++i) CHECK(m.at(i) == Matrix<Q>::identity(Q{}, h.dim(i)));

  // a point into the circle: iso on H_0
  auto cp = cellular_chain_complex(Q{}, SimplicialPoset::from_facets({{1}}), std::nullopt, false);
  auto hp = homology(cp);
  ChainMap<Q> inc;
  Matrix<Q> m0(Q{}, c.dim(0), 1);
  m0(0, 0) = 1;
  inc.components.emplace(0, m0);
  auto im = induced_map(inc, cp, c, hp, h);
  CHECK(rank(im.at(0)) == 1);

  // identity on edges, zero on vertices: not a chain map
  ChainMap<Q> bad;
  bad.components.emplace(1, Matrix<Q>::identity(Q{}, c.dim(1)));
  CHECK_THROWS(induced_map(bad, c, c, h, h));
}

TEST_CASE("classification", "[complexes]") {
  auto a = classify(Q{}, boundary_of_simplex(3));
  CHECK(a.buchsbaum);
  CHECK(a.cohen_macaulay);
  auto t = classify(Q{}, torus_7());
  CHECK(t.buchsbaum);
  CHECK_FALSE(t.cohen_macaulay);
  auto d = classify(Q{}, digon_cycle(2));
  CHECK(d.buchsbaum);
  CHECK_FALSE(d.cohen_macaulay);
  auto bow = classify(Q{}, SimplicialPoset::from_facets({{1, 2, 3}, {3, 4, 5}}));
  CHECK_FALSE(bow.buchsbaum);
  REQUIRE_FALSE(bow.failures.empty());
  CHECK(bow.failures.front().vertices == VertexSet{3});
}

TEST_CASE("order complex agrees with cellular homology", "[complexes]") {
  for (const auto& s : {boundary_of_simplex(2), torus_7(), digon_cycle(1), digon_cycle(2)}) {
    auto cell = reduced(s);
    auto ord = order_complex_homology(Q{}, s, true).dims();
    for (std::size_t i = 1; i < cell.size(); ++i) CHECK(cell[i] == (i < ord.size() ? ord[i] : 0));
    check_d_squared(order_complex(Q{}, s, true));
  }
  auto ord = order_complex_homology(Q{}, digon_cycle(1), true).dims();
  CHECK(ord[2] == 1);
}
