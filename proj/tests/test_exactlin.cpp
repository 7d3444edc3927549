#include "torusspace/matrix.hpp"
#include "torusspace/smith.hpp"

#include <catch_amalgamated.hpp>

using namespace torusspace;

TEST_CASE("rank and kernel of small matrices", "[exactlin]") {
  RationalField q;
  auto id = Matrix<RationalField>::identity(q, 2);
  auto r = rank_kernel_image(id);
  CHECK(r.rank == 2);
  CHECK(r.kernel.dim() == 0);

  Matrix<RationalField> z(q, 3, 4);
  auto rz = rank_kernel_image(z);
  CHECK(rz.rank == 0);
  CHECK(rz.kernel.dim() == 4);

  auto m = Matrix<RationalField>::from_ints(q, {{1, 2}, {2, 4}});
  auto rm = rank_kernel_image(m);
  REQUIRE(rm.rank == 1);
  REQUIRE(rm.kernel.dim() == 1);
  auto v = rm.kernel.vector(0);
  // proportional to (2,-1)
  CHECK(v[0] == Rational(-2) * v[1]);
  CHECK(m.apply(v) == std::vector<Rational>{0, 0});
}

TEST_CASE("prime field arithmetic", "[exactlin]") {
  PrimeField f(7);
  CHECK(f.mul(3, 5) == 1);
  CHECK(f.inv(3) == 5);
  CHECK(f.from_int(-1) == 6);
  CHECK(f.from_integer(Integer(-15)) == 6);
  auto m = Matrix<PrimeField>::from_ints(f, {{1, 2}, {3, 6}});
  CHECK(rank(m) == 1);
  PrimeField two(2);
  CHECK(rank(Matrix<PrimeField>::from_ints(two, {{1, 1}, {1, -1}})) == 1);
  CHECK(rank(Matrix<RationalField>::from_ints(RationalField{}, {{1, 1}, {1, -1}})) == 2);
  CHECK_THROWS(PrimeField(9));
}

TEST_CASE("smith invariants", "[exactlin]") {
  auto ints = [](std::vector<std::vector<long long>> a) {
    IntMatrix m;
    for (auto& r : a) {
      m.emplace_back();
      for (auto x : r) m.back().push_back(Integer(x));
    }
    return m;
  };
  CHECK(smith_invariants(ints({{1, 0}, {0, 1}})) == std::vector<Integer>{1, 1});
  CHECK(smith_invariants(ints({{1, 0}, {1, 2}})) == std::vector<Integer>{1, 2});
  CHECK(smith_invariants(ints({{2, 4}})) == std::vector<Integer>{2});
  // Z/2 x Z/6 presentation, shuffled
  CHECK(smith_invariants(ints({{6, 0}, {0, 2}})) == std::vector<Integer>{2, 6});
  CHECK(smith_invariants(ints({{0, 0}, {0, 0}})) == std::vector<Integer>{0, 0});
}

TEST_CASE("induced maps on quotients", "[exactlin]") {
  RationalField q;
  auto diag = column_span(Matrix<RationalField>::from_ints(q, {{1}, {1}}));
  QuotientSpace<RationalField> quo(whole_space(q, 2), diag);
  REQUIRE(quo.dim() == 1);
  auto id = induced_quotient_map(Matrix<RationalField>::identity(q, 2), quo, quo);
  CHECK(id == Matrix<RationalField>::identity(q, 1));
  auto zero = induced_quotient_map(Matrix<RationalField>(q, 2, 2), quo, quo);
  CHECK(zero.is_zero());
  auto swap = Matrix<RationalField>::from_ints(q, {{0, 1}, {1, 0}});
  auto s = induced_quotient_map(swap, quo, quo);
  CHECK(s(0, 0) == Rational(-1));
  // a map that does not preserve the subspace is rejected
  auto bad = Matrix<RationalField>::from_ints(q, {{1, 0}, {0, 0}});
  CHECK_THROWS(induced_quotient_map(bad, quo, quo));
}
