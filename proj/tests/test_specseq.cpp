#include "fixtures.hpp"
#include "oracle.hpp"

#include <catch_amalgamated.hpp>

using namespace torusspace;
using fixtures::ref;

namespace {
using Q = RationalField;

ManifoldProfile annulus() {
  ManifoldProfile p;
  p.n = 2;
  p.bQ = {1, 1, 0};
  p.bQrel = {0, 1, 1};
  p.rank_delta = {1, 1};
  return p;
}

const IdentityCheck& find(const std::vector<IdentityCheck>& v, const std::string& name) {
  for (const auto& c : v)
    if (c.name == name) return c;
  throw std::runtime_error("no check " + name);
}
}  // namespace

TEST_CASE("cone profiles", "[specseq]") {
  auto t = cone_profile(face_vectors(Q{}, torus_7()));
  CHECK(t.bQrel == std::vector<long long>{0, 0, 2, 1});
  CHECK(t.rank_delta == std::vector<long long>{0, 2, 1});
  auto s = cone_profile(face_vectors(Q{}, boundary_of_simplex(3)));
  CHECK(s.bQrel == std::vector<long long>{0, 0, 0, 1});
  CHECK(s.delta(3) == 1);
  auto d = cone_profile(face_vectors(Q{}, digon_cycle(2)));
  CHECK(d.bQrel == std::vector<long long>{0, 1, 2});
  CHECK(d.rank_delta == std::vector<long long>{1, 2});
}

TEST_CASE("profile validation", "[specseq]") {
  auto v = face_vectors(Q{}, digon_cycle(2));
  CHECK(validate_profile(v, annulus()).empty());
  auto bad = annulus();
  bad.rank_delta[1] += 1;
  CHECK_FALSE(validate_profile(v, bad).empty());
  auto wrong_n = annulus();
  wrong_n.n = 3;
  CHECK_FALSE(validate_profile(v, wrong_n).empty());
}

TEST_CASE("torus_7 cone pages", "[specseq]") {
  auto v = face_vectors(Q{}, torus_7());
  auto p = pages(v, cone_profile(v));
  CHECK(p.e1plus.border() == std::vector<long long>{1, 10, 7, 1});
  CHECK(p.e2.border() == std::vector<long long>{1, 10, 4, 1});
  CHECK(p.einf.border() == std::vector<long long>{1, 4, 4, 1});
  // off-border E^{1+}_{p,q} = b_p(dQ) C(n,q) for q < p < n
  auto bd = boundary_betti(v);
  for (int pp = 1; pp < 3; ++pp)
    for (int q = 0; q < pp; ++q) CHECK(p.e1plus.at(pp, q) == bd[static_cast<std::size_t>(pp)] * oracle::choose(3, q));
  // nothing above the border
  for (int pp = 0; pp <= 3; ++pp)
    for (int q = pp + 1; q <= 3; ++q) CHECK(p.einf.at(pp, q) == 0);
  auto bt = bigraded_betti(cone_profile(v), p);
  CHECK(bt.totals == std::vector<long long>{1, 0, 4, 0, 10, 2, 1});
}

TEST_CASE("sphere pages are the h-vector", "[specseq]") {
  for (const char* name : {"boundary_of_simplex(3)", "octahedron"}) {
    auto s = preset(name);
    auto v = face_vectors(Q{}, s);
    auto p = pages(v, cone_profile(v));
    auto h = oracle::h_vector(v.f, v.n);
    CHECK(p.e2.border() == h);
    CHECK(p.einf.border() == h);
    auto bt = bigraded_betti(cone_profile(v), p);
    for (int i = 0; i <= v.n; ++i)
      for (int j = 0; j <= v.n; ++j)
        if (i != j) CHECK(bt.h[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] == 0);
  }
}

TEST_CASE("sheaf path matches closed form", "[specseq]") {
  auto t = ref(torus_7());
  auto v = face_vectors(Q{}, *t);
  auto p = pages(v, cone_profile(v));
  auto sh = sheaf_path_page(Q{}, t, fixtures::std_map("torus_7"));
  for (int pp = 0; pp < 3; ++pp) {
    CHECK(sh[static_cast<std::size_t>(pp)][static_cast<std::size_t>(pp)] == p.e1plus.at(pp, pp));
    for (int q = pp + 1; q <= 3; ++q) CHECK(sh[static_cast<std::size_t>(pp)][static_cast<std::size_t>(q)] == 0);
  }
  auto tri = ref(boundary_of_simplex(2));
  auto sh2 = sheaf_path_page(Q{}, tri, fixtures::std_map("boundary_of_simplex(2)"));
  auto v2 = face_vectors(Q{}, *tri);
  auto p2 = pages(v2, cone_profile(v2));
  for (int pp = 0; pp < 2; ++pp)
    for (int q = 0; q <= 2; ++q) CHECK(sh2[static_cast<std::size_t>(pp)][static_cast<std::size_t>(q)] == p2.e1plus.at(pp, q));
  // the sheaf path is E^{1+}; E^2 of the disk is the h-vector
  CHECK(sh2[1][1] == 3);
  CHECK(p2.e2.border() == std::vector<long long>{1, 1, 1});
  CHECK(p2.e2.at(1, 0) == 0);
}

TEST_CASE("annulus origami", "[specseq]") {
  auto v = face_vectors(Q{}, digon_cycle(2));
  auto p = pages(v, annulus());
  auto bt = bigraded_betti(annulus(), p);
  CHECK(bt.totals == std::vector<long long>{1, 1, 4, 1, 1});
  CHECK(bt.h[1][1] == 4);
  CHECK(p.einf.at(1, 1) == 2);
  for (int i = 0; i <= 2; ++i)
    for (int j = 0; j <= 2; ++j) CHECK(bt.h[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] == bt.h[static_cast<std::size_t>(2 - i)][static_cast<std::size_t>(2 - j)]);
  TheoremContext ctx;
  ctx.cone = false;
  auto checks = theorem_checks(v, annulus(), p, bt, ctx);
  CHECK(find(checks, "bigraded_duality").applicable);
  CHECK(find(checks, "bigraded_duality").pass);
  CHECK(find(checks, "euler_characteristic").pass);
}

TEST_CASE("theorem checks on torus_7", "[specseq]") {
  auto t = ref(torus_7());
  auto v = face_vectors(Q{}, *t);
  auto prof = cone_profile(v);
  auto p = pages(v, prof);
  auto bt = bigraded_betti(prof, p);
  TheoremContext ctx;
  ctx.cone = true;
  ctx.manifold = true;
  ctx.have_sheaf_path = true;
  ctx.sheaf = sheaf_path_page(Q{}, t, fixtures::std_map("torus_7"));
  for (const auto& c : theorem_checks(v, prof, p, bt, ctx))
    if (c.applicable) CHECK(c.pass);
  CHECK(euler_from_page(p.e1) == 14);
}
