#include "torusspace/cli.hpp"

#include <CLI11.hpp>

#include <iostream>

int main(int argc, char** argv) {
  torusspace::JobSpec job;
  CLI::App app{"Homology invariants of torus spaces over simplicial posets"};
  app.add_option("command", job.command, "validate | vectors | charmap | sheaf | verify | specseq | facering | all")->required();
  app.add_option("--preset", job.preset, "torus_7, octahedron, boundary_of_simplex(d), cross_polytope_boundary(n), digon_cycle(c)");
  app.add_option("--poset", job.poset_file, "cover table file (simplicial-poset v1)");
  app.add_option("--facets", job.facets_file, "facet list file (facets v1)");
  app.add_option("--charmap", job.charmap_file, "characteristic map file (charmap v1 n=<n>)");
  app.add_option("--profile", job.profile_file, "manifold profile JSON; default is the cone profile");
  app.add_option("--field", job.field, "Q or Fp:<p>");
  app.add_option("--out", job.out, "json or md");
  app.add_option("--checks", job.checks, "only these checks decide the exit status")->delimiter(',');
  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  }
  auto res = torusspace::run(job);
  (res.exit_code == 2 ? std::cerr : std::cout) << res.output;
  return res.exit_code;
}
