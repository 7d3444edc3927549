#pragma once

#include "torusspace/facering.hpp"
#include "torusspace/io.hpp"

#include <json.hpp>

#include <algorithm>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

namespace torusspace {

using ojson = nlohmann::ordered_json;

struct JobSpec {
  std::string command;
  std::string preset;
  std::string poset_file;
  std::string facets_file;
  std::string charmap_file;
  std::string profile_file;
  std::string field = "Q";
  std::string out = "json";
  std::vector<std::string> checks;  // empty: every check counts
};

struct RunResult {
  int exit_code = 0;
  std::string output;
};

inline const std::vector<std::string>& commands() {
  static const std::vector<std::string> c{"validate", "vectors", "charmap", "sheaf", "verify", "specseq", "facering", "all"};
  return c;
}

namespace cli_detail {

struct Check {
  std::string name;
  bool pass = true;
  bool applicable = true;
  std::string detail;
};

class Report {
 public:
  ojson root = ojson::object();
  std::vector<Check> checks;

  void check(const std::string& name, bool pass, bool applicable = true, const std::string& detail = "") {
    checks.push_back({name, pass, applicable, detail});
  }
  void check(const IdentityCheck& c, const std::string& prefix = "") { check(prefix + c.name, c.pass, c.applicable, c.detail); }
};

inline ojson set_json(const VertexSet& v) { return ojson(v); }

template <class F>
ojson vec_json(const F& k, const std::vector<typename F::Element>& v) {
  ojson a = ojson::array();
  for (const auto& x : v) a.push_back(k.format(x));
  return a;
}

template <class F>
ojson matrix_json(const Matrix<F>& m) {
  ojson a = ojson::array();
  for (std::size_t i = 0; i < m.rows(); ++i) a.push_back(vec_json(m.field(), m.row(i)));
  return a;
}

inline ojson page_json(const SpectralPage& pg) {
  ojson j;
  j["page"] = pg.tag;
  j["q_range"] = {-pg.n, pg.n};
  ojson rows = ojson::array();
  for (int p = 0; p <= pg.n; ++p) rows.push_back({{"p", p}, {"dims", pg.dims[static_cast<std::size_t>(p)]}});
  j["columns"] = rows;
  ojson comps = ojson::array();
  for (const auto& [q, cs] : pg.column_n)
    for (const auto& c : cs)
      if (c.dim != 0) comps.push_back({{"q", q}, {"rel_degree", c.q1}, {"exterior_degree", c.q2}, {"dim", c.dim}});
  j["column_n_components"] = comps;
  j["border"] = pg.border();
  return j;
}

template <class F>
struct Context {
  F k;
  PosetRef s;
  std::string source;
  std::string preset_name;
  const JobSpec* job = nullptr;

  std::optional<Classification> cls_;
  std::optional<FaceVectors> fv_;
  std::optional<CharacteristicMap> lam_;
  std::string lam_source;
  std::optional<bool> lam_valid_;
  std::optional<ManifoldProfile> prof_;
  std::optional<bool> manifold_, unit_stalks_;

  const Classification& cls() {
    if (!cls_) cls_ = classify(k, *s);
    return *cls_;
  }
  const FaceVectors& fv() {
    if (!fv_) fv_ = face_vectors(k, *s);
    return *fv_;
  }
  const CharacteristicMap& lambda() {
    if (!lam_) {
      if (!job->charmap_file.empty()) {
        auto in = detail::open_file(job->charmap_file);
        lam_ = parse_charmap(in, job->charmap_file);
        lam_source = "file";
      } else if (auto st = standard_charmap(preset_name, *s)) {
        lam_ = *st;
        lam_source = "standard";
      } else {
        lam_ = moment_curve_charmap(*s);
        lam_source = "moment_curve";
      }
      if (lam_->n != s->max_rank())
        throw InputError("characteristic map has n=" + std::to_string(lam_->n) + " but dim S + 1 = " + std::to_string(s->max_rank()));
      for (int v : s->vertex_labels())
        if (!lam_->rows.count(v)) throw InputError("characteristic map has no row for vertex " + std::to_string(v));
    }
    return *lam_;
  }
  bool lambda_valid() {
    if (!lam_valid_) lam_valid_ = validate_charmap(k, *s, lambda()).ok_field;
    return *lam_valid_;
  }
  const ManifoldProfile& profile() {
    if (!prof_) {
      if (!job->profile_file.empty()) {
        auto in = detail::open_file(job->profile_file);
        prof_ = parse_profile(in, job->profile_file);
      } else {
        prof_ = cone_profile(fv());
      }
    }
    return *prof_;
  }
  bool cone() { return job->profile_file.empty(); }
  bool unit_stalks() {
    if (!unit_stalks_) {
      auto h0 = structure_sheaf(k, s, false);
      bool ok = true;
      for (std::size_t x = 1; x < s->size(); ++x) ok = ok && h0.stalk(static_cast<int>(x)) == 1;
      unit_stalks_ = ok;
    }
    return *unit_stalks_;
  }
  // Buchsbaum, unit stalks, and a global trivialization of h0
  bool orientable_manifold() {
    if (!manifold_) manifold_ = cls().buchsbaum && unit_stalks() && constancy_check(structure_sheaf(k, s, false), true).is_constant;
    return *manifold_;
  }
};

template <class F>
void section_validate(Context<F>& c, Report& r) {
  const auto& s = *c.s;
  auto d = s.validate();
  ojson j;
  j["source"] = c.source;
  j["valid"] = d.valid;
  j["pure"] = d.pure;
  j["dim"] = d.dim;
  j["elements"] = s.size();
  j["maximal_elements"] = d.maximal_count;
  if (d.pure) j["f_vector"] = face_counts(s);
  j["errors"] = d.errors;
  r.check("poset_valid", d.valid, true, d.valid ? "" : d.errors.front());

  const auto& cl = c.cls();
  ojson cj;
  cj["field"] = c.k.name();
  cj["buchsbaum"] = cl.buchsbaum;
  cj["cohen_macaulay"] = cl.cohen_macaulay;
  ojson fails = ojson::array();
  for (const auto* list : {&cl.failures, &cl.global_failures})
    for (const auto& f : *list)
      fails.push_back({{"element", f.element}, {"vertices", set_json(f.vertices)}, {"degree", f.degree}, {"dim", f.dim}});
  cj["link_failures"] = fails;
  ojson by = ojson::object();
  by["Q"] = classify(RationalField{}, s).buchsbaum;
  for (std::uint32_t p : {2u, 3u, 5u}) by["F" + std::to_string(p)] = classify(PrimeField(p), s).buchsbaum;
  cj["buchsbaum_by_field"] = by;
  bool unit = cl.pure && c.unit_stalks();
  cj["homology_manifold"] = cl.buchsbaum && unit;
  cj["orientable"] = cl.pure && c.orientable_manifold();
  j["classification"] = cj;

  auto cell = homology_dims(cellular_chain_complex(c.k, s, std::nullopt, true));
  auto ord = order_complex_homology(c.k, s, true).dims();
  j["reduced_homology"] = cell;
  j["order_complex_reduced_homology"] = ord;
  bool agree = true;
  for (std::size_t i = 1; i < std::max(cell.size(), ord.size()); ++i) {
    std::size_t a = i < cell.size() ? cell[i] : 0;
    std::size_t b = i < ord.size() ? ord[i] : 0;
    agree = agree && a == b;
  }
  r.check("cellular_vs_order_complex", agree);
  r.root["validate"] = j;
}

template <class F>
void section_vectors(Context<F>& c, Report& r) {
  if (!c.s->is_pure()) throw InputError("face vectors need a pure poset");
  const auto& v = c.fv();
  ojson j;
  j["n"] = v.n;
  j["f"] = v.f;
  j["h"] = v.h;
  j["h_prime"] = v.h1;
  j["h_double_prime"] = v.h2;
  j["f_tilde"] = v.ft;
  j["reduced_betti"] = v.bt;
  j["chi"] = v.chi;
  j["chi_reduced"] = v.chi_reduced;
  r.root["vectors"] = j;
  bool buchs = c.cls().buchsbaum;
  for (const auto& ch : face_vector_invariants(v)) r.check(ch);
  for (auto ch : ft_consistency_check(v)) {
    ch.applicable = buchs;
    r.check(ch);
  }
  for (const auto& ch : dehn_sommerville_check(v, buchs && c.unit_stalks(), c.orientable_manifold())) r.check(ch);
  bool nonneg = std::all_of(v.h2.begin(), v.h2.end(), [](long long x) { return x >= 0; });
  r.check("h2_nonnegative", nonneg, buchs, join_ll(v.h2));
}

template <class F>
void section_charmap(Context<F>& c, Report& r) {
  const auto& l = c.lambda();
  auto val = validate_charmap(c.k, *c.s, l);
  ojson j;
  j["source"] = c.lam_source;
  j["n"] = l.n;
  ojson rows = ojson::object();
  for (const auto& [v, row] : l.rows) {
    ojson a = ojson::array();
    for (const auto& x : row) a.push_back(x.str());
    rows[std::to_string(v)] = a;
  }
  j["rows"] = rows;
  j["field"] = c.k.name();
  j["ok_field"] = val.ok_field;
  j["ok_Z"] = val.ok_z;
  ojson fails = ojson::array();
  for (const auto& f : val.failures) {
    ojson inv = ojson::array();
    for (const auto& x : f.invariants) inv.push_back(x.str());
    fails.push_back({{"element", f.element}, {"vertices", set_json(f.vertices)}, {"field_fail", f.field_fail}, {"Z_fail", f.z_fail}, {"invariants", inv}});
  }
  j["failures"] = fails;
  r.root["charmap"] = j;
  r.check("charmap_valid", val.ok_field, true, val.ok_field ? "" : "independence fails over " + c.k.name());
}

template <class F>
void section_sheaf(Context<F>& c, Report& r) {
  const auto& s = *c.s;
  if (!s.is_pure()) throw InputError("sheaf tables need a pure poset");
  int n = s.max_rank();
  ojson j;
  j["constant_1_truncated"] = sheaf_cohomology(constant_sheaf(c.k, c.s, 1), true);
  auto h0 = structure_sheaf(c.k, c.s, true);
  j["structure_stalks"] = h0.stalks();
  j["structure_truncated"] = sheaf_cohomology(h0, true);
  j["structure_full"] = sheaf_cohomology(h0, false);
  ojson restr = ojson::array();
  for (const auto& [key, m] : h0.restrictions()) restr.push_back({{"lower", key.first}, {"upper", key.second}, {"matrix", matrix_json(m)}});
  j["structure_dump"] = {{"stalks", h0.stalks()}, {"restrictions", restr}};

  bool loc_ok = true;
  ojson loc = ojson::array();
  bool vanish = true;
  for (int i = 0; i < n; ++i) {
    auto li = local_homology_sheaf(c.k, c.s, i, false);
    loc.push_back({{"degree", i}, {"stalks", li.stalks()}});
    if (i < n - 1)
      for (std::size_t x = 1; x < s.size(); ++x) vanish = vanish && li.stalk(static_cast<int>(x)) == 0;
  }
  loc_ok = vanish == c.cls().buchsbaum;
  j["local_homology"] = loc;
  r.check("local_homology_matches_buchsbaum", loc_ok, true, vanish ? "loc_i = 0 below n-1" : "some loc_i != 0 below n-1");

  bool ups = true;
  for (std::size_t x = 1; x < s.size(); ++x) {
    int xi = static_cast<int>(x);
    auto sh = sheaf_cohomology(upper_set_sheaf(c.k, c.s, xi, 1), false);  // -1 .. n-1
    auto lk = link_reduced_homology(c.k, s, xi);                            // from -1
    for (int i = -1; i <= n - 1; ++i) {
      int li = i - s.rank(xi);
      std::size_t want = (li >= -1 && li + 1 < static_cast<int>(lk.size())) ? lk[static_cast<std::size_t>(li + 1)] : 0;
      if (sh[static_cast<std::size_t>(i + 1)] != want) ups = false;
    }
  }
  r.check("upper_set_vs_link", ups);

  auto trunc = structure_sheaf(c.k, c.s, false);
  auto con = constancy_check(trunc, true);
  j["constancy"] = {{"is_constant", con.is_constant}, {"reason", con.reason}, {"witness", con.witness}};
  r.root["sheaf"] = j;
}

template <class F>
void section_verify(Context<F>& c, Report& r) {
  bool pre = c.s->is_pure() && c.cls().buchsbaum;
  bool lam = c.lambda_valid();
  ojson j;
  j["characteristic_map"] = c.lam_source;
  if (!pre || !lam) {
    std::string why = !pre ? "S is not Buchsbaum over " + c.k.name() : "characteristic map fails the independence condition over " + c.k.name();
    for (const char* nm : {"key_lemma", "duality", "les_duality"}) r.check(nm, false, true, why);
    j["skipped"] = why;
    r.root["verify"] = j;
    return;
  }
  auto kl = keylemma_check(c.k, c.s, c.lambda());
  j["key_lemma"] = {{"degrees_from", -1}, {"rows_by_q", kl.table.rows}};
  r.check("key_lemma", kl.pass);
  auto du = duality_check(c.k, c.s, c.lambda());
  j["duality"] = {{"degrees_from", -1}, {"sheaf", du.sheaf_side.rows}, {"cosheaf", du.cosheaf_side.rows}};
  r.check("duality", du.pass);
  auto le = les_duality_check(c.k, c.s, c.lambda());
  ojson lj = ojson::array();
  for (std::size_t q = 0; q < le.sheaf_side.size(); ++q) {
    auto rows = [](const std::vector<LesRow>& v) {
      ojson a = ojson::array();
      for (const auto& x : v) a.push_back({x.position, x.dA, x.dB, x.dC, x.a, x.b, x.c});
      return a;
    };
    lj.push_back({{"q", q}, {"sheaf", rows(le.sheaf_side[q])}, {"cosheaf", rows(le.cosheaf_side[q])}});
  }
  j["les"] = {{"columns", {"degree", "dimA", "dimB", "dimC", "rankAB", "rankBC", "rankCA"}}, {"by_q", lj}};
  r.check("les_duality", le.pass, true, std::string("sheaf exact=") + (le.sheaf_exact ? "yes" : "no") + " cosheaf exact=" + (le.cosheaf_exact ? "yes" : "no"));
  r.root["verify"] = j;
}

template <class F>
bool profile_ok(Context<F>& c, Report& r, ojson& j) {
  const auto& p = c.profile();
  auto errs = validate_profile(c.fv(), p);
  j["profile"] = {{"source", p.source}, {"n", p.n}, {"bQ", p.bQ}, {"bQrel", p.bQrel}, {"rank_delta", p.rank_delta}, {"errors", errs}};
  r.check("profile_valid", errs.empty(), true, errs.empty() ? "" : errs.front());
  return errs.empty();
}

template <class F>
void section_specseq(Context<F>& c, Report& r) {
  if (!c.s->is_pure()) throw InputError("spectral pages need a pure poset");
  ojson j;
  bool buchs = c.cls().buchsbaum;
  r.check("precondition_buchsbaum", buchs, true);
  if (!profile_ok(c, r, j) || !buchs) {
    r.root["specseq"] = j;
    return;
  }
  const auto& v = c.fv();
  const auto& p = c.profile();
  auto pg = pages(v, p);
  auto bt = bigraded_betti(p, pg);
  TheoremContext ctx;
  ctx.cone = c.cone();
  ctx.manifold = c.orientable_manifold();
  j["characteristic_map"] = c.lam_source;
  bool lam = c.lambda_valid();
  r.check("charmap_valid", lam, true);
  if (ctx.cone && lam) {
    ctx.have_sheaf_path = true;
    ctx.sheaf = sheaf_path_page(c.k, c.s, c.lambda());
    j["sheaf_path_e1plus"] = ctx.sheaf;
  }
  j["e1plus"] = page_json(pg.e1plus);
  j["e2"] = page_json(pg.e2);
  j["einf"] = page_json(pg.einf);
  j["bigraded"] = {{"table", bt.h}, {"totals", bt.totals}};
  if (v.n == 2 && !ctx.cone)
    j["notes"] = {"the m-2+2db dimension of a two-dimensional origami sits at H_{1,1} (total degree 2); a (2,2) placement would be an index slip"};
  for (const auto& ch : theorem_checks(v, p, pg, bt, ctx)) r.check(ch);
  r.root["specseq"] = j;
}

template <class F>
void section_facering(Context<F>& c, Report& r) {
  if (!c.s->is_pure()) throw InputError("face ring relations need a pure poset");
  ojson j;
  bool man = c.orientable_manifold();
  bool lam = c.lambda_valid();
  r.check("precondition_orientable_manifold", man, true, man ? "" : "S is not an orientable homology manifold over " + c.k.name());
  r.check("charmap_valid", lam, true);
  if (!man || !lam || !profile_ok(c, r, j)) {
    r.root["facering"] = j;
    return;
  }
  int n = c.s->max_rank();
  const auto& v = c.fv();
  const auto& p = c.profile();
  auto pg = pages(v, p);
  auto R = relation_system(c.k, c.s, c.lambda(), p);
  auto r1 = graded_quotient_rank(R, false);
  auto ra = graded_quotient_rank(R, true);
  auto r0 = graded_quotient_rank(R, false, false);
  j["by_degree"] = {{"generators", r1.generators}, {"type1_quotient", r1.quotient}, {"full_quotient", ra.quotient}, {"type1_without_empty_quotient", r0.quotient}};

  std::vector<long long> e2, einf, e1p;
  for (int d = 0; d <= n; ++d) {
    e2.push_back(pg.e2.at(n - d, n - d));
    einf.push_back(pg.einf.at(n - d, n - d));
    e1p.push_back(pg.e1plus.at(n - d, n - d));
  }
  r.check("type1_rank_vs_e2", r1.quotient == e2, true, "relations=" + join_ll(r1.quotient) + " E2=" + join_ll(e2));
  r.check("full_rank_vs_einf", ra.quotient == einf, true, "relations=" + join_ll(ra.quotient) + " Einf=" + join_ll(einf));
  r.check("type1_without_empty_vs_e1plus", r0.quotient == e1p, true, "relations=" + join_ll(r0.quotient) + " E1+=" + join_ll(e1p));
  bool hyp = p.rel(n) == 1 && p.delta(n) == 1;
  r.check("schenzel", r1.quotient == v.h1, hyp, "relations=" + join_ll(r1.quotient) + " h'=" + join_ll(v.h1));
  bool connected = v.bt.empty() || v.bt[0] == 0;
  if (c.cone()) r.check("full_rank_vs_h2", ra.quotient == v.h2, connected, "h''=" + join_ll(v.h2));

  auto kg = kernel_generators(R);
  long long expect = 0, got = 0;
  bool indep = true;
  for (int q = 0; q <= n - 2; ++q) expect += p.delta(q + 1) * binomial(n, q);
  ojson kj = ojson::array();
  for (const auto& g : kg) {
    got += static_cast<long long>(g.vectors.size());
    indep = indep && g.independent;
    ojson vecs = ojson::array();
    for (std::size_t i = 0; i < g.vectors.size(); ++i)
      vecs.push_back({{"class", g.labels[i].element}, {"A", g.labels[i].a}, {"coordinates", vec_json(c.k, g.vectors[i])}});
    kj.push_back({{"degree", g.d}, {"quotient_dim", g.quotient_dim}, {"independent", g.independent}, {"generators", vecs}});
  }
  j["kernel_generators"] = kj;
  r.check("kernel_generator_count", got == expect, true, std::to_string(got) + " vs " + std::to_string(expect));
  r.check("kernel_generators_independent", indep, true);

  auto so = socle_report(R);
  ojson sj = {{"applicable", so.applicable}, {"reason", so.reason}};
  ojson ents = ojson::array();
  for (const auto& e : so.entries)
    ents.push_back({{"degree", e.d}, {"class", e.label.element}, {"A", e.label.a}, {"in_socle", e.in_socle}, {"witness_vertices", e.nonzero_vertices}});
  sj["entries"] = ents;
  j["socle_degree_one"] = sj;

  ojson rel = ojson::array();
  for (const auto& deg : R.degrees) {
    ojson gens = ojson::array();
    for (int g : deg.generators) gens.push_back(set_json(c.s->vertices(g)));
    rel.push_back({{"degree", deg.d}, {"generators", gens}, {"type1", matrix_json(deg.type1)}, {"type2", matrix_json(deg.type2)}});
  }
  j["relations"] = rel;
  r.root["facering"] = j;
}

inline std::string render_markdown(const std::string& command, const Report& r) {
  std::ostringstream o;
  o << "# torusspace " << command << "\n\n";
  for (const auto& [key, val] : r.root.items()) {
    o << "## " << key << "\n\n";
    if (val.is_object()) {
      for (const auto& [k2, v2] : val.items()) o << "- **" << k2 << "**: `" << v2.dump() << "`\n";
    } else {
      o << "`" << val.dump() << "`\n";
    }
    o << "\n";
  }
  o << "## checks\n\n| check | result | detail |\n|---|---|---|\n";
  for (const auto& c : r.checks)
    o << "| " << c.name << " | " << (!c.applicable ? "n/a" : c.pass ? "pass" : "FAIL") << " | " << c.detail << " |\n";
  return o.str();
}

inline PosetRef load_poset(const JobSpec& job, std::string& source, bool& invalid, std::vector<std::string>& problems) {
  int given = !job.preset.empty() + !job.poset_file.empty() + !job.facets_file.empty();
  if (given != 1) throw InputError("give exactly one of --preset, --poset, --facets");
  invalid = false;
  if (!job.preset.empty()) {
    source = "preset:" + job.preset;
    try {
      return std::make_shared<const SimplicialPoset>(preset(job.preset));
    } catch (const std::invalid_argument& e) {
      throw InputError(e.what());
    }
  }
  if (!job.facets_file.empty()) {
    source = "facets:" + job.facets_file;
    auto in = detail::open_file(job.facets_file);
    return std::make_shared<const SimplicialPoset>(SimplicialPoset::from_facets(parse_facets(in, job.facets_file)));
  }
  source = "poset:" + job.poset_file;
  auto in = detail::open_file(job.poset_file);
  auto rows = parse_cover_table(in, job.poset_file);
  auto d = validate_cover_table(rows);
  if (!d.valid) {
    invalid = true;
    problems = d.errors;
    return nullptr;
  }
  return std::make_shared<const SimplicialPoset>(SimplicialPoset::from_cover_table(rows));
}

template <class F>
RunResult run_with(const F& k, const JobSpec& job) {
  Report rep;
  std::string source;
  bool invalid = false;
  std::vector<std::string> problems;
  auto s = load_poset(job, source, invalid, problems);
  rep.root["command"] = job.command;
  rep.root["field"] = k.name();
  if (invalid) {
    if (job.command != "validate") throw InputError("invalid poset: " + problems.front());
    rep.root["validate"] = {{"source", source}, {"valid", false}, {"errors", problems}};
    rep.check("poset_valid", false, true, problems.front());
  } else {
    Context<F> c;
    c.k = k;
    c.s = s;
    c.source = source;
    c.preset_name = job.preset;
    c.job = &job;
    const auto& cmd = job.command;
    bool all = cmd == "all";
    if (all || cmd == "validate") section_validate(c, rep);
    if (all || cmd == "vectors") section_vectors(c, rep);
    if (all || cmd == "charmap") section_charmap(c, rep);
    if (all || cmd == "sheaf") section_sheaf(c, rep);
    if (all || cmd == "verify") section_verify(c, rep);
    if (all || cmd == "specseq") section_specseq(c, rep);
    if (all || cmd == "facering") section_facering(c, rep);
  }
  std::set<std::string> wanted(job.checks.begin(), job.checks.end());
  std::set<std::string> seen;
  bool ok = true;
  ojson cj = ojson::array();
  for (const auto& ch : rep.checks) {
    seen.insert(ch.name);
    bool counts = ch.applicable && (wanted.empty() || wanted.count(ch.name));
    if (counts && !ch.pass) ok = false;
    cj.push_back({{"name", ch.name}, {"pass", ch.pass}, {"applicable", ch.applicable}, {"detail", ch.detail}});
  }
  for (const auto& w : wanted)
    if (!seen.count(w)) throw InputError("unknown check for this command: " + w);
  rep.root["checks"] = cj;
  rep.root["status"] = ok ? "pass" : "fail";
  RunResult res;
  res.exit_code = ok ? 0 : 1;
  if (job.out == "md") {
    ojson body = rep.root;
    body.erase("checks");
    Report shown;
    shown.root = body;
    shown.checks = rep.checks;
    res.output = render_markdown(job.command, shown);
  } else {
    res.output = rep.root.dump(2) + "\n";
  }
  return res;
}

}  // namespace cli_detail

// Field from "Q" or "Fp:<p>"; nullopt means Q.
inline std::optional<std::uint32_t> parse_field(const std::string& f) {
  if (f == "Q") return std::nullopt;
  if (f.rfind("Fp:", 0) == 0) {
    long long p = detail::parse_int(f.substr(3), "--field");
    if (p < 2 || p > 65521 || !is_prime(static_cast<std::uint64_t>(p))) throw InputError("--field: " + f.substr(3) + " is not a prime below 65536");
    return static_cast<std::uint32_t>(p);
  }
  throw InputError("--field must be Q or Fp:<prime>, got '" + f + "'");
}

inline RunResult run(const JobSpec& job) {
  try {
    if (std::find(commands().begin(), commands().end(), job.command) == commands().end())
      throw InputError("unknown command '" + job.command + "'");
    if (job.out != "json" && job.out != "md") throw InputError("--out must be json or md");
    auto p = parse_field(job.field);
    if (p) return cli_detail::run_with(PrimeField(*p), job);
    return cli_detail::run_with(RationalField{}, job);
  } catch (const InputError& e) {
    return {2, std::string("error: ") + e.what() + "\n"};
  } catch (const PosetError& e) {
    return {2, std::string("error: ") + e.what() + "\n"};
  }
}

}  // namespace torusspace
