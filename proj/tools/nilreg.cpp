#include <chrono>
#include <filesystem>
#include <fstream>
#include <iostream>

#include <CLI11.hpp>
#include <json.hpp>

#include "nilreg/acceptance.hpp"
#include "nilreg/ball.hpp"
#include "nilreg/canon.hpp"
#include "nilreg/catalog.hpp"
#include "nilreg/growth.hpp"
#include "nilreg/lattice.hpp"
#include "nilreg/manifest.hpp"
#include "nilreg/process.hpp"
#include "nilreg/realize.hpp"
#include "nilreg/witness.hpp"

using namespace nilreg;
using nlohmann::json;

namespace {

struct Ctx {
  std::string catalog_path;
  int workers = 2;
  std::vector<std::string> argv;
  std::chrono::steady_clock::time_point t0;

  const Catalog& cat() {
    if (!cat_) cat_ = load_catalog(catalog_path);
    return *cat_;
  }

  void write_manifest(const std::string& out,
                      const std::vector<std::uint64_t>& seeds,
                      const std::vector<std::string>& outputs) {
    RunManifest m;
    for (const auto& a : argv) m.command += (m.command.empty() ? "" : " ") + a;
    m.argv = argv;
    m.catalog_hash = cat().content_hash;
    m.seeds = seeds;
    m.elapsed_s =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    m.outputs = outputs;
    m.save(out + ".manifest.json");
  }

 private:
  std::optional<Catalog> cat_;
};

void write_counts_csv(const std::string& path,
                      const std::vector<std::uint64_t>& counts) {
  std::ofstream out(path);
  if (!out) fail(ErrorKind::Structural, "cannot write " + path);
  out << "n,count\n";
  for (std::size_t n = 0; n < counts.size(); ++n)
    out << n << "," << counts[n] << "\n";
}

std::string rational_str(const Rational& r) {
  std::ostringstream os;
  os << boost::multiprecision::numerator(r) << "/"
     << boost::multiprecision::denominator(r);
  return os.str();
}

int cmd_ball(Ctx& ctx, const std::string& group, int radius,
             const std::string& gens_csv, const std::string& cache_dir,
             std::uint64_t max_elements, const std::string& out) {
  const GroupSpec& spec = ctx.cat().group(group);
  std::vector<std::string> gens = spec.word_gens;
  if (!gens_csv.empty()) {
    gens.clear();
    std::stringstream ss(gens_csv);
    std::string tok;
    while (std::getline(ss, tok, ',')) gens.push_back(tok);
  }
  std::optional<BallRecord> b;
  bool partial = false;
  std::string cache_path;
  if (!cache_dir.empty()) {
    cache_path = (std::filesystem::path(cache_dir) /
                  ball_cache_name(spec, gens, radius, ctx.cat().content_hash))
                     .string();
    if (std::filesystem::exists(cache_path)) b = load_ball(spec, cache_path);
  }
  if (!b) {
    BallConfig bc;
    bc.workers = ctx.workers;
    if (max_elements > 0) bc.max_elements = max_elements;
    try {
      b = ball(spec, gens, radius, bc);
    } catch (const BallBudgetError& e) {
      // emit the completed radii with an explicit partial marker
      std::cerr << "warning: " << e.what() << "\n";
      partial = true;
      radius = e.completed_radius;
      b = ball(spec, gens, radius, bc);
    }
    if (!cache_path.empty() && !partial) save_ball(*b, cache_path);
  }
  write_counts_csv(out, b->counts);
  if (partial) {
    std::ofstream marker(out + ".partial");
    marker << "budget exhausted; counts are complete only to radius " << radius
           << "\n";
  }
  ctx.write_manifest(out, {}, {out});
  std::cout << "B_" << radius << "(" << group << "): " << b->size()
            << " elements, counts written to " << out
            << (partial ? " (partial)" : "") << "\n";
  return partial ? 1 : 0;
}

int cmd_schreier(Ctx& ctx, const std::string& group, const std::string& subgroup,
                 int radius, const std::string& out) {
  const GroupSpec& spec = ctx.cat().group(group);
  SchreierConfig sc;
  sc.workers = ctx.workers;
  SchreierBall s = schreier_ball(spec, spec.subgroup(subgroup), spec.word_gens,
                                 radius, sc);
  write_counts_csv(out, s.counts);
  ctx.write_manifest(out, {}, {out});
  std::cout << "B_" << radius << "(" << group << "/" << subgroup
            << "): " << s.size() << " cosets, counts written to " << out << "\n";
  return 0;
}

int cmd_growth(Ctx& ctx, const std::string& group, const std::string& subgroup,
               int radius, double tol, const std::string& out) {
  const GroupSpec& spec = ctx.cat().group(group);
  const std::string stem = out.substr(0, out.find_last_of('.'));
  BallConfig bc;
  bc.workers = ctx.workers;
  BallRecord b = ball(spec, spec.word_gens, radius, bc);
  json j;
  j["group"] = group;
  std::vector<std::string> outputs{out};

  GrowthReport rb = make_report(group, "", "ball", bass_guivarch(spec), b.counts,
                                default_window(radius), tol);
  write_counts_csv(stem + ".counts.csv", b.counts);
  outputs.push_back(stem + ".counts.csv");
  j["ball"] = json::parse(rb.to_json());

  if (!subgroup.empty()) {
    const SubgroupSpec& sub = spec.subgroup(subgroup);
    auto rel = relative_count(b, sub);
    GrowthReport rr = make_report(group, subgroup, "relative",
                                  relative_degree(spec, sub), rel,
                                  default_window(radius), tol);
    write_counts_csv(stem + ".relative.csv", rel);
    outputs.push_back(stem + ".relative.csv");
    j["relative"] = json::parse(rr.to_json());

    SchreierConfig sc;
    sc.workers = ctx.workers;
    SchreierBall s = schreier_ball(spec, sub, spec.word_gens, radius, sc);
    GrowthReport rs = make_report(group, subgroup, "schreier",
                                  schreier_degree(spec, sub), s.counts,
                                  default_window(radius), tol);
    write_counts_csv(stem + ".schreier.csv", s.counts);
    outputs.push_back(stem + ".schreier.csv");
    j["schreier"] = json::parse(rs.to_json());
  }
  std::ofstream(out) << j.dump(1) << "\n";
  ctx.write_manifest(out, {}, outputs);
  std::cout << j.dump(1) << "\n";
  return 0;
}

int cmd_canon(Ctx& ctx, const std::string& group, const std::string& word_text,
              bool trace_weights, long long scale, const std::string& out) {
  const GroupSpec& spec = ctx.cat().group(group);
  CanonWord word = parse_word(spec, word_text);
  const Int A = 4 * std::max(1, commutator_expansion_bound(spec));
  SortOptions opts;
  opts.want_trace = trace_weights;
  opts.n = scale > 0 ? Int(scale) : Int(std::max<std::size_t>(1, word.size()));
  SortResult res = sort_normalize(spec, word, A, opts);

  json j;
  j["group"] = group;
  j["word"] = word_text;
  j["weight_base"] = A.str();
  j["exchanges"] = res.exchanges;
  json exps = json::array();
  for (int jl = 1; jl <= spec.nil_class; ++jl) {
    json lvl;
    for (std::size_t i = 0; i < res.form.exps[jl - 1].size(); ++i)
      lvl[spec.graded[jl - 1][i]] = res.form.exps[jl - 1][i].str();
    exps.push_back(lvl);
  }
  j["exponents"] = exps;
  if (trace_weights) {
    json tr = json::array();
    for (const auto& w : res.trace) tr.push_back(rational_str(w));
    j["weight_trace"] = tr;
  }
  if (!out.empty()) {
    std::ofstream(out) << j.dump(1) << "\n";
    ctx.write_manifest(out, {}, {out});
  }
  std::cout << j.dump(1) << "\n";
  return 0;
}

json witness_report_json(const GroupSpec& spec, const WitnessSpec& w) {
  VerifyReport rep = verify_witness(spec, w);
  json j;
  j["group"] = spec.name;
  j["witness"] = w.name;
  j["pass"] = rep.all_pass();
  json checks = json::array();
  for (const auto& c : rep.checks) {
    json cj;
    cj["name"] = c.name;
    cj["pass"] = c.pass;
    if (!c.detail.empty()) cj["detail"] = c.detail;
    checks.push_back(cj);
  }
  j["checks"] = checks;
  return j;
}

int cmd_verify_witness(Ctx& ctx, const std::string& group,
                       const std::string& witness, int radius,
                       const std::string& out) {
  const GroupSpec& spec = ctx.cat().group(group);
  const WitnessSpec& w = spec.witness(witness);
  json j = witness_report_json(spec, w);

  // growth cross-check: catalog H_j ranks against the ranks of the
  // projections of the enumerated members of B_radius ∩ H ∩ G_j
  const SubgroupSpec& K = spec.subgroup(w.K);
  if (K.hj_gens && radius > 0) {
    BallConfig bc;
    bc.workers = ctx.workers;
    BallRecord b = ball(spec, spec.word_gens, radius, bc);
    json cross = json::array();
    auto declared = relative_ranks(spec, K);
    for (int jl = 1; jl <= spec.nil_class; ++jl) {
      std::vector<std::vector<Int>> rows;
      for (const auto& g : b.elems)
        if (is_member(K, g) && spec.in_level(jl, g))
          rows.push_back(project(spec, jl, g));
      const int enumerated = rows.empty() ? 0 : lattice_rank(rows);
      json cj;
      cj["level"] = jl;
      cj["declared_rank"] = declared[jl - 1];
      cj["enumerated_rank"] = enumerated;
      cj["agree"] = enumerated == declared[jl - 1];
      cross.push_back(cj);
    }
    j["hj_rank_crosscheck"] = cross;
    j["crosscheck_radius"] = radius;
  }
  if (!out.empty()) {
    std::ofstream(out) << j.dump(1) << "\n";
    ctx.write_manifest(out, {}, {out});
  }
  std::cout << j.dump(1) << "\n";
  return j["pass"].get<bool>() ? 0 : 2;
}

int cmd_crit(Ctx& ctx, const std::string& group, const std::string& out) {
  const GroupSpec& spec = ctx.cat().group(group);
  CritResult r = crit_interval(spec);
  json j = json::parse(r.to_json());
  if (!out.empty()) {
    std::ofstream(out) << j.dump(1) << "\n";
    ctx.write_manifest(out, {}, {out});
  }
  std::cout << j.dump(1) << "\n";
  return 0;
}

int cmd_process(Ctx& ctx, const std::string& group, const std::string& variant,
                int steps, int seeds, const std::string& witness,
                const std::string& out) {
  const GroupSpec& spec = ctx.cat().group(group);
  GenSet fs = make_genset(spec, spec.word_gens);

  // largest full block drawn by the schedule
  int need = 1;
  {
    int s = 0;
    for (int j = 0; s < steps; ++j) {
      need = 1 << j;
      s += (variant == "right" ? 2 : 1) * need;
    }
  }
  std::unique_ptr<BallSampler> sampler = heis_sampler(spec, fs, need);
  std::optional<BallRecord> store;
  if (!sampler) {
    BallConfig bc;
    bc.workers = ctx.workers;
    store.emplace(ball(spec, spec.word_gens, need, bc));
    sampler = store_sampler(*store);
  }

  std::ofstream csv(out);
  if (!csv) fail(ErrorKind::Structural, "cannot write " + out);
  csv << "seed,n,letter,coset,length\n";
  std::vector<std::uint64_t> used_seeds;

  const WitnessSpec* w = nullptr;
  std::optional<SchreierBall> sball;
  std::optional<RealizeResult> rr;
  double C0 = 8.0, alpha_profile = 0.45;
  if (variant == "critical" || variant == "plain") {
    const std::string wname = witness.empty() ? (variant == "critical" ? "K_center" : "") : witness;
    if (!wname.empty()) {
      w = &spec.witness(wname);
      SchreierConfig slim;
      slim.workers = ctx.workers;
      slim.store_reps = false;
      sball.emplace(
          schreier_ball(spec, spec.subgroup(w->K), spec.word_gens, steps + 1, slim));
    }
  } else if (variant == "right") {
    const std::string wname = witness.empty() ? "K_ac" : witness;
    w = &spec.witness(wname);
    RealizeParams rp;
    rp.alpha = 0.75;
    rp.R = steps + 1;
    rp.J_mult = 1.0;
    rp.workers = ctx.workers;
    rr = build_system(spec, spec.subgroup(w->K), rp);
  }

  auto emit = [&](const ProcessTrace& tr) {
    for (std::size_t n = 0; n < tr.letters.size(); ++n) {
      csv << tr.seed << "," << (n + 1) << "," << fs.letter_name(tr.letters[n]);
      csv << ",";
      if (n + 1 < tr.coset.size()) csv << tr.coset[n + 1];
      csv << ",";
      if (n + 1 < tr.lengths.size()) csv << tr.lengths[n + 1];
      csv << "\n";
    }
  };

  for (int s = 1; s <= seeds; ++s) {
    used_seeds.push_back(s);
    if (variant == "plain") {
      ProcessTrace tr = sample_path(spec, fs, *sampler, steps, s);
      if (sball) {
        for (const auto& g : tr.partial) {
          auto v = sball->coset_of(g);
          tr.coset.push_back(v.value_or(0));
          tr.lengths.push_back(critical_length(C0, alpha_profile, sball->dist[*v]));
        }
      }
      emit(tr);
    } else if (variant == "right") {
      const IntervalSystem& sys = rr->system;
      std::vector<ActionEvaluator> by_letter;
      for (int li = 0; li < fs.size(); ++li)
        by_letter.push_back(make_evaluator(sys, fs.elems[li]));
      PointAction action = [&](int li, double x) { return by_letter[li].eval(x); };
      const double x0 = sys.cell(sys.pos_of[0], 0).left;
      ProcessTrace tr = sample_path_right(spec, fs, *sampler, action, x0, steps, s);
      emit(tr);
    } else if (variant == "critical") {
      CriticalConfig cc;
      cc.base_seed = static_cast<std::uint64_t>(s) * 1000;
      CriticalResult cr = critical_trace(spec, spec.subgroup(w->K), *sball, *sampler,
                                         schreier_degree(spec, spec.subgroup(w->K)),
                                         alpha_profile, C0, steps, cc);
      emit(cr.trace);
    } else {
      fail(ErrorKind::Lookup, "unknown process variant '" + variant + "'");
    }
  }
  ctx.write_manifest(out, used_seeds, {out});
  std::cout << "wrote " << out << "\n";
  return 0;
}

json system_json(const IntervalSystem& sys, const std::string& group,
                 const std::string& witness) {
  json j;
  j["group"] = group;
  j["witness"] = witness;
  j["alpha"] = sys.alpha;
  j["eps"] = sys.eps;
  j["C0"] = sys.C0;
  j["R"] = sys.R;
  j["J"] = sys.J;
  j["safe_radius"] = sys.safe_radius;
  j["cocycle_degree"] = sys.cocycle_degree;
  j["p_c"] = to_i64(sys.p_c);
  j["total_length"] = sys.total;
  json cosets = json::array();
  for (std::size_t p = 0; p < sys.cosets(); ++p) {
    json c;
    c["pos"] = p;
    c["dist"] = sys.sball.dist[sys.order[p]];
    c["A"] = sys.A[p];
    c["left"] = sys.pts[p].front();
    c["right"] = sys.pts[p].back();
    cosets.push_back(c);
  }
  j["cosets"] = cosets;
  return j;
}

int cmd_realize(Ctx& ctx, const std::string& group, const std::string& witness,
                double alpha, int radius, long long jrange, double eps, double C0,
                const std::string& out) {
  const GroupSpec& spec = ctx.cat().group(group);
  const WitnessSpec& w = spec.witness(witness);
  RealizeParams rp;
  rp.alpha = alpha;
  rp.R = radius;
  rp.J = jrange;
  rp.eps = eps;
  rp.C0 = C0;
  rp.workers = ctx.workers;
  RealizeResult rr = build_system(spec, spec.subgroup(w.K), rp);
  json j = system_json(rr.system, group, witness);
  std::ofstream(out) << j.dump(1) << "\n";
  ctx.write_manifest(out, {}, {out});
  std::cout << "system with " << rr.system.cosets() << " cosets, J = "
            << rr.system.J << ", total length " << rr.system.total
            << " written to " << out << "\n";
  return 0;
}

int cmd_holder(Ctx& ctx, const std::string& system_path,
               const std::string& generator, const std::string& out) {
  std::ifstream in(system_path);
  if (!in) fail(ErrorKind::Lookup, "cannot open " + system_path);
  json j = json::parse(in);
  const GroupSpec& spec = ctx.cat().group(j.at("group").get<std::string>());
  const WitnessSpec& w = spec.witness(j.at("witness").get<std::string>());
  RealizeParams rp;
  rp.alpha = j.at("alpha").get<double>();
  rp.eps = j.at("eps").get<double>();
  rp.C0 = j.at("C0").get<double>();
  rp.R = j.at("R").get<int>();
  rp.J = j.at("J").get<long long>();
  rp.workers = ctx.workers;
  RealizeResult rr = build_system(spec, spec.subgroup(w.K), rp);
  const IntervalSystem& sys = rr.system;

  ActionEvaluator ev = make_evaluator(sys, spec.element(generator));
  std::ofstream csv(out);
  csv << "v,norm,A_v,kappa_alpha,formula_bound\n";
  for (std::size_t p = 0; p < sys.cosets(); ++p) {
    if (ev.target[p] < 0) continue;
    HolderEstimate est = holder_constant(ev, p, sys.alpha);
    csv << p << "," << sys.sball.dist[sys.order[p]] << "," << sys.A[p] << ","
        << est.kappa_alpha << "," << est.formula_bound << "\n";
  }
  ctx.write_manifest(out, {}, {out});
  std::cout << "wrote " << out << "\n";
  return 0;
}

int cmd_reproduce(Ctx& ctx, const std::string& id) {
  std::vector<std::string> ids =
      id == "all" ? criterion_ids() : std::vector<std::string>{id};
  bool all_pass = true;
  for (const auto& one : ids) {
    CriterionResult r = run_criterion(ctx.cat(), one, ctx.workers);
    all_pass = all_pass && r.pass;
    std::cout << "[" << r.id << "] " << (r.pass ? "PASS" : "FAIL") << " ("
              << r.seconds << " s, budget " << r.budget_s << " s)"
              << (r.detail.empty() ? "" : " " + r.detail) << "\n";
  }
  return all_pass ? 0 : 2;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"growth, critical regularity and interval realizations for "
               "nilpotent matrix groups"};
  app.require_subcommand(1);

  Ctx ctx;
  ctx.t0 = std::chrono::steady_clock::now();
  for (int i = 0; i < argc; ++i) ctx.argv.push_back(argv[i]);
  ctx.catalog_path = default_catalog_path();
  app.add_option("--catalog", ctx.catalog_path, "catalog JSON path");
  app.add_option("--workers", ctx.workers, "worker threads");

  std::string group = "N3", subgroup, gens, word, witness, variant = "plain";
  std::string cache_dir;
  std::string out, system_path, generator = "b", criterion = "all";
  int radius = 16, steps = 31, seeds = 1;
  long long jrange = 0;
  std::uint64_t max_elements = 0;
  double alpha = 0.75, eps = 0, C0 = 0, tol = 0.4;
  bool trace_weights = false;
  long long scale = 0;

  auto* ball_cmd = app.add_subcommand("ball", "enumerate a word-metric ball");
  ball_cmd->add_option("--group", group)->required();
  ball_cmd->add_option("--radius", radius)->required();
  ball_cmd->add_option("--gens", gens, "comma-separated generating set");
  ball_cmd->add_option("--cache", cache_dir, "binary store cache directory");
  ball_cmd->add_option("--max-elements", max_elements, "element budget");
  ball_cmd->add_option("--out", out)->default_val("counts.csv");

  auto* schreier_cmd = app.add_subcommand("schreier", "enumerate a Schreier ball");
  schreier_cmd->add_option("--group", group)->required();
  schreier_cmd->add_option("--subgroup", subgroup)->required();
  schreier_cmd->add_option("--radius", radius)->required();
  schreier_cmd->add_option("--out", out)->default_val("schreier.csv");

  auto* growth_cmd = app.add_subcommand("growth", "formula degrees and fits");
  growth_cmd->add_option("--group", group)->required();
  growth_cmd->add_option("--subgroup", subgroup);
  growth_cmd->add_option("--radius", radius);
  growth_cmd->add_option("--tol", tol);
  growth_cmd->add_option("--out", out)->default_val("growth.json");

  auto* canon_cmd = app.add_subcommand("canon", "canonical form of a word");
  canon_cmd->add_option("--group", group)->required();
  canon_cmd->add_option("--word", word)->required();
  canon_cmd->add_flag("--trace-weights", trace_weights);
  canon_cmd->add_option("--scale", scale, "weight scale n");
  canon_cmd->add_option("--out", out);

  auto* vw_cmd = app.add_subcommand("verify-witness", "check a stabilizer witness");
  vw_cmd->add_option("--group", group)->required();
  vw_cmd->add_option("--witness", witness)->required();
  vw_cmd->add_option("--radius", radius, "H_j rank cross-check radius")
      ->default_val(12);
  vw_cmd->add_option("--out", out);

  auto* crit_cmd = app.add_subcommand("crit", "critical regularity value");
  crit_cmd->add_option("--group", group)->required();
  crit_cmd->add_option("--out", out);

  auto* process_cmd = app.add_subcommand("process", "distortion-control processes");
  process_cmd->add_option("--group", group)->required();
  process_cmd->add_option("--variant", variant)
      ->check(CLI::IsMember({"plain", "right", "critical"}));
  process_cmd->add_option("--steps", steps);
  process_cmd->add_option("--seeds", seeds);
  process_cmd->add_option("--witness", witness);
  process_cmd->add_option("--out", out)->default_val("trace.csv");

  auto* realize_cmd = app.add_subcommand("realize", "build an interval system");
  realize_cmd->add_option("--group", group)->required();
  realize_cmd->add_option("--witness", witness)->required();
  realize_cmd->add_option("--alpha", alpha);
  realize_cmd->add_option("--radius", radius)->default_val(8);
  realize_cmd->add_option("--jrange", jrange);
  realize_cmd->add_option("--eps", eps);
  realize_cmd->add_option("--c0", C0);
  realize_cmd->add_option("--out", out)->default_val("system.json");

  auto* holder_cmd = app.add_subcommand("holder", "Holder-constant estimates");
  holder_cmd->add_option("--system", system_path)->required();
  holder_cmd->add_option("--generator", generator);
  holder_cmd->add_option("--out", out)->default_val("kappa.csv");

  auto* repro_cmd = app.add_subcommand("reproduce", "run acceptance criteria");
  repro_cmd->add_option("id", criterion, "AC-1..AC-8 or 'all'");

  CLI11_PARSE(app, argc, argv);

  try {
    if (ball_cmd->parsed())
      return cmd_ball(ctx, group, radius, gens, cache_dir, max_elements, out);
    if (schreier_cmd->parsed()) return cmd_schreier(ctx, group, subgroup, radius, out);
    if (growth_cmd->parsed()) return cmd_growth(ctx, group, subgroup, radius, tol, out);
    if (canon_cmd->parsed())
      return cmd_canon(ctx, group, word, trace_weights, scale, out);
    if (vw_cmd->parsed()) return cmd_verify_witness(ctx, group, witness, radius, out);
    if (crit_cmd->parsed()) return cmd_crit(ctx, group, out);
    if (process_cmd->parsed())
      return cmd_process(ctx, group, variant, steps, seeds, witness, out);
    if (realize_cmd->parsed())
      return cmd_realize(ctx, group, witness, alpha, radius, jrange, eps, C0, out);
    if (holder_cmd->parsed()) return cmd_holder(ctx, system_path, generator, out);
    if (repro_cmd->parsed()) return cmd_reproduce(ctx, criterion);
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
