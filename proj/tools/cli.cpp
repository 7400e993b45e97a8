#include "cli.hpp"

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <map>
#include <optional>
#include <ostream>
#include <sstream>

#include <omp.h>

#include <CLI11.hpp>
#include <json.hpp>

#include "argeslab/cig.hpp"
#include "argeslab/correlation.hpp"
#include "argeslab/equivalence.hpp"
#include "argeslab/error.hpp"
#include "argeslab/evaluation.hpp"
#include "argeslab/simulation.hpp"

namespace argeslab::cli {

using json = nlohmann::ordered_json;

namespace {

struct Preset {
  int p;
  double edges;
  int n;
};

// (p, expected edges, n)
const std::map<std::string, Preset>& presets() {
  static const std::map<std::string, Preset> table = {
      {"paper-300", {300, 300, 100}},     {"paper-600", {600, 840, 200}},
      {"paper-1200", {1200, 2100, 300}},  {"paper-2400", {2400, 4800, 400}},
      {"dense-100-100", {100, 100, 50}},  {"dense-100-200", {100, 200, 100}},
      {"dense-100-300", {100, 300, 150}}, {"dense-100-400", {100, 400, 200}},
  };
  return table;
}

const char* kPresetHelp =
    "Simulation preset: paper-300, paper-600, paper-1200, paper-2400 (p, edges, n) = "
    "(300,300,100), (600,840,200), (1200,2100,300), (2400,4800,400); dense-100-{100,200,300,400} "
    "with p = 100 and n = 50, 100, 150, 200. Suggested lasso gammas for these presets: "
    "0.16, 0.14, 0.12, 0.10. Explicit flags override preset values.";

int default_jobs() {
  if (const char* env = std::getenv("ARGESLAB_JOBS")) {
    try {
      int j = std::stoi(env);
      if (j > 0) return j;
    } catch (...) {
    }
  }
  return 1;
}

std::string graph_text(const Pdag& g) { return format_graph(g); }

void write_text(const std::string& path, const std::string& text) {
  std::ofstream f(path);
  if (!f) throw std::ios_base::failure("cannot open '" + path + "' for writing");
  f << text;
  if (!f) throw std::ios_base::failure("write to '" + path + "' failed");
}

std::string with_index(const std::string& path, int r, int count) {
  if (count == 1) return path;
  std::filesystem::path p(path);
  return (p.parent_path() / (p.stem().string() + "_" + std::to_string(r) + p.extension().string())).string();
}

json config_json(const std::vector<std::pair<std::string, std::string>>& cfg) {
  json j = json::object();
  for (const auto& [k, v] : cfg) j[k] = v;
  return j;
}

struct SimulateArgs {
  std::string preset;
  int p = 0;
  double edges = -1;
  int n = 0;
  std::uint64_t seed = 1;
  std::string error_kind = "gaussian";
  std::string npn = "identity";
  std::string out = "sim";
  int replicates = 1;
};

struct CigArgs {
  std::string data, sem, out, method = "lasso", rule = "or";
  bool header = false, oracle = false;
  double gamma = 0.1, alpha = 0.01;
  int max_iter = 10000;
};

struct LearnArgs {
  std::string data, sem, variant = "ges", score = "gaussian", restriction, out, report;
  bool header = false, oracle = false, bic = false, turning = false, iterate = false;
  double lambda = -1, ridge = 0.0;
  int max_iterations = 100;
};

struct EvaluateArgs {
  std::string estimate, truth, out;
};

struct DemoArgs {
  double lambda = 1e-6;
  std::vector<std::string> variants;
};

int cmd_simulate(const SimulateArgs& a, std::ostream& out, std::ostream& err) {
  int p = a.p, n = a.n;
  double edges = a.edges;
  if (!a.preset.empty()) {
    auto it = presets().find(a.preset);
    if (it == presets().end()) throw ConfigError("unknown preset '" + a.preset + "'");
    if (p == 0) p = it->second.p;
    if (edges < 0) edges = it->second.edges;
    if (n == 0) n = it->second.n;
  }
  if (p > 0 && edges > 0.5 * p * (p - 1.0)) throw ConfigError("--edges exceeds the number of node pairs");
  if (p <= 0 || edges < 0 || n <= 0) throw ConfigError("simulate needs --p, --edges and --n (or a --preset)");
  if (a.replicates < 1) throw ConfigError("--replicates must be positive");
  const ErrorKind kind = parse_error_kind(a.error_kind);
  const NpnFamily family = parse_npn_family(a.npn);

  std::vector<std::string> errors(static_cast<std::size_t>(a.replicates));
#pragma omp parallel for schedule(dynamic)
  for (int r = 0; r < a.replicates; ++r) {
    try {
      const std::uint64_t seed = replicate_seed(a.seed, static_cast<std::uint64_t>(r));
      const LinearSem sem = random_sem(p, edges, seed, kind);
      const Dataset d = nonparanormal_transform(sample_sem(sem, n, seed), family);
      write_sem_file(with_index(a.out + ".sem.json", r, a.replicates), sem);
      write_csv(with_index(a.out + ".csv", r, a.replicates), d);
      write_graph_file(with_index(a.out + ".truth.txt", r, a.replicates), dag_to_cpdag(sem.structure()).graph());
    } catch (const std::exception& e) {
      errors[static_cast<std::size_t>(r)] = e.what();
    }
  }
  for (const auto& e : errors)
    if (!e.empty()) throw std::ios_base::failure(e);
  out << "simulated " << a.replicates << " replicate(s): p=" << p << " edges=" << edges << " n=" << n
      << " seed=" << a.seed << "\n";
  (void)err;
  return kOk;
}

CorrSource load_source(const std::string& data, bool header, const std::string& sem, bool oracle,
                       const std::string& score, double ridge) {
  if (oracle) {
    if (sem.empty()) throw ConfigError("--oracle needs --sem");
    return oracle_correlation(read_sem_file(sem)).with_ridge(ridge);
  }
  if (data.empty()) throw ConfigError("need --data (or --oracle --sem)");
  const Dataset d = read_csv(data, header);
  if (score == "gaussian") return sample_correlation(d).with_ridge(ridge);
  if (score == "spearman") return rank_correlation(d, CorrKind::Spearman).with_ridge(ridge);
  if (score == "kendall") return rank_correlation(d, CorrKind::Kendall).with_ridge(ridge);
  throw ConfigError("unknown score kind '" + score + "'");
}

int cmd_cig(const CigArgs& a, std::ostream& out) {
  Pdag g;
  if (a.method == "precision") {
    g = precision_threshold_cig(load_source(a.data, a.header, a.sem, a.oracle, "gaussian", 0.0), a.alpha);
  } else if (a.method == "lasso") {
    if (a.data.empty()) throw ConfigError("lasso method needs --data");
    CigConfig cfg;
    cfg.gamma = a.gamma;
    cfg.alpha = a.alpha;
    cfg.max_iter = a.max_iter;
    if (a.rule == "or")
      cfg.rule = SymmetrizeRule::OR;
    else if (a.rule == "and")
      cfg.rule = SymmetrizeRule::AND;
    else
      throw ConfigError("--rule must be or/and");
    int missed = 0;
    g = neighborhood_selection(read_csv(a.data, a.header), cfg, Exec::Parallel, &missed);
    if (missed) out << "warning: " << missed << " lasso regression(s) hit the iteration cap\n";
  } else {
    throw ConfigError("--method must be lasso or precision");
  }
  if (a.out.empty())
    out << graph_text(g);
  else
    write_graph_file(a.out, g);
  return kOk;
}

}  // namespace

std::string report_to_json(const LearnReport& rep) {
  json j;
  j["variant"] = to_string(rep.variant);
  j["lambda"] = rep.lambda;
  j["score_kind"] = to_string(rep.score_kind);
  j["start_score"] = rep.start_score;
  j["final_score"] = rep.final_score;
  j["moves"] = json::array();
  for (const TraceEntry& t : rep.trace) {
    json m;
    m["phase"] = to_string(t.phase);
    m["kind"] = to_string(t.kind);
    m["x"] = t.x;
    m["y"] = t.y;
    m["context"] = t.context;
    m["delta"] = t.delta;
    m["cum_score"] = t.cum_score;
    j["moves"].push_back(m);
  }
  j["final_graph"] = format_graph(rep.final.graph());
  j["warnings"] = rep.warnings;
  j["config"] = config_json(rep.config);
  return j.dump(2) + "\n";
}

namespace {

int cmd_learn(const LearnArgs& a, std::ostream& out) {
  const Variant variant = parse_variant(a.variant);
  if (variant != Variant::GES && a.restriction.empty())
    throw ConfigError(std::string(to_string(variant)) + " needs --restriction");
  CorrSource src = load_source(a.data, a.header, a.sem, a.oracle, a.score, a.ridge);
  double lambda = a.lambda;
  if (a.bic) {
    if (src.is_oracle()) throw ConfigError("--bic needs a finite sample");
    lambda = bic_lambda(static_cast<double>(*src.n()));
  } else if (lambda < 0) {
    if (!src.is_oracle()) throw ConfigError("give --lambda or --bic");
    lambda = 1e-6;
  }
  ScoreModel m(src, lambda);
  std::optional<Pdag> restriction;
  if (!a.restriction.empty()) restriction = read_graph_file(a.restriction);
  LearnOptions opt;
  opt.turning = a.turning;
  opt.iterate = a.iterate;
  opt.max_iterations = a.max_iterations;
  LearnReport rep = run_learner(variant, Cpdag::empty(src.p()), m, restriction, opt);
  rep.config.emplace_back("source", a.oracle ? a.sem : a.data);
  rep.config.emplace_back("oracle", a.oracle ? "true" : "false");
  rep.config.emplace_back("ridge", std::to_string(a.ridge));
  rep.config.emplace_back("restriction", a.restriction);
  if (a.out.empty())
    out << format_graph(rep.final.graph());
  else
    write_graph_file(a.out, rep.final.graph());
  if (!a.report.empty()) write_text(a.report, report_to_json(rep));
  for (const auto& w : rep.warnings) out << "warning: " << w << "\n";
  return kOk;
}

int cmd_evaluate(const EvaluateArgs& a, std::ostream& out) {
  const Pdag est = read_graph_file(a.estimate);
  const Pdag truth = read_graph_file(a.truth);
  const long d = shd(est, truth);
  const Confusion s = confusion(est, truth, ConfusionMode::Skeleton);
  const Confusion r = confusion(est, truth, ConfusionMode::Directed);
  std::ostringstream csv;
  csv << std::setprecision(17) << "mode,tp,fp,tn,fn,tpr,fpr,shd\n";
  csv << "skeleton," << s.tp << ',' << s.fp << ',' << s.tn << ',' << s.fn << ',' << s.tpr << ',' << s.fpr << ','
      << d << "\n";
  csv << "directed," << r.tp << ',' << r.fp << ',' << r.tn << ',' << r.fn << ',' << r.tpr << ',' << r.fpr << ','
      << d << "\n";
  auto conf_json = [](const Confusion& c) {
    return json{{"tp", c.tp}, {"fp", c.fp}, {"tn", c.tn}, {"fn", c.fn}, {"tpr", c.tpr}, {"fpr", c.fpr}};
  };
  json j{{"shd", d}, {"skeleton", conf_json(s)}, {"directed", conf_json(r)}};
  if (a.out.empty()) {
    out << csv.str();
  } else if (std::filesystem::path(a.out).extension() == ".json") {
    write_text(a.out, j.dump(2) + "\n");
  } else {
    write_text(a.out, csv.str());
  }
  return kOk;
}

Pdag parse_fixture(const char* text) { return parse_graph(text); }

int cmd_demo(const DemoArgs& a, std::ostream& out) {
  const LinearSem sem = example1_sem();
  const ScoreModel m(oracle_correlation(sem), a.lambda);
  const Dag g0 = sem.structure();
  const Pdag cig = true_cig(g0);
  const Pdag sk = skeleton(g0);
  const Pdag truth = parse_fixture("nodes: 4\n0 -> 2\n1 -> 2\n1 -> 3\n2 -> 3\n");
  const Pdag cig_limit = parse_fixture("nodes: 4\n0 -> 2\n0 -> 1\n3 -> 2\n3 -> 1\n1 -- 2\n");
  const Pdag skel_limit = parse_fixture("nodes: 4\n0 -> 2\n3 -> 2\n3 -> 1\n2 -> 1\n");

  std::vector<Variant> variants;
  for (const auto& s : a.variants) variants.push_back(parse_variant(s));
  if (variants.empty())
    variants = {Variant::GES, Variant::RGES_CIG, Variant::RGES_Skeleton, Variant::ARGES_CIG, Variant::ARGES_Skeleton};

  bool all = true;
  out << std::left << std::setw(16) << "variant" << std::setw(10) << "expected" << std::setw(8) << "result"
      << "output\n";
  for (Variant v : variants) {
    std::optional<Pdag> r;
    const Pdag* expected = &truth;
    const char* label = "true";
    switch (v) {
      case Variant::GES: break;
      case Variant::RGES_CIG: r = cig; expected = &cig_limit; label = "wrong-1"; break;
      case Variant::RGES_Skeleton: r = sk; expected = &skel_limit; label = "wrong-2"; break;
      case Variant::ARGES_CIG: r = cig; break;
      case Variant::ARGES_Skeleton: r = sk; break;
    }
    const LearnReport rep = run_learner(v, Cpdag::empty(4), m, r);
    const bool ok = rep.final.graph() == *expected;
    all = all && ok;
    std::string edges = format_graph(rep.final.graph());
    edges = edges.substr(edges.find('\n') + 1);
    for (char& c : edges)
      if (c == '\n') c = ';';
    out << std::setw(16) << to_string(v) << std::setw(10) << label << std::setw(8) << (ok ? "PASS" : "FAIL")
        << edges << "\n";
    if (!ok) {
      out << "  expected:\n" << format_graph(*expected) << "  got:\n" << format_graph(rep.final.graph());
    }
  }
  return all ? kOk : kCheckFailed;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  std::vector<const char*> argv;
  for (const auto& s : args) argv.push_back(s.c_str());
  return run(static_cast<int>(argv.size()), argv.data(), out, err);
}

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Greedy equivalence search with adaptive restrictions"};
  app.require_subcommand(1);
  int jobs = default_jobs();
  app.add_option("--jobs", jobs, "Worker threads (default: $ARGESLAB_JOBS or 1)")->check(CLI::PositiveNumber);

  SimulateArgs sim;
  auto* s = app.add_subcommand("simulate", "Random linear SEM, data set and true CPDAG");
  s->add_option("--preset", sim.preset, kPresetHelp);
  s->add_option("--p", sim.p, "Number of variables");
  s->add_option("--edges", sim.edges, "Expected number of edges");
  s->add_option("--n", sim.n, "Sample size");
  s->add_option("--seed", sim.seed, "Random seed");
  s->add_option("--error-kind", sim.error_kind, "gaussian, uniform or laplace");
  s->add_option("--npn", sim.npn, "identity, cubic, signed-sqrt or exp");
  s->add_option("--out", sim.out, "Output prefix (writes .sem.json, .csv, .truth.txt)");
  s->add_option("--replicates", sim.replicates, "Independent replicates, files suffixed _<r>");

  CigArgs cig;
  auto* c = app.add_subcommand("cig", "Estimate a conditional independence graph");
  c->add_option("--data", cig.data, "CSV data set");
  c->add_flag("--header", cig.header, "CSV has a header row");
  c->add_option("--method", cig.method, "lasso or precision");
  c->add_option("--gamma", cig.gamma, "Lasso penalty");
  c->add_option("--alpha", cig.alpha, "Test level of the precision method");
  c->add_option("--rule", cig.rule, "or / and symmetrization");
  c->add_option("--max-iter", cig.max_iter, "Coordinate descent iteration cap");
  c->add_flag("--oracle", cig.oracle, "Use the population correlation of --sem");
  c->add_option("--sem", cig.sem, "SEM JSON file");
  c->add_option("--out", cig.out, "Output graph file (default: stdout)");

  LearnArgs learn;
  auto* l = app.add_subcommand("learn", "Run GES, RGES or ARGES");
  l->add_option("--data", learn.data, "CSV data set");
  l->add_flag("--header", learn.header, "CSV has a header row");
  l->add_option("--sem", learn.sem, "SEM JSON file (with --oracle)");
  l->add_flag("--oracle", learn.oracle, "Score with the population correlation of --sem");
  l->add_option("--variant", learn.variant, "ges, rges-cig, rges-skeleton, arges-cig, arges-skeleton");
  l->add_option("--score", learn.score, "gaussian, spearman or kendall");
  l->add_option("--lambda", learn.lambda, "Penalty per edge (oracle default 1e-6)");
  l->add_flag("--bic", learn.bic, "lambda = ln(n) / (2n)");
  l->add_option("--ridge", learn.ridge, "Ridge added to correlation submatrices");
  l->add_option("--restriction", learn.restriction, "Undirected restriction graph file");
  l->add_flag("--turning", learn.turning, "Add a turning phase");
  l->add_flag("--iterate", learn.iterate, "Repeat phases until nothing changes");
  l->add_option("--max-iterations", learn.max_iterations, "Cap for --iterate");
  l->add_option("--out", learn.out, "Output graph file (default: stdout)");
  l->add_option("--report", learn.report, "JSON report path");

  EvaluateArgs ev;
  auto* e = app.add_subcommand("evaluate", "SHD and confusion counts of an estimate");
  e->add_option("--estimate", ev.estimate, "Estimated graph file")->required();
  e->add_option("--truth", ev.truth, "True graph file")->required();
  e->add_option("--out", ev.out, "Output .csv or .json (default: CSV on stdout)");

  DemoArgs demo;
  auto* d = app.add_subcommand("demo-example1", "Run all variants on the four-node example");
  d->add_option("--lambda", demo.lambda, "Penalty per edge");
  d->add_option("--variant", demo.variants, "Restrict to these variants");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& ex) {
    out << app.help();
    return kOk;
  } catch (const CLI::CallForAllHelp& ex) {
    out << app.help("", CLI::AppFormatMode::All);
    return kOk;
  } catch (const CLI::ParseError& ex) {
    err << "error: " << ex.what() << "\n";
    return kUsage;
  }

  omp_set_num_threads(jobs);
  try {
    if (s->parsed()) return cmd_simulate(sim, out, err);
    if (c->parsed()) return cmd_cig(cig, out);
    if (l->parsed()) return cmd_learn(learn, out);
    if (e->parsed()) return cmd_evaluate(ev, out);
    if (d->parsed()) return cmd_demo(demo, out);
  } catch (const ConfigError& ex) {
    err << "error: " << ex.what() << "\n";
    return kUsage;
  } catch (const ParseError& ex) {
    err << "error: " << ex.what() << "\n";
    return kIo;
  } catch (const std::ios_base::failure& ex) {
    err << "error: " << ex.what() << "\n";
    return kIo;
  } catch (const SingularityError& ex) {
    err << "numeric error: " << ex.what() << "\n";
    return kNumeric;
  } catch (const DegenerateColumnError& ex) {
    err << "numeric error: " << ex.what() << "\n";
    return kNumeric;
  } catch (const DeterministicDependenceError& ex) {
    err << "numeric error: " << ex.what() << "\n";
    return kNumeric;
  } catch (const GraphError& ex) {
    err << "error: " << ex.what() << "\n";
    return kIo;
  } catch (const std::exception& ex) {
    err << "error: " << ex.what() << "\n";
    return kCheckFailed;
  }
  return kUsage;
}

}  // namespace argeslab::cli
