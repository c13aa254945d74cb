#include "optdesign/cli.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <ostream>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"
#include "optdesign/errors.hpp"
#include "optdesign/io.hpp"
#include "optdesign/mm_tables.hpp"
#include "optdesign/pareto.hpp"
#include "optdesign/run_config.hpp"
#include "optdesign/slr.hpp"

namespace optdesign::cli {

namespace {

const std::vector<double> kDefaultAList{3.0, 1.0, 0.5, 0.2, -0.2, -0.5, -1.0, -3.0, -5.0};
const std::vector<double> kDefaultEpsList{0.0, 0.05, 0.5, 1.0};

// Raw flag values; only the ones actually given override the config file.
struct Flags {
  std::string config;
  std::optional<std::string> model;
  std::optional<double> a, b, V, K, eps;
  bool absolute_eps = false;
  std::optional<std::string> criterion, c;
  std::optional<double> lambda;
  std::optional<std::uint64_t> seed;
  std::optional<std::string> out;
  std::optional<int> grid, n_support;
  bool compat = false;
  std::vector<double> a_list, eps_list, lambdas;
  std::optional<std::size_t> n;
  std::optional<std::string> law, mode;
  std::optional<double> a_fixed;
  std::optional<int> points;
  std::vector<std::string> designs;
  std::string table;
};

void add_model_options(CLI::App* sub, Flags& f) {
  sub->add_option("--config", f.config, "JSON config file; flags override its values");
  sub->add_option("--model", f.model, "slr | mm");
  sub->add_option("--a", f.a, "SLR lower endpoint");
  sub->add_option("--b", f.b, "SLR upper endpoint, or MM design-space multiplier");
  sub->add_option("--V", f.V, "MM nominal V");
  sub->add_option("--K", f.K, "MM nominal K");
  sub->add_option("--eps", f.eps, "MM lower bound in K-units");
  sub->add_flag("--absolute-eps", f.absolute_eps, "Treat --eps as an absolute lower bound");
  sub->add_option("--seed", f.seed, "Random seed (default: $OPTDESIGN_SEED or 42)");
  sub->add_option("--out", f.out, "Output file (default: standard output)");
  sub->add_option("--grid", f.grid, "Candidate grid resolution");
}

void add_criterion_options(CLI::App* sub, Flags& f) {
  sub->add_option("--criterion", f.criterion, "D, R, R2, C, SA, EM, CPB or COMPOUND");
  sub->add_option("--c", f.c, "c vector for criterion C, e.g. 1,0");
  sub->add_option("--lambda", f.lambda, "Compound weight in [0, 1]");
}

Vec2 parse_vec2(const std::string& text) {
  std::istringstream in(text);
  Vec2 v{};
  char comma = 0;
  if (!(in >> v[0] >> comma >> v[1]) || comma != ',' || !(in >> std::ws).eof()) {
    throw InvalidArgument("--c expects two comma-separated numbers, got '" + text + "'");
  }
  return v;
}

RunConfig resolve(const Flags& f) {
  RunConfig c;
  c.seed = default_seed();
  if (!f.config.empty()) {
    std::ifstream in(f.config);
    if (!in) throw InvalidArgument("cannot read config file " + f.config);
    std::stringstream buf;
    buf << in.rdbuf();
    merge_json(c, buf.str());
  }
  if (f.model) c.model = canonical_model(*f.model);
  if (f.a) c.a = f.a;
  if (f.b) c.b = f.b;
  if (f.V) c.V = *f.V;
  if (f.K) c.K = *f.K;
  if (f.eps) c.eps = *f.eps;
  if (f.absolute_eps) c.absolute_eps = true;
  if (f.criterion) c.criterion = *f.criterion;
  if (f.c) c.c = parse_vec2(*f.c);
  if (f.lambda) c.lambda = f.lambda;
  if (f.seed) c.seed = *f.seed;
  if (f.out) c.out = *f.out;
  if (f.grid) c.grid = *f.grid;
  if (f.n_support) c.n_support = *f.n_support;
  if (f.compat) c.compat = true;
  if (!f.a_list.empty()) c.a_list = f.a_list;
  if (!f.eps_list.empty()) c.eps_list = f.eps_list;
  if (f.n) c.n = *f.n;
  if (f.law) c.law = *f.law;
  if (f.mode) c.mode = *f.mode;
  if (f.a_fixed) c.a_fixed = f.a_fixed;
  if (!f.lambdas.empty()) c.lambdas = f.lambdas;
  if (f.points) c.points = *f.points;
  if (!f.designs.empty()) c.designs = f.designs;
  return c;
}

void emit(const std::string& content, const std::string& path, std::ostream& out) {
  if (path.empty()) {
    out << content;
  } else {
    write_file_atomic(path, content);
  }
}

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InvalidArgument("cannot read " + path);
  std::stringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

bool is_mm(const RunConfig& c) { return canonical_model(c.model) == "michaelis_menten"; }

struct References {
  Design d;
  Design r;
};

References reference_designs(const RunConfig& c, const Model& model) {
  if (!is_mm(c)) {
    const SlrInterval iv(*c.a, *c.b);
    return {d_optimal_slr(iv), r_optimal_slr(iv)};
  }
  OptimizeRequest req(model, CriterionSpec::r());
  req.grid_resolution = c.grid;
  req.seed = c.seed;
  return {mm_d_optimal(mm_params(c)).design, optimize_design(req).design};
}

CriterionSpec build_criterion(const RunConfig& c, const Model& model) {
  const std::optional<CriterionKind> kind = parse_criterion_kind(c.criterion);
  if (!kind) throw InvalidArgument("unknown criterion '" + c.criterion + "'");
  switch (*kind) {
    case CriterionKind::D: return CriterionSpec::d();
    case CriterionKind::R: return CriterionSpec::r();
    case CriterionKind::R2: return CriterionSpec::r2();
    case CriterionKind::EM: return CriterionSpec::em();
    case CriterionKind::CPB: return CriterionSpec::pritchard();
    case CriterionKind::C:
      if (!c.c) throw InvalidArgument("criterion C requires --c");
      return CriterionSpec::c(*c.c);
    case CriterionKind::SA:
      return CriterionSpec::sa(c_optimal(model, {1.0, 0.0}, c.grid, c.seed).criterion_value,
                               c_optimal(model, {0.0, 1.0}, c.grid, c.seed).criterion_value);
    case CriterionKind::Compound: {
      if (!c.lambda) throw InvalidArgument("criterion COMPOUND requires --lambda");
      const References refs = reference_designs(c, model);
      return CriterionSpec::compound(*c.lambda, evaluate(CriterionSpec::d(), model, refs.d),
                                     evaluate(CriterionSpec::r(), model, refs.r));
    }
  }
  throw InvalidArgument("unknown criterion '" + c.criterion + "'");
}

int cmd_optimal(const RunConfig& c, std::ostream& out) {
  const Model model = build_model(c);
  OptimizeRequest req(model, build_criterion(c, model));
  req.n_support = c.n_support;
  req.grid_resolution = c.grid;
  req.seed = c.seed;
  req.compat_singular_limit = c.compat;
  const OptimizeResult result = optimize_design(req);
  emit(result_to_json(result, model, req.criterion) + "\n", c.out, out);
  return result.converged ? kExitCertified : kExitBestFound;
}

int cmd_table(const RunConfig& c, const std::string& name, std::ostream& out) {
  if (name == "slr") {
    if (!c.b) throw InvalidArgument("table slr requires --b");
    const std::vector<double>& a_list = c.a_list.empty() ? kDefaultAList : c.a_list;
    emit(slr_table_csv(table_slr(a_list, *c.b)), c.out, out);
    return kExitCertified;
  }
  if (name == "mm-designs" || name == "mm-efficiencies") {
    const std::vector<double>& eps_list = c.eps_list.empty() ? kDefaultEpsList : c.eps_list;
    MmTableOptions options;
    options.grid_resolution = c.grid;
    options.seed = c.seed;
    options.compat = c.compat;
    const MmTables tables = mm_tables(mm_params(c), eps_list, mm_table_criteria(), options);
    emit(name == "mm-designs" ? mm_designs_csv(tables.designs)
                              : mm_efficiencies_csv(tables.efficiencies),
         c.out, out);
    return kExitCertified;
  }
  throw InvalidArgument("unknown table '" + name + "' (expected slr, mm-designs or mm-efficiencies)");
}

int cmd_pareto(const RunConfig& c, std::ostream& out, std::ostream& err) {
  const Model model = build_model(c);
  SamplingLaw law = SamplingLaw::anchored_upper;
  if (c.law == "uniform") {
    law = SamplingLaw::uniform_pair;
  } else if (c.law != "anchored") {
    throw InvalidArgument("unknown --law '" + c.law + "' (expected anchored or uniform)");
  }
  const References refs = reference_designs(c, model);
  const double d_star = evaluate(CriterionSpec::d(), model, refs.d);
  const double r_star = evaluate(CriterionSpec::r(), model, refs.r);
  const std::vector<Design> samples = sample_two_point_designs(model, c.n, c.seed, law);
  const std::vector<FrontPoint> front =
      pareto_front(evaluate_front_points(model, samples, d_star, r_star));
  emit(front_csv(front, model.unit()), c.out, out);

  const nlohmann::json meta = {{"seed", c.seed},
                               {"n", c.n},
                               {"law", c.law},
                               {"front_size", front.size()},
                               {"config", nlohmann::json::parse(to_json(c))}};
  if (c.out.empty()) {
    err << meta.dump(2) << '\n';
  } else {
    write_file_atomic(c.out + ".json", meta.dump(2) + "\n");
  }
  return kExitCertified;
}

int cmd_sweep(RunConfig c, std::ostream& out) {
  if (c.mode == "criterion") {
    if (!is_mm(c) && !c.a && !c.b) {
      c.a = 0.0;
      c.b = 1.0;
    }
    const Model model = build_model(c);
    const double a_fixed = c.a_fixed.value_or(is_mm(c) ? 0.71 : 0.5);
    if (c.points < 1) throw InvalidArgument("--points must be at least 1");
    std::vector<double> grid;
    for (int k = 1; k <= c.points; ++k) grid.push_back(static_cast<double>(k) / (c.points + 1));
    emit(sweep_csv(criterion_sweep(model, a_fixed, grid)), c.out, out);
    return kExitCertified;
  }
  if (c.mode == "compound") {
    const Model model = build_model(c);
    std::vector<double> lambdas = c.lambdas;
    if (lambdas.empty()) {
      for (int k = 0; k <= 10; ++k) lambdas.push_back(k / 10.0);
    }
    const References refs = reference_designs(c, model);
    const auto rows = compound_sweep(model, lambdas, evaluate(CriterionSpec::d(), model, refs.d),
                                     evaluate(CriterionSpec::r(), model, refs.r), c.grid, c.seed);
    emit(compound_sweep_csv(rows, model.unit()), c.out, out);
    return kExitCertified;
  }
  throw InvalidArgument("unknown --mode '" + c.mode + "' (expected criterion or compound)");
}

int cmd_check(const RunConfig& c, std::ostream& out, std::ostream& err) {
  const Model model = build_model(c);
  const std::optional<CriterionKind> kind = parse_criterion_kind(c.criterion);
  if (kind && (*kind == CriterionKind::R2 || *kind == CriterionKind::EM ||
               *kind == CriterionKind::CPB)) {
    err << "check: criterion " << to_string(*kind)
        << " is not convex; the equivalence theorem gives no certificate for it\n";
    return kExitUsage;
  }
  if (c.designs.size() != 1) throw InvalidArgument("check requires exactly one --design");
  const Design loaded = design_from_json(read_file(c.designs.front()), &model.space());
  const Design design = make_design(loaded.points(), model.space());
  const CriterionSpec spec = build_criterion(c, model);
  const double value = evaluate(spec, model, design);
  if (!std::isfinite(value)) throw SingularDesign("check: the design is singular");
  const DerivativeReport report = derivative_report(spec, model, design, 1000);
  const bool ok = certifies(report, value);
  emit(derivative_report_to_json(report, spec, value, ok) + "\n", c.out, out);
  char line[160];
  std::snprintf(line, sizeof line, "%s: min directional derivative %.6g at x = %.6g\n",
                ok ? "certified" : "not optimal", report.min_dd, report.argmin_x);
  err << line;
  return ok ? kExitCertified : kExitCheckFailed;
}

int cmd_efficiency(const RunConfig& c, std::ostream& out) {
  const Model model = build_model(c);
  const References refs = reference_designs(c, model);
  std::vector<std::pair<std::string, Design>> labelled;
  if (c.designs.empty()) {
    labelled.emplace_back("D-optimal", refs.d);
    labelled.emplace_back("R-optimal", refs.r);
  }
  for (const std::string& path : c.designs) {
    const Design loaded = design_from_json(read_file(path), &model.space());
    labelled.emplace_back(path, make_design(loaded.points(), model.space()));
  }
  emit(efficiency_report_to_json(efficiency_report(model, labelled, refs.d, refs.r)) + "\n",
       c.out, out);
  return kExitCertified;
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Optimal experimental designs for two-parameter models"};
  app.require_subcommand(1);
  Flags f;

  CLI::App* optimal = app.add_subcommand("optimal", "Optimize a design for one criterion");
  add_model_options(optimal, f);
  add_criterion_options(optimal, f);
  optimal->add_option("--n-support", f.n_support, "Support points (2-4)");
  optimal->add_flag("--compat", f.compat, "Report near-one-point EM/r2 optima as one-point");

  CLI::App* table = app.add_subcommand("table", "Emit a reference table as CSV");
  add_model_options(table, f);
  table->add_option("name", f.table, "slr | mm-designs | mm-efficiencies")->required();
  table->add_option("--a-list", f.a_list, "SLR lower endpoints")->delimiter(',');
  table->add_option("--eps-list", f.eps_list, "MM lower bounds in K-units")->delimiter(',');
  table->add_flag("--compat", f.compat, "Report near-one-point EM/r2 optima as one-point");

  CLI::App* pareto = app.add_subcommand("pareto", "Pareto front of sampled two-point designs");
  add_model_options(pareto, f);
  pareto->add_option("--n", f.n, "Number of sampled designs");
  pareto->add_option("--law", f.law, "anchored | uniform");

  CLI::App* sweep = app.add_subcommand("sweep", "Criterion or compound-criterion sweep");
  add_model_options(sweep, f);
  sweep->add_option("--mode", f.mode, "criterion | compound");
  sweep->add_option("--a-fixed", f.a_fixed, "Lower support point in model units");
  sweep->add_option("--points", f.points, "Number of interior weights");
  sweep->add_option("--lambdas", f.lambdas, "Compound weights")->delimiter(',');

  CLI::App* check = app.add_subcommand("check", "Equivalence-theorem check of a design");
  add_model_options(check, f);
  add_criterion_options(check, f);
  check->add_option("--design", f.designs, "Design JSON file");

  CLI::App* efficiency = app.add_subcommand("efficiency", "D and R efficiencies of designs");
  add_model_options(efficiency, f);
  efficiency->add_option("--design", f.designs, "Design JSON file (repeatable)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? 0 : kExitUsage;
  }

  try {
    const RunConfig config = resolve(f);
    if (optimal->parsed()) return cmd_optimal(config, out);
    if (table->parsed()) return cmd_table(config, f.table, out);
    if (pareto->parsed()) return cmd_pareto(config, out, err);
    if (sweep->parsed()) return cmd_sweep(config, out);
    if (check->parsed()) return cmd_check(config, out, err);
    if (efficiency->parsed()) return cmd_efficiency(config, out);
  } catch (const InvalidArgument& e) {
    err << "usage error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitError;
  }
  return kExitUsage;
}

}  // namespace optdesign::cli
