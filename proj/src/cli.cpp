#include "specgap/cli.hpp"

#include <CLI11.hpp>
#include <charconv>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

#include "specgap/errors.hpp"
#include "specgap/parallel.hpp"
#include "specgap/report.hpp"

namespace specgap {

namespace {

std::vector<std::string_view> split(std::string_view text, char sep) {
  std::vector<std::string_view> parts;
  std::size_t start = 0;
  while (true) {
    const auto pos = text.find(sep, start);
    parts.push_back(text.substr(start, pos - start));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return parts;
}

std::size_t parse_size(std::string_view text, std::string_view what) {
  std::size_t value = 0;
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc{} || ptr != text.data() + text.size())
    throw ParseError("expected a nonnegative integer for " + std::string(what) + ", got '" + std::string(text) + "'");
  return value;
}

struct CliContext {
  RunConfig config;
  std::ostream& out;
  std::ostream& err;
};

void emit(CliContext& ctx, const std::string& text) {
  if (ctx.config.output_path.empty()) {
    ctx.out << text;
    return;
  }
  std::ofstream file(ctx.config.output_path, std::ios::binary);
  if (!file) throw InvalidArgument("cannot open output file " + ctx.config.output_path);
  file << text;
}

void emit_json(CliContext& ctx, const std::string& command, Json body) {
  Json doc{{"schema", kSchemaVersion}, {"command", command}, {"config", to_json(ctx.config)}};
  for (auto& [key, value] : body.items()) doc[key] = value;
  emit(ctx, doc.dump(2) + "\n");
}

void require_json(const CliContext& ctx, const std::string& command) {
  if (ctx.config.format != "json")
    throw InvalidArgument("csv output is available for verify-aldous and box-study only, not " + command);
}

int cmd_gap(CliContext& ctx, const std::string& process, std::size_t particles, const std::string& spec,
            const std::string& method) {
  require_json(ctx, "gap");
  const Graph g = parse_graph_spec(spec, ctx.config.state_budget);
  auto solver = ctx.config.solver();
  if (method == "dense")
    solver.method = SolverMethod::dense;
  else if (method == "lanczos")
    solver.method = SolverMethod::lanczos;

  std::optional<Generator> gen;
  if (process == "rw")
    gen.emplace(rw_generator(g));
  else if (process == "ip")
    gen.emplace(interchange_generator(g, ctx.config.state_budget));
  else
    gen.emplace(exclusion_generator(g, particles, ctx.config.state_budget));
  const auto result = spectral_gap(*gen, solver);
  const bool ok = result.residual <= ctx.config.tolerance;
  Json body{{"graph6", emit_graph6(g)},
            {"process", process},
            {"states", gen->size()},
            {"result", to_json(result)},
            {"pass", ok}};
  if (process == "ex") body["particles"] = particles;
  emit_json(ctx, "gap", std::move(body));
  return ok ? kExitPass : kExitVerificationFailed;
}

int cmd_verify_aldous(CliContext& ctx, std::size_t n_max, double tol) {
  AldousOptions options;
  options.solver = ctx.config.solver();
  options.state_budget = ctx.config.state_budget;
  const auto summary = batch_verify(n_max, tol, options);
  if (ctx.config.format == "csv")
    emit(ctx, batch_csv(summary));
  else
    emit_json(ctx, "verify-aldous", to_json(summary));
  return summary.failures == 0 ? kExitPass : kExitVerificationFailed;
}

int cmd_alpha(CliContext& ctx, const std::string& spec) {
  require_json(ctx, "alpha");
  AldousOptions options;
  options.solver = ctx.config.solver();
  options.state_budget = ctx.config.state_budget;
  const auto audit = alpha_sequence(parse_graph_spec(spec, ctx.config.state_budget), options);
  emit_json(ctx, "alpha", to_json(audit));
  return audit.lemma_holds && audit.alpha_nonincreasing ? kExitPass : kExitVerificationFailed;
}

int cmd_case_audit(CliContext& ctx, const std::string& spec) {
  require_json(ctx, "case-audit");
  AldousOptions options;
  options.solver = ctx.config.solver();
  options.state_budget = ctx.config.state_budget;
  const auto audit = case2_audit(parse_graph_spec(spec, ctx.config.state_budget), options);
  emit_json(ctx, "case-audit", to_json(audit));
  return audit.all_verified ? kExitPass : kExitVerificationFailed;
}

int cmd_box_study(CliContext& ctx, std::size_t d, std::size_t l_max, bool with_ip) {
  BoxOptions options;
  options.solver = ctx.config.solver();
  options.state_budget = ctx.config.state_budget;
  const auto rows = asymptotic_report(d, l_max, with_ip, options);
  bool ok = true;
  for (const auto& r : rows) {
    if (r.beta > r.gamma + 1e-9) ok = false;
    if (r.lambda_ip && *r.lambda_ip > r.gamma + 1e-9) ok = false;
  }
  for (std::size_t i = 1; i < rows.size(); ++i)
    if (rows[i].gamma >= rows[i - 1].gamma) ok = false;
  if (ctx.config.format == "csv") {
    emit(ctx, box_csv(rows));
  } else {
    Json table = Json::array();
    for (const auto& r : rows) table.push_back(to_json(r));
    emit_json(ctx, "box-study", Json{{"rows", std::move(table)}, {"pass", ok}});
  }
  return ok ? kExitPass : kExitVerificationFailed;
}

int cmd_corollary_audit(CliContext& ctx, std::size_t d, std::size_t L, std::size_t k, std::size_t M) {
  require_json(ctx, "corollary-audit");
  BoxOptions options;
  options.solver = ctx.config.solver();
  options.state_budget = ctx.config.state_budget;
  const auto audit = corollary_audit(d, L, k, M, options);
  emit_json(ctx, "corollary-audit", to_json(audit));
  return audit.all_applicable_hold ? kExitPass : kExitVerificationFailed;
}

int cmd_lump_audit(CliContext& ctx, const std::string& spec, const std::string& map_spec) {
  require_json(ctx, "lump-audit");
  const Graph g = parse_graph_spec(spec, ctx.config.state_budget);
  const std::size_t n = g.vertex_count();
  const auto parts = split(map_spec, ':');
  if (parts.size() != 2 || (parts[0] != "position" && parts[0] != "occupancy"))
    throw ParseError("map must be position:m or occupancy:m");
  const std::size_t m = parse_size(parts[1], "map parameter");

  const auto ip = interchange_generator(g, ctx.config.state_budget);
  const auto sys = eigensystem(ip, ctx.config.dense_threshold);
  const bool position = parts[0] == "position";
  if (position && (m < 1 || m > n)) throw InvalidArgument("position:m needs 1 <= m <= n");
  const LumpingMap map = position ? position_map(n, m - 1) : occupancy_map(n, m);
  const auto quotient = build_quotient(ip, map);
  const auto audit = audit_projection(sys, quotient);

  const Generator reference = position ? rw_generator(g) : exclusion_generator(g, m, ctx.config.state_budget);
  const double reference_difference = (quotient.qprime.dense() - reference.dense()).cwiseAbs().maxCoeff();
  const bool ok = audit.pass && reference_difference <= 1e-12;

  Json body{{"graph6", emit_graph6(g)},
            {"map", std::string(map_spec)},
            {"blocks", map.block_count()},
            {"eigenpairs", audit.eigenpairs},
            {"eigenvector_branch", audit.eigenvector_branch},
            {"zero_branch", audit.zero_branch},
            {"worst_scaled_residual", audit.worst_scaled_residual},
            {"quotient_spectrum", audit.quotient_spectrum},
            {"spectrum_contained", audit.spectrum_contained},
            {"reference", position ? "random walk" : "exclusion"},
            {"reference_max_difference", reference_difference},
            {"pass", ok}};
  emit_json(ctx, "lump-audit", std::move(body));
  return ok ? kExitPass : kExitVerificationFailed;
}

}  // namespace

Graph parse_graph_spec(std::string_view spec, std::size_t vertex_budget) {
  const auto colon = spec.find(':');
  if (colon == std::string_view::npos) throw ParseError("graph spec needs a 'kind:' prefix: " + std::string(spec));
  const auto kind = spec.substr(0, colon);
  const auto rest = spec.substr(colon + 1);
  if (kind == "g6") return parse_graph6(rest);
  if (kind == "file") {
    std::ifstream file{std::string(rest), std::ios::binary};
    if (!file) throw ParseError("cannot read graph file " + std::string(rest));
    std::stringstream buffer;
    buffer << file.rdbuf();
    const std::string text = buffer.str();
    const auto first = text.find_first_not_of(" \t\r\n");
    if (first != std::string::npos && text.compare(first, 2, "n ") == 0) return parse_edge_list(text);
    return parse_graph6(text);
  }
  const auto args = split(rest, ':');
  if (kind == "path" && args.size() == 1) return make_path(parse_size(args[0], "path length"));
  if (kind == "complete" && args.size() == 1) return make_complete(parse_size(args[0], "vertex count"));
  if (kind == "cycle" && args.size() == 1) return make_cycle(parse_size(args[0], "vertex count"));
  if (kind == "star" && args.size() == 1) return make_star(parse_size(args[0], "leaf count"));
  if (kind == "box" && args.size() == 2)
    return make_box(parse_size(args[0], "dimension"), parse_size(args[1], "side length"), vertex_budget);
  throw ParseError("unknown graph spec: " + std::string(spec));
}

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Spectral gaps of interchange, exclusion and random-walk processes on graphs", "specgap"};
  app.require_subcommand(1);
  RunConfig config;
  app.add_option("--seed", config.seed, "Lanczos start-vector seed (SPECGAP_SEED overrides)");
  app.add_option("--dense-threshold", config.dense_threshold, "largest state space solved densely");
  app.add_option("--state-budget", config.state_budget, "largest state space allowed");
  app.add_option("--tolerance", config.tolerance, "residual bound for eigenpairs");
  app.add_option("--jobs", config.jobs, "worker threads (0 = all cores)");
  app.add_option("--output", config.output_path, "write the report here instead of stdout");
  app.add_option("--format", config.format, "report format")->check(CLI::IsMember({"json", "csv"}));

  std::string process = "rw";
  std::size_t particles = 1;
  std::string graph_spec;
  std::string method = "auto";
  auto* gap = app.add_subcommand("gap", "spectral gap of one process on one graph");
  gap->add_option("--process", process, "rw | ip | ex")->check(CLI::IsMember({"rw", "ip", "ex"}));
  gap->add_option("--particles", particles, "particle count for ex");
  gap->add_option("--graph", graph_spec, "graph spec")->required();
  gap->add_option("--method", method, "auto | dense | lanczos")->check(CLI::IsMember({"auto", "dense", "lanczos"}));

  std::size_t n_max = 0;
  double aldous_tol = 1e-8;
  auto* verify = app.add_subcommand("verify-aldous", "compare interchange and random-walk gaps on all small graphs");
  verify->add_option("--nmax", n_max, "largest vertex count (<= 7)")->required();
  verify->add_option("--tol", aldous_tol, "relative tolerance");

  auto* alpha = app.add_subcommand("alpha", "prefix gaps and the lower bound alpha_n for a labeled graph");
  alpha->add_option("--graph", graph_spec, "graph spec")->required();

  auto* cases = app.add_subcommand("case-audit", "classify every interchange eigenvector and check the inductive step");
  cases->add_option("--graph", graph_spec, "graph spec")->required();

  std::size_t dim = 0;
  std::size_t l_max = 0;
  bool with_ip = false;
  auto* box = app.add_subcommand("box-study", "gamma_L, beta_L and interchange gaps for boxes");
  box->add_option("--dim", dim, "dimension d")->required();
  box->add_option("--lmax", l_max, "largest side length")->required();
  box->add_flag("--with-ip", with_ip, "add the interchange column for boxes with at most 9 vertices");

  std::size_t side = 0;
  std::size_t direction = 0;
  std::size_t m_param = 0;
  auto* corollary = app.add_subcommand("corollary-audit", "numeric audit of the boundary-graph bound");
  corollary->add_option("--dim", dim, "dimension d")->required();
  corollary->add_option("--L", side, "side length")->required();
  corollary->add_option("--k", direction, "direction 1..d")->required();
  corollary->add_option("--M", m_param, "column depth M (1 <= M <= L)")->required();

  std::string map_spec;
  auto* lump = app.add_subcommand("lump-audit", "check eigenvector projection under a lumping map");
  lump->add_option("--graph", graph_spec, "graph spec")->required();
  lump->add_option("--map", map_spec, "position:m | occupancy:m")->required();

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitPass : kExitUsage;
  }

  if (const char* env = std::getenv("SPECGAP_SEED")) {
    std::uint64_t seed = 0;
    const std::string_view text(env);
    auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), seed);
    if (ec != std::errc{} || ptr != text.data() + text.size()) {
      err << "error: SPECGAP_SEED must be a nonnegative integer\n";
      return kExitUsage;
    }
    config.seed = seed;
  }
  set_worker_count(config.jobs);

  CliContext ctx{config, out, err};
  try {
    if (*gap) return cmd_gap(ctx, process, particles, graph_spec, method);
    if (*verify) return cmd_verify_aldous(ctx, n_max, aldous_tol);
    if (*alpha) return cmd_alpha(ctx, graph_spec);
    if (*cases) return cmd_case_audit(ctx, graph_spec);
    if (*box) return cmd_box_study(ctx, dim, l_max, with_ip);
    if (*corollary) return cmd_corollary_audit(ctx, dim, side, direction, m_param);
    if (*lump) return cmd_lump_audit(ctx, graph_spec, map_spec);
  } catch (const BudgetExceeded& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const InvalidArgument& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const GraphError& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const Error& e) {
    err << "verification error: " << e.what() << '\n';
    return kExitVerificationFailed;
  }
  return kExitUsage;
}

}  // namespace specgap
