#include <chrono>
#include <ctime>
#include <sstream>

#include "parabolic/cli/commands.hpp"
#include "parabolic/cli/lemmas.hpp"

namespace parabolic::cli {

namespace {

Json error_json(const Error& e) { return {{"code", error_code_name(e.code())}, {"message", e.what()}}; }

struct Context {
  AlgebraHandle algebra;
  AlgebraElement z;
  const RunOptions& options;
  std::size_t index;
  CommandOutcome& outcome;
};

Json audit_task(const Context& ctx, const AuditOptions& opts) {
  const auto& z = ctx.z;
  Json out{{"kind", "audit"}, {"type", classify(z).tag}};
  out["commutant"] = to_json(commutant(z));
  auto triple = jacobson_morozov(z);
  out["triple"] = to_json(triple);
  out["is_sl2_triple"] = is_sl2_triple(triple);
  out["closed_form_counterpart"] = closed_form_counterpart(z).has_value();
  CounterpartParams p;
  p.count = opts.samples;
  Json samples = Json::array();
  for (const auto& x : counterpart_sample(z, p)) {
    samples.push_back({{"X", to_json(x)},
                       {"in_counterpart_set", in_counterpart_set(z, x)},
                       {"in_normalizing_set", in_normalizing_set(z, x)}});
    if (samples.size() >= opts.samples) break;
  }
  out["counterparts"] = samples;
  return out;
}

Json spectra_task(const Context& ctx, const SpectraOptions& opts) {
  auto triple = jacobson_morozov(ctx.z);
  auto names = opts.reps.empty() ? rep_names(ctx.algebra) : opts.reps;
  Json reps = Json::array();
  for (const auto& name : names) {
    auto rep = build_rep(ctx.algebra, name);
    auto d = eigendecompose(triple.h, rep);
    auto st = stable_subspaces(d);
    reps.push_back({{"rep", name},
                    {"dimension", rep.dimension()},
                    {"eigen_table", to_json(d, true)},
                    {"stable", basis_json(st.stable.basis)},
                    {"strongly_stable", basis_json(st.strongly_stable.basis)}});
  }
  return {{"kind", "spectra"},
          {"A", to_json(triple.h)},
          {"negative_part_condition", negative_part_condition(ctx.z, triple)},
          {"reps", reps},
          {"flatness", to_json(flatness_verdict(ctx.z, triple))}};
}

Json flow_task(const Context& ctx, FlowOptions opts) {
  if (ctx.options.tolerance) opts.tolerance = *ctx.options.tolerance;
  const auto& z = ctx.z;
  auto triple = jacobson_morozov(z);
  const auto& x = triple.f;
  Json out{{"kind", "flow"}, {"triple", to_json(triple)}, {"tolerance", opts.tolerance}};

  auto ray = ray_flow(z, x, opts.scales, opts.times);
  Json rj = summary_json(ray);
  rj["within_tolerance"] = ray.outside_cell == 0 && ray.max_residual <= opts.tolerance;
  std::string csv_name = "flow-" + std::to_string(ctx.index) + ".csv";
  std::ostringstream csv;
  write_csv(csv, ray);
  ctx.outcome.csv[csv_name] = csv.str();
  rj["csv"] = csv_name;
  out["ray_flow"] = rj;

  std::vector<CMatrix> points;
  for (double s : opts.scales) points.push_back(s * to_complex(x));
  std::vector<std::pair<double, double>> pairs;
  for (double t : opts.times)
    for (double u : opts.times) pairs.emplace_back(t, u);
  double semigroup = semigroup_residual(z, points, pairs);
  out["semigroup"] = {{"residual", semigroup}, {"within_tolerance", semigroup <= 2 * opts.tolerance}};

  double worst = 0;
  bool exact = true;
  for (double s : opts.scales)
    for (double t : opts.times) {
      auto r = verify_sl2_identity(triple, Rational(s), Rational(t));
      worst = std::max(worst, r.residual);
      exact = exact && r.exact && sgn(r.exact_residual) == 0;
    }
  out["sl2_identity"] = {{"pairs", opts.scales.size() * opts.times.size()},
                         {"exact_zero", exact},
                         {"max_float_residual", worst}};

  try {
    out["holonomy"] = to_json(holonomy_convergence(triple, opts.s, opts.schedule, opts.holonomy_tolerance));
    AlgebraElement y = frac(1, 4) * x;
    for (const auto& c : commutant(z).basis) y += frac(1, 4) * c;
    out["propagation"] =
        to_json(propagate_holonomy(triple, opts.s, y, opts.schedule.back(), opts.holonomy_tolerance));
  } catch (const Error& e) {
    out["holonomy_error"] = error_json(e);
    if (ctx.outcome.exit_code == 0) ctx.outcome.exit_code = exit_code_for(e.code());
  }

  auto grid = scan_grid(z, opts.grid_size, ctx.options.seed);
  Json scan = to_json(fixed_set_scan(z, grid, opts.t_probe, opts.tolerance));
  scan["grid_size"] = grid.size();
  scan["t_probe"] = opts.t_probe;
  out["fixed_set"] = scan;

  if (ctx.algebra->family() == Family::grassmannian && classify(z).tag == "rank2")
    out["closed_form_probe"] = to_json(rank2_closed_form_probe(z, x, opts.scales, opts.times, opts.tolerance));
  return out;
}

Json verify_task(const Context& ctx, const std::string& lemma) {
  auto report = verify_lemma(lemma, ctx.algebra, ctx.options.seed);
  Json out{{"kind", "verify-lemma"}};
  Json body = report.to_json();
  for (const auto& [k, v] : body.items()) out[k] = v;
  if (!report.pass() && ctx.outcome.exit_code == 0) ctx.outcome.exit_code = 4;
  return out;
}

std::vector<Task> tasks_for(TaskKind kind, const ScenarioConfig& cfg, const AlgebraHandle& algebra,
                            const RunOptions& options) {
  std::vector<Task> out;
  for (const auto& t : cfg.tasks)
    if (t.kind == kind) out.push_back(t);
  if (kind == TaskKind::verify_lemma) {
    if (options.lemma) {
      Task t;
      t.kind = kind;
      t.lemma = *options.lemma;
      out.push_back(t);
    }
    if (out.empty()) {
      for (const auto& id : lemma_ids()) {
        if (!lemma_applies(id, algebra)) continue;
        Task t;
        t.kind = kind;
        t.lemma = id;
        out.push_back(t);
      }
    }
    return out;
  }
  if (out.empty()) {
    Task t;
    t.kind = kind;
    out.push_back(t);
  }
  return out;
}

}  // namespace

const std::vector<std::string>& command_names() {
  static const std::vector<std::string> names{"algebra", "audit", "spectra", "flow", "verify"};
  return names;
}

int exit_code_for(ErrorCode code) {
  switch (code) {
    case ErrorCode::parse_error: return 2;
    case ErrorCode::validation_error:
    case ErrorCode::invalid_params:
    case ErrorCode::unsupported_scalar:
    case ErrorCode::not_in_p_plus:
    case ErrorCode::zero_input:
    case ErrorCode::unknown_lemma:
    case ErrorCode::family_unsupported:
    case ErrorCode::unsupported_rep:
    case ErrorCode::not_contact: return 3;
    case ErrorCode::outside_cell:
    case ErrorCode::domain:
    case ErrorCode::schedule_too_short:
    case ErrorCode::divergent_adjoint:
    case ErrorCode::not_diagonalizable:
    case ErrorCode::unbounded_compact_part:
    case ErrorCode::no_negative_representative: return 5;
    default: return 1;
  }
}

Json algebra_descriptor(const AlgebraHandle& algebra) {
  Json degrees = Json::array();
  for (int d = -algebra->depth(); d <= algebra->depth(); ++d) {
    Json basis = Json::array();
    for (const auto& b : algebra->basis(d)) basis.push_back(to_json(b));
    degrees.push_back({{"degree", d}, {"dimension", algebra->dim(d)}, {"basis", basis}});
  }
  return {{"label", algebra->label()},
          {"family", family_name(algebra->family())},
          {"scalar", scalar_tag_name(algebra->scalar().tag)},
          {"ambient_size", algebra->ambient_size()},
          {"depth", algebra->depth()},
          {"block_partition", algebra->block_partition()},
          {"dimension", algebra->dim()},
          {"killing_constant", to_string(algebra->killing_constant())},
          {"grading_element", to_json(grading_element(algebra))},
          {"degrees", degrees}};
}

Json envelope(const ScenarioConfig& config) {
  auto now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return {{"tool", kToolName}, {"version", kToolVersion}, {"config_digest", config_digest(config)}, {"timestamp", buf}};
}

CommandOutcome run_command(const std::string& command, const ScenarioConfig& config, const RunOptions& options) {
  CommandOutcome outcome;
  auto algebra = scenario_algebra(config);
  if (command == "algebra") {
    outcome.body = {{"command", command}, {"algebra", algebra_descriptor(algebra)}};
    return outcome;
  }
  TaskKind kind;
  if (command == "audit") {
    kind = TaskKind::audit;
  } else if (command == "spectra") {
    kind = TaskKind::spectra;
  } else if (command == "flow") {
    kind = TaskKind::flow;
  } else if (command == "verify") {
    kind = TaskKind::verify_lemma;
  } else {
    throw Error(ErrorCode::parse_error, "unknown command '" + command + "'");
  }
  auto z = scenario_isotropy(config, algebra);
  Json tasks = Json::array();
  std::size_t index = 0;
  for (const auto& task : tasks_for(kind, config, algebra, options)) {
    Context ctx{algebra, z, options, index++, outcome};
    try {
      switch (task.kind) {
        case TaskKind::audit: tasks.push_back(audit_task(ctx, task.audit)); break;
        case TaskKind::spectra: tasks.push_back(spectra_task(ctx, task.spectra)); break;
        case TaskKind::flow: tasks.push_back(flow_task(ctx, task.flow)); break;
        case TaskKind::verify_lemma: tasks.push_back(verify_task(ctx, task.lemma)); break;
      }
    } catch (const Error& e) {
      Json failed{{"kind", task_kind_name(task.kind)}, {"error", error_json(e)}};
      if (task.kind == TaskKind::verify_lemma) failed["lemma"] = task.lemma;
      tasks.push_back(failed);
      if (outcome.exit_code == 0) outcome.exit_code = exit_code_for(e.code());
    }
  }
  outcome.body = {{"command", command},
                  {"algebra", algebra->label()},
                  {"isotropy", {{"Z", to_json(z)}, {"type", classify(z).tag}}},
                  {"tasks", tasks},
                  {"exit_code", outcome.exit_code}};
  return outcome;
}

}  // namespace parabolic::cli
