#include "silt/cli/commands.hpp"

#include <cmath>
#include <fstream>
#include <ostream>
#include <sstream>

#include "json.hpp"
#include "silt/arcs.hpp"
#include "silt/cli/manifest.hpp"
#include "silt/csv.hpp"
#include "silt/error.hpp"
#include "silt/estimators.hpp"
#include "silt/expectation.hpp"
#include "silt/fbm.hpp"
#include "silt/regularity.hpp"

namespace silt::cli {

namespace fs = std::filesystem;
using nlohmann::ordered_json;

Region parse_region(const std::string& text, double horizon) {
  if (text == "D") return Region::full_triangle(horizon);
  std::vector<std::string> parts;
  std::stringstream ss(text);
  std::string p;
  while (std::getline(ss, p, ':')) parts.push_back(p);
  if (parts.size() == 2 && parts[0] == "D_kappa") return Region::offset_triangle(horizon, std::stod(parts[1]));
  if (parts.size() == 3 && parts[0] == "A") return Region::dyadic_square(std::stoi(parts[1]), std::stoi(parts[2]), horizon);
  throw ConfigError("region", "unrecognised region '" + text + "'");
}

namespace {

// Collects output files of one run.
class Outputs {
 public:
  explicit Outputs(fs::path dir) : dir_(std::move(dir)) {}

  std::ofstream open(const std::string& name) {
    files_.push_back(name);
    std::ofstream os(dir_ / name, std::ios::binary);
    if (!os) throw std::runtime_error("cannot write " + (dir_ / name).string());
    return os;
  }
  const std::vector<std::string>& files() const { return files_; }
  const fs::path& dir() const { return dir_; }

 private:
  fs::path dir_;
  std::vector<std::string> files_;
};

FbmPath make_path(const RunConfig& c, std::uint64_t seed) {
  SynthesisMethod method = SynthesisMethod::automatic;
  if (c.values().contains("method")) {
    if (c.text("method") == "circulant") method = SynthesisMethod::circulant;
    if (c.text("method") == "cholesky") method = SynthesisMethod::cholesky;
  }
  return generate_path(HurstParameter(c.real("H")), c.real("t"), static_cast<std::size_t>(c.integer("n_steps")), seed,
                       method);
}

const std::vector<std::string> kEstimateColumns{"kind",   "H",         "t",     "n_steps",  "seed",
                                                "y",      "epsilon",   "region_id", "value", "converged"};

void estimate_row(csv::Writer& w, const SiltEstimate& e) {
  w.row({to_string(e.kind), e.hurst, e.horizon, static_cast<unsigned long long>(e.n_steps),
         static_cast<unsigned long long>(e.seed), e.y, e.epsilon, e.region_id, e.value, e.converged});
}

SiltEstimate compute_estimate(const FbmPath& path, EstimateKind kind, double y, double eps, const Region& region) {
  const Mollifier m(eps);
  switch (kind) {
    case EstimateKind::alpha: return alpha_eps(path, y, m, region);
    case EstimateKind::alpha_hat_prime: return alpha_prime_eps(path, y, m, region);
    case EstimateKind::alpha_tilde_prime: return alpha_tilde_prime_eps(path, y, m);
  }
  return {};
}

void cmd_simulate(const RunConfig& c, Outputs& o, std::ostream& out) {
  const FbmPath path = make_path(c, c.seed());
  auto os = o.open("path.csv");
  csv::Writer w(os, "fbm_path", 1, {"time", "value"});
  for (std::size_t i = 0; i <= path.n_steps(); ++i) w.row({path.time(i), path.values()[i]});
  out << "wrote " << path.n_steps() + 1 << " samples\n";
}

void cmd_estimate(const RunConfig& c, Outputs& o, std::ostream& out) {
  const EstimateKind kind = parse_estimate_kind(c.text("kind"));
  if (kind == EstimateKind::alpha_tilde_prime && c.text("region") != "D")
    throw ConfigError("region", "alpha_tilde_prime is defined over D only");
  const Region region = parse_region(c.text("region"), c.real("t"));
  const double y = c.real("y");
  const auto ladder = c.real_list("eps_ladder");
  auto os = o.open("estimates.csv");
  csv::Writer w(os, "silt_estimate", 1, kEstimateColumns);
  for (long long r = 0; r < c.integer("replicates"); ++r) {
    const FbmPath path = make_path(c, c.seed() + static_cast<std::uint64_t>(r));
    if (ladder.empty()) {
      const SiltEstimate e = compute_estimate(path, kind, y, c.real("eps"), region);
      estimate_row(w, e);
      out << to_string(kind) << " seed=" << e.seed << " value=" << csv::format(e.value) << '\n';
      continue;
    }
    std::vector<SiltEstimate> rungs;
    for (double eps : ladder) {
      rungs.push_back(compute_estimate(path, kind, y, eps, region));
      estimate_row(w, rungs.back());
    }
    const SiltEstimate x = epsilon_extrapolate(rungs);
    estimate_row(w, x);
    out << to_string(kind) << " seed=" << x.seed << " extrapolated=" << csv::format(x.value)
        << (x.converged ? "" : " (not converged)") << '\n';
  }
}

std::string regime_tag(double H) {
  if (H >= 2.0 / 3.0) return "none";
  return to_string(regime_classify(HurstParameter(H)).regime);
}

void cmd_expectation(const RunConfig& c, Outputs& o, std::ostream& out) {
  const HurstParameter H(c.real("H"));
  const double t = c.real("t"), eps = c.real("eps");
  auto os = o.open("expectation.csv");
  csv::Writer w(os, "expectation", 1, {"H", "t", "y", "epsilon", "value", "abs_error", "regime"});
  for (double y : c.real_list("y")) {
    const ExpectationResult r = eps > 0.0 ? mean_alpha_prime_eps(t, y, eps, H) : mean_alpha_prime(t, y, H);
    w.row({r.hurst, r.t, r.y, r.epsilon, r.value, r.abs_error_estimate, regime_tag(H.value())});
    out << "y=" << csv::format(y) << " value=" << csv::format(r.value) << " value/y=" << csv::format(r.value / y)
        << '\n';
  }
}

void cmd_asymptotics(const RunConfig& c, Outputs& o, std::ostream& out) {
  const HurstParameter H(c.real("H"));
  const double t = c.real("t");
  const AsymptoticRegime a = asymptotic_constant(t, H);
  const RegimeClass rc = regime_classify(H);
  {
    auto os = o.open("asymptotics.csv");
    csv::Writer w(os, "asymptotics", 1,
                  {"H", "t", "regime", "scaling", "constant", "stated_constant", "abs_error", "continuous_at_zero"});
    w.row({H.value(), t, to_string(a.regime), a.scaling, a.constant, a.stated_constant, a.abs_error_estimate,
           rc.continuous_at_zero});
  }
  auto os = o.open("ratios.csv");
  csv::Writer w(os, "asymptotic_ratio", 1, {"y", "value", "normalized", "constant"});
  out << to_string(a.regime) << " constant=" << csv::format(a.constant)
      << " stated=" << csv::format(a.stated_constant) << '\n';
  for (double y : c.real_list("y")) {
    const ExpectationResult r = mean_alpha_prime(t, y, H);
    const double norm = asymptotic_normalizer(a.regime, y, H);
    w.row({y, r.value, r.value / norm, a.constant});
    out << "y=" << csv::format(y) << " ratio=" << csv::format(r.value / norm) << '\n';
  }
}

TestFunction make_test_function(const RunConfig& c) {
  const std::string& g = c.text("g");
  const double center = c.real("g_center"), width = c.real("g_width");
  if (g == "constant") return TestFunction::constant();
  if (g == "linear") return TestFunction::linear();
  if (g == "polynomial_cutoff") return TestFunction::polynomial_cutoff(center, width);
  if (g == "cosine") return TestFunction::cosine(width, center);
  return TestFunction::gaussian(center, width);
}

void cmd_occupation(const RunConfig& c, Outputs& o, std::ostream& out) {
  const TestFunction g = make_test_function(c);
  const Mollifier m(c.real("eps"));
  const Region region = parse_region(c.text("region"), c.real("t"));
  const std::string& which = c.text("check");
  const double tol = c.real("tolerance");
  ordered_json summary = ordered_json::array();
  auto os = o.open("occupation.csv");
  csv::Writer w(os, "occupation_check", 1, {"check", "seed", "g", "region_id", "lhs", "rhs", "residual", "pass"});
  for (long long r = 0; r < c.integer("replicates"); ++r) {
    const FbmPath path = make_path(c, c.seed() + static_cast<std::uint64_t>(r));
    const UniformGrid grid = covering_y_grid(path, region, m, c.real("y_step"));
    auto record = [&](const std::string& name, const OccupationCheck& chk) {
      const bool pass = chk.residual() < tol;
      w.row({name, static_cast<unsigned long long>(path.seed()), g.name(), region.id(), chk.lhs, chk.rhs,
             chk.residual(), pass});
      ordered_json params = c.values();
      params["seed"] = std::to_string(path.seed());
      summary.push_back({{"check", name},
                         {"params", params},
                         {"lhs", chk.lhs},
                         {"rhs", chk.rhs},
                         {"residual", chk.residual()},
                         {"pass", pass}});
      out << name << " seed=" << path.seed() << " lhs=" << csv::format(chk.lhs) << " rhs=" << csv::format(chk.rhs)
          << (pass ? " pass" : " FAIL") << '\n';
    };
    if (which != "derivative") record("alpha", occupation_check_alpha(path, g, grid, m, region));
    if (which != "alpha") record("derivative", occupation_check_derivative(path, g, grid, m, region));
  }
  auto js = o.open("summary.json");
  js << summary.dump(2) << '\n';
}

void cmd_holder(const RunConfig& c, Outputs& o, std::ostream& out) {
  const HurstParameter H(c.real("H"));
  const EstimateKind kind = parse_estimate_kind(c.text("kind"));
  const std::string& axis_name = c.text("axis");
  const HolderAxis axis =
      axis_name == "time" ? HolderAxis::time : (axis_name == "space" ? HolderAxis::space : HolderAxis::joint);
  const Mollifier m(c.real("eps"));
  const double t = c.real("t");
  const auto n = static_cast<std::size_t>(c.integer("n_steps"));
  const auto points = static_cast<std::size_t>(c.integer("points"));
  if (axis == HolderAxis::joint && n % points != 0)
    throw ConfigError("points", "must divide n_steps for the joint axis");
  const double y_half = c.real("y_half");
  const UniformGrid y_grid = UniformGrid::spanning(-y_half, y_half, points);

  FieldSamples field;
  switch (axis) {
    case HolderAxis::time: field.n_y = 1; field.n_t = n + 1; field.t_step = t / static_cast<double>(n); break;
    case HolderAxis::space: field.n_y = points; field.n_t = 1; field.y_step = y_grid.step; break;
    case HolderAxis::joint:
      field.n_y = points;
      field.n_t = points;
      field.y_step = y_grid.step;
      field.t_step = t / static_cast<double>(points);
      break;
  }
  for (long long r = 0; r < c.integer("replicates"); ++r) {
    const FbmPath path = make_path(c, c.seed() + static_cast<std::uint64_t>(r));
    const bool prime = kind == EstimateKind::alpha_hat_prime;
    if (axis == HolderAxis::time) {
      field.replicates.push_back(prime ? alpha_prime_eps_time_profile(path, c.real("y"), m)
                                       : alpha_eps_time_profile(path, c.real("y"), m));
    } else if (axis == HolderAxis::space) {
      const Region d = Region::full_triangle(t);
      field.replicates.push_back(prime ? alpha_prime_eps_on_grid(path, d, y_grid, m)
                                       : alpha_eps_on_grid(path, d, y_grid, m));
    } else {
      std::vector<double> values(points * points);
      for (std::size_t it = 0; it < points; ++it) {
        const Region d = Region::full_triangle(t * static_cast<double>(it + 1) / static_cast<double>(points));
        const auto col = prime ? alpha_prime_eps_on_grid(path, d, y_grid, m) : alpha_eps_on_grid(path, d, y_grid, m);
        for (std::size_t iy = 0; iy < points; ++iy) values[iy * points + it] = col[iy];
      }
      field.replicates.push_back(std::move(values));
    }
  }
  const HolderReport rep = holder_exponent_estimate(field, axis, theoretical_bound(H, kind, axis));
  ordered_json j{{"axis", to_string(axis)},
                 {"kind", to_string(kind)},
                 {"H", H.value()},
                 {"estimated_exponent", rep.estimated_exponent},
                 {"raw_slope", rep.raw_slope},
                 {"r_squared", rep.r_squared},
                 {"regression_lags", rep.regression_lags},
                 {"reliable", rep.reliable}};
  j["theoretical_bound"] = rep.theoretical_bound ? ordered_json(*rep.theoretical_bound) : ordered_json(nullptr);
  {
    auto js = o.open("holder.json");
    js << j.dump(2) << '\n';
  }
  auto dat = o.open("holder_loglog.dat");
  dat << "# schema=holder_loglog/1\n# log_lag log_structure_function\n";
  for (std::size_t k = 0; k < rep.regression_lags.size(); ++k)
    if (rep.structure_function[k] > 0.0)
      dat << csv::format(std::log(rep.regression_lags[k])) << ' ' << csv::format(std::log(rep.structure_function[k]))
          << '\n';
  out << "exponent=" << csv::format(rep.estimated_exponent) << " r2=" << csv::format(rep.r_squared)
      << (rep.reliable ? "" : " (unreliable)") << '\n';
}

void cmd_probe(const RunConfig& c, Outputs& o, std::ostream& out) {
  const double y_half = c.real("y_half");
  const UniformGrid grid = UniformGrid::spanning(-y_half, y_half, static_cast<std::size_t>(c.integer("points")));
  const auto rows = continuity_probe_at_zero(HurstParameter(c.real("H")), c.real("t"),
                                             static_cast<std::size_t>(c.integer("n_steps")), c.seed(),
                                             static_cast<std::size_t>(c.integer("replicates")), grid,
                                             Mollifier(c.real("eps")));
  auto os = o.open("probe.csv");
  csv::Writer w(os, "continuity_probe", 1,
                {"y", "mean", "variance", "renormalized_mean", "renormalized_variance", "oracle_mean"});
  for (const auto& r : rows) w.row({r.y, r.mean, r.variance, r.renormalized_mean, r.renormalized_variance, r.oracle_mean});
  out << "wrote " << rows.size() << " probe rows\n";
}

std::string vector_label(const std::vector<int>& coeffs) {
  std::string s;
  for (std::size_t k = 0; k < coeffs.size(); ++k) {
    if (coeffs[k] == 0) continue;
    if (!s.empty()) s += "+";
    s += "p" + std::to_string(k + 1);
  }
  return s.empty() ? "0" : s;
}

ordered_json analyze_word(const arcs::PairConfiguration& c) {
  ordered_json j;
  j["word"] = c.to_string();
  j["n"] = c.n();
  const auto us = arcs::compute_u_vectors(c);
  const auto tags = arcs::classify_gaps(c);
  j["u_vectors"] = ordered_json::array();
  for (std::size_t i = 0; i < us.size(); ++i)
    j["u_vectors"].push_back({{"gap", us[i].gap_index},
                              {"coefficients", us[i].coefficients},
                              {"label", vector_label(us[i].coefficients)},
                              {"tag", tags[i] == arcs::GapTag::increasing ? "increasing" : "decreasing"}});
  const auto free = arcs::find_free_variables(c);
  j["s_free"] = free.s_free;
  j["r_free"] = free.r_free;
  j["isolated"] = arcs::find_isolated_intervals(c);
  j["lemma"] = {{"increasing_clause", arcs::increasing_clause(c)},
                {"mirrored_increasing_clause", arcs::mirrored_increasing_clause(c)},
                {"decreasing_clause", arcs::decreasing_clause(c)}};
  j["components"] = ordered_json::array();
  for (const auto& comp : arcs::connected_components(c)) {
    ordered_json cj{{"word", comp.to_string()}};
    if (!arcs::find_isolated_intervals(comp).empty()) {
      cj["spanning"] = "skipped: isolated intervals";
    } else {
      cj["spanning"] = ordered_json::array();
      for (const auto& m : arcs::enumerate_m_assignments(comp)) {
        const auto s = arcs::build_spanning_sets(comp, m);
        cj["spanning"].push_back({{"m", m.m}, {"ok", s.ok}, {"A", s.a}, {"B", s.b}, {"failure", s.failure}});
      }
    }
    j["components"].push_back(cj);
  }
  return j;
}

void cmd_arcs(const RunConfig& c, Outputs& o, std::ostream& out) {
  arcs::PairConfiguration word = [&] {
    try {
      return arcs::PairConfiguration::parse(c.text("word"));
    } catch (const std::invalid_argument& e) {
      throw ConfigError("word", e.what());
    }
  }();
  const ordered_json j = analyze_word(word);
  auto js = o.open("arcs.json");
  js << j.dump(2) << '\n';
  out << j.dump(2) << '\n';
}

void cmd_sweep(const RunConfig& c, Outputs& o, std::ostream& out) {
  const SweepResult r = sweep(c);
  auto os = o.open("sweep.csv");
  write_sweep_csv(r, os);
  out << r.rows.size() << " rows, " << r.aggregates.size() << " aggregate rows\n";
}

void error_record(std::ostream& err, const std::string& kind, const std::string& message,
                  ordered_json extra = ordered_json::object()) {
  ordered_json j{{"error", {{"kind", kind}, {"message", message}}}};
  for (auto& [k, v] : extra.items()) j["error"][k] = v;
  err << j.dump() << '\n';
}

}  // namespace

int run(const RunConfig& config, const fs::path& out_dir, std::ostream& out, std::ostream& err) {
  try {
    fs::create_directories(out_dir);
    Outputs o(out_dir);
    const std::string& cmd = config.command();
    if (cmd == "simulate") cmd_simulate(config, o, out);
    else if (cmd == "estimate") cmd_estimate(config, o, out);
    else if (cmd == "expectation") cmd_expectation(config, o, out);
    else if (cmd == "asymptotics") cmd_asymptotics(config, o, out);
    else if (cmd == "occupation-check") cmd_occupation(config, o, out);
    else if (cmd == "holder") cmd_holder(config, o, out);
    else if (cmd == "probe-zero") cmd_probe(config, o, out);
    else if (cmd == "arcs") cmd_arcs(config, o, out);
    else if (cmd == "sweep") cmd_sweep(config, o, out);
    else throw ConfigError("command", "unknown command '" + cmd + "'");

    RunManifest m;
    m.command = cmd;
    m.config = config.values();
    m.timestamp = utc_timestamp();
    for (const auto& f : o.files()) m.outputs.push_back({f, sha256_file(out_dir / f)});
    write_manifest(m, out_dir / "manifest.json");
    return ExitCode::ok;
  } catch (const ConfigError& e) {
    ordered_json fields = ordered_json::array();
    for (const auto& f : e.errors()) fields.push_back({{"field", f.field}, {"message", f.message}});
    error_record(err, "invalid_config", e.what(), {{"fields", fields}});
    return ExitCode::invalid_config;
  } catch (const QuadratureError& e) {
    error_record(err, "numerical_failure", e.what(),
                 {{"module", "expectation-oracle"}, {"best_value", e.best_value()}, {"achieved_error", e.achieved_error()}});
    return ExitCode::numerical_failure;
  } catch (const SynthesisError& e) {
    error_record(err, "numerical_failure", e.what(), {{"module", "fbm-core"}});
    return ExitCode::numerical_failure;
  } catch (const DomainError& e) {
    error_record(err, "numerical_failure", e.what(), {{"module", "domain"}});
    return ExitCode::numerical_failure;
  } catch (const std::exception& e) {
    error_record(err, "io_failure", e.what());
    return ExitCode::io_failure;
  }
}

int replay(const fs::path& manifest, const fs::path& out_dir, std::ostream& out, std::ostream& err) {
  RunManifest m;
  try {
    m = read_manifest(manifest);
  } catch (const std::exception& e) {
    error_record(err, "io_failure", e.what());
    return ExitCode::io_failure;
  }
  RunConfig cfg = [&]() -> RunConfig {
    try {
      return validate(m.command, m.config);
    } catch (const ConfigError&) {
      return RunConfig("", {});
    }
  }();
  if (cfg.command().empty()) {
    error_record(err, "invalid_config", "manifest configuration does not validate");
    return ExitCode::invalid_config;
  }
  std::ostringstream sink;
  const int status = run(cfg, out_dir, sink, err);
  if (status != ExitCode::ok) return status;
  bool identical = true;
  for (const auto& rec : m.outputs) {
    const std::string now = sha256_file(out_dir / rec.file);
    const bool same = now == rec.sha256;
    identical = identical && same;
    out << rec.file << (same ? " identical" : " DIFFERS") << '\n';
  }
  if (!identical) {
    error_record(err, "replay_mismatch", "outputs differ from the manifest checksums");
    return ExitCode::replay_mismatch;
  }
  return ExitCode::ok;
}

}  // namespace silt::cli
