#include "silt/cli/config.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

namespace silt::cli {

namespace {

std::string join(const std::vector<FieldError>& errors) {
  std::string s = "invalid configuration:";
  for (const auto& e : errors) s += " " + e.field + ": " + e.message + ";";
  return s;
}

std::vector<FieldSpec> with_common(std::vector<FieldSpec> extra, const std::string& hurst_default = "0.5") {
  std::vector<FieldSpec> s{
      {"H", FieldType::real, hurst_default, "Hurst index in (0,1)"},
      {"t", FieldType::real, "1", "time horizon"},
      {"n_steps", FieldType::integer, "1024", "grid steps"},
      {"seed", FieldType::integer, "0", "base seed"},
  };
  s.insert(s.end(), extra.begin(), extra.end());
  return s;
}

const std::map<std::string, std::vector<FieldSpec>>& schemas() {
  static const std::map<std::string, std::vector<FieldSpec>> table = [] {
    std::map<std::string, std::vector<FieldSpec>> m;
    m["simulate"] = with_common({{"method", FieldType::text, "automatic", "automatic|circulant|cholesky"}});
    const std::vector<FieldSpec> estimate{
        {"kind", FieldType::text, "alpha", "alpha|alpha_hat_prime|alpha_tilde_prime"},
        {"y", FieldType::real, "0", "spatial level"},
        {"eps", FieldType::real, "0.01", "mollifier variance"},
        {"eps_ladder", FieldType::real_list, "", "geometric eps ladder for extrapolation"},
        {"region", FieldType::text, "D", "D | D_kappa:<kappa> | A:<j>:<k>"},
        {"replicates", FieldType::integer, "1", "paths, seeds seed..seed+replicates-1"},
    };
    m["estimate"] = with_common(estimate);
    m["expectation"] = with_common({{"y", FieldType::real_list, "0.5", "levels"},
                                    {"eps", FieldType::real, "0", "mollifier variance (0 for the limit)"}});
    m["asymptotics"] = with_common({{"y", FieldType::real_list, "1e-2,1e-3,1e-4", "levels for the ratio table"}},
                                   "0.25");
    m["occupation-check"] = with_common({
        {"check", FieldType::text, "both", "alpha|derivative|both"},
        {"g", FieldType::text, "gaussian", "constant|linear|gaussian|polynomial_cutoff|cosine"},
        {"g_center", FieldType::real, "0.5", "centre (phase for cosine)"},
        {"g_width", FieldType::real, "2", "width (frequency for cosine)"},
        {"eps", FieldType::real, "0.01", "mollifier variance"},
        {"y_step", FieldType::real, "0.05", "y-grid step"},
        {"region", FieldType::text, "D", "D | D_kappa:<kappa> | A:<j>:<k>"},
        {"tolerance", FieldType::real, "1e-2", "pass threshold on the relative residual"},
        {"replicates", FieldType::integer, "1", "paths"},
    });
    m["holder"] = with_common({
        {"kind", FieldType::text, "alpha", "alpha|alpha_hat_prime"},
        {"axis", FieldType::text, "time", "time|space|joint"},
        {"y", FieldType::real, "0", "level for the time axis"},
        {"eps", FieldType::real, "0.01", "mollifier variance"},
        {"replicates", FieldType::integer, "32", "paths"},
        {"points", FieldType::integer, "64", "grid points per axis (space/joint)"},
        {"y_half", FieldType::real, "1", "space axis covers [-y_half, y_half]"},
    });
    m["probe-zero"] = with_common({{"y_half", FieldType::real, "0.2", "grid covers [-y_half, y_half]"},
                                   {"points", FieldType::integer, "21", "grid points"},
                                   {"eps", FieldType::real, "0.01", "mollifier variance"},
                                   {"replicates", FieldType::integer, "32", "paths"}},
                                  "0.55");
    m["arcs"] = {{"word", FieldType::text, "", "comma-separated word, e.g. r1,r2,s1,s2"}};
    auto sweep = m["estimate"];
    sweep.push_back({"budget", FieldType::integer, "100000", "max grid points x replicates"});
    sweep.push_back({"threads", FieldType::integer, "0", "worker threads (0: hardware)"});
    m["sweep"] = sweep;
    return m;
  }();
  return table;
}

const FieldSpec* find_spec(const std::vector<FieldSpec>& s, const std::string& key) {
  for (const auto& f : s)
    if (f.key == key) return &f;
  return nullptr;
}

bool parse_real(const std::string& s, double& out) {
  std::istringstream is(s);
  is >> out;
  return !is.fail() && is.eof() && std::isfinite(out);
}

bool parse_integer(const std::string& s, long long& out) {
  std::size_t used = 0;
  try {
    out = std::stoll(s, &used);
  } catch (const std::exception&) {
    return false;
  }
  return used == s.size();
}

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

void check_region(const std::string& text, std::vector<FieldError>& errs) {
  if (text == "D") return;
  std::vector<std::string> parts;
  std::stringstream ss(text);
  std::string p;
  while (std::getline(ss, p, ':')) parts.push_back(p);
  double kappa = 0.0;
  long long j = 0, k = 0;
  if (parts.size() == 2 && parts[0] == "D_kappa" && parse_real(parts[1], kappa) && kappa >= 0.0) return;
  if (parts.size() == 3 && parts[0] == "A" && parse_integer(parts[1], j) && parse_integer(parts[2], k) && j >= 1 &&
      j <= 20 && k >= 1 && k <= (1LL << (j - 1)))
    return;
  errs.push_back({"region", "expected D, D_kappa:<kappa >= 0> or A:<j>:<1 <= k <= 2^(j-1)>"});
}

void check_ranges(const std::string& command, const RunConfig& c, std::vector<FieldError>& errs) {
  auto need = [&](bool ok, const std::string& field, const std::string& msg) {
    if (!ok) errs.push_back({field, msg});
  };
  auto has_key = [&](const std::string& k) { return c.values().contains(k); };
  if (has_key("H")) need(c.real("H") > 0.0 && c.real("H") < 1.0, "H", "must lie in (0,1)");
  if (has_key("t")) need(c.real("t") > 0.0, "t", "must be positive");
  if (has_key("n_steps"))
    need(c.integer("n_steps") >= (command == "simulate" ? 1 : 2) && c.integer("n_steps") <= (1LL << 22), "n_steps",
         command == "simulate" ? "must lie in [1, 2^22]" : "must lie in [2, 2^22]");
  if (has_key("seed")) need(c.integer("seed") >= 0, "seed", "must be nonnegative");
  if (has_key("replicates")) need(c.integer("replicates") >= 1, "replicates", "must be at least 1");
  if (has_key("eps")) {
    if (command == "expectation") {
      need(c.real("eps") >= 0.0, "eps", "must be nonnegative");
    } else {
      need(c.real("eps") > 0.0, "eps", "must be positive");
    }
  }
  if (has_key("method")) {
    const auto& m = c.text("method");
    need(m == "automatic" || m == "circulant" || m == "cholesky", "method", "automatic|circulant|cholesky");
  }
  if (has_key("kind")) {
    const auto& k = c.text("kind");
    if (command == "holder") {
      need(k == "alpha" || k == "alpha_hat_prime", "kind", "alpha|alpha_hat_prime");
    } else {
      need(k == "alpha" || k == "alpha_hat_prime" || k == "alpha_tilde_prime", "kind",
           "alpha|alpha_hat_prime|alpha_tilde_prime");
    }
  }
  if (has_key("region")) check_region(c.text("region"), errs);
  if (has_key("eps_ladder") && c.has("eps_ladder")) {
    const auto ladder = c.real_list("eps_ladder");
    bool ok = ladder.size() >= 3;
    for (std::size_t i = 0; ok && i < ladder.size(); ++i) ok = ladder[i] > 0.0 && (i == 0 || ladder[i] < ladder[i - 1]);
    need(ok, "eps_ladder", "needs >= 3 positive, strictly decreasing values");
  }
  if (has_key("check")) {
    const auto& k = c.text("check");
    need(k == "alpha" || k == "derivative" || k == "both", "check", "alpha|derivative|both");
  }
  if (has_key("g")) {
    const auto& g = c.text("g");
    need(g == "constant" || g == "linear" || g == "gaussian" || g == "polynomial_cutoff" || g == "cosine", "g",
         "constant|linear|gaussian|polynomial_cutoff|cosine");
  }
  if (has_key("g_width")) need(c.real("g_width") > 0.0, "g_width", "must be positive");
  if (has_key("y_step")) need(c.real("y_step") > 0.0, "y_step", "must be positive");
  if (has_key("tolerance")) need(c.real("tolerance") > 0.0, "tolerance", "must be positive");
  if (has_key("axis")) {
    const auto& a = c.text("axis");
    need(a == "time" || a == "space" || a == "joint", "axis", "time|space|joint");
  }
  if (has_key("points")) need(c.integer("points") >= (command == "holder" ? 64 : 3), "points",
                              command == "holder" ? "must be at least 64" : "must be at least 3");
  if (has_key("y_half")) need(c.real("y_half") > 0.0, "y_half", "must be positive");
  if (command == "probe-zero") need(c.real("H") > 0.5 && c.real("H") < 2.0 / 3.0, "H", "must lie in (1/2, 2/3)");
  if (command == "probe-zero") need(c.integer("replicates") >= 2, "replicates", "must be at least 2");
  if (command == "asymptotics") need(c.real("H") < 2.0 / 3.0, "H", "must be below 2/3");
  if (command == "arcs") need(!c.text("word").empty(), "word", "required");
  if (has_key("budget")) need(c.integer("budget") >= 0, "budget", "must be nonnegative");
  if (has_key("threads")) need(c.integer("threads") >= 0, "threads", "must be nonnegative");
}

}  // namespace

ConfigError::ConfigError(std::vector<FieldError> errors) : std::runtime_error(join(errors)), errors_(std::move(errors)) {}

ConfigError::ConfigError(std::string field, std::string message)
    : ConfigError(std::vector<FieldError>{{std::move(field), std::move(message)}}) {}

const std::vector<std::string>& command_names() {
  static const std::vector<std::string> names = [] {
    std::vector<std::string> n;
    for (const auto& [k, v] : schemas()) n.push_back(k);
    return n;
  }();
  return names;
}

const std::vector<FieldSpec>& schema(const std::string& command) {
  const auto it = schemas().find(command);
  if (it == schemas().end()) throw ConfigError("command", "unknown command '" + command + "'");
  return it->second;
}

RunConfig::RunConfig(std::string command, std::map<std::string, std::string> values)
    : command_(std::move(command)), values_(std::move(values)) {}

double RunConfig::real(const std::string& key) const {
  double v = 0.0;
  if (!parse_real(values_.at(key), v)) throw ConfigError(key, "not a number");
  return v;
}

long long RunConfig::integer(const std::string& key) const {
  long long v = 0;
  if (!parse_integer(values_.at(key), v)) throw ConfigError(key, "not an integer");
  return v;
}

std::uint64_t RunConfig::seed() const { return static_cast<std::uint64_t>(integer("seed")); }

const std::string& RunConfig::text(const std::string& key) const { return values_.at(key); }

std::vector<double> RunConfig::real_list(const std::string& key) const {
  try {
    return parse_real_list(values_.at(key));
  } catch (const std::invalid_argument&) {
    throw ConfigError(key, "not a comma-separated list of numbers");
  }
}

std::vector<double> parse_real_list(const std::string& text) {
  std::vector<double> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    item = trim(item);
    if (item.empty()) continue;
    double v = 0.0;
    if (!parse_real(item, v)) throw std::invalid_argument("bad number '" + item + "'");
    out.push_back(v);
  }
  return out;
}

std::map<std::string, std::string> read_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("config", "cannot open '" + path + "'");
  std::map<std::string, std::string> values;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos)
      throw ConfigError("config", path + ":" + std::to_string(lineno) + ": expected key = value");
    values[trim(line.substr(0, eq))] = trim(line.substr(eq + 1));
  }
  return values;
}

void apply_overrides(std::map<std::string, std::string>& values, const std::vector<std::string>& overrides) {
  for (const auto& o : overrides) {
    const auto eq = o.find('=');
    if (eq == std::string::npos || eq == 0) throw ConfigError("--set", "expected key=value, got '" + o + "'");
    values[trim(o.substr(0, eq))] = trim(o.substr(eq + 1));
  }
}

RunConfig validate(const std::string& command, std::map<std::string, std::string> values) {
  const auto& s = schema(command);
  std::vector<FieldError> errs;
  std::map<std::string, std::string> effective;
  for (const auto& f : s) effective[f.key] = f.default_value;
  for (const auto& [k, v] : values) {
    if (command == "sweep" && k.rfind("grid.", 0) == 0) {
      const std::string base = k.substr(5);
      if (base != "H" && base != "t" && base != "n_steps" && base != "y" && base != "eps") {
        errs.push_back({k, "grid keys must be one of H, t, n_steps, y, eps"});
        continue;
      }
      try {
        parse_real_list(v);
      } catch (const std::invalid_argument&) {
        errs.push_back({k, "not a comma-separated list of numbers"});
      }
      effective[k] = v;
      continue;
    }
    const FieldSpec* f = find_spec(s, k);
    if (f == nullptr) {
      errs.push_back({k, "unknown key for command '" + command + "'"});
      continue;
    }
    effective[k] = v;
  }
  for (const auto& f : s) {
    const std::string& v = effective[f.key];
    double d = 0.0;
    long long i = 0;
    switch (f.type) {
      case FieldType::real:
        if (!parse_real(v, d)) errs.push_back({f.key, "not a number: '" + v + "'"});
        break;
      case FieldType::integer:
        if (!parse_integer(v, i)) errs.push_back({f.key, "not an integer: '" + v + "'"});
        break;
      case FieldType::real_list:
        try {
          parse_real_list(v);
        } catch (const std::invalid_argument&) {
          errs.push_back({f.key, "not a comma-separated list of numbers"});
        }
        break;
      case FieldType::text: break;
    }
  }
  if (!errs.empty()) throw ConfigError(std::move(errs));
  RunConfig cfg(command, std::move(effective));
  check_ranges(command, cfg, errs);
  if (!errs.empty()) throw ConfigError(std::move(errs));
  return cfg;
}

}  // namespace silt::cli
