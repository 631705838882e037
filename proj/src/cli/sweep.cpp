#include <omp.h>

#include <atomic>
#include <cmath>
#include <exception>
#include <mutex>
#include <ostream>
#include <thread>

#include "silt/cli/commands.hpp"
#include "silt/csv.hpp"
#include "silt/estimators.hpp"
#include "silt/fbm.hpp"

namespace silt::cli {

namespace {

struct Task {
  std::size_t grid_index;
  std::uint64_t seed;
};

double evaluate(const RunConfig& base, const std::map<std::string, double>& params, std::uint64_t seed) {
  auto get = [&](const std::string& key) { return params.contains(key) ? params.at(key) : base.real(key); };
  const auto n_steps = static_cast<std::size_t>(params.contains("n_steps") ? std::llround(params.at("n_steps"))
                                                                           : base.integer("n_steps"));
  const double t = get("t");
  const FbmPath path = generate_path(HurstParameter(get("H")), t, n_steps, seed);
  const Mollifier m(get("eps"));
  const EstimateKind kind = parse_estimate_kind(base.text("kind"));
  const double y = get("y");
  switch (kind) {
    case EstimateKind::alpha: return alpha_eps(path, y, m, parse_region(base.text("region"), t)).value;
    case EstimateKind::alpha_hat_prime: return alpha_prime_eps(path, y, m, parse_region(base.text("region"), t)).value;
    case EstimateKind::alpha_tilde_prime: return alpha_tilde_prime_eps(path, y, m).value;
  }
  return 0.0;
}

}  // namespace

SweepResult sweep(const RunConfig& config) {
  std::vector<std::string> keys;
  std::vector<std::vector<double>> lists;
  for (const auto& [k, v] : config.values()) {
    if (k.rfind("grid.", 0) != 0) continue;
    keys.push_back(k.substr(5));
    lists.push_back(parse_real_list(v));
  }
  std::size_t points = 1;
  for (const auto& l : lists) points *= l.size();
  const auto replicates = static_cast<std::size_t>(config.integer("replicates"));
  const auto budget = static_cast<std::size_t>(config.integer("budget"));
  if (points * replicates > budget)
    throw ConfigError("budget", std::to_string(points * replicates) + " evaluations exceed the budget of " +
                                      std::to_string(budget));

  // Validate every grid point before doing any work.
  std::vector<std::map<std::string, double>> grid(points);
  for (std::size_t g = 0; g < points; ++g) {
    std::size_t rest = g;
    for (std::size_t q = keys.size(); q-- > 0;) {
      grid[g][keys[q]] = lists[q][rest % lists[q].size()];
      rest /= lists[q].size();
    }
    std::map<std::string, std::string> values = config.values();
    std::erase_if(values, [](const auto& kv) { return kv.first.rfind("grid.", 0) == 0; });
    for (const auto& [k, v] : grid[g]) values[k] = k == "n_steps" ? std::to_string(std::llround(v)) : csv::format(v);
    validate("sweep", values);
  }

  std::vector<Task> tasks;
  for (std::size_t g = 0; g < points; ++g)
    for (std::size_t r = 0; r < replicates; ++r) tasks.push_back({g, config.seed() + r});
  std::vector<double> values(tasks.size(), 0.0);

  std::size_t threads = static_cast<std::size_t>(config.integer("threads"));
  if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
  threads = std::min(threads, std::max<std::size_t>(1, tasks.size()));
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  auto worker = [&] {
    // Parallelism comes from the pool; kernels run single-threaded inside it.
    if (threads > 1) omp_set_num_threads(1);
    for (std::size_t i = next++; i < tasks.size(); i = next++) {
      try {
        values[i] = evaluate(config, grid[tasks[i].grid_index], tasks[i].seed);
      } catch (...) {
        std::lock_guard lock(failure_mutex);
        if (!failure) failure = std::current_exception();
      }
    }
  };
  if (threads <= 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (std::size_t k = 0; k < threads; ++k) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
  }
  if (failure) std::rethrow_exception(failure);

  SweepResult result;
  for (std::size_t i = 0; i < tasks.size(); ++i)
    result.rows.push_back({tasks[i].grid_index, grid[tasks[i].grid_index], tasks[i].seed, values[i]});
  for (std::size_t g = 0; g < points && replicates > 0; ++g) {
    SweepAggregate a;
    a.grid_index = g;
    a.params = grid[g];
    a.count = replicates;
    double sum = 0.0;
    for (std::size_t r = 0; r < replicates; ++r) sum += values[g * replicates + r];
    a.mean = sum / static_cast<double>(replicates);
    double ss = 0.0;
    for (std::size_t r = 0; r < replicates; ++r) {
      const double d = values[g * replicates + r] - a.mean;
      ss += d * d;
    }
    a.variance = replicates > 1 ? ss / static_cast<double>(replicates - 1) : 0.0;
    const double half = 1.959963984540054 * std::sqrt(a.variance / static_cast<double>(replicates));
    a.ci_low = a.mean - half;
    a.ci_high = a.mean + half;
    result.aggregates.push_back(a);
  }
  return result;
}

void write_sweep_csv(const SweepResult& result, std::ostream& os) {
  std::vector<std::string> keys;
  if (!result.rows.empty())
    for (const auto& [k, v] : result.rows.front().params) keys.push_back(k);
  std::vector<std::string> columns{"row_type", "grid_index"};
  columns.insert(columns.end(), keys.begin(), keys.end());
  for (const char* c : {"seed", "value", "count", "mean", "variance", "ci_low", "ci_high"}) columns.emplace_back(c);
  csv::Writer w(os, "sweep", 1, columns);
  const std::string empty;
  for (const auto& r : result.rows) {
    std::vector<csv::Cell> cells{std::string("row"), static_cast<unsigned long long>(r.grid_index)};
    for (const auto& k : keys) cells.emplace_back(r.params.at(k));
    cells.insert(cells.end(), {static_cast<unsigned long long>(r.seed), r.value, empty, empty, empty, empty, empty});
    w.row(cells);
  }
  for (const auto& a : result.aggregates) {
    std::vector<csv::Cell> cells{std::string("aggregate"), static_cast<unsigned long long>(a.grid_index)};
    for (const auto& k : keys) cells.emplace_back(a.params.at(k));
    cells.insert(cells.end(), {empty, empty, static_cast<unsigned long long>(a.count), a.mean, a.variance, a.ci_low,
                               a.ci_high});
    w.row(cells);
  }
}

}  // namespace silt::cli
