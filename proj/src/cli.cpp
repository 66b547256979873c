#include "tocpur/cli.hpp"

#include <CLI11.hpp>
#include <algorithm>
#include <atomic>
#include <condition_variable>
#include <fmt/format.h>
#include <fmt/ostream.h>
#include <fstream>
#include <mutex>
#include <ostream>
#include <regex>
#include <thread>

#include "tocpur/benchgen.hpp"
#include "tocpur/io.hpp"
#include "tocpur/report.hpp"
#include "tocpur/simulator.hpp"
#include "tocpur/svg.hpp"

namespace tocpur {
namespace {

namespace fs = std::filesystem;

struct SeedRange {
  std::uint64_t first = 1;
  std::uint64_t last = 120;
};

SeedRange parse_seed_range(const std::string& text) {
  static const std::regex pattern(R"((\d+)(?:\.\.(\d+))?)");
  std::smatch m;
  if (!std::regex_match(text, m, pattern)) throw CLI::ValidationError("--seeds", "expected A..B or A");
  SeedRange range;
  range.first = std::stoull(m[1].str());
  range.last = m[2].matched ? std::stoull(m[2].str()) : range.first;
  if (range.first < 1 || range.last < range.first) throw CLI::ValidationError("--seeds", "need 1 <= A <= B");
  return range;
}

Planner require_planner(const std::string& name) {
  const auto planner = parse_planner(name);
  if (!planner) throw CLI::ValidationError("--planner", "unknown planner '" + name + "'");
  return *planner;
}

void write_text(const fs::path& path, const std::string& text) {
  std::ofstream file(path, std::ios::binary);
  if (!file) throw std::runtime_error("cannot write " + path.string());
  file << text;
}

std::string read_text(const fs::path& path) {
  std::ifstream file(path, std::ios::binary);
  if (!file) throw FormatError("cannot read " + path.string());
  return {std::istreambuf_iterator<char>(file), std::istreambuf_iterator<char>()};
}

struct SuiteEntry {
  int horizon = 0;
  std::uint64_t seed = 0;
  fs::path path;
};

std::vector<SuiteEntry> scan_suite(const fs::path& root) {
  static const std::regex dir_pattern(R"(H(\d+))");
  static const std::regex file_pattern(R"(seed(\d+)\.json)");
  if (!fs::is_directory(root)) throw FormatError("suite directory not found: " + root.string());
  std::vector<SuiteEntry> entries;
  for (const auto& dir : fs::directory_iterator(root)) {
    std::smatch dm;
    const std::string dir_name = dir.path().filename().string();
    if (!dir.is_directory() || !std::regex_match(dir_name, dm, dir_pattern)) continue;
    for (const auto& file : fs::directory_iterator(dir.path())) {
      std::smatch fm;
      const std::string file_name = file.path().filename().string();
      if (!std::regex_match(file_name, fm, file_pattern)) continue;
      entries.push_back({std::stoi(dm[1].str()), std::stoull(fm[1].str()), file.path()});
    }
  }
  std::sort(entries.begin(), entries.end(), [](const SuiteEntry& a, const SuiteEntry& b) {
    return std::tie(a.horizon, a.seed) < std::tie(b.horizon, b.seed);
  });
  return entries;
}

int cmd_gen(const fs::path& out_dir, const std::string& seeds, const std::vector<int>& horizons, bool force,
            std::ostream& out) {
  BenchmarkConfig config;
  const SeedRange range = parse_seed_range(seeds);
  config.first_seed = range.first;
  config.last_seed = range.last;
  if (!horizons.empty()) config.horizons = horizons;
  std::vector<fs::path> files;
  try {
    files = generate_suite(config, out_dir, force);
  } catch (const std::runtime_error& e) {
    if (force) throw;
    throw std::runtime_error(std::string(e.what()) + " (use --force)");
  }
  fmt::print(out, "wrote {} instance files to {}\n", files.size(), out_dir.string());
  return 0;
}

int cmd_solve(const fs::path& instance_path, const std::string& planner_name, int iteration, double time_limit,
              const fs::path& out_path, std::ostream& out) {
  const Instance inst = read_instance(instance_path);
  const Planner planner = require_planner(planner_name);
  if (iteration < 1 || iteration > inst.horizon) {
    throw CLI::ValidationError("--iteration", fmt::format("must lie in 1..{}", inst.horizon));
  }
  // Earlier iterations are replayed so the estimates match the episode.
  EpisodeOptions options;
  options.time_limit_seconds = time_limit;
  options.last_iteration = iteration;
  const EpisodeResult episode = run_episode(inst, planner, options);
  const IterationRecord& rec = episode.iterations.back();

  nlohmann::json doc;
  doc["instance_id"] = inst.id;
  doc["planner"] = std::string(to_string(planner));
  doc["iteration"] = iteration;
  doc["status"] = rec.status;
  doc["plan"] = rec.plan ? plan_to_json(*rec.plan) : nlohmann::json(nullptr);
  doc["predicted_costs"] = rec.c_hat.vector();
  doc["planned_reward"] = rec.planned_reward;
  doc["residual_cost"] = rec.residual_cost;
  doc["model"] = {{"variables", rec.model_variables}, {"constraints", rec.model_constraints}};
  doc["compute_seconds"] = rec.compute_seconds;
  write_text(out_path, doc.dump(2) + "\n");
  fmt::print(out, "{} t={} status={} planned_reward={} variables={} constraints={}\n", inst.id, iteration,
             rec.status, format_number(rec.planned_reward), rec.model_variables, rec.model_constraints);
  return rec.plan ? 0 : 1;
}

int cmd_simulate(const fs::path& instance_path, const std::string& planner_name, double time_limit,
                 const fs::path& out_path, std::ostream& out) {
  const Instance inst = read_instance(instance_path);
  const Planner planner = require_planner(planner_name);
  EpisodeOptions options;
  options.time_limit_seconds = time_limit;
  const EpisodeResult episode = run_episode(inst, planner, options);
  std::ofstream csv(out_path);
  if (!csv) throw std::runtime_error("cannot write " + out_path.string());
  write_results_header(csv);
  write_result_row(csv, to_row(episode));
  fmt::print(out, "{} {} total_cost={} failed={}\n", inst.id, to_string(planner), format_number(episode.total_cost),
             episode.failed ? 1 : 0);
  return 0;
}

struct BenchFilter {
  std::vector<int> horizons;
  std::string seeds;
  int max_vertices = 0;
  int max_agents = 0;
  int per_horizon = 0;
};

int cmd_bench(const fs::path& suite, const std::vector<std::string>& planner_names, double time_limit, int jobs,
              const BenchFilter& filter, const fs::path& out_path, std::ostream& out) {
  std::vector<Planner> planners;
  for (const auto& name : planner_names) planners.push_back(require_planner(name));
  std::optional<SeedRange> seeds;
  if (!filter.seeds.empty()) seeds = parse_seed_range(filter.seeds);

  std::vector<Instance> instances;
  std::map<int, int> taken;
  for (const SuiteEntry& entry : scan_suite(suite)) {
    if (!filter.horizons.empty() &&
        std::find(filter.horizons.begin(), filter.horizons.end(), entry.horizon) == filter.horizons.end()) {
      continue;
    }
    if (seeds && (entry.seed < seeds->first || entry.seed > seeds->last)) continue;
    if (filter.per_horizon > 0 && taken[entry.horizon] >= filter.per_horizon) continue;
    Instance inst = read_instance(entry.path);
    if (filter.max_vertices > 0 && inst.num_vertices() > filter.max_vertices) continue;
    if (filter.max_agents > 0 && inst.num_agents > filter.max_agents) continue;
    ++taken[entry.horizon];
    instances.push_back(std::move(inst));
  }

  struct Job {
    const Instance* instance;
    Planner planner;
  };
  std::vector<Job> queue;
  for (const Instance& inst : instances) {
    for (Planner p : planners) queue.push_back({&inst, p});
  }

  std::ofstream csv(out_path);
  if (!csv) throw std::runtime_error("cannot write " + out_path.string());
  write_results_header(csv);

  std::vector<std::optional<ResultRow>> done(queue.size());
  std::exception_ptr failure;
  std::mutex mutex;
  std::condition_variable ready;
  std::atomic<std::size_t> next{0};
  EpisodeOptions options;
  options.time_limit_seconds = time_limit;

  const auto worker = [&] {
    while (true) {
      const std::size_t k = next.fetch_add(1);
      if (k >= queue.size()) return;
      try {
        ResultRow row = to_row(run_episode(*queue[k].instance, queue[k].planner, options));
        const std::lock_guard lock(mutex);
        done[k] = std::move(row);
      } catch (...) {
        const std::lock_guard lock(mutex);
        if (!failure) failure = std::current_exception();
        next = queue.size();
      }
      ready.notify_all();
    }
  };
  std::vector<std::jthread> pool;
  const int workers = std::max(1, std::min<int>(jobs, static_cast<int>(queue.size())));
  for (int w = 0; w < workers; ++w) pool.emplace_back(worker);

  // Rows are written in job order by this thread only.
  for (std::size_t k = 0; k < queue.size(); ++k) {
    std::unique_lock lock(mutex);
    ready.wait(lock, [&] { return done[k].has_value() || failure; });
    if (failure) break;
    write_result_row(csv, *done[k]);
    csv.flush();
    fmt::print(out, "[{}/{}] {} {} total_cost={}\n", k + 1, queue.size(), done[k]->instance_id, done[k]->planner,
               format_number(done[k]->total_cost));
  }
  pool.clear();
  if (failure) std::rethrow_exception(failure);
  return 0;
}

int cmd_stats(const fs::path& results, const std::string& pair, bool welch, std::ostream& out) {
  const auto rows = read_results(results);
  const auto solved = all_solved_subset(rows);
  const auto names = planners_in(rows);

  fmt::print(out, "rows: {}  all-solved rows: {}\n\n", rows.size(), solved.size());
  fmt::print(out, "{:>4}", "H");
  for (const auto& name : names) fmt::print(out, " {:>12} {:>8}", "mean " + name, "fails");
  fmt::print(out, "\n");
  const auto means = mean_cost_by_horizon(solved);
  const auto failures = failures_by_horizon(rows);
  for (const auto& [h, fails] : failures) {
    fmt::print(out, "{:>4}", h);
    for (const auto& name : names) {
      const auto hm = means.find(h);
      const bool has_mean = hm != means.end() && hm->second.contains(name);
      const std::string mean_text = has_mean ? fmt::format("{:.4f}", hm->second.at(name)) : std::string("-");
      const auto f = fails.find(name);
      fmt::print(out, " {:>12} {:>8}", mean_text, f == fails.end() ? 0 : f->second);
    }
    fmt::print(out, "\n");
  }

  if (pair.empty()) return 0;
  const auto comma = pair.find(',');
  if (comma == std::string::npos) throw CLI::ValidationError("--pair", "expected A,B");
  const std::string a = pair.substr(0, comma);
  const std::string b = pair.substr(comma + 1);
  require_planner(a);
  require_planner(b);
  fmt::print(out, "\n{} t-test, {} vs {} (two-sided)\n", welch ? "Welch" : "Independent-samples", a, b);
  fmt::print(out, "{:>4} {:>6} {:>12} {:>12} {:>10} {:>10}\n", "H", "n", "mean " + a, "mean " + b, "t", "p");
  for (const auto& c : compare_planners(rows, a, b, welch)) {
    fmt::print(out, "{:>4} {:>6} {:>12.4f} {:>12.4f} {:>10.4g} {:>10.4g}\n", c.horizon, c.instances, c.mean_a,
               c.mean_b, c.t, c.p);
  }
  return 0;
}

int cmd_plot(const fs::path& instance_path, const fs::path& plan_path, const fs::path& results_path,
             const fs::path& out_path, std::ostream& out) {
  if (instance_path.empty() == results_path.empty()) {
    throw CLI::ValidationError("plot", "give exactly one of --instance or --results");
  }
  std::string svg;
  if (!instance_path.empty()) {
    const Instance inst = read_instance(instance_path);
    std::optional<FleetPlan> plan;
    if (!plan_path.empty()) {
      nlohmann::json doc;
      try {
        doc = nlohmann::json::parse(read_text(plan_path));
      } catch (const nlohmann::json::parse_error& e) {
        throw FormatError(plan_path.string() + ": " + e.what());
      }
      // Accept both a bare plan and the document written by `solve`.
      const nlohmann::json& plan_doc = doc.contains("plan") ? doc["plan"] : doc;
      if (plan_doc.is_null()) throw FormatError(plan_path.string() + ": file holds no plan");
      plan = plan_from_json(plan_doc, inst.graph);
    }
    svg = render_instance_svg(inst, plan ? &*plan : nullptr);
  } else {
    svg = render_cost_curves_svg(read_results(results_path));
  }
  write_text(out_path, svg);
  fmt::print(out, "wrote {}\n", out_path.string());
  return 0;
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Multi-agent coverage planning under uncertain, growing costs"};
  app.require_subcommand(1);

  fs::path out_path;
  fs::path instance_path;
  std::string planner = "tocp";
  double time_limit = 1000.0;

  auto* gen = app.add_subcommand("gen", "Generate a benchmark suite");
  std::string seeds = "1..120";
  std::vector<int> horizons;
  bool force = false;
  gen->add_option("--out", out_path, "Suite directory")->required();
  gen->add_option("--seeds", seeds, "Seed range A..B")->capture_default_str();
  gen->add_option("--horizons", horizons, "Comma-separated horizons (default 2,4,6,8,10)")->delimiter(',');
  gen->add_flag("--force", force, "Overwrite an existing suite");

  auto* solve = app.add_subcommand("solve", "Plan a single iteration of an episode");
  int iteration = 1;
  solve->add_option("--instance", instance_path, "Instance file")->required()->check(CLI::ExistingFile);
  solve->add_option("--planner", planner, "tocp, top or greedy")->capture_default_str();
  solve->add_option("--iteration", iteration, "Iteration to plan (earlier ones are replayed)")->capture_default_str();
  solve->add_option("--time-limit", time_limit, "Seconds per MIP solve")->capture_default_str();
  solve->add_option("--out", out_path, "Plan JSON output")->required();

  auto* simulate = app.add_subcommand("simulate", "Run one episode and write a results row");
  simulate->add_option("--instance", instance_path, "Instance file")->required()->check(CLI::ExistingFile);
  simulate->add_option("--planner", planner, "tocp, top or greedy")->capture_default_str();
  simulate->add_option("--time-limit", time_limit, "Seconds per MIP solve")->capture_default_str();
  simulate->add_option("--out", out_path, "Results CSV")->required();

  auto* bench = app.add_subcommand("bench", "Run every planner on a suite");
  fs::path suite;
  std::vector<std::string> planners{"tocp", "top", "greedy"};
  int jobs = 1;
  BenchFilter filter;
  bench->add_option("--suite", suite, "Suite directory")->required();
  bench->add_option("--planners", planners, "Comma-separated planners")->delimiter(',')->capture_default_str();
  bench->add_option("--time-limit", time_limit, "Seconds per MIP solve")->capture_default_str();
  bench->add_option("--jobs", jobs, "Worker threads")->capture_default_str()->check(CLI::PositiveNumber);
  bench->add_option("--out", out_path, "Results CSV")->required();
  bench->add_option("--horizons", filter.horizons, "Only these horizons")->delimiter(',');
  bench->add_option("--seeds", filter.seeds, "Only seeds in A..B");
  bench->add_option("--max-vertices", filter.max_vertices, "Skip instances with more vertices");
  bench->add_option("--max-agents", filter.max_agents, "Skip instances with more agents");
  bench->add_option("--per-horizon", filter.per_horizon, "Keep the first K qualifying instances per horizon");

  auto* stats = app.add_subcommand("stats", "Summarize a results CSV");
  fs::path results;
  std::string pair;
  bool welch = false;
  stats->add_option("--results", results, "Results CSV")->required()->check(CLI::ExistingFile);
  stats->add_option("--pair", pair, "Two planners to compare, e.g. top,tocp");
  stats->add_flag("--welch", welch, "Use Welch's unequal-variance test");

  auto* plot = app.add_subcommand("plot", "Draw an instance and plan, or cost curves from results");
  fs::path plan_path;
  fs::path plot_results;
  plot->add_option("--instance", instance_path, "Instance file")->check(CLI::ExistingFile);
  plot->add_option("--plan", plan_path, "Plan JSON from solve")->check(CLI::ExistingFile);
  plot->add_option("--results", plot_results, "Results CSV")->check(CLI::ExistingFile);
  plot->add_option("--out", out_path, "SVG output")->required();

  try {
    app.parse(argc, argv);
    if (*gen) return cmd_gen(out_path, seeds, horizons, force, out);
    if (*solve) return cmd_solve(instance_path, planner, iteration, time_limit, out_path, out);
    if (*simulate) return cmd_simulate(instance_path, planner, time_limit, out_path, out);
    if (*bench) return cmd_bench(suite, planners, time_limit, jobs, filter, out_path, out);
    if (*stats) return cmd_stats(results, pair, welch, out);
    if (*plot) return cmd_plot(instance_path, plan_path, plot_results, out_path, out);
  } catch (const CLI::ParseError& e) {
    return app.exit(e, out, err) == 0 ? 0 : 2;
  } catch (const std::exception& e) {
    fmt::print(err, "error: {}\n", e.what());
    return 1;
  }
  return 2;
}

}  // namespace tocpur
