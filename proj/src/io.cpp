#include "tocpur/io.hpp"

#include <charconv>
#include <fmt/format.h>
#include <fstream>
#include <set>
#include <sstream>

namespace tocpur {
namespace {

using nlohmann::json;

template <typename T>
T get(const json& doc, const char* key) {
  if (!doc.contains(key)) throw FormatError(fmt::format("missing field '{}'", key));
  try {
    return doc.at(key).get<T>();
  } catch (const json::exception& e) {
    throw FormatError(fmt::format("field '{}': {}", key, e.what()));
  }
}

std::string join_numbers(const std::vector<double>& values) {
  std::string out;
  for (std::size_t k = 0; k < values.size(); ++k) {
    if (k) out += ';';
    out += format_number(values[k]);
  }
  return out;
}

std::vector<std::string> split(const std::string& text, char sep) {
  std::vector<std::string> parts;
  if (text.empty()) return parts;
  std::string part;
  std::istringstream in(text);
  while (std::getline(in, part, sep)) parts.push_back(part);
  if (text.back() == sep) parts.emplace_back();
  return parts;
}

double parse_number(const std::string& text) {
  double value = 0.0;
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc() || ptr != text.data() + text.size()) {
    throw FormatError(fmt::format("not a number: '{}'", text));
  }
  return value;
}

std::vector<double> parse_numbers(const std::string& text) {
  std::vector<double> out;
  for (const auto& part : split(text, ';')) out.push_back(parse_number(part));
  return out;
}

}  // namespace

std::string format_number(double value) {
  char buf[64];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, value);
  return std::string(buf, ptr);
}

json instance_to_json(const Instance& inst) {
  const Graph& g = inst.graph;
  const int n = g.num_vertices();
  json doc;
  doc["version"] = inst.version;
  doc["id"] = inst.id;
  doc["seed"] = inst.seed;
  doc["generator_seed"] = inst.generator_seed;
  doc["H"] = inst.horizon;
  doc["N"] = n;
  doc["M"] = inst.num_agents;
  doc["l_max"] = inst.l_max;
  if (g.has_positions()) {
    json pos = json::array();
    for (const Point& p : g.positions()) pos.push_back({p.x, p.y});
    doc["positions"] = pos;
  } else {
    doc["positions"] = nullptr;
  }
  json edges = json::array();
  std::set<std::pair<int, int>> written;
  for (const Edge& e : g.edges()) {
    if (written.contains({e.to, e.from})) continue;
    written.emplace(e.from, e.to);
    edges.push_back({e.from, e.to, e.length});
  }
  doc["edges"] = edges;
  doc["must_visit"] = inst.must_visit;
  doc["mu_star"] = inst.mu_star.vector();
  doc["mu_default"] = inst.mu_default;
  doc["noise_stddev"] = inst.noise_stddev;
  json kappa = json::array();
  for (int v = 1; v <= n; ++v) {
    json row = json::array();
    for (int t = 1; t <= inst.horizon; ++t) row.push_back(inst.kappa_at(v, t));
    kappa.push_back(row);
  }
  doc["kappa"] = kappa;
  return doc;
}

Instance instance_from_json(const json& doc) {
  if (!doc.is_object()) throw FormatError("instance document must be an object");
  Instance inst;
  inst.version = get<int>(doc, "version");
  if (inst.version != 1) throw FormatError(fmt::format("unsupported instance version {}", inst.version));
  inst.id = doc.value("id", std::string());
  inst.seed = get<std::uint64_t>(doc, "seed");
  inst.generator_seed = doc.value("generator_seed", inst.seed);
  inst.horizon = get<int>(doc, "H");
  const int n = get<int>(doc, "N");
  if (n < 1) throw FormatError("N must be positive");
  inst.num_agents = get<int>(doc, "M");
  inst.l_max = get<double>(doc, "l_max");

  inst.graph = Graph(n);
  for (const auto& e : get<std::vector<std::tuple<int, int, double>>>(doc, "edges")) {
    const auto [a, b, len] = e;
    if (a < 1 || a > n || b < 1 || b > n) throw FormatError(fmt::format("edge ({},{}) out of range", a, b));
    inst.graph.add_symmetric_edge(a, b, len);
  }
  if (doc.contains("positions") && !doc["positions"].is_null()) {
    const auto pos = get<std::vector<std::pair<double, double>>>(doc, "positions");
    if (static_cast<int>(pos.size()) != n) throw FormatError("positions must list N points");
    VertexArray<Point> points(n, Point{});
    for (int v = 1; v <= n; ++v) points[v] = Point{pos[static_cast<std::size_t>(v - 1)].first, pos[static_cast<std::size_t>(v - 1)].second};
    inst.graph.set_positions(std::move(points));
  }
  inst.must_visit = get<std::vector<int>>(doc, "must_visit");
  inst.mu_star = VertexArray<double>(get<std::vector<double>>(doc, "mu_star"));
  inst.mu_default = get<double>(doc, "mu_default");
  inst.noise_stddev = get<double>(doc, "noise_stddev");

  if (!doc.contains("kappa")) throw FormatError("missing field 'kappa'");
  const auto kappa = get<std::vector<std::vector<double>>>(doc, "kappa");
  if (static_cast<int>(kappa.size()) != n) throw FormatError("kappa must have one row per vertex");
  for (int t = 1; t <= inst.horizon; ++t) {
    VertexArray<double> row(n, 0.0);
    for (int v = 1; v <= n; ++v) {
      const auto& series = kappa[static_cast<std::size_t>(v - 1)];
      if (static_cast<int>(series.size()) != inst.horizon) throw FormatError("kappa rows must have H entries");
      row[v] = series[static_cast<std::size_t>(t - 1)];
    }
    inst.kappa.push_back(std::move(row));
  }
  if (inst.horizon < 1) throw FormatError("H must be positive");
  if (auto problem = check_instance(inst)) throw FormatError(*problem);
  return inst;
}

void write_instance(const Instance& inst, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out << instance_to_json(inst).dump(1) << '\n';
}

Instance read_instance(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw FormatError("cannot read " + path.string());
  json doc;
  try {
    doc = json::parse(in);
  } catch (const json::parse_error& e) {
    throw FormatError(fmt::format("{}: {}", path.string(), e.what()));
  }
  return instance_from_json(doc);
}

json plan_to_json(const FleetPlan& plan) {
  json doc;
  doc["routes"] = plan.routes;
  doc["lengths"] = plan.lengths;
  return doc;
}

FleetPlan plan_from_json(const json& doc, const Graph& graph) {
  try {
    return make_plan(graph, get<std::vector<std::vector<int>>>(doc, "routes"));
  } catch (const std::invalid_argument& e) {
    throw FormatError(e.what());
  }
}

ResultRow to_row(const EpisodeResult& ep) {
  ResultRow row;
  row.instance_id = ep.instance_id;
  row.horizon = ep.horizon;
  row.planner = std::string(to_string(ep.planner));
  row.total_cost = ep.total_cost;
  for (const auto& it : ep.iterations) {
    row.costs.push_back(it.residual_cost);
    row.compute_seconds.push_back(it.compute_seconds);
    row.statuses.push_back(it.status);
  }
  row.failed = ep.failed;
  row.mu_hat = ep.mu_hat.vector();
  return row;
}

void write_results_header(std::ostream& out) {
  out << "instance_id,H,planner,total_cost,costs,compute_seconds,statuses,failed,mu_hat\n";
}

void write_result_row(std::ostream& out, const ResultRow& row) {
  std::string statuses;
  for (std::size_t k = 0; k < row.statuses.size(); ++k) {
    if (k) statuses += ';';
    statuses += row.statuses[k];
  }
  out << row.instance_id << ',' << row.horizon << ',' << row.planner << ',' << format_number(row.total_cost) << ','
      << join_numbers(row.costs) << ',' << join_numbers(row.compute_seconds) << ',' << statuses << ','
      << (row.failed ? 1 : 0) << ',' << join_numbers(row.mu_hat) << '\n';
}

std::vector<ResultRow> read_results(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw FormatError("cannot read " + path.string());
  std::string line;
  if (!std::getline(in, line) || line.rfind("instance_id,", 0) != 0) throw FormatError("missing results header");
  std::vector<ResultRow> rows;
  int line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    const auto f = split(line, ',');
    if (f.size() != 9) throw FormatError(fmt::format("line {}: expected 9 fields", line_no));
    try {
      ResultRow row;
      row.instance_id = f[0];
      row.horizon = static_cast<int>(parse_number(f[1]));
      row.planner = f[2];
      row.total_cost = parse_number(f[3]);
      row.costs = parse_numbers(f[4]);
      row.compute_seconds = parse_numbers(f[5]);
      row.statuses = split(f[6], ';');
      row.failed = f[7] == "1";
      row.mu_hat = parse_numbers(f[8]);
      rows.push_back(std::move(row));
    } catch (const FormatError& e) {
      throw FormatError(fmt::format("line {}: {}", line_no, e.what()));
    }
  }
  return rows;
}

}  // namespace tocpur
