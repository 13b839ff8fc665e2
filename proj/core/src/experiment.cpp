#include "btlab/experiment.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <fstream>
#include <functional>
#include <numeric>
#include <random>
#include <sstream>
#include <thread>

#include "btlab/building.hpp"
#include "btlab/canon.hpp"
#include "btlab/digest.hpp"
#include "btlab/geometry.hpp"
#include "btlab/germs.hpp"
#include "btlab/version.hpp"

namespace btlab {

namespace {

using nlohmann::json;
using Clock = std::chrono::steady_clock;

std::size_t positive_size(const json& doc, const char* key, std::size_t fallback) {
  if (!doc.contains(key)) return fallback;
  const auto& v = doc.at(key);
  if (!v.is_number_integer() || v.get<std::int64_t>() <= 0)
    throw InvalidInput(std::string("budget '") + key + "' must be a positive integer");
  return v.get<std::size_t>();
}

int read_int(const json& doc, const char* key, int fallback) {
  if (!doc.contains(key)) return fallback;
  const auto& v = doc.at(key);
  if (!v.is_number_integer()) throw InvalidInput(std::string("'") + key + "' must be an integer");
  return v.get<int>();
}

std::string cache_key(const ExperimentField& field, int r, const ExperimentConfig& config) {
  std::ostringstream key;
  key << normal_form(field.descriptor) << '|' << r << '|' << config.d << '|' << kVersion << '|' << config.seed;
  return sha256_hex(key.str());
}

// Color-blind certificate of a seeded shuffle must equal the original one.
bool shuffle_invariant(const LabeledGraph& g, const CanonicalCertificate& cert, std::uint64_t seed, const Budget& budget) {
  std::vector<int> perm(g.size());
  std::iota(perm.begin(), perm.end(), 0);
  std::mt19937_64 rng(seed);
  std::shuffle(perm.begin(), perm.end(), rng);
  return canonical_form(relabel(g, perm), {}, budget).encoding == cert.encoding;
}

json geometry_cell(const Ball& ball, int r) {
  json out;
  if (!ball.graph.tau) {
    out["status"] = "skipped";
    out["detail"] = "no type labelling for non-commutative rings";
    return out;
  }
  const auto report = verify_geometry(ball.graph, atilde_diagram(ball.d), interior_scope(ball.graph, r));
  out["status"] = report.ok() ? "ok" : "violation";
  out["flags_checked"] = report.flags_checked;
  out["violations"] = report.violations.size();
  if (!report.ok()) {
    const auto& v = report.violations.front();
    out["first_violation"] = {{"flag", v.flag}, {"type", v.type}, {"condition", v.condition}, {"detail", v.detail}};
  }
  return out;
}

json germ_cell(const Ball& ball, int r, const Budget& budget) {
  json out;
  GermLabeler labeler(ball.graph, atilde_diagram(ball.d), budget);
  const auto at_center = labeler.germs_at(0);
  out["at_center"] = at_center.germs.size();
  out["single_orbit"] = at_center.single_orbit;
  out["stabilizer"] = at_center.stabilizer;
  if (at_center.germs.empty()) {
    out["status"] = "no_germs";
    return out;
  }
  const auto domain = interior_scope(ball.graph, r, 1);
  const auto result = propagate(labeler, at_center.germs.front(), &domain);
  switch (result.status) {
    case PropagationStatus::Labelled: {
      out["status"] = "labelled";
      if (ball.graph.tau) {
        const auto& tau = *ball.graph.tau;
        bool matches = false;
        for (const auto& sigma : labeler.symmetries()) {
          bool all = true;
          for (std::size_t v = 0; v < tau.size() && all; ++v)
            if (domain[v]) all = sigma[static_cast<std::size_t>(result.tau[v])] == tau[v];
          if (all) {
            matches = true;
            break;
          }
        }
        out["matches_type_label"] = matches;
      }
      break;
    }
    case PropagationStatus::Obstruction:
      out["status"] = "obstruction";
      out["cycle"] = result.cycle;
      break;
    case PropagationStatus::TransportFailure:
      out["status"] = result.failure == TransportStatus::NoExtension ? "no_extension" : "not_unique";
      out["failing_edge"] = {result.failing_edge.first, result.failing_edge.second};
      break;
  }
  const auto cert = short_cycle_certificate(labeler, 3, &domain);
  out["short_cycles_k3"] = cert.passed();
  return out;
}

json ball_cell(const ExperimentField& field, int r, const ExperimentConfig& config) {
  json cell;
  const auto ring = ResidueRing::build(field.descriptor, r, config.budget);
  const auto ball = build_ball(ring, config.d, config.budget);
  const auto& g = ball.graph;
  cell["status"] = "ok";
  cell["ring"] = {{"kind", std::string(to_string(ring.kind()))}, {"size", ring.size()}};
  cell["vertices"] = g.size();
  cell["edges"] = g.edge_count();
  cell["center_degree"] = g.degree(0);

  const auto cert = canonical_form(g, {}, config.budget);
  cell["certificate"] = cert.digest;
  cell["search_nodes"] = cert.search_nodes;
  cell["orbits"] = cert.orbits.size();
  const auto centered = canonical_form(g, {.use_colors = false, .use_distance = true}, config.budget);
  cell["centered_certificate"] = centered.digest;
  cell["shuffle_invariant"] = shuffle_invariant(g, cert, config.seed ^ static_cast<std::uint64_t>(r), config.budget);

  if (config.d >= 3) {
    cell["geometry"] = geometry_cell(ball, r);
    cell["germs"] = germ_cell(ball, r, config.budget);
  }
  return cell;
}

json error_cell(const char* status, const std::string& detail) { return {{"status", status}, {"detail", detail}}; }

// Runs `task`, mapping library errors to per-cell statuses.
json guarded(const std::function<json()>& task) {
  try {
    return task();
  } catch (const BudgetExceeded& err) {
    return error_cell("budget", err.what());
  } catch (const InvalidInput& err) {
    return error_cell("invalid", err.what());
  } catch (const Error& err) {
    return error_cell("error", err.what());
  } catch (const std::bad_alloc&) {
    return error_cell("budget", "out of memory");
  }
}

std::optional<json> load_cached(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) return std::nullopt;
  try {
    return json::parse(in);
  } catch (const json::exception&) {
    return std::nullopt;
  }
}

}  // namespace

ExperimentConfig parse_experiment_config(const json& doc) {
  if (!doc.is_object()) throw InvalidInput("experiment config must be a JSON object");
  static const std::vector<std::string> known = {"fields", "d", "r_min", "r_max", "budgets", "output_dir", "cache", "cache_dir", "seed"};
  for (const auto& [key, _] : doc.items())
    if (std::find(known.begin(), known.end(), key) == known.end()) throw InvalidInput("unknown config key '" + key + "'");

  ExperimentConfig config;
  config.source = doc;
  if (!doc.contains("fields") || !doc.at("fields").is_array() || doc.at("fields").empty())
    throw InvalidInput("config needs a nonempty 'fields' list");
  for (const auto& entry : doc.at("fields")) {
    if (!entry.is_object() || !entry.contains("name") || !entry.at("name").is_string() || !entry.contains("descriptor"))
      throw InvalidInput("each field needs a string 'name' and a 'descriptor'");
    ExperimentField field{entry.at("name").get<std::string>(), descriptor_from_json(entry.at("descriptor"))};
    for (const auto& other : config.fields)
      if (other.name == field.name) throw InvalidInput("duplicate field name '" + field.name + "'");
    config.fields.push_back(std::move(field));
  }
  config.d = read_int(doc, "d", config.d);
  if (config.d < 2) throw InvalidInput("d must be at least 2");
  config.r_min = read_int(doc, "r_min", config.r_min);
  config.r_max = read_int(doc, "r_max", config.r_max);
  if (config.r_min < 1 || config.r_max < config.r_min) throw InvalidInput("R range must satisfy 1 <= r_min <= r_max");

  if (doc.contains("budgets")) {
    const auto& b = doc.at("budgets");
    if (!b.is_object()) throw InvalidInput("'budgets' must be an object");
    config.budget.max_ring_size = positive_size(b, "ring", config.budget.max_ring_size);
    config.budget.max_vertices = positive_size(b, "vertices", config.budget.max_vertices);
    config.budget.max_candidates = positive_size(b, "candidates", config.budget.max_candidates);
    config.budget.max_search_nodes = positive_size(b, "search_nodes", config.budget.max_search_nodes);
    if (b.contains("time_seconds")) {
      if (!b.at("time_seconds").is_number() || b.at("time_seconds").get<double>() <= 0)
        throw InvalidInput("budget 'time_seconds' must be positive");
      config.time_seconds = b.at("time_seconds").get<double>();
    }
  }
  if (doc.contains("output_dir")) {
    if (!doc.at("output_dir").is_string()) throw InvalidInput("'output_dir' must be a string");
    config.output_dir = doc.at("output_dir").get<std::string>();
  }
  if (doc.contains("cache")) {
    if (!doc.at("cache").is_boolean()) throw InvalidInput("'cache' must be a boolean");
    config.cache = doc.at("cache").get<bool>();
  }
  if (doc.contains("cache_dir") && !doc.at("cache_dir").is_string()) throw InvalidInput("'cache_dir' must be a string");
  config.cache_dir = doc.contains("cache_dir") ? std::filesystem::path(doc.at("cache_dir").get<std::string>())
                                               : config.output_dir / "cache";
  if (doc.contains("seed")) {
    const auto& seed = doc.at("seed");
    if (!seed.is_number_integer() || (!seed.is_number_unsigned() && seed.get<std::int64_t>() < 0)) throw InvalidInput("'seed' must be a non-negative integer");
    config.seed = doc.at("seed").get<std::uint64_t>();
  }
  return config;
}

json run_experiment(const ExperimentConfig& config) {
  const auto start = Clock::now();
  const std::size_t nf = config.fields.size();
  const int nr = config.r_max - config.r_min + 1;

  if (config.cache) std::filesystem::create_directories(config.cache_dir);

  // Task list: ball cells (field-major), then closeness pairs i < j.
  std::vector<std::function<json()>> tasks;
  for (std::size_t i = 0; i < nf; ++i)
    for (int r = config.r_min; r <= config.r_max; ++r)
      tasks.emplace_back([&config, i, r] {
        const auto& field = config.fields[i];
        std::filesystem::path path;
        if (config.cache) {
          path = config.cache_dir / (cache_key(field, r, config) + ".json");
          if (auto hit = load_cached(path)) return *hit;
        }
        auto cell = guarded([&] { return ball_cell(field, r, config); });
        if (config.cache && cell.value("status", "") == "ok") atomic_write(path, cell.dump());
        return cell;
      });
  std::vector<std::pair<std::size_t, std::size_t>> pairs;
  for (std::size_t i = 0; i < nf; ++i)
    for (std::size_t j = i + 1; j < nf; ++j) {
      pairs.emplace_back(i, j);
      tasks.emplace_back([&config, i, j] {
        return guarded([&] {
          return json(closeness(config.fields[i].descriptor, config.fields[j].descriptor, config.r_max, config.budget));
        });
      });
    }

  std::vector<json> results(tasks.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t k = next++; k < tasks.size(); k = next++) {
      const double elapsed = std::chrono::duration<double>(Clock::now() - start).count();
      results[k] = elapsed > config.time_seconds ? error_cell("budget", "time budget exhausted") : tasks[k]();
    }
  };
  const std::size_t threads =
      std::clamp<std::size_t>(std::thread::hardware_concurrency(), 1, std::min<std::size_t>(8, tasks.size()));
  std::vector<std::thread> pool;
  for (std::size_t t = 0; t < threads; ++t) pool.emplace_back(worker);
  for (auto& t : pool) t.join();

  json report;
  report["version"] = kVersion;
  report["config"] = config.source;

  json names = json::array();
  for (const auto& f : config.fields) names.push_back(f.name);
  json matrix = json::array();
  for (std::size_t i = 0; i < nf; ++i) matrix.push_back(json::array());
  for (std::size_t i = 0; i < nf; ++i)
    for (std::size_t j = 0; j < nf; ++j) matrix[i].push_back(i == j ? json(config.r_max) : json(nullptr));
  for (std::size_t k = 0; k < pairs.size(); ++k) {
    const auto [i, j] = pairs[k];
    const auto& value = results[nf * static_cast<std::size_t>(nr) + k];
    matrix[i][j] = value;
    matrix[j][i] = value;
  }
  report["closeness"] = {{"fields", names}, {"r_max", config.r_max}, {"matrix", matrix}};

  json balls = json::array();
  std::size_t failed = 0;
  for (std::size_t i = 0; i < nf; ++i)
    for (int r = config.r_min; r <= config.r_max; ++r) {
      auto cell = results[i * static_cast<std::size_t>(nr) + static_cast<std::size_t>(r - config.r_min)];
      if (cell.value("status", "") != "ok") ++failed;
      cell["field"] = config.fields[i].name;
      cell["R"] = r;
      cell["d"] = config.d;
      balls.push_back(std::move(cell));
    }
  report["balls"] = balls;

  json comparisons = json::array();
  for (int r = config.r_min; r <= config.r_max; ++r)
    for (std::size_t i = 0; i < nf; ++i)
      for (std::size_t j = i + 1; j < nf; ++j) {
        const auto& a = balls[i * static_cast<std::size_t>(nr) + static_cast<std::size_t>(r - config.r_min)];
        const auto& b = balls[j * static_cast<std::size_t>(nr) + static_cast<std::size_t>(r - config.r_min)];
        json entry{{"R", r}, {"a", config.fields[i].name}, {"b", config.fields[j].name}};
        if (a.value("status", "") == "ok" && b.value("status", "") == "ok") {
          entry["equal_certificates"] = a.at("certificate") == b.at("certificate");
          entry["equal_centered_certificates"] = a.at("centered_certificate") == b.at("centered_certificate");
        } else {
          entry["status"] = "incomplete";
        }
        comparisons.push_back(std::move(entry));
      }
  report["comparisons"] = comparisons;
  report["summary"] = {{"ball_cells", balls.size()}, {"failed_cells", failed}};
  return report;
}

std::string dump_report(const json& report) { return report.dump(2) + "\n"; }

void atomic_write(const std::filesystem::path& path, const std::string& content) {
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  std::ostringstream suffix;
  suffix << ".tmp." << std::hash<std::thread::id>{}(std::this_thread::get_id());
  auto tmp = path;
  tmp += suffix.str();
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw Error("cannot write " + tmp.string());
    out << content;
    if (!out.flush()) throw Error("cannot write " + tmp.string());
  }
  std::filesystem::rename(tmp, path);
}

std::filesystem::path write_report(const ExperimentConfig& config, const json& report) {
  const auto path = config.output_dir / "report.json";
  atomic_write(path, dump_report(report));
  return path;
}

}  // namespace btlab
