// btlab: command-line front end for residue rings, building balls, geometry
// checks, germ labelling, canonical forms and scripted experiments.

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "btlab/building.hpp"
#include "btlab/canon.hpp"
#include "btlab/digest.hpp"
#include "btlab/experiment.hpp"
#include "btlab/geometry.hpp"
#include "btlab/germs.hpp"
#include "btlab/version.hpp"

namespace {

using nlohmann::json;
using namespace btlab;

enum Exit : int { kOk = 0, kViolation = 1, kBudget = 2, kInvalid = 3 };

struct Globals {
  std::size_t budget_vertices = Budget{}.max_vertices;
  std::size_t budget_ring = Budget{}.max_ring_size;
  std::uint64_t seed = 20160501;
  std::string cache_dir;
  std::string format = "json";

  Budget budget() const {
    Budget b;
    b.max_vertices = budget_vertices;
    b.max_ring_size = budget_ring;
    return b;
  }
};

std::string read_text(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InvalidInput("cannot read '" + path + "'");
  std::ostringstream out;
  out << in.rdbuf();
  return out.str();
}

json read_json(const std::string& path) {
  try {
    return json::parse(read_text(path));
  } catch (const json::parse_error& err) {
    throw InvalidInput("malformed JSON in '" + path + "': " + err.what());
  }
}

// Inline JSON document or a path to one.
FieldDescriptor load_descriptor(const std::string& arg) {
  if (!arg.empty() && arg.front() == '{') return parse_descriptor(arg);
  return parse_descriptor(read_text(arg));
}

LabeledGraph load_graph(const std::string& path) { return parse_graph(read_text(path)); }

void emit_graph(const LabeledGraph& g, const std::string& format, const std::string& output) {
  std::string text;
  if (format == "json") text = to_json(g).dump(2) + "\n";
  else if (format == "dot") text = to_dot(g);
  else text = to_csv(g);
  if (output.empty()) std::cout << text;
  else atomic_write(output, text);
}

void emit(const json& doc) { std::cout << doc.dump(2) << "\n"; }

// Ball graph, served from the cache directory when one is configured.
LabeledGraph cached_ball_graph(const Globals& g, const std::string& desc, int r, int d) {
  const auto descriptor = load_descriptor(desc);
  std::filesystem::path path;
  if (!g.cache_dir.empty()) {
    const auto key = sha256_hex(normal_form(descriptor) + "|" + std::to_string(r) + "|" + std::to_string(d) + "|" + kVersion);
    path = std::filesystem::path(g.cache_dir) / ("ball-" + key + ".json");
    if (std::filesystem::exists(path)) return parse_graph(read_text(path.string()));
  }
  auto ball = build_ball(ResidueRing::build(descriptor, r, g.budget()), d, g.budget());
  if (!path.empty()) atomic_write(path, to_json(ball.graph).dump());
  return std::move(ball.graph);
}

json germ_json(const Germ& germ) {
  json colors = json::object();
  for (std::size_t i = 0; i < germ.vertices.size(); ++i) colors[std::to_string(germ.vertices[i])] = germ.colors[i];
  return {{"center", germ.center}, {"colors", colors}};
}

json ring_table(const ResidueRing& ring, bool multiply) {
  json rows = json::array();
  for (Elem a = 0; a < ring.size(); ++a) {
    json row = json::array();
    for (Elem b = 0; b < ring.size(); ++b) row.push_back(ring.format(multiply ? ring.mul(a, b) : ring.add(a, b)));
    rows.push_back(std::move(row));
  }
  json elements = json::array();
  for (Elem a = 0; a < ring.size(); ++a) elements.push_back(ring.format(a));
  return {{"operation", multiply ? "mul" : "add"}, {"elements", elements}, {"table", rows}};
}

int run(int argc, char** argv) {
  CLI::App app{"Residue rings, Bruhat-Tits building balls and local geometry checks"};
  app.set_version_flag("--version", std::string(kVersion));
  app.require_subcommand(1);
  app.fallthrough();

  Globals g;
  app.add_option("--budget-vertices", g.budget_vertices, "Maximum vertices in a ball or graph")->check(CLI::PositiveNumber);
  app.add_option("--budget-ring", g.budget_ring, "Maximum residue ring size")->check(CLI::PositiveNumber);
  app.add_option("--seed", g.seed, "Seed for randomized checks");
  app.add_option("--cache-dir", g.cache_dir, "Directory for cached balls and experiment cells");
  app.add_option("--format", g.format, "Graph output format")->check(CLI::IsMember({"json", "dot", "csv"}));

  int code = kOk;

  // field
  auto* field = app.add_subcommand("field", "Field descriptors")->require_subcommand(1);
  std::string desc_a, desc_b;
  int r_max = 3;
  auto* validate_cmd = field->add_subcommand("validate", "Validate a descriptor");
  validate_cmd->add_option("descriptor", desc_a, "Descriptor JSON or file")->required();
  validate_cmd->callback([&] {
    nlohmann::json doc;
    try {
      doc = desc_a.front() == '{' ? json::parse(desc_a) : read_json(desc_a);
    } catch (const json::parse_error& err) {
      throw InvalidInput(std::string("malformed descriptor document: ") + err.what());
    }
    const auto d = descriptor_from_json(doc);
    emit({{"valid", true}, {"normal_form", to_json(d)}, {"description", describe(d)}});
  });
  auto* close_cmd = field->add_subcommand("close", "Closeness of two fields");
  close_cmd->add_option("a", desc_a, "First descriptor")->required();
  close_cmd->add_option("b", desc_b, "Second descriptor")->required();
  close_cmd->add_option("--r-max", r_max, "Largest precision to test")->check(CLI::PositiveNumber);
  close_cmd->callback([&] {
    Budget budget = g.budget();
    emit({{"closeness", closeness(load_descriptor(desc_a), load_descriptor(desc_b), r_max, budget)}, {"r_max", r_max}});
  });

  // ring
  auto* ring = app.add_subcommand("ring", "Residue rings O_R")->require_subcommand(1);
  int precision = 1;
  std::string op = "mul";
  auto* ring_build = ring->add_subcommand("build", "Build O_R and print its invariants");
  ring_build->add_option("descriptor", desc_a)->required();
  ring_build->add_option("-R,--precision", precision)->check(CLI::PositiveNumber);
  ring_build->callback([&] {
    const auto r = ResidueRing::build(load_descriptor(desc_a), precision, g.budget());
    emit({{"kind", std::string(to_string(r.kind()))},
          {"precision", r.precision()},
          {"residue_size", r.residue_size()},
          {"size", r.size()},
          {"commutative", r.is_commutative()},
          {"uniformizer", r.format(r.uniformizer())}});
  });
  auto* ring_table_cmd = ring->add_subcommand("table", "Print the addition or multiplication table");
  ring_table_cmd->add_option("descriptor", desc_a)->required();
  ring_table_cmd->add_option("-R,--precision", precision)->check(CLI::PositiveNumber);
  ring_table_cmd->add_option("--op", op)->check(CLI::IsMember({"add", "mul"}));
  ring_table_cmd->callback([&] {
    const auto r = ResidueRing::build(load_descriptor(desc_a), precision, g.budget());
    const auto table = ring_table(r, op == "mul");
    if (g.format != "csv") {
      emit(table);
      return;
    }
    for (const auto& row : table.at("table")) {
      for (std::size_t i = 0; i < row.size(); ++i) std::cout << (i ? "," : "") << row[i].get<std::string>();
      std::cout << "\n";
    }
  });
  auto* ring_iso = ring->add_subcommand("iso", "Decide whether two residue rings are isomorphic");
  ring_iso->add_option("a", desc_a)->required();
  ring_iso->add_option("b", desc_b)->required();
  ring_iso->add_option("-R,--precision", precision)->check(CLI::PositiveNumber);
  ring_iso->callback([&] {
    const auto budget = g.budget();
    const auto ra = ResidueRing::build(load_descriptor(desc_a), precision, budget);
    const auto rb = ResidueRing::build(load_descriptor(desc_b), precision, budget);
    const auto result = rings_isomorphic(ra, rb, budget);
    json out{{"isomorphic", result.isomorphic()}};
    if (result.isomorphic()) {
      json map = json::object();
      for (Elem a = 0; a < ra.size(); ++a) map[ra.format(a)] = rb.format((*result.witness)[a]);
      out["witness"] = map;
    } else {
      out["invariant"] = result.invariant;
      out["detail"] = result.detail;
    }
    emit(out);
  });

  // ball
  auto* ball = app.add_subcommand("ball", "Balls of the building X_d(K)")->require_subcommand(1);
  int rank = 3;
  std::string output, graph_a, graph_b;
  auto* ball_build = ball->add_subcommand("build", "Enumerate the ball of radius R");
  ball_build->add_option("descriptor", desc_a)->required();
  ball_build->add_option("-R,--radius", precision)->check(CLI::PositiveNumber);
  ball_build->add_option("-d,--rank", rank)->check(CLI::Range(2, 8));
  ball_build->add_option("-o,--output", output);
  ball_build->callback([&] { emit_graph(cached_ball_graph(g, desc_a, precision, rank), g.format, output); });
  auto* ball_export = ball->add_subcommand("export", "Convert a graph document to --format");
  ball_export->add_option("graph", graph_a)->required();
  ball_export->add_option("-o,--output", output);
  ball_export->callback([&] { emit_graph(load_graph(graph_a), g.format, output); });
  auto* ball_compare = ball->add_subcommand("compare", "Compare the balls of two fields");
  ball_compare->add_option("a", desc_a)->required();
  ball_compare->add_option("b", desc_b)->required();
  ball_compare->add_option("-R,--radius", precision)->check(CLI::PositiveNumber);
  ball_compare->add_option("-d,--rank", rank)->check(CLI::Range(2, 8));
  ball_compare->callback([&] {
    const auto ga = cached_ball_graph(g, desc_a, precision, rank);
    const auto gb = cached_ball_graph(g, desc_b, precision, rank);
    const auto budget = g.budget();
    const auto blind = are_isomorphic(ga, gb, {}, budget);
    const auto centered = are_isomorphic(ga, gb, {.use_colors = false, .use_distance = true}, budget);
    json out{{"isometric", blind.isomorphic()}, {"centered_isometric", centered.isomorphic()},
             {"vertices", {ga.size(), gb.size()}}};
    if (!blind.isomorphic()) out["invariant"] = blind.invariant;
    emit(out);
  });

  // geometry
  auto* geometry = app.add_subcommand("geometry", "Geometry axioms")->require_subcommand(1);
  std::string diagram = "atilde:3", scope = "interior";
  int radius = -1;
  auto* geo_verify = geometry->add_subcommand("verify", "Check conditions on every flag residue");
  geo_verify->add_option("graph", graph_a)->required();
  geo_verify->add_option("--diagram", diagram);
  geo_verify->add_option("--scope", scope)->check(CLI::IsMember({"interior", "full"}));
  geo_verify->add_option("--radius", radius, "Ball radius for the interior scope (default: max dist)");
  geo_verify->callback([&] {
    const auto geo = load_graph(graph_a);
    const auto m = parse_diagram(diagram);
    std::vector<bool> in = full_scope(geo);
    if (scope == "interior" && geo.dist) {
      const int r = radius >= 0 ? radius : *std::max_element(geo.dist->begin(), geo.dist->end());
      in = interior_scope(geo, r);
    }
    const auto report = verify_geometry(geo, m, in);
    json violations = json::array();
    for (const auto& v : report.violations)
      violations.push_back({{"flag", v.flag}, {"type", v.type}, {"condition", v.condition}, {"detail", v.detail}});
    emit({{"ok", report.ok()}, {"flags_checked", report.flags_checked}, {"violations", violations}});
    if (!report.ok()) code = kViolation;
  });

  // germs
  auto* germs = app.add_subcommand("germs", "Germs of geometry")->require_subcommand(1);
  int basepoint = 0, certificate = 0;
  auto* germs_label = germs->add_subcommand("label", "Propagate a germ into a global labelling");
  germs_label->add_option("graph", graph_a)->required();
  germs_label->add_option("--diagram", diagram);
  germs_label->add_option("--basepoint", basepoint)->check(CLI::NonNegativeNumber);
  germs_label->add_option("--certificate", certificate, "Also check closed paths of length <= k")->check(CLI::Range(2, 12));
  germs_label->callback([&] {
    const auto graph = load_graph(graph_a);
    GermLabeler labeler(graph, parse_diagram(diagram), g.budget());
    if (static_cast<std::size_t>(basepoint) >= graph.size()) throw InvalidInput("basepoint out of range");
    const auto at_base = labeler.germs_at(basepoint);
    json out{{"germs_at_basepoint", at_base.germs.size()}};
    if (at_base.germs.empty()) {
      out["status"] = "no_germs";
      emit(out);
      code = kViolation;
      return;
    }
    // On balls, only vertices whose whole neighbourhood is present carry germs.
    std::vector<bool> domain = full_scope(graph);
    if (graph.dist) domain = interior_scope(graph, *std::max_element(graph.dist->begin(), graph.dist->end()), 1);
    if (!domain[static_cast<std::size_t>(basepoint)]) throw InvalidInput("basepoint lies on the boundary of the ball");
    const auto result = propagate(labeler, at_base.germs.front(), &domain);
    out["seed"] = germ_json(at_base.germs.front());
    switch (result.status) {
      case PropagationStatus::Labelled: {
        out["status"] = "labelled";
        json tau = json::object();
        for (std::size_t v = 0; v < result.tau.size(); ++v)
          if (result.tau[v] >= 0) tau[std::to_string(v)] = result.tau[v];
        out["labelling"] = tau;
        break;
      }
      case PropagationStatus::Obstruction:
        out["status"] = "obstruction";
        out["cycle"] = result.cycle;
        code = kViolation;
        break;
      case PropagationStatus::TransportFailure:
        out["status"] = result.failure == TransportStatus::NoExtension ? "no_extension" : "not_unique";
        out["failing_edge"] = {result.failing_edge.first, result.failing_edge.second};
        out["detail"] = result.detail;
        code = kViolation;
        break;
    }
    if (certificate > 0) {
      const auto cert = short_cycle_certificate(labeler, certificate, &domain);
      json classes = json::array();
      for (const auto& c : cert.classes)
        classes.push_back({{"length", c.length}, {"checked", c.checked}, {"failures", c.failures}, {"example", c.example}});
      out["certificate"] = {{"k", cert.k}, {"passed", cert.passed()}, {"classes", classes}};
    }
    emit(out);
  });

  // iso
  auto* iso = app.add_subcommand("iso", "Canonical forms and isomorphism")->require_subcommand(1);
  bool use_colors = false, use_distance = false;
  auto* iso_canon = iso->add_subcommand("canon", "Canonical certificate of a graph");
  iso_canon->add_option("graph", graph_a)->required();
  iso_canon->add_flag("--colors", use_colors, "Respect tau");
  iso_canon->add_flag("--distance", use_distance, "Respect dist (origin-fixing)");
  iso_canon->callback([&] {
    Budget budget = g.budget();
    const auto cert = canonical_form(load_graph(graph_a), {use_colors, use_distance}, budget);
    emit({{"certificate", cert.encoding}, {"digest", cert.digest}, {"orbits", cert.orbits}, {"search_nodes", cert.search_nodes}});
  });
  auto* iso_compare = iso->add_subcommand("compare", "Isomorphism test with explicit mapping");
  iso_compare->add_option("a", graph_a)->required();
  iso_compare->add_option("b", graph_b)->required();
  iso_compare->add_flag("--colors", use_colors, "Respect tau");
  iso_compare->add_flag("--distance", use_distance, "Respect dist (origin-fixing)");
  iso_compare->callback([&] {
    Budget budget = g.budget();
    const auto result = are_isomorphic(load_graph(graph_a), load_graph(graph_b), {use_colors, use_distance}, budget);
    json out{{"isomorphic", result.isomorphic()}};
    if (result.isomorphic()) out["mapping"] = *result.mapping;
    else out["mismatch"] = {{"invariant", result.invariant}, {"detail", result.detail}};
    emit(out);
  });

  // experiment
  auto* experiment = app.add_subcommand("experiment", "Scripted experiments")->require_subcommand(1);
  std::string config_path, output_dir;
  auto* exp_run = experiment->add_subcommand("run", "Run every cell of a config and write report.json");
  exp_run->add_option("--config", config_path)->required();
  exp_run->add_option("--output-dir", output_dir, "Overrides the config's output_dir");
  exp_run->callback([&] {
    auto doc = read_json(config_path);
    auto config = parse_experiment_config(doc);
    if (!output_dir.empty()) config.output_dir = output_dir;
    if (!g.cache_dir.empty()) config.cache_dir = g.cache_dir;
    else if (!output_dir.empty() && !doc.contains("cache_dir")) config.cache_dir = config.output_dir / "cache";
    if (app.get_option("--seed")->count() > 0) config.seed = g.seed;
    const auto report = run_experiment(config);
    const auto path = write_report(config, report);
    std::cerr << "report written to " << path.string() << "\n";
    if (report.at("summary").at("failed_cells").get<std::size_t>() > 0) code = kBudget;
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& err) {
    const int rc = app.exit(err);
    return rc == 0 ? kOk : kInvalid;
  } catch (const BudgetExceeded& err) {
    std::cerr << "budget exceeded: " << err.what() << "\n";
    return kBudget;
  } catch (const TransportError& err) {
    std::cerr << "transport failure: " << err.what() << "\n";
    return kViolation;
  } catch (const VerificationFailure& err) {
    std::cerr << "verification failed: " << err.what() << "\n";
    return kViolation;
  } catch (const Error& err) {
    std::cerr << "invalid input: " << err.what() << "\n";
    return kInvalid;
  } catch (const std::filesystem::filesystem_error& err) {
    std::cerr << "invalid input: " << err.what() << "\n";
    return kInvalid;
  }
  return code;
}

}  // namespace

int main(int argc, char** argv) { return run(argc, argv); }
