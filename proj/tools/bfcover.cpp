// bfcover — geodesic covers and isometric-cycle edge partitions of
// butterfly networks BF(r).
//
// Exit codes: 0 success, 1 verification/optimality failure, 2 usage error.
// All output is deterministic; machine artifacts are written only via
// --output ("-" = stdout, in which case the human summary moves to stderr).

#include <CLI11.hpp>

#include <bfcover/bfcover.hpp>

#include <chrono>
#include <cstdlib>
#include <cstring>
#include <iomanip>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>

namespace {

using namespace bfcover;

long long enum_guard_from_env() {
  const char* raw = std::getenv("BFCOVER_ENUM_GUARD");
  if (!raw) return kDefaultEnumGuard;
  try {
    std::size_t pos = 0;
    long long parsed = std::stoll(raw, &pos);
    if (pos != std::strlen(raw) || parsed <= 0) throw std::invalid_argument("not positive");
    return parsed;
  } catch (...) {
    throw std::runtime_error("BFCOVER_ENUM_GUARD must be a positive integer, got \"" +
                             std::string(raw) + "\"");
  }
}

std::string read_input(const std::string& path) {
  if (path == "-") {
    std::ostringstream buf;
    buf << std::cin.rdbuf();
    return buf.str();
  }
  return read_text_file(path);
}

// Artifact sink; human-readable output goes to stderr when the artifact
// occupies stdout so that pipes stay clean.
void emit_artifact(const std::string& path, const std::string& text) {
  if (path == "-")
    std::cout << text;
  else
    write_text_file(path, text);
}

std::ostream& human_out(const std::string& output_path) {
  return output_path == "-" ? std::cerr : std::cout;
}

double ms_since(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start)
      .count();
}

// ------------------------------------------------------------------- gen ----

int run_gen(int r, const std::string& format, const std::string& output) {
  Butterfly bf(r);
  std::string text;
  if (format == "edgelist")
    text = graph_to_edgelist(bf.graph());
  else if (format == "json")
    text = butterfly_topology_json(bf).dump(2) + "\n";
  else
    text = butterfly_to_dot(bf);
  emit_artifact(output, text);
  if (output != "-")
    std::cout << "wrote BF(" << r << ") as " << format << " to " << output << "\n";
  return 0;
}

// ----------------------------------------------------------------- cover ----

int run_cover(int r, const std::string& method, const std::string& mode_name, long long budget,
              const std::string& output) {
  Butterfly bf(r);
  CoverMode mode = mode_name == "edge" ? CoverMode::Edge : CoverMode::Vertex;
  if (method == "construct" && mode == CoverMode::Edge)
    throw std::invalid_argument("cover --method construct is vertex-mode only; "
                                "use the edge-partition subcommand for edges");

  auto [vertex_bound, edge_bound] = bf_lower_bounds(r);
  int bound = mode == CoverMode::Vertex ? vertex_bound : edge_bound;

  Cover cover;
  long long nodes = -1;
  std::string status;
  int exit_code = 0;
  if (method == "construct") {
    cover = construct_cover(bf);
    status = "constructed";
  } else {
    CoverInstance inst =
        make_instance(bf.graph(), mode, std::nullopt, std::nullopt, enum_guard_from_env());
    SolveResult res = method == "exact" ? exact_cover(inst, budget) : greedy_cover(inst);
    cover = std::move(res.cover);
    cover.r = r;
    status = to_string(res.status);
    bound = std::max(bound, res.lower_bound);
    if (method == "exact") nodes = res.nodes_explored;
    // A budget-exhausted search still succeeds when the incumbent meets the
    // lower bound: the interval [bound, size] pins the optimum.
    bool ok = method == "exact"
                  ? res.status == SolveStatus::Optimal || cover.size() == bound
                  : res.status == SolveStatus::Feasible;
    if (!ok) exit_code = 1;
  }

  // Re-verify independently of whichever method produced the cover.
  CoverageReport rep = coverage_report(bf.graph(), cover.paths, mode);
  std::ostream& out = human_out(output);
  out << "graph: BF(" << r << ")  (" << bf.graph().vertex_count() << " vertices, "
      << bf.graph().edge_count() << " edges)\n";
  out << "mode: " << to_string(mode) << "\n";
  out << "method: " << method << "  [" << status << "]\n";
  if (!rep.valid()) {
    out << "cover FAILED verification: " << rep.missing.size() << " targets missing, "
        << rep.invalid_paths.size() << " invalid paths\n";
    return 1;
  }
  out << "cover size: " << cover.size() << "\n";
  out << "lower bound: " << bound << "\n";
  out << "certificate: " << (cover.size() == bound ? "true" : "false")
      << (cover.size() == bound ? "  (size equals lower bound: optimal)" : "") << "\n";
  if (nodes >= 0) out << "nodes explored: " << nodes << "\n";
  if (!output.empty()) {
    emit_artifact(output, cover_to_json(cover).dump(2) + "\n");
    if (output != "-") out << "wrote cover to " << output << "\n";
  }
  return exit_code;
}

// -------------------------------------------------------- edge-partition ----

int run_partition(int r, const std::string& as, const std::string& output) {
  Butterfly bf(r);
  CyclePartition part = edge_cycle_partition(r);
  Cover diam = split_to_diametrals(part);
  CoverageReport rep = coverage_report(bf.graph(), diam.paths, CoverMode::Edge);

  std::ostream& out = human_out(output);
  out << "graph: BF(" << r << ")  (" << bf.graph().vertex_count() << " vertices, "
      << bf.graph().edge_count() << " edges)\n";
  out << "isometric cycles: " << part.cycles.size() << " of length " << 4 * r << "\n";
  out << "diametral paths: " << diam.size() << " of length " << 2 * r << "\n";
  if (!rep.valid() || !rep.pairwise_edge_disjoint) {
    out << "partition FAILED verification: " << rep.missing.size() << " edges missing"
        << (rep.pairwise_edge_disjoint ? "" : ", overlapping paths") << "\n";
    return 1;
  }
  out << "edges covered: " << rep.covered << " of " << rep.total_targets
      << " (edge-disjoint: true)\n";
  out << "lower bound: " << bf_lower_bounds(r).second << "\n";
  out << "certificate: true  (path count equals lower bound: optimal)\n";
  if (!output.empty()) {
    emit_artifact(output,
                  partition_to_json(part, as != "diametrals", as != "cycles").dump(2) + "\n");
    if (output != "-") out << "wrote " << as << " to " << output << "\n";
  }
  return 0;
}

// ---------------------------------------------------------------- verify ----

// Parses a gen artifact (edge list or topology JSON) and checks that its
// canonical re-serialization is byte-identical to the input.
int verify_graph(const std::string& path, std::optional<Graph>& graph_out, std::ostream& out) {
  std::string text = read_input(path);
  std::size_t first = text.find_first_not_of(" \t\r\n");
  if (first == std::string::npos) throw std::runtime_error("graph input is empty");

  std::string reserialized;
  if (text[first] == '{') {
    json gj = json::parse(text);
    int r = gj.at("r").get<int>();
    Butterfly bf(r);
    std::vector<Edge> edges;
    for (const auto& e : gj.at("edges")) edges.emplace_back(e[0].get<int>(), e[1].get<int>());
    Graph g(gj.at("vertices").get<int>(), edges);
    if (g.vertex_count() != bf.graph().vertex_count() || g.edges() != bf.graph().edges()) {
      out << "graph: edge set does not match BF(" << r << ")\n";
      return 1;
    }
    reserialized = butterfly_topology_json(bf).dump(2) + "\n";
    graph_out = std::move(g);
  } else {
    Graph g = graph_from_edgelist(text);
    reserialized = graph_to_edgelist(g);
    graph_out = std::move(g);
  }
  out << "graph: " << graph_out->vertex_count() << " vertices, " << graph_out->edge_count()
      << " edges\n";
  if (reserialized != text) {
    out << "round-trip: re-serialization DIFFERS from input (not in canonical form)\n";
    return 1;
  }
  out << "round-trip: byte-identical\n";
  return 0;
}

int verify_cover(const std::string& path, const std::optional<Graph>& graph_arg,
                 std::ostream& out) {
  Cover cover = cover_from_json(json::parse(read_input(path)));
  std::optional<Butterfly> bf;
  const Graph* g = nullptr;
  if (cover.r >= 1) {
    bf.emplace(cover.r);
    g = &bf->graph();
    if (graph_arg && (graph_arg->vertex_count() != g->vertex_count() ||
                      graph_arg->edges() != g->edges()))
      throw std::runtime_error("--graph does not match the BF(" + std::to_string(cover.r) +
                               ") topology declared by the cover");
  } else if (graph_arg) {
    g = &*graph_arg;
  } else {
    throw std::runtime_error("cover has no butterfly dimension; supply the graph via --graph");
  }

  CoverageReport rep = coverage_report(*g, cover.paths, cover.mode);
  out << "cover: " << cover.size() << " paths, mode " << to_string(cover.mode)
      << (cover.r >= 1 ? ", BF(" + std::to_string(cover.r) + ")" : "") << "\n";
  out << "coverage: " << rep.covered << " of " << rep.total_targets << " targets\n";
  if (rep.valid()) {
    out << "verify: PASS\n";
    return 0;
  }
  if (!rep.invalid_paths.empty()) {
    out << "invalid paths (not geodesics):";
    for (int i : rep.invalid_paths) out << " " << i;
    out << "\n";
  }
  if (!rep.missing.empty()) {
    out << "missing targets (" << rep.missing.size() << "):";
    std::size_t shown = std::min<std::size_t>(rep.missing.size(), 20);
    for (std::size_t i = 0; i < shown; ++i) out << " " << rep.missing[i];
    if (shown < rep.missing.size()) out << " ...";
    out << "\n";
  }
  out << "verify: FAIL\n";
  return 1;
}

int verify_partition(const std::string& path, std::ostream& out) {
  CyclePartition part = partition_from_json(json::parse(read_input(path)));
  Butterfly bf(part.r);
  // Structural audit (counts, anchors, edge-disjointness, exhaustion,
  // isometry — full for r <= 6, sampled above); throws on failure.
  detail::verify_partition(part, bf, part.r <= 6);
  Cover diam = split_to_diametrals(part);
  CoverageReport rep = coverage_report(bf.graph(), diam.paths, CoverMode::Edge);
  out << "partition: " << part.cycles.size() << " cycles, BF(" << part.r << ")\n";
  out << "diametral paths: " << diam.size() << ", coverage " << rep.covered << " of "
      << rep.total_targets << "\n";
  if (!rep.valid() || !rep.pairwise_edge_disjoint) {
    out << "verify: FAIL\n";
    return 1;
  }
  out << "verify: PASS\n";
  return 0;
}

int run_verify(const std::string& graph_path, const std::string& cover_path,
               const std::string& partition_path) {
  std::ostream& out = std::cout;
  int exit_code = 0;
  std::optional<Graph> graph;
  if (!graph_path.empty()) exit_code = std::max(exit_code, verify_graph(graph_path, graph, out));
  if (!cover_path.empty()) exit_code = std::max(exit_code, verify_cover(cover_path, graph, out));
  if (!partition_path.empty()) exit_code = std::max(exit_code, verify_partition(partition_path, out));
  return exit_code;
}

// ----------------------------------------------------------------- stats ----

int run_stats(int r) {
  Butterfly bf(r);
  const Graph& g = bf.graph();
  std::cout << "BF(" << r << ")\n";
  std::cout << "vertices: " << g.vertex_count() << "\n";
  std::cout << "edges: " << g.edge_count() << "\n";
  std::cout << "(2,4)-edges: " << bf.count_24_edges() << "\n";
  std::map<int, int> histogram;
  for (int v = 0; v < g.vertex_count(); ++v) ++histogram[g.degree(v)];
  std::cout << "degree histogram:\n";
  for (const auto& [deg, count] : histogram)
    std::cout << "  " << deg << ": " << count << "\n";
  if (r >= 2) {
    auto [vb, eb] = bf_lower_bounds(r);
    std::cout << "geodesic cover lower bounds: vertex " << vb << ", edge " << eb << "\n";
  }
  return 0;
}

// ----------------------------------------------------------------- bench ----

int run_bench(int r_min, int r_max) {
  if (r_min > r_max) throw std::invalid_argument("--r-min must not exceed --r-max");
  std::cout << "  r  vertices     edges  cover[ms]   size  partition[ms]  cycles  verify[ms]\n";
  for (int r = r_min; r <= r_max; ++r) {
    Butterfly bf(r);
    std::cout << std::setw(3) << r << std::setw(10) << bf.graph().vertex_count() << std::setw(10)
              << bf.graph().edge_count();

    std::optional<Cover> cover;
    if (r >= 5) {
      auto t0 = std::chrono::steady_clock::now();
      cover = construct_cover(bf);
      std::cout << std::setw(11) << std::fixed << std::setprecision(1) << ms_since(t0)
                << std::setw(7) << cover->size();
    } else {
      std::cout << std::setw(11) << "-" << std::setw(7) << "-";
    }

    std::optional<Cover> diam;
    if (r >= 3) {
      auto t0 = std::chrono::steady_clock::now();
      CyclePartition part = edge_cycle_partition(r);
      diam = split_to_diametrals(part);
      std::cout << std::setw(15) << std::fixed << std::setprecision(1) << ms_since(t0)
                << std::setw(8) << part.cycles.size();
    } else {
      std::cout << std::setw(15) << "-" << std::setw(8) << "-";
    }

    auto t0 = std::chrono::steady_clock::now();
    bool ok = true;
    if (cover) ok = ok && coverage_report(bf.graph(), cover->paths, CoverMode::Vertex).valid();
    if (diam) {
      CoverageReport rep = coverage_report(bf.graph(), diam->paths, CoverMode::Edge);
      ok = ok && rep.valid() && rep.pairwise_edge_disjoint;
    }
    std::cout << std::setw(12) << std::fixed << std::setprecision(1) << ms_since(t0);
    std::cout << (ok ? "" : "  FAILED") << "\n";
    if (!ok) return 1;
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"geodesic covers and isometric-cycle edge partitions of butterfly networks BF(r)"};
  app.require_subcommand(1);

  int r = 0;
  std::string format = "edgelist";
  std::string method = "construct";
  std::string mode = "vertex";
  std::string as = "both";
  std::string gen_output = "-";
  std::string cover_output;
  std::string partition_output;
  std::string graph_path, cover_path, partition_path;
  long long budget = kDefaultNodeBudget;
  int r_min = 3, r_max = 8;

  CLI::App* gen = app.add_subcommand("gen", "emit the BF(r) topology");
  gen->add_option("-r,--dimension", r, "butterfly dimension")
      ->required()
      ->check(CLI::Range(1, 16));
  gen->add_option("--format", format, "edgelist|json|dot")
      ->check(CLI::IsMember({"edgelist", "json", "dot"}));
  gen->add_option("-o,--output", gen_output, "artifact path (- = stdout)");

  CLI::App* cover = app.add_subcommand("cover", "compute a geodesic cover");
  cover->add_option("-r,--dimension", r, "butterfly dimension")
      ->required()
      ->check(CLI::Range(2, 16));
  cover->add_option("--method", method, "construct|exact|greedy")
      ->check(CLI::IsMember({"construct", "exact", "greedy"}));
  cover->add_option("--mode", mode, "vertex|edge")->check(CLI::IsMember({"vertex", "edge"}));
  cover->add_option("--budget", budget, "search node budget for --method exact")
      ->check(CLI::PositiveNumber);
  cover->add_option("-o,--output", cover_output, "write cover JSON here (- = stdout)");

  CLI::App* partition = app.add_subcommand("edge-partition",
                                           "partition all edges into isometric 4r-cycles");
  partition->add_option("-r,--dimension", r, "butterfly dimension")
      ->required()
      ->check(CLI::Range(3, 16));
  partition->add_option("--as", as, "cycles|diametrals|both")
      ->check(CLI::IsMember({"cycles", "diametrals", "both"}));
  partition->add_option("-o,--output", partition_output, "write partition JSON here (- = stdout)");

  CLI::App* verify = app.add_subcommand("verify", "check artifacts independently");
  verify->add_option("--graph", graph_path, "gen artifact (edge list or topology JSON, - = stdin)");
  verify->add_option("--cover", cover_path, "cover JSON (- = stdin)");
  verify->add_option("--partition", partition_path, "partition JSON (- = stdin)");

  CLI::App* stats = app.add_subcommand("stats", "print BF(r) size statistics");
  stats->add_option("-r,--dimension", r, "butterfly dimension")
      ->required()
      ->check(CLI::Range(1, 16));

  CLI::App* bench = app.add_subcommand("bench", "time construction and verification over a range");
  bench->add_option("--r-min", r_min, "smallest dimension")->check(CLI::Range(2, 16));
  bench->add_option("--r-max", r_max, "largest dimension")->check(CLI::Range(2, 16));

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (gen->parsed()) return run_gen(r, format, gen_output);
    if (cover->parsed()) return run_cover(r, method, mode, budget, cover_output);
    if (partition->parsed()) return run_partition(r, as, partition_output);
    if (verify->parsed()) {
      if (graph_path.empty() && cover_path.empty() && partition_path.empty())
        throw std::invalid_argument("verify needs at least one of --graph/--cover/--partition");
      return run_verify(graph_path, cover_path, partition_path);
    }
    if (stats->parsed()) return run_stats(r);
    if (bench->parsed()) return run_bench(r_min, r_max);
  } catch (const EnumerationGuardError& e) {
    std::cerr << "error: " << e.what()
              << "\n(set BFCOVER_ENUM_GUARD to raise the enumeration limit)\n";
    return 2;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::logic_error& e) {
    std::cerr << "verification failure: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 2;
}
