#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <bfcover/bfcover.hpp>

#include <cstdio>
#include <filesystem>
#include <string>

using namespace bfcover;

TEST_CASE("edge list round trip is byte identical") {
  for (int r = 1; r <= 5; ++r) {
    Butterfly bf(r);
    std::string text = graph_to_edgelist(bf.graph());
    Graph back = graph_from_edgelist(text);
    CHECK(back.vertex_count() == bf.graph().vertex_count());
    CHECK(back.edges() == bf.graph().edges());
    CHECK(graph_to_edgelist(back) == text);
  }
}

TEST_CASE("edge list parsing details") {
  SUBCASE("comments and blank lines are skipped") {
    Graph g = graph_from_edgelist("# a comment\n\n0 1\n# another\n1 2\n");
    CHECK(g.vertex_count() == 3);
    CHECK(g.edge_count() == 2);
  }
  SUBCASE("vertices header adds isolated vertices") {
    Graph g = graph_from_edgelist("# vertices 5\n0 1\n");
    CHECK(g.vertex_count() == 5);
    CHECK(g.degree(4) == 0);
  }
  SUBCASE("vertex count defaults to max id plus one") {
    Graph g = graph_from_edgelist("3 7\n");
    CHECK(g.vertex_count() == 8);
  }
  SUBCASE("malformed lines throw") {
    CHECK_THROWS_AS(graph_from_edgelist("0\n"), std::runtime_error);
    CHECK_THROWS_AS(graph_from_edgelist("0 1 2\n"), std::runtime_error);
    CHECK_THROWS_AS(graph_from_edgelist("a b\n"), std::runtime_error);
    CHECK_THROWS_AS(graph_from_edgelist(""), std::runtime_error);
    CHECK_THROWS_AS(graph_from_edgelist("# just comments\n"), std::runtime_error);
  }
}

TEST_CASE("topology JSON carries r, vertex count, and sorted edges") {
  Butterfly bf(3);
  json j = butterfly_topology_json(bf);
  CHECK(j["r"] == 3);
  CHECK(j["vertices"] == 32);
  CHECK(j["edges"].size() == 48);
  CHECK(j["edges"][0] == json({0, 8}));
  // Dump determinism: same toplogy serializes to the same bytes.
  CHECK(j.dump(2) == butterfly_topology_json(Butterfly(3)).dump(2));
  // Edges arrive sorted, matching Graph::edges().
  std::vector<Edge> edges;
  for (const auto& e : j["edges"]) edges.emplace_back(e[0].get<int>(), e[1].get<int>());
  CHECK(edges == bf.graph().edges());
}

TEST_CASE("DOT export names vertices L<j>R<s> and ranks by level") {
  Butterfly bf(2);
  std::string dot = butterfly_to_dot(bf);
  CHECK(dot.find("graph bf2 {") == 0);
  CHECK(dot.find("{ rank=same; L0R0; L0R1; L0R2; L0R3; }") != std::string::npos);
  CHECK(dot.find("L0R0 -- L1R0;") != std::string::npos);
  CHECK(dot.find("L0R0 -- L1R2;") != std::string::npos);
  CHECK(dot.back() == '\n');
  // One node block per level, one line per edge.
  std::size_t rank_blocks = 0;
  for (std::size_t pos = 0; (pos = dot.find("rank=same", pos)) != std::string::npos; ++pos)
    ++rank_blocks;
  CHECK(rank_blocks == 3);
  std::size_t edge_lines = 0;
  for (std::size_t pos = 0; (pos = dot.find(" -- ", pos)) != std::string::npos; ++pos)
    ++edge_lines;
  CHECK(edge_lines == static_cast<std::size_t>(bf.graph().edge_count()));
}

TEST_CASE("cover JSON round trip preserves paths exactly") {
  Butterfly bf(5);
  Cover cover = construct_cover(bf);
  json j = cover_to_json(cover);
  CHECK(j["r"] == 5);
  CHECK(j["mode"] == "vertex");
  CHECK(j["size"] == 22);
  CHECK(j["paths"].size() == 22);
  // Coordinates, not ids: each vertex is a [level,row] pair.
  CHECK(j["paths"][0][0].is_array());
  CHECK(j["paths"][0][0].size() == 2);

  Cover back = cover_from_json(j);
  CHECK(back.r == cover.r);
  CHECK(back.mode == cover.mode);
  CHECK(back.paths == cover.paths);
  CHECK(cover_to_json(back).dump(2) == j.dump(2));
}

TEST_CASE("cover JSON for generic graphs uses raw ids") {
  Cover cover;
  cover.mode = CoverMode::Edge;
  cover.paths = {{0, 1, 2}, {2, 3}};
  json j = cover_to_json(cover);
  CHECK(j["r"] == -1);
  CHECK(j["paths"][0] == json({0, 1, 2}));
  Cover back = cover_from_json(j);
  CHECK(back.paths == cover.paths);
  CHECK(back.mode == CoverMode::Edge);
}

TEST_CASE("cover JSON rejects malformed input") {
  Butterfly bf(5);
  json good = cover_to_json(construct_cover(bf));

  json no_mode = good;
  no_mode.erase("mode");
  CHECK_THROWS_AS(cover_from_json(no_mode), std::runtime_error);

  json bad_mode = good;
  bad_mode["mode"] = "face";
  CHECK_THROWS_AS(cover_from_json(bad_mode), std::runtime_error);

  json bad_size = good;
  bad_size["size"] = 7;
  CHECK_THROWS_AS(cover_from_json(bad_size), std::runtime_error);

  json bad_coord = good;
  bad_coord["paths"][0][0] = {9, 0};  // level out of range for r=5
  CHECK_THROWS_AS(cover_from_json(bad_coord), std::runtime_error);

  json bad_row = good;
  bad_row["paths"][0][0] = {0, 32};  // row out of range for r=5
  CHECK_THROWS_AS(cover_from_json(bad_row), std::runtime_error);

  CHECK_THROWS_AS(cover_from_json(json::array()), std::runtime_error);
}

TEST_CASE("partition JSON round trips cycles and derives diametrals") {
  CyclePartition part = edge_cycle_partition(4);
  json both = partition_to_json(part, true, true);
  CHECK(both["r"] == 4);
  CHECK(both["cycles"].size() == 8);
  CHECK(both["diametrals"].size() == 16);
  for (const auto& cyc : both["cycles"]) CHECK(cyc.size() == 16);
  for (const auto& p : both["diametrals"]) CHECK(p.size() == 9);

  CyclePartition back = partition_from_json(both);
  CHECK(back.r == part.r);
  REQUIRE(back.cycles.size() == part.cycles.size());
  for (std::size_t i = 0; i < part.cycles.size(); ++i) {
    CHECK(back.cycles[i].vertices == part.cycles[i].vertices);
    CHECK(back.cycles[i].anchors == part.cycles[i].anchors);
  }
  CHECK(partition_to_json(back, true, true).dump(2) == both.dump(2));

  json cycles_only = partition_to_json(part, true, false);
  CHECK(!cycles_only.contains("diametrals"));
  json diametrals_only = partition_to_json(part, false, true);
  CHECK(!diametrals_only.contains("cycles"));
}

TEST_CASE("partition JSON rejects malformed input") {
  json good = partition_to_json(edge_cycle_partition(3), true, false);

  json no_cycles = good;
  no_cycles.erase("cycles");
  CHECK_THROWS_AS(partition_from_json(no_cycles), std::runtime_error);

  json short_cycle = good;
  short_cycle["cycles"][0].erase(11);
  CHECK_THROWS_AS(partition_from_json(short_cycle), std::runtime_error);

  json bad_anchor = good;
  bad_anchor["cycles"][0][6] = {1, 0};  // position 2r must be a level-0 vertex
  CHECK_THROWS_AS(partition_from_json(bad_anchor), std::runtime_error);
}

TEST_CASE("instance JSON builds solver instances") {
  SUBCASE("inline graph with defaults") {
    json j = {{"graph", {{"vertices", 6}, {"edges", {{0, 3}, {0, 4}, {0, 5}, {1, 3}, {1, 4}, {1, 5}, {2, 3}, {2, 4}, {2, 5}}}}}};
    CoverInstance inst = instance_from_json(j);
    CHECK(inst.graph.vertex_count() == 6);
    CHECK(inst.mode == CoverMode::Vertex);
    CHECK(inst.candidates.size() == 18);  // maximal geodesics of K33
    CHECK(inst.targets.size() == 6);
    SolveResult res = exact_cover(inst);
    CHECK(res.status == SolveStatus::Optimal);
    CHECK(res.cover.size() == 2);
  }
  SUBCASE("explicit mode, candidates, targets") {
    json j = {{"graph", {{"vertices", 3}, {"edges", {{0, 1}, {1, 2}}}}},
              {"mode", "edge"},
              {"candidates", {{0, 1}, {1, 2}, {0, 1, 2}}},
              {"targets", {0, 1}}};
    CoverInstance inst = instance_from_json(j);
    CHECK(inst.mode == CoverMode::Edge);
    CHECK(inst.candidates.size() == 3);
    CHECK(inst.targets == std::vector<int>{0, 1});
    SolveResult res = exact_cover(inst);
    CHECK(res.cover.size() == 1);  // the full path covers both edges
  }
  SUBCASE("graph_file reference loads an edge list") {
    namespace fs = std::filesystem;
    fs::path tmp = fs::temp_directory_path() / "bfcover_io_test.edges";
    write_text_file(tmp.string(), graph_to_edgelist(Butterfly(2).graph()));
    json j = {{"graph_file", tmp.string()}};
    CoverInstance inst = instance_from_json(j);
    CHECK(inst.graph.vertex_count() == 12);
    CHECK(inst.graph.edge_count() == 16);
    fs::remove(tmp);
  }
  SUBCASE("malformed instances throw") {
    CHECK_THROWS_AS(instance_from_json(json{{"mode", "vertex"}}), std::runtime_error);
    CHECK_THROWS_AS(instance_from_json(json{{"graph_file", "/no/such/file"}}), std::runtime_error);
    json bad_mode = {{"graph", {{"vertices", 2}, {"edges", {{0, 1}}}}}, {"mode", "face"}};
    CHECK_THROWS_AS(instance_from_json(bad_mode), std::runtime_error);
  }
}

TEST_CASE("result JSON mirrors the solve result") {
  CoverInstance inst = make_instance(complete_bipartite(3, 3), CoverMode::Vertex);
  SolveResult res = exact_cover(inst);
  json j = result_to_json(res);
  CHECK(j["status"] == "optimal");
  CHECK(j["size"] == 2);
  CHECK(j["lower_bound"] == 2);
  CHECK(j["nodes_explored"].get<long long>() == res.nodes_explored);
  CHECK(j["paths"].size() == 2);
  CHECK(j["paths"][0].size() == 3);  // maximal K33 geodesics have three vertices
}

TEST_CASE("file helpers read back what they wrote") {
  namespace fs = std::filesystem;
  fs::path tmp = fs::temp_directory_path() / "bfcover_io_roundtrip.txt";
  std::string payload = "line one\nline two\n";
  write_text_file(tmp.string(), payload);
  CHECK(read_text_file(tmp.string()) == payload);
  fs::remove(tmp);
  CHECK_THROWS_AS(read_text_file(tmp.string()), std::runtime_error);
}
