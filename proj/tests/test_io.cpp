#include <gtest/gtest.h>

#include <sys/wait.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "beacon/generators.hpp"
#include "beacon/io.hpp"
#include "beacon/placement.hpp"
#include "fixtures.hpp"

using namespace beacon;

namespace {

struct Run {
  int code;
  std::string out;
};

Run run(const std::string& args) {
  const std::string cmd = std::string(BEACON_CLI) + " " + args + " 2>/dev/null";
  FILE* pipe = popen(cmd.c_str(), "r");
  std::string out;
  char buf[4096];
  while (std::size_t n = std::fread(buf, 1, sizeof buf, pipe)) out.append(buf, n);
  const int status = pclose(pipe);
  return {WIFEXITED(status) ? WEXITSTATUS(status) : -1, out};
}

std::filesystem::path scratch(const std::string& name) {
  const auto dir = std::filesystem::temp_directory_path() / "beacon_io_test";
  std::filesystem::create_directories(dir);
  return dir / name;
}

std::string json_text(const TetDecomposition& d) {
  std::ostringstream out;
  write_decomposition(out, d);
  return out.str();
}

}  // namespace

TEST(Decomposition, RoundTrip) {
  for (const auto& d : {testkit::unit_tetrahedron(), spiral_polyhedron({3}), figure_configuration(FigureName::LineSharedEdge),
                        stacked_hallways({3, 3, 2})}) {
    const auto back = parse_decomposition(json_text(d));
    EXPECT_EQ(back.vertices, d.vertices) << d.label;
    EXPECT_EQ(back.tets, d.tets) << d.label;
    EXPECT_EQ(back.label, d.label);
  }
}

TEST(Decomposition, SqrtThreeFieldTag) {
  EXPECT_EQ(to_json(spiral_polyhedron({1}))["field"], "Q(sqrt3)");
  EXPECT_FALSE(to_json(testkit::unit_tetrahedron()).contains("field"));
}

TEST(Decomposition, IntegerAndFractionInput) {
  const auto d = parse_decomposition(R"({"vertices": [[0,1,0,1,0,1], [2,2,0,1,0,1], ["0","1","0"], [0,1,0,1,-3,-6]],
                                         "tets": [[0,1,2,3]]})");
  ASSERT_EQ(d.vertices.size(), 4u);
  EXPECT_EQ(d.vertices[1].x, QSqrt3(1));
  EXPECT_EQ(d.vertices[3].z, QSqrt3(Rational(1, 2)));
  EXPECT_EQ(d.tets[0].v, (std::array<VertexId, 4>{0, 1, 2, 3}));
}

TEST(Decomposition, ParseErrors) {
  EXPECT_THROW(parse_decomposition("{"), InputError);
  EXPECT_THROW(parse_decomposition(R"({"tets": []})"), InputError);
  EXPECT_THROW(parse_decomposition(R"({"vertices": [[0,0]], "tets": []})"), InputError);
  EXPECT_THROW(parse_decomposition(R"({"vertices": [[0,0,0]], "tets": []})"), InputError);
  EXPECT_THROW(parse_decomposition(R"({"vertices": [["0","0","x"]], "tets": []})"), InputError);
  EXPECT_THROW(parse_decomposition(R"({"vertices": [[0,1,0,0,0,1]], "tets": []})"), InputError);
  try {
    parse_decomposition(R"({"vertices": [["0","0","0"]], "tets": [[0,1,0,0]]})");
    FAIL();
  } catch (const InputError& e) {
    EXPECT_NE(std::string(e.what()).find("tets[0]"), std::string::npos);
  }
}

TEST(Polygon, RoundTripAndDetection) {
  const auto p = spiral_polygon({2});
  const std::string text = to_json(p).dump();
  EXPECT_TRUE(looks_like_polygon(text));
  EXPECT_FALSE(looks_like_polygon(json_text(testkit::unit_tetrahedron())));
  EXPECT_EQ(parse_polygon(text).vertices, p.vertices);
}

TEST(Certificate, RoundTrip) {
  const auto d = spiral_polyhedron({4});
  const auto p = place_all(d);
  const auto back = parse_certificate(to_json(p).dump());
  EXPECT_EQ(back.beacons, p.beacons);
  EXPECT_EQ(back.m, p.m);
  ASSERT_EQ(back.steps.size(), p.steps.size());
  for (std::size_t i = 0; i < p.steps.size(); ++i) {
    EXPECT_EQ(back.steps[i].removed, p.steps[i].removed);
    EXPECT_EQ(back.steps[i].anchor, p.steps[i].anchor);
    EXPECT_EQ(back.steps[i].rule, p.steps[i].rule);
  }
  EXPECT_TRUE(check_certificate(d, back).empty());
}

TEST(Mesh, OffCounts) {
  for (int c = 1; c <= 4; ++c) {
    std::ostringstream out;
    write_off(out, spiral_polyhedron({c}));
    std::istringstream in(out.str());
    std::string head;
    std::size_t v = 0, f = 0, e = 0;
    in >> head >> v >> f >> e;
    EXPECT_EQ(head, "OFF");
    EXPECT_EQ(v, 3u * c + 2);
    EXPECT_EQ(f, 2 * v - 4);   // closed triangulated sphere
  }
}

TEST(Dual, DotAndAdjacency) {
  const auto g = dual_graph(spiral_polyhedron({2}));
  const auto j = adjacency_json(g);
  EXPECT_EQ(j["nodes"].size(), 5u);
  EXPECT_NE(dot(g).find("0 -- 1"), std::string::npos);
}

TEST(Digest, KnownVectors) {
  EXPECT_EQ(sha256_hex("abc"), "ba7816bf8f01cfea414140de5dae2223b00361a396177a9cb410ff61f20015ad");
  EXPECT_EQ(sha256_hex(""), "e3b0c44298fc1c149afbf4c8996fb92427ae41e4649b934ca495991b7852b855");
}

TEST(Coordinates, Parse) {
  EXPECT_EQ(parse_coordinates("1,2.5,-1/4"), (std::vector<double>{1, 2.5, -0.25}));
  EXPECT_EQ(parse_coordinates("0,1").size(), 2u);
  EXPECT_EQ(parse_coordinates("7").size(), 1u);
  EXPECT_THROW(parse_coordinates("1,a,2"), InputError);
}

TEST(Cli, PlaceThenVerify) {
  for (int c = 1; c <= 5; ++c) {
    const auto in = scratch("s" + std::to_string(c) + ".json");
    const auto cert = scratch("c" + std::to_string(c) + ".json");
    ASSERT_EQ(run("gen spiral3d --corners " + std::to_string(c) + " -o " + in.string()).code, 0);
    const auto placed = run("place " + in.string() + " --certificate " + cert.string());
    ASSERT_EQ(placed.code, 0) << c;
    const auto checked = run("verify " + in.string() + " --beacons " + cert.string());
    EXPECT_EQ(checked.code, 0) << c;
    EXPECT_NE(checked.out.find(" 0 failures"), std::string::npos) << checked.out;
  }
}

TEST(Cli, BoundAndExitCodes) {
  const auto in = scratch("s5.json");
  ASSERT_EQ(run("gen spiral3d --corners 5 -o " + in.string()).code, 0);
  const auto b = run("bound " + in.string());
  EXPECT_EQ(b.code, 0);
  EXPECT_EQ(b.out, "m=14, budget=5\n");

  EXPECT_EQ(run("validate " + scratch("missing.json").string()).code, 2);
  EXPECT_EQ(run("no-such-command").code, 2);

  const auto s2 = scratch("s2.json");
  ASSERT_EQ(run("gen spiral3d --corners 2 -o " + s2.string()).code, 0);
  const auto r = run("route " + s2.string() + " --from 1,0,0 --to 2,0,0");
  EXPECT_EQ(r.code, 1);
  EXPECT_EQ(r.out, "not routable\n");
  EXPECT_EQ(run("verify " + s2.string() + " --beacons 0").code, 1);
}

TEST(Cli, Report) {
  const auto in = scratch("s1.json");
  const auto rep = scratch("report.json");
  ASSERT_EQ(run("gen spiral3d --corners 1 -o " + in.string()).code, 0);
  ASSERT_EQ(run("--report " + rep.string() + " validate " + in.string()).code, 0);
  std::ifstream f(rep);
  const auto j = Json::parse(f);
  EXPECT_EQ(j["command"], "validate");
  EXPECT_EQ(j["tool_version"], kToolVersion);
  EXPECT_EQ(j["input_sha256"], sha256_hex(read_text(in.string())));
}
