#include <chrono>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"

#include "beacon/generators.hpp"
#include "beacon/io.hpp"
#include "beacon/kernels.hpp"
#include "beacon/placement.hpp"
#include "beacon/routing.hpp"

using namespace beacon;

namespace {

using Clock = std::chrono::steady_clock;

struct Context {
  RunReport report;
  std::string input_bytes;

  std::string load(const std::string& path) {
    input_bytes = read_text(path);
    report.input_digest = sha256_hex(input_bytes);
    return input_bytes;
  }
  template <class F>
  auto timed(const std::string& name, F&& f) {
    const auto t0 = Clock::now();
    auto out = f();
    report.timings_ms[name] = std::chrono::duration<double, std::milli>(Clock::now() - t0).count();
    return out;
  }
};

void write_to(const std::string& path, const std::string& text) {
  if (path == "-") {
    std::cout << text;
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw InputError("cannot write " + path);
  out << text;
}

template <int Dim>
VecD<Dim> point_arg(const std::string& text, const char* what) {
  const auto c = parse_coordinates(text);
  if (c.size() != static_cast<std::size_t>(Dim)) {
    throw InputError(std::string(what) + " needs " + std::to_string(Dim) + " coordinates");
  }
  VecD<Dim> p{};
  for (int k = 0; k < Dim; ++k) p[k] = c[k];
  return p;
}

// Beacons from a file (certificate, or a JSON list of vertex ids / points) or inline
// "3;7" (vertex ids) and "x,y,z;x,y,z" (points), mixed freely.
std::vector<FloatPoint3> beacon_arg(const std::string& arg, const TetDecomposition& d) {
  std::vector<FloatPoint3> out;
  auto vertex = [&](long long v) {
    if (v < 0 || static_cast<std::size_t>(v) >= d.vertices.size()) {
      throw InputError("beacon vertex " + std::to_string(v) + " out of range");
    }
    out.push_back(to_float(d.vertices[static_cast<std::size_t>(v)]));
  };
  if (arg.empty()) return out;
  if (std::filesystem::is_regular_file(arg)) {
    const std::string text = read_text(arg);
    Json j;
    try {
      j = Json::parse(text);
    } catch (const Json::parse_error& e) {
      throw InputError(arg + ": " + e.what());
    }
    if (j.is_object()) return beacon_points(d, parse_certificate(text).beacons);
    if (!j.is_array()) throw InputError(arg + ": expected a certificate or a list of beacons");
    for (const auto& item : j) {
      if (item.is_number_integer()) {
        vertex(item.get<long long>());
      } else if (item.is_array() && item.size() == 3 && item[0].is_number()) {
        out.push_back({item[0].get<double>(), item[1].get<double>(), item[2].get<double>()});
      } else {
        throw InputError(arg + ": beacon entries are vertex ids or [x, y, z]");
      }
    }
    return out;
  }
  std::stringstream in(arg);
  std::string item;
  while (std::getline(in, item, ';')) {
    if (item.empty()) continue;
    if (item.find(',') == std::string::npos) {
      try {
        std::size_t used = 0;
        const long long v = std::stoll(item, &used);
        if (used != item.size()) throw std::invalid_argument(item);
        vertex(v);
      } catch (const std::logic_error&) {
        throw InputError("bad beacon '" + item + "'");
      }
    } else {
      out.push_back(point_arg<3>(item, "beacon"));
    }
  }
  return out;
}

const char* terminal_name(Terminal t) { return t == Terminal::Reached ? "reached" : "stuck"; }

template <int Dim>
int run_attract(Context& ctx, const SimplicialRegion<Dim>& region, const std::string& point,
                const std::string& beacon, const std::string& path_out) {
  const auto p = point_arg<Dim>(point, "--point");
  const auto b = point_arg<Dim>(beacon, "--beacon");
  const auto path = ctx.timed("attract", [&] { return attract<Dim>(region, p, b); });
  std::cout << terminal_name(path.terminal) << " at";
  for (double x : path.end) std::cout << ' ' << x;
  std::cout << " after " << path.segments.size() << " segments\n";
  if (!path_out.empty()) {
    std::ostringstream text;
    if (path_out.size() > 4 && path_out.substr(path_out.size() - 4) == ".obj") {
      write_obj_polyline<Dim>(text, path);
    } else {
      text << to_json<Dim>(path).dump(1) << '\n';
    }
    write_to(path_out, text.str());
  }
  ctx.report.results = to_json<Dim>(path);
  return 0;
}

std::string field_tag(const TetDecomposition& d) { return "m=" + std::to_string(d.size()); }

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Beacon placement and routing on tetrahedral decompositions"};
  app.require_subcommand(1);
  app.fallthrough();
  std::string report_path;
  std::uint64_t seed = 0;
  app.add_option("--report", report_path, "Write a JSON run report here");
  app.add_option("--seed", seed, "Seed for spanning trees and random samples")->capture_default_str();

  std::string file;
  auto add_input = [&](CLI::App* sub) { sub->add_option("file", file, "Decomposition JSON, or - for stdin")->required(); };

  auto* validate_cmd = app.add_subcommand("validate", "Check a decomposition");
  add_input(validate_cmd);

  bool as_dot = false;
  auto* dual_cmd = app.add_subcommand("dual", "Print the dual graph (JSON adjacency or DOT)");
  add_input(dual_cmd);
  dual_cmd->add_flag("--dot", as_dot, "Emit DOT");

  std::string certificate_out;
  auto* place_cmd = app.add_subcommand("place", "Place beacons and print a summary");
  add_input(place_cmd);
  place_cmd->add_option("--certificate", certificate_out, "Write the certificate JSON here (- for stdout)");

  auto* bound_cmd = app.add_subcommand("bound", "Print m and the beacon budget");
  add_input(bound_cmd);

  std::string point, beacon, path_out;
  auto* attract_cmd = app.add_subcommand("attract", "Trace one point toward one beacon");
  add_input(attract_cmd);
  attract_cmd->add_option("--point", point, "x,y[,z]")->required();
  attract_cmd->add_option("--beacon", beacon, "x,y[,z]")->required();
  attract_cmd->add_option("--path", path_out, "Write the path (.json or .obj)");

  std::string from, to, beacons;
  auto* route_cmd = app.add_subcommand("route", "Route between two points");
  add_input(route_cmd);
  route_cmd->add_option("--from", from, "x,y,z")->required();
  route_cmd->add_option("--to", to, "x,y,z")->required();
  route_cmd->add_option("--beacons", beacons, "File, or inline 'v;v' vertex ids and 'x,y,z;...' points");

  std::size_t extra_samples = 0;
  auto* verify_cmd = app.add_subcommand("verify", "Check routing between all sampled pairs");
  add_input(verify_cmd);
  verify_cmd->add_option("--beacons", beacons, "Certificate or beacon list; see route")->required();
  verify_cmd->add_option("--samples", extra_samples, "Extra random samples")->capture_default_str();

  auto* gen_cmd = app.add_subcommand("gen", "Generate an instance");
  gen_cmd->require_subcommand(1);
  gen_cmd->fallthrough();
  std::string out_path = "-";
  int corners = 1;
  std::string delta = "2/5";
  std::string figure_name;
  StackedParams stacked;
  for (const char* name : {"spiral3d", "spiral2d"}) {
    auto* sub = gen_cmd->add_subcommand(name, "Spiral instance");
    sub->add_option("--corners", corners, "Corner count c >= 1")->capture_default_str();
    sub->add_option("--delta", delta, "Hallway width as p/q")->capture_default_str();
    sub->add_option("-o,--output", out_path, "Output file")->capture_default_str();
  }
  auto* gen_figure = gen_cmd->add_subcommand("figure", "Four-tetrahedron configuration");
  gen_figure->add_option("name", figure_name, "star, line, lineSharedEdge or ring")->required();
  gen_figure->add_option("-o,--output", out_path, "Output file")->capture_default_str();
  auto* gen_stacked = gen_cmd->add_subcommand("stacked", "Bent prism chain with buds");
  gen_stacked->add_option("--prisms", stacked.prisms)->capture_default_str();
  gen_stacked->add_option("--buds", stacked.buds)->capture_default_str();
  gen_stacked->add_option("-o,--output", out_path, "Output file")->capture_default_str();

  std::size_t budget_k = 0, cap = 2000;
  int grid = 5;
  auto* lower_cmd = app.add_subcommand("lower-bound", "Search sub-budget beacon sets on a spiral");
  lower_cmd->add_option("--corners", corners)->required();
  lower_cmd->add_option("--budget", budget_k)->required();
  lower_cmd->add_option("--grid", grid)->capture_default_str();
  lower_cmd->add_option("--cap", cap, "Largest candidate set allowed")->capture_default_str();

  std::string format;
  auto* export_cmd = app.add_subcommand("export", "Write the boundary mesh");
  add_input(export_cmd);
  export_cmd->add_option("--format", format)->required()->check(CLI::IsMember({"off", "obj"}));
  export_cmd->add_option("-o,--output", out_path, "Output file")->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  Context ctx;
  int code = 0;
  try {
    auto load_decomposition = [&] { return parse_decomposition(ctx.load(file)); };
    if (*validate_cmd) {
      ctx.report.command = "validate";
      const auto d = load_decomposition();
      const auto rep = ctx.timed("validate", [&] { return validate(d); });
      Json list = Json::array();
      for (const auto& v : rep.violations) {
        list.push_back({{"kind", to_string(v.kind)}, {"items", v.items}, {"message", v.message}});
        std::cout << to_string(v.kind) << ": " << v.message << '\n';
      }
      if (rep.ok()) std::cout << "valid, " << field_tag(d) << ", n=" << d.vertices.size() << '\n';
      ctx.report.results = {{"valid", rep.ok()}, {"violations", list}};
      code = rep.ok() ? 0 : 2;
    } else if (*dual_cmd) {
      ctx.report.command = "dual";
      const auto d = load_decomposition();
      require_valid(d);
      const auto g = dual_graph(d);
      if (as_dot) {
        std::cout << dot(g);
      } else {
        std::cout << adjacency_json(g).dump(1) << '\n';
      }
      ctx.report.results = adjacency_json(g);
    } else if (*place_cmd) {
      ctx.report.command = "place";
      const auto d = load_decomposition();
      const auto p = ctx.timed("place", [&] { return place_all(d, seed); });
      const auto problems = check_certificate(d, p);
      std::ostream& summary = certificate_out == "-" ? std::cerr : std::cout;
      summary << field_tag(d) << ", budget=" << p.budget << ", beacons=" << p.beacons.size() << " [";
      for (std::size_t i = 0; i < p.beacons.size(); ++i) summary << (i ? " " : "") << p.beacons[i];
      summary << "], steps=" << p.steps.size() << '\n';
      for (const auto& s : problems) summary << "certificate problem: " << s << '\n';
      if (!certificate_out.empty()) write_to(certificate_out, to_json(p).dump(1) + "\n");
      ctx.report.results = to_json(p);
      ctx.report.results["problems"] = problems;
      code = problems.empty() ? 0 : 1;
    } else if (*bound_cmd) {
      ctx.report.command = "bound";
      const auto d = load_decomposition();
      std::cout << "m=" << d.size() << ", budget=" << budget(d.size()) << '\n';
      ctx.report.results = {{"m", d.size()}, {"budget", budget(d.size())}};
    } else if (*attract_cmd) {
      ctx.report.command = "attract";
      const std::string text = ctx.load(file);
      if (looks_like_polygon(text)) {
        code = run_attract<2>(ctx, make_region(parse_polygon(text)), point, beacon, path_out);
      } else {
        const auto d = parse_decomposition(text);
        require_valid(d);
        code = run_attract<3>(ctx, make_region(d), point, beacon, path_out);
      }
    } else if (*route_cmd) {
      ctx.report.command = "route";
      const auto d = load_decomposition();
      require_valid(d);
      const auto region = make_region(d);
      const auto b = beacon_arg(beacons, d);
      const auto p = point_arg<3>(from, "--from"), q = point_arg<3>(to, "--to");
      const auto r = ctx.timed("route", [&] { return route<3>(region, p, q, b); });
      std::cout << (r.routable ? "routable" : "not routable");
      if (r.routable) {
        std::cout << ", chain [";
        for (std::size_t i = 0; i < r.chain.size(); ++i) std::cout << (i ? " " : "") << r.chain[i];
        std::cout << "]";
      }
      std::cout << '\n';
      ctx.report.results = {{"routable", r.routable}, {"chain", r.chain}};
      code = r.routable ? 0 : 1;
    } else if (*verify_cmd) {
      ctx.report.command = "verify";
      const auto d = load_decomposition();
      require_valid(d);
      const auto region = make_region(d);
      const auto b = beacon_arg(beacons, d);
      const auto rep = ctx.timed("verify", [&] {
        return verify_all_pairs<3>(region, default_samples(d, extra_samples, seed), b);
      });
      std::cout << rep.pairs_checked << " ordered pairs over " << rep.samples.size() << " samples with "
                << rep.beacons << " beacons: " << rep.failures.size() << " failures\n";
      for (std::size_t i = 0; i < rep.failures.size() && i < 10; ++i) {
        const auto& f = rep.failures[i];
        std::cout << "  sample " << f.from << " -> sample " << f.to << '\n';
      }
      ctx.report.results = to_json(rep);
      code = rep.ok() ? 0 : 1;
    } else if (*gen_cmd) {
      ctx.report.command = "gen";
      std::string text;
      auto spiral = [&] {
        SpiralParams sp{corners, parse_rational(delta)};
        check_params(sp);
        return sp;
      };
      if (gen_cmd->got_subcommand("spiral3d")) {
        text = to_json(spiral_polyhedron(spiral())).dump(1);
      } else if (gen_cmd->got_subcommand("spiral2d")) {
        text = to_json(spiral_polygon(spiral())).dump(1);
      } else if (*gen_figure) {
        text = to_json(figure_configuration(parse_figure_name(figure_name))).dump(1);
      } else {
        stacked.seed = seed;
        text = to_json(stacked_hallways(stacked)).dump(1);
      }
      write_to(out_path, text + "\n");
      ctx.report.results = {{"output", out_path}};
    } else if (*lower_cmd) {
      ctx.report.command = "lower-bound";
      const auto rep = ctx.timed("search", [&] { return falsify_lower_bound(corners, budget_k, grid, cap); });
      std::cout << "c=" << corners << ", budget=" << budget_k << ", grid=" << grid << ": " << rep.candidates
                << " candidates, " << rep.subsets_checked << " subsets, "
                << (rep.counterexample ? "routing set FOUND" : "no routing set") << '\n';
      ctx.report.results = to_json(rep);
      code = rep.counterexample ? 1 : 0;
    } else if (*export_cmd) {
      ctx.report.command = "export";
      const auto d = load_decomposition();
      require_valid(d);
      std::ostringstream text;
      if (format == "off") {
        write_off(text, d);
      } else {
        write_obj(text, d);
      }
      write_to(out_path, text.str());
      ctx.report.results = {{"format", format}};
    }
  } catch (const InputError& e) {
    std::cerr << "input error: " << e.what() << '\n';
    ctx.report.results = {{"error", e.what()}};
    code = 2;
  } catch (const std::invalid_argument& e) {
    std::cerr << "input error: " << e.what() << '\n';
    ctx.report.results = {{"error", e.what()}};
    code = 2;
  } catch (const std::exception& e) {
    std::cerr << "failure: " << e.what() << '\n';
    ctx.report.results = {{"error", e.what()}};
    code = 1;
  }
  if (!report_path.empty()) {
    try {
      Json j = ctx.report.to_json();
      j["exit_code"] = code;
      write_to(report_path, j.dump(1) + "\n");
    } catch (const std::exception& e) {
      std::cerr << "cannot write report: " << e.what() << '\n';
      return 2;
    }
  }
  return code;
}
