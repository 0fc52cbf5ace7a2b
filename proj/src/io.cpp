#include "beacon/io.hpp"

#include <openssl/evp.h>

#include <fstream>
#include <iomanip>
#include <iostream>
#include <map>
#include <sstream>

namespace beacon {

namespace {

[[noreturn]] void fail(const std::string& where, const std::string& what) {
  throw InputError(where + ": " + what);
}

Rational rational_at(const Json& j, const std::string& where) {
  if (!j.is_string()) fail(where, "expected a \"p/q\" string");
  try {
    return parse_rational(j.get<std::string>());
  } catch (const std::invalid_argument& e) {
    fail(where, e.what());
  }
}

QSqrt3 field_value_at(const Json& j, const std::string& where, bool sqrt3) {
  if (sqrt3 && j.is_array()) {
    if (j.size() != 2) fail(where, "expected [\"a\", \"b\"] for a + b*sqrt(3)");
    return QSqrt3(rational_at(j[0], where + "[0]"), rational_at(j[1], where + "[1]"));
  }
  return QSqrt3(rational_at(j, where));
}

Rational integer_ratio(const Json& num, const Json& den, const std::string& where) {
  if (!num.is_number_integer() || !den.is_number_integer()) fail(where, "expected integers");
  const long long n = num.get<long long>(), q = den.get<long long>();
  if (q == 0) fail(where, "zero denominator");
  Rational r(mpz_class(std::to_string(n)), mpz_class(std::to_string(q)));
  r.canonicalize();
  return r;
}

// One point with `dim` coordinates: integer pairs or field values.
std::vector<QSqrt3> point_at(const Json& j, const std::string& where, int dim, bool sqrt3) {
  if (!j.is_array()) fail(where, "expected an array");
  std::vector<QSqrt3> out;
  if (j.size() == static_cast<std::size_t>(2 * dim) && j[0].is_number()) {
    for (int k = 0; k < dim; ++k) {
      out.emplace_back(integer_ratio(j[2 * k], j[2 * k + 1], where + "[" + std::to_string(2 * k) + "]"));
    }
    return out;
  }
  if (j.size() != static_cast<std::size_t>(dim)) {
    fail(where, "expected " + std::to_string(dim) + " coordinates or " + std::to_string(2 * dim) + " integers");
  }
  for (int k = 0; k < dim; ++k) out.push_back(field_value_at(j[k], where + "[" + std::to_string(k) + "]", sqrt3));
  return out;
}

Json parse_json(std::string_view text) {
  try {
    return Json::parse(text.begin(), text.end());
  } catch (const Json::parse_error& e) {
    throw InputError(std::string("malformed JSON: ") + e.what());
  }
}

bool field_flag(const Json& j) {
  if (!j.contains("field")) return false;
  if (j["field"] != "Q(sqrt3)") fail("field", "only \"Q(sqrt3)\" is supported");
  return true;
}

Json field_json(const QSqrt3& v, bool sqrt3) {
  if (!sqrt3) return to_string(v.rational_part());
  return Json::array({to_string(v.rational_part()), to_string(v.sqrt3_part())});
}

std::string label_of(const Json& j) {
  if (!j.contains("label")) return {};
  if (!j["label"].is_string()) fail("label", "expected a string");
  return j["label"].get<std::string>();
}

std::vector<std::size_t> index_list(const Json& j, const std::string& where) {
  if (!j.is_array()) fail(where, "expected an array");
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < j.size(); ++i) {
    if (!j[i].is_number_unsigned() && !(j[i].is_number_integer() && j[i].get<long long>() >= 0)) {
      fail(where + "[" + std::to_string(i) + "]", "expected a non-negative integer");
    }
    out.push_back(j[i].get<std::size_t>());
  }
  return out;
}

}  // namespace

std::string read_text(const std::string& path) {
  std::ostringstream buf;
  if (path == "-") {
    buf << std::cin.rdbuf();
    return buf.str();
  }
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot open " + path);
  buf << in.rdbuf();
  return buf.str();
}

TetDecomposition parse_decomposition(std::string_view text) {
  const Json j = parse_json(text);
  if (!j.is_object()) fail("document", "expected an object");
  if (!j.contains("vertices")) fail("vertices", "missing");
  if (!j.contains("tets")) fail("tets", "missing");
  const bool sqrt3 = field_flag(j);
  TetDecomposition d;
  d.label = label_of(j);
  const Json& vs = j["vertices"];
  if (!vs.is_array()) fail("vertices", "expected an array");
  for (std::size_t i = 0; i < vs.size(); ++i) {
    const auto c = point_at(vs[i], "vertices[" + std::to_string(i) + "]", 3, sqrt3);
    d.vertices.push_back({c[0], c[1], c[2]});
  }
  const Json& ts = j["tets"];
  if (!ts.is_array()) fail("tets", "expected an array");
  for (std::size_t i = 0; i < ts.size(); ++i) {
    const std::string where = "tets[" + std::to_string(i) + "]";
    const auto idx = index_list(ts[i], where);
    if (idx.size() != 4) fail(where, "expected 4 vertex indices");
    Tetrahedron t;
    for (int k = 0; k < 4; ++k) {
      if (idx[k] >= d.vertices.size()) {
        fail(where, "vertex index " + std::to_string(idx[k]) + " out of range (" +
                        std::to_string(d.vertices.size()) + " vertices)");
      }
      t.v[k] = idx[k];
    }
    d.tets.push_back(t);
  }
  return d;
}

TetDecomposition read_decomposition(const std::string& path) { return parse_decomposition(read_text(path)); }

Json to_json(const TetDecomposition& d) {
  const bool sqrt3 = d.uses_sqrt3();
  Json j = Json::object();
  if (sqrt3) j["field"] = "Q(sqrt3)";
  if (!d.label.empty()) j["label"] = d.label;
  Json vs = Json::array();
  for (const auto& p : d.vertices) {
    vs.push_back(Json::array({field_json(p.x, sqrt3), field_json(p.y, sqrt3), field_json(p.z, sqrt3)}));
  }
  j["vertices"] = vs;
  Json ts = Json::array();
  for (const auto& t : d.tets) ts.push_back(Json::array({t.v[0], t.v[1], t.v[2], t.v[3]}));
  j["tets"] = ts;
  return j;
}

void write_decomposition(std::ostream& out, const TetDecomposition& d) { out << to_json(d).dump(1) << '\n'; }

bool looks_like_polygon(std::string_view text) {
  const Json j = parse_json(text);
  return j.is_object() && j.contains("polygon");
}

Polygon parse_polygon(std::string_view text) {
  const Json j = parse_json(text);
  if (!j.is_object() || !j.contains("polygon")) fail("polygon", "missing");
  const bool sqrt3 = field_flag(j);
  Polygon p;
  p.label = label_of(j);
  const Json& vs = j["polygon"];
  if (!vs.is_array() || vs.size() < 3) fail("polygon", "expected at least 3 points");
  for (std::size_t i = 0; i < vs.size(); ++i) {
    const auto c = point_at(vs[i], "polygon[" + std::to_string(i) + "]", 2, sqrt3);
    p.vertices.push_back({c[0], c[1]});
  }
  return p;
}

Json to_json(const Polygon& p) {
  bool sqrt3 = false;
  for (const auto& v : p.vertices) sqrt3 = sqrt3 || !v.x.is_rational() || !v.y.is_rational();
  Json j = Json::object();
  if (sqrt3) j["field"] = "Q(sqrt3)";
  if (!p.label.empty()) j["label"] = p.label;
  Json vs = Json::array();
  for (const auto& v : p.vertices) vs.push_back(Json::array({field_json(v.x, sqrt3), field_json(v.y, sqrt3)}));
  j["polygon"] = vs;
  return j;
}

Json to_json(const BeaconPlacement& p) {
  Json steps = Json::array();
  for (const auto& s : p.steps) {
    Json js = {{"rule", s.rule}, {"beacons", s.beacons}, {"removed", s.removed}};
    js["anchor"] = s.anchor ? Json(*s.anchor) : Json(nullptr);
    steps.push_back(js);
  }
  return {{"m", p.m}, {"budget", p.budget}, {"beacons", p.beacons}, {"steps", steps}};
}

BeaconPlacement parse_certificate(std::string_view text) {
  const Json j = parse_json(text);
  if (!j.is_object()) fail("certificate", "expected an object");
  for (const char* key : {"m", "budget", "beacons", "steps"}) {
    if (!j.contains(key)) fail(key, "missing");
  }
  BeaconPlacement p;
  if (!j["m"].is_number_unsigned() || !j["budget"].is_number_unsigned()) fail("m", "expected counts");
  p.m = j["m"].get<std::size_t>();
  p.budget = j["budget"].get<std::size_t>();
  p.beacons = index_list(j["beacons"], "beacons");
  const Json& steps = j["steps"];
  if (!steps.is_array()) fail("steps", "expected an array");
  for (std::size_t i = 0; i < steps.size(); ++i) {
    const std::string where = "steps[" + std::to_string(i) + "]";
    const Json& s = steps[i];
    if (!s.is_object()) fail(where, "expected an object");
    PlacementStep step;
    if (!s.contains("rule") || !s["rule"].is_string()) fail(where + ".rule", "expected a string");
    step.rule = s["rule"].get<std::string>();
    step.beacons = index_list(s.value("beacons", Json::array()), where + ".beacons");
    step.removed = index_list(s.value("removed", Json::array()), where + ".removed");
    if (s.contains("anchor") && !s["anchor"].is_null()) {
      step.anchor = index_list(Json::array({s["anchor"]}), where + ".anchor")[0];
    }
    p.steps.push_back(step);
  }
  return p;
}

Json adjacency_json(const DualGraph& g) {
  Json adj = Json::object();
  for (TetId t : g.nodes()) adj[std::to_string(t)] = g.neighbors(t);
  Json edges = Json::array();
  for (auto [a, b] : g.edges()) edges.push_back(Json::array({a, b}));
  return {{"nodes", g.nodes()}, {"edges", edges}, {"adjacency", adj}, {"max_degree", g.max_degree()}};
}

std::string dot(const DualGraph& g, const std::string& name) {
  std::ostringstream out;
  out << "graph " << name << " {\n";
  for (TetId t : g.nodes()) out << "  " << t << ";\n";
  for (auto [a, b] : g.edges()) out << "  " << a << " -- " << b << ";\n";
  out << "}\n";
  return out.str();
}

namespace {

struct BoundaryMesh {
  std::vector<VertexId> used;                 // original indices, ascending
  std::vector<std::array<std::size_t, 3>> faces;  // indices into `used`, outward
};

BoundaryMesh boundary_mesh(const TetDecomposition& d) {
  std::map<TriFacet, std::vector<TetId>> inc = facet_incidence(d);
  BoundaryMesh mesh;
  std::map<VertexId, std::size_t> remap;
  std::vector<std::array<VertexId, 3>> tris;
  for (const auto& [f, owners] : inc) {
    if (owners.size() != 1) continue;
    const Tetrahedron& t = d.tets[owners[0]];
    VertexId apex = t.v[0];
    for (VertexId v : t.v) {
      if (v != f.v[0] && v != f.v[1] && v != f.v[2]) apex = v;
    }
    std::array<VertexId, 3> tri = f.v;
    // the opposite vertex must lie below the face
    if (orient3d(d.vertices[tri[0]], d.vertices[tri[1]], d.vertices[tri[2]], d.vertices[apex]) > 0) {
      std::swap(tri[1], tri[2]);
    }
    tris.push_back(tri);
    for (VertexId v : tri) remap[v] = 0;
  }
  for (auto& [v, i] : remap) {
    i = mesh.used.size();
    mesh.used.push_back(v);
  }
  for (const auto& tri : tris) mesh.faces.push_back({remap[tri[0]], remap[tri[1]], remap[tri[2]]});
  return mesh;
}

void write_coords(std::ostream& out, const FloatPoint3& p) {
  out << p[0] << ' ' << p[1] << ' ' << p[2];
}

}  // namespace

void write_off(std::ostream& out, const TetDecomposition& d) {
  const auto mesh = boundary_mesh(d);
  out << std::setprecision(17) << "OFF\n" << mesh.used.size() << ' ' << mesh.faces.size() << " 0\n";
  for (VertexId v : mesh.used) {
    write_coords(out, to_float(d.vertices[v]));
    out << '\n';
  }
  for (const auto& f : mesh.faces) out << "3 " << f[0] << ' ' << f[1] << ' ' << f[2] << '\n';
}

void write_obj(std::ostream& out, const TetDecomposition& d) {
  const auto mesh = boundary_mesh(d);
  out << std::setprecision(17);
  if (!d.label.empty()) out << "o " << d.label << '\n';
  for (VertexId v : mesh.used) {
    out << "v ";
    write_coords(out, to_float(d.vertices[v]));
    out << '\n';
  }
  for (const auto& f : mesh.faces) out << "f " << f[0] + 1 << ' ' << f[1] + 1 << ' ' << f[2] + 1 << '\n';
}

namespace {

const char* kind_name(SegmentKind k) {
  switch (k) {
    case SegmentKind::Free: return "free";
    case SegmentKind::OnFacet: return "facet";
    case SegmentKind::OnEdge: return "edge";
  }
  return "free";
}

}  // namespace

template <int Dim>
Json to_json(const AttractionPath<Dim>& path) {
  Json segs = Json::array();
  for (const auto& s : path.segments) {
    Json js = {{"kind", kind_name(s.kind)}};
    if (s.kind != SegmentKind::Free) js["feature"] = s.feature;
    segs.push_back(js);
  }
  return {{"terminal", path.terminal == Terminal::Reached ? "reached" : "stuck"},
          {"end", path.end},
          {"waypoints", path.waypoints},
          {"segments", segs},
          {"ties", path.ties}};
}

template <int Dim>
void write_obj_polyline(std::ostream& out, const AttractionPath<Dim>& path) {
  out << std::setprecision(17);
  for (const auto& w : path.waypoints) {
    out << 'v';
    for (int k = 0; k < 3; ++k) out << ' ' << (k < Dim ? w[k] : 0.0);
    out << '\n';
  }
  if (path.waypoints.size() < 2) return;
  out << 'l';
  for (std::size_t i = 1; i <= path.waypoints.size(); ++i) out << ' ' << i;
  out << '\n';
}

template Json to_json<2>(const AttractionPath<2>&);
template Json to_json<3>(const AttractionPath<3>&);
template void write_obj_polyline<2>(std::ostream&, const AttractionPath<2>&);
template void write_obj_polyline<3>(std::ostream&, const AttractionPath<3>&);

Json to_json(const VerifyReport<3>& r) {
  Json failures = Json::array();
  for (const auto& f : r.failures) {
    failures.push_back({{"from", r.samples[f.from]}, {"to", r.samples[f.to]}, {"direct", to_json<3>(f.direct)}});
  }
  return {{"samples", r.samples.size()},
          {"beacons", r.beacons},
          {"pairs_checked", r.pairs_checked},
          {"failures", failures},
          {"ok", r.ok()}};
}

Json to_json(const LowerBoundReport& r) {
  Json j = {{"corners", r.corners},      {"budget", r.budget},
            {"resolution", r.resolution}, {"candidates", r.candidates},
            {"subsets_checked", r.subsets_checked}, {"direct_route", r.direct_route}};
  if (r.counterexample) {
    Json pts = Json::array();
    for (const auto& p : *r.counterexample) pts.push_back(to_float(p));
    j["counterexample"] = pts;
  } else {
    j["counterexample"] = nullptr;
  }
  return j;
}

std::string sha256_hex(std::string_view bytes) {
  unsigned char digest[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  if (EVP_Digest(bytes.data(), bytes.size(), digest, &len, EVP_sha256(), nullptr) != 1) {
    throw std::runtime_error("sha256 failed");
  }
  std::ostringstream out;
  for (unsigned int i = 0; i < len; ++i) out << std::hex << std::setw(2) << std::setfill('0') << int(digest[i]);
  return out.str();
}

Json RunReport::to_json() const {
  Json j = {{"command", command}, {"tool_version", kToolVersion}};
  j["input_sha256"] = input_digest.empty() ? Json(nullptr) : Json(input_digest);
  j["results"] = results;
  j["timings_ms"] = timings_ms;
  return j;
}

std::vector<double> parse_coordinates(std::string_view text) {
  std::vector<double> out;
  std::string s(text);
  std::size_t start = 0;
  while (start <= s.size()) {
    const std::size_t comma = s.find(',', start);
    const std::string part = s.substr(start, comma == std::string::npos ? std::string::npos : comma - start);
    try {
      if (part.find('/') != std::string::npos) {
        out.push_back(parse_rational(part).get_d());
      } else {
        std::size_t used = 0;
        out.push_back(std::stod(part, &used));
        if (used != part.size()) throw std::invalid_argument("trailing text");
      }
    } catch (const std::exception&) {
      throw InputError("bad coordinate '" + part + "' in '" + s + "'");
    }
    if (comma == std::string::npos) break;
    start = comma + 1;
  }
  return out;
}

}  // namespace beacon
