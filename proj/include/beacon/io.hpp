#pragma once

#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"

#include "beacon/attraction.hpp"
#include "beacon/decomposition.hpp"
#include "beacon/placement.hpp"
#include "beacon/routing.hpp"

namespace beacon {

using Json = nlohmann::ordered_json;

inline constexpr const char* kToolVersion = "0.1.0";

/// Whole stream, or stdin for "-". Throws InputError when the file cannot be read.
std::string read_text(const std::string& path);

/// Decomposition JSON. Coordinates are "p/q" strings, integer 6-tuples, or with
/// "field": "Q(sqrt3)" pairs ["a", "b"] meaning a + b*sqrt(3).
TetDecomposition parse_decomposition(std::string_view text);
TetDecomposition read_decomposition(const std::string& path);
Json to_json(const TetDecomposition& d);
void write_decomposition(std::ostream& out, const TetDecomposition& d);

/// {"polygon": [[x, y], ...], "label": ...} with the same coordinate rules.
Polygon parse_polygon(std::string_view text);
Json to_json(const Polygon& p);
bool looks_like_polygon(std::string_view text);

Json to_json(const BeaconPlacement& p);
BeaconPlacement parse_certificate(std::string_view text);

Json adjacency_json(const DualGraph& g);
std::string dot(const DualGraph& g, const std::string& name = "dual");

/// Boundary facets only, outward oriented, unused vertices dropped.
void write_off(std::ostream& out, const TetDecomposition& d);
void write_obj(std::ostream& out, const TetDecomposition& d);

template <int Dim>
Json to_json(const AttractionPath<Dim>& path);
template <int Dim>
void write_obj_polyline(std::ostream& out, const AttractionPath<Dim>& path);

Json to_json(const VerifyReport<3>& r);
Json to_json(const LowerBoundReport& r);

/// Lowercase hex SHA-256.
std::string sha256_hex(std::string_view bytes);

struct RunReport {
  std::string command;
  std::string input_digest;            // sha256 of the input bytes, empty without input
  Json timings_ms = Json::object();
  Json results = Json::object();

  Json to_json() const;
};

/// "x,y" or "x,y,z" with decimal or p/q components.
std::vector<double> parse_coordinates(std::string_view text);

}  // namespace beacon
