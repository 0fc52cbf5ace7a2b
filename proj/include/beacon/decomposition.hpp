#pragma once

#include <cstdint>
#include <limits>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "beacon/exact.hpp"
#include "beacon/geometry.hpp"

namespace beacon {

/// A polyhedron given as the union of face-to-face tetrahedra.
struct TetDecomposition {
  std::vector<RationalPoint3> vertices;
  std::vector<Tetrahedron> tets;
  std::string label;

  std::size_t size() const { return tets.size(); }
  bool uses_sqrt3() const;
};

enum class ViolationKind {
  Empty,
  IndexOutOfRange,
  DegenerateTetrahedron,
  DuplicateTetrahedron,
  FacetOvershared,
  DuplicateCoordinates,
  InteriorOverlap,
  Disconnected,
};

const char* to_string(ViolationKind k);

struct Violation {
  ViolationKind kind;
  std::vector<std::size_t> items;  // tetrahedron or vertex indices involved
  std::string message;
};

struct ValidationReport {
  std::vector<Violation> violations;

  bool ok() const { return violations.empty(); }
  bool has(ViolationKind k) const;
};

/// Checks every structural requirement and reports all violations found.
/// The pairwise overlap pass runs on the parallel kernel; see kernels.hpp.
ValidationReport validate(const TetDecomposition& d);

/// Throws InputError carrying the report text unless `d` is valid.
void require_valid(const TetDecomposition& d);

/// Facet -> tetrahedra containing it.
std::map<TriFacet, std::vector<TetId>> facet_incidence(const TetDecomposition& d);

/// Facets that belong to exactly one tetrahedron, in ascending order.
std::vector<TriFacet> boundary_facets(const TetDecomposition& d);

inline constexpr std::size_t kNoNode = std::numeric_limits<std::size_t>::max();

/// Facet-adjacency graph, optionally restricted to a subset of tetrahedra.
/// Node ids are tetrahedron indices of the underlying decomposition.
class DualGraph {
 public:
  DualGraph() = default;
  DualGraph(std::size_t universe, std::vector<TetId> nodes);

  const std::vector<TetId>& nodes() const { return nodes_; }
  const std::vector<TetId>& neighbors(TetId t) const { return adj_[t]; }
  bool contains(TetId t) const { return t < present_.size() && present_[t]; }
  std::size_t universe() const { return adj_.size(); }
  std::size_t node_count() const { return nodes_.size(); }
  std::size_t edge_count() const;
  std::size_t max_degree() const;
  bool has_edge(TetId a, TetId b) const;
  std::vector<std::pair<TetId, TetId>> edges() const;

  /// True iff the subgraph induced by `subset` is connected (subset non-empty).
  bool induced_connected(std::span<const TetId> subset) const;
  bool connected() const { return induced_connected(nodes_); }

  void add_edge(TetId a, TetId b);

 private:
  std::vector<TetId> nodes_;
  std::vector<char> present_;
  std::vector<std::vector<TetId>> adj_;
};

/// Dual graph of the whole decomposition. Throws InputError if some facet is
/// shared by more than two tetrahedra.
DualGraph dual_graph(const TetDecomposition& d);

/// Induced dual graph on `subset`.
DualGraph dual_graph(const TetDecomposition& d, std::span<const TetId> subset);

/// A rooted spanning tree of a dual graph whose root is a leaf.
struct SpanningTree {
  TetId root = kNoNode;
  std::vector<TetId> nodes;                  // ascending
  std::vector<std::size_t> parent;           // kNoNode for root and absent nodes
  std::vector<std::vector<TetId>> children;  // ascending

  bool contains(TetId t) const { return t < parent.size() && (t == root || parent[t] != kNoNode); }
  bool is_leaf(TetId t) const { return children[t].empty(); }
  std::size_t tree_degree(TetId t) const {
    return children[t].size() + (parent[t] == kNoNode ? 0 : 1);
  }
  std::size_t depth(TetId t) const;
  std::vector<std::pair<TetId, TetId>> edges() const;  // (parent, child)
  /// The node and all of its descendants.
  std::vector<TetId> subtree(TetId t) const;
  std::size_t height(TetId t) const;
  /// True iff removing `removed` leaves the rest of the tree connected.
  bool remains_connected_without(std::span<const TetId> removed) const;
};

/// DFS spanning tree re-rooted at its lowest-index leaf.
/// Seed 0 starts at the lowest node with neighbours in ascending order; other
/// seeds pick the start node and neighbour order pseudo-randomly.
SpanningTree leaf_rooted_spanning_tree(const DualGraph& g, std::uint64_t seed = 0);

/// Common vertices of a connected set of 2 to 4 tetrahedra. Asserts the
/// minimum sharing that facet adjacency guarantees for each set size.
SharedFeature shared_feature_of_set(const TetDecomposition& d, const DualGraph& g,
                                    std::span<const TetId> set);

}  // namespace beacon
