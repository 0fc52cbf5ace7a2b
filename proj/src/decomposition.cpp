#include "beacon/decomposition.hpp"

#include <algorithm>
#include <numeric>
#include <random>
#include <set>
#include <sstream>

#include "beacon/kernels.hpp"

namespace beacon {

bool TetDecomposition::uses_sqrt3() const {
  return std::any_of(vertices.begin(), vertices.end(), [](const RationalPoint3& p) {
    return !p.x.is_rational() || !p.y.is_rational() || !p.z.is_rational();
  });
}

const char* to_string(ViolationKind k) {
  switch (k) {
    case ViolationKind::Empty: return "empty";
    case ViolationKind::IndexOutOfRange: return "index-out-of-range";
    case ViolationKind::DegenerateTetrahedron: return "degenerate";
    case ViolationKind::DuplicateTetrahedron: return "duplicate-tetrahedron";
    case ViolationKind::FacetOvershared: return "facet-shared-by-more-than-two";
    case ViolationKind::DuplicateCoordinates: return "duplicate-coordinates";
    case ViolationKind::InteriorOverlap: return "interior-overlap";
    case ViolationKind::Disconnected: return "disconnected";
  }
  return "unknown";
}

bool ValidationReport::has(ViolationKind k) const {
  return std::any_of(violations.begin(), violations.end(),
                     [k](const Violation& v) { return v.kind == k; });
}

namespace {

std::string join(const std::vector<std::size_t>& items) {
  std::ostringstream os;
  for (std::size_t i = 0; i < items.size(); ++i) os << (i ? "," : "") << items[i];
  return os.str();
}

}  // namespace

ValidationReport validate(const TetDecomposition& d) {
  ValidationReport report;
  auto add = [&](ViolationKind k, std::vector<std::size_t> items, std::string msg) {
    report.violations.push_back({k, std::move(items), std::move(msg)});
  };

  if (d.tets.empty()) {
    add(ViolationKind::Empty, {}, "decomposition has no tetrahedra");
    return report;
  }

  std::vector<char> usable(d.tets.size(), 1);
  for (TetId t = 0; t < d.tets.size(); ++t) {
    const auto& tet = d.tets[t];
    if (std::any_of(tet.v.begin(), tet.v.end(), [&](VertexId v) { return v >= d.vertices.size(); })) {
      add(ViolationKind::IndexOutOfRange, {t}, "tetrahedron " + std::to_string(t) + " references a missing vertex");
      usable[t] = 0;
      continue;
    }
    if (!tet.has_distinct_indices()) {
      add(ViolationKind::DegenerateTetrahedron, {t},
          "tetrahedron " + std::to_string(t) + " repeats a vertex index");
      usable[t] = 0;
    } else if (tet_orientation(tet, d.vertices) == 0) {
      add(ViolationKind::DegenerateTetrahedron, {t},
          "tetrahedron " + std::to_string(t) + " has zero volume");
      usable[t] = 0;
    }
  }

  std::map<std::array<VertexId, 4>, std::vector<TetId>> by_set;
  for (TetId t = 0; t < d.tets.size(); ++t) {
    auto key = d.tets[t].v;
    std::sort(key.begin(), key.end());
    by_set[key].push_back(t);
  }
  for (auto& [key, ts] : by_set) {
    if (ts.size() > 1) {
      add(ViolationKind::DuplicateTetrahedron, ts, "tetrahedra " + join(ts) + " have the same vertex set");
      for (std::size_t i = 1; i < ts.size(); ++i) usable[ts[i]] = 0;
    }
  }

  std::map<TriFacet, std::vector<TetId>> incidence;
  for (TetId t = 0; t < d.tets.size(); ++t) {
    if (!d.tets[t].has_distinct_indices()) continue;
    for (const auto& f : facets_of(d.tets[t])) incidence[f].push_back(t);
  }
  for (auto& [f, ts] : incidence) {
    if (ts.size() > 2) {
      add(ViolationKind::FacetOvershared, ts,
          "facet {" + join({f.v[0], f.v[1], f.v[2]}) + "} is shared by " + std::to_string(ts.size()) +
              " tetrahedra");
    }
  }

  std::vector<VertexId> order(d.vertices.size());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(),
            [&](VertexId a, VertexId b) { return lex_less(d.vertices[a], d.vertices[b]); });
  for (std::size_t i = 0; i + 1 < order.size();) {
    std::size_t j = i + 1;
    while (j < order.size() && d.vertices[order[j]] == d.vertices[order[i]]) ++j;
    if (j - i > 1) {
      std::vector<std::size_t> ids(order.begin() + static_cast<std::ptrdiff_t>(i),
                                   order.begin() + static_cast<std::ptrdiff_t>(j));
      std::sort(ids.begin(), ids.end());
      add(ViolationKind::DuplicateCoordinates, ids, "vertices " + join(ids) + " share coordinates");
    }
    i = j;
  }

  for (auto [a, b] : kernels::overlapping_pairs_parallel(d, usable)) {
    add(ViolationKind::InteriorOverlap, {a, b},
        "tetrahedra " + std::to_string(a) + " and " + std::to_string(b) + " overlap");
  }

  std::vector<TetId> all(d.tets.size());
  std::iota(all.begin(), all.end(), 0);
  DualGraph g(d.tets.size(), all);
  for (auto& [f, ts] : incidence) {
    for (std::size_t i = 0; i < ts.size(); ++i) {
      for (std::size_t j = i + 1; j < ts.size(); ++j) {
        if (ts[i] != ts[j]) g.add_edge(ts[i], ts[j]);
      }
    }
  }
  if (!g.connected()) add(ViolationKind::Disconnected, {}, "dual graph is not connected");
  return report;
}

void require_valid(const TetDecomposition& d) {
  const auto r = validate(d);
  if (r.ok()) return;
  std::ostringstream os;
  os << "invalid decomposition";
  for (const auto& v : r.violations) os << "; " << to_string(v.kind) << ": " << v.message;
  throw InputError(os.str());
}

std::map<TriFacet, std::vector<TetId>> facet_incidence(const TetDecomposition& d) {
  std::map<TriFacet, std::vector<TetId>> incidence;
  for (TetId t = 0; t < d.tets.size(); ++t) {
    for (const auto& f : facets_of(d.tets[t])) incidence[f].push_back(t);
  }
  return incidence;
}

std::vector<TriFacet> boundary_facets(const TetDecomposition& d) {
  std::vector<TriFacet> out;
  for (const auto& [f, ts] : facet_incidence(d)) {
    if (ts.size() == 1) out.push_back(f);
  }
  return out;
}

// ---------------------------------------------------------------------------

DualGraph::DualGraph(std::size_t universe, std::vector<TetId> nodes)
    : nodes_(std::move(nodes)), present_(universe, 0), adj_(universe) {
  std::sort(nodes_.begin(), nodes_.end());
  nodes_.erase(std::unique(nodes_.begin(), nodes_.end()), nodes_.end());
  for (TetId t : nodes_) {
    if (t >= universe) throw InputError("dual graph node out of range");
    present_[t] = 1;
  }
}

void DualGraph::add_edge(TetId a, TetId b) {
  if (!contains(a) || !contains(b) || a == b) return;
  auto& na = adj_[a];
  if (std::find(na.begin(), na.end(), b) != na.end()) return;
  na.insert(std::upper_bound(na.begin(), na.end(), b), b);
  auto& nb = adj_[b];
  nb.insert(std::upper_bound(nb.begin(), nb.end(), a), a);
}

std::size_t DualGraph::edge_count() const {
  std::size_t s = 0;
  for (TetId t : nodes_) s += adj_[t].size();
  return s / 2;
}

std::size_t DualGraph::max_degree() const {
  std::size_t m = 0;
  for (TetId t : nodes_) m = std::max(m, adj_[t].size());
  return m;
}

bool DualGraph::has_edge(TetId a, TetId b) const {
  if (!contains(a) || !contains(b)) return false;
  return std::binary_search(adj_[a].begin(), adj_[a].end(), b);
}

std::vector<std::pair<TetId, TetId>> DualGraph::edges() const {
  std::vector<std::pair<TetId, TetId>> out;
  for (TetId t : nodes_) {
    for (TetId u : adj_[t]) {
      if (t < u) out.emplace_back(t, u);
    }
  }
  return out;
}

bool DualGraph::induced_connected(std::span<const TetId> subset) const {
  if (subset.empty()) return false;
  std::set<TetId> in(subset.begin(), subset.end());
  std::set<TetId> seen{subset.front()};
  std::vector<TetId> stack{subset.front()};
  while (!stack.empty()) {
    const TetId t = stack.back();
    stack.pop_back();
    for (TetId u : adj_[t]) {
      if (in.count(u) && seen.insert(u).second) stack.push_back(u);
    }
  }
  return seen.size() == in.size();
}

DualGraph dual_graph(const TetDecomposition& d) {
  std::vector<TetId> all(d.tets.size());
  std::iota(all.begin(), all.end(), 0);
  return dual_graph(d, all);
}

DualGraph dual_graph(const TetDecomposition& d, std::span<const TetId> subset) {
  DualGraph g(d.tets.size(), std::vector<TetId>(subset.begin(), subset.end()));
  std::map<TriFacet, std::vector<TetId>> incidence;
  for (TetId t : g.nodes()) {
    for (const auto& f : facets_of(d.tets[t])) incidence[f].push_back(t);
  }
  for (const auto& [f, ts] : incidence) {
    if (ts.size() > 2) {
      throw InputError("facet shared by more than two tetrahedra; decomposition is invalid");
    }
    if (ts.size() == 2) g.add_edge(ts[0], ts[1]);
  }
  return g;
}

// ---------------------------------------------------------------------------

std::size_t SpanningTree::depth(TetId t) const {
  std::size_t d = 0;
  while (parent[t] != kNoNode) {
    t = parent[t];
    ++d;
  }
  return d;
}

std::vector<std::pair<TetId, TetId>> SpanningTree::edges() const {
  std::vector<std::pair<TetId, TetId>> out;
  for (TetId t : nodes) {
    if (parent[t] != kNoNode) out.emplace_back(parent[t], t);
  }
  return out;
}

std::vector<TetId> SpanningTree::subtree(TetId t) const {
  std::vector<TetId> out{t};
  for (std::size_t i = 0; i < out.size(); ++i) {
    for (TetId c : children[out[i]]) out.push_back(c);
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::size_t SpanningTree::height(TetId t) const {
  std::size_t h = 0;
  for (TetId c : children[t]) h = std::max(h, height(c) + 1);
  return h;
}

bool SpanningTree::remains_connected_without(std::span<const TetId> removed) const {
  std::set<TetId> gone(removed.begin(), removed.end());
  std::vector<TetId> rest;
  for (TetId t : nodes) {
    if (!gone.count(t)) rest.push_back(t);
  }
  if (rest.empty()) return true;
  std::set<TetId> seen{rest.front()};
  std::vector<TetId> stack{rest.front()};
  while (!stack.empty()) {
    const TetId t = stack.back();
    stack.pop_back();
    auto visit = [&](TetId u) {
      if (!gone.count(u) && seen.insert(u).second) stack.push_back(u);
    };
    if (parent[t] != kNoNode) visit(parent[t]);
    for (TetId c : children[t]) visit(c);
  }
  return seen.size() == rest.size();
}

namespace {

SpanningTree root_tree_at(std::size_t universe, const std::vector<TetId>& nodes,
                          const std::vector<std::vector<TetId>>& tree_adj, TetId root) {
  SpanningTree tree;
  tree.root = root;
  tree.nodes = nodes;
  tree.parent.assign(universe, kNoNode);
  tree.children.assign(universe, {});
  std::vector<char> seen(universe, 0);
  std::vector<TetId> stack{root};
  seen[root] = 1;
  while (!stack.empty()) {
    const TetId t = stack.back();
    stack.pop_back();
    for (TetId u : tree_adj[t]) {
      if (seen[u]) continue;
      seen[u] = 1;
      tree.parent[u] = t;
      tree.children[t].push_back(u);
      stack.push_back(u);
    }
  }
  for (auto& c : tree.children) std::sort(c.begin(), c.end());
  return tree;
}

}  // namespace

SpanningTree leaf_rooted_spanning_tree(const DualGraph& g, std::uint64_t seed) {
  const auto& nodes = g.nodes();
  if (nodes.empty()) throw InputError("spanning tree of an empty graph");
  if (!g.connected()) throw InputError("dual graph is disconnected; no spanning tree exists");

  std::mt19937_64 rng(seed);
  TetId start = nodes.front();
  if (seed != 0) start = nodes[std::uniform_int_distribution<std::size_t>(0, nodes.size() - 1)(rng)];

  const std::size_t universe = g.universe();
  std::vector<std::vector<TetId>> tree_adj(universe);
  std::vector<char> seen(universe, 0);

  // Iterative DFS that mirrors the recursive visiting order.
  struct Frame {
    TetId node;
    std::vector<TetId> order;
    std::size_t next = 0;
  };
  auto neighbour_order = [&](TetId t) {
    std::vector<TetId> order = g.neighbors(t);
    if (seed != 0) std::shuffle(order.begin(), order.end(), rng);
    return order;
  };
  std::vector<Frame> stack;
  seen[start] = 1;
  stack.push_back({start, neighbour_order(start)});
  while (!stack.empty()) {
    Frame& f = stack.back();
    if (f.next == f.order.size()) {
      stack.pop_back();
      continue;
    }
    const TetId u = f.order[f.next++];
    if (seen[u]) continue;
    seen[u] = 1;
    tree_adj[f.node].push_back(u);
    tree_adj[u].push_back(f.node);
    stack.push_back({u, neighbour_order(u)});
  }

  TetId root = start;
  if (nodes.size() > 1) {
    for (TetId t : nodes) {
      if (tree_adj[t].size() == 1) {
        root = t;
        break;
      }
    }
  }
  return root_tree_at(universe, nodes, tree_adj, root);
}

SharedFeature shared_feature_of_set(const TetDecomposition& d, const DualGraph& g,
                                    std::span<const TetId> set) {
  if (set.size() < 2 || set.size() > 4) {
    throw InputError("shared_feature_of_set expects between 2 and 4 tetrahedra");
  }
  for (TetId t : set) {
    if (!g.contains(t)) throw InputError("tetrahedron not in the dual graph");
  }
  if (!g.induced_connected(set)) throw InputError("tetrahedra do not induce a connected subgraph");
  std::vector<VertexId> common(d.tets[set[0]].v.begin(), d.tets[set[0]].v.end());
  for (std::size_t i = 1; i < set.size(); ++i) {
    std::erase_if(common, [&](VertexId v) { return !d.tets[set[i]].contains(v); });
  }
  SharedFeature f = classify_shared(std::move(common));
  const std::size_t need = 5 - set.size();  // 2 -> 3, 3 -> 2, 4 -> 1
  if (f.vertices.size() < need) {
    throw InvariantViolation("connected set of " + std::to_string(set.size()) + " tetrahedra shares only " +
                             std::to_string(f.vertices.size()) + " vertices");
  }
  return f;
}

}  // namespace beacon
