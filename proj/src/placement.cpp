#include "beacon/placement.hpp"

#include <algorithm>
#include <functional>
#include <numeric>
#include <set>

namespace beacon {

std::size_t budget(std::size_t m) {
  if (m == 0) throw InputError("budget of an empty decomposition");
  return (m + 1) / 3;
}

namespace {

bool contains_any(const Tetrahedron& t, const std::vector<VertexId>& beacons) {
  return std::any_of(beacons.begin(), beacons.end(), [&](VertexId b) { return t.contains(b); });
}

std::vector<TetId> sorted(std::vector<TetId> v) {
  std::sort(v.begin(), v.end());
  return v;
}

VertexId smallest_common(const TetDecomposition& d, const DualGraph& g, std::vector<TetId> set) {
  const SharedFeature f = shared_feature_of_set(d, g, set);
  if (f.vertices.empty()) throw InvariantViolation("connected tetrahedra share no vertex");
  return f.vertices.front();
}

std::vector<VertexId> common_vertices(const TetDecomposition& d, const std::vector<TetId>& set) {
  std::vector<VertexId> common(d.tets[set[0]].v.begin(), d.tets[set[0]].v.end());
  for (std::size_t i = 1; i < set.size(); ++i) {
    std::erase_if(common, [&](VertexId v) { return !d.tets[set[i]].contains(v); });
  }
  std::sort(common.begin(), common.end());
  return common;
}

}  // namespace

bool beacons_connected(const TetDecomposition& d, const std::vector<VertexId>& beacons) {
  if (beacons.size() <= 1) return true;
  std::vector<char> seen(beacons.size(), 0);
  std::vector<std::size_t> stack{0};
  seen[0] = 1;
  while (!stack.empty()) {
    const std::size_t i = stack.back();
    stack.pop_back();
    for (std::size_t j = 0; j < beacons.size(); ++j) {
      if (seen[j]) continue;
      const bool together = std::any_of(d.tets.begin(), d.tets.end(), [&](const Tetrahedron& t) {
        return t.contains(beacons[i]) && t.contains(beacons[j]);
      });
      if (together) {
        seen[j] = 1;
        stack.push_back(j);
      }
    }
  }
  return std::all_of(seen.begin(), seen.end(), [](char c) { return c != 0; });
}

PlacementStep place_base_case(const TetDecomposition& d, const DualGraph& g) {
  const auto& nodes = g.nodes();
  if (nodes.empty()) throw InputError("base case on an empty decomposition");
  if (nodes.size() > 4) throw InputError("base case needs at most four tetrahedra");
  PlacementStep step;
  step.rule = "base";
  step.removed = nodes;
  if (nodes.size() >= 2) step.beacons = {smallest_common(d, g, nodes)};
  return step;
}

TetId select_deepest_leaf(const SpanningTree& tree) {
  if (tree.nodes.size() < 2) throw InputError("deepest leaf needs a tree with two or more nodes");
  TetId best = kNoNode;
  std::size_t best_depth = 0, best_siblings = 0;
  for (TetId t : tree.nodes) {
    if (t == tree.root || !tree.is_leaf(t)) continue;
    const std::size_t depth = tree.depth(t);
    const std::size_t siblings = tree.children[tree.parent[t]].size();
    if (best == kNoNode || depth > best_depth || (depth == best_depth && siblings > best_siblings)) {
      best = t;
      best_depth = depth;
      best_siblings = siblings;
    }
  }
  return best;
}

std::optional<PlacementStep> place_step1(const TetDecomposition& d, const DualGraph& g,
                                         const SpanningTree& tree, TetId leaf) {
  if (tree.nodes.size() <= 4) throw InputError("inductive step needs more than four tetrahedra");
  const TetId s1 = leaf;
  const TetId s2 = tree.parent[s1];
  if (s2 == kNoNode || !tree.is_leaf(s1)) throw InputError("place_step1 expects a non-root leaf");
  const auto& kids2 = tree.children[s2];

  auto one_beacon = [&](std::string rule, std::vector<TetId> four, std::vector<TetId> removed,
                        TetId anchor) {
    PlacementStep step;
    step.rule = std::move(rule);
    step.beacons = {smallest_common(d, g, std::move(four))};
    step.removed = sorted(std::move(removed));
    step.anchor = anchor;
    return step;
  };

  if (kids2.size() == 3) {
    std::vector<TetId> others;
    for (TetId c : kids2) {
      if (c != s1) others.push_back(c);
    }
    return one_beacon("1a", {s1, s2, others[0], others[1]}, {s1, others[0], others[1]}, s2);
  }
  const TetId up2 = tree.parent[s2];
  if (up2 == kNoNode) throw InvariantViolation("leaf-rooted tree has an inner root");
  if (kids2.size() == 2) {
    const TetId s3 = kids2[0] == s1 ? kids2[1] : kids2[0];
    return one_beacon("1b", {s1, s2, s3, up2}, {s1, s2, s3}, up2);
  }
  if (kids2.size() != 1) throw InvariantViolation("tetrahedron with more than three children");

  const TetId s3 = up2;
  const auto& kids3 = tree.children[s3];
  if (kids3.size() == 1) {
    const TetId s4 = tree.parent[s3];
    if (s4 == kNoNode) throw InvariantViolation("tree of three nodes passed the size check");
    return one_beacon("1c", {s1, s2, s3, s4}, {s1, s2, s3}, s4);
  }
  for (TetId c : kids3) {
    if (c != s2 && tree.is_leaf(c)) return one_beacon("1d", {s1, s2, s3, c}, {s1, s2, c}, s3);
  }
  // Every child of s3 now carries exactly one leaf child.
  for (TetId c : kids3) {
    if (tree.children[c].size() != 1 || !tree.is_leaf(tree.children[c][0])) {
      throw InvariantViolation("deepest-leaf selection left an unexpected subtree under " +
                               std::to_string(s3));
    }
  }
  if (kids3.size() == 2) return std::nullopt;
  if (kids3.size() != 3) throw InvariantViolation("tetrahedron with more than three children");

  struct Chain {
    TetId mid, tip;
    std::vector<VertexId> edge;
  };
  std::vector<Chain> chains{{s2, s1, {}}};
  for (TetId c : kids3) {
    if (c != s2) chains.push_back({c, tree.children[c][0], {}});
  }
  for (auto& ch : chains) {
    const SharedFeature f = shared_feature_of_set(d, g, std::vector<TetId>{ch.tip, ch.mid, s3});
    if (f.vertices.size() != 2) throw InvariantViolation("three chained tetrahedra do not share an edge");
    ch.edge = f.vertices;
  }
  const std::array<std::array<int, 2>, 3> pairs{{{0, 1}, {0, 2}, {1, 2}}};
  for (auto [i, j] : pairs) {
    for (VertexId v : chains[i].edge) {
      if (std::find(chains[j].edge.begin(), chains[j].edge.end(), v) == chains[j].edge.end()) continue;
      PlacementStep step;
      step.rule = "1e";
      step.beacons = {v};
      step.removed = sorted({chains[i].mid, chains[i].tip, chains[j].mid, chains[j].tip});
      step.anchor = s3;
      return step;
    }
  }
  throw InvariantViolation("three edges of one tetrahedron with no common vertex among any two");
}

Dichotomy dichotomy_5_over_6(const TetDecomposition& d, const std::array<TetId, 6>& s) {
  const auto five = common_vertices(d, {s[0], s[1], s[2], s[3], s[4]});
  Dichotomy out;
  if (!five.empty()) {
    out.kind = Dichotomy::Kind::SharedVertex;
    out.v = five.front();
    return out;
  }
  const auto i1 = common_vertices(d, {s[2], s[3], s[4], s[5]});
  const auto i2 = common_vertices(d, {s[0], s[1], s[2], s[5]});
  auto try_side = [&](const std::vector<VertexId>& vside, const std::vector<VertexId>& eside, bool mirrored) {
    if (vside.empty() || eside.size() < 2) return false;
    for (VertexId v : vside) {
      if (std::find(eside.begin(), eside.end(), v) != eside.end()) continue;
      out.kind = Dichotomy::Kind::VertexPlusEdge;
      out.v = v;
      out.e = {eside[0], eside[1]};
      out.mirrored = mirrored;
      return true;
    }
    return false;
  };
  if (try_side(i1, i2, false) || try_side(i2, i1, true)) return out;
  throw InvariantViolation("six tetrahedra fit neither case of the dichotomy");
}

namespace {

// Every k-combination of `items` in lexicographic order; stops when `visit` returns false.
void for_each_combination(const std::vector<VertexId>& items, std::size_t k,
                          const std::function<void(const std::vector<VertexId>&)>& visit) {
  if (k > items.size()) return;
  std::vector<std::size_t> idx(k);
  std::iota(idx.begin(), idx.end(), 0);
  std::vector<VertexId> pick(k);
  while (true) {
    for (std::size_t i = 0; i < k; ++i) pick[i] = items[idx[i]];
    visit(pick);
    std::size_t i = k;
    while (i > 0 && idx[i - 1] == items.size() - k + i - 1) --i;
    if (i == 0) return;
    ++idx[i - 1];
    for (std::size_t j = i; j < k; ++j) idx[j] = idx[j - 1] + 1;
  }
}

// Connected subsets of size 2..4 of `nodes` in `g`, collected by growing from each seed.
std::set<std::vector<TetId>> small_connected_subsets(const DualGraph& g, const std::vector<TetId>& nodes) {
  std::set<TetId> allowed(nodes.begin(), nodes.end());
  std::set<std::vector<TetId>> found;
  std::function<void(std::vector<TetId>)> grow = [&](std::vector<TetId> cur) {
    if (cur.size() >= 2 && !found.insert(cur).second) return;
    if (cur.size() == 4) return;
    for (TetId t : cur) {
      for (TetId u : g.neighbors(t)) {
        if (!allowed.count(u) || std::binary_search(cur.begin(), cur.end(), u)) continue;
        auto next = cur;
        next.insert(std::upper_bound(next.begin(), next.end(), u), u);
        grow(next);
      }
    }
  };
  for (TetId t : nodes) grow({t});
  return found;
}

}  // namespace

PlacementStep place_step2(const TetDecomposition& d, const DualGraph& g, const SpanningTree& tree,
                          TetId subroot) {
  const std::vector<TetId> sub = tree.subtree(subroot);
  std::set<VertexId> cand;
  for (const auto& set : small_connected_subsets(g, sub)) {
    for (VertexId v : shared_feature_of_set(d, g, set).vertices) cand.insert(v);
  }
  // The two-chain shape below subroot supplies the dichotomy's vertices too.
  for (TetId s3 : tree.children[subroot]) {
    const auto& k3 = tree.children[s3];
    if (k3.size() != 2) continue;
    const TetId a = k3[0], b = k3[1];
    if (tree.children[a].size() != 1 || tree.children[b].size() != 1) continue;
    const TetId a1 = tree.children[a][0], b1 = tree.children[b][0];
    if (!tree.is_leaf(a1) || !tree.is_leaf(b1)) continue;
    const Dichotomy dc = dichotomy_5_over_6(d, {a1, a, s3, b, b1, subroot});
    cand.insert(dc.v);
    if (dc.kind == Dichotomy::Kind::VertexPlusEdge) cand.insert(dc.e.begin(), dc.e.end());
  }
  const std::vector<VertexId> candidates(cand.begin(), cand.end());
  const bool final_round = subroot == tree.root;

  std::optional<PlacementStep> best;
  for (std::size_t k = 2; k <= std::max<std::size_t>(2, sub.size() / 3) && !best; ++k) {
    for_each_combination(candidates, k, [&](const std::vector<VertexId>& beacons) {
      if (!beacons_connected(d, beacons)) return;
      // Nodes whose whole subtree is covered can go without splitting the tree.
      std::vector<char> full(tree.parent.size(), 0);
      std::function<bool(TetId)> mark = [&](TetId t) {
        bool ok = contains_any(d.tets[t], beacons);
        for (TetId c : tree.children[t]) ok = mark(c) && ok;
        full[t] = ok ? 1 : 0;
        return ok;
      };
      mark(subroot);
      std::vector<TetId> rmax;
      for (TetId t : sub) {
        if (full[t]) rmax.push_back(t);
      }
      std::vector<std::vector<TetId>> options{rmax};
      for (TetId t : rmax) {
        const TetId p = tree.parent[t];
        if (p != kNoNode && full[p] && t != subroot) continue;
        auto less = rmax;
        std::erase(less, t);
        options.push_back(less);
      }
      for (const auto& r : options) {
        if (r.empty()) continue;
        PlacementStep step;
        step.rule = "2";
        step.beacons = beacons;
        step.removed = r;
        if (r.size() == tree.nodes.size()) {
          if (!final_round || k > budget(r.size())) continue;
        } else {
          if (r.size() < 3 * k) continue;
          for (TetId t : tree.nodes) {
            if (!std::binary_search(r.begin(), r.end(), t) && contains_any(d.tets[t], beacons)) {
              step.anchor = t;
              break;
            }
          }
          if (!step.anchor) continue;
        }
        if (!best || step.removed.size() > best->removed.size()) best = step;
      }
    });
  }
  if (!best) {
    throw InvariantViolation("no admissible multi-beacon step below tetrahedron " + std::to_string(subroot));
  }
  return *best;
}

BeaconPlacement place_all(const TetDecomposition& d, std::uint64_t seed) {
  require_valid(d);
  BeaconPlacement out;
  out.m = d.size();
  out.budget = budget(out.m);
  std::vector<TetId> remaining(d.size());
  std::iota(remaining.begin(), remaining.end(), 0);
  while (!remaining.empty()) {
    const DualGraph g = dual_graph(d, remaining);
    PlacementStep step;
    if (remaining.size() <= 4) {
      step = place_base_case(d, g);
    } else {
      const SpanningTree tree = leaf_rooted_spanning_tree(g, seed);
      const TetId leaf = select_deepest_leaf(tree);
      if (auto s1 = place_step1(d, g, tree, leaf)) {
        step = std::move(*s1);
      } else {
        const TetId s6 = tree.parent[tree.parent[tree.parent[leaf]]];
        step = place_step2(d, g, tree, s6);
      }
      if (!tree.remains_connected_without(step.removed)) {
        throw InvariantViolation("step " + step.rule + " splits the spanning tree");
      }
    }
    for (VertexId b : step.beacons) {
      if (std::find(out.beacons.begin(), out.beacons.end(), b) == out.beacons.end()) out.beacons.push_back(b);
    }
    std::vector<TetId> rest;
    std::set_difference(remaining.begin(), remaining.end(), step.removed.begin(), step.removed.end(),
                        std::back_inserter(rest));
    remaining = std::move(rest);
    out.steps.push_back(std::move(step));
  }
  return out;
}

std::vector<std::string> check_certificate(const TetDecomposition& d, const BeaconPlacement& p) {
  std::vector<std::string> problems;
  auto fail = [&](std::size_t i, const std::string& what) {
    problems.push_back("step " + std::to_string(i) + ": " + what);
  };
  if (p.m != d.size()) problems.push_back("certificate is for m=" + std::to_string(p.m));
  std::set<TetId> remaining;
  for (TetId t = 0; t < d.size(); ++t) remaining.insert(t);
  std::vector<VertexId> all;
  for (std::size_t i = 0; i < p.steps.size(); ++i) {
    const PlacementStep& s = p.steps[i];
    const std::size_t k = s.beacons.size();
    if (s.removed.empty()) fail(i, "removes nothing");
    for (VertexId b : s.beacons) {
      if (b >= d.vertices.size()) fail(i, "beacon " + std::to_string(b) + " is not a vertex");
    }
    if (std::any_of(s.beacons.begin(), s.beacons.end(), [&](VertexId b) { return b >= d.vertices.size(); })) {
      continue;
    }
    const std::size_t before = remaining.size();
    for (TetId t : s.removed) {
      if (!remaining.erase(t)) {
        fail(i, "tetrahedron " + std::to_string(t) + " is not present");
        continue;
      }
      if (k == 0) {
        if (before != 1) fail(i, "beaconless step with " + std::to_string(before) + " tetrahedra left");
      } else if (!contains_any(d.tets[t], s.beacons)) {
        fail(i, "removed tetrahedron " + std::to_string(t) + " holds no beacon of the step");
      }
    }
    if (!beacons_connected(d, s.beacons)) fail(i, "beacons are not linked by shared tetrahedra");
    if (remaining.empty()) {
      if (k > budget(s.removed.size())) fail(i, "final step exceeds the budget of what it removes");
    } else {
      if (s.removed.size() < 3 * k) fail(i, "removes fewer than 3k tetrahedra");
      const std::vector<TetId> rest(remaining.begin(), remaining.end());
      if (!dual_graph(d, rest).connected()) fail(i, "remaining tetrahedra are disconnected");
      if (!s.anchor) {
        fail(i, "no anchor tetrahedron");
      } else if (!remaining.count(*s.anchor) || !contains_any(d.tets[*s.anchor], s.beacons)) {
        fail(i, "anchor does not remain with a beacon of the step");
      }
    }
    for (VertexId b : s.beacons) {
      if (std::find(all.begin(), all.end(), b) == all.end()) all.push_back(b);
    }
  }
  if (!remaining.empty()) problems.push_back(std::to_string(remaining.size()) + " tetrahedra never removed");
  if (all != p.beacons) problems.push_back("beacon list does not match the steps");
  if (!d.tets.empty() && all.size() > budget(d.size())) {
    problems.push_back(std::to_string(all.size()) + " beacons exceed the budget " +
                       std::to_string(budget(d.size())));
  }
  if (!beacons_connected(d, all)) problems.push_back("beacons are not linked by shared tetrahedra");
  return problems;
}

}  // namespace beacon
