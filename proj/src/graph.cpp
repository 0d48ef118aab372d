#include "shapereg/graph.hpp"

#include <algorithm>
#include <bit>
#include <cstdint>
#include <map>
#include <numeric>
#include <queue>
#include <set>
#include <stdexcept>

namespace shapereg {

namespace {

std::vector<std::vector<int>> adjacency_lists(const MeshGraph& g) {
  std::vector<std::vector<int>> adj(g.vertex_count);
  for (const auto& [u, v] : g.edges) {
    adj[u].push_back(v);
    adj[v].push_back(u);
  }
  return adj;
}

std::vector<int> vertex_degrees(const MeshGraph& g) {
  std::vector<int> deg(g.vertex_count, 0);
  for (const auto& [u, v] : g.edges) {
    ++deg[u];
    ++deg[v];
  }
  return deg;
}

}  // namespace

MeshGraph build_graph(const Mesh& mesh) {
  // interior mesh edge -> the two triangles sharing it
  std::map<std::pair<int, int>, std::vector<int>> edge_tris;
  for (int m = 0; m < mesh.triangle_count(); ++m)
    for (int e = 0; e < 3; ++e) {
      int a = mesh.triangles(m, e), b = mesh.triangles(m, (e + 1) % 3);
      edge_tris[{std::min(a, b), std::max(a, b)}].push_back(m);
    }

  struct Entry {
    std::array<int, 2> tris;
    std::array<int, 2> nodes;
  };
  std::vector<Entry> interior;
  for (const auto& [nodes, tris] : edge_tris) {
    if (tris.size() > 2)
      throw std::runtime_error("mesh invalid: edge shared by more than two triangles");
    if (tris.size() != 2) continue;
    int u = std::min(tris[0], tris[1]), v = std::max(tris[0], tris[1]);
    interior.push_back({{u, v}, {nodes.first, nodes.second}});
  }
  std::sort(interior.begin(), interior.end(),
            [](const Entry& a, const Entry& b) { return a.tris < b.tris; });

  MeshGraph g;
  g.vertex_count = mesh.triangle_count();
  g.edges.reserve(interior.size());
  g.edge_nodes.reserve(interior.size());
  for (const auto& entry : interior) {
    g.edges.push_back(entry.tris);
    g.edge_nodes.push_back(entry.nodes);
  }
  return g;
}

SparseMatrixI incidence_matrix(const MeshGraph& g) {
  std::vector<Eigen::Triplet<int>> trip;
  trip.reserve(2 * g.edges.size());
  for (int e = 0; e < g.edge_count(); ++e) {
    trip.emplace_back(g.edges[e][0], e, 1);
    trip.emplace_back(g.edges[e][1], e, 1);
  }
  SparseMatrixI m(g.vertex_count, g.edge_count());
  m.setFromTriplets(trip.begin(), trip.end());
  return m;
}

SparseMatrixI adjacency_matrix(const MeshGraph& g) {
  std::vector<Eigen::Triplet<int>> trip;
  trip.reserve(2 * g.edges.size());
  for (const auto& [u, v] : g.edges) {
    trip.emplace_back(u, v, 1);
    trip.emplace_back(v, u, 1);
  }
  SparseMatrixI m(g.vertex_count, g.vertex_count);
  m.setFromTriplets(trip.begin(), trip.end());
  return m;
}

SparseMatrixI degree_matrix(const MeshGraph& g) {
  const auto deg = vertex_degrees(g);
  std::vector<Eigen::Triplet<int>> trip;
  trip.reserve(g.vertex_count);
  for (int v = 0; v < g.vertex_count; ++v)
    if (deg[v] > 0) trip.emplace_back(v, v, deg[v]);
  SparseMatrixI m(g.vertex_count, g.vertex_count);
  m.setFromTriplets(trip.begin(), trip.end());
  return m;
}

SparseMatrixD homogeneity_matrix(const MeshGraph& g) {
  const auto adj = adjacency_lists(g);
  std::vector<Eigen::Triplet<double>> trip;
  for (int v = 0; v < g.vertex_count; ++v) {
    const double w = 1.0 / (1.0 + adj[v].size());
    trip.emplace_back(v, v, w);
    for (int u : adj[v]) trip.emplace_back(v, u, w);
  }
  SparseMatrixD m(g.vertex_count, g.vertex_count);
  m.setFromTriplets(trip.begin(), trip.end());
  return m;
}

SparseMatrixI node_triangle_incidence(const Mesh& mesh) {
  std::vector<Eigen::Triplet<int>> trip;
  trip.reserve(3 * mesh.triangle_count());
  for (int m = 0; m < mesh.triangle_count(); ++m)
    for (int c = 0; c < 3; ++c) trip.emplace_back(mesh.triangles(m, c), m, 1);
  SparseMatrixI out(mesh.node_count(), mesh.triangle_count());
  out.setFromTriplets(trip.begin(), trip.end());
  return out;
}

SparseMatrixI node_edge_incidence(const Mesh& mesh, const MeshGraph& g) {
  if (static_cast<int>(g.edge_nodes.size()) != g.edge_count())
    throw std::invalid_argument("graph carries no mesh node information");
  std::vector<Eigen::Triplet<int>> trip;
  trip.reserve(2 * g.edges.size());
  for (int e = 0; e < g.edge_count(); ++e) {
    trip.emplace_back(g.edge_nodes[e][0], e, 1);
    trip.emplace_back(g.edge_nodes[e][1], e, 1);
  }
  SparseMatrixI out(mesh.node_count(), g.edge_count());
  out.setFromTriplets(trip.begin(), trip.end());
  return out;
}

MeshGraph line_graph(const MeshGraph& g) {
  std::vector<std::vector<int>> incident(g.vertex_count);
  for (int e = 0; e < g.edge_count(); ++e) {
    incident[g.edges[e][0]].push_back(e);
    incident[g.edges[e][1]].push_back(e);
  }
  std::set<std::array<int, 2>> edges;
  for (const auto& list : incident)
    for (size_t i = 0; i < list.size(); ++i)
      for (size_t j = i + 1; j < list.size(); ++j)
        edges.insert({std::min(list[i], list[j]), std::max(list[i], list[j])});

  MeshGraph out;
  out.vertex_count = g.edge_count();
  out.edges.assign(edges.begin(), edges.end());
  return out;
}

int matching_exact_cardinality(const MeshGraph& g) {
  const int n = g.vertex_count;
  if (n > 28) throw std::invalid_argument("exact matching limited to 28 vertices");
  if (n == 0) return 0;

  std::vector<std::uint32_t> adj(n, 0);
  for (const auto& [u, v] : g.edges) {
    adj[u] |= 1u << v;
    adj[v] |= 1u << u;
  }

  std::vector<std::int8_t> memo(std::size_t(1) << n, -1);
  memo[0] = 0;
  auto rec = [&](auto&& self, std::uint32_t mask) -> int {
    if (memo[mask] >= 0) return memo[mask];
    const int v = std::countr_zero(mask);
    const std::uint32_t rest = mask & (mask - 1);
    int best = self(self, rest);  // leave v unmatched
    std::uint32_t cand = adj[v] & rest;
    while (cand) {
      const int u = std::countr_zero(cand);
      cand &= cand - 1;
      best = std::max(best, 1 + self(self, rest & ~(1u << u)));
    }
    memo[mask] = static_cast<std::int8_t>(best);
    return best;
  };
  return rec(rec, (std::uint32_t(1) << n) - 1);
}

namespace {

// Augmenting-path search with blossom contraction; finds one augmenting path
// from root, O(V * E) per call.
struct Matcher {
  int n;
  std::vector<std::vector<int>> adj;
  std::vector<int> match, parent, base;
  std::vector<char> used, blossom;

  explicit Matcher(const MeshGraph& g)
      : n(g.vertex_count),
        adj(adjacency_lists(g)),
        match(n, -1),
        parent(n, -1),
        base(n, 0),
        used(n, 0),
        blossom(n, 0) {}

  int lca(int a, int b) {
    std::vector<char> on_path(n, 0);
    for (;;) {
      a = base[a];
      on_path[a] = 1;
      if (match[a] < 0) break;
      a = parent[match[a]];
    }
    for (;;) {
      b = base[b];
      if (on_path[b]) return b;
      b = parent[match[b]];
    }
  }

  void mark_path(int v, int b, int child) {
    while (base[v] != b) {
      blossom[base[v]] = 1;
      blossom[base[match[v]]] = 1;
      parent[v] = child;
      child = match[v];
      v = parent[match[v]];
    }
  }

  int find_augmenting(int root) {
    std::fill(used.begin(), used.end(), 0);
    std::fill(parent.begin(), parent.end(), -1);
    std::iota(base.begin(), base.end(), 0);
    used[root] = 1;
    std::queue<int> q;
    q.push(root);
    while (!q.empty()) {
      const int v = q.front();
      q.pop();
      for (int to : adj[v]) {
        if (base[v] == base[to] || match[v] == to) continue;
        if (to == root || (match[to] >= 0 && parent[match[to]] >= 0)) {
          const int cur_base = lca(v, to);
          std::fill(blossom.begin(), blossom.end(), 0);
          mark_path(v, cur_base, to);
          mark_path(to, cur_base, v);
          for (int i = 0; i < n; ++i)
            if (blossom[base[i]]) {
              base[i] = cur_base;
              if (!used[i]) {
                used[i] = 1;
                q.push(i);
              }
            }
        } else if (parent[to] < 0) {
          parent[to] = v;
          if (match[to] < 0) return to;
          used[match[to]] = 1;
          q.push(match[to]);
        }
      }
    }
    return -1;
  }

  int run() {
    for (int v = 0; v < n; ++v)
      if (match[v] < 0)
        for (int to : adj[v])
          if (match[to] < 0) {
            match[v] = to;
            match[to] = v;
            break;
          }
    for (int v = 0; v < n; ++v) {
      if (match[v] >= 0) continue;
      int u = find_augmenting(v);
      while (u >= 0) {
        const int pv = parent[u];
        const int ppv = match[pv];
        match[u] = pv;
        match[pv] = u;
        u = ppv;
      }
    }
    int matched = 0;
    for (int v = 0; v < n; ++v)
      if (match[v] >= 0) ++matched;
    return matched / 2;
  }
};

}  // namespace

int matching_augmenting_cardinality(const MeshGraph& g) {
  if (g.vertex_count == 0) return 0;
  Matcher m(g);
  return m.run();
}

MatchingResult max_matching_cardinality(const MeshGraph& g, int brute_force_limit) {
  if (g.vertex_count <= std::min(brute_force_limit, 28))
    return {matching_exact_cardinality(g), true};
  return {matching_augmenting_cardinality(g), false};
}

}  // namespace shapereg
