#pragma once

#include "shapereg/mesh.hpp"

#include <Eigen/Sparse>

#include <array>
#include <sstream>
#include <string>
#include <vector>

namespace shapereg {

using SparseMatrixI = Eigen::SparseMatrix<int, Eigen::RowMajor>;
using SparseMatrixD = Eigen::SparseMatrix<double, Eigen::RowMajor>;

// Undirected simple graph. For a triangulation the vertices are triangles
// and the edges are interior mesh edges (shared by exactly two triangles);
// edge_nodes keeps the underlying mesh node pair of each edge. Derived
// graphs (e.g. line graphs) leave edge_nodes empty.
struct MeshGraph {
  int vertex_count = 0;
  std::vector<std::array<int, 2>> edges;       // (u, v) with u < v, sorted
  std::vector<std::array<int, 2>> edge_nodes;  // mesh nodes per edge

  int edge_count() const { return static_cast<int>(edges.size()); }
};

MeshGraph build_graph(const Mesh& mesh);

SparseMatrixI incidence_matrix(const MeshGraph& g);  // V x E, two 1s per column
SparseMatrixI adjacency_matrix(const MeshGraph& g);  // V x V symmetric
SparseMatrixI degree_matrix(const MeshGraph& g);     // V x V diagonal

// Row m averages vertex m and its neighbours: deg(m) + 1 equal entries of
// value 1 / (deg(m) + 1), so every row sums to one.
SparseMatrixD homogeneity_matrix(const MeshGraph& g);

SparseMatrixI node_triangle_incidence(const Mesh& mesh);  // N x T, three 1s per column
SparseMatrixI node_edge_incidence(const Mesh& mesh, const MeshGraph& g);  // N x E

// Vertices of the result are the edges of g; two are adjacent when the
// edges share an endpoint.
MeshGraph line_graph(const MeshGraph& g);

struct MatchingResult {
  int cardinality = 0;
  bool exact = true;  // false when the heuristic route produced the value
};

// Maximum-cardinality matching. Uses the exponential exact search up to
// brute_force_limit vertices and the augmenting-path algorithm beyond it
// (still optimal, flagged non-exact to keep the routing observable).
MatchingResult max_matching_cardinality(const MeshGraph& g, int brute_force_limit = 24);

int matching_exact_cardinality(const MeshGraph& g);       // bitmask DP, V <= 28
int matching_augmenting_cardinality(const MeshGraph& g);  // greedy + augmenting paths

// "row col value" per structural nonzero, row-major order, one per line.
template <typename Scalar>
std::string format_matrix_triplets(const Eigen::SparseMatrix<Scalar, Eigen::RowMajor>& m) {
  std::ostringstream out;
  for (int row = 0; row < m.outerSize(); ++row)
    for (typename Eigen::SparseMatrix<Scalar, Eigen::RowMajor>::InnerIterator it(m, row); it; ++it)
      out << it.row() << ' ' << it.col() << ' ' << it.value() << '\n';
  return out.str();
}

}  // namespace shapereg
