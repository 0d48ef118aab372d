#pragma once

#include "shapereg/genes.hpp"

#include <json.hpp>

#include <optional>
#include <string>
#include <vector>

namespace shapereg {

// Everything the metrics need about a mesh, built once and shared read-only
// across evaluations.
struct MeshContext {
  Mesh mesh;
  MeshGraph graph;          // vertices are triangles
  MeshGraph line;           // line graph: vertices are basis functions
  Eigen::VectorXd areas;    // per-triangle area
  double total_area = 0.0;
  SparseMatrixI incidence;  // T x B
  SparseMatrixI node_tri;   // N x T
  SparseMatrixI node_edge;  // N x B
  SparseMatrixD hom_tri;    // homogeneity matrix of graph
  SparseMatrixD hom_basis;  // homogeneity matrix of line
  double basis_area = 0.0;  // area covered by the all-ones basis gene

  int triangle_count() const { return mesh.triangle_count(); }
  int basis_count() const { return graph.edge_count(); }

  static MeshContext build(Mesh mesh);
};

struct MetricsReport {
  std::string encoding;
  double r_area = 0.0;
  double r_point = 0.0;
  double r_hom = 0.0;
  std::optional<double> r_slot;  // basis encoding only
  int problematic_nodes = 0;
  std::optional<int> slots;  // basis encoding only
  std::vector<std::string> flags;
};

nlohmann::ordered_json report_to_json(const MetricsReport& report);

// Enabled area over total area, in [0, 1].
double r_area(const TriangleGene& t, const Eigen::VectorXd& areas);
double r_area(const BasisGene& g, const Eigen::VectorXd& areas, const SparseMatrixI& incidence);

// Entry n is the number of enabled triangles at node n minus the number of
// enabled basis functions there, i.e. the count of edge-connected fans
// meeting at the node (zero for a fully enabled interior ring). A value
// >= 2 means node n joins otherwise separate pieces at a single point.
Eigen::VectorXi point_vector(const TriangleGene& t, const BasisGene& g_reconstructed,
                             const SparseMatrixI& node_tri, const SparseMatrixI& node_edge);

double r_point(const TriangleGene& t, const MeshContext& ctx);
double r_point(const BasisGene& g, const MeshContext& ctx);

// Sum over rows of the smallest achievable homogeneity mismatch: a row with
// even closed neighbourhood can reach zero, an odd one is stuck at 1/size.
double hom_normalization(const SparseMatrixD& hom);

// 1 is perfectly dithered (every neighbourhood half enabled), 0 is uniform.
double r_hom(const TriangleGene& t, const SparseMatrixD& hom_tri);
double r_hom(const BasisGene& g, const SparseMatrixD& hom_basis);

// A slot is a disabled basis function whose two triangles are both enabled
// (the structure touches itself along an edge without being connected there).
Eigen::VectorXi slot_gene(const BasisGene& g, const SparseMatrixI& incidence);
int slot_count(const BasisGene& g, const SparseMatrixI& incidence);
double r_slot(const BasisGene& g, const SparseMatrixI& incidence, int triangle_count);

MetricsReport evaluate_all(const MeshContext& ctx, const TriangleGene& t);
MetricsReport evaluate_all(const MeshContext& ctx, const BasisGene& g);

}  // namespace shapereg
