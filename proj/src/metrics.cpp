#include "shapereg/metrics.hpp"

#include <cmath>
#include <stdexcept>

namespace shapereg {

namespace {

constexpr const char* kFlagAreaDenom = "r_area_denominator_zero";
constexpr const char* kFlagPointDenom = "r_point_denominator_zero";
constexpr const char* kFlagHomDenom = "r_hom_denominator_zero";
constexpr const char* kFlagSlotDenom = "r_slot_denominator_zero";
constexpr const char* kFlagSlotAboveOne = "r_slot_above_one";

void check_length(Eigen::Index got, Eigen::Index want, const char* what) {
  if (got != want)
    throw std::invalid_argument(std::string(what) + ": gene length " + std::to_string(got) +
                                " does not match " + std::to_string(want));
}

// Numerator and denominator summed in the same sequential order with
// term-wise num <= den, so rounding keeps the quotient in [0, 1] and the
// extremes land exactly on 0 and 1.
struct AreaRatio {
  double num = 0.0;
  double den = 0.0;
};

AreaRatio area_ratio(const Eigen::VectorXd& areas, const Eigen::VectorXi& mask,
                     const Eigen::VectorXi& reference) {
  AreaRatio r;
  for (int i = 0; i < areas.size(); ++i) {
    if (mask[i]) r.num += areas[i];
    if (reference[i]) r.den += areas[i];
  }
  return r;
}

struct PointStats {
  Eigen::VectorXi p;
  int problematic = 0;  // entries >= 2
  int active = 0;       // entries >= 1
};

PointStats point_stats(const TriangleGene& t, const MeshContext& ctx) {
  const BasisGene g = triangles_to_gene(t, ctx.incidence);
  PointStats s;
  s.p = point_vector(t, g, ctx.node_tri, ctx.node_edge);
  for (int i = 0; i < s.p.size(); ++i) {
    if (s.p[i] >= 1) ++s.active;
    if (s.p[i] >= 2) ++s.problematic;
  }
  return s;
}

double hom_row_minimum(int closed_size) {
  return closed_size % 2 == 0 ? 0.0 : 1.0 / closed_size;
}

struct HomStats {
  double num = 0.0;  // count - sum of row mismatches
  double den = 0.0;  // count - sum of row minima
};

// Row mismatch |2 H_m t - 1| reduces to |2j - c| / c with c the closed
// neighbourhood size and j its enabled count; evaluating the integer form
// keeps uniform genes at exactly 0 and accumulating mismatch and minimum in
// lockstep keeps the ratio within [0, 1].
HomStats hom_stats(const Eigen::VectorXi& bits, const SparseMatrixD& hom) {
  double loss = 0.0;
  double norm = 0.0;
  for (int m = 0; m < hom.outerSize(); ++m) {
    int closed = 0;
    int enabled = 0;
    for (SparseMatrixD::InnerIterator it(hom, m); it; ++it) {
      ++closed;
      enabled += bits[it.col()];
    }
    loss += std::abs(2 * enabled - closed) / static_cast<double>(closed);
    norm += hom_row_minimum(closed);
  }
  const auto count = static_cast<double>(hom.rows());
  return {count - loss, count - norm};
}

double r_hom_impl(const Eigen::VectorXi& bits, const SparseMatrixD& hom, bool& degenerate) {
  check_length(bits.size(), hom.rows(), "r_hom");
  const HomStats s = hom_stats(bits, hom);
  degenerate = s.den <= 0.0;
  return degenerate ? 0.0 : s.num / s.den;
}

double r_point_impl(const PointStats& s, bool& degenerate) {
  degenerate = s.active == 0;
  return degenerate ? 0.0 : static_cast<double>(s.problematic) / s.active;
}

double r_slot_impl(int slots, int basis_count, int triangle_count, bool& degenerate) {
  const int den = basis_count - triangle_count / 2;
  degenerate = den <= 0;
  return degenerate ? 0.0 : static_cast<double>(slots) / den;
}

}  // namespace

MeshContext MeshContext::build(Mesh mesh) {
  validate_mesh(mesh);
  MeshContext ctx;
  ctx.mesh = std::move(mesh);
  ctx.areas = triangle_areas(ctx.mesh);
  ctx.graph = build_graph(ctx.mesh);
  ctx.line = line_graph(ctx.graph);
  ctx.incidence = incidence_matrix(ctx.graph);
  ctx.node_tri = node_triangle_incidence(ctx.mesh);
  ctx.node_edge = node_edge_incidence(ctx.mesh, ctx.graph);
  ctx.hom_tri = homogeneity_matrix(ctx.graph);
  ctx.hom_basis = homogeneity_matrix(ctx.line);

  const Eigen::VectorXi reachable =
      boolean_round(ctx.incidence * Eigen::VectorXi::Ones(ctx.basis_count()));
  ctx.total_area = 0.0;
  ctx.basis_area = 0.0;
  for (int i = 0; i < ctx.areas.size(); ++i) {
    ctx.total_area += ctx.areas[i];
    if (reachable[i]) ctx.basis_area += ctx.areas[i];
  }
  return ctx;
}

double r_area(const TriangleGene& t, const Eigen::VectorXd& areas) {
  check_length(t.bits.size(), areas.size(), "r_area");
  const AreaRatio r = area_ratio(areas, t.bits, Eigen::VectorXi::Ones(areas.size()));
  if (r.den <= 0.0) throw std::invalid_argument("r_area: total area is zero");
  return r.num / r.den;
}

double r_area(const BasisGene& g, const Eigen::VectorXd& areas, const SparseMatrixI& incidence) {
  check_length(g.bits.size(), incidence.cols(), "r_area");
  const Eigen::VectorXi mask = gene_to_triangles(g, incidence).bits;
  const Eigen::VectorXi reference =
      boolean_round(incidence * Eigen::VectorXi::Ones(incidence.cols()));
  const AreaRatio r = area_ratio(areas, mask, reference);
  return r.den <= 0.0 ? 0.0 : r.num / r.den;
}

Eigen::VectorXi point_vector(const TriangleGene& t, const BasisGene& g_reconstructed,
                             const SparseMatrixI& node_tri, const SparseMatrixI& node_edge) {
  check_length(t.bits.size(), node_tri.cols(), "point_vector");
  check_length(g_reconstructed.bits.size(), node_edge.cols(), "point_vector");
  if (node_tri.rows() != node_edge.rows())
    throw std::invalid_argument("point_vector: incidence row counts differ");
  return node_tri * t.bits - node_edge * g_reconstructed.bits;
}

double r_point(const TriangleGene& t, const MeshContext& ctx) {
  check_length(t.bits.size(), ctx.triangle_count(), "r_point");
  bool degenerate = false;
  return r_point_impl(point_stats(t, ctx), degenerate);
}

double r_point(const BasisGene& g, const MeshContext& ctx) {
  check_length(g.bits.size(), ctx.basis_count(), "r_point");
  bool degenerate = false;
  return r_point_impl(point_stats(gene_to_triangles(g, ctx.incidence), ctx), degenerate);
}

double hom_normalization(const SparseMatrixD& hom) {
  double norm = 0.0;
  for (int m = 0; m < hom.outerSize(); ++m) {
    int closed = 0;
    for (SparseMatrixD::InnerIterator it(hom, m); it; ++it) ++closed;
    norm += hom_row_minimum(closed);
  }
  return norm;
}

double r_hom(const TriangleGene& t, const SparseMatrixD& hom_tri) {
  bool degenerate = false;
  return r_hom_impl(t.bits, hom_tri, degenerate);
}

double r_hom(const BasisGene& g, const SparseMatrixD& hom_basis) {
  bool degenerate = false;
  return r_hom_impl(g.bits, hom_basis, degenerate);
}

Eigen::VectorXi slot_gene(const BasisGene& g, const SparseMatrixI& incidence) {
  check_length(g.bits.size(), incidence.cols(), "slot_gene");
  const BasisGene closed = triangles_to_gene(gene_to_triangles(g, incidence), incidence);
  return gene_xor(g.bits, closed.bits);
}

int slot_count(const BasisGene& g, const SparseMatrixI& incidence) {
  return slot_gene(g, incidence).sum();
}

double r_slot(const BasisGene& g, const SparseMatrixI& incidence, int triangle_count) {
  bool degenerate = false;
  return r_slot_impl(slot_count(g, incidence), static_cast<int>(incidence.cols()),
                     triangle_count, degenerate);
}

MetricsReport evaluate_all(const MeshContext& ctx, const TriangleGene& t) {
  check_length(t.bits.size(), ctx.triangle_count(), "evaluate_all");
  MetricsReport report;
  report.encoding = to_string(GeneKind::triangle);
  report.r_area = r_area(t, ctx.areas);

  const PointStats stats = point_stats(t, ctx);
  bool point_degenerate = false;
  report.r_point = r_point_impl(stats, point_degenerate);
  report.problematic_nodes = stats.problematic;
  if (point_degenerate) report.flags.push_back(kFlagPointDenom);

  bool hom_degenerate = false;
  report.r_hom = r_hom_impl(t.bits, ctx.hom_tri, hom_degenerate);
  if (hom_degenerate) report.flags.push_back(kFlagHomDenom);
  return report;
}

MetricsReport evaluate_all(const MeshContext& ctx, const BasisGene& g) {
  check_length(g.bits.size(), ctx.basis_count(), "evaluate_all");
  MetricsReport report;
  report.encoding = to_string(GeneKind::basis);

  const TriangleGene induced = gene_to_triangles(g, ctx.incidence);
  report.r_area = r_area(g, ctx.areas, ctx.incidence);
  if (ctx.basis_area <= 0.0) report.flags.push_back(kFlagAreaDenom);

  const PointStats stats = point_stats(induced, ctx);
  bool point_degenerate = false;
  report.r_point = r_point_impl(stats, point_degenerate);
  report.problematic_nodes = stats.problematic;
  if (point_degenerate) report.flags.push_back(kFlagPointDenom);

  bool hom_degenerate = false;
  report.r_hom = r_hom_impl(g.bits, ctx.hom_basis, hom_degenerate);
  if (hom_degenerate) report.flags.push_back(kFlagHomDenom);

  const int slots = slot_count(g, ctx.incidence);
  bool slot_degenerate = false;
  const double ratio = r_slot_impl(slots, ctx.basis_count(), ctx.triangle_count(), slot_degenerate);
  report.slots = slots;
  report.r_slot = ratio;
  if (slot_degenerate) report.flags.push_back(kFlagSlotDenom);
  if (ratio > 1.0) report.flags.push_back(kFlagSlotAboveOne);
  return report;
}

nlohmann::ordered_json report_to_json(const MetricsReport& report) {
  nlohmann::ordered_json j;
  j["schema"] = 1;
  j["encoding"] = report.encoding;
  j["r_area"] = report.r_area;
  j["r_point"] = report.r_point;
  j["r_hom"] = report.r_hom;
  j["r_slot"] = report.r_slot ? nlohmann::ordered_json(*report.r_slot)
                              : nlohmann::ordered_json(nullptr);
  j["problematic_nodes"] = report.problematic_nodes;
  j["slots"] = report.slots ? nlohmann::ordered_json(*report.slots)
                            : nlohmann::ordered_json(nullptr);
  j["flags"] = report.flags;
  return j;
}

}  // namespace shapereg
