#pragma once

#include "shapereg/metrics.hpp"

namespace shapereg {

struct RenderStyle {
  std::string enabled_fill = "#f4b942";
  std::string disabled_fill = "#f7f7f7";
  std::string mesh_stroke = "#9a9a9a";
  std::string slot_stroke = "#d62728";
  std::string node_stroke = "#1f77b4";
  double canvas = 640.0;  // longer image side, px

  void validate() const;  // positive canvas, enabled/disabled fills distinct
};

// Mesh with enabled triangles filled, slots (basis genes only) drawn as
// thick edge segments and problematic nodes circled.
std::string render_gene_svg(const MeshContext& ctx, const Eigen::VectorXi& bits,
                            GeneKind kind, const RenderStyle& style);

// 2D scatter of objective vectors (axes pick the columns); nondominated
// points are highlighted and connected in axis-x order.
std::string render_frontier_svg(const std::vector<Eigen::VectorXd>& points,
                                const std::vector<bool>& nondominated, int axis_x, int axis_y,
                                const std::string& label_x, const std::string& label_y,
                                const RenderStyle& style);

}  // namespace shapereg
