#include "shapereg/svg.hpp"

#include <algorithm>
#include <array>
#include <charconv>
#include <sstream>
#include <stdexcept>

namespace shapereg {

void RenderStyle::validate() const {
  if (!(canvas > 0.0)) throw std::invalid_argument("render style: canvas size must be positive");
  if (enabled_fill == disabled_fill)
    throw std::invalid_argument("render style: enabled and disabled fills must differ");
}

namespace {

std::string num(double x) {
  std::array<char, 32> buf;
  auto [ptr, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), x);
  return std::string(buf.data(), ptr);
}

std::string escape_xml(const std::string& s) {
  std::string out;
  out.reserve(s.size());
  for (char ch : s) {
    switch (ch) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      default: out.push_back(ch);
    }
  }
  return out;
}

struct Mapper {
  double min_x, min_y, scale, margin, height;

  double x(double wx) const { return margin + (wx - min_x) * scale; }
  double y(double wy) const { return height - margin - (wy - min_y) * scale; }
};

}  // namespace

std::string render_gene_svg(const MeshContext& ctx, const Eigen::VectorXi& bits, GeneKind kind,
                            const RenderStyle& style) {
  style.validate();

  TriangleGene t{bits};
  Eigen::VectorXi slots;
  if (kind == GeneKind::basis) {
    const BasisGene g{bits};
    t = gene_to_triangles(g, ctx.incidence);
    slots = slot_gene(g, ctx.incidence);
  } else if (bits.size() != ctx.triangle_count()) {
    throw std::invalid_argument("render: gene length does not match triangle count");
  }

  const Eigen::VectorXi p =
      point_vector(t, triangles_to_gene(t, ctx.incidence), ctx.node_tri, ctx.node_edge);

  const double min_x = ctx.mesh.nodes.col(0).minCoeff();
  const double max_x = ctx.mesh.nodes.col(0).maxCoeff();
  const double min_y = ctx.mesh.nodes.col(1).minCoeff();
  const double max_y = ctx.mesh.nodes.col(1).maxCoeff();
  const double span = std::max({max_x - min_x, max_y - min_y, 1e-9});
  const double margin = 0.04 * style.canvas;
  const double scale = (style.canvas - 2.0 * margin) / span;
  const double width = 2.0 * margin + (max_x - min_x) * scale;
  const double height = 2.0 * margin + (max_y - min_y) * scale;
  const Mapper map{min_x, min_y, scale, margin, height};

  std::ostringstream svg;
  svg << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
  svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << num(width) << "\" height=\""
      << num(height) << "\" viewBox=\"0 0 " << num(width) << ' ' << num(height) << "\">\n";

  for (int m = 0; m < ctx.triangle_count(); ++m) {
    svg << "<polygon class=\"tri\" points=\"";
    for (int c = 0; c < 3; ++c) {
      const int node = ctx.mesh.triangles(m, c);
      if (c) svg << ' ';
      svg << num(map.x(ctx.mesh.nodes(node, 0))) << ',' << num(map.y(ctx.mesh.nodes(node, 1)));
    }
    svg << "\" fill=\"" << escape_xml(t.bits[m] ? style.enabled_fill : style.disabled_fill)
        << "\" stroke=\"" << escape_xml(style.mesh_stroke) << "\" stroke-width=\"1\"/>\n";
  }

  for (int e = 0; e < slots.size(); ++e) {
    if (!slots[e]) continue;
    const auto& nodes = ctx.graph.edge_nodes[e];
    svg << "<line class=\"slot\" x1=\"" << num(map.x(ctx.mesh.nodes(nodes[0], 0))) << "\" y1=\""
        << num(map.y(ctx.mesh.nodes(nodes[0], 1))) << "\" x2=\""
        << num(map.x(ctx.mesh.nodes(nodes[1], 0))) << "\" y2=\""
        << num(map.y(ctx.mesh.nodes(nodes[1], 1))) << "\" stroke=\""
        << escape_xml(style.slot_stroke) << "\" stroke-width=\"4\" stroke-linecap=\"round\"/>\n";
  }

  for (int n = 0; n < p.size(); ++n) {
    if (p[n] < 2) continue;
    svg << "<circle class=\"pointnode\" cx=\"" << num(map.x(ctx.mesh.nodes(n, 0))) << "\" cy=\""
        << num(map.y(ctx.mesh.nodes(n, 1))) << "\" r=\"" << num(0.012 * style.canvas)
        << "\" fill=\"none\" stroke=\"" << escape_xml(style.node_stroke)
        << "\" stroke-width=\"2\"/>\n";
  }

  svg << "</svg>\n";
  return svg.str();
}

std::string render_frontier_svg(const std::vector<Eigen::VectorXd>& points,
                                const std::vector<bool>& nondominated, int axis_x, int axis_y,
                                const std::string& label_x, const std::string& label_y,
                                const RenderStyle& style) {
  style.validate();
  if (points.empty()) throw std::invalid_argument("render: no points to plot");
  if (nondominated.size() != points.size())
    throw std::invalid_argument("render: dominance flags do not match point count");
  for (const auto& p : points)
    if (axis_x < 0 || axis_y < 0 || axis_x >= p.size() || axis_y >= p.size())
      throw std::invalid_argument("render: axis index out of range");

  double min_x = points[0][axis_x], max_x = points[0][axis_x];
  double min_y = points[0][axis_y], max_y = points[0][axis_y];
  for (const auto& p : points) {
    min_x = std::min(min_x, p[axis_x]);
    max_x = std::max(max_x, p[axis_x]);
    min_y = std::min(min_y, p[axis_y]);
    max_y = std::max(max_y, p[axis_y]);
  }
  if (max_x - min_x <= 0.0) {
    min_x -= 0.5;
    max_x += 0.5;
  }
  if (max_y - min_y <= 0.0) {
    min_y -= 0.5;
    max_y += 0.5;
  }

  const double size = style.canvas;
  const double left = 0.1 * size, right = 0.04 * size, top = 0.04 * size, bottom = 0.1 * size;
  const double plot_w = size - left - right;
  const double plot_h = size - top - bottom;
  auto px = [&](double v) { return left + (v - min_x) / (max_x - min_x) * plot_w; };
  auto py = [&](double v) { return top + plot_h - (v - min_y) / (max_y - min_y) * plot_h; };

  std::ostringstream svg;
  svg << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
  svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << num(size) << "\" height=\""
      << num(size) << "\" viewBox=\"0 0 " << num(size) << ' ' << num(size) << "\">\n";
  svg << "<rect x=\"" << num(left) << "\" y=\"" << num(top) << "\" width=\"" << num(plot_w)
      << "\" height=\"" << num(plot_h) << "\" fill=\"none\" stroke=\""
      << escape_xml(style.mesh_stroke) << "\"/>\n";

  const double font = std::max(10.0, 0.02 * size);
  svg << "<text x=\"" << num(left + plot_w / 2) << "\" y=\"" << num(size - 0.02 * size)
      << "\" font-family=\"sans-serif\" font-size=\"" << num(font)
      << "\" text-anchor=\"middle\">" << escape_xml(label_x) << "</text>\n";
  svg << "<text x=\"" << num(0.03 * size) << "\" y=\"" << num(top + plot_h / 2)
      << "\" font-family=\"sans-serif\" font-size=\"" << num(font)
      << "\" text-anchor=\"middle\" transform=\"rotate(-90 " << num(0.03 * size) << ' '
      << num(top + plot_h / 2) << ")\">" << escape_xml(label_y) << "</text>\n";

  // frontier polyline in x order
  std::vector<int> front;
  for (int i = 0; i < static_cast<int>(points.size()); ++i)
    if (nondominated[i]) front.push_back(i);
  std::sort(front.begin(), front.end(), [&](int a, int b) {
    return std::pair(points[a][axis_x], points[a][axis_y]) <
           std::pair(points[b][axis_x], points[b][axis_y]);
  });
  if (front.size() >= 2) {
    svg << "<polyline class=\"front\" points=\"";
    for (size_t i = 0; i < front.size(); ++i) {
      if (i) svg << ' ';
      svg << num(px(points[front[i]][axis_x])) << ',' << num(py(points[front[i]][axis_y]));
    }
    svg << "\" fill=\"none\" stroke=\"" << escape_xml(style.slot_stroke)
        << "\" stroke-width=\"1.5\"/>\n";
  }

  for (int i = 0; i < static_cast<int>(points.size()); ++i) {
    svg << "<circle class=\"marker\" cx=\"" << num(px(points[i][axis_x])) << "\" cy=\""
        << num(py(points[i][axis_y])) << "\" r=\"" << num(0.007 * size) << "\" fill=\""
        << escape_xml(nondominated[i] ? style.slot_stroke : style.mesh_stroke) << "\"/>\n";
  }

  svg << "</svg>\n";
  return svg.str();
}

}  // namespace shapereg
