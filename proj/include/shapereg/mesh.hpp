#pragma once

#include <Eigen/Dense>
#include <string>
#include <string_view>

namespace shapereg {

// Planar triangle mesh. Nodes are 2D coordinates, triangles index into the
// node list. Instances coming out of parse_mesh / generate_plate are valid
// per validate_mesh.
struct Mesh {
  Eigen::Matrix<double, Eigen::Dynamic, 2> nodes;
  Eigen::Matrix<int, Eigen::Dynamic, 3> triangles;

  int node_count() const { return static_cast<int>(nodes.rows()); }
  int triangle_count() const { return static_cast<int>(triangles.rows()); }
};

// Throws std::runtime_error when an invariant is broken: at least one
// triangle, indices in range and pairwise distinct per triangle, no
// duplicate triangles, and no edge shared by more than two triangles.
void validate_mesh(const Mesh& mesh);

// Text format:
//   nodes <N>
//   <x> <y>          (N lines)
//   triangles <T>
//   <i> <j> <k>      (T lines)
// Blank lines and lines starting with '#' are ignored. Parse errors report
// the offending line number.
Mesh parse_mesh(std::string_view text);
Mesh load_mesh(const std::string& path);
std::string format_mesh(const Mesh& mesh);

// Rectangular plate of nx-by-ny unit cells, each cell split into two
// triangles along its lower-left to upper-right diagonal. Node (i, j) has
// index j * (nx + 1) + i; cell (cx, cy) produces triangles 2 * (cy * nx + cx)
// (lower) and the same + 1 (upper).
Mesh generate_plate(int nx, int ny);

// Unsigned triangle areas; throws on zero-area (collinear) triangles.
Eigen::VectorXd triangle_areas(const Mesh& mesh);

}  // namespace shapereg
