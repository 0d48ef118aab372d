#include "shapereg/mesh.hpp"

#include <algorithm>
#include <array>
#include <charconv>
#include <cmath>
#include <fstream>
#include <map>
#include <set>
#include <sstream>
#include <stdexcept>
#include <vector>

namespace shapereg {

namespace {

[[noreturn]] void fail(int line_no, const std::string& what) {
  throw std::runtime_error("mesh parse error: line " + std::to_string(line_no) + ": " + what);
}

std::vector<std::string_view> split_tokens(std::string_view line) {
  std::vector<std::string_view> out;
  size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && (line[i] == ' ' || line[i] == '\t' || line[i] == '\r')) ++i;
    size_t start = i;
    while (i < line.size() && line[i] != ' ' && line[i] != '\t' && line[i] != '\r') ++i;
    if (i > start) out.push_back(line.substr(start, i - start));
  }
  return out;
}

int parse_int(std::string_view tok, int line_no) {
  int value = 0;
  auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), value);
  if (ec != std::errc() || ptr != tok.data() + tok.size())
    fail(line_no, "expected integer, got '" + std::string(tok) + "'");
  return value;
}

double parse_double(std::string_view tok, int line_no) {
  double value = 0.0;
  auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), value);
  if (ec != std::errc() || ptr != tok.data() + tok.size())
    fail(line_no, "expected number, got '" + std::string(tok) + "'");
  return value;
}

// Yields non-blank, non-comment lines with their 1-based line numbers.
struct LineReader {
  std::string_view text;
  size_t pos = 0;
  int line_no = 0;

  bool next(std::string_view& line, int& no) {
    while (pos < text.size()) {
      size_t end = text.find('\n', pos);
      if (end == std::string_view::npos) end = text.size();
      std::string_view raw = text.substr(pos, end - pos);
      pos = end + 1;
      ++line_no;
      auto toks = split_tokens(raw);
      if (toks.empty() || toks.front().front() == '#') continue;
      line = raw;
      no = line_no;
      return true;
    }
    return false;
  }
};

std::string format_double(double x) {
  std::array<char, 32> buf;
  auto [ptr, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), x);
  return std::string(buf.data(), ptr);
}

}  // namespace

void validate_mesh(const Mesh& mesh) {
  const int n = mesh.node_count();
  const int t = mesh.triangle_count();
  if (t == 0) throw std::runtime_error("mesh invalid: no triangles");

  std::set<std::array<int, 3>> seen;
  std::map<std::pair<int, int>, int> edge_use;
  for (int m = 0; m < t; ++m) {
    std::array<int, 3> tri = {mesh.triangles(m, 0), mesh.triangles(m, 1), mesh.triangles(m, 2)};
    for (int v : tri)
      if (v < 0 || v >= n)
        throw std::runtime_error("mesh invalid: triangle " + std::to_string(m) +
                                 " references node " + std::to_string(v) + " out of range");
    if (tri[0] == tri[1] || tri[1] == tri[2] || tri[0] == tri[2])
      throw std::runtime_error("mesh invalid: triangle " + std::to_string(m) +
                               " repeats a node (degenerate)");
    std::array<int, 3> key = tri;
    std::sort(key.begin(), key.end());
    if (!seen.insert(key).second)
      throw std::runtime_error("mesh invalid: duplicate triangle " + std::to_string(m));
    for (int e = 0; e < 3; ++e) {
      int a = tri[e], b = tri[(e + 1) % 3];
      ++edge_use[{std::min(a, b), std::max(a, b)}];
    }
  }
  for (const auto& [edge, count] : edge_use)
    if (count > 2)
      throw std::runtime_error("mesh invalid: edge " + std::to_string(edge.first) + "-" +
                               std::to_string(edge.second) + " shared by " +
                               std::to_string(count) + " triangles (non-manifold)");
}

Mesh parse_mesh(std::string_view text) {
  LineReader reader{text};
  std::string_view line;
  int no = 0;

  if (!reader.next(line, no)) fail(reader.line_no + 1, "expected 'nodes <count>'");
  auto head = split_tokens(line);
  if (head.size() != 2 || head[0] != "nodes") fail(no, "expected 'nodes <count>'");
  const int n = parse_int(head[1], no);
  if (n < 3) fail(no, "node count must be at least 3");

  Mesh mesh;
  mesh.nodes.resize(n, 2);
  for (int i = 0; i < n; ++i) {
    if (!reader.next(line, no)) fail(reader.line_no + 1, "expected node coordinates");
    auto toks = split_tokens(line);
    if (toks.size() != 2) fail(no, "expected '<x> <y>'");
    mesh.nodes(i, 0) = parse_double(toks[0], no);
    mesh.nodes(i, 1) = parse_double(toks[1], no);
  }

  if (!reader.next(line, no)) fail(reader.line_no + 1, "expected 'triangles <count>'");
  head = split_tokens(line);
  if (head.size() != 2 || head[0] != "triangles") fail(no, "expected 'triangles <count>'");
  const int t = parse_int(head[1], no);
  if (t < 1) fail(no, "triangle count must be at least 1");

  mesh.triangles.resize(t, 3);
  for (int m = 0; m < t; ++m) {
    if (!reader.next(line, no)) fail(reader.line_no + 1, "expected triangle indices");
    auto toks = split_tokens(line);
    if (toks.size() != 3) fail(no, "expected '<i> <j> <k>'");
    for (int c = 0; c < 3; ++c) mesh.triangles(m, c) = parse_int(toks[c], no);
  }

  if (reader.next(line, no)) fail(no, "unexpected trailing content");

  validate_mesh(mesh);
  return mesh;
}

Mesh load_mesh(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open mesh file: " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_mesh(buf.str());
}

std::string format_mesh(const Mesh& mesh) {
  std::ostringstream out;
  out << "nodes " << mesh.node_count() << '\n';
  for (int i = 0; i < mesh.node_count(); ++i)
    out << format_double(mesh.nodes(i, 0)) << ' ' << format_double(mesh.nodes(i, 1)) << '\n';
  out << "triangles " << mesh.triangle_count() << '\n';
  for (int m = 0; m < mesh.triangle_count(); ++m)
    out << mesh.triangles(m, 0) << ' ' << mesh.triangles(m, 1) << ' ' << mesh.triangles(m, 2)
        << '\n';
  return out.str();
}

Mesh generate_plate(int nx, int ny) {
  if (nx < 1 || ny < 1) throw std::invalid_argument("plate dimensions must be at least 1x1");

  Mesh mesh;
  mesh.nodes.resize((nx + 1) * (ny + 1), 2);
  for (int j = 0; j <= ny; ++j)
    for (int i = 0; i <= nx; ++i) {
      const int id = j * (nx + 1) + i;
      mesh.nodes(id, 0) = i;
      mesh.nodes(id, 1) = j;
    }

  mesh.triangles.resize(2 * nx * ny, 3);
  for (int cy = 0; cy < ny; ++cy)
    for (int cx = 0; cx < nx; ++cx) {
      const int v00 = cy * (nx + 1) + cx;
      const int v10 = v00 + 1;
      const int v01 = v00 + (nx + 1);
      const int v11 = v01 + 1;
      const int m = 2 * (cy * nx + cx);
      mesh.triangles(m, 0) = v00;  // lower: diagonal v00-v11
      mesh.triangles(m, 1) = v10;
      mesh.triangles(m, 2) = v11;
      mesh.triangles(m + 1, 0) = v00;
      mesh.triangles(m + 1, 1) = v11;
      mesh.triangles(m + 1, 2) = v01;
    }

  validate_mesh(mesh);
  return mesh;
}

Eigen::VectorXd triangle_areas(const Mesh& mesh) {
  Eigen::VectorXd areas(mesh.triangle_count());
  for (int m = 0; m < mesh.triangle_count(); ++m) {
    const auto a = mesh.nodes.row(mesh.triangles(m, 0));
    const auto b = mesh.nodes.row(mesh.triangles(m, 1));
    const auto c = mesh.nodes.row(mesh.triangles(m, 2));
    const double cross =
        (b(0) - a(0)) * (c(1) - a(1)) - (b(1) - a(1)) * (c(0) - a(0));
    areas(m) = 0.5 * std::abs(cross);
    if (areas(m) <= 0.0)
      throw std::runtime_error("mesh invalid: triangle " + std::to_string(m) + " has zero area");
  }
  return areas;
}

}  // namespace shapereg
