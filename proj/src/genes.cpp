#include "shapereg/genes.hpp"

#include <fstream>
#include <random>
#include <sstream>
#include <stdexcept>

namespace shapereg {

GeneKind parse_gene_kind(const std::string& name) {
  if (name == "triangle") return GeneKind::triangle;
  if (name == "basis") return GeneKind::basis;
  throw std::invalid_argument("unknown gene kind '" + name + "' (use triangle or basis)");
}

std::string to_string(GeneKind kind) {
  return kind == GeneKind::triangle ? "triangle" : "basis";
}

Eigen::VectorXi logical_not(const Eigen::VectorXi& bits) {
  return (bits.array() == 0).cast<int>().matrix();
}

Eigen::VectorXi gene_xor(const Eigen::VectorXi& u, const Eigen::VectorXi& v) {
  if (u.size() != v.size()) throw std::invalid_argument("gene_xor: length mismatch");
  return (u.array() != v.array()).cast<int>().matrix();
}

TriangleGene gene_to_triangles(const BasisGene& g, const SparseMatrixI& incidence) {
  if (g.bits.size() != incidence.cols())
    throw std::invalid_argument("gene_to_triangles: gene length does not match basis count");
  return {boolean_round(incidence * g.bits)};
}

BasisGene triangles_to_gene(const TriangleGene& t, const SparseMatrixI& incidence) {
  if (t.bits.size() != incidence.rows())
    throw std::invalid_argument("triangles_to_gene: gene length does not match triangle count");
  const Eigen::VectorXi pair_counts = incidence.transpose() * t.bits;
  return {logical_not(boolean_round(
      pair_counts - 2 * Eigen::VectorXi::Ones(pair_counts.size())))};
}

Eigen::VectorXi random_gene(int length, double density, std::uint64_t seed) {
  if (length < 0) throw std::invalid_argument("random_gene: negative length");
  if (!(density >= 0.0 && density <= 1.0))
    throw std::invalid_argument("random_gene: density must be in [0, 1]");
  std::mt19937_64 eng(seed);
  // compare the top 53 bits against density * 2^53: portable across
  // standard libraries, unlike std::bernoulli_distribution
  const auto threshold = static_cast<std::uint64_t>(density * 9007199254740992.0);
  Eigen::VectorXi bits(length);
  for (int i = 0; i < length; ++i) bits[i] = (eng() >> 11) < threshold ? 1 : 0;
  return bits;
}

std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t a, std::uint64_t b, std::uint64_t c) {
  // splitmix64 finalizer over the combined words
  std::uint64_t x = seed;
  for (std::uint64_t word : {a, b, c}) {
    x += 0x9e3779b97f4a7c15ull + word;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
    x ^= x >> 31;
  }
  return x;
}

Eigen::VectorXi parse_gene(std::string_view text) {
  std::vector<int> bits;
  bits.reserve(text.size());
  for (size_t i = 0; i < text.size(); ++i) {
    const char ch = text[i];
    if (ch == '0' || ch == '1') {
      bits.push_back(ch - '0');
    } else if (ch == '\n' || ch == '\r' || ch == ' ' || ch == '\t') {
      continue;
    } else {
      throw std::runtime_error("gene parse error: unexpected character '" +
                               std::string(1, ch) + "' at position " + std::to_string(i));
    }
  }
  if (bits.empty()) throw std::runtime_error("gene parse error: no bits found");
  return Eigen::Map<Eigen::VectorXi>(bits.data(), static_cast<int>(bits.size()));
}

Eigen::VectorXi load_gene(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open gene file: " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_gene(buf.str());
}

std::string format_gene(const Eigen::VectorXi& bits) {
  std::string out;
  out.reserve(bits.size() + 1);
  for (int i = 0; i < bits.size(); ++i) out.push_back(bits[i] ? '1' : '0');
  out.push_back('\n');
  return out;
}

}  // namespace shapereg
