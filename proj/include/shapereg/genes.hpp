#pragma once

#include "shapereg/graph.hpp"

#include <cstdint>
#include <string>
#include <string_view>

namespace shapereg {

enum class GeneKind { triangle, basis };

GeneKind parse_gene_kind(const std::string& name);  // "triangle" | "basis"
std::string to_string(GeneKind kind);

// Genes are 0/1 vectors stored with integer entries so incidence products
// stay in exact integer arithmetic. TriangleGene has one bit per triangle,
// BasisGene one bit per interior edge (basis function).
struct TriangleGene {
  Eigen::VectorXi bits;

  static TriangleGene zeros(int n) { return {Eigen::VectorXi::Zero(n)}; }
  static TriangleGene ones(int n) { return {Eigen::VectorXi::Ones(n)}; }
};

struct BasisGene {
  Eigen::VectorXi bits;

  static BasisGene zeros(int n) { return {Eigen::VectorXi::Zero(n)}; }
  static BasisGene ones(int n) { return {Eigen::VectorXi::Ones(n)}; }
};

// 0 stays 0, anything else (negatives included) becomes 1. Accepts any
// integer vector expression, matrix-vector products included.
template <typename Derived>
Eigen::VectorXi boolean_round(const Eigen::MatrixBase<Derived>& v) {
  const typename Derived::PlainObject tmp = v.derived();
  return (tmp.array() != 0).template cast<int>().matrix();
}

// 1 for entries >= 0 (zero included), 0 for negatives.
template <typename Derived>
Eigen::VectorXi heaviside(const Eigen::MatrixBase<Derived>& v) {
  const typename Derived::PlainObject tmp = v.derived();
  return (tmp.array() >= 0).template cast<int>().matrix();
}

Eigen::VectorXi logical_not(const Eigen::VectorXi& bits);
Eigen::VectorXi gene_xor(const Eigen::VectorXi& u, const Eigen::VectorXi& v);

// t = B{M g}: a triangle is enabled when any incident basis function is.
TriangleGene gene_to_triangles(const BasisGene& g, const SparseMatrixI& incidence);

// g = not B{M' t - 2}: a basis function is enabled when both of its
// triangles are. Reconstructions therefore never contain slots.
BasisGene triangles_to_gene(const TriangleGene& t, const SparseMatrixI& incidence);

// Deterministic for a given (length, density, seed); density is the
// probability of a 1 bit.
Eigen::VectorXi random_gene(int length, double density, std::uint64_t seed);

// Stable stream splitter so every (weight, run, purpose) triple gets an
// independent seed from one user-facing seed.
std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t a = 0, std::uint64_t b = 0,
                       std::uint64_t c = 0);

// Gene file format: one line of '0'/'1' characters, optional trailing newline.
Eigen::VectorXi parse_gene(std::string_view text);
Eigen::VectorXi load_gene(const std::string& path);
std::string format_gene(const Eigen::VectorXi& bits);

}  // namespace shapereg
