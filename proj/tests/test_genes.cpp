#include "shapereg/genes.hpp"

#include <doctest.h>

#include "oracles.hpp"

using namespace shapereg;

namespace {

Eigen::VectorXi vec(std::initializer_list<int> values) {
  Eigen::VectorXi v(static_cast<int>(values.size()));
  int i = 0;
  for (int x : values) v[i++] = x;
  return v;
}

}  // namespace

TEST_CASE("boolean_round maps every nonzero to one") {
  CHECK(boolean_round(vec({-2, -1, 0, 1, 5})) == vec({1, 1, 0, 1, 1}));
}

TEST_CASE("heaviside keeps zero at one") {
  CHECK(heaviside(vec({-3, -1, 0, 2})) == vec({0, 0, 1, 1}));
}

TEST_CASE("heaviside splits the integers exactly once") {
  std::mt19937_64 eng(5);
  Eigen::VectorXi v(200);
  for (int i = 0; i < v.size(); ++i) v[i] = static_cast<int>(eng() % 21) - 10;
  const Eigen::VectorXi sum = heaviside(v) + heaviside((-v.array() - 1).matrix());
  CHECK(sum == Eigen::VectorXi::Ones(v.size()));
}

TEST_CASE("gene_xor and logical_not behave on bits") {
  CHECK(gene_xor(vec({0, 0, 1, 1}), vec({0, 1, 0, 1})) == vec({0, 1, 1, 0}));
  CHECK(logical_not(vec({0, 1, 1, 0})) == vec({1, 0, 0, 1}));
  CHECK_THROWS_AS(gene_xor(vec({1}), vec({1, 0})), std::invalid_argument);
}

TEST_CASE("gene conversions on the 2x1 plate match the hand tables") {
  const MeshGraph g = build_graph(generate_plate(2, 1));
  const SparseMatrixI m = incidence_matrix(g);

  CHECK(gene_to_triangles(BasisGene{vec({1, 0, 0})}, m).bits == vec({1, 1, 0, 0}));
  CHECK(gene_to_triangles(BasisGene{vec({1, 0, 1})}, m).bits == vec({1, 1, 1, 1}));
  CHECK(gene_to_triangles(BasisGene{vec({0, 0, 0})}, m).bits == vec({0, 0, 0, 0}));

  CHECK(triangles_to_gene(TriangleGene{vec({1, 1, 1, 1})}, m).bits == vec({1, 1, 1}));
  CHECK(triangles_to_gene(TriangleGene{vec({1, 1, 0, 0})}, m).bits == vec({1, 0, 0}));
  CHECK(triangles_to_gene(TriangleGene{vec({1, 0, 0, 0})}, m).bits == vec({0, 0, 0}));

  CHECK_THROWS_AS(gene_to_triangles(BasisGene{vec({1, 0})}, m), std::invalid_argument);
  CHECK_THROWS_AS(triangles_to_gene(TriangleGene{vec({1, 0})}, m), std::invalid_argument);
}

TEST_CASE("basis-to-triangle round trips only ever grow the basis gene") {
  const MeshGraph g = build_graph(generate_plate(4, 3));
  const SparseMatrixI m = incidence_matrix(g);
  for (int trial = 0; trial < 50; ++trial) {
    const BasisGene gene{random_gene(g.edge_count(), 0.4, 900 + trial)};
    const TriangleGene t = gene_to_triangles(gene, m);
    const BasisGene closed = triangles_to_gene(t, m);
    CHECK((closed.bits.array() >= gene.bits.array()).all());
    // closing the gene does not change the triangles it spans
    CHECK(gene_to_triangles(closed, m).bits == t.bits);
  }
}

TEST_CASE("triangle-to-basis round trips only ever shrink the triangle gene") {
  const MeshGraph g = build_graph(generate_plate(4, 3));
  const SparseMatrixI m = incidence_matrix(g);
  for (int trial = 0; trial < 50; ++trial) {
    const TriangleGene t{random_gene(g.vertex_count, 0.5, 4000 + trial)};
    const TriangleGene back = gene_to_triangles(triangles_to_gene(t, m), m);
    CHECK((back.bits.array() <= t.bits.array()).all());
  }
}

TEST_CASE("random_gene is deterministic and respects density") {
  const Eigen::VectorXi a = random_gene(64, 0.5, 123);
  const Eigen::VectorXi b = random_gene(64, 0.5, 123);
  const Eigen::VectorXi c = random_gene(64, 0.5, 124);
  CHECK(a == b);
  CHECK(a != c);
  CHECK(((a.array() == 0) || (a.array() == 1)).all());

  CHECK(random_gene(32, 0.0, 7) == Eigen::VectorXi::Zero(32));
  CHECK(random_gene(32, 1.0, 7) == Eigen::VectorXi::Ones(32));

  const Eigen::VectorXi big = random_gene(20000, 0.5, 11);
  const double mean = big.cast<double>().mean();
  CHECK(mean > 0.45);
  CHECK(mean < 0.55);

  CHECK_THROWS_AS(random_gene(8, 1.5, 0), std::invalid_argument);
  CHECK_THROWS_AS(random_gene(-1, 0.5, 0), std::invalid_argument);
}

TEST_CASE("mix_seed separates streams") {
  CHECK(mix_seed(1, 2, 3, 4) == mix_seed(1, 2, 3, 4));
  CHECK(mix_seed(1, 2, 3, 4) != mix_seed(1, 2, 3, 5));
  CHECK(mix_seed(1, 2, 3, 4) != mix_seed(1, 2, 4, 3));
  CHECK(mix_seed(1, 0, 0, 0) != mix_seed(2, 0, 0, 0));
}

TEST_CASE("gene files are a single line of bits") {
  CHECK(parse_gene("0110") == vec({0, 1, 1, 0}));
  CHECK(parse_gene("1010\n") == vec({1, 0, 1, 0}));
  CHECK(format_gene(vec({1, 0, 1})) == "101\n");
  CHECK(parse_gene(format_gene(vec({1, 1, 0, 1}))) == vec({1, 1, 0, 1}));
  CHECK_THROWS_WITH(parse_gene("10x1"), doctest::Contains("position 2"));
  CHECK_THROWS_AS(parse_gene(""), std::runtime_error);
  CHECK_THROWS_AS(load_gene("/nonexistent/gene.txt"), std::runtime_error);
}

TEST_CASE("gene kind names parse both ways") {
  CHECK(parse_gene_kind("triangle") == GeneKind::triangle);
  CHECK(parse_gene_kind("basis") == GeneKind::basis);
  CHECK(to_string(GeneKind::basis) == "basis");
  CHECK_THROWS_AS(parse_gene_kind("edges"), std::invalid_argument);
}
