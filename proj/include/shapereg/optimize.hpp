#pragma once

#include "shapereg/metrics.hpp"

#include <array>
#include <functional>

namespace shapereg {

using ObjectiveFn = std::function<double(const Eigen::VectorXi&)>;

struct ObjectiveTerm {
  std::string name;
  ObjectiveFn fn;
};

// Weighted sum of terms, minimized. Weights must be finite and nonnegative,
// one per term.
struct ObjectiveSpec {
  std::vector<ObjectiveTerm> terms;
  Eigen::VectorXd weights;

  void validate() const;
};

double scalarize(const ObjectiveSpec& spec, const Eigen::VectorXi& gene);

inline constexpr int kRestartStep = -1;

struct SearchStep {
  int bit = 0;  // flipped bit index, or kRestartStep for a random restart
  double value = 0.0;
};

struct SearchResult {
  Eigen::VectorXi best;
  double best_value = 0.0;
  std::vector<SearchStep> trace;
  long long evaluations = 0;
};

// Steepest-descent single-bit flips: each sweep evaluates every flippable
// bit and takes the best strict improvement (lowest index wins ties); a
// stuck search restarts from a fresh density-0.5 random gene. The budget
// counts objective evaluations; budget 0 returns the initial gene. Bits
// set in `pinned` are forced to 1 and never flipped.
SearchResult local_search(const ObjectiveSpec& spec, Eigen::VectorXi initial,
                          long long budget, std::uint64_t seed,
                          const Eigen::VectorXi& pinned = Eigen::VectorXi());

// Indices of points not dominated by any other (minimization; a point
// dominates another when it is <= everywhere and < somewhere). Duplicates
// are all kept. Order is preserved.
std::vector<int> nondominated_filter(const std::vector<Eigen::VectorXd>& points);

struct ParetoRecord {
  Eigen::VectorXi gene;
  Eigen::VectorXd objectives;  // raw per-term values
  Eigen::VectorXd weights;
  double scalar = 0.0;
  int weight_index = 0;
  int run_index = 0;  // run that produced the best scalar for this weight
  bool nondominated = false;
};

struct ParetoFrontier {
  std::vector<std::string> term_names;
  std::vector<ParetoRecord> records;

  std::vector<int> frontier_indices() const;  // records with nondominated set
};

// Scalarized sweep over (1 - w) * term_a + w * term_b for each w; the best
// of runs_per_weight seeded searches is recorded per weight, then dominance
// flags are filled in. Weights must be sorted and within [0, 1].
ParetoFrontier pareto_sweep(const ObjectiveTerm& term_a, const ObjectiveTerm& term_b,
                            const std::vector<double>& weights, int runs_per_weight,
                            long long budget, std::uint64_t seed, int gene_length,
                            const Eigen::VectorXi& pinned = Eigen::VectorXi());

// Three-term sweep over the weight simplex sampled at resolution
// grid_divisions: all (i, j, k) / d with i + j + k = d.
ParetoFrontier multi_objective_run(const std::array<ObjectiveTerm, 3>& terms,
                                   int grid_divisions, int runs_per_point,
                                   long long budget, std::uint64_t seed, int gene_length,
                                   const Eigen::VectorXi& pinned = Eigen::VectorXi());

// Stand-in physical objective: smooth in covered area, >= 1, equal to 1 on
// the full design, and strictly improving as coverage grows. The floor at
// one triangle's share of the area keeps the empty gene finite.
double surrogate_q(const Eigen::VectorXi& triangle_bits, const Eigen::VectorXd& areas);

}  // namespace shapereg
