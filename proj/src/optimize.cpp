#include "shapereg/optimize.hpp"

#include <cmath>
#include <stdexcept>

namespace shapereg {

void ObjectiveSpec::validate() const {
  if (terms.empty()) throw std::invalid_argument("objective: at least one term required");
  if (weights.size() != static_cast<Eigen::Index>(terms.size()))
    throw std::invalid_argument("objective: one weight per term required");
  for (int i = 0; i < weights.size(); ++i)
    if (!std::isfinite(weights[i]) || weights[i] < 0.0)
      throw std::invalid_argument("objective: weights must be finite and nonnegative");
  for (const auto& term : terms)
    if (!term.fn) throw std::invalid_argument("objective: term '" + term.name + "' has no function");
}

double scalarize(const ObjectiveSpec& spec, const Eigen::VectorXi& gene) {
  double value = 0.0;
  for (size_t i = 0; i < spec.terms.size(); ++i) value += spec.weights[i] * spec.terms[i].fn(gene);
  return value;
}

namespace {

void apply_pins(Eigen::VectorXi& gene, const Eigen::VectorXi& pinned) {
  if (pinned.size() == 0) return;
  for (int i = 0; i < gene.size(); ++i)
    if (pinned[i]) gene[i] = 1;
}

}  // namespace

SearchResult local_search(const ObjectiveSpec& spec, Eigen::VectorXi initial, long long budget,
                          std::uint64_t seed, const Eigen::VectorXi& pinned) {
  spec.validate();
  if (budget < 0) throw std::invalid_argument("local_search: negative budget");
  if (pinned.size() != 0 && pinned.size() != initial.size())
    throw std::invalid_argument("local_search: pin mask length mismatch");

  apply_pins(initial, pinned);
  const int length = static_cast<int>(initial.size());

  SearchResult result;
  Eigen::VectorXi current = initial;
  double current_value = scalarize(spec, current);  // not counted against the budget
  result.best = current;
  result.best_value = current_value;

  int restart = 0;
  while (result.evaluations < budget) {
    // one steepest-descent sweep over all flippable bits
    int best_bit = -1;
    double best_value = current_value;
    for (int bit = 0; bit < length && result.evaluations < budget; ++bit) {
      if (pinned.size() != 0 && pinned[bit]) continue;
      current[bit] ^= 1;
      const double value = scalarize(spec, current);
      current[bit] ^= 1;
      ++result.evaluations;
      if (value < best_value) {  // strict: ties keep the lowest bit
        best_value = value;
        best_bit = bit;
      }
    }

    if (best_bit >= 0) {
      current[best_bit] ^= 1;
      current_value = best_value;
      result.trace.push_back({best_bit, current_value});
    } else if (result.evaluations < budget) {
      current = random_gene(length, 0.5, mix_seed(seed, 0x7265737461727475ull, ++restart));
      apply_pins(current, pinned);
      current_value = scalarize(spec, current);
      ++result.evaluations;
      result.trace.push_back({kRestartStep, current_value});
    }

    if (current_value < result.best_value) {
      result.best = current;
      result.best_value = current_value;
    }
  }
  return result;
}

std::vector<int> nondominated_filter(const std::vector<Eigen::VectorXd>& points) {
  const int n = static_cast<int>(points.size());
  for (int i = 1; i < n; ++i)
    if (points[i].size() != points[0].size())
      throw std::invalid_argument("nondominated_filter: vector length mismatch");

  auto dominates = [](const Eigen::VectorXd& a, const Eigen::VectorXd& b) {
    bool strict = false;
    for (int k = 0; k < a.size(); ++k) {
      if (a[k] > b[k]) return false;
      if (a[k] < b[k]) strict = true;
    }
    return strict;
  };

  std::vector<int> keep;
  for (int i = 0; i < n; ++i) {
    bool dominated = false;
    for (int j = 0; j < n && !dominated; ++j) dominated = j != i && dominates(points[j], points[i]);
    if (!dominated) keep.push_back(i);
  }
  return keep;
}

std::vector<int> ParetoFrontier::frontier_indices() const {
  std::vector<int> out;
  for (int i = 0; i < static_cast<int>(records.size()); ++i)
    if (records[i].nondominated) out.push_back(i);
  return out;
}

namespace {

// Best-of-runs scalarized search at one weight configuration.
ParetoRecord run_weight_point(const std::vector<ObjectiveTerm>& terms,
                              const Eigen::VectorXd& weights, int weight_index, int runs,
                              long long budget, std::uint64_t seed, int gene_length,
                              const Eigen::VectorXi& pinned) {
  ObjectiveSpec spec{terms, weights};
  ParetoRecord record;
  record.weights = weights;
  record.weight_index = weight_index;
  bool first = true;
  for (int run = 0; run < runs; ++run) {
    Eigen::VectorXi initial =
        random_gene(gene_length, 0.5, mix_seed(seed, weight_index, run, 0));
    SearchResult result =
        local_search(spec, std::move(initial), budget, mix_seed(seed, weight_index, run, 1), pinned);
    if (first || result.best_value < record.scalar) {
      first = false;
      record.gene = result.best;
      record.scalar = result.best_value;
      record.run_index = run;
    }
  }
  record.objectives.resize(terms.size());
  for (size_t k = 0; k < terms.size(); ++k)
    record.objectives[static_cast<int>(k)] = terms[k].fn(record.gene);
  return record;
}

void flag_nondominated(ParetoFrontier& frontier) {
  std::vector<Eigen::VectorXd> points;
  points.reserve(frontier.records.size());
  for (const auto& record : frontier.records) points.push_back(record.objectives);
  for (int idx : nondominated_filter(points)) frontier.records[idx].nondominated = true;
}

}  // namespace

ParetoFrontier pareto_sweep(const ObjectiveTerm& term_a, const ObjectiveTerm& term_b,
                            const std::vector<double>& weights, int runs_per_weight,
                            long long budget, std::uint64_t seed, int gene_length,
                            const Eigen::VectorXi& pinned) {
  if (weights.empty()) throw std::invalid_argument("pareto_sweep: empty weight list");
  for (size_t i = 0; i < weights.size(); ++i) {
    if (!(weights[i] >= 0.0 && weights[i] <= 1.0))
      throw std::invalid_argument("pareto_sweep: weights must lie in [0, 1]");
    if (i > 0 && weights[i] < weights[i - 1])
      throw std::invalid_argument("pareto_sweep: weights must be sorted ascending");
  }
  if (runs_per_weight < 1) throw std::invalid_argument("pareto_sweep: runs per weight must be >= 1");

  ParetoFrontier frontier;
  frontier.term_names = {term_a.name, term_b.name};
  const std::vector<ObjectiveTerm> terms = {term_a, term_b};
  for (size_t wi = 0; wi < weights.size(); ++wi) {
    Eigen::VectorXd w(2);
    w << 1.0 - weights[wi], weights[wi];
    frontier.records.push_back(run_weight_point(terms, w, static_cast<int>(wi), runs_per_weight,
                                                budget, seed, gene_length, pinned));
  }
  flag_nondominated(frontier);
  return frontier;
}

ParetoFrontier multi_objective_run(const std::array<ObjectiveTerm, 3>& terms, int grid_divisions,
                                   int runs_per_point, long long budget, std::uint64_t seed,
                                   int gene_length, const Eigen::VectorXi& pinned) {
  if (grid_divisions < 1) throw std::invalid_argument("multi_objective_run: grid divisions must be >= 1");
  if (runs_per_point < 1) throw std::invalid_argument("multi_objective_run: runs per point must be >= 1");

  ParetoFrontier frontier;
  frontier.term_names = {terms[0].name, terms[1].name, terms[2].name};
  const std::vector<ObjectiveTerm> term_list(terms.begin(), terms.end());
  int weight_index = 0;
  for (int i = 0; i <= grid_divisions; ++i)
    for (int j = 0; j <= grid_divisions - i; ++j) {
      Eigen::VectorXd w(3);
      w << static_cast<double>(i) / grid_divisions, static_cast<double>(j) / grid_divisions,
          static_cast<double>(grid_divisions - i - j) / grid_divisions;
      frontier.records.push_back(run_weight_point(term_list, w, weight_index++, runs_per_point,
                                                  budget, seed, gene_length, pinned));
    }
  flag_nondominated(frontier);
  return frontier;
}

double surrogate_q(const Eigen::VectorXi& triangle_bits, const Eigen::VectorXd& areas) {
  if (triangle_bits.size() != areas.size())
    throw std::invalid_argument("surrogate_q: gene length does not match area vector");
  double total = 0.0;
  double covered = 0.0;
  for (int i = 0; i < areas.size(); ++i) {
    total += areas[i];
    if (triangle_bits[i]) covered += areas[i];
  }
  if (total <= 0.0) throw std::invalid_argument("surrogate_q: total area is zero");
  const double floor_area = total / static_cast<double>(areas.size());
  return std::pow(std::max(covered, floor_area) / total, -1.5);
}

}  // namespace shapereg
