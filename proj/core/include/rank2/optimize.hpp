#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <utility>

#include "rank2/charts.hpp"
#include "rank2/matrix.hpp"

namespace rank2 {

// Pure, deterministic objective over the model. May return -inf where
// undefined (e.g. log-likelihood with a zero cell under a positive count).
using ObjectiveFunction = std::function<double(const ProbabilityMatrix&)>;

struct OptimizerSettings {
  int max_iters = 500;
  double grad_tol = 1e-8;
  double armijo_c = 1e-4;
  double backtrack_factor = 0.5;
  int multistarts = 16;
  std::uint64_t seed = 0;
  double fd_step = 1e-6;
};

struct FitSource {
  enum class Kind { Rank1, Chart };
  Kind kind = Kind::Rank1;
  ChartId id{};  // meaningful only when kind == Chart

  bool operator==(const FitSource&) const = default;
};

struct FitResult {
  ProbabilityMatrix matrix;
  double value = 0.0;
  FitSource source;
  std::optional<ChartPoint> point;
  ClassifyFlags flags;
  int iterations = 0;
};

// Sum of n_ij * ln p_ij with 0 * ln 0 = 0; -inf when an observed cell has
// probability zero.
double loglikelihood(const ContingencyTable& table, const ProbabilityMatrix& P);

// Closed-form independence-model MLE: product of the empirical marginals.
ProbabilityMatrix mle_rank1(const ContingencyTable& table);

// Euclidean projection of a flat parameter vector onto U': each of the four
// blocks onto {v >= 0, sum v <= 1}, alpha onto [0, 1].
ChartPoint project_domain(const Eigen::VectorXd& raw, ChartId id, Shape shape);

// Projected gradient ascent on F composed with the chart map, with Armijo
// backtracking along the projection arc.
FitResult optimize_chart(const ObjectiveFunction& F, ChartId id,
                         const ChartPoint& init,
                         const OptimizerSettings& settings = {});

// The full search: rank-1 candidate plus multistart chart ascent on every
// column pair, with boundary candidates filtered by the cross-chart check.
FitResult maximize_over_model(const ContingencyTable& table,
                              const OptimizerSettings& settings = {});

// Exhaustive grid evaluation of F over U'; test oracle, D <= 5 only.
std::pair<ChartPoint, double> grid_oracle(const ObjectiveFunction& F,
                                          ChartId id, Shape shape,
                                          double resolution);

}  // namespace rank2
