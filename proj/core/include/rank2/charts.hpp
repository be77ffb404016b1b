#pragma once

#include <Eigen/Dense>
#include <string>
#include <vector>

#include "rank2/matrix.hpp"

namespace rank2 {

// Column pair selecting a chart. Indices are 1-based, matching the CSV/CLI
// convention; j1 < j2.
struct ChartId {
  int j1 = 1;
  int j2 = 2;

  bool operator==(const ChartId&) const = default;
  auto operator<=>(const ChartId&) const = default;
};

// The columns not in {j1, j2}, ascending, 1-based. The b and d blocks of a
// ChartPoint are aligned with this list.
std::vector<int> other_columns(int cols, ChartId id);

// A point of the chart parameter domain U'. Block sizes are a,c: I-1 and
// b,d: J-2; total dimension 2I + 2J - 5 including alpha.
struct ChartPoint {
  int rows = 0;
  int cols = 0;
  Eigen::VectorXd a;
  Eigen::VectorXd b;
  Eigen::VectorXd c;
  Eigen::VectorXd d;
  double alpha = 0.0;

  int dim() const { return 2 * rows + 2 * cols - 5; }

  Eigen::VectorXd to_vector() const;
  static ChartPoint from_vector(const Eigen::VectorXd& v, Shape shape);
};

struct ClassifyFlags {
  bool interior = false;
  bool boundary_of_m = false;
  bool rank_one = false;
  bool proportional_columns = false;

  bool operator==(const ClassifyFlags&) const = default;
  std::vector<std::string> names() const;
};

// D = 2I + 2J - 5. Requires I, J >= 2.
int chart_dim(Shape shape);

// Membership in U': every coordinate and every block sum in [0, 1], with
// 1e-14 slack on the closed constraints.
bool in_domain(const ChartPoint& p);

// The chart map. Column j1 of the output carries only the first dyad,
// column j2 only the second.
ProbabilityMatrix chart_forward(ChartId id, const ChartPoint& p);

// Same bilinear formula without the domain check; used for finite
// differences near the boundary. Output always sums to one.
Eigen::MatrixXd chart_forward_raw(ChartId id, const ChartPoint& p);

// Closed-form inverse, three branches depending on whether the base columns
// are nonzero. Fails with NotInChartImage when the remaining columns are not
// nonnegative combinations of the base pair.
ChartPoint chart_inverse(ChartId id, const ProbabilityMatrix& P,
                         double tol = 1e-9);

// All chart ids whose inverse succeeds on P, lexicographic. Non-empty for
// every rank <= 2 probability matrix.
std::vector<ChartId> select_charts(const ProbabilityMatrix& P,
                                   double tol = 1e-9);

ClassifyFlags classify(const ChartPoint& p, double tol = 1e-9);

// (I*J) x D central-difference Jacobian of chart_forward, rows flattened
// row-major. Requires a strictly interior point.
Eigen::MatrixXd jacobian(ChartId id, const ChartPoint& p, double step = 1e-6);

}  // namespace rank2
