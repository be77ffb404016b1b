#pragma once

#include <Eigen/Dense>
#include <utility>
#include <vector>

#include "rank2/charts.hpp"
#include "rank2/matrix.hpp"

namespace rank2 {

// P = sum_h alpha_h c_h r_h^t with alpha on the simplex and each factor a
// probability vector.
struct MixtureRepresentation {
  Eigen::VectorXd weights;                  // k entries
  std::vector<Eigen::VectorXd> col_factors; // k vectors of length I
  std::vector<Eigen::VectorXd> row_factors; // k vectors of length J

  int k() const { return static_cast<int>(weights.size()); }

  // Validates nonnegativity, renormalizes each block to exact sum one.
  static MixtureRepresentation create(Eigen::VectorXd weights,
                                      std::vector<Eigen::VectorXd> col_factors,
                                      std::vector<Eigen::VectorXd> row_factors);
};

ProbabilityMatrix mixture_to_matrix(const MixtureRepresentation& rep);

// Columns of P written in the basis of columns (j1, j2): for each other
// column j, C_j = t_j * x + s_j * y.
struct ColumnCombination {
  ChartId base_pair;
  Eigen::VectorXd x;             // column j1
  Eigen::VectorXd y;             // column j2
  std::vector<int> columns;      // the other columns, 1-based ascending
  Eigen::VectorXd t;
  Eigen::VectorXd s;
};

ColumnCombination column_combination(const ProbabilityMatrix& P, int j1,
                                     int j2, double tol = 1e-9);

// Base pair whose coefficient cone has all columns on the nonnegative side:
// the two extremal rays of the planar cone of (t, s) pairs.
std::pair<ChartId, ColumnCombination> extremal_pair(const ProbabilityMatrix& P,
                                                    double tol = 1e-9);

// Exact nonnegative factorization for rank <= 2: k = 1 via marginals for
// rank one, otherwise k = 2 from the extremal pair.
MixtureRepresentation factorize_rank2(const ProbabilityMatrix& P,
                                      double tol = 1e-9);

}  // namespace rank2
