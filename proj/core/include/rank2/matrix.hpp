#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <iosfwd>
#include <string>

#include "rank2/error.hpp"

namespace rank2 {

struct Shape {
  int rows = 0;
  int cols = 0;

  bool operator==(const Shape&) const = default;
};

// A point of the probability simplex over I*J cells. Construction goes
// through validate_probability; entries are renormalized to exact sum one.
class ProbabilityMatrix {
 public:
  const Eigen::MatrixXd& entries() const noexcept { return m_; }
  Shape shape() const noexcept {
    return Shape{static_cast<int>(m_.rows()), static_cast<int>(m_.cols())};
  }
  int rows() const noexcept { return static_cast<int>(m_.rows()); }
  int cols() const noexcept { return static_cast<int>(m_.cols()); }
  double operator()(int i, int j) const { return m_(i, j); }

  ProbabilityMatrix transposed() const;

  friend ProbabilityMatrix validate_probability(const Eigen::MatrixXd& raw,
                                                double sum_tol);

 private:
  explicit ProbabilityMatrix(Eigen::MatrixXd m) : m_(std::move(m)) {}
  Eigen::MatrixXd m_;
};

// Two-way table of observation counts.
class ContingencyTable {
 public:
  using Counts = Eigen::Matrix<std::int64_t, Eigen::Dynamic, Eigen::Dynamic>;

  explicit ContingencyTable(Counts counts);

  const Counts& counts() const noexcept { return counts_; }
  std::int64_t total() const noexcept { return total_; }
  Shape shape() const noexcept {
    return Shape{static_cast<int>(counts_.rows()),
                 static_cast<int>(counts_.cols())};
  }
  std::int64_t operator()(int i, int j) const { return counts_(i, j); }

 private:
  Counts counts_;
  std::int64_t total_ = 0;
};

// Checks nonnegativity and sum-one within sum_tol, then renormalizes so the
// stored entries sum to one at machine precision. Entries in [-1e-12, 0) are
// clamped to zero.
ProbabilityMatrix validate_probability(const Eigen::MatrixXd& raw,
                                       double sum_tol = 1e-8);

// Count of singular values above rank_tol * sigma_1 * max(I, J).
int numerical_rank(const Eigen::MatrixXd& m, double rank_tol = 1e-9);
int numerical_rank(const ProbabilityMatrix& p, double rank_tol = 1e-9);

// Empirical distribution n_ij / n.
ProbabilityMatrix normalize(const ContingencyTable& table);

// CSV: one row per line, entries comma- or whitespace-separated, no header.
Eigen::MatrixXd read_csv(std::istream& in);
Eigen::MatrixXd read_csv_file(const std::string& path);
void write_csv(std::ostream& out, const Eigen::MatrixXd& m);
ContingencyTable table_from_reals(const Eigen::MatrixXd& m);

}  // namespace rank2
