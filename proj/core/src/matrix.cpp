#include "rank2/matrix.hpp"

#include <Eigen/SVD>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <istream>
#include <ostream>
#include <sstream>
#include <vector>

namespace rank2 {

ProbabilityMatrix ProbabilityMatrix::transposed() const {
  return ProbabilityMatrix(m_.transpose());
}

ContingencyTable::ContingencyTable(Counts counts) : counts_(std::move(counts)) {
  for (Eigen::Index j = 0; j < counts_.cols(); ++j)
    for (Eigen::Index i = 0; i < counts_.rows(); ++i) {
      if (counts_(i, j) < 0)
        throw Error(errc::NegativeEntry, "contingency table count < 0");
      total_ += counts_(i, j);
    }
}

ProbabilityMatrix validate_probability(const Eigen::MatrixXd& raw,
                                       double sum_tol) {
  Eigen::MatrixXd m = raw;
  double sum = 0.0;
  for (Eigen::Index j = 0; j < m.cols(); ++j)
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
      double v = m(i, j);
      if (!std::isfinite(v))
        throw Error(errc::ParseError, "non-finite entry in probability matrix");
      if (v < -1e-12)
        throw Error(errc::NegativeEntry,
                    "entry (" + std::to_string(i + 1) + "," +
                        std::to_string(j + 1) + ") is negative");
      if (v < 0.0) v = 0.0;
      m(i, j) = v;
      sum += v;
    }
  if (std::abs(sum - 1.0) > sum_tol)
    throw Error(errc::SumOutOfTolerance,
                "entries sum to " + std::to_string(sum) + ", expected 1");
  m /= sum;
  return ProbabilityMatrix(std::move(m));
}

int numerical_rank(const Eigen::MatrixXd& m, double rank_tol) {
  if (m.size() == 0) return 0;
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(m);
  const auto& sv = svd.singularValues();
  if (sv.size() == 0 || sv(0) == 0.0) return 0;
  const double threshold =
      rank_tol * sv(0) * static_cast<double>(std::max(m.rows(), m.cols()));
  int r = 0;
  for (Eigen::Index i = 0; i < sv.size(); ++i)
    if (sv(i) > threshold) ++r;
  return r;
}

int numerical_rank(const ProbabilityMatrix& p, double rank_tol) {
  return numerical_rank(p.entries(), rank_tol);
}

ProbabilityMatrix normalize(const ContingencyTable& table) {
  if (table.total() == 0)
    throw Error(errc::EmptyTable, "contingency table has zero total count");
  Eigen::MatrixXd m =
      table.counts().cast<double>() / static_cast<double>(table.total());
  return validate_probability(m);
}

Eigen::MatrixXd read_csv(std::istream& in) {
  std::vector<std::vector<double>> rows;
  std::string line;
  while (std::getline(in, line)) {
    for (char& ch : line)
      if (ch == ',' || ch == '\t' || ch == ';') ch = ' ';
    std::istringstream ls(line);
    std::vector<double> row;
    double v;
    while (ls >> v) row.push_back(v);
    if (!ls.eof())
      throw Error(errc::ParseError, "malformed CSV line: " + line);
    if (!row.empty()) rows.push_back(std::move(row));
  }
  if (rows.empty()) throw Error(errc::ParseError, "empty CSV input");
  const size_t cols = rows[0].size();
  for (const auto& r : rows)
    if (r.size() != cols)
      throw Error(errc::ParseError, "ragged CSV rows");
  Eigen::MatrixXd m(static_cast<Eigen::Index>(rows.size()),
                    static_cast<Eigen::Index>(cols));
  for (size_t i = 0; i < rows.size(); ++i)
    for (size_t j = 0; j < cols; ++j)
      m(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) =
          rows[i][j];
  return m;
}

Eigen::MatrixXd read_csv_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(errc::ParseError, "cannot open file: " + path);
  return read_csv(in);
}

void write_csv(std::ostream& out, const Eigen::MatrixXd& m) {
  out << std::setprecision(17);
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    for (Eigen::Index j = 0; j < m.cols(); ++j) {
      if (j) out << ',';
      out << m(i, j);
    }
    out << '\n';
  }
}

ContingencyTable table_from_reals(const Eigen::MatrixXd& m) {
  ContingencyTable::Counts c(m.rows(), m.cols());
  for (Eigen::Index j = 0; j < m.cols(); ++j)
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
      double v = m(i, j);
      double r = std::round(v);
      if (!std::isfinite(v) || std::abs(v - r) > 1e-9 || r < 0)
        throw Error(errc::ParseError,
                    "contingency table entries must be nonnegative integers");
      c(i, j) = static_cast<std::int64_t>(r);
    }
  return ContingencyTable(std::move(c));
}

}  // namespace rank2
