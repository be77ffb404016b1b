#include "rank2/charts.hpp"

#include <algorithm>
#include <cmath>

#include "rank2/mixture.hpp"

namespace rank2 {

namespace {
constexpr double kDomainEps = 1e-14;

void check_chart_shape(Shape shape, ChartId id) {
  if (shape.rows < 2 || shape.cols < 2)
    throw Error(errc::ShapeTooSmall, "charts need I >= 2 and J >= 2");
  if (id.j1 < 1 || id.j2 > shape.cols || id.j1 >= id.j2)
    throw Error(errc::DimensionMismatch, "chart columns out of range");
}

bool block_ok(const Eigen::VectorXd& v) {
  double sum = 0.0;
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    if (v(i) < -kDomainEps || v(i) > 1.0 + kDomainEps) return false;
    sum += v(i);
  }
  return sum <= 1.0 + kDomainEps;
}

double clamp01(double v) {
  if (v < 0.0 && v >= -1e-12) return 0.0;
  if (v > 1.0 && v <= 1.0 + 1e-12) return 1.0;
  return v;
}
}  // namespace

std::vector<int> other_columns(int cols, ChartId id) {
  std::vector<int> out;
  out.reserve(static_cast<size_t>(cols) - 2);
  for (int j = 1; j <= cols; ++j)
    if (j != id.j1 && j != id.j2) out.push_back(j);
  return out;
}

Eigen::VectorXd ChartPoint::to_vector() const {
  Eigen::VectorXd v(dim());
  v << a, b, c, d, alpha;
  return v;
}

ChartPoint ChartPoint::from_vector(const Eigen::VectorXd& v, Shape shape) {
  const int I = shape.rows, J = shape.cols;
  if (v.size() != 2 * I + 2 * J - 5)
    throw Error(errc::DimensionMismatch, "flat vector has wrong dimension");
  ChartPoint p;
  p.rows = I;
  p.cols = J;
  p.a = v.segment(0, I - 1);
  p.b = v.segment(I - 1, J - 2);
  p.c = v.segment(I + J - 3, I - 1);
  p.d = v.segment(2 * I + J - 4, J - 2);
  p.alpha = v(2 * I + 2 * J - 6);
  return p;
}

std::vector<std::string> ClassifyFlags::names() const {
  std::vector<std::string> out;
  if (interior) out.push_back("Interior");
  if (boundary_of_m) out.push_back("BoundaryOfM");
  if (rank_one) out.push_back("RankOne");
  if (proportional_columns) out.push_back("ProportionalColumns");
  return out;
}

int chart_dim(Shape shape) {
  if (shape.rows < 2 || shape.cols < 2)
    throw Error(errc::ShapeTooSmall, "charts need I >= 2 and J >= 2");
  return 2 * shape.rows + 2 * shape.cols - 5;
}

bool in_domain(const ChartPoint& p) {
  const int I = p.rows, J = p.cols;
  if (I < 2 || J < 2 || p.a.size() != I - 1 || p.c.size() != I - 1 ||
      p.b.size() != J - 2 || p.d.size() != J - 2)
    throw Error(errc::DimensionMismatch, "chart point blocks inconsistent");
  if (p.alpha < -kDomainEps || p.alpha > 1.0 + kDomainEps) return false;
  return block_ok(p.a) && block_ok(p.b) && block_ok(p.c) && block_ok(p.d);
}

Eigen::MatrixXd chart_forward_raw(ChartId id, const ChartPoint& p) {
  const int I = p.rows, J = p.cols;
  check_chart_shape(Shape{I, J}, id);
  Eigen::VectorXd col_a(I), col_c(I);
  col_a.head(I - 1) = p.a;
  col_a(I - 1) = 1.0 - p.a.sum();
  col_c.head(I - 1) = p.c;
  col_c(I - 1) = 1.0 - p.c.sum();

  Eigen::RowVectorXd u = Eigen::RowVectorXd::Zero(J);
  Eigen::RowVectorXd v = Eigen::RowVectorXd::Zero(J);
  u(id.j1 - 1) = 1.0 - p.b.sum();
  v(id.j2 - 1) = 1.0 - p.d.sum();
  const auto others = other_columns(J, id);
  for (size_t idx = 0; idx < others.size(); ++idx) {
    u(others[idx] - 1) = p.b(static_cast<Eigen::Index>(idx));
    v(others[idx] - 1) = p.d(static_cast<Eigen::Index>(idx));
  }
  return p.alpha * col_a * u + (1.0 - p.alpha) * col_c * v;
}

ProbabilityMatrix chart_forward(ChartId id, const ChartPoint& p) {
  if (!in_domain(p))
    throw Error(errc::OutOfDomain, "chart point is outside U'");
  return validate_probability(chart_forward_raw(id, p));
}

ChartPoint chart_inverse(ChartId id, const ProbabilityMatrix& P, double tol) {
  const Shape shape = P.shape();
  check_chart_shape(shape, id);
  const int I = shape.rows, J = shape.cols;

  const Eigen::VectorXd x = P.entries().col(id.j1 - 1);
  const Eigen::VectorXd y = P.entries().col(id.j2 - 1);
  const double sum_x = x.sum();
  const double sum_y = y.sum();
  const auto others = other_columns(J, id);
  const auto m = static_cast<Eigen::Index>(others.size());
  const double max_entry = P.entries().maxCoeff();

  ChartPoint p;
  p.rows = I;
  p.cols = J;
  p.a = Eigen::VectorXd::Zero(I - 1);
  p.b = Eigen::VectorXd::Zero(m);
  p.c = Eigen::VectorXd::Zero(I - 1);
  p.d = Eigen::VectorXd::Zero(m);

  // Degenerate branches: one base column is zero, all mass on one dyad.
  const bool x_zero = sum_x <= tol;
  const bool y_zero = sum_y <= tol;
  if (x_zero && y_zero)
    throw Error(errc::NotInChartImage, "both base columns are zero");
  if (x_zero || y_zero) {
    const Eigen::VectorXd& base = x_zero ? y : x;
    const double base_sum = x_zero ? sum_y : sum_x;
    Eigen::VectorXd coeff(m);
    const double bb = base.squaredNorm();
    for (Eigen::Index idx = 0; idx < m; ++idx) {
      const Eigen::VectorXd col = P.entries().col(others[idx] - 1);
      double c = base.dot(col) / bb;
      if ((c * base - col).lpNorm<Eigen::Infinity>() > tol * max_entry ||
          c < -tol)
        throw Error(errc::NotInChartImage,
                    "column " + std::to_string(others[idx]) +
                        " is not a nonnegative multiple of the base column");
      coeff(idx) = std::max(c, 0.0);
    }
    const double denom = 1.0 + coeff.sum();
    if (y_zero) {
      p.alpha = 1.0;
      p.a = (base / base_sum).head(I - 1);
      p.b = coeff / denom;
    } else {
      p.alpha = 0.0;
      p.c = (base / base_sum).head(I - 1);
      p.d = coeff / denom;
    }
  } else {
    ColumnCombination cc;
    try {
      cc = column_combination(P, id.j1, id.j2, tol);
    } catch (const Error& e) {
      throw Error(errc::NotInChartImage, e.what());
    }
    const double sum_t = cc.t.sum();
    const double sum_s = cc.s.sum();
    const double alpha = (sum_t + 1.0) * sum_x;
    const double alpha_other = 1.0 - (sum_s + 1.0) * sum_y;
    // The two closed-form expressions agree because P sums to one.
    if (std::abs(alpha - alpha_other) > 1e-8)
      throw Error(errc::AlphaInconsistent,
                  "the two alpha expressions disagree");
    p.a = (x / sum_x).head(I - 1);
    p.c = (y / sum_y).head(I - 1);
    p.b = cc.t / (1.0 + sum_t);
    p.d = cc.s / (1.0 + sum_s);
    p.alpha = alpha;
  }

  p.alpha = clamp01(p.alpha);
  for (auto* block : {&p.a, &p.b, &p.c, &p.d})
    for (Eigen::Index i = 0; i < block->size(); ++i)
      (*block)(i) = clamp01((*block)(i));
  if (!in_domain(p))
    throw Error(errc::NotInChartImage, "inverse point falls outside U'");
  return p;
}

std::vector<ChartId> select_charts(const ProbabilityMatrix& P, double tol) {
  if (numerical_rank(P, tol) > 2)
    throw Error(errc::RankTooHigh, "matrix has rank > 2");
  std::vector<ChartId> out;
  const int J = P.cols();
  for (int j1 = 1; j1 <= J; ++j1)
    for (int j2 = j1 + 1; j2 <= J; ++j2) {
      try {
        chart_inverse(ChartId{j1, j2}, P, tol);
        out.push_back(ChartId{j1, j2});
      } catch (const Error&) {
      }
    }
  return out;
}

ClassifyFlags classify(const ChartPoint& p, double tol) {
  if (!in_domain(p))
    throw Error(errc::OutOfDomain, "chart point is outside U'");
  ClassifyFlags f;
  // A full block sum triggers both boundary flags; the source lemma states
  // the sum conditions twice with different conclusions, so we keep both.
  const bool sum_hit = p.a.sum() >= 1.0 - tol || p.b.sum() >= 1.0 - tol ||
                       p.c.sum() >= 1.0 - tol || p.d.sum() >= 1.0 - tol;
  const bool ac_zero = (p.a.size() > 0 && p.a.minCoeff() <= tol) ||
                       (p.c.size() > 0 && p.c.minCoeff() <= tol);
  const bool bd_zero = (p.b.size() > 0 && p.b.minCoeff() <= tol) ||
                       (p.d.size() > 0 && p.d.minCoeff() <= tol);
  f.boundary_of_m = ac_zero || sum_hit;
  f.rank_one = p.alpha <= tol || p.alpha >= 1.0 - tol;
  f.proportional_columns = bd_zero || sum_hit;
  f.interior = !(f.boundary_of_m || f.rank_one || f.proportional_columns);
  return f;
}

Eigen::MatrixXd jacobian(ChartId id, const ChartPoint& p, double step) {
  if (step <= 0.0)
    throw Error(errc::DimensionMismatch, "finite-difference step must be > 0");
  const ClassifyFlags f = classify(p);
  if (!f.interior)
    throw Error(errc::NotInterior, "jacobian needs a strictly interior point");

  const Shape shape{p.rows, p.cols};
  const int D = chart_dim(shape);
  const int cells = p.rows * p.cols;
  Eigen::VectorXd v = p.to_vector();
  Eigen::MatrixXd jac(cells, D);
  for (int k = 0; k < D; ++k) {
    Eigen::VectorXd vp = v, vm = v;
    vp(k) += step;
    vm(k) -= step;
    const Eigen::MatrixXd mp =
        chart_forward_raw(id, ChartPoint::from_vector(vp, shape));
    const Eigen::MatrixXd mm =
        chart_forward_raw(id, ChartPoint::from_vector(vm, shape));
    for (int i = 0; i < p.rows; ++i)
      for (int j = 0; j < p.cols; ++j)
        jac(i * p.cols + j, k) = (mp(i, j) - mm(i, j)) / (2.0 * step);
  }
  return jac;
}

}  // namespace rank2
