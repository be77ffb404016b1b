#include "rank2/mixture.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace rank2 {

namespace {

Eigen::VectorXd normalize_simplex(Eigen::VectorXd v, const char* what) {
  double sum = 0.0;
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    if (v(i) < -1e-12)
      throw Error(errc::NegativeEntry, std::string(what) + " has negative entry");
    if (v(i) < 0.0) v(i) = 0.0;
    sum += v(i);
  }
  if (sum <= 0.0)
    throw Error(errc::NegativeEntry, std::string(what) + " sums to zero");
  return v / sum;
}

}  // namespace

MixtureRepresentation MixtureRepresentation::create(
    Eigen::VectorXd weights, std::vector<Eigen::VectorXd> col_factors,
    std::vector<Eigen::VectorXd> row_factors) {
  const auto k = weights.size();
  if (k < 1 || col_factors.size() != static_cast<size_t>(k) ||
      row_factors.size() != static_cast<size_t>(k))
    throw Error(errc::DimensionMismatch,
                "mixture needs k weights, k column factors, k row factors");
  for (size_t h = 1; h < col_factors.size(); ++h)
    if (col_factors[h].size() != col_factors[0].size() ||
        row_factors[h].size() != row_factors[0].size())
      throw Error(errc::DimensionMismatch, "mixture factor sizes differ");

  MixtureRepresentation rep;
  rep.weights = normalize_simplex(std::move(weights), "weight vector");
  for (auto& c : col_factors)
    rep.col_factors.push_back(normalize_simplex(std::move(c), "column factor"));
  for (auto& r : row_factors)
    rep.row_factors.push_back(normalize_simplex(std::move(r), "row factor"));
  return rep;
}

ProbabilityMatrix mixture_to_matrix(const MixtureRepresentation& rep) {
  const auto I = rep.col_factors.at(0).size();
  const auto J = rep.row_factors.at(0).size();
  Eigen::MatrixXd m = Eigen::MatrixXd::Zero(I, J);
  for (int h = 0; h < rep.k(); ++h)
    m += rep.weights(h) * rep.col_factors[h] * rep.row_factors[h].transpose();
  return validate_probability(m);
}

ColumnCombination column_combination(const ProbabilityMatrix& P, int j1,
                                     int j2, double tol) {
  const int J = P.cols();
  if (j1 < 1 || j2 > J || j1 >= j2)
    throw Error(errc::DimensionMismatch, "invalid column pair");
  ColumnCombination cc;
  cc.base_pair = ChartId{j1, j2};
  cc.x = P.entries().col(j1 - 1);
  cc.y = P.entries().col(j2 - 1);

  const double xx = cc.x.squaredNorm();
  const double yy = cc.y.squaredNorm();
  const double xy = cc.x.dot(cc.y);
  if (xx * yy - xy * xy <= tol * tol)
    throw Error(errc::DependentBaseColumns,
                "base columns are linearly dependent");

  // Householder QR rather than normal equations: the base pair may be
  // poorly conditioned and the residual check below is tight.
  Eigen::MatrixXd basis(cc.x.size(), 2);
  basis.col(0) = cc.x;
  basis.col(1) = cc.y;
  const auto qr = basis.colPivHouseholderQr();

  cc.columns = other_columns(J, cc.base_pair);
  const auto m = static_cast<Eigen::Index>(cc.columns.size());
  cc.t.resize(m);
  cc.s.resize(m);
  const double max_entry = P.entries().maxCoeff();
  for (Eigen::Index idx = 0; idx < m; ++idx) {
    const Eigen::VectorXd col = P.entries().col(cc.columns[idx] - 1);
    const Eigen::Vector2d coef = qr.solve(col);
    const double t = coef(0);
    const double s = coef(1);
    const double residual =
        (t * cc.x + s * cc.y - col).lpNorm<Eigen::Infinity>();
    if (residual > tol * max_entry)
      throw Error(errc::NotRepresentable,
                  "column " + std::to_string(cc.columns[idx]) +
                      " is not spanned by the base pair");
    if (t < -tol || s < -tol)
      throw Error(errc::NotRepresentable,
                  "column " + std::to_string(cc.columns[idx]) +
                      " needs a negative coefficient");
    cc.t(idx) = std::max(t, 0.0);
    cc.s(idx) = std::max(s, 0.0);
  }
  return cc;
}

std::pair<ChartId, ColumnCombination> extremal_pair(const ProbabilityMatrix& P,
                                                    double tol) {
  const int J = P.cols();
  const int r = numerical_rank(P, tol);
  if (r < 2) throw Error(errc::RankOne, "matrix has rank < 2");
  if (r > 2) throw Error(errc::RankTooHigh, "matrix has rank > 2");

  // Best-conditioned independent pair is the working basis: coefficients of
  // the remaining columns are solved against it, so pick the pair with the
  // largest Gram determinant (ties broken lexicographically).
  int b1 = 0, b2 = 0;
  double best_det = tol * tol;
  for (int j1 = 1; j1 <= J; ++j1)
    for (int j2 = j1 + 1; j2 <= J; ++j2) {
      const Eigen::VectorXd x = P.entries().col(j1 - 1);
      const Eigen::VectorXd y = P.entries().col(j2 - 1);
      const double det =
          x.squaredNorm() * y.squaredNorm() - x.dot(y) * x.dot(y);
      if (det > best_det) {
        best_det = det;
        b1 = j1;
        b2 = j2;
      }
    }
  if (!b1) throw Error(errc::RankOne, "no independent column pair");

  // Coefficient pair of every nonzero column in the working basis.
  const Eigen::VectorXd x = P.entries().col(b1 - 1);
  const Eigen::VectorXd y = P.entries().col(b2 - 1);
  Eigen::MatrixXd basis(x.size(), 2);
  basis.col(0) = x;
  basis.col(1) = y;
  const auto qr = basis.colPivHouseholderQr();
  const double max_entry = P.entries().maxCoeff();
  struct Ray {
    double angle;
    int col;
  };
  std::vector<Ray> rays;
  for (int j = 1; j <= J; ++j) {
    const Eigen::VectorXd col = P.entries().col(j - 1);
    if (col.lpNorm<Eigen::Infinity>() <= tol) continue;  // zero columns ignored
    double t, s;
    if (j == b1) {
      t = 1.0;
      s = 0.0;
    } else if (j == b2) {
      t = 0.0;
      s = 1.0;
    } else {
      const Eigen::Vector2d coef = qr.solve(col);
      t = coef(0);
      s = coef(1);
      if ((t * x + s * y - col).lpNorm<Eigen::Infinity>() > tol * max_entry)
        throw Error(errc::RankTooHigh,
                    "column " + std::to_string(j) +
                        " is outside the span of the base pair");
    }
    double angle = std::atan2(s, t);
    if (angle < 0.0) angle += 2.0 * std::numbers::pi;
    rays.push_back({angle, j});
  }

  std::sort(rays.begin(), rays.end(), [](const Ray& l, const Ray& r) {
    return l.angle < r.angle || (l.angle == r.angle && l.col < r.col);
  });

  // The cone spread is 2*pi minus the largest circular gap; spread < pi
  // (gap > pi) is guaranteed for nonnegative P with independent columns.
  const size_t n = rays.size();
  double max_gap = -1.0;
  size_t gap_at = 0;
  for (size_t i = 0; i < n; ++i) {
    const double next =
        (i + 1 < n) ? rays[i + 1].angle : rays[0].angle + 2.0 * std::numbers::pi;
    const double gap = next - rays[i].angle;
    if (gap > max_gap) {
      max_gap = gap;
      gap_at = i;
    }
  }
  constexpr double angle_eps = 1e-9;
  if (max_gap <= std::numbers::pi + angle_eps) {
    if (max_gap >= std::numbers::pi - angle_eps)
      throw Error(errc::RankOne, "antipodal rays: columns are proportional");
    throw Error(errc::RankTooHigh, "coefficient cone spans more than pi");
  }

  const double lo_angle = rays[(gap_at + 1) % n].angle;
  const double hi_angle = rays[gap_at].angle;
  int lo_col = 0, hi_col = 0;
  for (const Ray& r : rays) {
    if (!lo_col && std::abs(r.angle - lo_angle) <= angle_eps) lo_col = r.col;
    if (!hi_col && std::abs(r.angle - hi_angle) <= angle_eps) hi_col = r.col;
  }

  const int e1 = std::min(lo_col, hi_col);
  const int e2 = std::max(lo_col, hi_col);
  ColumnCombination cc = column_combination(P, e1, e2, tol);
  return {ChartId{e1, e2}, std::move(cc)};
}

MixtureRepresentation factorize_rank2(const ProbabilityMatrix& P, double tol) {
  const int r = numerical_rank(P, tol);
  if (r > 2)
    throw Error(errc::RankTooHigh,
                "rank " + std::to_string(r) +
                    " matrix admits no nonnegative rank-2 factorization");
  if (r <= 1) {
    // Rank one: the marginals are exact factors.
    Eigen::VectorXd c = P.entries().rowwise().sum();
    Eigen::VectorXd rw = P.entries().colwise().sum();
    Eigen::VectorXd w(1);
    w << 1.0;
    return MixtureRepresentation::create(w, {std::move(c)}, {std::move(rw)});
  }

  auto [id, cc] = extremal_pair(P, tol);
  const int J = P.cols();
  const double sum_x = cc.x.sum();
  const double sum_y = cc.y.sum();
  const double sum_t = cc.t.sum();
  const double sum_s = cc.s.sum();

  const double alpha = (1.0 + sum_t) * sum_x;
  Eigen::VectorXd u = Eigen::VectorXd::Zero(J);
  Eigen::VectorXd v = Eigen::VectorXd::Zero(J);
  u(id.j1 - 1) = 1.0 / (1.0 + sum_t);
  v(id.j2 - 1) = 1.0 / (1.0 + sum_s);
  for (size_t idx = 0; idx < cc.columns.size(); ++idx) {
    u(cc.columns[idx] - 1) = cc.t(static_cast<Eigen::Index>(idx)) / (1.0 + sum_t);
    v(cc.columns[idx] - 1) = cc.s(static_cast<Eigen::Index>(idx)) / (1.0 + sum_s);
  }
  Eigen::VectorXd w(2);
  w << alpha, 1.0 - alpha;
  return MixtureRepresentation::create(
      w, {cc.x / sum_x, cc.y / sum_y}, {std::move(u), std::move(v)});
}

}  // namespace rank2
