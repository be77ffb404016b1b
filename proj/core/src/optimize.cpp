#include "rank2/optimize.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

#include "rank2/rng.hpp"

namespace rank2 {

namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();

// Projection onto {v >= 0, sum v <= 1}: clamping, or the sorted simplex
// projection when the clamped point still oversums.
Eigen::VectorXd project_block(const Eigen::VectorXd& v) {
  Eigen::VectorXd w = v.cwiseMax(0.0);
  if (w.sum() <= 1.0) return w;
  std::vector<double> u(v.data(), v.data() + v.size());
  std::sort(u.begin(), u.end(), std::greater<>());
  double cum = 0.0, theta = 0.0;
  for (size_t i = 0; i < u.size(); ++i) {
    cum += u[i];
    const double cand = (cum - 1.0) / static_cast<double>(i + 1);
    if (u[i] - cand > 0.0) theta = cand;
  }
  return (v.array() - theta).cwiseMax(0.0);
}

Eigen::VectorXd project_vector(const Eigen::VectorXd& raw, Shape shape) {
  const int I = shape.rows, J = shape.cols;
  Eigen::VectorXd out(raw.size());
  out.segment(0, I - 1) = project_block(raw.segment(0, I - 1));
  out.segment(I - 1, J - 2) = project_block(raw.segment(I - 1, J - 2));
  out.segment(I + J - 3, I - 1) = project_block(raw.segment(I + J - 3, I - 1));
  out.segment(2 * I + J - 4, J - 2) =
      project_block(raw.segment(2 * I + J - 4, J - 2));
  out(raw.size() - 1) = std::clamp(raw(raw.size() - 1), 0.0, 1.0);
  return out;
}

struct Composite {
  const ObjectiveFunction& F;
  ChartId id;
  Shape shape;

  double operator()(const Eigen::VectorXd& v) const {
    return F(chart_forward(id, ChartPoint::from_vector(v, shape)));
  }

  bool feasible(const Eigen::VectorXd& v) const {
    return in_domain(ChartPoint::from_vector(v, shape));
  }

  // Central differences, falling back to one-sided at the domain boundary or
  // where the objective is -inf on one side.
  Eigen::VectorXd gradient(const Eigen::VectorXd& v, double f_at_v,
                           double step) const {
    Eigen::VectorXd g(v.size());
    for (Eigen::Index k = 0; k < v.size(); ++k) {
      Eigen::VectorXd vp = v, vm = v;
      vp(k) += step;
      vm(k) -= step;
      double fp = f_at_v, dp = 0.0, fm = f_at_v, dm = 0.0;
      if (feasible(vp)) {
        const double f = (*this)(vp);
        if (std::isfinite(f)) {
          fp = f;
          dp = step;
        }
      }
      if (feasible(vm)) {
        const double f = (*this)(vm);
        if (std::isfinite(f)) {
          fm = f;
          dm = step;
        }
      }
      g(k) = (dp + dm > 0.0) ? (fp - fm) / (dp + dm) : 0.0;
    }
    return g;
  }
};

// Kronecker low-discrepancy sequence (generalized golden ratio), shifted by
// a seeded offset and squeezed into the interior of U'.
Eigen::VectorXd multistart_vector(Shape shape, std::uint64_t seed,
                                  std::uint64_t chart_key, int start_index) {
  const int D = chart_dim(shape);
  double gamma = 1.5;
  for (int it = 0; it < 64; ++it)
    gamma = std::pow(1.0 + gamma, 1.0 / (D + 1));
  Eigen::VectorXd v(D);
  double alpha_k = 1.0;
  for (int k = 0; k < D; ++k) {
    alpha_k /= gamma;
    const double offset =
        rng::uniform_at(seed, static_cast<std::uint64_t>(k), chart_key);
    double u = offset + (start_index + 1) * alpha_k;
    u -= std::floor(u);
    v(k) = 0.05 + 0.9 * u;
  }
  const int I = shape.rows, J = shape.cols;
  const auto squeeze = [&](Eigen::Index lo, Eigen::Index len) {
    if (len == 0) return;
    const double s = v.segment(lo, len).sum();
    if (s > 0.9) v.segment(lo, len) *= 0.9 / s;
  };
  squeeze(0, I - 1);
  squeeze(I - 1, J - 2);
  squeeze(I + J - 3, I - 1);
  squeeze(2 * I + J - 4, J - 2);
  return v;
}

double projected_gradient_norm(const Composite& h, const Eigen::VectorXd& v,
                               double f_at_v, double fd_step) {
  const Eigen::VectorXd g = h.gradient(v, f_at_v, fd_step);
  return (project_vector(v + g, h.shape) - v).norm();
}

}  // namespace

double loglikelihood(const ContingencyTable& table,
                     const ProbabilityMatrix& P) {
  if (table.shape() != P.shape())
    throw Error(errc::ShapeMismatch, "table and matrix shapes differ");
  double ll = 0.0;
  for (int i = 0; i < P.rows(); ++i)
    for (int j = 0; j < P.cols(); ++j) {
      const auto n = table(i, j);
      if (n == 0) continue;
      const double p = P(i, j);
      if (p <= 0.0) return kNegInf;
      ll += static_cast<double>(n) * std::log(p);
    }
  return ll;
}

ProbabilityMatrix mle_rank1(const ContingencyTable& table) {
  if (table.total() == 0)
    throw Error(errc::EmptyTable, "contingency table has zero total count");
  const double n = static_cast<double>(table.total());
  const Eigen::VectorXd row_m =
      table.counts().cast<double>().rowwise().sum() / n;
  const Eigen::VectorXd col_m =
      table.counts().cast<double>().colwise().sum() / n;
  return validate_probability(row_m * col_m.transpose());
}

ChartPoint project_domain(const Eigen::VectorXd& raw, ChartId id, Shape shape) {
  if (raw.size() != chart_dim(shape))
    throw Error(errc::DimensionMismatch, "flat vector has wrong dimension");
  (void)id;
  return ChartPoint::from_vector(project_vector(raw, shape), shape);
}

FitResult optimize_chart(const ObjectiveFunction& F, ChartId id,
                         const ChartPoint& init,
                         const OptimizerSettings& settings) {
  if (!in_domain(init))
    throw Error(errc::OutOfDomain, "initial point is outside U'");
  const Shape shape{init.rows, init.cols};
  const Composite h{F, id, shape};

  Eigen::VectorXd x = init.to_vector();
  double fx = h(x);
  if (fx == kNegInf)
    throw Error(errc::ObjectiveUndefined,
                "objective is -inf at the initial point");
  if (!std::isfinite(fx))
    throw Error(errc::NonFinite, "objective is not finite at the initial point");

  double step_init = 1.0;
  int iters = 0;
  for (; iters < settings.max_iters; ++iters) {
    const Eigen::VectorXd g = h.gradient(x, fx, settings.fd_step);
    if (!g.allFinite())
      throw Error(errc::NonFinite, "gradient overflow");
    if ((project_vector(x + g, shape) - x).norm() <= settings.grad_tol) break;

    bool accepted = false;
    double step = step_init;
    for (int ls = 0; ls < 60 && step > 0.0; ++ls, step *= settings.backtrack_factor) {
      const Eigen::VectorXd cand = project_vector(x + step * g, shape);
      const Eigen::VectorXd move = cand - x;
      if (move.lpNorm<Eigen::Infinity>() == 0.0) continue;
      const double fc = h(cand);
      if (!std::isfinite(fc)) continue;
      if (fc >= fx + settings.armijo_c * g.dot(move) && fc >= fx) {
        x = cand;
        fx = fc;
        step_init = std::min(1.0, step / settings.backtrack_factor);
        accepted = true;
        break;
      }
    }
    if (!accepted) break;  // no ascent step: stationary within line search
  }

  FitResult result{chart_forward(id, ChartPoint::from_vector(x, shape)), 0.0,
                   FitSource{FitSource::Kind::Chart, id},
                   ChartPoint::from_vector(x, shape), ClassifyFlags{}, iters};
  result.value = F(result.matrix);
  result.flags = classify(*result.point);
  return result;
}

FitResult maximize_over_model(const ContingencyTable& table,
                              const OptimizerSettings& settings) {
  if (table.total() == 0)
    throw Error(errc::EmptyTable, "contingency table has zero total count");
  const ObjectiveFunction F = [&table](const ProbabilityMatrix& P) {
    return loglikelihood(table, P);
  };
  const Shape shape = table.shape();

  // Step 1: rank-one candidate, closed form.
  FitResult best{mle_rank1(table), 0.0, FitSource{FitSource::Kind::Rank1, {}},
                 std::nullopt, ClassifyFlags{}, 0};
  best.value = F(best.matrix);
  best.flags.rank_one = true;

  if (shape.rows < 2 || shape.cols < 2) return best;

  // Step 6 helper: a proportional-columns candidate must look stationary in
  // every chart whose inverse reaches it.
  const auto agrees_across_charts = [&](const ProbabilityMatrix& P,
                                        double f_at_p) {
    for (int j1 = 1; j1 <= shape.cols; ++j1)
      for (int j2 = j1 + 1; j2 <= shape.cols; ++j2) {
        const ChartId id{j1, j2};
        ChartPoint p;
        try {
          p = chart_inverse(id, P);
        } catch (const Error&) {
          continue;
        }
        const Composite h{F, id, shape};
        if (projected_gradient_norm(h, p.to_vector(), f_at_p,
                                    settings.fd_step) > settings.grad_tol)
          return false;
      }
    return true;
  };

  std::uint64_t chart_key = 0;
  for (int j1 = 1; j1 <= shape.cols; ++j1)
    for (int j2 = j1 + 1; j2 <= shape.cols; ++j2, ++chart_key) {
      const ChartId id{j1, j2};
      for (int m = 0; m < settings.multistarts; ++m) {
        const Eigen::VectorXd v0 =
            multistart_vector(shape, settings.seed, chart_key, m);
        try {
          FitResult r = optimize_chart(
              F, id, ChartPoint::from_vector(v0, shape), settings);
          if (r.flags.rank_one) continue;  // step 5: handled in step 1
          if (!r.flags.interior && !r.flags.boundary_of_m &&
              r.flags.proportional_columns &&
              !agrees_across_charts(r.matrix, r.value))
            continue;  // step 6: extremal behavior disagrees across charts
          if (r.value > best.value) best = std::move(r);
        } catch (const Error&) {
        }
      }
    }
  return best;
}

std::pair<ChartPoint, double> grid_oracle(const ObjectiveFunction& F,
                                          ChartId id, Shape shape,
                                          double resolution) {
  if (!(resolution > 0.0 && resolution <= 0.5))
    throw Error(errc::InvalidResolution, "resolution must be in (0, 0.5]");
  const int D = chart_dim(shape);
  if (D > 5)
    throw Error(errc::DimensionTooLarge, "grid oracle supports D <= 5 only");

  std::vector<double> levels;
  for (int i = 0; i * resolution <= 1.0 + 1e-12; ++i)
    levels.push_back(std::min(i * resolution, 1.0));

  const size_t L = levels.size();
  std::vector<size_t> idx(D, 0);
  Eigen::VectorXd v(D);
  double best_val = kNegInf;
  Eigen::VectorXd best_v = Eigen::VectorXd::Zero(D);
  bool done = false;
  while (!done) {
    for (int k = 0; k < D; ++k) v(k) = levels[idx[k]];
    const ChartPoint p = ChartPoint::from_vector(v, shape);
    if (in_domain(p)) {
      const double val = F(chart_forward(id, p));
      if (val > best_val) {
        best_val = val;
        best_v = v;
      }
    }
    int k = 0;
    for (; k < D; ++k) {
      if (++idx[k] < L) break;
      idx[k] = 0;
    }
    done = (k == D);
  }
  return {ChartPoint::from_vector(best_v, shape), best_val};
}

}  // namespace rank2
