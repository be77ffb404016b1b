#pragma once

#include "rank2/charts.hpp"
#include "rank2/mixture.hpp"
#include "rank2/rng.hpp"

namespace rank2 {

// Seeded generators for fuzz suites. Deterministic: everything derives from
// the SplitMix stream passed in.

// Strictly interior point of U': every coordinate in (0, 1) and every block
// sum bounded away from 1.
inline ChartPoint random_interior_point(Shape shape, rng::SplitMix& gen,
                                        double margin = 0.05) {
  const int I = shape.rows, J = shape.cols;
  const auto block = [&](int len) {
    Eigen::VectorXd v(len);
    for (int i = 0; i < len; ++i) v(i) = gen.uniform(margin, 1.0 - margin);
    const double s = v.sum();
    const double cap = 1.0 - margin;
    if (s > cap) v *= cap * gen.uniform(0.5, 1.0) / s;
    for (int i = 0; i < len; ++i) v(i) = std::max(v(i), margin / (len + 1));
    return v;
  };
  ChartPoint p;
  p.rows = I;
  p.cols = J;
  p.a = block(I - 1);
  p.b = block(J - 2);
  p.c = block(I - 1);
  p.d = block(J - 2);
  p.alpha = gen.uniform(margin, 1.0 - margin);
  return p;
}

inline Eigen::VectorXd random_simplex_vector(int len, rng::SplitMix& gen,
                                             double floor_mass = 0.0) {
  Eigen::VectorXd v(len);
  for (int i = 0; i < len; ++i) v(i) = floor_mass + gen.uniform();
  return v / v.sum();
}

// Valid k-component mixture with factors bounded away from degeneracy.
inline MixtureRepresentation random_mixture(Shape shape, int k,
                                            rng::SplitMix& gen) {
  std::vector<Eigen::VectorXd> cols, rows;
  for (int h = 0; h < k; ++h) {
    cols.push_back(random_simplex_vector(shape.rows, gen, 0.05));
    rows.push_back(random_simplex_vector(shape.cols, gen, 0.05));
  }
  Eigen::VectorXd w = random_simplex_vector(k, gen, 0.1);
  return MixtureRepresentation::create(std::move(w), std::move(cols),
                                       std::move(rows));
}

}  // namespace rank2
