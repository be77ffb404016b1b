#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "rank2/generators.hpp"
#include "rank2/serialize.hpp"

using namespace rank2;

namespace {

// Entrywise oracle for the chart map: scalar loops, no shared code with
// chart_forward beyond the point layout.
Eigen::MatrixXd forward_oracle(ChartId id, const ChartPoint& p) {
  const int I = p.rows, J = p.cols;
  Eigen::MatrixXd m(I, J);
  const auto others = other_columns(J, id);
  for (int i = 0; i < I; ++i) {
    const double ca = (i < I - 1) ? p.a(i) : 1.0 - p.a.sum();
    const double cc = (i < I - 1) ? p.c(i) : 1.0 - p.c.sum();
    for (int j = 1; j <= J; ++j) {
      double u, v;
      if (j == id.j1) {
        u = 1.0 - p.b.sum();
        v = 0.0;
      } else if (j == id.j2) {
        u = 0.0;
        v = 1.0 - p.d.sum();
      } else {
        const auto idx =
            std::find(others.begin(), others.end(), j) - others.begin();
        u = p.b(idx);
        v = p.d(idx);
      }
      m(i, j - 1) = p.alpha * ca * u + (1.0 - p.alpha) * cc * v;
    }
  }
  return m;
}

ChartPoint point22(double a1, double c1, double alpha) {
  ChartPoint p;
  p.rows = p.cols = 2;
  p.a = Eigen::VectorXd::Constant(1, a1);
  p.b = Eigen::VectorXd(0);
  p.c = Eigen::VectorXd::Constant(1, c1);
  p.d = Eigen::VectorXd(0);
  p.alpha = alpha;
  return p;
}

ChartPoint uniform_point(Shape sh, double coord, double alpha) {
  ChartPoint p;
  p.rows = sh.rows;
  p.cols = sh.cols;
  p.a = Eigen::VectorXd::Constant(sh.rows - 1, coord);
  p.b = Eigen::VectorXd::Constant(sh.cols - 2, coord);
  p.c = Eigen::VectorXd::Constant(sh.rows - 1, coord);
  p.d = Eigen::VectorXd::Constant(sh.cols - 2, coord);
  p.alpha = alpha;
  return p;
}

}  // namespace

TEST_CASE("chart_dim") {
  CHECK(chart_dim(Shape{2, 2}) == 3);
  CHECK(chart_dim(Shape{2, 3}) == 5);
  CHECK(chart_dim(Shape{3, 3}) == 7);
  CHECK_THROWS_AS(chart_dim(Shape{1, 4}), Error);
}

TEST_CASE("in_domain") {
  CHECK(in_domain(uniform_point(Shape{3, 4}, 0.1, 0.1)));
  ChartPoint p = uniform_point(Shape{3, 4}, 0.1, 1.0);
  CHECK(in_domain(p));  // closed domain: alpha = 1 included
  p.a = Eigen::VectorXd::Constant(2, 0.7);
  CHECK_FALSE(in_domain(p));  // sum a > 1
  p.a = Eigen::VectorXd::Constant(3, 0.1);
  CHECK_THROWS_AS(in_domain(p), Error);
}

TEST_CASE("chart_forward basis dyads give the diagonal matrix") {
  const auto P = chart_forward(ChartId{1, 2}, point22(1.0, 0.0, 0.5));
  CHECK(P(0, 0) == doctest::Approx(0.5));
  CHECK(P(0, 1) == 0.0);
  CHECK(P(1, 0) == 0.0);
  CHECK(P(1, 1) == doctest::Approx(0.5));
}

TEST_CASE("chart_forward symmetric 2x3 fixture") {
  ChartPoint p;
  p.rows = 2;
  p.cols = 3;
  p.a = Eigen::VectorXd::Constant(1, 0.5);
  p.b = Eigen::VectorXd::Constant(1, 0.5);
  p.c = Eigen::VectorXd::Constant(1, 0.5);
  p.d = Eigen::VectorXd::Constant(1, 0.5);
  p.alpha = 0.5;
  const auto P = chart_forward(ChartId{1, 2}, p);
  Eigen::MatrixXd want(2, 3);
  want << 0.125, 0.125, 0.25, 0.125, 0.125, 0.25;
  CHECK((P.entries() - want).lpNorm<Eigen::Infinity>() <= 1e-15);
}

TEST_CASE("chart_forward rejects out-of-domain points") {
  CHECK_THROWS_AS(chart_forward(ChartId{1, 2}, point22(1.2, 0.0, 0.5)), Error);
}

TEST_CASE("fuzz: forward image is a rank <= 2 probability matrix") {
  rng::SplitMix gen(41);
  const Shape shapes[] = {{2, 2}, {3, 4}, {4, 6}, {8, 10}};
  for (int c = 0; c < 1000; ++c) {
    const Shape sh = shapes[c % 4];
    const ChartPoint p = random_interior_point(sh, gen);
    int j1 = 1 + static_cast<int>(gen.uniform() * (sh.cols - 1));
    int j2 = j1 + 1 + static_cast<int>(gen.uniform() * (sh.cols - j1));
    j2 = std::min(j2, sh.cols);
    const ChartId id{j1, j2};
    const auto P = chart_forward(id, p);
    CHECK(P.entries().minCoeff() >= 0.0);
    CHECK(numerical_rank(P) <= 2);
    CHECK((P.entries() - forward_oracle(id, p)).lpNorm<Eigen::Infinity>() <=
          1e-14);
  }
}

TEST_CASE("chart_inverse on the diagonal matrix") {
  Eigen::MatrixXd d = Eigen::MatrixXd::Zero(2, 2);
  d(0, 0) = d(1, 1) = 0.5;
  const auto p = chart_inverse(ChartId{1, 2}, validate_probability(d));
  CHECK(p.a(0) == doctest::Approx(1.0));
  CHECK(p.c(0) == doctest::Approx(0.0));
  CHECK(p.alpha == doctest::Approx(0.5));
}

TEST_CASE("chart_inverse zero-column branch") {
  Eigen::MatrixXd m(2, 3);
  m << 0.5, 0, 0.5, 0, 0, 0;
  const auto p = chart_inverse(ChartId{1, 2}, validate_probability(m));
  CHECK(p.alpha == 1.0);
  CHECK(p.c.lpNorm<Eigen::Infinity>() == 0.0);
  CHECK(p.d.lpNorm<Eigen::Infinity>() == 0.0);
  CHECK(p.a(0) == doctest::Approx(1.0));
  CHECK(p.b(0) == doctest::Approx(0.5));  // t_3 = 1 against column 1
  // Mirror branch: first column zero.
  Eigen::MatrixXd m2(2, 3);
  m2 << 0, 0.5, 0.5, 0, 0, 0;
  const auto q = chart_inverse(ChartId{1, 2}, validate_probability(m2));
  CHECK(q.alpha == 0.0);
  CHECK(q.a.lpNorm<Eigen::Infinity>() == 0.0);
}

TEST_CASE("chart_inverse fails off the chart image") {
  Eigen::MatrixXd m(4, 4);
  m << 1, 0, 1, 0, 1, 0, 0, 1, 0, 1, 1, 0, 0, 1, 0, 1;
  const auto P = validate_probability(m / 8.0);
  CHECK_THROWS_AS(chart_inverse(ChartId{1, 2}, P), Error);
}

TEST_CASE("fuzz: round trips in both directions") {
  rng::SplitMix gen(43);
  const Shape shapes[] = {{2, 2}, {2, 3}, {3, 3}, {3, 5}, {4, 4}};
  for (int c = 0; c < 500; ++c) {
    const Shape sh = shapes[c % 5];
    const ChartPoint p = random_interior_point(sh, gen);
    const ChartId id{1, 1 + (c % (sh.cols - 1)) + 1};
    // Round trip A: inverse of forward recovers the point.
    const auto P = chart_forward(id, p);
    const auto q = chart_inverse(id, P);
    CHECK((q.to_vector() - p.to_vector()).lpNorm<Eigen::Infinity>() <= 1e-10);
    // Round trip B: forward of inverse reproduces the matrix.
    const auto Q = chart_forward(id, q);
    CHECK((Q.entries() - P.entries()).lpNorm<Eigen::Infinity>() <= 1e-10);
  }
}

TEST_CASE("select_charts") {
  Eigen::MatrixXd m(2, 3);
  m << 0.2, 0.2, 0, 0, 0.2, 0.4;
  const auto ids = select_charts(validate_probability(m));
  CHECK(std::find(ids.begin(), ids.end(), ChartId{1, 3}) != ids.end());

  Eigen::MatrixXd d = Eigen::MatrixXd::Zero(2, 2);
  d(0, 0) = d(1, 1) = 0.5;
  CHECK(select_charts(validate_probability(d)) ==
        std::vector<ChartId>{ChartId{1, 2}});

  // Rank one with every column nonzero: no inversion branch applies
  // anywhere, so the list is empty (the covering corollary needs rank 2).
  const auto uniform =
      validate_probability(Eigen::MatrixXd::Constant(2, 3, 1.0 / 6));
  CHECK(select_charts(uniform).empty());

  // Rank one with a zero base column is reachable through the degenerate
  // branch and is reported.
  Eigen::MatrixXd z(2, 2);
  z << 0.5, 0, 0.5, 0;
  CHECK(select_charts(validate_probability(z)) ==
        std::vector<ChartId>{ChartId{1, 2}});

  Eigen::MatrixXd r3(4, 4);
  r3 << 1, 0, 1, 0, 1, 0, 0, 1, 0, 1, 1, 0, 0, 1, 0, 1;
  CHECK_THROWS_AS(select_charts(validate_probability(r3 / 8.0)), Error);
}

TEST_CASE("fuzz: coverage of random rank-2 matrices") {
  rng::SplitMix gen(47);
  for (int c = 0; c < 1000; ++c) {
    const Shape sh{2 + c % 3, 2 + c % 4};
    const auto P = mixture_to_matrix(random_mixture(sh, 2, gen));
    CHECK_FALSE(select_charts(P).empty());
  }
}

TEST_CASE("classify") {
  const Shape sh{3, 4};
  CHECK(classify(uniform_point(sh, 0.1, 0.5)) ==
        ClassifyFlags{.interior = true});

  auto p = uniform_point(sh, 0.1, 0.0);
  CHECK(classify(p).rank_one);

  p = uniform_point(sh, 0.1, 0.5);
  p.b(0) = 0.0;
  auto f = classify(p);
  CHECK(f.proportional_columns);
  CHECK_FALSE(f.boundary_of_m);

  p = uniform_point(sh, 0.1, 0.5);
  p.a(0) = 0.0;
  f = classify(p);
  CHECK(f.boundary_of_m);
  CHECK_FALSE(f.proportional_columns);

  // Full block sums raise both boundary flags (the source statement is
  // ambiguous between the two conclusions).
  p = uniform_point(sh, 0.1, 0.5);
  p.a = Eigen::VectorXd::Constant(2, 0.5);
  f = classify(p);
  CHECK(f.boundary_of_m);
  CHECK(f.proportional_columns);

  CHECK_THROWS_AS(classify(uniform_point(sh, 0.7, 0.5)), Error);
}

TEST_CASE("interior lemma: interior points give strictly positive t and s") {
  rng::SplitMix gen(53);
  for (int c = 0; c < 200; ++c) {
    const Shape sh{2 + c % 3, 3 + c % 3};
    const ChartPoint p = random_interior_point(sh, gen);
    REQUIRE(classify(p).interior);
    const auto P = chart_forward(ChartId{1, 2}, p);
    const auto cc = column_combination(P, 1, 2);
    CHECK(cc.t.minCoeff() > 0.0);
    CHECK(cc.s.minCoeff() > 0.0);
  }
}

TEST_CASE("jacobian rank equals the chart dimension") {
  rng::SplitMix gen(59);
  const Shape shapes[] = {{2, 2}, {2, 3}, {3, 3}, {3, 5}, {4, 4}};
  for (const Shape sh : shapes) {
    const int D = chart_dim(sh);
    for (int c = 0; c < 50; ++c) {
      const ChartPoint p = random_interior_point(sh, gen);
      const auto jac = jacobian(ChartId{1, 2}, p);
      REQUIRE(jac.rows() == sh.rows * sh.cols);
      REQUIRE(jac.cols() == D);
      CHECK(numerical_rank(jac, 1e-6) == D);
    }
  }
}

TEST_CASE("jacobian requires an interior point") {
  CHECK_THROWS_AS(jacobian(ChartId{1, 2}, point22(0.9, 0.1, 0.0)), Error);
}

TEST_CASE("chart point json round trip") {
  rng::SplitMix gen(61);
  const ChartPoint p = random_interior_point(Shape{3, 5}, gen);
  const ChartId id{2, 4};
  const auto [id2, q] = chart_point_from_json(chart_point_to_json(id, p));
  CHECK(id2 == id);
  CHECK((q.to_vector() - p.to_vector()).lpNorm<Eigen::Infinity>() == 0.0);
}
