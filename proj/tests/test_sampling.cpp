#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "rank2/generators.hpp"
#include "rank2/sampling.hpp"

using namespace rank2;

namespace {

MixtureRepresentation diag_mixture() {
  Eigen::VectorXd w(2), e1(2), e2(2);
  w << 0.5, 0.5;
  e1 << 1, 0;
  e2 << 0, 1;
  return MixtureRepresentation::create(w, {e1, e2}, {e1, e2});
}

ContingencyTable aggregate(const std::vector<DrawTriple>& trace, Shape sh) {
  ContingencyTable::Counts c = ContingencyTable::Counts::Zero(sh.rows, sh.cols);
  for (const auto& t : trace) ++c(t.row - 1, t.col - 1);
  return ContingencyTable(std::move(c));
}

}  // namespace

TEST_CASE("n = 0 gives an empty table and an empty trace") {
  const auto rep = diag_mixture();
  CHECK(sample_table(rep, {0, 1}).total() == 0);
  CHECK(sample_component_path(rep, {0, 1}).empty());
}

TEST_CASE("same seed, same table") {
  const auto rep = diag_mixture();
  const auto a = sample_table(rep, {10000, 42});
  const auto b = sample_table(rep, {10000, 42});
  CHECK(a.counts() == b.counts());
  const auto c = sample_table(rep, {10000, 43});
  CHECK(a.counts() != c.counts());
}

TEST_CASE("trace aggregation reproduces the table bit-exactly") {
  rng::SplitMix gen(97);
  for (int c = 0; c < 100; ++c) {
    const Shape sh{2 + c % 3, 2 + c % 4};
    const auto rep = random_mixture(sh, 1 + c % 2, gen);
    const SampleSpec spec{200, gen.next()};
    const auto table = sample_table(rep, spec);
    const auto trace = sample_component_path(rep, spec);
    CHECK(aggregate(trace, sh).counts() == table.counts());
  }
}

TEST_CASE("single-component mixtures always pick component 1") {
  rng::SplitMix gen(101);
  const auto rep = random_mixture(Shape{3, 3}, 1, gen);
  for (const auto& t : sample_component_path(rep, {500, 7}))
    CHECK(t.component == 1);
}

TEST_CASE("empirical frequencies match the diagonal mixture law") {
  const auto rep = diag_mixture();
  const auto P = mixture_to_matrix(rep);
  const auto table = sample_table(rep, {1000000, 20260826});
  const auto emp = normalize(table);
  // 5 sigma binomial bound at p = 0.5, n = 1e6.
  CHECK((emp.entries() - P.entries()).lpNorm<Eigen::Infinity>() < 0.003);
}

TEST_CASE("empirical frequencies converge on 3x3 mixtures") {
  rng::SplitMix gen(103);
  const auto rep = random_mixture(Shape{3, 3}, 2, gen);
  const auto P = mixture_to_matrix(rep);
  for (std::uint64_t seed = 1; seed <= 10; ++seed) {
    const auto emp = normalize(sample_table(rep, {1000000, seed}));
    CHECK((emp.entries() - P.entries()).lpNorm<Eigen::Infinity>() < 0.005);
  }
}
