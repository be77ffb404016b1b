#include "rank2/sampling.hpp"

#include "rank2/rng.hpp"

namespace rank2 {

namespace {

// Inverse-CDF draw from a probability vector; the trailing category absorbs
// rounding slack.
int categorical(const Eigen::VectorXd& probs, double u) {
  double cum = 0.0;
  for (Eigen::Index i = 0; i + 1 < probs.size(); ++i) {
    cum += probs(i);
    if (u < cum) return static_cast<int>(i) + 1;
  }
  return static_cast<int>(probs.size());
}

}  // namespace

std::vector<DrawTriple> sample_component_path(const MixtureRepresentation& rep,
                                              SampleSpec spec) {
  if (spec.n < 0)
    throw Error(errc::DimensionMismatch, "sample size must be >= 0");
  std::vector<DrawTriple> trace;
  trace.reserve(static_cast<size_t>(spec.n));
  for (std::int64_t i = 0; i < spec.n; ++i) {
    const auto counter = static_cast<std::uint64_t>(i);
    const int h =
        categorical(rep.weights, rng::uniform_at(spec.seed, counter, 1));
    const int row = categorical(rep.col_factors[h - 1],
                                rng::uniform_at(spec.seed, counter, 2));
    const int col = categorical(rep.row_factors[h - 1],
                                rng::uniform_at(spec.seed, counter, 3));
    trace.push_back(DrawTriple{h, row, col});
  }
  return trace;
}

ContingencyTable sample_table(const MixtureRepresentation& rep,
                              SampleSpec spec) {
  const auto I = rep.col_factors.at(0).size();
  const auto J = rep.row_factors.at(0).size();
  ContingencyTable::Counts counts = ContingencyTable::Counts::Zero(I, J);
  for (const DrawTriple& t : sample_component_path(rep, spec))
    ++counts(t.row - 1, t.col - 1);
  return ContingencyTable(std::move(counts));
}

}  // namespace rank2
