#pragma once

#include <cstdint>
#include <vector>

#include "rank2/matrix.hpp"
#include "rank2/mixture.hpp"

namespace rank2 {

struct SampleSpec {
  std::int64_t n = 0;
  std::uint64_t seed = 0;
};

// One draw of the mixture story: pick the component, roll its two dice.
// All three indices are 1-based.
struct DrawTriple {
  int component = 0;
  int row = 0;
  int col = 0;

  bool operator==(const DrawTriple&) const = default;
};

// n independent multinomial draws from mixture_to_matrix(rep), counted into
// a table. Deterministic: draw i depends only on (seed, i).
ContingencyTable sample_table(const MixtureRepresentation& rep,
                              SampleSpec spec);

// The latent-component trace behind sample_table; aggregating it over the
// component reproduces sample_table bit-exactly for equal seeds.
std::vector<DrawTriple> sample_component_path(const MixtureRepresentation& rep,
                                              SampleSpec spec);

}  // namespace rank2
