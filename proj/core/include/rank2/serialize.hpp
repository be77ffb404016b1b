#pragma once

#include <string>

#include "rank2/charts.hpp"
#include "rank2/mixture.hpp"
#include "rank2/optimize.hpp"

namespace rank2 {

// JSON wire formats. Matrices travel as CSV; these are the structured
// parameter objects.

std::string mixture_to_json(const MixtureRepresentation& rep);
MixtureRepresentation mixture_from_json(const std::string& text);

// Chart points carry their chart id; the b and d arrays list explicit
// column indices.
std::string chart_point_to_json(ChartId id, const ChartPoint& p);
std::pair<ChartId, ChartPoint> chart_point_from_json(const std::string& text);

std::string fit_result_to_json(const FitResult& r);

std::string error_to_json(const Error& e);

}  // namespace rank2
