#pragma once

#include <stdexcept>
#include <string>
#include <utility>

namespace rank2 {

// Domain error with a stable machine-readable code. Codes are the ones
// surfaced by the CLI as single-line error objects.
class Error : public std::runtime_error {
 public:
  Error(std::string code, const std::string& message)
      : std::runtime_error(message), code_(std::move(code)) {}

  const std::string& code() const noexcept { return code_; }

 private:
  std::string code_;
};

namespace errc {
inline constexpr const char* NegativeEntry = "NegativeEntry";
inline constexpr const char* SumOutOfTolerance = "SumOutOfTolerance";
inline constexpr const char* EmptyTable = "EmptyTable";
inline constexpr const char* ShapeMismatch = "ShapeMismatch";
inline constexpr const char* ShapeTooSmall = "ShapeTooSmall";
inline constexpr const char* DimensionMismatch = "DimensionMismatch";
inline constexpr const char* OutOfDomain = "OutOfDomain";
inline constexpr const char* NotInChartImage = "NotInChartImage";
inline constexpr const char* AlphaInconsistent = "AlphaInconsistent";
inline constexpr const char* RankTooHigh = "RankTooHigh";
inline constexpr const char* RankOne = "RankOne";
inline constexpr const char* DependentBaseColumns = "DependentBaseColumns";
inline constexpr const char* NotRepresentable = "NotRepresentable";
inline constexpr const char* NotInterior = "NotInterior";
inline constexpr const char* ObjectiveUndefined = "ObjectiveUndefined";
inline constexpr const char* NonFinite = "NonFinite";
inline constexpr const char* InvalidResolution = "InvalidResolution";
inline constexpr const char* DimensionTooLarge = "DimensionTooLarge";
inline constexpr const char* ParseError = "ParseError";
}  // namespace errc

}  // namespace rank2
