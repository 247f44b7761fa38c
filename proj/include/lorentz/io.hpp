#pragma once

// JSON function documents (version "1") and the value,measure CSV format.

#include <istream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "lorentz/monotone.hpp"
#include "lorentz/orlicz.hpp"
#include "lorentz/rearrange.hpp"

namespace lorentz {

/// Malformed or inconsistent input; message is user-facing.
class InputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct TwoPowerPsiDoc {
  double p;
  double epsilon;
  bool operator==(const TwoPowerPsiDoc&) const = default;
};

/// g must be a knot interpolant with dyadic tails (what the construction emits).
struct ConstructedPsiDoc {
  Exponents exponents;
  TailedDecreasingFunction g;
  bool operator==(const ConstructedPsiDoc&) const = default;
};

using FunctionDocument = std::variant<StepFunction, TwoPowerPsiDoc, PiecewisePowerPsi,
                                      ConstructedPsiDoc, TailedDecreasingFunction>;

inline constexpr const char* kFormatVersion = "1";

/// "step", "two_power_psi", "piecewise_power_psi", "constructed_psi", "tailed".
const char* kind_name(const FunctionDocument& doc);

std::string serialize(const FunctionDocument& doc);
FunctionDocument parse_document(std::string_view text);
FunctionDocument read_document(const std::string& path);
void write_document(const std::string& path, const FunctionDocument& doc);

bool is_psi(const FunctionDocument& doc);
/// InputError unless the document holds a Psi kind.
OrliczFunction to_psi(const FunctionDocument& doc);

/// value,measure rows; blank lines skipped, optional "value,measure" header on
/// the first line. Errors name the 1-based line.
std::vector<WeightedSample> read_samples_csv(std::istream& in);

/// Shortest decimal that reads back to x; "inf"/"-inf"/"nan" otherwise.
std::string format_number(double x);

}  // namespace lorentz
