#pragma once

// Seeded property sweeps over random algebra elements.
//
// Every sample is evaluated independently from (seed, property, index) and
// the sweep keeps only maxima and a violation count. Both merges are order
// independent, so the serial and OpenMP sweeps return identical results for
// any thread count.
//
// Relative residuals divide by the summed magnitude of the terms entering the
// identity (e.g. ds^2 + dt^2 + dq^2 for ds^2 = dt^2 - dq^2), which is the
// scale rounding error is proportional to.

#include <cmath>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "fiber/signature.hpp"

namespace fiber {

enum class Execution { serial, parallel };

/// Per-sample outcome, also used as the sweep accumulator.
struct Residual {
  double abs = 0;
  double rel = 0;
  std::size_t violations = 0;

  /// Records |lhs - rhs| against `scale` (0 scale only accepts exact agreement).
  void compare(double lhs, double rhs, double scale) noexcept {
    const double d = std::abs(lhs - rhs);
    note(d, scale > 0 ? d / scale : (d == 0 ? 0.0 : std::numeric_limits<double>::infinity()));
  }

  void note(double a, double r) noexcept {
    abs = worst(abs, a);
    rel = worst(rel, r);
  }

  void merge(const Residual& other) noexcept {
    note(other.abs, other.rel);
    violations += other.violations;
  }

 private:
  // NaN counts as the worst possible residual.
  static double worst(double current, double candidate) noexcept {
    if (std::isnan(candidate)) return std::numeric_limits<double>::infinity();
    return candidate > current ? candidate : current;
  }
};

/// Which residual decides pass/fail.
enum class Gate { relative, absolute, violations };

std::string_view to_string(Gate g) noexcept;

using SampleFn = Residual (*)(const Signature&, std::uint64_t seed, std::size_t index);

struct Property {
  std::string_view name;
  Gate gate;
  double default_tolerance;
  SampleFn sample;
};

struct PropertyResult {
  std::string name;
  std::size_t samples = 0;
  Gate gate = Gate::relative;
  double tolerance = 0;
  double max_abs_residual = 0;
  double max_rel_residual = 0;
  std::size_t violations = 0;
  bool pass = false;
};

struct VerifyConfig {
  Signature signature;
  std::size_t samples = 1000;
  std::uint64_t seed = 0;
  /// Overrides every property's default tolerance (not the violation gates).
  std::optional<double> tolerance;
  Execution execution = Execution::parallel;
};

struct VerificationReport {
  VerifyConfig config;
  std::vector<PropertyResult> properties;
  bool pass = false;
};

/// Properties applicable to `sig`: the fiber suite for "++", the C2 suite for
/// "+", the Euclidean suites for "-" and "-+", plus generic algebra checks.
std::vector<Property> properties_for(const Signature& sig);

/// Looks up a property by name among properties_for(sig).
std::optional<Property> find_property(const Signature& sig, std::string_view name);

Residual sweep(const Property& property, const Signature& sig, std::size_t samples,
               std::uint64_t seed, Execution execution);

PropertyResult run_property(const Property& property, const Signature& sig, std::size_t samples,
                            std::uint64_t seed, std::optional<double> tolerance = std::nullopt,
                            Execution execution = Execution::parallel);

VerificationReport run_verification(const VerifyConfig& config);

/// Coefficient range of random samples.
inline constexpr double kSampleLow = -10.0;
inline constexpr double kSampleHigh = 10.0;
/// Rapidity range of random boosts.
inline constexpr double kMaxRapidity = 3.0;

}  // namespace fiber
