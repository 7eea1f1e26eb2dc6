#pragma once

#include <numbers>

namespace mit {

// Vacuum permeability (H/m). Single definition for every assembly routine.
inline constexpr double kMu0 = 4.0e-7 * std::numbers::pi;

// Measurement polarity. Fixed once by the calibration experiment in
// tests/test_monotonicity.cpp: with polarity +1 the map
//   eta -> lambda^2 M^T (R(eta) + lambda L)^{-1} M
// is Loewner-DECREASING in eta, so the polarity is set to -1 to make
// pointwise-larger resistivity maps yield Loewner-larger transfer matrices.
// Every TransferMatrix records the convention it was computed under.
inline constexpr int kSignConvention = -1;

inline constexpr const char* kToolVersion = "0.1.0";

}  // namespace mit
