#pragma once

#include "gph/io.hpp"

namespace gph {

// Marriage / divorce scenario. States N (never married), M (married), S (separated),
// W (widowed) and D (divorced). Rates: q12 = 0.95, q24 = 0.05, q34 = 0.1, q23 = 0.25,
// q25 = 0.07, q42 = 0.85, q35 = 0.5; half the population moves at speed 0.25.
//
// single:    transient {N, M, S, W}, absorbing {D}, pi = (0.5, 0.3, 0.1, 0.1)
// competing: q42 = 0 and W becomes absorbing; transient {N, M, S}, absorbing {W, D},
//            pi = (0.5, 0.3, 0.1) with the widowed tenth starting absorbed.
enum class MarriageVariant { single, competing };

constexpr std::size_t kNeverMarried = 0;
constexpr std::size_t kMarried = 1;
constexpr std::size_t kSeparated = 2;

// heterogeneous: Psi = 0.25 I; otherwise Psi = I.
ModelFile marriage_model(MarriageVariant variant, bool heterogeneous = true);

// Cause numbers (1-based) in the competing variant.
constexpr std::size_t kCauseWidowed = 1;
constexpr std::size_t kCauseDivorced = 2;

}  // namespace gph
