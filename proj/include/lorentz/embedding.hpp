#pragma once

// Dyadic level decomposition of a step function and the embedding inequality
// J <= c K^(r/q) M^(r/p), checked link by link.

#include <cmath>
#include <string>
#include <vector>

#include "lorentz/functionals.hpp"

namespace lorentz {

/// {t : 2^k < f(t) <= 2^(k+1)} as a single interval.
struct DyadicLevel {
  int k;
  Interval interval;
  double measure;
};

struct DyadicDecomposition {
  std::vector<DyadicLevel> levels;  // k decreasing
};

/// Level k with 2^k < v <= 2^(k+1).
int dyadic_level(double v);

DyadicDecomposition dyadic_decompose(const StepFunction& f);

/// q 2^q / (1 - 2^-q): per-level constant in A <= c8 K.
double level_constant(const Exponents& e);
double log_level_constant(const Exponents& e);
/// (p/r) c8^(r/q).
double embedding_constant(const Exponents& e);

/// Both sides of 2^((k+1)q) / Psi(2^k)^(q/p) <= c8 \int_{2^(k-1)}^{2^k} t^(q-1) / Psi^(q/p),
/// as natural logs (q can be large enough to overflow either side).
struct LevelBound {
  double log_lhs;
  double log_integral;
  /// lhs / (c8 integral).
  double ratio(double c8) const { return std::exp(log_lhs - log_integral - std::log(c8)); }
};
LevelBound level_bound(const OrliczFunction& psi, const Exponents& e, int k);

/// lhs <= rhs, compared in natural logs.
struct ChainLink {
  std::string name;
  double log_lhs;
  double log_rhs;
  bool holds;
};

struct EmbeddingReport {
  double J = 0.0;
  FunctionalValue K;
  FunctionalValue M;
  double c8 = 0.0;
  double c = 0.0;
  double bound = kInf;
  double S6 = 0.0;        // (p/r) sum 2^((k+1)r) |I_k|^(r/p)
  double holder = 0.0;    // (p/r) A^(r/q) S9^(r/p)
  double log_A = 0.0;     // A = sum 2^((k+1)q) / Psi(2^k)^(q/p)
  double log_S8 = kInf;   // S8 = c8 K
  double S9 = 0.0;        // sum |I_k| Psi(2^k)
  std::vector<ChainLink> links;
  bool holds = true;
  bool hypothesis_failed = false;  // K or M divergent; holds is then vacuous
};

/// Relative slack allowed on each link for rounding.
inline constexpr double kChainSlack = 1e-12;

EmbeddingReport verify_embedding(const StepFunction& f, const OrliczFunction& psi,
                                 const Exponents& e);

}  // namespace lorentz
