#pragma once

#include <vector>

namespace spikelab {

struct AiryEval {
    double u = 0.0;
    double ai = 0.0;
    double ai_prime = 0.0;
};

/// Largest |u| accepted by airy().
inline constexpr double kAiryRange = 30.0;

/// Ai and Ai' for u in [-30, 30]: Maclaurin series (extended precision) for
/// |u| <= 8, asymptotic expansions truncated at the smallest term beyond.
AiryEval airy(double u);

/// Integral of Ai over (u, +inf) for u in [-30, 30].
double airy_tail_integral(double u);

/// Tail integrals at ascending points, sharing work between consecutive points.
std::vector<double> airy_tail_integrals(const std::vector<double>& ascending);

}  // namespace spikelab
