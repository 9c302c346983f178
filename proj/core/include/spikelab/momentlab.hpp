#pragma once

#include <map>
#include <string_view>
#include <utility>

#include <gmpxx.h>

#include "spikelab/ensembles.hpp"
#include "spikelab/phase.hpp"

namespace spikelab::moments {

using Rational = mpq_class;

enum class Method { ExactEnumeration, SymbolicGaussian, MonteCarlo };

std::string_view to_string(Method method);
Method parse_method(std::string_view text);

struct MomentRequest {
    EnsembleSpec spec;
    int power = 1;
    Method method = Method::ExactEnumeration;
    int trials = 10000;  ///< Monte Carlo only
    int workers = 0;     ///< Monte Carlo only; 0 = all cores
};

struct MomentReport {
    Method method = Method::ExactEnumeration;
    int power = 1;
    Rational value;           ///< exact methods
    double mc_mean = 0.0;     ///< Monte Carlo
    double mc_stderr = 0.0;   ///< Monte Carlo
    int mc_trials = 0;
    /// (number of 1-edges, odd marked instants) -> summed path contribution.
    std::map<std::pair<int, int>, Rational> path_terms;

    double estimate() const { return method == Method::MonteCarlo ? mc_mean : value.get_d(); }
};

/// Largest index-tuple count accepted by the path expansion.
inline constexpr double kMaxPathTuples = 2e7;
/// Largest number of entry assignments accepted by entry_enumeration_moment.
inline constexpr double kMaxAssignments = 2e7;

/// Per-part moment E[Y^k] of the entry law, exact (sigma^2 converted exactly
/// from its binary value).
Rational part_moment(const EntryLaw& law, Field field, int k);

/// E[X^a conj(X)^b] for one entry.
Rational entry_moment(const EntryLaw& law, Field field, int a, int b);

/// E Tr V^s by the path expansion over (i_0..i_{s-1}, j_1..j_s).
/// ExactEnumeration requires a finitely supported law (SupportError otherwise);
/// SymbolicGaussian requires the Gaussian law; MonteCarlo samples `trials` draws.
MomentReport exact_trace_moment(const MomentRequest& req);

/// Second oracle: E Tr V^s by enumerating every assignment of the discrete
/// entries of X and averaging Tr V^s exactly.
Rational entry_enumeration_moment(const EnsembleSpec& spec, int power);

/// Power s_N: round(c sqrt(N)) above w_c, round(c N^{2/3}) otherwise (at least 1).
int moment_power(Regime regime, int n, double c);

/// tau(pi_1) above w_c, u_+ otherwise.
double moment_scale(const EnsembleSpec& spec);

struct MomentEstimate {
    double mean = 0.0;
    double stderr_ = 0.0;
    double variance = 0.0;  ///< sample variance of the per-draw statistic
    double variance_stderr = 0.0;
    int power = 0;
    double scale = 1.0;
    int trials = 0;
};

/// Monte Carlo statistics of Tr (V_N / scale)^power using draws 0..trials-1.
MomentEstimate trace_power_statistics(const EnsembleSpec& spec, int power, double scale, int trials,
                                      int workers = 0);

/// |m_a - m_b| / pooled standard error for Tr (V_N / scale)^power.
double universality_gap(const EnsembleSpec& spec_a, const EnsembleSpec& spec_b, int power, int trials,
                        int workers = 0);

/// E Tr (V_N / scale)^{s_N} with s_N = moment_power(regime, n, c).
MomentEstimate bounded_moment_check(const EnsembleSpec& spec, double c, int trials, int workers = 0);

/// exp((s^2 / 2N) (sigma(pi_1) / tau(pi_1))^2), with sqrt(2) sigma(pi_1) for the real field.
double supercritical_moment_prediction(const EnsembleSpec& spec, int power);

}  // namespace spikelab::moments
