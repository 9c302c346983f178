#pragma once

#include <optional>
#include <string_view>
#include <vector>

#include "spikelab/ensembles.hpp"

namespace spikelab {

enum class Regime { Supercritical, Critical, Subcritical };
enum class PredictedLaw { GaussianGk, BbpFk, TracyWidom };

std::string_view to_string(Regime regime);
std::string_view to_string(PredictedLaw law);
Regime parse_regime(std::string_view text);

struct PhaseQuantities {
    double gamma = 1.0;  ///< gamma_N = p / n
    double u_plus = 0.0;
    double u_minus = 0.0;
    double w_c = 0.0;
    std::optional<double> tau;       ///< tau(pi_1), present when spikes exist
    std::optional<double> sigma_pi;  ///< sigma(pi_1), present when spikes exist and it is real
    double rho_n = 0.0;
    double sigma_n = 0.0;
};

struct RegimeReport {
    std::vector<Regime> spike_regimes;  ///< one entry per spike, same order
    Regime leading = Regime::Subcritical;
    int multiplicity = 0;  ///< number of spikes tied with pi_1 (0 when white)
    PredictedLaw law = PredictedLaw::TracyWidom;
};

/// Formulas in a generic number type so the edge identities can be checked
/// in exact rational arithmetic. `inv_gamma` is 1 / gamma.
template <class T>
T tau_value(const T& pi, const T& inv_gamma, const T& sigma2)
{
    return sigma2 * pi * (T(1) + inv_gamma / (pi - T(1)));
}

/// sigma(pi)^2; negative below w_c.
template <class T>
T sigma_pi_squared(const T& pi, const T& inv_gamma, const T& sigma2)
{
    const T shift = pi - T(1);
    return sigma2 * sigma2 * pi * pi * (T(1) - inv_gamma / (shift * shift));
}

/// sigma^2 (1 + s)^2 with s = gamma^{-1/2} (use -s for the lower edge).
template <class T>
T bulk_edge(const T& inv_sqrt_gamma, const T& sigma2)
{
    const T a = T(1) + inv_sqrt_gamma;
    return sigma2 * a * a;
}

double critical_spike(double gamma);
double tau_of(double pi, double gamma, double sigma);
/// Empty when pi < w_c (the formula would be imaginary).
std::optional<double> sigma_of(double pi, double gamma, double sigma);

PhaseQuantities phase_quantities(const EnsembleSpec& spec);

double mp_density(double x, double sigma, double gamma);
/// Marchenko-Pastur CDF by adaptive Gauss-Kronrod quadrature.
double mp_cdf(double x, double sigma, double gamma);

RegimeReport classify(const EnsembleSpec& spec, double tie_tolerance = 1e-12);

/// Almost-sure limit of lambda_1: tau(pi_1) above w_c, u_+ otherwise.
double as_limit(const EnsembleSpec& spec);

/// Spike 1 + sqrt(n / p) when n / p is a ratio of perfect squares, computed
/// from the reduced integers so that it is the nearest double to the exact value.
std::optional<double> exact_critical_spike(int n, int p);

}  // namespace spikelab
