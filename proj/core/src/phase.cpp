#include "spikelab/phase.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include "spikelab/errors.hpp"

namespace spikelab {

std::string_view to_string(Regime regime)
{
    switch (regime) {
    case Regime::Supercritical:
        return "supercritical";
    case Regime::Critical:
        return "critical";
    case Regime::Subcritical:
        return "subcritical";
    }
    return "unknown";
}

std::string_view to_string(PredictedLaw law)
{
    switch (law) {
    case PredictedLaw::GaussianGk:
        return "gaussian_gk";
    case PredictedLaw::BbpFk:
        return "bbp_fk";
    case PredictedLaw::TracyWidom:
        return "tracy_widom";
    }
    return "unknown";
}

Regime parse_regime(std::string_view text)
{
    if (text == "supercritical")
        return Regime::Supercritical;
    if (text == "critical")
        return Regime::Critical;
    if (text == "subcritical")
        return Regime::Subcritical;
    throw FormatError("unknown regime '" + std::string(text) + "'");
}

double critical_spike(double gamma)
{
    return 1.0 + 1.0 / std::sqrt(gamma);
}

double tau_of(double pi, double gamma, double sigma)
{
    return tau_value(pi, 1.0 / gamma, sigma * sigma);
}

std::optional<double> sigma_of(double pi, double gamma, double sigma)
{
    const double sq = sigma_pi_squared(pi, 1.0 / gamma, sigma * sigma);
    const double scale = sigma * sigma * sigma * sigma * pi * pi;
    if (sq < 0.0) {
        // Rounding at pi = w_c can leave a tiny negative residue.
        if (sq > -1e-12 * scale)
            return 0.0;
        return std::nullopt;
    }
    return std::sqrt(sq);
}

PhaseQuantities phase_quantities(const EnsembleSpec& spec)
{
    spec.validate();
    PhaseQuantities q;
    const double sigma = spec.entry_law.sigma;
    const double sigma2 = sigma * sigma;
    q.gamma = spec.gamma_n();
    const double s = 1.0 / std::sqrt(q.gamma);
    q.u_plus = bulk_edge(s, sigma2);
    q.u_minus = bulk_edge(-s, sigma2);
    q.w_c = 1.0 + s;
    if (!spec.spikes.empty()) {
        q.tau = tau_of(spec.spikes.front(), q.gamma, sigma);
        q.sigma_pi = sigma_of(spec.spikes.front(), q.gamma, sigma);
    }
    q.rho_n = q.u_plus;
    q.sigma_n = s * sigma2 * std::pow(1.0 + s, 4.0 / 3.0);
    return q;
}

double mp_density(double x, double sigma, double gamma)
{
    const double sigma2 = sigma * sigma;
    const double s = 1.0 / std::sqrt(gamma);
    const double up = bulk_edge(s, sigma2);
    const double um = bulk_edge(-s, sigma2);
    if (x <= um || x >= up || x <= 0.0)
        return 0.0;
    return gamma / (2.0 * std::numbers::pi * x * sigma2) * std::sqrt((up - x) * (x - um));
}

double mp_cdf(double x, double sigma, double gamma)
{
    if (!(gamma >= 1.0) || !(sigma > 0.0))
        throw DomainError("mp_cdf requires gamma >= 1 and sigma > 0");
    const double sigma2 = sigma * sigma;
    const double s = 1.0 / std::sqrt(gamma);
    const double up = bulk_edge(s, sigma2);
    const double um = bulk_edge(-s, sigma2);
    if (x <= um)
        return 0.0;
    if (x >= up)
        return 1.0;
    // x = um + half (1 - cos(theta)) removes the square-root singularities at both edges.
    const double half = 0.5 * (up - um);
    const double theta_x = std::acos(std::clamp(1.0 - (x - um) / half, -1.0, 1.0));
    const auto integrand = [&](double theta) {
        const double sh = std::sin(0.5 * theta);
        const double xs = um + 2.0 * half * sh * sh;
        const double st = std::sin(theta);
        return gamma * half * half * st * st / (2.0 * std::numbers::pi * sigma2 * xs);
    };
    const double value =
        boost::math::quadrature::gauss_kronrod<double, 31>::integrate(integrand, 0.0, theta_x, 20, 1e-14);
    return std::clamp(value, 0.0, 1.0);
}

RegimeReport classify(const EnsembleSpec& spec, double tie_tolerance)
{
    spec.validate();
    RegimeReport report;
    const double w_c = critical_spike(spec.gamma_n());
    for (double pi : spec.spikes) {
        if (std::abs(pi - w_c) <= tie_tolerance * w_c)
            report.spike_regimes.push_back(Regime::Critical);
        else if (pi > w_c)
            report.spike_regimes.push_back(Regime::Supercritical);
        else
            report.spike_regimes.push_back(Regime::Subcritical);
    }
    if (spec.spikes.empty()) {
        report.leading = Regime::Subcritical;
        report.multiplicity = 0;
    } else {
        report.leading = report.spike_regimes.front();
        const double pi1 = spec.spikes.front();
        for (double pi : spec.spikes)
            if (std::abs(pi - pi1) <= tie_tolerance * pi1)
                ++report.multiplicity;
    }
    switch (report.leading) {
    case Regime::Supercritical:
        report.law = PredictedLaw::GaussianGk;
        break;
    case Regime::Critical:
        report.law = PredictedLaw::BbpFk;
        break;
    case Regime::Subcritical:
        report.law = PredictedLaw::TracyWidom;
        break;
    }
    return report;
}

double as_limit(const EnsembleSpec& spec)
{
    const PhaseQuantities q = phase_quantities(spec);
    if (!spec.spikes.empty() && spec.spikes.front() > q.w_c)
        return *q.tau;
    return q.u_plus;
}

std::optional<double> exact_critical_spike(int n, int p)
{
    if (n < 1 || p < 1)
        throw DimensionError("n and p must be positive");
    const int g = std::gcd(n, p);
    const long a = n / g;
    const long b = p / g;
    const auto root = [](long v) -> std::optional<long> {
        auto r = static_cast<long>(std::llround(std::sqrt(static_cast<double>(v))));
        while (r * r > v)
            --r;
        while ((r + 1) * (r + 1) <= v)
            ++r;
        if (r * r != v)
            return std::nullopt;
        return r;
    };
    const auto ra = root(a);
    const auto rb = root(b);
    if (!ra || !rb)
        return std::nullopt;
    return 1.0 + static_cast<double>(*ra) / static_cast<double>(*rb);
}

}  // namespace spikelab
