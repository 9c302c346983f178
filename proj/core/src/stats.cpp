#include "spikelab/stats.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>

#include "spikelab/errors.hpp"

namespace spikelab {

EmpiricalCDF::EmpiricalCDF(std::vector<double> samples) : sorted_(std::move(samples))
{
    if (std::any_of(sorted_.begin(), sorted_.end(), [](double v) { return std::isnan(v); }))
        throw DomainError("empirical CDF: NaN sample");
    std::sort(sorted_.begin(), sorted_.end());
}

double EmpiricalCDF::operator()(double x) const
{
    if (sorted_.empty())
        throw DomainError("empirical CDF has no samples");
    const auto count = std::upper_bound(sorted_.begin(), sorted_.end(), x) - sorted_.begin();
    return static_cast<double>(count) / static_cast<double>(sorted_.size());
}

double kolmogorov_survival(double lambda)
{
    if (lambda <= 0.0)
        return 1.0;
    using std::numbers::pi;
    if (lambda < 1.18) {
        // Theta-function form of the CDF converges fast for small lambda.
        const double t = pi * pi / (8.0 * lambda * lambda);
        double cdf = 0.0;
        for (int k = 1; k <= 20; ++k) {
            const double odd = 2.0 * k - 1.0;
            cdf += std::exp(-odd * odd * t);
        }
        cdf *= std::sqrt(2.0 * pi) / lambda;
        return std::clamp(1.0 - cdf, 0.0, 1.0);
    }
    double q = 0.0;
    for (int k = 1; k <= 100; ++k) {
        const double term = std::exp(-2.0 * k * k * lambda * lambda);
        q += (k % 2 == 1 ? 2.0 : -2.0) * term;
        if (term < 1e-18)
            break;
    }
    return std::clamp(q, 0.0, 1.0);
}

namespace {

double ks_p_value(double distance, double n_effective)
{
    const double root = std::sqrt(n_effective);
    return kolmogorov_survival((root + 0.12 + 0.11 / root) * distance);
}

template <class Cdf>
KsResult one_sample(const EmpiricalCDF& emp, const Cdf& cdf)
{
    if (emp.empty())
        throw DomainError("KS distance needs samples");
    const auto& xs = emp.sorted_samples();
    const double n = static_cast<double>(xs.size());
    double d = 0.0;
    std::size_t i = 0;
    while (i < xs.size()) {
        std::size_t j = i;
        while (j < xs.size() && xs[j] == xs[i])
            ++j;
        const double f = cdf(xs[i]);
        d = std::max({d, std::abs(static_cast<double>(i) / n - f), std::abs(static_cast<double>(j) / n - f)});
        i = j;
    }
    return {d, static_cast<int>(xs.size()), ks_p_value(d, n)};
}

}  // namespace

KsResult ks_distance(const EmpiricalCDF& emp, const CdfFunction& law)
{
    return one_sample(emp, law);
}

KsResult ks_distance(const EmpiricalCDF& emp, const DistributionCurve& curve)
{
    return one_sample(emp, curve);
}

KsResult ks_two_sample(const EmpiricalCDF& a, const EmpiricalCDF& b)
{
    if (a.empty() || b.empty())
        throw DomainError("two-sample KS needs samples on both sides");
    const auto& xa = a.sorted_samples();
    const auto& xb = b.sorted_samples();
    const double na = static_cast<double>(xa.size());
    const double nb = static_cast<double>(xb.size());
    std::size_t i = 0;
    std::size_t j = 0;
    double d = 0.0;
    while (i < xa.size() || j < xb.size()) {
        double x;
        if (j == xb.size() || (i < xa.size() && xa[i] <= xb[j]))
            x = xa[i];
        else
            x = xb[j];
        while (i < xa.size() && xa[i] == x)
            ++i;
        while (j < xb.size() && xb[j] == x)
            ++j;
        d = std::max(d, std::abs(static_cast<double>(i) / na - static_cast<double>(j) / nb));
    }
    const double n_eff = na * nb / (na + nb);
    return {d, static_cast<int>(std::lround(n_eff)), ks_p_value(d, n_eff)};
}

Summary summarize(const std::vector<double>& values)
{
    if (values.size() < 2)
        throw DomainError("summary statistics need at least two values");
    Summary s;
    s.count = values.size();
    const double n = static_cast<double>(values.size());
    s.mean = std::accumulate(values.begin(), values.end(), 0.0) / n;
    double m2 = 0.0;
    for (double v : values)
        m2 += (v - s.mean) * (v - s.mean);
    s.variance = m2 / (n - 1.0);
    s.sd = std::sqrt(s.variance);
    s.stderr_ = s.sd / std::sqrt(n);
    return s;
}

LinearFit linear_fit(const std::vector<double>& x, const std::vector<double>& y, const std::vector<double>& sigmas)
{
    if (x.size() != y.size() || x.size() < 2 || (!sigmas.empty() && sigmas.size() != x.size()))
        throw DimensionError("linear_fit: mismatched or too few points");
    const bool weighted = !sigmas.empty();
    double sw = 0.0, sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        const double w = weighted ? 1.0 / (sigmas[i] * sigmas[i]) : 1.0;
        sw += w;
        sx += w * x[i];
        sy += w * y[i];
        sxx += w * x[i] * x[i];
        sxy += w * x[i] * y[i];
    }
    const double det = sw * sxx - sx * sx;
    if (!(det > 0.0))
        throw DomainError("linear_fit: degenerate abscissae");
    LinearFit fit;
    fit.slope = (sw * sxy - sx * sy) / det;
    fit.intercept = (sxx * sy - sx * sxy) / det;
    if (weighted) {
        fit.slope_stderr = std::sqrt(sw / det);
        fit.intercept_stderr = std::sqrt(sxx / det);
    } else if (x.size() > 2) {
        double rss = 0.0;
        for (std::size_t i = 0; i < x.size(); ++i) {
            const double r = y[i] - fit.intercept - fit.slope * x[i];
            rss += r * r;
        }
        const double s2 = rss / static_cast<double>(x.size() - 2);
        fit.slope_stderr = std::sqrt(s2 * sw / det);
        fit.intercept_stderr = std::sqrt(s2 * sxx / det);
    }
    return fit;
}

}  // namespace spikelab
