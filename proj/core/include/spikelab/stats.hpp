#pragma once

#include <cstddef>
#include <vector>

#include "spikelab/limitlaws.hpp"

namespace spikelab {

/// Right-continuous empirical distribution function.
class EmpiricalCDF {
public:
    EmpiricalCDF() = default;
    explicit EmpiricalCDF(std::vector<double> samples);

    /// (#samples <= x) / size
    double operator()(double x) const;
    const std::vector<double>& sorted_samples() const noexcept { return sorted_; }
    std::size_t size() const noexcept { return sorted_.size(); }
    bool empty() const noexcept { return sorted_.empty(); }

    friend bool operator==(const EmpiricalCDF&, const EmpiricalCDF&) = default;

private:
    std::vector<double> sorted_;
};

struct KsResult {
    double distance = 0.0;
    int n_samples = 0;
    double p_value = 1.0;  ///< asymptotic Kolmogorov distribution
};

/// P(K > lambda) for the limiting Kolmogorov distribution.
double kolmogorov_survival(double lambda);

/// sup_x |F_hat(x) - F(x)|, checking both sides of every jump.
KsResult ks_distance(const EmpiricalCDF& emp, const CdfFunction& law);
KsResult ks_distance(const EmpiricalCDF& emp, const DistributionCurve& curve);

/// sup_x |F_a(x) - F_b(x)|; n_samples is the effective size n_a n_b / (n_a + n_b).
KsResult ks_two_sample(const EmpiricalCDF& a, const EmpiricalCDF& b);

struct Summary {
    double mean = 0.0;
    double variance = 0.0;  ///< unbiased
    double sd = 0.0;
    double stderr_ = 0.0;
    std::size_t count = 0;
};

Summary summarize(const std::vector<double>& values);

struct LinearFit {
    double slope = 0.0;
    double intercept = 0.0;
    double slope_stderr = 0.0;
    double intercept_stderr = 0.0;
};

/// Weighted least squares y = intercept + slope x with weights 1 / sigma_i^2.
/// With empty sigmas all weights are one and the slope error is the usual
/// residual-based estimate.
LinearFit linear_fit(const std::vector<double>& x, const std::vector<double>& y,
                     const std::vector<double>& sigmas = {});

}  // namespace spikelab
