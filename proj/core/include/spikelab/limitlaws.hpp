#pragma once

#include <complex>
#include <cstdint>
#include <functional>
#include <string_view>
#include <vector>

#include "spikelab/airy.hpp"
#include "spikelab/ensembles.hpp"

namespace spikelab {

struct FredholmConfig {
    int quad_order = 48;       ///< Gauss-Legendre nodes on (x, cut)
    double domain_cut = 16.0;  ///< upper truncation; the effective cut is max(domain_cut, x + 10)

    double effective_cut(double x) const noexcept { return domain_cut > x + 10.0 ? domain_cut : x + 10.0; }
};

/// Tabulated CDF on an ascending grid.
struct DistributionCurve {
    std::vector<double> grid;
    std::vector<double> cdf;

    /// Linear interpolation, clamped to the end values outside the grid.
    double operator()(double x) const;
    /// Throws DomainError unless the grid ascends and cdf is a nondecreasing
    /// sequence of probabilities.
    void validate() const;

    friend bool operator==(const DistributionCurve&, const DistributionCurve&) = default;
};

using CdfFunction = std::function<double(double)>;

enum class LawName { TracyWidomGue, TracyWidomGoe, BbpF1, StandardNormal, TracyWidomGuePainleve };

std::string_view to_string(LawName law);
LawName parse_law_name(std::string_view text);

/// Airy kernel (Ai(u)Ai'(v) - Ai'(u)Ai(v)) / (u - v), with the limit
/// Ai'(u)^2 - u Ai(u)^2 on the diagonal.
double airy_kernel(double u, double v);

/// F_GUE(x) = det(1 - A_x) by Nystrom discretisation. Throws QuadratureError
/// when doubling quad_order moves the value by more than 1e-6.
double tw_gue_cdf(double x, const FredholmConfig& cfg = {});

/// Single Nystrom evaluation without the refinement check.
double tw_gue_cdf_nystrom(double x, int quad_order, double domain_cut = 16.0);

/// F_GUE through the Hastings-McLeod solution of Painleve II.
double tw_gue_cdf_painleve(double x);

/// F_GOE through the Hastings-McLeod solution of Painleve II.
double tw_goe_cdf(double x);

/// Painleve II route evaluated on many points in one integration pass.
struct PainleveValues {
    std::vector<double> x;  ///< as given (ascending)
    std::vector<double> q;
    std::vector<double> f_gue;
    std::vector<double> f_goe;
};
PainleveValues painleve_values(const std::vector<double>& ascending);

/// s^(m)(u) = (1 / 2 pi) int exp(i(u a + a^3 / 3)) / (i a)^m da along a contour
/// from infinity in the left half plane to infinity in the right half plane
/// that passes below the pole a = 0.
double s_function_contour(int m, double u);

/// t^(n)(v) = (1 / 2 pi) int exp(i(v a + a^3 / 3)) (-i a)^(n - 1) da; t^(1) = Ai.
double t_function_contour(int n, double v);

/// Constant C with s^(1)(u) = C - int_u^inf Ai, fixed once from the contour
/// integral at u = 0.
double s1_constant();

double s1_function(double u);

/// BBP critical law F_1 = det(1 - A_x) (1 - <(1 - A_x)^{-1} s^(1), Ai>).
double bbp_f1_cdf(double x, const FredholmConfig& cfg = {});

/// Single Nystrom evaluation of F_1 without the refinement check.
double bbp_f1_cdf_nystrom(double x, int quad_order, double domain_cut = 16.0);

/// Generic F_k with s^(m), t^(n) from contour quadrature (k >= 1).
double bbp_fk_cdf(double x, int k, const FredholmConfig& cfg = {});

double standard_normal_cdf(double x);

/// Evaluates a law at one point (Fredholm laws with the refinement check).
double law_cdf(LawName law, double x, const FredholmConfig& cfg = {});

/// Tabulates a law on lo, lo + step, ..., hi.
DistributionCurve tabulate(LawName law, double lo, double hi, double step, const FredholmConfig& cfg = {});

struct LawMoments {
    double mean = 0.0;
    double sd = 0.0;
};

/// Mean and standard deviation of the law with CDF `cdf` supported in [lo, hi],
/// from integration by parts with composite Gauss-Legendre panels.
LawMoments law_moments(const CdfFunction& cdf, double lo, double hi, int panels = 64);

/// Draws of the k eigenvalues (descending) of a k x k Gaussian Hermitian
/// matrix: standard normal diagonal, off-diagonal entries with E|H_ij|^2 = 1
/// (complex) or variance 1/2 (real). Draw t uses the stream (seed, t).
std::vector<std::vector<double>> gk_reference_sample(int k, int n_trials, Field field, std::uint64_t seed);

}  // namespace spikelab
