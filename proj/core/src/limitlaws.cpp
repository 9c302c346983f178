#include "spikelab/limitlaws.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <mutex>
#include <numbers>
#include <string>

#include <Eigen/Dense>
#include <Eigen/Eigenvalues>
#include <boost/math/quadrature/gauss.hpp>
#include <boost/numeric/odeint.hpp>

#include "spikelab/errors.hpp"
#include "spikelab/quadrature.hpp"
#include "spikelab/rng.hpp"

namespace spikelab {

namespace {

constexpr double kRefinementTolerance = 1e-6;
constexpr double kLawLow = -10.0;
constexpr double kLawHigh = 6.0;

void check_law_domain(double x, const char* what)
{
    if (!(x >= kLawLow && x <= kLawHigh))
        throw DomainError(std::string(what) + ": x must lie in [-10, 6]");
}

void check_config(const FredholmConfig& cfg, double x)
{
    if (cfg.quad_order < 8)
        throw DomainError("FredholmConfig: quad_order must be at least 8");
    if (!(cfg.effective_cut(x) >= x + 10.0))
        throw DomainError("FredholmConfig: domain_cut must exceed x + 10");
}

/// Symmetrised Nystrom matrix sqrt(w_i) A(u_i, u_j) sqrt(w_j) on (x, cut).
struct Nystrom {
    QuadratureRule rule;
    std::vector<AiryEval> airy_values;
    std::vector<double> sqrt_w;
    Eigen::MatrixXd identity_minus_k;
};

Nystrom build_nystrom(double x, int m, double cut)
{
    Nystrom ny;
    ny.rule = gauss_legendre(m, x, std::max(cut, x + 10.0));
    const auto size = static_cast<std::size_t>(m);
    ny.airy_values.resize(size);
    ny.sqrt_w.resize(size);
    for (std::size_t i = 0; i < size; ++i) {
        ny.airy_values[i] = airy(ny.rule.nodes[i]);
        ny.sqrt_w[i] = std::sqrt(ny.rule.weights[i]);
    }
    ny.identity_minus_k.resize(m, m);
    for (std::size_t i = 0; i < size; ++i) {
        const AiryEval& a = ny.airy_values[i];
        for (std::size_t j = 0; j <= i; ++j) {
            const AiryEval& b = ny.airy_values[j];
            double kernel;
            if (i == j)
                kernel = a.ai_prime * a.ai_prime - a.u * a.ai * a.ai;
            else
                kernel = (a.ai * b.ai_prime - a.ai_prime * b.ai) / (a.u - b.u);
            const double entry = (i == j ? 1.0 : 0.0) - ny.sqrt_w[i] * kernel * ny.sqrt_w[j];
            const auto ii = static_cast<Eigen::Index>(i);
            const auto jj = static_cast<Eigen::Index>(j);
            ny.identity_minus_k(ii, jj) = entry;
            ny.identity_minus_k(jj, ii) = entry;
        }
    }
    return ny;
}

template <class Eval>
double refined(double x, const FredholmConfig& cfg, Eval eval)
{
    check_config(cfg, x);
    const double cut = cfg.effective_cut(x);
    const double coarse = eval(x, cfg.quad_order, cut);
    const double fine = eval(x, 2 * cfg.quad_order, cut);
    if (!(std::abs(fine - coarse) <= kRefinementTolerance))
        throw QuadratureError("Fredholm evaluation at x = " + std::to_string(x) +
                              " did not stabilise under quadrature doubling (change " +
                              std::to_string(std::abs(fine - coarse)) + ")");
    return std::clamp(fine, 0.0, 1.0);
}

// Painleve II: q'' = s q + 2 q^3 integrated from s0 down to the requested points.
// State: q, q', I1 = int_s^inf q^2, I2 = int_s^inf (t - s) q^2, J = int_s^inf q.
using PainleveState = std::array<double, 5>;

constexpr double kPainleveStart = 12.0;

PainleveState painleve_initial()
{
    const double s = kPainleveStart;
    const AiryEval a = airy(s);
    PainleveState y;
    y[0] = a.ai;
    y[1] = a.ai_prime;
    y[2] = a.ai_prime * a.ai_prime - s * a.ai * a.ai;
    y[3] = (2.0 * s * s * a.ai * a.ai - 2.0 * s * a.ai_prime * a.ai_prime - a.ai * a.ai_prime) / 3.0;
    y[4] = airy_tail_integral(s);
    return y;
}

void painleve_rhs(const PainleveState& y, PainleveState& dy, double s)
{
    dy[0] = y[1];
    dy[1] = s * y[0] + 2.0 * y[0] * y[0] * y[0];
    dy[2] = -y[0] * y[0];
    dy[3] = -y[2];
    dy[4] = -y[0];
}

/// exp(i (u a + a^3 / 3)) / (2 pi) along a(t) = t + i h(t), h(t) = 1 - 1.5 exp(-t^2),
/// which dips to -1/2 at t = 0 (below the pole) and runs at height 1 in both tails.
template <class Weight>
std::complex<double> airy_contour(double u, Weight weight)
{
    constexpr double c = 1.0;
    constexpr double d = 0.5;
    constexpr double t_max = 7.0;
    constexpr int panels = 140;
    const std::complex<double> i(0.0, 1.0);
    const double h = 2.0 * t_max / panels;
    std::complex<double> total = 0.0;
    for (int p = 0; p < panels; ++p) {
        const double lo = -t_max + p * h;
        const auto re = boost::math::quadrature::gauss<double, 20>::integrate(
            [&](double t) {
                const double g = std::exp(-t * t);
                const std::complex<double> a(t, c - (c + d) * g);
                const std::complex<double> da(1.0, 2.0 * (c + d) * t * g);
                return (std::exp(i * (u * a + a * a * a / 3.0)) * weight(a) * da).real();
            },
            lo, lo + h);
        const auto im = boost::math::quadrature::gauss<double, 20>::integrate(
            [&](double t) {
                const double g = std::exp(-t * t);
                const std::complex<double> a(t, c - (c + d) * g);
                const std::complex<double> da(1.0, 2.0 * (c + d) * t * g);
                return (std::exp(i * (u * a + a * a * a / 3.0)) * weight(a) * da).imag();
            },
            lo, lo + h);
        total += std::complex<double>(re, im);
    }
    return total / (2.0 * std::numbers::pi);
}

double f1_nystrom(double x, int m, double cut)
{
    const Nystrom ny = build_nystrom(x, m, cut);
    const Eigen::LLT<Eigen::MatrixXd> llt(ny.identity_minus_k);
    if (llt.info() != Eigen::Success)
        throw QuadratureError("Nystrom matrix 1 - A_x is not positive definite");
    const Eigen::Index size = m;
    const double c = s1_constant();
    const std::vector<double> tails = airy_tail_integrals(ny.rule.nodes);
    Eigen::VectorXd rhs(size), ai(size);
    for (Eigen::Index i = 0; i < size; ++i) {
        const auto k = static_cast<std::size_t>(i);
        rhs(i) = ny.sqrt_w[k] * (c - tails[k]);
        ai(i) = ny.sqrt_w[k] * ny.airy_values[k].ai;
    }
    const Eigen::VectorXd y = llt.solve(rhs);
    const double det = llt.matrixL().toDenseMatrix().diagonal().array().square().prod();
    return det * (1.0 - ai.dot(y));
}

double fk_nystrom(double x, int k, int m, double cut)
{
    const Nystrom ny = build_nystrom(x, m, cut);
    const Eigen::LLT<Eigen::MatrixXd> llt(ny.identity_minus_k);
    if (llt.info() != Eigen::Success)
        throw QuadratureError("Nystrom matrix 1 - A_x is not positive definite");
    const Eigen::Index size = m;
    Eigen::MatrixXd s(size, k), t(size, k);
    for (Eigen::Index i = 0; i < size; ++i) {
        const auto node = static_cast<std::size_t>(i);
        for (int col = 0; col < k; ++col) {
            s(i, col) = ny.sqrt_w[node] * s_function_contour(col + 1, ny.rule.nodes[node]);
            t(i, col) = ny.sqrt_w[node] * t_function_contour(col + 1, ny.rule.nodes[node]);
        }
    }
    const Eigen::MatrixXd solved = llt.solve(s);
    const Eigen::MatrixXd inner = solved.transpose() * t;
    const Eigen::MatrixXd correction = Eigen::MatrixXd::Identity(k, k) - inner;
    const double det = llt.matrixL().toDenseMatrix().diagonal().array().square().prod();
    return det * correction.determinant();
}

}  // namespace

std::string_view to_string(LawName law)
{
    switch (law) {
    case LawName::TracyWidomGue:
        return "tw_gue";
    case LawName::TracyWidomGoe:
        return "tw_goe";
    case LawName::BbpF1:
        return "bbp_f1";
    case LawName::StandardNormal:
        return "normal";
    case LawName::TracyWidomGuePainleve:
        return "tw_gue_painleve";
    }
    return "unknown";
}

LawName parse_law_name(std::string_view text)
{
    if (text == "tw_gue" || text == "gue")
        return LawName::TracyWidomGue;
    if (text == "tw_goe" || text == "goe")
        return LawName::TracyWidomGoe;
    if (text == "bbp_f1" || text == "f1")
        return LawName::BbpF1;
    if (text == "normal")
        return LawName::StandardNormal;
    if (text == "tw_gue_painleve")
        return LawName::TracyWidomGuePainleve;
    throw FormatError("unknown law '" + std::string(text) + "'");
}

double DistributionCurve::operator()(double x) const
{
    if (grid.empty())
        throw DomainError("empty distribution curve");
    if (x <= grid.front())
        return cdf.front();
    if (x >= grid.back())
        return cdf.back();
    const auto it = std::upper_bound(grid.begin(), grid.end(), x);
    const auto hi = static_cast<std::size_t>(it - grid.begin());
    const std::size_t lo = hi - 1;
    const double w = (x - grid[lo]) / (grid[hi] - grid[lo]);
    return (1.0 - w) * cdf[lo] + w * cdf[hi];
}

void DistributionCurve::validate() const
{
    if (grid.size() != cdf.size() || grid.empty())
        throw DomainError("distribution curve: grid and cdf sizes differ or are empty");
    for (std::size_t i = 0; i < grid.size(); ++i) {
        if (!(cdf[i] >= 0.0 && cdf[i] <= 1.0))
            throw DomainError("distribution curve: cdf value outside [0, 1]");
        if (i > 0 && !(grid[i] > grid[i - 1]))
            throw DomainError("distribution curve: grid must ascend strictly");
        if (i > 0 && cdf[i] < cdf[i - 1])
            throw DomainError("distribution curve: cdf decreases at x = " + std::to_string(grid[i]));
    }
}

double airy_kernel(double u, double v)
{
    const AiryEval a = airy(u);
    if (u == v)
        return a.ai_prime * a.ai_prime - u * a.ai * a.ai;
    const AiryEval b = airy(v);
    return (a.ai * b.ai_prime - a.ai_prime * b.ai) / (u - v);
}

double tw_gue_cdf_nystrom(double x, int quad_order, double domain_cut)
{
    const Nystrom ny = build_nystrom(x, quad_order, domain_cut);
    const Eigen::LLT<Eigen::MatrixXd> llt(ny.identity_minus_k);
    if (llt.info() == Eigen::Success)
        return llt.matrixL().toDenseMatrix().diagonal().array().square().prod();
    return Eigen::PartialPivLU<Eigen::MatrixXd>(ny.identity_minus_k).determinant();
}

double tw_gue_cdf(double x, const FredholmConfig& cfg)
{
    check_law_domain(x, "tw_gue_cdf");
    return refined(x, cfg, [](double xx, int m, double cut) { return tw_gue_cdf_nystrom(xx, m, cut); });
}

PainleveValues painleve_values(const std::vector<double>& ascending)
{
    namespace odeint = boost::numeric::odeint;
    PainleveValues out;
    out.x = ascending;
    const std::size_t count = ascending.size();
    out.q.assign(count, 0.0);
    out.f_gue.assign(count, 1.0);
    out.f_goe.assign(count, 1.0);
    if (count == 0)
        return out;
    for (std::size_t i = 0; i < count; ++i) {
        if (!(ascending[i] >= kLawLow && ascending[i] <= kLawHigh))
            throw DomainError("painleve_values: points must lie in [-10, 6]");
        if (i > 0 && ascending[i] < ascending[i - 1])
            throw DomainError("painleve_values: points must ascend");
    }

    std::vector<double> times;
    times.reserve(count + 1);
    times.push_back(kPainleveStart);
    for (std::size_t i = count; i-- > 0;)
        times.push_back(ascending[i]);

    PainleveState y = painleve_initial();
    std::size_t next = count;
    const auto observer = [&](const PainleveState& state, double s) {
        if (s >= kPainleveStart)
            return;
        --next;
        out.q[next] = state[0];
        out.f_gue[next] = std::exp(-state[3]);
        out.f_goe[next] = std::exp(-0.5 * state[3] - 0.5 * state[4]);
    };
    try {
        auto stepper = odeint::make_controlled(0.0, 1e-13, odeint::runge_kutta_dopri5<PainleveState>());
        odeint::integrate_times(stepper, painleve_rhs, y, times.begin(), times.end(), -1e-3, observer,
                                odeint::max_step_checker(200000));
    } catch (const odeint::odeint_error& e) {
        throw ODEError(std::string("Painleve II integration: ") + e.what());
    }
    for (std::size_t i = 0; i < count; ++i) {
        if (!std::isfinite(out.q[i]))
            throw ODEError("Painleve II solution diverged");
        out.f_gue[i] = std::clamp(out.f_gue[i], 0.0, 1.0);
        out.f_goe[i] = std::clamp(out.f_goe[i], 0.0, 1.0);
    }
    return out;
}

double tw_gue_cdf_painleve(double x)
{
    check_law_domain(x, "tw_gue_cdf_painleve");
    return painleve_values({x}).f_gue.front();
}

double tw_goe_cdf(double x)
{
    check_law_domain(x, "tw_goe_cdf");
    return painleve_values({x}).f_goe.front();
}

double s_function_contour(int m, double u)
{
    if (m < 1)
        throw DomainError("s_function_contour: m must be positive");
    const std::complex<double> i(0.0, 1.0);
    const std::complex<double> value =
        airy_contour(u, [&](std::complex<double> a) { return 1.0 / std::pow(i * a, m); });
    return value.real();
}

double t_function_contour(int n, double v)
{
    if (n < 1)
        throw DomainError("t_function_contour: n must be positive");
    const std::complex<double> i(0.0, 1.0);
    const std::complex<double> value =
        airy_contour(v, [&](std::complex<double> a) { return std::pow(-i * a, n - 1); });
    return value.real();
}

double s1_constant()
{
    static const double constant = s_function_contour(1, 0.0) + airy_tail_integral(0.0);
    return constant;
}

double s1_function(double u)
{
    return s1_constant() - airy_tail_integral(u);
}

double bbp_f1_cdf_nystrom(double x, int quad_order, double domain_cut)
{
    return f1_nystrom(x, quad_order, domain_cut);
}

double bbp_f1_cdf(double x, const FredholmConfig& cfg)
{
    check_law_domain(x, "bbp_f1_cdf");
    return refined(x, cfg, f1_nystrom);
}

double bbp_fk_cdf(double x, int k, const FredholmConfig& cfg)
{
    check_law_domain(x, "bbp_fk_cdf");
    if (k < 1)
        throw DomainError("bbp_fk_cdf: k must be positive");
    return refined(x, cfg, [k](double xx, int m, double cut) { return fk_nystrom(xx, k, m, cut); });
}

double standard_normal_cdf(double x)
{
    return 0.5 * std::erfc(-x / std::numbers::sqrt2);
}

double law_cdf(LawName law, double x, const FredholmConfig& cfg)
{
    switch (law) {
    case LawName::TracyWidomGue:
        return tw_gue_cdf(x, cfg);
    case LawName::TracyWidomGoe:
        return tw_goe_cdf(x);
    case LawName::BbpF1:
        return bbp_f1_cdf(x, cfg);
    case LawName::StandardNormal:
        return standard_normal_cdf(x);
    case LawName::TracyWidomGuePainleve:
        return tw_gue_cdf_painleve(x);
    }
    throw DomainError("unknown law");
}

DistributionCurve tabulate(LawName law, double lo, double hi, double step, const FredholmConfig& cfg)
{
    if (!(step > 0.0) || !(hi > lo))
        throw DomainError("tabulate: need lo < hi and step > 0");
    DistributionCurve curve;
    const auto points = static_cast<std::size_t>(std::floor((hi - lo) / step + 1e-9)) + 1;
    for (std::size_t i = 0; i < points; ++i)
        curve.grid.push_back(lo + static_cast<double>(i) * step);
    if (law == LawName::TracyWidomGoe || law == LawName::TracyWidomGuePainleve) {
        const PainleveValues pv = painleve_values(curve.grid);
        curve.cdf = law == LawName::TracyWidomGoe ? pv.f_goe : pv.f_gue;
    } else {
        for (double x : curve.grid)
            curve.cdf.push_back(law_cdf(law, x, cfg));
    }
    // Rounding noise in the far tails can break monotonicity at the 1e-15 level.
    for (std::size_t i = 1; i < curve.cdf.size(); ++i) {
        if (curve.cdf[i] < curve.cdf[i - 1]) {
            if (curve.cdf[i - 1] - curve.cdf[i] > 1e-9)
                throw QuadratureError("tabulated CDF decreases at x = " + std::to_string(curve.grid[i]));
            curve.cdf[i] = curve.cdf[i - 1];
        }
    }
    curve.validate();
    return curve;
}

LawMoments law_moments(const CdfFunction& cdf, double lo, double hi, int panels)
{
    if (!(hi > lo) || panels < 1)
        throw DomainError("law_moments: need lo < hi and at least one panel");
    // E X = hi - int F, E X^2 = hi^2 - 2 int x F, valid when F(lo) = 0 and F(hi) = 1.
    const double h = (hi - lo) / panels;
    double int_f = 0.0;
    double int_xf = 0.0;
    for (int p = 0; p < panels; ++p) {
        const double a = lo + p * h;
        int_f += boost::math::quadrature::gauss<double, 20>::integrate(cdf, a, a + h);
        int_xf += boost::math::quadrature::gauss<double, 20>::integrate([&](double x) { return x * cdf(x); },
                                                                         a, a + h);
    }
    LawMoments m;
    m.mean = hi - int_f;
    const double second = hi * hi - 2.0 * int_xf;
    m.sd = std::sqrt(std::max(0.0, second - m.mean * m.mean));
    return m;
}

std::vector<std::vector<double>> gk_reference_sample(int k, int n_trials, Field field, std::uint64_t seed)
{
    if (k < 1 || k > 8)
        throw DomainError("gk_reference_sample: k must lie in [1, 8]");
    if (n_trials < 0)
        throw DomainError("gk_reference_sample: n_trials must be non-negative");
    std::vector<std::vector<double>> out;
    out.reserve(static_cast<std::size_t>(n_trials));
    const double off_sd = std::sqrt(0.5);
    for (int trial = 0; trial < n_trials; ++trial) {
        CounterRng rng(seed, static_cast<std::uint64_t>(trial));
        Eigen::VectorXd values;
        if (field == Field::Complex) {
            Eigen::MatrixXcd h(k, k);
            for (int i = 0; i < k; ++i) {
                h(i, i) = rng.normal();
                for (int j = i + 1; j < k; ++j) {
                    const double re = off_sd * rng.normal();
                    const double im = off_sd * rng.normal();
                    h(i, j) = {re, im};
                    h(j, i) = {re, -im};
                }
            }
            values = Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd>(h, Eigen::EigenvaluesOnly).eigenvalues();
        } else {
            Eigen::MatrixXd h(k, k);
            for (int i = 0; i < k; ++i) {
                h(i, i) = rng.normal();
                for (int j = i + 1; j < k; ++j)
                    h(i, j) = h(j, i) = off_sd * rng.normal();
            }
            values = Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd>(h, Eigen::EigenvaluesOnly).eigenvalues();
        }
        std::vector<double> draw(values.data(), values.data() + values.size());
        std::sort(draw.begin(), draw.end(), std::greater<>());
        out.push_back(std::move(draw));
    }
    return out;
}

}  // namespace spikelab
