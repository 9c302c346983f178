#include "spikelab/genfun.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "spikelab/dyck.hpp"
#include "spikelab/errors.hpp"

namespace spikelab::genfun {

namespace {

constexpr std::size_t kMaxOrder = 400;

void check_order(std::size_t n_max)
{
    if (n_max > kMaxOrder)
        throw DomainError("series order is limited to 400");
}

void check_positive(const Rational& q, const char* what)
{
    if (sgn(q) <= 0)
        throw DomainError(std::string(what) + " must be positive");
}

/// sum_{i + j = n} a_i b_j
Rational convolve(const std::vector<Rational>& a, const std::vector<Rational>& b, std::size_t n)
{
    Rational total = 0;
    for (std::size_t i = 0; i <= n; ++i)
        total += a[i] * b[n - i];
    return total;
}

}  // namespace

Series::Series(std::vector<Rational> coeffs) : coeffs_(std::move(coeffs))
{
    if (coeffs_.empty())
        coeffs_.emplace_back(0);
}

Series Series::truncated(std::size_t order) const
{
    std::vector<Rational> c(order + 1, Rational(0));
    for (std::size_t i = 0; i <= std::min(order, this->order()); ++i)
        c[i] = coeffs_[i];
    return Series(std::move(c));
}

bool Series::is_zero() const
{
    return std::all_of(coeffs_.begin(), coeffs_.end(), [](const Rational& q) { return sgn(q) == 0; });
}

Series Series::operator+(const Series& other) const
{
    const std::size_t n = std::min(order(), other.order());
    Series out(n);
    for (std::size_t i = 0; i <= n; ++i)
        out[i] = coeffs_[i] + other[i];
    return out;
}

Series Series::operator-(const Series& other) const
{
    const std::size_t n = std::min(order(), other.order());
    Series out(n);
    for (std::size_t i = 0; i <= n; ++i)
        out[i] = coeffs_[i] - other[i];
    return out;
}

Series Series::operator*(const Series& other) const
{
    const std::size_t n = std::min(order(), other.order());
    Series out(n);
    for (std::size_t k = 0; k <= n; ++k)
        out[k] = convolve(coeffs_, other.coeffs_, k);
    return out;
}

Series Series::operator*(const Rational& scalar) const
{
    Series out(order());
    for (std::size_t i = 0; i <= order(); ++i)
        out[i] = coeffs_[i] * scalar;
    return out;
}

Series Series::shift(std::size_t k) const
{
    Series out(order());
    for (std::size_t i = k; i <= order(); ++i)
        out[i] = coeffs_[i - k];
    return out;
}

Series Series::derivative() const
{
    if (order() == 0)
        return Series(0);
    Series out(order() - 1);
    for (std::size_t i = 1; i <= order(); ++i)
        out[i - 1] = coeffs_[i] * Rational(static_cast<long>(i));
    return out;
}

Series Series::inverse() const
{
    if (sgn(coeffs_[0]) == 0)
        throw DomainError("series inverse needs a nonzero constant term");
    Series out(order());
    const Rational inv0 = 1 / coeffs_[0];
    out[0] = inv0;
    for (std::size_t n = 1; n <= order(); ++n) {
        Rational acc = 0;
        for (std::size_t i = 1; i <= n; ++i)
            acc += coeffs_[i] * out[n - i];
        out[n] = -acc * inv0;
    }
    return out;
}

namespace {

/// Joint fixed-point recurrence for (G, G~).
std::pair<Series, Series> g_pair(const Rational& gamma, std::size_t n_max)
{
    check_order(n_max);
    check_positive(gamma, "gamma");
    const Rational inv_gamma = 1 / gamma;
    std::vector<Rational> g(n_max + 1, Rational(0));
    std::vector<Rational> gt(n_max + 1, Rational(0));
    g[0] = 1;
    gt[0] = 1;
    for (std::size_t n = 1; n <= n_max; ++n) {
        gt[n] = convolve(g, gt, n - 1);
        g[n] = inv_gamma * convolve(gt, g, n - 1);
    }
    return {Series(std::move(g)), Series(std::move(gt))};
}

}  // namespace

Series series_G(const Rational& gamma, std::size_t n_max)
{
    return g_pair(gamma, n_max).first;
}

Series series_G_tilde(const Rational& gamma, std::size_t n_max)
{
    return g_pair(gamma, n_max).second;
}

Series series_F(const Rational& pi1, const Rational& gamma, std::size_t n_max)
{
    check_positive(pi1, "pi_1");
    const Series g = series_G(gamma, n_max);
    std::vector<Rational> f(n_max + 1, Rational(0));
    f[0] = pi1;
    for (std::size_t n = 1; n <= n_max; ++n)
        f[n] = pi1 * convolve(g.coeffs(), f, n - 1);
    return Series(std::move(f));
}

Series series_K(const Rational& gamma, std::size_t n_max)
{
    const Series g = series_G(gamma, n_max);
    Series k(n_max);
    for (std::size_t n = 1; n <= n_max; ++n)
        k[n] = Rational(static_cast<long>(n)) * g[n - 1];
    return k;
}

Series series_H(const Rational& pi1, const Rational& gamma, std::size_t n_max)
{
    return series_F(pi1, gamma, n_max) * series_K(gamma, n_max);
}

Series series_U_algebraic(const Rational& gamma, std::size_t n_max)
{
    check_order(n_max);
    check_positive(gamma, "gamma");
    const Rational a = 1 - 1 / gamma;
    Series z(n_max);
    if (n_max >= 1)
        z[1] = 1;
    Series one(n_max);
    one[0] = 1;
    // phi(U) = U (1 - U) / (1 - a U) = U + O(U^2), so U <- U - (phi(U) - z)
    // gains one correct coefficient per pass.
    Series u = z;
    for (std::size_t pass = 0; pass < n_max; ++pass) {
        const Series phi = u * (one - u) * (one - u * a).inverse();
        const Series next = u - (phi - z);
        if (next == u)
            break;
        u = next;
    }
    return u;
}

SeriesCoeffs coeffs_a(const Rational& pi1, const Rational& gamma, double sigma, std::size_t n_max)
{
    if (!(sigma > 0.0))
        throw DomainError("coeffs_a: sigma must be positive");
    const Series h = series_H(pi1, gamma, n_max);
    SeriesCoeffs out;
    out.pi1 = pi1;
    out.gamma = gamma;
    out.sigma = sigma;
    out.a = h.coeffs();
    const double log_s2 = 2.0 * std::log(sigma);
    for (std::size_t n = 0; n <= n_max; ++n) {
        const double la = sgn(out.a[n]) > 0 ? log_rational(out.a[n]) : -std::numeric_limits<double>::infinity();
        out.log_a_prime.push_back(la + static_cast<double>(n) * log_s2);
        out.a_prime.push_back(std::exp(out.log_a_prime.back()));
    }
    return out;
}

Rational direct_sum_a(int n, const Rational& pi1, const Rational& gamma)
{
    if (n < 1)
        throw DomainError("direct_sum_a: n must be positive");
    check_positive(gamma, "gamma");
    using dyck::count_with_returns_or_zero;
    using dyck::narayana_or_zero;
    const Rational inv_gamma = 1 / gamma;
    std::vector<Rational> pi_pow(static_cast<std::size_t>(n + 2), Rational(1));
    for (std::size_t i = 1; i < pi_pow.size(); ++i)
        pi_pow[i] = pi_pow[i - 1] * pi1;
    std::vector<Rational> inv_gamma_pow(static_cast<std::size_t>(n + 1), Rational(1));
    for (std::size_t i = 1; i < inv_gamma_pow.size(); ++i)
        inv_gamma_pow[i] = inv_gamma_pow[i - 1] * inv_gamma;

    Rational total = 0;
    for (int s1 = 1; s1 <= n; ++s1) {
        const int rest = n - s1;
        for (int k1 = 1; k1 <= s1; ++k1) {
            const dyck::BigInt head = s1 * narayana_or_zero(s1 - 1, s1 - k1);
            if (head == 0)
                continue;
            for (int m = 1; m <= rest + 1; ++m) {
                for (int k = k1; k <= k1 + rest; ++k) {
                    const dyck::BigInt tail = count_with_returns_or_zero(rest, k - k1, m - 1);
                    if (tail == 0)
                        continue;
                    total += Rational(head * tail) * pi_pow[static_cast<std::size_t>(m)] *
                             inv_gamma_pow[static_cast<std::size_t>(n - k)];
                }
            }
        }
    }
    return total;
}

double log_rational(const Rational& q)
{
    if (sgn(q) <= 0)
        throw DomainError("log_rational: argument must be positive");
    const auto log_mpz = [](const mpz_class& z) {
        long exponent = 0;
        const double mantissa = mpz_get_d_2exp(&exponent, z.get_mpz_t());
        return std::log(mantissa) + static_cast<double>(exponent) * std::log(2.0);
    };
    return log_mpz(q.get_num()) - log_mpz(q.get_den());
}

GrowthReport growth_rate(const SeriesCoeffs& coeffs, int window)
{
    if (window < 1 || coeffs.a.size() < 2 || static_cast<int>(coeffs.a.size()) - 1 < 2 * window)
        throw DomainError("growth_rate: need n_max >= 2 * window");
    GrowthReport report;
    const double sigma2 = coeffs.sigma * coeffs.sigma;
    const double gamma = coeffs.gamma.get_d();
    report.u_plus = sigma2 * std::pow(1.0 + 1.0 / std::sqrt(gamma), 2.0);
    const std::size_t n_max = coeffs.a.size() - 1;
    for (std::size_t n = 0; n < n_max; ++n) {
        if (sgn(coeffs.a[n]) == 0)
            report.ratios.push_back(std::numeric_limits<double>::quiet_NaN());
        else
            report.ratios.push_back(sigma2 * Rational(coeffs.a[n + 1] / coeffs.a[n]).get_d());
    }
    const double log_u = std::log(report.u_plus);
    for (std::size_t n = 0; n <= n_max; ++n) {
        const double la = coeffs.log_a_prime[n];
        report.sqrt_corrected.push_back(
            std::isfinite(la) ? std::exp(0.5 * std::log(static_cast<double>(n)) + la - static_cast<double>(n) * log_u)
                              : 0.0);
    }
    double sum = 0.0;
    for (std::size_t n = n_max - static_cast<std::size_t>(window); n < n_max; ++n)
        sum += report.ratios[n];
    report.ratio = sum / window;
    return report;
}

}  // namespace spikelab::genfun
