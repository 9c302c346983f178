#include "spikelab/airy.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include <boost/math/quadrature/gauss.hpp>

#include "spikelab/errors.hpp"

namespace spikelab {

namespace {

using Real = long double;

constexpr Real kAi0 = 0.355028053887817239260063186004183176L;   // Ai(0)
constexpr Real kAip0 = 0.258819403792806798405183560189203963L;  // -Ai'(0)
constexpr double kSeriesLimit = 8.0;

AiryEval maclaurin(double u)
{
    const Real x = u;
    const Real x3 = x * x * x;
    const Real eps = std::numeric_limits<Real>::epsilon();
    Real t = 1.0L, f = 1.0L;
    Real s = x, g = x;
    Real fpk = x * x / 2.0L, fp = fpk;
    Real gpk = 1.0L, gp = 1.0L;
    for (int k = 1; k < 200; ++k) {
        const Real k3 = 3.0L * k;
        t *= x3 / ((k3 - 1.0L) * k3);
        s *= x3 / (k3 * (k3 + 1.0L));
        gpk *= x3 / ((k3 - 2.0L) * k3);
        f += t;
        g += s;
        gp += gpk;
        if (k > 1) {
            fpk *= x3 / ((k3 - 3.0L) * (k3 - 1.0L));
            fp += fpk;
        }
        if (k > 2 && std::abs(t) <= eps * std::abs(f) && std::abs(s) <= eps * std::abs(g) &&
            std::abs(fpk) <= eps * std::abs(fp) && std::abs(gpk) <= eps * std::abs(gp))
            break;
    }
    return {u, static_cast<double>(kAi0 * f - kAip0 * g), static_cast<double>(kAi0 * fp - kAip0 * gp)};
}

/// Partial sums of sum_k (sign)^k c_k / zeta^k for the u_k and v_k coefficient
/// families, truncated before the terms start growing.
struct AsymptoticSums {
    Real u_even = 0, u_odd = 0, v_even = 0, v_odd = 0;  // alternating-sign split sums
    Real u_all = 0, v_all = 0;                          // sums of (-1)^k c_k / zeta^k
};

AsymptoticSums asymptotic_sums(Real zeta)
{
    AsymptoticSums out;
    Real uk = 1.0L;
    Real zk = 1.0L;
    Real prev = std::numeric_limits<Real>::infinity();
    for (int k = 0; k < 200; ++k) {
        if (k > 0) {
            const Real kk = k;
            uk *= (6.0L * kk - 5.0L) * (6.0L * kk - 3.0L) * (6.0L * kk - 1.0L) / ((2.0L * kk - 1.0L) * 216.0L * kk);
            zk *= zeta;
        }
        const Real vk = k == 0 ? 1.0L : -(6.0L * k + 1.0L) / (6.0L * k - 1.0L) * uk;
        const Real term_u = uk / zk;
        const Real term_v = vk / zk;
        const Real size = std::max(std::abs(term_u), std::abs(term_v));
        if (size > prev)
            break;
        prev = size;
        const Real sign = (k % 2 == 0) ? 1.0L : -1.0L;
        out.u_all += sign * term_u;
        out.v_all += sign * term_v;
        // Oscillatory form pairs (-1)^j c_{2j} and (-1)^j c_{2j+1}.
        const Real pair_sign = ((k / 2) % 2 == 0) ? 1.0L : -1.0L;
        if (k % 2 == 0) {
            out.u_even += pair_sign * term_u;
            out.v_even += pair_sign * term_v;
        } else {
            out.u_odd += pair_sign * term_u;
            out.v_odd += pair_sign * term_v;
        }
        if (size < std::numeric_limits<Real>::epsilon() * 1e-3L)
            break;
    }
    return out;
}

AiryEval asymptotic(double u)
{
    const Real sqrt_pi = std::sqrt(std::numbers::pi_v<Real>);
    if (u > 0.0) {
        const Real x = u;
        const Real zeta = 2.0L / 3.0L * x * std::sqrt(x);
        const AsymptoticSums sums = asymptotic_sums(zeta);
        const Real decay = std::exp(-zeta);
        const Real x4 = std::pow(x, 0.25L);
        const Real ai = decay / (2.0L * sqrt_pi * x4) * sums.u_all;
        const Real aip = -x4 * decay / (2.0L * sqrt_pi) * sums.v_all;
        return {u, static_cast<double>(ai), static_cast<double>(aip)};
    }
    const Real x = -static_cast<Real>(u);
    const Real zeta = 2.0L / 3.0L * x * std::sqrt(x);
    const AsymptoticSums sums = asymptotic_sums(zeta);
    const Real phase = zeta - std::numbers::pi_v<Real> / 4.0L;
    const Real c = std::cos(phase);
    const Real s = std::sin(phase);
    const Real x4 = std::pow(x, 0.25L);
    const Real ai = (c * sums.u_even + s * sums.u_odd) / (sqrt_pi * x4);
    const Real aip = x4 * (s * sums.v_even - c * sums.v_odd) / sqrt_pi;
    return {u, static_cast<double>(ai), static_cast<double>(aip)};
}

double segment_integral(double a, double b)
{
    if (b <= a)
        return 0.0;
    const int panels = std::max(1, static_cast<int>(std::ceil((b - a) / 0.5)));
    const double h = (b - a) / panels;
    double total = 0.0;
    for (int i = 0; i < panels; ++i) {
        const double lo = a + i * h;
        total += boost::math::quadrature::gauss<double, 20>::integrate(
            [](double t) { return airy(t).ai; }, lo, lo + h);
    }
    return total;
}

double tail_upper(double u)
{
    return std::min(kAiryRange, std::max(u + 2.0, 16.0));
}

}  // namespace

AiryEval airy(double u)
{
    if (!(u >= -kAiryRange && u <= kAiryRange))
        throw DomainError("airy: argument " + std::to_string(u) + " outside [-30, 30]");
    if (std::abs(u) <= kSeriesLimit)
        return maclaurin(u);
    return asymptotic(u);
}

double airy_tail_integral(double u)
{
    if (!(u >= -kAiryRange && u <= kAiryRange))
        throw DomainError("airy_tail_integral: argument outside [-30, 30]");
    return segment_integral(u, tail_upper(u));
}

std::vector<double> airy_tail_integrals(const std::vector<double>& ascending)
{
    std::vector<double> out(ascending.size());
    if (ascending.empty())
        return out;
    for (std::size_t i = 1; i < ascending.size(); ++i)
        if (ascending[i] < ascending[i - 1])
            throw DomainError("airy_tail_integrals: points must be ascending");
    const std::size_t last = ascending.size() - 1;
    out[last] = airy_tail_integral(ascending[last]);
    for (std::size_t i = last; i-- > 0;)
        out[i] = out[i + 1] + segment_integral(ascending[i], ascending[i + 1]);
    return out;
}

}  // namespace spikelab
