#pragma once

#include <cstddef>
#include <vector>

#include <gmpxx.h>

namespace spikelab::genfun {

using Rational = mpq_class;

/// Truncated power series c_0 + c_1 z + ... + c_order z^order over Q.
class Series {
public:
    explicit Series(std::size_t order = 0) : coeffs_(order + 1, Rational(0)) {}
    explicit Series(std::vector<Rational> coeffs);

    std::size_t order() const noexcept { return coeffs_.size() - 1; }
    const Rational& operator[](std::size_t n) const { return coeffs_.at(n); }
    Rational& operator[](std::size_t n) { return coeffs_.at(n); }
    const std::vector<Rational>& coeffs() const noexcept { return coeffs_; }

    Series truncated(std::size_t order) const;
    bool is_zero() const;

    Series operator+(const Series& other) const;
    Series operator-(const Series& other) const;
    /// Product truncated at the smaller order.
    Series operator*(const Series& other) const;
    Series operator*(const Rational& scalar) const;
    /// Multiplication by z^k (keeps the order).
    Series shift(std::size_t k) const;
    /// Term-wise derivative; the result has order one less.
    Series derivative() const;
    /// Multiplicative inverse; requires c_0 != 0.
    Series inverse() const;

    friend bool operator==(const Series&, const Series&) = default;

private:
    std::vector<Rational> coeffs_;
};

/// G = 1 + gamma^{-1} z G~ G.
Series series_G(const Rational& gamma, std::size_t n_max);
/// G~ = 1 + z G G~.
Series series_G_tilde(const Rational& gamma, std::size_t n_max);
/// F = pi_1 + pi_1 z G F.
Series series_F(const Rational& pi1, const Rational& gamma, std::size_t n_max);
/// K = z d/dz (z G).
Series series_K(const Rational& gamma, std::size_t n_max);
/// H = F K.
Series series_H(const Rational& pi1, const Rational& gamma, std::size_t n_max);

/// U = z G obtained by reverting z = U (U - 1) / ((1 - gamma^{-1}) U - 1).
Series series_U_algebraic(const Rational& gamma, std::size_t n_max);

struct SeriesCoeffs {
    Rational pi1;
    Rational gamma;
    double sigma = 1.0;
    std::vector<Rational> a;     ///< a_0, ..., a_nmax
    std::vector<double> a_prime; ///< sigma^{2n} a_n (may overflow to inf for huge n)
    std::vector<double> log_a_prime;
};

SeriesCoeffs coeffs_a(const Rational& pi1, const Rational& gamma, double sigma, std::size_t n_max);

/// a_n as an explicit sum over Dyck-path counts (first block of length 2 s_1
/// with k_1 odd marks, remainder with k - k_1 odd marks and m - 1 returns).
Rational direct_sum_a(int n, const Rational& pi1, const Rational& gamma);

struct GrowthReport {
    double ratio = 0.0;                  ///< mean of a'_{n+1} / a'_n over the window
    std::vector<double> ratios;          ///< a'_{n+1} / a'_n for n = 0..nmax-1
    std::vector<double> sqrt_corrected;  ///< sqrt(n) a'_n / u_+^n for n = 0..nmax
    double u_plus = 0.0;
};

/// Trailing-window growth diagnostics; requires a.size() - 1 >= 2 * window.
GrowthReport growth_rate(const SeriesCoeffs& coeffs, int window);

/// Natural logarithm of a positive rational without overflow.
double log_rational(const Rational& q);

}  // namespace spikelab::genfun
