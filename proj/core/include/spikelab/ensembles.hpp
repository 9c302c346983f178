#pragma once

#include <complex>
#include <cstdint>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include <Eigen/Dense>

#include "spikelab/rng.hpp"

namespace spikelab {

enum class Field { Real, Complex };

enum class LawKind {
    Gaussian,
    /// {-a, 0, +a} with probabilities {1/6, 2/3, 1/6}; matches Gaussian moments up to order 4.
    ThreePointMatch,
    /// Sign variable; fourth moment sigma^4 instead of 3 sigma^4.
    Rademacher,
};

std::string_view to_string(Field field);
std::string_view to_string(LawKind kind);
Field parse_field(std::string_view text);
LawKind parse_law(std::string_view text);

struct EntryLaw {
    LawKind kind = LawKind::Gaussian;
    double sigma = 1.0;

    /// True when the per-part fourth moment matches the Gaussian value.
    bool matches_gaussian_fourth_moment() const noexcept { return kind != LawKind::Rademacher; }
    bool finitely_supported() const noexcept { return kind != LawKind::Gaussian; }

    /// Variance of each independent real part: sigma^2 (real) or sigma^2 / 2 (complex).
    double part_variance(Field field) const noexcept
    {
        return field == Field::Real ? sigma * sigma : sigma * sigma / 2.0;
    }

    friend bool operator==(const EntryLaw&, const EntryLaw&) = default;
};

/// One random-matrix experiment: an n x p sample with population covariance
/// diag(spikes..., 1, ..., 1).
struct EnsembleSpec {
    int n = 1;
    int p = 1;
    std::vector<double> spikes;  ///< descending, each > 1; empty means white
    Field field = Field::Complex;
    EntryLaw entry_law;
    std::uint64_t seed = 0;

    double gamma_n() const noexcept { return static_cast<double>(p) / static_cast<double>(n); }
    bool white() const noexcept { return spikes.empty(); }
    double leading_spike() const noexcept { return spikes.empty() ? 1.0 : spikes.front(); }

    /// Population covariance entry Sigma_ii (1-based i is index i - 1).
    double population_variance(int i) const noexcept
    {
        return i < static_cast<int>(spikes.size()) ? spikes[static_cast<std::size_t>(i)] : 1.0;
    }

    /// Throws DimensionError or DomainError on an invalid spec.
    void validate() const;

    friend bool operator==(const EnsembleSpec&, const EnsembleSpec&) = default;
};

template <class Scalar>
struct DenseDraw {
    using Matrix = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;
    Matrix x;  ///< n x p sample
    Matrix v;  ///< n x n self-adjoint (1/p) Sigma^{1/2} X X^* Sigma^{1/2}
};

using RealDraw = DenseDraw<double>;
using ComplexDraw = DenseDraw<std::complex<double>>;

struct MatrixDraw {
    std::variant<RealDraw, ComplexDraw> data;

    Field field() const noexcept
    {
        return std::holds_alternative<RealDraw>(data) ? Field::Real : Field::Complex;
    }
    Eigen::Index n() const noexcept;
    Eigen::Index p() const noexcept;
    double trace() const noexcept;
    /// Largest |v_ij - conj(v_ji)|.
    double asymmetry() const noexcept;
};

/// One entry of X drawn from a single random block. Complex entries take the
/// real and imaginary parts independently, each with variance sigma^2 / 2.
std::complex<double> sample_entry(const EntryLaw& law, Field field, const RandomBlock& block);

/// Consumes exactly one block from the stream.
std::complex<double> sample_entry(const EntryLaw& law, Field field, CounterRng& rng);

/// Draw number `trial` of the ensemble. Entry (i, j) of X uses block i * p + j
/// of the stream (seed, trial), so draws are reproducible in isolation.
MatrixDraw build_matrix(const EnsembleSpec& spec, std::uint64_t trial);

/// Same as build_matrix, but reuses an externally supplied sample X.
MatrixDraw assemble_from_sample(const EnsembleSpec& spec, const Eigen::MatrixXcd& x);

}  // namespace spikelab
