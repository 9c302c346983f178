#include "spikelab/ensembles.hpp"

#include <cmath>

#include "spikelab/errors.hpp"

namespace spikelab {

std::string_view to_string(Field field)
{
    return field == Field::Real ? "real" : "complex";
}

std::string_view to_string(LawKind kind)
{
    switch (kind) {
    case LawKind::Gaussian:
        return "gaussian";
    case LawKind::ThreePointMatch:
        return "three_point_match";
    case LawKind::Rademacher:
        return "rademacher";
    }
    return "unknown";
}

Field parse_field(std::string_view text)
{
    if (text == "real")
        return Field::Real;
    if (text == "complex")
        return Field::Complex;
    throw FormatError("unknown field '" + std::string(text) + "' (expected real or complex)");
}

LawKind parse_law(std::string_view text)
{
    if (text == "gaussian")
        return LawKind::Gaussian;
    if (text == "three_point_match" || text == "three_point")
        return LawKind::ThreePointMatch;
    if (text == "rademacher")
        return LawKind::Rademacher;
    throw FormatError("unknown entry law '" + std::string(text) + "'");
}

void EnsembleSpec::validate() const
{
    if (n < 1 || p < 1)
        throw DimensionError("n and p must be positive");
    if (p < n)
        throw DimensionError("p = " + std::to_string(p) + " is smaller than n = " + std::to_string(n));
    if (static_cast<int>(spikes.size()) > n)
        throw DimensionError("more spikes than population dimensions");
    if (!(entry_law.sigma > 0.0) || !std::isfinite(entry_law.sigma))
        throw DomainError("entry law sigma must be positive and finite");
    for (std::size_t i = 0; i < spikes.size(); ++i) {
        if (!(spikes[i] > 1.0) || !std::isfinite(spikes[i]))
            throw DomainError("spikes must be finite and strictly greater than 1");
        if (i > 0 && spikes[i] > spikes[i - 1])
            throw DomainError("spikes must be listed in non-increasing order");
    }
}

Eigen::Index MatrixDraw::n() const noexcept
{
    return std::visit([](const auto& d) { return d.v.rows(); }, data);
}

Eigen::Index MatrixDraw::p() const noexcept
{
    return std::visit([](const auto& d) { return d.x.cols(); }, data);
}

double MatrixDraw::trace() const noexcept
{
    return std::visit([](const auto& d) { return std::real(d.v.trace()); }, data);
}

double MatrixDraw::asymmetry() const noexcept
{
    return std::visit([](const auto& d) { return (d.v - d.v.adjoint()).cwiseAbs().maxCoeff(); }, data);
}

namespace {

double discrete_part(LawKind kind, double scale, double u)
{
    if (kind == LawKind::Rademacher)
        return u < 0.5 ? -scale : scale;
    const double a = scale * std::sqrt(3.0);
    if (u < 1.0 / 6.0)
        return -a;
    if (u < 5.0 / 6.0)
        return 0.0;
    return a;
}

template <class Scalar>
MatrixDraw assemble(const EnsembleSpec& spec, typename DenseDraw<Scalar>::Matrix x)
{
    DenseDraw<Scalar> draw;
    draw.x = std::move(x);
    typename DenseDraw<Scalar>::Matrix y = draw.x;
    for (std::size_t i = 0; i < spec.spikes.size(); ++i)
        y.row(static_cast<Eigen::Index>(i)) *= std::sqrt(spec.spikes[i]);

    const Eigen::Index n = spec.n;
    draw.v = DenseDraw<Scalar>::Matrix::Zero(n, n);
    draw.v.template selfadjointView<Eigen::Lower>().rankUpdate(y, 1.0 / static_cast<double>(spec.p));
    for (Eigen::Index j = 0; j < n; ++j) {
        draw.v(j, j) = Scalar(std::real(draw.v(j, j)));
        for (Eigen::Index i = j + 1; i < n; ++i) {
            if constexpr (std::is_same_v<Scalar, double>)
                draw.v(j, i) = draw.v(i, j);
            else
                draw.v(j, i) = std::conj(draw.v(i, j));
        }
    }
    return MatrixDraw{std::move(draw)};
}

}  // namespace

std::complex<double> sample_entry(const EntryLaw& law, Field field, const RandomBlock& block)
{
    const double scale = std::sqrt(law.part_variance(field));
    if (law.kind == LawKind::Gaussian) {
        const auto [z0, z1] = block_normals(block);
        return field == Field::Real ? std::complex<double>(scale * z0, 0.0)
                                    : std::complex<double>(scale * z0, scale * z1);
    }
    const auto [u0, u1] = block_uniforms(block);
    const double re = discrete_part(law.kind, scale, u0);
    const double im = field == Field::Real ? 0.0 : discrete_part(law.kind, scale, u1);
    return {re, im};
}

std::complex<double> sample_entry(const EntryLaw& law, Field field, CounterRng& rng)
{
    return sample_entry(law, field, rng.next_block());
}

MatrixDraw build_matrix(const EnsembleSpec& spec, std::uint64_t trial)
{
    spec.validate();
    const CounterRng rng(spec.seed, trial);
    const auto n = static_cast<Eigen::Index>(spec.n);
    const auto p = static_cast<Eigen::Index>(spec.p);
    if (spec.field == Field::Real) {
        Eigen::MatrixXd x(n, p);
        for (Eigen::Index i = 0; i < n; ++i)
            for (Eigen::Index j = 0; j < p; ++j)
                x(i, j) = sample_entry(spec.entry_law, spec.field,
                                       rng.block(static_cast<std::uint64_t>(i * p + j)))
                              .real();
        return assemble<double>(spec, std::move(x));
    }
    Eigen::MatrixXcd x(n, p);
    for (Eigen::Index i = 0; i < n; ++i)
        for (Eigen::Index j = 0; j < p; ++j)
            x(i, j) = sample_entry(spec.entry_law, spec.field, rng.block(static_cast<std::uint64_t>(i * p + j)));
    return assemble<std::complex<double>>(spec, std::move(x));
}

MatrixDraw assemble_from_sample(const EnsembleSpec& spec, const Eigen::MatrixXcd& x)
{
    spec.validate();
    if (x.rows() != spec.n || x.cols() != spec.p)
        throw DimensionError("sample shape does not match the ensemble dimensions");
    if (spec.field == Field::Real)
        return assemble<double>(spec, x.real());
    return assemble<std::complex<double>>(spec, x);
}

}  // namespace spikelab
