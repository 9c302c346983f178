#include "spikelab/spectra.hpp"

#include <algorithm>
#include <cmath>
#include <functional>

#include <Eigen/Eigenvalues>

#include "spikelab/errors.hpp"

namespace spikelab {

namespace {

template <class Matrix>
EigenSample solve(const Matrix& v)
{
    if (v.rows() != v.cols() || v.rows() == 0)
        throw DimensionError("eigenvalues need a non-empty square matrix");
    Eigen::SelfAdjointEigenSolver<Matrix> solver(v, Eigen::EigenvaluesOnly);
    if (solver.info() != Eigen::Success)
        throw ConvergenceError("self-adjoint eigensolver exceeded its iteration budget");
    const Eigen::VectorXd& values = solver.eigenvalues();
    EigenSample out;
    out.lambdas.assign(values.data(), values.data() + values.size());
    std::sort(out.lambdas.begin(), out.lambdas.end(), std::greater<>());
    return out;
}

}  // namespace

EigenSample eigenvalues(const Eigen::MatrixXd& symmetric)
{
    return solve(symmetric);
}

EigenSample eigenvalues(const Eigen::MatrixXcd& hermitian)
{
    return solve(hermitian);
}

EigenSample eigenvalues(const MatrixDraw& draw)
{
    return std::visit([](const auto& d) { return solve(d.v); }, draw.data);
}

EigenSample collapse_doubled(const std::vector<double>& doubled_descending)
{
    if (doubled_descending.size() % 2 != 0)
        throw DimensionError("doubled spectrum must have even length");
    EigenSample out;
    if (doubled_descending.empty())
        return out;
    const double scale = std::max(1.0, std::abs(doubled_descending.front()));
    for (std::size_t i = 0; i < doubled_descending.size(); i += 2) {
        const double a = doubled_descending[i];
        const double b = doubled_descending[i + 1];
        if (std::abs(a - b) >= 1e-6 * scale)
            throw ConvergenceError("doubled spectrum does not pair up within tolerance");
        out.lambdas.push_back(0.5 * (a + b));
    }
    return out;
}

RescaledSample rescale(const EigenSample& sample, const EnsembleSpec& spec, Regime regime, int k_top)
{
    if (k_top < 1 || k_top > static_cast<int>(sample.lambdas.size()))
        throw DimensionError("k_top must lie in [1, n]");
    const PhaseQuantities q = phase_quantities(spec);
    RescaledSample out;
    out.regime = regime;
    out.xi.reserve(static_cast<std::size_t>(k_top));
    const double n = spec.n;
    if (regime == Regime::Supercritical) {
        if (!q.tau || !q.sigma_pi || *q.sigma_pi <= 0.0)
            throw RegimeError("supercritical scaling needs pi_1 > w_c (sigma(pi_1) real and positive)");
        double denom = *q.sigma_pi;
        if (spec.field == Field::Real)
            denom *= std::sqrt(2.0);
        for (int i = 0; i < k_top; ++i)
            out.xi.push_back(std::sqrt(n) * (sample.lambdas[static_cast<std::size_t>(i)] - *q.tau) / denom);
    } else {
        const double scale = std::pow(n, 2.0 / 3.0) / q.sigma_n;
        for (int i = 0; i < k_top; ++i)
            out.xi.push_back(scale * (sample.lambdas[static_cast<std::size_t>(i)] - q.rho_n));
    }
    return out;
}

}  // namespace spikelab
