#pragma once

#include <vector>

#include <Eigen/Dense>

#include "spikelab/ensembles.hpp"
#include "spikelab/phase.hpp"

namespace spikelab {

struct EigenSample {
    std::vector<double> lambdas;  ///< descending
};

struct RescaledSample {
    Regime regime = Regime::Subcritical;
    std::vector<double> xi;
};

/// All eigenvalues of draw.v, descending (dense tridiagonal QL solver).
EigenSample eigenvalues(const MatrixDraw& draw);
EigenSample eigenvalues(const Eigen::MatrixXd& symmetric);
EigenSample eigenvalues(const Eigen::MatrixXcd& hermitian);

/// Collapses the spectrum of a doubled real embedding [[A, -B], [B, A]] of a
/// Hermitian matrix A + iB, where every eigenvalue appears twice.
EigenSample collapse_doubled(const std::vector<double>& doubled_descending);

/// Regime-dependent rescaling of the top k_top eigenvalues.
/// Supercritical: sqrt(N) (lambda - tau) / sigma(pi_1), with an extra sqrt(2)
/// in the denominator for the real field. Otherwise N^{2/3} (lambda - rho_N) / sigma_N.
RescaledSample rescale(const EigenSample& sample, const EnsembleSpec& spec, Regime regime, int k_top);

}  // namespace spikelab
