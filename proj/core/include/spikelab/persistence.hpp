#pragma once

#include <string>
#include <tuple>
#include <vector>

#include "spikelab/dyck.hpp"
#include "spikelab/genfun.hpp"
#include "spikelab/harness.hpp"
#include "spikelab/limitlaws.hpp"
#include "spikelab/momentlab.hpp"

namespace spikelab {

/// Reals are written with 17 significant digits so files reload bit-exactly,
/// except curve exports, which use 10.

/// Results CSV at `path` (trial, lambda_1..lambda_k, xi_1..xi_k) plus a JSON
/// manifest at manifest_path(path) with the plan, phase quantities and version.
void save_experiment(const ExperimentResult& result, const std::string& path);
ExperimentResult load_experiment(const std::string& path);
std::string manifest_path(const std::string& results_path);

std::string spec_to_json(const EnsembleSpec& spec);
EnsembleSpec spec_from_json(const std::string& text);

/// Header `x,cdf`, 10 significant digits.
void save_curve(const DistributionCurve& curve, const std::string& path);
DistributionCurve load_curve(const std::string& path);

/// Plot-ready comparison: header `x,empirical,theoretical`.
void save_comparison(const std::vector<double>& grid, const EmpiricalCDF& emp, const CdfFunction& law,
                     const std::string& path);

using CountRow = std::tuple<int, int, int, dyck::BigInt>;
/// Header `n,k,m,count`.
void save_count_table(const std::vector<CountRow>& rows, const std::string& path);
std::vector<CountRow> load_count_table(const std::string& path);

struct SeriesRow {
    int n = 0;
    genfun::Rational a;
    double a_prime = 0.0;
    double ratio = 0.0;  ///< a'_n / a'_{n-1}; NaN for n = 0

    friend bool operator==(const SeriesRow& x, const SeriesRow& y);
};
std::vector<SeriesRow> series_rows(const genfun::SeriesCoeffs& coeffs);
/// Header `n,numerator,denominator,a_prime,ratio`.
void save_series(const std::vector<SeriesRow>& rows, const std::string& path);
std::vector<SeriesRow> load_series(const std::string& path);

std::string moment_report_to_json(const moments::MomentReport& report);
moments::MomentReport moment_report_from_json(const std::string& text);

std::string read_text(const std::string& path);
void write_text(const std::string& path, const std::string& text);

}  // namespace spikelab
