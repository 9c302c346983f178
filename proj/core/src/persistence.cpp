#include "spikelab/persistence.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <sstream>

#include <json.hpp>

#include "spikelab/errors.hpp"

#ifndef SPIKELAB_VERSION
#define SPIKELAB_VERSION "unknown"
#endif

namespace spikelab {

using nlohmann::json;

namespace {

std::string fmt_digits(double v, int digits)
{
    if (std::isnan(v))
        return "nan";
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.*g", digits, v);
    return buf;
}

std::string fmt17(double v)
{
    return fmt_digits(v, 17);
}

double parse_double(const std::string& text)
{
    if (text == "nan")
        return std::numeric_limits<double>::quiet_NaN();
    char* end = nullptr;
    const double v = std::strtod(text.c_str(), &end);
    if (end == text.c_str() || *end != '\0')
        throw FormatError("not a number: '" + text + "'");
    return v;
}

int parse_int(const std::string& text)
{
    std::size_t used = 0;
    int v = 0;
    try {
        v = std::stoi(text, &used);
    } catch (const std::exception&) {
        throw FormatError("not an integer: '" + text + "'");
    }
    if (used != text.size())
        throw FormatError("not an integer: '" + text + "'");
    return v;
}

std::vector<std::string> split_csv(const std::string& line)
{
    std::vector<std::string> out;
    std::stringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, ','))
        out.push_back(cell);
    if (!line.empty() && line.back() == ',')
        out.emplace_back();
    return out;
}

/// Data rows of a CSV file after checking its header.
std::vector<std::vector<std::string>> read_csv(const std::string& path, const std::string& expected_header)
{
    std::ifstream in(path);
    if (!in)
        throw FormatError("cannot open " + path);
    std::string line;
    if (!std::getline(in, line) || (!expected_header.empty() && line != expected_header))
        throw FormatError(path + ": unexpected header");
    std::vector<std::vector<std::string>> rows;
    while (std::getline(in, line)) {
        if (!line.empty())
            rows.push_back(split_csv(line));
    }
    return rows;
}

std::ofstream open_out(const std::string& path)
{
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out)
        throw FormatError("cannot write " + path);
    return out;
}

json spec_json(const EnsembleSpec& spec)
{
    return {
        {"n", spec.n},
        {"p", spec.p},
        {"spikes", spec.spikes},
        {"field", to_string(spec.field)},
        {"entry_law", to_string(spec.entry_law.kind)},
        {"sigma", spec.entry_law.sigma},
        {"seed", spec.seed},
    };
}

EnsembleSpec spec_from(const json& j)
{
    EnsembleSpec spec;
    spec.n = j.at("n").get<int>();
    spec.p = j.at("p").get<int>();
    spec.spikes = j.at("spikes").get<std::vector<double>>();
    spec.field = parse_field(j.at("field").get<std::string>());
    spec.entry_law.kind = parse_law(j.at("entry_law").get<std::string>());
    spec.entry_law.sigma = j.at("sigma").get<double>();
    spec.seed = j.at("seed").get<std::uint64_t>();
    return spec;
}

json optional_json(const std::optional<double>& v)
{
    return v ? json(*v) : json(nullptr);
}

std::optional<double> optional_from(const json& j)
{
    if (j.is_null())
        return std::nullopt;
    return j.get<double>();
}

}  // namespace

std::string read_text(const std::string& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw FormatError("cannot open " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_text(const std::string& path, const std::string& text)
{
    auto out = open_out(path);
    out << text;
}

std::string manifest_path(const std::string& results_path)
{
    return results_path + ".manifest.json";
}

std::string spec_to_json(const EnsembleSpec& spec)
{
    return spec_json(spec).dump();
}

EnsembleSpec spec_from_json(const std::string& text)
{
    try {
        return spec_from(json::parse(text));
    } catch (const json::exception& e) {
        throw FormatError(std::string("spec JSON: ") + e.what());
    }
}

void save_experiment(const ExperimentResult& result, const std::string& path)
{
    const int k = result.plan.k_top;
    {
        auto out = open_out(path);
        out << "trial";
        for (int i = 1; i <= k; ++i)
            out << ",lambda_" << i;
        for (int i = 1; i <= k; ++i)
            out << ",xi_" << i;
        out << '\n';
        for (const TrialResult& t : result.trials) {
            out << t.trial;
            for (double v : t.lambdas)
                out << ',' << fmt17(v);
            for (double v : t.xi)
                out << ',' << fmt17(v);
            out << '\n';
        }
        if (!out)
            throw FormatError("write failed: " + path);
    }
    const PhaseQuantities& q = result.phase;
    // The worker count and output path are execution details and stay out of
    // the manifest, so outputs are byte-identical across worker counts.
    const json manifest = {
        {"version", SPIKELAB_VERSION},
        {"plan",
         {
             {"spec", spec_json(result.plan.spec)},
             {"trials", result.plan.trials},
             {"k_top", k},
             {"regime_override",
              result.plan.regime_override ? json(std::string(to_string(*result.plan.regime_override))) : json(nullptr)},
         }},
        {"regime", std::string(to_string(result.regime))},
        {"phase",
         {
             {"gamma", q.gamma},
             {"u_plus", q.u_plus},
             {"u_minus", q.u_minus},
             {"w_c", q.w_c},
             {"tau", optional_json(q.tau)},
             {"sigma_pi", optional_json(q.sigma_pi)},
             {"rho_n", q.rho_n},
             {"sigma_n", q.sigma_n},
         }},
        {"seed", result.plan.spec.seed},
        {"complete", result.complete},
        {"trials_completed", result.trials.size()},
    };
    write_text(manifest_path(path), manifest.dump(2) + "\n");
}

ExperimentResult load_experiment(const std::string& path)
{
    ExperimentResult result;
    try {
        const json manifest = json::parse(read_text(manifest_path(path)));
        const json& plan = manifest.at("plan");
        result.plan.spec = spec_from(plan.at("spec"));
        result.plan.trials = plan.at("trials").get<int>();
        result.plan.k_top = plan.at("k_top").get<int>();
        if (!plan.at("regime_override").is_null())
            result.plan.regime_override = parse_regime(plan.at("regime_override").get<std::string>());
        result.plan.output_path = path;
        result.regime = parse_regime(manifest.at("regime").get<std::string>());
        const json& q = manifest.at("phase");
        result.phase.gamma = q.at("gamma").get<double>();
        result.phase.u_plus = q.at("u_plus").get<double>();
        result.phase.u_minus = q.at("u_minus").get<double>();
        result.phase.w_c = q.at("w_c").get<double>();
        result.phase.tau = optional_from(q.at("tau"));
        result.phase.sigma_pi = optional_from(q.at("sigma_pi"));
        result.phase.rho_n = q.at("rho_n").get<double>();
        result.phase.sigma_n = q.at("sigma_n").get<double>();
        result.complete = manifest.at("complete").get<bool>();
    } catch (const json::exception& e) {
        throw FormatError(std::string("manifest: ") + e.what());
    }
    const int k = result.plan.k_top;
    std::string header = "trial";
    for (int i = 1; i <= k; ++i)
        header += ",lambda_" + std::to_string(i);
    for (int i = 1; i <= k; ++i)
        header += ",xi_" + std::to_string(i);
    for (const auto& row : read_csv(path, header)) {
        if (row.size() != static_cast<std::size_t>(1 + 2 * k))
            throw FormatError(path + ": wrong number of columns");
        TrialResult t;
        t.trial = parse_int(row[0]);
        for (int i = 0; i < k; ++i) {
            t.lambdas.push_back(parse_double(row[static_cast<std::size_t>(1 + i)]));
            t.xi.push_back(parse_double(row[static_cast<std::size_t>(1 + k + i)]));
        }
        result.trials.push_back(std::move(t));
    }
    return result;
}

void save_curve(const DistributionCurve& curve, const std::string& path)
{
    auto out = open_out(path);
    out << "x,cdf\n";
    for (std::size_t i = 0; i < curve.grid.size(); ++i)
        out << fmt_digits(curve.grid[i], 10) << ',' << fmt_digits(curve.cdf[i], 10) << '\n';
}

DistributionCurve load_curve(const std::string& path)
{
    DistributionCurve curve;
    for (const auto& row : read_csv(path, "x,cdf")) {
        if (row.size() != 2)
            throw FormatError(path + ": expected two columns");
        curve.grid.push_back(parse_double(row[0]));
        curve.cdf.push_back(parse_double(row[1]));
    }
    curve.validate();
    return curve;
}

void save_comparison(const std::vector<double>& grid, const EmpiricalCDF& emp, const CdfFunction& law,
                     const std::string& path)
{
    auto out = open_out(path);
    out << "x,empirical,theoretical\n";
    for (double x : grid)
        out << fmt17(x) << ',' << fmt17(emp(x)) << ',' << fmt17(law(x)) << '\n';
}

void save_count_table(const std::vector<CountRow>& rows, const std::string& path)
{
    auto out = open_out(path);
    out << "n,k,m,count\n";
    for (const auto& [n, k, m, count] : rows)
        out << n << ',' << k << ',' << m << ',' << count.get_str() << '\n';
}

std::vector<CountRow> load_count_table(const std::string& path)
{
    std::vector<CountRow> rows;
    for (const auto& row : read_csv(path, "n,k,m,count")) {
        if (row.size() != 4)
            throw FormatError(path + ": expected four columns");
        dyck::BigInt count;
        if (count.set_str(row[3], 10) != 0)
            throw FormatError(path + ": bad count '" + row[3] + "'");
        rows.emplace_back(parse_int(row[0]), parse_int(row[1]), parse_int(row[2]), count);
    }
    return rows;
}

bool operator==(const SeriesRow& x, const SeriesRow& y)
{
    const auto same = [](double a, double b) { return a == b || (std::isnan(a) && std::isnan(b)); };
    return x.n == y.n && x.a == y.a && same(x.a_prime, y.a_prime) && same(x.ratio, y.ratio);
}

std::vector<SeriesRow> series_rows(const genfun::SeriesCoeffs& coeffs)
{
    std::vector<SeriesRow> rows;
    for (std::size_t n = 0; n < coeffs.a.size(); ++n) {
        SeriesRow row;
        row.n = static_cast<int>(n);
        row.a = coeffs.a[n];
        row.a_prime = coeffs.a_prime[n];
        row.ratio = n > 0 && sgn(coeffs.a[n - 1]) != 0
                        ? coeffs.sigma * coeffs.sigma * genfun::Rational(coeffs.a[n] / coeffs.a[n - 1]).get_d()
                        : std::numeric_limits<double>::quiet_NaN();
        rows.push_back(row);
    }
    return rows;
}

void save_series(const std::vector<SeriesRow>& rows, const std::string& path)
{
    auto out = open_out(path);
    out << "n,numerator,denominator,a_prime,ratio\n";
    for (const SeriesRow& row : rows)
        out << row.n << ',' << row.a.get_num().get_str() << ',' << row.a.get_den().get_str() << ','
            << fmt17(row.a_prime) << ',' << fmt17(row.ratio) << '\n';
}

std::vector<SeriesRow> load_series(const std::string& path)
{
    std::vector<SeriesRow> rows;
    for (const auto& cells : read_csv(path, "n,numerator,denominator,a_prime,ratio")) {
        if (cells.size() != 5)
            throw FormatError(path + ": expected five columns");
        SeriesRow row;
        row.n = parse_int(cells[0]);
        mpz_class num;
        mpz_class den;
        if (num.set_str(cells[1], 10) != 0 || den.set_str(cells[2], 10) != 0 || sgn(den) == 0)
            throw FormatError(path + ": bad rational in row " + cells[0]);
        row.a = genfun::Rational(num, den);
        row.a.canonicalize();
        row.a_prime = parse_double(cells[3]);
        row.ratio = parse_double(cells[4]);
        rows.push_back(std::move(row));
    }
    return rows;
}

std::string moment_report_to_json(const moments::MomentReport& report)
{
    json terms = json::array();
    for (const auto& [key, value] : report.path_terms)
        terms.push_back({{"one_edges", key.first}, {"odd_marked", key.second}, {"value", value.get_str()}});
    json j = {
        {"method", std::string(moments::to_string(report.method))},
        {"power", report.power},
        {"path_terms", terms},
    };
    if (report.method == moments::Method::MonteCarlo) {
        j["mean"] = report.mc_mean;
        j["stderr"] = report.mc_stderr;
        j["trials"] = report.mc_trials;
    } else {
        j["value"] = report.value.get_str();
        j["value_approx"] = report.value.get_d();
    }
    return j.dump(2);
}

moments::MomentReport moment_report_from_json(const std::string& text)
{
    moments::MomentReport report;
    try {
        const json j = json::parse(text);
        report.method = moments::parse_method(j.at("method").get<std::string>());
        report.power = j.at("power").get<int>();
        for (const json& t : j.at("path_terms")) {
            genfun::Rational v(t.at("value").get<std::string>());
            v.canonicalize();
            report.path_terms[{t.at("one_edges").get<int>(), t.at("odd_marked").get<int>()}] = v;
        }
        if (report.method == moments::Method::MonteCarlo) {
            report.mc_mean = j.at("mean").get<double>();
            report.mc_stderr = j.at("stderr").get<double>();
            report.mc_trials = j.at("trials").get<int>();
        } else {
            report.value = genfun::Rational(j.at("value").get<std::string>());
            report.value.canonicalize();
        }
    } catch (const json::exception& e) {
        throw FormatError(std::string("moment report JSON: ") + e.what());
    } catch (const std::invalid_argument& e) {
        throw FormatError(std::string("moment report JSON: ") + e.what());
    }
    return report;
}

}  // namespace spikelab
