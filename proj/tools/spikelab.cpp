#include <cstdint>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include <spikelab/acceptance.hpp>
#include <spikelab/dyck.hpp>
#include <spikelab/errors.hpp>
#include <spikelab/genfun.hpp>
#include <spikelab/harness.hpp>
#include <spikelab/limitlaws.hpp>
#include <spikelab/momentlab.hpp>
#include <spikelab/persistence.hpp>
#include <spikelab/phase.hpp>
#include <spikelab/stats.hpp>

namespace {

using namespace spikelab;
using nlohmann::json;

constexpr int kExitFail = 1;
constexpr int kExitError = 2;

struct PlanArgs {
    int n = 200;
    int p = 400;
    std::vector<double> spikes;
    bool critical = false;
    std::string field = "complex";
    std::string entry_law = "gaussian";
    double sigma = 1.0;
    int trials = 1000;
    int k_top = 1;
    std::string regime;
    std::string output;
    int workers = 0;
};

void add_plan_options(CLI::App& app, PlanArgs& a)
{
    app.add_option("--n", a.n, "Rows of X (dimension N)")->capture_default_str();
    app.add_option("--p", a.p, "Columns of X (sample size p >= N)")->capture_default_str();
    app.add_option("--spikes", a.spikes, "Population spikes, descending, comma separated")->delimiter(',');
    app.add_flag("--critical", a.critical, "Use the single spike pi_1 = 1 + sqrt(n / p) (needs a square ratio)");
    app.add_option("--field", a.field, "real | complex")->capture_default_str();
    app.add_option("--entry-law", a.entry_law, "gaussian | three_point_match | rademacher")->capture_default_str();
    app.add_option("--sigma", a.sigma, "Entry standard deviation")->capture_default_str();
    app.add_option("--trials", a.trials, "Monte Carlo trials")->capture_default_str();
    app.add_option("--k-top", a.k_top, "Number of top eigenvalues to record")->capture_default_str();
    app.add_option("--regime", a.regime, "Override the rescaling regime: supercritical | critical | subcritical");
    app.add_option("--output", a.output, "Output file");
    app.add_option("--workers", a.workers, "Worker threads (0 = all cores)")->capture_default_str();
}

EnsembleSpec spec_from_args(const PlanArgs& a, std::uint64_t seed)
{
    EnsembleSpec spec;
    spec.n = a.n;
    spec.p = a.p;
    spec.spikes = a.spikes;
    if (a.critical) {
        const auto pi1 = exact_critical_spike(a.n, a.p);
        if (!pi1)
            throw DomainError("--critical needs n / p to be a ratio of perfect squares");
        spec.spikes = {*pi1};
    }
    spec.field = parse_field(a.field);
    spec.entry_law.kind = parse_law(a.entry_law);
    spec.entry_law.sigma = a.sigma;
    spec.seed = seed;
    spec.validate();
    return spec;
}

genfun::Rational parse_rational(const std::string& text)
{
    genfun::Rational q;
    const auto dot = text.find('.');
    if (dot == std::string::npos) {
        if (q.set_str(text, 10) != 0)
            throw FormatError("not a rational: " + text);
    } else {
        std::string digits = text.substr(0, dot) + text.substr(dot + 1);
        mpz_class num;
        if (digits.empty() || num.set_str(digits, 10) != 0)
            throw FormatError("not a decimal: " + text);
        mpz_class den;
        mpz_ui_pow_ui(den.get_mpz_t(), 10, text.size() - dot - 1);
        q = genfun::Rational(num, den);
    }
    q.canonicalize();
    return q;
}

json optional_json(const std::optional<double>& v)
{
    return v ? json(*v) : json(nullptr);
}

/// Reference law for xi_1 when the theory predicts one.
std::optional<std::pair<std::string, CdfFunction>> reference_law(const ExperimentResult& res)
{
    const RegimeReport report = classify(res.plan.spec);
    const Field field = res.plan.spec.field;
    switch (res.regime) {
    case Regime::Subcritical:
        if (field == Field::Complex)
            return std::pair{std::string("tw_gue"), CdfFunction(tabulate(LawName::TracyWidomGue, -9, 6, 0.005))};
        return std::pair{std::string("tw_goe"), CdfFunction(tabulate(LawName::TracyWidomGoe, -10, 7, 0.005))};
    case Regime::Supercritical:
        if (report.multiplicity == 1)
            return std::pair{std::string("normal"), CdfFunction(standard_normal_cdf)};
        return std::nullopt;
    case Regime::Critical:
        if (report.multiplicity == 1 && field == Field::Complex)
            return std::pair{std::string("bbp_f1"), CdfFunction(tabulate(LawName::BbpF1, -8, 6, 0.02))};
        return std::nullopt;
    }
    return std::nullopt;
}

int cmd_theory(const PlanArgs& a)
{
    const EnsembleSpec spec = spec_from_args(a, 0);
    const PhaseQuantities q = phase_quantities(spec);
    const RegimeReport r = classify(spec);
    json regimes = json::array();
    for (Regime reg : r.spike_regimes)
        regimes.push_back(std::string(to_string(reg)));
    const json out = {
        {"n", spec.n},
        {"p", spec.p},
        {"spikes", spec.spikes},
        {"field", std::string(to_string(spec.field))},
        {"phase",
         {{"gamma", q.gamma},
          {"u_plus", q.u_plus},
          {"u_minus", q.u_minus},
          {"w_c", q.w_c},
          {"tau", optional_json(q.tau)},
          {"sigma_pi", optional_json(q.sigma_pi)},
          {"rho_n", q.rho_n},
          {"sigma_n", q.sigma_n}}},
        {"regime",
         {{"leading", std::string(to_string(r.leading))},
          {"spike_regimes", regimes},
          {"multiplicity", r.multiplicity},
          {"law", std::string(to_string(r.law))}}},
        {"as_limit", as_limit(spec)},
    };
    std::cout << out.dump(2) << '\n';
    return 0;
}

int cmd_simulate(const PlanArgs& a, std::uint64_t seed, const std::string& curve_path)
{
    ExperimentPlan plan;
    plan.spec = spec_from_args(a, seed);
    plan.trials = a.trials;
    plan.k_top = a.k_top;
    if (!a.regime.empty())
        plan.regime_override = parse_regime(a.regime);
    plan.output_path = a.output;
    plan.workers = a.workers;

    install_interrupt_handler();
    const ExperimentResult res = run_experiment(plan, &interrupt_flag());
    std::cout << "regime " << to_string(res.regime) << ", trials " << res.trials.size() << "/" << plan.trials << '\n';
    if (!res.complete) {
        std::cerr << "interrupted; partial results"
                  << (plan.output_path.empty() ? " discarded" : " written to " + plan.output_path) << '\n';
        return kExitError;
    }
    const Summary lambda = summarize(res.lambda_column(0));
    std::cout << "lambda_1 mean " << lambda.mean << " sd " << lambda.sd << " (a.s. limit " << as_limit(plan.spec)
              << ")\n";
    if (const auto law = reference_law(res)) {
        const EmpiricalCDF emp = res.xi_cdf(0);
        const KsResult ks = ks_distance(emp, law->second);
        std::cout << "KS(xi_1, " << law->first << ") = " << ks.distance << " (p = " << ks.p_value << ")\n";
        if (!curve_path.empty()) {
            std::vector<double> grid;
            for (double x = -8.0; x <= 6.0 + 1e-9; x += 0.05)
                grid.push_back(x);
            save_comparison(grid, emp, law->second, curve_path);
        }
    } else {
        std::cout << "no reference law for this regime; empirical data recorded only\n";
    }
    return 0;
}

int cmd_limitlaw(const std::string& law_name, double lo, double hi, double step, int quad_order,
                 const std::string& output, bool moments)
{
    FredholmConfig cfg;
    cfg.quad_order = quad_order;
    const LawName law = parse_law_name(law_name);
    const DistributionCurve curve = tabulate(law, lo, hi, step, cfg);
    if (output.empty()) {
        std::cout << "x,cdf\n";
        for (std::size_t i = 0; i < curve.grid.size(); ++i)
            std::cout << curve.grid[i] << ',' << curve.cdf[i] << '\n';
    } else {
        save_curve(curve, output);
    }
    if (moments) {
        const LawMoments m = law_moments(curve, lo, hi);
        std::cerr << "mean " << m.mean << " sd " << m.sd << '\n';
    }
    return 0;
}

int cmd_combinat(const std::string& table, int n_max, const std::string& pi1, const std::string& gamma, double sigma,
                 const std::string& output)
{
    std::ofstream file;
    if (!output.empty()) {
        file.open(output);
        if (!file)
            throw FormatError("cannot write " + output);
    }
    std::ostream& out = output.empty() ? std::cout : file;
    if (table == "narayana") {
        out << "n,k,count\n";
        for (int n = 1; n <= n_max; ++n)
            for (int k = 1; k <= n; ++k)
                out << n << ',' << k << ',' << dyck::narayana(n, k).get_str() << '\n';
    } else if (table == "returns") {
        const dyck::PathCountTable t(n_max);
        if (!output.empty()) {
            file.close();
            save_count_table(t.rows(), output);
        } else {
            out << "n,k,m,count\n";
            for (const auto& [n, k, m, count] : t.rows())
                out << n << ',' << k << ',' << m << ',' << count.get_str() << '\n';
        }
    } else if (table == "series") {
        const auto coeffs = genfun::coeffs_a(parse_rational(pi1), parse_rational(gamma), sigma,
                                             static_cast<std::size_t>(n_max));
        const auto rows = series_rows(coeffs);
        if (!output.empty()) {
            file.close();
            save_series(rows, output);
        } else {
            out << "n,numerator,denominator,a_prime,ratio\n";
            for (const SeriesRow& r : rows)
                out << r.n << ',' << r.a.get_num().get_str() << ',' << r.a.get_den().get_str() << ',' << r.a_prime
                    << ',' << r.ratio << '\n';
        }
    } else {
        throw FormatError("unknown table: " + table + " (narayana | returns | series)");
    }
    return 0;
}

int cmd_moment(const PlanArgs& a, int power, const std::string& method, std::uint64_t seed)
{
    moments::MomentRequest req;
    req.spec = spec_from_args(a, seed);
    req.power = power;
    req.method = moments::parse_method(method);
    req.trials = a.trials;
    req.workers = a.workers;
    const std::string text = moment_report_to_json(moments::exact_trace_moment(req));
    if (a.output.empty())
        std::cout << text << '\n';
    else
        write_text(a.output, text + "\n");
    return 0;
}

int cmd_verify(const std::vector<std::string>& keys, int workers)
{
    std::vector<const acceptance::Criterion*> selected;
    for (const std::string& key : keys) {
        if (key == "all") {
            for (const auto& c : acceptance::criteria())
                selected.push_back(&c);
            continue;
        }
        const acceptance::Criterion* c = acceptance::find_criterion(key);
        if (c == nullptr)
            throw FormatError("unknown criterion: " + key);
        selected.push_back(c);
    }
    bool all_passed = true;
    for (const acceptance::Criterion* c : selected) {
        const acceptance::CriterionResult r = acceptance::run_criterion(*c, {workers});
        std::cout << r.summary_line() << std::endl;
        all_passed = all_passed && r.passed();
    }
    return all_passed ? 0 : kExitFail;
}

}  // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Spiked sample covariance experiments: phase diagram, limit laws, path counts and Monte Carlo checks"};
    app.require_subcommand(1);
    app.fallthrough();
    app.set_config("--config", "", "Key-value plan file; command-line flags override its entries");

    PlanArgs plan;
    add_plan_options(app, plan);

    auto* theory = app.add_subcommand("theory", "Print phase quantities and the regime report");

    std::uint64_t seed = 0;
    std::string curve_path;
    auto* simulate = app.add_subcommand("simulate", "Run a Monte Carlo experiment");
    simulate->add_option("--seed", seed, "RNG seed (required)")->required();
    simulate->add_option("--curve", curve_path, "Write x,empirical,theoretical for xi_1");

    std::string law_name = "tw_gue";
    double lo = -8.0;
    double hi = 6.0;
    double step = 0.05;
    int quad_order = 48;
    bool law_moments_flag = false;
    auto* limitlaw = app.add_subcommand("limitlaw", "Tabulate a limiting distribution");
    limitlaw->add_option("--law", law_name, "tw_gue | tw_goe | bbp_f1 | normal | tw_gue_painleve")->capture_default_str();
    limitlaw->add_option("--lo", lo)->capture_default_str();
    limitlaw->add_option("--hi", hi)->capture_default_str();
    limitlaw->add_option("--step", step)->capture_default_str();
    limitlaw->add_option("--quad-order", quad_order, "Gauss-Legendre nodes of the Fredholm discretisation")
        ->capture_default_str();
    limitlaw->add_flag("--moments", law_moments_flag, "Also print mean and standard deviation to stderr");

    std::string table = "returns";
    int n_max = 10;
    std::string pi1 = "3";
    std::string gamma = "1";
    double series_sigma = 1.0;
    auto* combinat = app.add_subcommand("combinat", "Dyck path counts and generating-function coefficients");
    combinat->add_option("--table", table, "narayana | returns | series")->capture_default_str();
    combinat->add_option("--n-max", n_max)->capture_default_str();
    combinat->add_option("--pi1", pi1, "Spike as a rational, e.g. 3/2")->capture_default_str();
    combinat->add_option("--gamma", gamma, "Ratio p / n as a rational")->capture_default_str();
    combinat->add_option("--series-sigma", series_sigma, "sigma in a'_n = sigma^{2n} a_n")->capture_default_str();

    int power = 2;
    std::string method = "exact_enumeration";
    std::uint64_t moment_seed = 0;
    auto* moment = app.add_subcommand("moment", "E Tr V^s by exact path expansion or Monte Carlo");
    moment->add_option("--power", power, "s")->capture_default_str();
    moment->add_option("--method", method, "exact_enumeration | symbolic_gaussian | monte_carlo")
        ->capture_default_str();
    moment->add_option("--seed", moment_seed, "RNG seed for monte_carlo")->capture_default_str();

    std::vector<std::string> criteria{"all"};
    auto* verify = app.add_subcommand("verify", "Run acceptance criteria by number or name");
    verify->add_option("criteria", criteria, "Criterion numbers or names, or 'all'");
    verify->add_option("--criterion", criteria, "Same as the positional argument");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : kExitError;
    }

    try {
        if (*theory)
            return cmd_theory(plan);
        if (*simulate)
            return cmd_simulate(plan, seed, curve_path);
        if (*limitlaw)
            return cmd_limitlaw(law_name, lo, hi, step, quad_order, plan.output, law_moments_flag);
        if (*combinat)
            return cmd_combinat(table, n_max, pi1, gamma, series_sigma, plan.output);
        if (*moment)
            return cmd_moment(plan, power, method, moment_seed);
        if (*verify)
            return cmd_verify(criteria, plan.workers);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitError;
    }
    return kExitError;
}
