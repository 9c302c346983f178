#include "spikelab/acceptance.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <map>
#include <set>

#include "spikelab/dyck.hpp"
#include "spikelab/errors.hpp"
#include "spikelab/genfun.hpp"
#include "spikelab/harness.hpp"
#include "spikelab/limitlaws.hpp"
#include "spikelab/momentlab.hpp"
#include "spikelab/spectra.hpp"
#include "spikelab/stats.hpp"

namespace spikelab::acceptance {

bool CriterionResult::passed() const
{
    return !checks.empty() && std::all_of(checks.begin(), checks.end(), [](const Check& c) { return c.passed; });
}

std::string CriterionResult::summary_line() const
{
    char head[96];
    std::snprintf(head, sizeof head, "%s [%02d] %s (%.1f s):", passed() ? "PASS" : "FAIL", id, slug.c_str(),
                  seconds);
    std::string line = head;
    for (std::size_t i = 0; i < checks.size(); ++i) {
        line += i == 0 ? " " : "; ";
        if (!checks[i].passed)
            line += "!";
        line += checks[i].label;
        if (!checks[i].detail.empty())
            line += " " + checks[i].detail;
    }
    return line;
}

namespace {

using genfun::Rational;
using genfun::Series;

std::string fmt(const char* pattern, double a, double b = 0.0)
{
    char buf[128];
    std::snprintf(buf, sizeof buf, pattern, a, b);
    return buf;
}

void add(std::vector<Check>& out, std::string label, bool passed, std::string detail = {})
{
    out.push_back({std::move(label), passed, std::move(detail)});
}

void add_below(std::vector<Check>& out, std::string label, double value, double limit)
{
    add(out, std::move(label), value < limit, fmt("%.4g < %.4g", value, limit));
}

EnsembleSpec make_spec(int n, int p, std::vector<double> spikes, Field field, LawKind law, std::uint64_t seed)
{
    EnsembleSpec spec;
    spec.n = n;
    spec.p = p;
    spec.spikes = std::move(spikes);
    spec.field = field;
    spec.entry_law.kind = law;
    spec.seed = seed;
    return spec;
}

ExperimentPlan make_plan(const EnsembleSpec& spec, int trials, int k_top, const Options& opt)
{
    ExperimentPlan plan;
    plan.spec = spec;
    plan.trials = trials;
    plan.k_top = k_top;
    plan.workers = opt.workers;
    return plan;
}

/// Limit-law tables shared by the Monte Carlo criteria.
const DistributionCurve& tw_gue_table()
{
    static const DistributionCurve curve = tabulate(LawName::TracyWidomGue, -9.0, 6.0, 0.005);
    return curve;
}

const DistributionCurve& tw_goe_table()
{
    static const DistributionCurve curve = tabulate(LawName::TracyWidomGoe, -10.0, 6.0, 0.005);
    return curve;
}

const DistributionCurve& bbp_f1_table()
{
    static const DistributionCurve curve = tabulate(LawName::BbpF1, -8.0, 6.0, 0.02);
    return curve;
}

// 1
void combinatorial_exactness(const Options&, std::vector<Check>& out)
{
    bool catalan_ok = true;
    bool marginal_ok = true;
    for (int n = 1; n <= 12; ++n) {
        dyck::BigInt total = 0;
        for (int k = 1; k <= n; ++k) {
            total += dyck::narayana(n, k);
            dyck::BigInt by_returns = 0;
            for (int m = 1; m <= n; ++m)
                by_returns += dyck::count_with_returns(n, k, m);
            marginal_ok = marginal_ok && by_returns == dyck::narayana(n, k);
        }
        catalan_ok = catalan_ok && total == dyck::catalan(n);
    }
    add(out, "sum_k N(n,k) = C_n, n<=12", catalan_ok);
    add(out, "sum_m N(n,k,m) = N(n,k), n<=12", marginal_ok);

    bool enumeration_ok = true;
    for (int n = 1; n <= 8; ++n) {
        std::map<int, long> by_k;
        std::map<std::pair<int, int>, long> by_km;
        for (const dyck::DyckPath& path : dyck::enumerate_paths(n)) {
            const dyck::DyckStats st = dyck::path_stats(path);
            ++by_k[st.odd_marked];
            ++by_km[{st.odd_marked, st.returns_with_terminal(n)}];
        }
        for (int k = 1; k <= n; ++k) {
            enumeration_ok = enumeration_ok && dyck::narayana(n, k) == by_k[k];
            for (int m = 1; m <= n; ++m)
                enumeration_ok = enumeration_ok && dyck::count_with_returns(n, k, m) == by_km[{k, m}];
        }
    }
    add(out, "exhaustive enumeration, n<=8", enumeration_ok);
}

// 2
void generating_functions(const Options&, std::vector<Check>& out)
{
    constexpr std::size_t order = 200;
    const Rational pi1 = 3;
    bool residual_ok = true;
    for (const Rational& gamma : {Rational(1), Rational(2), Rational(4), Rational(3, 2)}) {
        const Series g_ext = genfun::series_G(gamma, order + 1);
        const Series g = g_ext.truncated(order);
        const Series gt = genfun::series_G_tilde(gamma, order);
        const Series f = genfun::series_F(pi1, gamma, order);
        const Series k = genfun::series_K(gamma, order);
        const Series h = genfun::series_H(pi1, gamma, order);
        Series one(order);
        one[0] = 1;
        const Series r_g = g - one - (gt * g).shift(1) * (1 / gamma);
        const Series r_gt = gt - one - (g * gt).shift(1);
        const Series r_f = f - one * pi1 - (g * f).shift(1) * pi1;
        const Series r_k = k - g_ext.shift(1).derivative().truncated(order).shift(1);
        const Series r_h = h - f * k;
        // U = zG satisfies U (1 - U) = z (1 - (1 - 1/gamma) U).
        const Series u = g.shift(1);
        Series z(order);
        z[1] = 1;
        const Series r_u = u * (one - u) - z * (one - u * Rational(1 - 1 / gamma));
        for (const Series* r : {&r_g, &r_gt, &r_f, &r_k, &r_h, &r_u})
            residual_ok = residual_ok && r->is_zero();
    }
    add(out, "G, G~, F, K, H, U residuals = 0 through order 200", residual_ok);

    bool u_ok = true;
    for (const Rational& gamma : {Rational(1), Rational(2), Rational(4)}) {
        const Series u = genfun::series_U_algebraic(gamma, 30);
        const Series g = genfun::series_G(gamma, 30);
        for (std::size_t n = 1; n <= 30; ++n)
            u_ok = u_ok && u[n] == g[n - 1];
        u_ok = u_ok && sgn(u[0]) == 0;
    }
    add(out, "algebraic reversion U = zG through order 30, gamma in {1,2,4}", u_ok);
}

// 3
void direct_sum(const Options&, std::vector<Check>& out)
{
    bool ok = true;
    int cases = 0;
    for (const Rational& gamma : {Rational(1), Rational(2), Rational(4), Rational(2, 3)}) {
        for (const Rational& pi1 : {Rational(3), Rational(3, 2), Rational(7, 5)}) {
            const Series h = genfun::series_H(pi1, gamma, 8);
            for (int n = 1; n <= 8; ++n) {
                ok = ok && genfun::direct_sum_a(n, pi1, gamma) == h[static_cast<std::size_t>(n)];
                ++cases;
            }
        }
    }
    add(out, "a_n from F K = quadruple sum, n<=8", ok, std::to_string(cases) + " cases");
}

// 4
void growth_rates(const Options&, std::vector<Check>& out)
{
    constexpr std::size_t n_max = 301;
    const auto ratio_at = [&](const Rational& pi1) {
        const genfun::SeriesCoeffs c = genfun::coeffs_a(pi1, 1, 1.0, n_max);
        return genfun::growth_rate(c, 1).ratios[300];
    };
    const double super = ratio_at(3);
    add(out, "pi1=3 ratio vs tau=4.5", std::abs(super / 4.5 - 1.0) < 0.02, fmt("%.6f (rel %.2e)", super, super / 4.5 - 1.0));
    const double crit = ratio_at(2);
    add(out, "pi1=2 ratio vs u+=4", std::abs(crit / 4.0 - 1.0) < 0.02, fmt("%.6f (rel %.2e)", crit, crit / 4.0 - 1.0));

    const genfun::SeriesCoeffs sub = genfun::coeffs_a(Rational(3, 2), 1, 1.0, n_max);
    const genfun::GrowthReport rep = genfun::growth_rate(sub, 1);
    const auto first = rep.sqrt_corrected.begin() + 200;
    const auto last = rep.sqrt_corrected.begin() + 301;
    const auto [lo, hi] = std::minmax_element(first, last);
    const double spread = (*hi - *lo) / *lo;
    add(out, "pi1=1.5 sqrt(n) a'_n / u+^n spread on [200,300]", spread < 0.05, fmt("%.4f < 0.05", spread));
}

// 5
void exact_moments(const Options&, std::vector<Check>& out)
{
    int cases = 0;
    int mismatches = 0;
    for (int n = 1; n <= 2; ++n)
        for (int p = n; p <= 3; ++p)
            for (bool spiked : {false, true})
                for (Field field : {Field::Real, Field::Complex})
                    for (LawKind law : {LawKind::ThreePointMatch, LawKind::Rademacher})
                        for (int s = 1; s <= 3; ++s) {
                            const EnsembleSpec spec =
                                make_spec(n, p, spiked ? std::vector<double>{2.0} : std::vector<double>{}, field, law, 0);
                            const moments::MomentReport rep = moments::exact_trace_moment({spec, s});
                            if (rep.value != moments::entry_enumeration_moment(spec, s))
                                ++mismatches;
                            ++cases;
                        }
    add(out, "path expansion = entry enumeration", mismatches == 0,
        std::to_string(cases - mismatches) + "/" + std::to_string(cases));

    bool trace_ok = true;
    for (double sigma : {1.0, 1.5})
        for (Field field : {Field::Real, Field::Complex})
            for (LawKind law : {LawKind::ThreePointMatch, LawKind::Rademacher}) {
                EnsembleSpec spec = make_spec(3, 4, {2.0}, field, law, 0);
                spec.entry_law.sigma = sigma;
                const Rational expected = Rational(sigma) * Rational(sigma) * (2 + 3 - 1);
                trace_ok = trace_ok && moments::exact_trace_moment({spec, 1}).value == expected;
                if (field == Field::Real)
                    trace_ok = trace_ok && moments::entry_enumeration_moment(spec, 1) == expected;
            }
    add(out, "E Tr V = sigma^2 (pi1 + n - 1), n=3 p=4", trace_ok);
}

// 6
void tracy_widom_engine(const Options&, std::vector<Check>& out)
{
    std::vector<double> grid;
    for (int i = 0; i <= 120; ++i)
        grid.push_back(-8.0 + 0.1 * i);
    const PainleveValues pv = painleve_values(grid);
    double route_gap = 0.0;
    double doubling_gap = 0.0;
    for (std::size_t i = 0; i < grid.size(); ++i) {
        const double m48 = tw_gue_cdf_nystrom(grid[i], 48);
        const double m96 = tw_gue_cdf_nystrom(grid[i], 96);
        route_gap = std::max(route_gap, std::abs(m48 - pv.f_gue[i]));
        doubling_gap = std::max(doubling_gap, std::abs(m96 - m48));
        const double f48 = bbp_f1_cdf_nystrom(grid[i], 48);
        const double f96 = bbp_f1_cdf_nystrom(grid[i], 96);
        doubling_gap = std::max(doubling_gap, std::abs(f96 - f48));
    }
    add_below(out, "Fredholm vs Painleve on [-8,4]", route_gap, 1e-5);
    add_below(out, "quad-order 48 -> 96 (F_GUE, F_1)", doubling_gap, 1e-6);

    const LawMoments m = law_moments([](double x) { return tw_gue_cdf(x); }, -10.0, 6.0, 40);
    add(out, "F_GUE mean", std::abs(m.mean - (-1.7711)) < 1e-3, fmt("%.6f vs -1.7711", m.mean));
    add(out, "F_GUE sd", std::abs(m.sd - 0.9018) < 1e-3, fmt("%.6f vs 0.9018", m.sd));
}

// 7
void white_tracy_widom(const Options& opt, std::vector<Check>& out)
{
    const ExperimentResult c =
        run_experiment(make_plan(make_spec(200, 400, {}, Field::Complex, LawKind::Gaussian, 7001), 2000, 1, opt));
    add_below(out, "complex KS vs F_GUE", ks_distance(c.xi_cdf(0), tw_gue_table()).distance, 0.08);
    const ExperimentResult r =
        run_experiment(make_plan(make_spec(200, 400, {}, Field::Real, LawKind::Gaussian, 7002), 2000, 1, opt));
    add_below(out, "real KS vs F_GOE", ks_distance(r.xi_cdf(0), tw_goe_table()).distance, 0.08);
}

// 8
void supercritical_gaussian(const Options& opt, std::vector<Check>& out)
{
    const CdfFunction normal = standard_normal_cdf;
    for (Field field : {Field::Complex, Field::Real}) {
        const std::uint64_t seed = field == Field::Complex ? 8001 : 8002;
        const ExperimentResult res =
            run_experiment(make_plan(make_spec(400, 400, {3.0}, field, LawKind::Gaussian, seed), 2000, 1, opt));
        add_below(out, std::string(to_string(field)) + " KS vs N(0,1)", ks_distance(res.xi_cdf(0), normal).distance,
                  0.06);
    }
}

// 9
void universality(const Options& opt, std::vector<Check>& out)
{
    const auto xi = [&](int n, int p, std::vector<double> spikes, LawKind law, std::uint64_t seed) {
        return run_experiment(make_plan(make_spec(n, p, std::move(spikes), Field::Complex, law, seed), 2000, 1, opt))
            .xi_cdf(0);
    };
    const EmpiricalCDF super_g = xi(200, 200, {3.0}, LawKind::Gaussian, 9001);
    const EmpiricalCDF super_t = xi(200, 200, {3.0}, LawKind::ThreePointMatch, 9002);
    add_below(out, "supercritical gaussian vs three_point", ks_two_sample(super_g, super_t).distance, 0.05);
    const EmpiricalCDF sub_g = xi(200, 400, {1.2}, LawKind::Gaussian, 9003);
    const EmpiricalCDF sub_t = xi(200, 400, {1.2}, LawKind::ThreePointMatch, 9004);
    const EmpiricalCDF sub_r = xi(200, 400, {1.2}, LawKind::Rademacher, 9005);
    add_below(out, "subcritical gaussian vs three_point", ks_two_sample(sub_g, sub_t).distance, 0.05);
    add_below(out, "subcritical gaussian vs rademacher", ks_two_sample(sub_g, sub_r).distance, 0.05);
}

// 10
void critical_law(const Options& opt, std::vector<Check>& out)
{
    const auto pi1 = exact_critical_spike(200, 800);
    if (!pi1)
        throw DomainError("n / p is not a ratio of squares");
    const ExperimentResult g =
        run_experiment(make_plan(make_spec(200, 800, {*pi1}, Field::Complex, LawKind::Gaussian, 10001), 2000, 1, opt));
    add(out, "regime", g.regime == Regime::Critical, std::string(to_string(g.regime)));
    add_below(out, "KS vs F_1", ks_distance(g.xi_cdf(0), bbp_f1_table()).distance, 0.10);
    const ExperimentResult t = run_experiment(
        make_plan(make_spec(200, 800, {*pi1}, Field::Complex, LawKind::ThreePointMatch, 10002), 2000, 1, opt));
    add_below(out, "gaussian vs three_point", ks_two_sample(g.xi_cdf(0), t.xi_cdf(0)).distance, 0.05);
}

// 11
void almost_sure_limits(const Options& opt, std::vector<Check>& out)
{
    struct Case {
        const char* name;
        double spike;
        double exponent;  ///< finite-N bias decays like n^{-exponent}
        std::uint64_t seed;
    };
    for (const Case& c : {Case{"supercritical pi1=3", 3.0, 1.0, 11001}, Case{"subcritical pi1=1.5", 1.5, 2.0 / 3.0, 11002}}) {
        std::vector<double> xs;
        std::vector<double> means;
        std::vector<double> errors;
        std::vector<double> sds;
        double target = 0.0;
        for (int n : {100, 200, 400}) {
            const EnsembleSpec spec = make_spec(n, n, {c.spike}, Field::Complex, LawKind::Gaussian, c.seed + 10 * n);
            target = as_limit(spec);
            const ExperimentResult res = run_experiment(make_plan(spec, 1000, 1, opt));
            const Summary s = summarize(res.lambda_column(0));
            xs.push_back(std::pow(static_cast<double>(n), -c.exponent));
            means.push_back(s.mean);
            errors.push_back(s.stderr_);
            sds.push_back(s.sd);
        }
        const LinearFit fit = linear_fit(xs, means, errors);
        const double z = std::abs(fit.intercept - target) / fit.intercept_stderr;
        add(out, std::string(c.name) + " extrapolated mean", z < 3.0,
            fmt("%.5f vs %.5f", fit.intercept, target) + fmt(" (z=%.2f < 3)", z));
        const bool shrinking = sds[0] > sds[1] && sds[1] > sds[2];
        add(out, std::string(c.name) + " dispersion shrinks", shrinking,
            fmt("sd %.4f > %.4f", sds[0], sds[1]) + fmt(" > %.4f", sds[2]));
    }
}

// 12
void moment_asymptotics(const Options& opt, std::vector<Check>& out)
{
    for (Field field : {Field::Complex, Field::Real}) {
        const EnsembleSpec spec =
            make_spec(400, 400, {3.0}, field, LawKind::Gaussian, field == Field::Complex ? 12001 : 12002);
        const moments::MomentEstimate est = moments::bounded_moment_check(spec, 1.0, 5000, opt.workers);
        const double predicted = moments::supercritical_moment_prediction(spec, est.power);
        const double rel = est.mean / predicted - 1.0;
        add(out, std::string(to_string(field)) + " E Tr(V/tau)^s vs prediction", std::abs(rel) < 0.10,
            fmt("%.4f vs %.4f", est.mean, predicted) + fmt(" (rel %+.3f, s=%g)", rel, est.power));
    }
}

// 13
void gluing_preimages(const Options&, std::vector<Check>& out)
{
    constexpr int s_n = 3;
    std::map<std::pair<dyck::EdgePath, int>, std::vector<dyck::EdgePath>> groups;
    for (const dyck::EdgePath& path : dyck::enumerate_even_paths(2, 2, s_n)) {
        if (std::count(path.bottom.begin(), path.bottom.end(), 1) == 0)
            continue;
        const dyck::GlueResult g = dyck::glue(path);
        groups[{g.glued, g.s}].push_back(path);
    }
    int violations = 0;
    int unrecovered = 0;
    int spurious = 0;
    for (const auto& [key, preimages] : groups) {
        const auto& [glued, s] = key;
        const dyck::GlueResult g = dyck::glue(preimages.front());
        const int s1 = dyck::first_return_half(glued.trajectory());
        if (dyck::BigInt(static_cast<long>(preimages.size())) > dyck::preimage_bound(s, g.l, s1, s_n))
            ++violations;
        const std::vector<dyck::EdgePath> found = dyck::reconstruct_preimages(glued, s, s_n);
        const std::set<dyck::EdgePath> found_set(found.begin(), found.end());
        for (const dyck::EdgePath& p : preimages)
            if (!found_set.count(p))
                ++unrecovered;
        if (found_set.size() != preimages.size())
            ++spurious;
    }
    add(out, "counts <= preimage_bound", violations == 0,
        std::to_string(violations) + " violations over " + std::to_string(groups.size()) + " glued paths");
    add(out, "reconstruction recovers every preimage", unrecovered == 0 && spurious == 0,
        std::to_string(unrecovered) + " missed, " + std::to_string(spurious) + " set mismatches");
}

// 14
void variance_boundedness(const Options& opt, std::vector<Check>& out)
{
    struct Case {
        const char* name;
        std::vector<double> spikes;
        std::uint64_t seed;
    };
    for (const Case& c : {Case{"white", {}, 14001}, Case{"supercritical pi1=3", {3.0}, 14002}}) {
        ExperimentPlan plan = make_plan(make_spec(100, 100, c.spikes, Field::Complex, LawKind::Gaussian, c.seed), 2000, 1, opt);
        const VarianceReport rep = variance_check(plan, 1.0);
        add(out, std::string(c.name) + " no growth trend", rep.bounded,
            fmt("log-log slope %.3f +- %.3f", rep.trend_slope, rep.trend_stderr));
        add(out, std::string(c.name) + " gaussian vs three_point", rep.laws_agree,
            fmt("max z %.2f < %.0f", rep.max_law_gap, 4.0));
    }
}

// 15
void multi_spike(const Options& opt, std::vector<Check>& out)
{
    const ExperimentResult tied =
        run_experiment(make_plan(make_spec(400, 400, {3.0, 3.0}, Field::Complex, LawKind::Gaussian, 15001), 2000, 2, opt));
    const auto reference = gk_reference_sample(2, 20000, Field::Complex, 15002);
    for (int i = 0; i < 2; ++i) {
        std::vector<double> ref;
        for (const auto& draw : reference)
            ref.push_back(draw[static_cast<std::size_t>(i)]);
        add_below(out, "pi=(3,3) xi_" + std::to_string(i + 1) + " vs G_2 reference",
                  ks_two_sample(tied.xi_cdf(i), EmpiricalCDF(ref)).distance, 0.06);
    }

    const ExperimentResult split =
        run_experiment(make_plan(make_spec(400, 400, {3.0, 1.2}, Field::Complex, LawKind::Gaussian, 15003), 2000, 2, opt));
    const double n23 = std::cbrt(400.0 * 400.0);
    std::vector<double> xi2;
    for (double lambda : split.lambda_column(1))
        xi2.push_back(n23 * (lambda - split.phase.rho_n) / split.phase.sigma_n);
    add_below(out, "pi=(3,1.2) rescaled lambda_2 KS vs F_GUE", ks_distance(EmpiricalCDF(xi2), tw_gue_table()).distance,
              0.10);
}

}  // namespace

const std::vector<Criterion>& criteria()
{
    static const std::vector<Criterion> list = {
        {1, "combinatorics", "Narayana/Catalan/return counts are exact", 10.0, combinatorial_exactness},
        {2, "generating-functions", "Functional equations of G, G~, F, K, H, U", 30.0, generating_functions},
        {3, "direct-sum", "a_n from F K equals the direct Dyck sum", 60.0, direct_sum},
        {4, "growth-rates", "Growth of a'_n in the three regimes", 120.0, growth_rates},
        {5, "exact-moments", "Path expansion and entry enumeration agree", 300.0, exact_moments},
        {6, "tracy-widom-engine", "Fredholm and Painleve routes agree", 120.0, tracy_widom_engine},
        {7, "white-edge", "White largest eigenvalue follows F_GUE / F_GOE", 0.0, white_tracy_widom},
        {8, "supercritical-gaussian", "Supercritical outlier is Gaussian", 0.0, supercritical_gaussian},
        {9, "universality", "Entry-law universality of xi_1", 0.0, universality},
        {10, "critical-law", "Critical spike follows F_1", 0.0, critical_law},
        {11, "as-limits", "Almost-sure limits of lambda_1", 0.0, almost_sure_limits},
        {12, "moment-asymptotics", "E Tr(V/tau)^s asymptotics", 0.0, moment_asymptotics},
        {13, "gluing-preimages", "Preimage bound and reconstruction of glued paths", 300.0, gluing_preimages},
        {14, "variance-boundedness", "Bounded, law-independent variance of Tr V~^s", 0.0, variance_boundedness},
        {15, "multi-spike", "Tied and split spikes", 0.0, multi_spike},
    };
    return list;
}

const Criterion* find_criterion(std::string_view key)
{
    for (const Criterion& c : criteria()) {
        if (c.slug == key || std::to_string(c.id) == key)
            return &c;
    }
    return nullptr;
}

CriterionResult run_criterion(const Criterion& criterion, const Options& options)
{
    CriterionResult result;
    result.id = criterion.id;
    result.slug = std::string(criterion.slug);
    const auto start = std::chrono::steady_clock::now();
    criterion.run(options, result.checks);
    result.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (criterion.time_limit > 0.0)
        add(result.checks, "runtime", result.seconds < criterion.time_limit,
            fmt("%.1f s < %.0f s", result.seconds, criterion.time_limit));
    return result;
}

}  // namespace spikelab::acceptance
