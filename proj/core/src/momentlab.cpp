#include "spikelab/momentlab.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <limits>
#include <numeric>
#include <string>

#include "spikelab/dyck.hpp"
#include "spikelab/errors.hpp"
#include "spikelab/parallel.hpp"
#include "spikelab/spectra.hpp"

namespace spikelab::moments {

std::string_view to_string(Method method)
{
    switch (method) {
    case Method::ExactEnumeration: return "exact_enumeration";
    case Method::SymbolicGaussian: return "symbolic_gaussian";
    case Method::MonteCarlo: return "monte_carlo";
    }
    return "?";
}

Method parse_method(std::string_view text)
{
    if (text == "exact_enumeration" || text == "exact")
        return Method::ExactEnumeration;
    if (text == "symbolic_gaussian")
        return Method::SymbolicGaussian;
    if (text == "monte_carlo" || text == "mc")
        return Method::MonteCarlo;
    throw FormatError("unknown moment method: " + std::string(text));
}

namespace {

Rational power_of(const Rational& base, int k)
{
    Rational out = 1;
    for (int i = 0; i < k; ++i)
        out *= base;
    return out;
}

/// Variance of each independent real part, as an exact rational.
Rational part_variance_exact(const EntryLaw& law, Field field)
{
    const Rational s2 = Rational(law.sigma) * Rational(law.sigma);
    return field == Field::Real ? s2 : Rational(s2 / 2);
}

long double_factorial_odd(int k)
{
    long out = 1;
    for (int i = k - 1; i > 1; i -= 2)
        out *= i;
    return out;
}

}  // namespace

Rational part_moment(const EntryLaw& law, Field field, int k)
{
    if (k < 0)
        throw DomainError("part_moment: negative order");
    if (k == 0)
        return 1;
    if (k % 2 == 1)
        return 0;
    const Rational v = part_variance_exact(law, field);
    switch (law.kind) {
    case LawKind::Gaussian: return power_of(v, k / 2) * Rational(double_factorial_odd(k));
    case LawKind::ThreePointMatch: return Rational(power_of(3 * v, k / 2) / 3);
    case LawKind::Rademacher: return power_of(v, k / 2);
    }
    return 0;
}

Rational entry_moment(const EntryLaw& law, Field field, int a, int b)
{
    if (field == Field::Real)
        return part_moment(law, field, a + b);
    // (R + iI)^a (R - iI)^b expanded over the independent parts R and I.
    // Only terms with both part orders even survive, so i^{...} is real.
    Rational total = 0;
    for (int c1 = 0; c1 <= a; ++c1) {
        for (int c2 = 0; c2 <= b; ++c2) {
            const int re = c1 + c2;
            const int im = a + b - re;
            if (re % 2 != 0 || im % 2 != 0)
                continue;
            const int sign_b = (b - c2) % 2 == 0 ? 1 : -1;
            const int sign_i = (im / 2) % 2 == 0 ? 1 : -1;
            const Rational coeff(dyck::binomial(a, c1) * dyck::binomial(b, c2));
            total += coeff * sign_b * sign_i * part_moment(law, field, re) * part_moment(law, field, im);
        }
    }
    return total;
}

namespace {

void check_exact_request(const EnsembleSpec& spec, int power, Method method)
{
    spec.validate();
    if (power < 1)
        throw DomainError("moment power must be at least 1");
    if (method == Method::ExactEnumeration && !spec.entry_law.finitely_supported())
        throw SupportError("exact enumeration needs a finitely supported entry law");
    if (method == Method::SymbolicGaussian && spec.entry_law.kind != LawKind::Gaussian)
        throw SupportError("symbolic_gaussian needs the gaussian entry law");
    const double tuples = std::pow(static_cast<double>(spec.n) * spec.p, power);
    if (tuples > kMaxPathTuples)
        throw DimensionError("path expansion too large: " + std::to_string(tuples) + " index tuples");
}

struct PathSum {
    Rational total;
    std::map<std::pair<int, int>, Rational> terms;
};

/// Sum over all tuples with i_0 fixed.
PathSum path_sum_for_head(const EnsembleSpec& spec, int power, int head,
                          const std::vector<std::vector<Rational>>& moment_table, const std::vector<Rational>& pi)
{
    const auto s = static_cast<std::size_t>(power);
    std::vector<int> i(s, 0);
    std::vector<int> j(s, 0);
    i[0] = head;
    PathSum out;
    // Entry (row, col) -> (non-conjugated count, conjugated count).
    std::map<std::pair<int, int>, std::array<int, 2>> counts;
    const auto advance = [](std::vector<int>& digits, std::size_t from, int base) {
        for (std::size_t d = from; d < digits.size(); ++d) {
            if (++digits[d] < base)
                return true;
            digits[d] = 0;
        }
        return false;
    };
    do {
        do {
            counts.clear();
            for (std::size_t q = 0; q < s; ++q) {
                ++counts[{i[q], j[q]}][0];
                ++counts[{i[(q + 1) % s], j[q]}][1];
            }
            Rational term = 1;
            for (const auto& [entry, ab] : counts) {
                const Rational& m = moment_table[static_cast<std::size_t>(ab[0])][static_cast<std::size_t>(ab[1])];
                if (sgn(m) == 0) {
                    term = 0;
                    break;
                }
                term *= m;
            }
            if (sgn(term) == 0)
                continue;
            for (std::size_t q = 0; q < s; ++q)
                term *= pi[static_cast<std::size_t>(i[q])];
            dyck::EdgePath path;
            for (std::size_t q = 0; q < s; ++q) {
                path.bottom.push_back(i[q] + 1);
                path.top.push_back(j[q] + 1);
            }
            const int one_edges = 2 * static_cast<int>(std::count(i.begin(), i.end(), 0));
            const int odd_marked = path.is_even() ? dyck::path_stats(path.trajectory()).odd_marked : -1;
            out.terms[{one_edges, odd_marked}] += term;
            out.total += term;
        } while (advance(j, 0, spec.p));
    } while (advance(i, 1, spec.n));
    return out;
}

MomentReport monte_carlo_moment(const MomentRequest& req)
{
    const MomentEstimate est = trace_power_statistics(req.spec, req.power, 1.0, req.trials, req.workers);
    MomentReport report;
    report.method = Method::MonteCarlo;
    report.power = req.power;
    report.mc_mean = est.mean;
    report.mc_stderr = est.stderr_;
    report.mc_trials = est.trials;
    return report;
}

}  // namespace

MomentReport exact_trace_moment(const MomentRequest& req)
{
    if (req.method == Method::MonteCarlo)
        return monte_carlo_moment(req);
    const EnsembleSpec& spec = req.spec;
    check_exact_request(spec, req.power, req.method);

    const auto s = static_cast<std::size_t>(req.power);
    std::vector<std::vector<Rational>> moment_table(s + 1, std::vector<Rational>(s + 1));
    for (std::size_t a = 0; a <= s; ++a)
        for (std::size_t b = 0; b <= s; ++b)
            moment_table[a][b] = entry_moment(spec.entry_law, spec.field, static_cast<int>(a), static_cast<int>(b));
    std::vector<Rational> pi;
    for (int r = 0; r < spec.n; ++r)
        pi.emplace_back(spec.population_variance(r));

    std::vector<PathSum> partial(static_cast<std::size_t>(spec.n));
    parallel_for(partial.size(), 0, [&](std::size_t head) {
        partial[head] = path_sum_for_head(spec, req.power, static_cast<int>(head), moment_table, pi);
    });

    const Rational scale = 1 / power_of(Rational(spec.p), req.power);
    MomentReport report;
    report.method = req.method;
    report.power = req.power;
    report.value = 0;
    for (const PathSum& part : partial) {
        report.value += part.total;
        for (const auto& [key, term] : part.terms)
            report.path_terms[key] += term;
    }
    report.value *= scale;
    for (auto& [key, term] : report.path_terms)
        term *= scale;
    return report;
}

namespace {

/// Gaussian integer entry value with its probability weight.
struct Atom {
    long re = 0;
    long im = 0;
    long weight = 1;
};

struct ComplexQ {
    Rational re;
    Rational im;
};

ComplexQ mul(const ComplexQ& a, const ComplexQ& b)
{
    return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
}

}  // namespace

Rational entry_enumeration_moment(const EnsembleSpec& spec, int power)
{
    check_exact_request(spec, power, Method::ExactEnumeration);
    // Part values a * eps with eps integer; a^2 is folded into the final scale.
    std::vector<std::pair<long, long>> part;  // (eps, weight)
    Rational a2 = part_variance_exact(spec.entry_law, spec.field);
    if (spec.entry_law.kind == LawKind::ThreePointMatch) {
        part = {{-1, 1}, {0, 4}, {1, 1}};
        a2 *= 3;
    } else {
        part = {{-1, 1}, {1, 1}};
    }
    std::vector<Atom> atoms;
    for (const auto& [re, wr] : part) {
        if (spec.field == Field::Real) {
            atoms.push_back({re, 0, wr});
            continue;
        }
        for (const auto& [im, wi] : part)
            atoms.push_back({re, im, wr * wi});
    }
    const std::size_t entries = static_cast<std::size_t>(spec.n) * static_cast<std::size_t>(spec.p);
    if (std::pow(static_cast<double>(atoms.size()), static_cast<double>(entries)) > kMaxAssignments)
        throw DimensionError("entry enumeration too large");

    // Aggregate weights by the integer Gram matrix E E^* (real and imaginary parts).
    std::map<std::vector<long>, long> gram_weights;
    std::vector<std::size_t> choice(entries, 0);
    const auto n = static_cast<std::size_t>(spec.n);
    const auto p = static_cast<std::size_t>(spec.p);
    for (;;) {
        long weight = 1;
        for (std::size_t e = 0; e < entries; ++e)
            weight *= atoms[choice[e]].weight;
        std::vector<long> gram(2 * n * n, 0);
        for (std::size_t r = 0; r < n; ++r) {
            for (std::size_t c = 0; c < n; ++c) {
                long re = 0;
                long im = 0;
                for (std::size_t k = 0; k < p; ++k) {
                    const Atom& x = atoms[choice[r * p + k]];
                    const Atom& y = atoms[choice[c * p + k]];
                    // x * conj(y)
                    re += x.re * y.re + x.im * y.im;
                    im += x.im * y.re - x.re * y.im;
                }
                gram[2 * (r * n + c)] = re;
                gram[2 * (r * n + c) + 1] = im;
            }
        }
        gram_weights[gram] += weight;
        std::size_t e = 0;
        while (e < entries && ++choice[e] == atoms.size())
            choice[e++] = 0;
        if (e == entries)
            break;
    }

    std::vector<Rational> pi;
    for (std::size_t r = 0; r < n; ++r)
        pi.emplace_back(spec.population_variance(static_cast<int>(r)));
    Rational total_weight = 0;
    Rational total = 0;
    for (const auto& [gram, weight] : gram_weights) {
        // Tr (D B)^s with D = diag(pi).
        std::vector<ComplexQ> db(n * n);
        for (std::size_t r = 0; r < n; ++r)
            for (std::size_t c = 0; c < n; ++c)
                db[r * n + c] = {pi[r] * gram[2 * (r * n + c)], pi[r] * gram[2 * (r * n + c) + 1]};
        std::vector<ComplexQ> acc = db;
        for (int step = 1; step < power; ++step) {
            std::vector<ComplexQ> next(n * n, ComplexQ{0, 0});
            for (std::size_t r = 0; r < n; ++r)
                for (std::size_t c = 0; c < n; ++c)
                    for (std::size_t k = 0; k < n; ++k) {
                        const ComplexQ t = mul(acc[r * n + k], db[k * n + c]);
                        next[r * n + c].re += t.re;
                        next[r * n + c].im += t.im;
                    }
            acc = std::move(next);
        }
        Rational trace = 0;
        for (std::size_t r = 0; r < n; ++r)
            trace += acc[r * n + r].re;
        total += trace * weight;
        total_weight += weight;
    }
    return total / total_weight * power_of(a2, power) / power_of(Rational(spec.p), power);
}

int moment_power(Regime regime, int n, double c)
{
    if (n < 1 || !(c > 0.0))
        throw DomainError("moment_power: need n >= 1 and c > 0");
    const double scale = regime == Regime::Supercritical ? std::sqrt(static_cast<double>(n))
                                                         : std::cbrt(static_cast<double>(n) * n);
    return std::max(1, static_cast<int>(std::lround(c * scale)));
}

double moment_scale(const EnsembleSpec& spec)
{
    const RegimeReport regimes = classify(spec);
    const PhaseQuantities q = phase_quantities(spec);
    if (regimes.leading == Regime::Supercritical && q.tau)
        return *q.tau;
    return q.u_plus;
}

MomentEstimate trace_power_statistics(const EnsembleSpec& spec, int power, double scale, int trials, int workers)
{
    spec.validate();
    if (trials < 2)
        throw DomainError("trace moment statistics need at least two trials");
    if (power < 1 || !(scale > 0.0))
        throw DomainError("trace moment statistics need power >= 1 and scale > 0");
    std::vector<double> values(static_cast<std::size_t>(trials));
    parallel_for(values.size(), workers, [&](std::size_t t) {
        const EigenSample sample = eigenvalues(build_matrix(spec, t));
        double sum = 0.0;
        for (double lambda : sample.lambdas)
            sum += std::pow(lambda / scale, power);
        values[t] = sum;
    });
    const double n = static_cast<double>(trials);
    const double mean = std::accumulate(values.begin(), values.end(), 0.0) / n;
    double m2 = 0.0;
    double m4 = 0.0;
    for (double v : values) {
        const double d = (v - mean) * (v - mean);
        m2 += d;
        m4 += d * d;
    }
    MomentEstimate est;
    est.mean = mean;
    est.variance = m2 / (n - 1.0);
    est.stderr_ = std::sqrt(est.variance / n);
    // Large-sample standard error of the sample variance.
    const double mu4 = m4 / n;
    const double mu2 = m2 / n;
    est.variance_stderr = std::sqrt(std::max(0.0, (mu4 - mu2 * mu2) / n));
    est.power = power;
    est.scale = scale;
    est.trials = trials;
    return est;
}

namespace {

void check_same_plan(const EnsembleSpec& a, const EnsembleSpec& b)
{
    EnsembleSpec a_no_law = a;
    EnsembleSpec b_no_law = b;
    a_no_law.entry_law = EntryLaw{};
    b_no_law.entry_law = EntryLaw{};
    a_no_law.seed = b_no_law.seed = 0;
    if (!(a_no_law == b_no_law))
        throw DomainError("universality_gap: specs must differ only in the entry law and seed");
    if (a.entry_law.sigma != b.entry_law.sigma)
        throw DomainError("universality_gap: entry laws must share sigma");
}

}  // namespace

double universality_gap(const EnsembleSpec& spec_a, const EnsembleSpec& spec_b, int power, int trials, int workers)
{
    check_same_plan(spec_a, spec_b);
    const PhaseQuantities q = phase_quantities(spec_a);
    if (spec_a.leading_spike() >= q.w_c &&
        !(spec_a.entry_law.matches_gaussian_fourth_moment() && spec_b.entry_law.matches_gaussian_fourth_moment()))
        throw RegimeError("universality at or above w_c needs entry laws with the gaussian fourth moment");
    const double scale = moment_scale(spec_a);
    const MomentEstimate a = trace_power_statistics(spec_a, power, scale, trials, workers);
    const MomentEstimate b = trace_power_statistics(spec_b, power, scale, trials, workers);
    const double pooled = std::sqrt(a.stderr_ * a.stderr_ + b.stderr_ * b.stderr_);
    if (pooled == 0.0)
        return a.mean == b.mean ? 0.0 : std::numeric_limits<double>::infinity();
    return std::abs(a.mean - b.mean) / pooled;
}

MomentEstimate bounded_moment_check(const EnsembleSpec& spec, double c, int trials, int workers)
{
    const Regime regime = classify(spec).leading;
    const int power = moment_power(regime, spec.n, c);
    return trace_power_statistics(spec, power, moment_scale(spec), trials, workers);
}

double supercritical_moment_prediction(const EnsembleSpec& spec, int power)
{
    const PhaseQuantities q = phase_quantities(spec);
    if (!q.tau || !q.sigma_pi || classify(spec).leading != Regime::Supercritical)
        throw RegimeError("moment prediction needs a supercritical spike");
    double ratio = *q.sigma_pi / *q.tau;
    if (spec.field == Field::Real)
        ratio *= std::sqrt(2.0);
    const double s = power;
    return std::exp(s * s / (2.0 * spec.n) * ratio * ratio);
}

}  // namespace spikelab::moments
