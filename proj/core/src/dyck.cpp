#include "spikelab/dyck.hpp"

#include <algorithm>

#include "spikelab/errors.hpp"

namespace spikelab::dyck {

DyckPath DyckPath::parse(std::string_view word)
{
    DyckPath path;
    path.steps.reserve(word.size());
    for (char c : word) {
        if (c == 'U' || c == 'u')
            path.steps.push_back(1);
        else if (c == 'D' || c == 'd')
            path.steps.push_back(-1);
        else
            throw DomainError("Dyck words use only U and D");
    }
    if (!path.valid())
        throw DomainError("'" + std::string(word) + "' is not a Dyck path");
    return path;
}

std::string DyckPath::to_string() const
{
    std::string out;
    out.reserve(steps.size());
    for (auto step : steps)
        out.push_back(step > 0 ? 'U' : 'D');
    return out;
}

bool DyckPath::valid() const noexcept
{
    if (steps.size() % 2 != 0)
        return false;
    int h = 0;
    for (auto step : steps) {
        if (step != 1 && step != -1)
            return false;
        h += step;
        if (h < 0)
            return false;
    }
    return h == 0;
}

std::vector<int> DyckPath::heights() const
{
    std::vector<int> h(steps.size() + 1, 0);
    for (std::size_t t = 0; t < steps.size(); ++t)
        h[t + 1] = h[t] + steps[t];
    return h;
}

DyckStats path_stats(const DyckPath& path)
{
    if (!path.valid())
        throw DomainError("path_stats: not a Dyck path");
    DyckStats stats;
    int h = 0;
    const auto len = static_cast<int>(path.steps.size());
    for (int t = 0; t < len; ++t) {
        h += path.steps[static_cast<std::size_t>(t)];
        const int time = t + 1;
        if (path.steps[static_cast<std::size_t>(t)] > 0) {
            if (time % 2 == 1)
                ++stats.odd_marked;
            else
                ++stats.even_marked;
        }
        if (h == 0 && time < len)
            ++stats.interior_returns;
        stats.max_level = std::max(stats.max_level, h);
    }
    return stats;
}

std::vector<DyckPath> enumerate_paths(int n)
{
    if (n < 0)
        throw DomainError("enumerate_paths: n must be non-negative");
    std::vector<DyckPath> out;
    DyckPath current;
    current.steps.reserve(static_cast<std::size_t>(2 * n));
    const auto rec = [&](auto&& self, int ups, int downs) -> void {
        if (ups == n && downs == n) {
            out.push_back(current);
            return;
        }
        if (ups < n) {
            current.steps.push_back(1);
            self(self, ups + 1, downs);
            current.steps.pop_back();
        }
        if (downs < ups) {
            current.steps.push_back(-1);
            self(self, ups, downs + 1);
            current.steps.pop_back();
        }
    };
    rec(rec, 0, 0);
    return out;
}

BigInt binomial(long n, long k)
{
    if (n < 0 || k < 0 || k > n)
        return 0;
    BigInt out;
    mpz_bin_uiui(out.get_mpz_t(), static_cast<unsigned long>(n), static_cast<unsigned long>(k));
    return out;
}

BigInt catalan(int n)
{
    if (n < 0)
        throw DomainError("catalan: n must be non-negative");
    return binomial(2L * n, n) / (n + 1);
}

BigInt narayana(int n, int k)
{
    if (n < 1 || k < 1 || k > n)
        throw DomainError("narayana: need 1 <= k <= n");
    return binomial(n, k) * binomial(n, k - 1) / n;
}

BigInt narayana_or_zero(int n, int k)
{
    if (n == 0)
        return k == 0 ? 1 : 0;
    if (n < 0 || k < 1 || k > n)
        return 0;
    return narayana(n, k);
}

namespace {

/// counts[n][k][m] for all n <= n_max, restricted to k <= k_cap and m <= m_cap,
/// by a forward sweep over (time, height, odd marked so far, returns so far).
std::vector<std::vector<std::vector<BigInt>>> returns_dp(int n_max, int k_cap, int m_cap)
{
    const int steps = 2 * n_max;
    const auto kc = static_cast<std::size_t>(k_cap + 1);
    const auto mc = static_cast<std::size_t>(m_cap + 1);
    std::vector<std::vector<std::vector<BigInt>>> result(
        static_cast<std::size_t>(n_max + 1),
        std::vector<std::vector<BigInt>>(kc, std::vector<BigInt>(mc, 0)));
    result[0][0][0] = 1;

    using Layer = std::vector<std::vector<std::vector<BigInt>>>;  // [h][k][m]
    const auto make_layer = [&]() {
        return Layer(static_cast<std::size_t>(n_max + 1), std::vector<std::vector<BigInt>>(kc, std::vector<BigInt>(mc, 0)));
    };
    Layer cur = make_layer();
    cur[0][0][0] = 1;
    for (int t = 0; t < steps; ++t) {
        Layer next = make_layer();
        const int time = t + 1;
        const int h_max = std::min(t, steps - t);
        for (int h = 0; h <= h_max && h <= n_max; ++h) {
            for (std::size_t k = 0; k < kc; ++k) {
                for (std::size_t m = 0; m < mc; ++m) {
                    const BigInt& w = cur[static_cast<std::size_t>(h)][k][m];
                    if (w == 0)
                        continue;
                    if (h + 1 <= steps - time && h + 1 <= n_max) {
                        const std::size_t k2 = k + (time % 2 == 1 ? 1 : 0);
                        if (k2 < kc)
                            next[static_cast<std::size_t>(h + 1)][k2][m] += w;
                    }
                    if (h > 0) {
                        const std::size_t m2 = m + (h == 1 ? 1 : 0);
                        if (m2 < mc)
                            next[static_cast<std::size_t>(h - 1)][k][m2] += w;
                    }
                }
            }
        }
        cur = std::move(next);
        if (time % 2 == 0)
            for (std::size_t k = 0; k < kc; ++k)
                for (std::size_t m = 0; m < mc; ++m)
                    result[static_cast<std::size_t>(time / 2)][k][m] = cur[0][k][m];
    }
    return result;
}

}  // namespace

BigInt count_with_returns(int n, int k, int m)
{
    if (n < 1 || k < 1 || k > n || m < 1 || m > n)
        throw DomainError("count_with_returns: need 1 <= k, m <= n");
    return returns_dp(n, k, m)[static_cast<std::size_t>(n)][static_cast<std::size_t>(k)][static_cast<std::size_t>(m)];
}

BigInt count_with_returns_or_zero(int n, int k, int m)
{
    if (n == 0)
        return (k == 0 && m == 0) ? 1 : 0;
    if (n < 0 || k < 1 || k > n || m < 1 || m > n)
        return 0;
    return count_with_returns(n, k, m);
}

PathCountTable::PathCountTable(int n_max) : n_max_(n_max)
{
    if (n_max < 0)
        throw DomainError("PathCountTable: n_max must be non-negative");
    returns_ = returns_dp(n_max, n_max, n_max);
    narayana_.assign(static_cast<std::size_t>(n_max + 1), std::vector<BigInt>(static_cast<std::size_t>(n_max + 1), 0));
    for (int n = 0; n <= n_max; ++n)
        for (int k = 0; k <= n_max; ++k)
            narayana_[static_cast<std::size_t>(n)][static_cast<std::size_t>(k)] = narayana_or_zero(n, k);
}

const BigInt& PathCountTable::narayana(int n, int k) const
{
    if (n < 0 || n > n_max_ || k < 0 || k > n_max_)
        return zero_;
    return narayana_[static_cast<std::size_t>(n)][static_cast<std::size_t>(k)];
}

const BigInt& PathCountTable::with_returns(int n, int k, int m) const
{
    if (n < 0 || n > n_max_ || k < 0 || k > n_max_ || m < 0 || m > n_max_)
        return zero_;
    return returns_[static_cast<std::size_t>(n)][static_cast<std::size_t>(k)][static_cast<std::size_t>(m)];
}

std::vector<std::tuple<int, int, int, BigInt>> PathCountTable::rows() const
{
    std::vector<std::tuple<int, int, int, BigInt>> out;
    for (int n = 1; n <= n_max_; ++n)
        for (int k = 1; k <= n; ++k)
            for (int m = 1; m <= n; ++m) {
                const BigInt& c = with_returns(n, k, m);
                if (c != 0)
                    out.emplace_back(n, k, m, c);
            }
    return out;
}

int first_return_half(const DyckPath& path)
{
    if (!path.valid() || path.steps.empty())
        throw DomainError("first_return_half: need a non-empty Dyck path");
    int h = 0;
    for (std::size_t t = 0; t < path.steps.size(); ++t) {
        h += path.steps[t];
        if (h == 0)
            return static_cast<int>((t + 1) / 2);
    }
    return path.semilength();
}

BigInt preimage_bound(int s, int l, int s1, int s_n)
{
    if (l < 1 || l > s || s > s_n || s1 < 1)
        throw DomainError("preimage_bound: need 1 <= l <= s <= s_N and s_1 >= 1");
    BigInt power;
    mpz_ui_pow_ui(power.get_mpz_t(), static_cast<unsigned long>(2 * s_n), static_cast<unsigned long>(s - l));
    return BigInt(s1) * binomial(s, l) * power;
}

}  // namespace spikelab::dyck
