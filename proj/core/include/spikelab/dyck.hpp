#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <string_view>
#include <tuple>
#include <vector>

#include <gmpxx.h>

namespace spikelab::dyck {

using BigInt = mpz_class;

/// Lattice path with steps +1 (up) and -1 (down).
struct DyckPath {
    std::vector<std::int8_t> steps;

    /// Parses a word over {U, D}.
    static DyckPath parse(std::string_view word);
    std::string to_string() const;
    int semilength() const noexcept { return static_cast<int>(steps.size() / 2); }
    bool valid() const noexcept;
    /// Heights x(0), ..., x(2n).
    std::vector<int> heights() const;

    friend bool operator==(const DyckPath&, const DyckPath&) = default;
};

struct DyckStats {
    int odd_marked = 0;        ///< up steps ending at an odd time
    int even_marked = 0;       ///< up steps ending at an even time
    int interior_returns = 0;  ///< t in (0, 2n) with x(t) = 0
    int max_level = 0;

    /// Returns to 0 including the terminal one (0 for the empty path).
    int returns_with_terminal(int semilength) const noexcept
    {
        return semilength > 0 ? interior_returns + 1 : 0;
    }
};

DyckStats path_stats(const DyckPath& path);

/// All Dyck paths of semilength n in lexicographic order (U before D).
std::vector<DyckPath> enumerate_paths(int n);

BigInt binomial(long n, long k);
BigInt catalan(int n);

/// Number of Dyck paths of semilength n with k odd marked instants, 1 <= k <= n.
BigInt narayana(int n, int k);

/// Paths of semilength n with k odd marked instants and m returns to 0
/// (the terminal return included), 1 <= k, m <= n.
BigInt count_with_returns(int n, int k, int m);

/// Same counts with the conventions N(0, 0) = 1 and N(0, 0, 0) = 1 for the
/// empty path; zero outside the support instead of throwing.
BigInt narayana_or_zero(int n, int k);
BigInt count_with_returns_or_zero(int n, int k, int m);

/// Dense tables for 0 <= n <= n_max.
class PathCountTable {
public:
    explicit PathCountTable(int n_max);

    int n_max() const noexcept { return n_max_; }
    const BigInt& narayana(int n, int k) const;
    const BigInt& with_returns(int n, int k, int m) const;

    /// Rows (n, k, m, count) with nonzero counts, n >= 1.
    std::vector<std::tuple<int, int, int, BigInt>> rows() const;

private:
    int n_max_;
    std::vector<std::vector<BigInt>> narayana_;
    std::vector<std::vector<std::vector<BigInt>>> returns_;
    BigInt zero_;
};

/// Edge path: bottom i_0, ..., i_{s-1} (population indices) and top
/// j_1, ..., j_s (sample indices), 1-based labels. Its oriented edges are
/// e_{2q} = (j_{q+1}, i_q) and e_{2q+1} = (j_{q+1}, i_{q+1}), with i_s = i_0.
struct EdgePath {
    std::vector<int> bottom;
    std::vector<int> top;

    struct Edge {
        int top = 0;
        int bottom = 0;
        friend auto operator<=>(const Edge&, const Edge&) = default;
    };

    std::size_t length() const noexcept { return bottom.size(); }
    std::vector<Edge> edges() const;
    static EdgePath from_edges(const std::vector<Edge>& edges);
    /// Every oriented edge occurs an even number of times.
    bool is_even() const;
    /// Dyck path reading each edge as up on odd-numbered occurrences and
    /// down on even-numbered ones. Requires an even path.
    DyckPath trajectory() const;
    std::string to_string() const;

    friend auto operator<=>(const EdgePath&, const EdgePath&) = default;
};

/// Positions (edge indices) of the oriented edges whose bottom entry is `vertex`.
std::vector<std::size_t> one_edges(const EdgePath& path, int vertex = 1);

struct GlueResult {
    EdgePath glued;
    int s = 0;  ///< pairs of 1-edges in the input
    int l = 0;  ///< clusters
    int m = 0;  ///< returns to 0 of the glued trajectory, terminal one included
};

/// First gluing procedure. Throws StructureError unless the path is even and
/// visits `vertex` on the bottom line.
GlueResult glue(const EdgePath& path, int vertex = 1);

/// s_1 * C(s, l) * (2 s_N)^(s - l).
BigInt preimage_bound(int s, int l, int s1, int s_n);

/// Half the first return time of the trajectory.
int first_return_half(const DyckPath& path);

/// Every even path P of length s_n with s pairs of `vertex`-edges such that
/// glue(P) reproduces `glued`, found by re-inserting erased 1-edge pairs and
/// searching over subpath orders, directions and origins.
std::vector<EdgePath> reconstruct_preimages(const EdgePath& glued, int s, int s_n, int vertex = 1);

/// All even edge paths of length s with bottom labels in 1..n_labels and top
/// labels in 1..p_labels.
std::vector<EdgePath> enumerate_even_paths(int n_labels, int p_labels, int s);

}  // namespace spikelab::dyck
