#include <algorithm>
#include <map>
#include <numeric>
#include <set>
#include <sstream>

#include "spikelab/dyck.hpp"
#include "spikelab/errors.hpp"

namespace spikelab::dyck {

std::vector<EdgePath::Edge> EdgePath::edges() const
{
    if (bottom.size() != top.size())
        throw StructureError("edge path: bottom and top lines differ in length");
    const std::size_t s = bottom.size();
    std::vector<Edge> out;
    out.reserve(2 * s);
    for (std::size_t q = 0; q < s; ++q) {
        out.push_back({top[q], bottom[q]});
        out.push_back({top[q], bottom[(q + 1) % s]});
    }
    return out;
}

EdgePath EdgePath::from_edges(const std::vector<Edge>& edges)
{
    if (edges.empty() || edges.size() % 2 != 0)
        throw StructureError("edge sequence must have positive even length");
    EdgePath path;
    const std::size_t s = edges.size() / 2;
    for (std::size_t q = 0; q < s; ++q) {
        const Edge& a = edges[2 * q];
        const Edge& b = edges[2 * q + 1];
        const Edge& c = edges[(2 * q + 2) % edges.size()];
        if (a.top != b.top || b.bottom != c.bottom)
            throw StructureError("edge sequence is not a closed edge path");
        path.bottom.push_back(a.bottom);
        path.top.push_back(a.top);
    }
    return path;
}

bool EdgePath::is_even() const
{
    std::map<Edge, int> counts;
    for (const Edge& e : edges())
        ++counts[e];
    return std::all_of(counts.begin(), counts.end(), [](const auto& kv) { return kv.second % 2 == 0; });
}

DyckPath EdgePath::trajectory() const
{
    if (!is_even())
        throw StructureError("trajectory is defined for even edge paths only");
    std::map<Edge, int> seen;
    DyckPath path;
    for (const Edge& e : edges()) {
        const int count = ++seen[e];
        path.steps.push_back(count % 2 == 1 ? 1 : -1);
    }
    return path;
}

std::string EdgePath::to_string() const
{
    std::ostringstream os;
    os << "bottom(";
    for (std::size_t i = 0; i < bottom.size(); ++i)
        os << (i ? "," : "") << bottom[i];
    os << ") top(";
    for (std::size_t i = 0; i < top.size(); ++i)
        os << (i ? "," : "") << top[i];
    os << ")";
    return os.str();
}

std::vector<std::size_t> one_edges(const EdgePath& path, int vertex)
{
    std::vector<std::size_t> out;
    const auto edges = path.edges();
    for (std::size_t i = 0; i < edges.size(); ++i)
        if (edges[i].bottom == vertex)
            out.push_back(i);
    return out;
}

namespace {

using Edge = EdgePath::Edge;

struct Subpath {
    std::vector<Edge> edges;
    int start_top = 0;
    int end_top = 0;

    std::vector<Edge> oriented(bool reversed) const
    {
        std::vector<Edge> out = edges;
        if (reversed)
            std::reverse(out.begin(), out.end());
        return out;
    }
};

class UnionFind {
public:
    int find(int x)
    {
        auto it = parent_.find(x);
        if (it == parent_.end()) {
            parent_[x] = x;
            return x;
        }
        if (it->second == x)
            return x;
        const int root = find(it->second);
        parent_[x] = root;
        return root;
    }
    void unite(int a, int b) { parent_[find(a)] = find(b); }

private:
    std::map<int, int> parent_;
};

/// Eulerian traversal of a cluster starting with its first subpath read
/// forward; tries subpaths in increasing index, forward before reversed.
bool traverse(const std::vector<Subpath>& subs, const std::vector<int>& cluster, std::vector<bool>& used,
              std::vector<std::pair<int, bool>>& order, int current_top, int closing_top)
{
    if (order.size() == cluster.size())
        return current_top == closing_top;
    for (int idx : cluster) {
        if (used[static_cast<std::size_t>(idx)])
            continue;
        const Subpath& sub = subs[static_cast<std::size_t>(idx)];
        for (bool reversed : {false, true}) {
            const int entry = reversed ? sub.end_top : sub.start_top;
            const int exit = reversed ? sub.start_top : sub.end_top;
            if (entry != current_top)
                continue;
            used[static_cast<std::size_t>(idx)] = true;
            order.emplace_back(idx, reversed);
            if (traverse(subs, cluster, used, order, exit, closing_top))
                return true;
            order.pop_back();
            used[static_cast<std::size_t>(idx)] = false;
        }
    }
    return false;
}

int returns_with_terminal(const DyckPath& path)
{
    int h = 0;
    int count = 0;
    for (auto step : path.steps) {
        h += step;
        if (h == 0)
            ++count;
    }
    return count;
}

}  // namespace

GlueResult glue(const EdgePath& path, int vertex)
{
    const std::size_t big_s = path.length();
    if (big_s == 0 || path.top.size() != big_s)
        throw StructureError("glue: malformed edge path");
    if (!path.is_even())
        throw StructureError("glue: the edge path is not even");

    std::vector<std::size_t> occ;
    for (std::size_t q = 1; q < big_s; ++q)
        if (path.bottom[q] == vertex)
            occ.push_back(q);
    if (path.bottom[0] == vertex)
        occ.push_back(0);
    if (occ.empty())
        throw StructureError("glue: the path has no 1-edges");

    const auto edges = path.edges();
    const std::size_t two_s = edges.size();
    const std::size_t s = occ.size();
    std::vector<Subpath> subs(s);
    for (std::size_t i = 0; i < s; ++i) {
        const std::size_t prev = occ[(i + s - 1) % s];
        std::size_t len = 2 * ((occ[i] + big_s - prev) % big_s);
        if (len == 0)
            len = two_s;
        Subpath& sub = subs[i];
        for (std::size_t t = 0; t < len; ++t)
            sub.edges.push_back(edges[(2 * prev + t) % two_s]);
        sub.start_top = sub.edges.front().top;
        sub.end_top = sub.edges.back().top;
    }

    UnionFind uf;
    for (const Subpath& sub : subs)
        uf.unite(sub.start_top, sub.end_top);
    std::vector<std::vector<int>> clusters;
    std::map<int, std::size_t> cluster_of_root;
    for (std::size_t i = 0; i < s; ++i) {
        const int root = uf.find(subs[i].start_top);
        auto [it, inserted] = cluster_of_root.emplace(root, clusters.size());
        if (inserted)
            clusters.emplace_back();
        clusters[it->second].push_back(static_cast<int>(i));
    }

    std::vector<Edge> glued;
    std::vector<bool> used(s, false);
    for (const auto& cluster : clusters) {
        const int first = cluster.front();
        std::vector<std::pair<int, bool>> order{{first, false}};
        used[static_cast<std::size_t>(first)] = true;
        const Subpath& head = subs[static_cast<std::size_t>(first)];
        if (!traverse(subs, cluster, used, order, head.end_top, head.start_top))
            throw StructureError("glue: cluster admits no closed traversal");
        std::vector<Edge> seq = head.edges;
        for (std::size_t j = 1; j < order.size(); ++j) {
            const auto next = subs[static_cast<std::size_t>(order[j].first)].oriented(order[j].second);
            seq.pop_back();
            seq.insert(seq.end(), next.begin() + 1, next.end());
        }
        glued.insert(glued.end(), seq.begin(), seq.end());
    }

    GlueResult result;
    result.glued = EdgePath::from_edges(glued);
    result.s = static_cast<int>(s);
    result.l = static_cast<int>(clusters.size());
    result.m = returns_with_terminal(result.glued.trajectory());
    return result;
}

namespace {

void multisets(int slots, int count, int start, std::vector<int>& current, std::vector<std::vector<int>>& out)
{
    if (static_cast<int>(current.size()) == count) {
        out.push_back(current);
        return;
    }
    for (int q = start; q < slots; ++q) {
        current.push_back(q);
        multisets(slots, count, q, current, out);
        current.pop_back();
    }
}

}  // namespace

std::vector<EdgePath> reconstruct_preimages(const EdgePath& glued, int s, int s_n, int vertex)
{
    const auto sg = static_cast<int>(glued.length());
    if (sg == 0 || glued.bottom.front() != vertex)
        return {};
    const auto l = static_cast<int>(std::count(glued.bottom.begin(), glued.bottom.end(), vertex));
    const int extra = s - l;
    if (extra < 0 || sg + extra != s_n)
        return {};

    std::vector<std::vector<int>> insertions;
    std::vector<int> scratch;
    multisets(sg, extra, 0, scratch, insertions);

    std::set<EdgePath> found;
    for (const auto& ins : insertions) {
        EdgePath q;
        for (int pos = 0; pos < sg; ++pos) {
            q.bottom.push_back(glued.bottom[static_cast<std::size_t>(pos)]);
            q.top.push_back(glued.top[static_cast<std::size_t>(pos)]);
            const auto copies = std::count(ins.begin(), ins.end(), pos);
            for (long c = 0; c < copies; ++c) {
                q.bottom.push_back(vertex);
                q.top.push_back(glued.top[static_cast<std::size_t>(pos)]);
            }
        }
        std::vector<std::size_t> occ;
        for (std::size_t i = 0; i < q.bottom.size(); ++i)
            if (q.bottom[i] == vertex)
                occ.push_back(i);
        const auto q_edges = q.edges();
        std::vector<Subpath> parts(occ.size());
        for (std::size_t i = 0; i < occ.size(); ++i) {
            const std::size_t end = i + 1 < occ.size() ? occ[i + 1] : q.bottom.size();
            parts[i].edges.assign(q_edges.begin() + static_cast<long>(2 * occ[i]),
                                  q_edges.begin() + static_cast<long>(2 * end));
        }

        std::vector<int> perm(parts.size() - 1);
        std::iota(perm.begin(), perm.end(), 1);
        do {
            const std::size_t rest = perm.size();
            for (unsigned long mask = 0; mask < (1UL << rest); ++mask) {
                std::vector<Edge> seq = parts[0].edges;
                for (std::size_t j = 0; j < rest; ++j) {
                    const auto piece = parts[static_cast<std::size_t>(perm[j])].oriented(((mask >> j) & 1UL) != 0);
                    seq.insert(seq.end(), piece.begin(), piece.end());
                }
                const std::size_t head_len = parts[0].edges.size() / 2;
                for (std::size_t r = 0; r < head_len; ++r) {
                    std::vector<Edge> rotated(seq.size());
                    std::rotate_copy(seq.begin(), seq.begin() + static_cast<long>(2 * r), seq.end(), rotated.begin());
                    const EdgePath candidate = EdgePath::from_edges(rotated);
                    if (!candidate.is_even())
                        continue;
                    const GlueResult back = glue(candidate, vertex);
                    if (back.s == s && back.glued == glued)
                        found.insert(candidate);
                }
            }
        } while (std::next_permutation(perm.begin(), perm.end()));
    }
    return {found.begin(), found.end()};
}

std::vector<EdgePath> enumerate_even_paths(int n_labels, int p_labels, int s)
{
    if (n_labels < 1 || p_labels < 1 || s < 1)
        throw DomainError("enumerate_even_paths: labels and length must be positive");
    std::vector<EdgePath> out;
    EdgePath path;
    path.bottom.assign(static_cast<std::size_t>(s), 1);
    path.top.assign(static_cast<std::size_t>(s), 1);
    const auto advance = [](std::vector<int>& digits, int base) {
        for (int& d : digits) {
            if (d < base) {
                ++d;
                return true;
            }
            d = 1;
        }
        return false;
    };
    do {
        do {
            if (path.is_even())
                out.push_back(path);
        } while (advance(path.top, p_labels));
    } while (advance(path.bottom, n_labels));
    std::sort(out.begin(), out.end());
    return out;
}

}  // namespace spikelab::dyck
