#pragma once

// Surgery on the constructed decompositions: removing stars and tadpoles
// T_{m,1} from K_n while keeping a Gallai-bound decomposition of what is
// left, trimming arbitrary path ends, and the exhaustive feasibility
// search for "can this edge set be realized as path ends".

#include <map>
#include <optional>
#include <set>

#include "gallai/construct.hpp"
#include "gallai/enumerate.hpp"

namespace gallai {

enum class RemovalKind { star, tadpole, free_form };

inline std::string to_string(RemovalKind k) {
    switch (k) {
        case RemovalKind::star: return "star";
        case RemovalKind::tadpole: return "tadpole";
        default: return "free-form";
    }
}

/// The exact subgraph deleted from K_n.  removed_edges is kept in removal
/// order so a removal can be replayed; as a set it is duplicate-free.
struct RemovalRecord {
    RemovalKind kind = RemovalKind::free_form;
    std::vector<Edge> removed_edges;
    std::optional<Vertex> center;      // star center
    std::optional<int> cycle_length;   // tadpole cycle length m
};

/// Two consecutive path edges sharing `center`, with the base joining
/// their outer endpoints.
struct Fork {
    Vertex center;
    std::array<Edge, 2> arms;
    Edge base;

    Fork(Vertex c, Edge arm0, Edge arm1)
        : center(c), arms{arm0, arm1}, base(arm0.other(c), arm1.other(c)) {
        if (!arm0.touches(c) || !arm1.touches(c) || arm0 == arm1)
            throw std::invalid_argument("Fork: arms must be distinct edges at the center");
    }
};

struct RemovalResult {
    LabeledGraph host;
    PathDecomposition decomposition;
    RemovalRecord record;
};

namespace detail {

// Working state for edge surgery.  Lines are raw vertex sequences; a line
// may transiently shrink to a single vertex (no edges) between a split and
// the merge that repairs it.
class Surgeon {
public:
    explicit Surgeon(const PathDecomposition& d) : n_(d.host.n), host_(d.host) {
        for (const Path& p : d.paths) lines_.push_back(p.vertices);
    }

    const std::vector<Edge>& removed() const { return removed_; }

    int line_count() const {
        int c = 0;
        for (const auto& ln : lines_)
            if (ln.size() >= 2) ++c;
        return c;
    }

    /// Remove every edge in `targets` from the current lines: first as end
    /// trims wherever possible, then by splitting lines at interior target
    /// edges, finally merging split pieces back (reassigning an end edge of
    /// a third line as the bridge) until at most `max_lines` remain.
    /// Deterministic; throws construction_error when no repair exists.
    void remove_targets(std::vector<Edge> targets, int max_lines) {
        std::set<Edge> pending(targets.begin(), targets.end());
        if (pending.size() != targets.size())
            throw std::invalid_argument("remove_targets: duplicate target edge");
        while (!pending.empty()) {
            if (trim_pass(pending)) continue;
            Edge e = first_located(pending);
            split_at(e);
            pending.erase(e);
        }
        while (line_count() > max_lines) merge_two();
        prune_stubs();
    }

    PathDecomposition finish() const {
        PathDecomposition d;
        d.host = host_;
        for (const auto& ln : lines_)
            if (ln.size() >= 2) d.paths.push_back(Path(ln));
        d.sort_paths();
        return d;
    }

private:
    int n_;
    LabeledGraph host_;
    std::vector<std::vector<Vertex>> lines_;
    std::vector<Edge> removed_;

    static bool line_has_end(const std::vector<Vertex>& ln, Edge e) {
        if (ln.size() < 2) return false;
        return Edge(ln[0], ln[1]) == e || Edge(ln[ln.size() - 2], ln.back()) == e;
    }

    std::optional<std::pair<std::size_t, std::size_t>> locate(Edge e) const {
        for (std::size_t i = 0; i < lines_.size(); ++i)
            for (std::size_t j = 0; j + 1 < lines_[i].size(); ++j)
                if (Edge(lines_[i][j], lines_[i][j + 1]) == e) return std::pair{i, j};
        return std::nullopt;
    }

    void erase_edge_record(Edge e) {
        host_.remove(e);
        removed_.push_back(e);
    }

    /// One sweep over pending targets in sorted order, trimming every one
    /// that is currently an end edge.  Returns true if anything moved.
    bool trim_pass(std::set<Edge>& pending) {
        bool progress = false;
        for (auto it = pending.begin(); it != pending.end();) {
            Edge e = *it;
            bool trimmed = false;
            for (auto& ln : lines_)
                if (line_has_end(ln, e)) {
                    ln = drop_end_edge(ln, e);
                    erase_edge_record(e);
                    trimmed = true;
                    break;
                }
            if (trimmed) {
                it = pending.erase(it);
                progress = true;
            } else {
                ++it;
            }
        }
        return progress;
    }

    Edge first_located(const std::set<Edge>& pending) const {
        for (Edge e : pending)
            if (locate(e)) return e;
        throw std::invalid_argument("target edge " + to_string(*pending.begin()) +
                                    " lies on no path");
    }

    void split_at(Edge e) {
        auto pos = locate(e);
        if (!pos) throw std::invalid_argument("split_at: edge lies on no path");
        auto [i, j] = *pos;
        std::vector<Vertex> left(lines_[i].begin(), lines_[i].begin() + j + 1);
        std::vector<Vertex> right(lines_[i].begin() + j + 1, lines_[i].end());
        lines_[i] = std::move(left);
        lines_.push_back(std::move(right));
        erase_edge_record(e);
    }

    /// Reduce the line count by one: find two vertex-disjoint lines whose
    /// ends are joined by a current end edge of some third line, detach
    /// that edge and use it as the bridge.  The lexicographically least
    /// bridge wins.
    void merge_two() {
        struct Plan {
            Edge bridge;
            std::size_t a, b, c;
        };
        std::optional<Plan> best;
        for (std::size_t a = 0; a < lines_.size(); ++a) {
            if (lines_[a].empty()) continue;
            for (std::size_t b = a + 1; b < lines_.size(); ++b) {
                if (lines_[b].empty()) continue;
                if (!disjoint(lines_[a], lines_[b])) continue;
                for (Vertex x : {lines_[a].front(), lines_[a].back()})
                    for (Vertex y : {lines_[b].front(), lines_[b].back()}) {
                        if (x == y) continue;
                        Edge cand(x, y);
                        if (best && !(cand < best->bridge)) continue;
                        for (std::size_t c = 0; c < lines_.size(); ++c) {
                            if (c == a || c == b) continue;
                            if (line_has_end(lines_[c], cand)) {
                                best = Plan{cand, a, b, c};
                                break;
                            }
                        }
                    }
            }
        }
        if (!best)
            throw construction_error("no end edge can bridge the severed pieces");
        auto& A = lines_[best->a];
        auto& B = lines_[best->b];
        lines_[best->c] = drop_end_edge(lines_[best->c], best->bridge);
        if (A.back() != best->bridge.u && A.back() != best->bridge.v)
            std::reverse(A.begin(), A.end());
        if (B.front() != best->bridge.other(A.back()))
            std::reverse(B.begin(), B.end());
        A.insert(A.end(), B.begin(), B.end());
        B.clear();
    }

    static bool disjoint(const std::vector<Vertex>& a, const std::vector<Vertex>& b) {
        for (Vertex x : a)
            for (Vertex y : b)
                if (x == y) return false;
        return true;
    }

    static std::vector<Vertex> drop_end_edge(const std::vector<Vertex>& ln, Edge e) {
        if (Edge(ln[0], ln[1]) == e)
            return std::vector<Vertex>(ln.begin() + 1, ln.end());
        return std::vector<Vertex>(ln.begin(), ln.end() - 1);
    }

    void prune_stubs() {
        std::erase_if(lines_, [](const std::vector<Vertex>& ln) { return ln.size() < 2; });
    }
};

}  // namespace detail

/// K_n minus a star of exactly m edges at center v_n, with a Gallai-bound
/// decomposition of the remainder.  Odd n: the center sits one step from
/// an end on each rerouted path, so its end edges go first and side edges
/// follow; when k is even the last two star edges are the interior pair
/// {k+1, 2k+1}, {2k, 2k+1} of the closing path, repaired by re-attaching
/// the end edge {1, 2k}.  Even n: forks centered at v_n are removed two
/// edges at a time, the base of each fork re-attached to reconnect the cut
/// path, plus the lone end edge at the center for odd m.
inline RemovalResult remove_star(int n, int m) {
    if (n < 3) throw std::invalid_argument("remove_star: n must be at least 3");
    if (m < 1 || m > n - 2)
        throw std::invalid_argument("remove_star: m must lie in 1..n-2");

    PathDecomposition d = construct(n);
    const Vertex center = n;
    const int bound = gallai_bound(n);
    detail::Surgeon surgeon(d);

    if (n % 2 == 1) {
        // paths where the center is one step from an end: (end, side) pairs
        std::vector<std::pair<Edge, Edge>> pairs;
        std::array<Edge, 2> interior_pair{Edge(1, 2), Edge(1, 2)};
        bool have_interior = false;
        for (const Path& p : d.paths) {
            const auto& s = p.vertices;
            const std::size_t L = s.size();
            if (L >= 3 && s[1] == center)
                pairs.push_back({Edge(s[0], center), Edge(center, s[2])});
            else if (L >= 3 && s[L - 2] == center)
                pairs.push_back({Edge(s.back(), center), Edge(center, s[L - 3])});
            else if (auto it = std::find(s.begin() + 1, s.end() - 1, center);
                     s.size() >= 3 && it != s.end() - 1 && it != s.begin()) {
                interior_pair = {Edge(*(it - 1), center), Edge(center, *(it + 1))};
                have_interior = true;
            }
        }
        std::sort(pairs.begin(), pairs.end());
        const int ends = static_cast<int>(pairs.size());

        // m edges drawn as: end edges first, then side edges (legal once
        // their end edge is gone), then the interior pair as a unit
        const int end_count = std::min(m, ends);
        int leftover = m - end_count;
        const bool use_interior = leftover > ends;
        if (use_interior) leftover -= 2;
        if (leftover > ends || (use_interior && !have_interior))
            throw construction_error("remove_star: cannot place m=" + std::to_string(m) +
                                     " edges at the center");
        std::vector<Edge> end_edges, side_edges;
        for (int i = 0; i < end_count; ++i) end_edges.push_back(pairs[i].first);
        for (int i = 0; i < leftover; ++i) side_edges.push_back(pairs[i].second);

        surgeon.remove_targets(end_edges, bound);
        surgeon.remove_targets(side_edges, bound);
        if (use_interior)
            surgeon.remove_targets({interior_pair[0], interior_pair[1]}, bound);
    } else {
        // forks centered at v_n, one per path where it is interior, plus
        // the lone end edge on the remaining path
        std::vector<Fork> forks;
        std::optional<Edge> lone_end;
        for (const Path& p : d.paths) {
            const auto& s = p.vertices;
            for (std::size_t j = 0; j < s.size(); ++j)
                if (s[j] == center) {
                    if (j == 0)
                        lone_end = Edge(s[0], s[1]);
                    else if (j + 1 == s.size())
                        lone_end = Edge(s[j - 1], s[j]);
                    else
                        forks.push_back(Fork(center, Edge(s[j - 1], center), Edge(center, s[j + 1])));
                }
        }
        std::sort(forks.begin(), forks.end(), [](const Fork& a, const Fork& b) {
            return std::minmax(a.arms[0], a.arms[1]) < std::minmax(b.arms[0], b.arms[1]);
        });
        int remaining = m;
        if (m % 2 == 1) {
            surgeon.remove_targets({*lone_end}, bound);
            --remaining;
        }
        for (std::size_t f = 0; remaining > 0; ++f, remaining -= 2) {
            if (f >= forks.size())
                throw construction_error("remove_star: ran out of forks at the center");
            surgeon.remove_targets({forks[f].arms[0], forks[f].arms[1]}, bound);
        }
    }

    RemovalResult out;
    out.decomposition = surgeon.finish();
    out.host = out.decomposition.host;
    out.record = RemovalRecord{RemovalKind::star, surgeon.removed(), center, std::nullopt};

    for (Edge e : out.record.removed_edges)
        if (!e.touches(center))
            throw construction_error("remove_star: removed edge " + to_string(e) +
                                     " misses the center");
    VerificationReport r = verify_decomposition(out.decomposition);
    if (!r.ok())
        throw construction_error("remove_star(" + std::to_string(n) + "," + std::to_string(m) +
                                 "): verification failed: " + r.detail);
    return out;
}

/// The pinned tadpole: cycle v_1..v_m; the tail hangs from v_m to
/// v_{2*floor(n/2)} when m is even, from v_1 to v_{m+1} when m is odd, and
/// from v_{n-1} to v_n in the full-cycle case m = n-1 of odd n.  Either
/// way the removed subgraph is C_m plus one pendant edge.
inline Edge tadpole_tail(int n, int m) {
    const int even_top = n - n % 2;
    if (n % 2 == 1 && m == n - 1) return Edge(n - 1, n);
    if (m % 2 == 0) return Edge(m, even_top);
    return Edge(1, m + 1);
}

/// K_n minus a tadpole T_{m,1} (the cycle v_1..v_m plus a pendant edge),
/// with a Gallai-bound decomposition of the remainder.  The cycle edges
/// come off the path ends; the chord {1,m} and the tail form a fork whose
/// removal is repaired by re-attaching an end edge as the bridge.
inline RemovalResult remove_tadpole(int n, int m) {
    if (n < 4) throw std::invalid_argument("remove_tadpole: n must be at least 4");
    if (m < 3 || m > n - 1)
        throw std::invalid_argument("remove_tadpole: m must lie in 3..n-1");

    PathDecomposition d = construct(n);
    std::vector<Edge> targets;
    for (Vertex v = 1; v < m; ++v) targets.push_back(Edge(v, v + 1));
    targets.push_back(Edge(1, m));
    targets.push_back(tadpole_tail(n, m));

    detail::Surgeon surgeon(d);
    surgeon.remove_targets(targets, gallai_bound(n));

    RemovalResult out;
    out.decomposition = surgeon.finish();
    out.host = out.decomposition.host;
    out.record = RemovalRecord{RemovalKind::tadpole, surgeon.removed(), std::nullopt, m};

    VerificationReport r = verify_decomposition(out.decomposition);
    if (!r.ok())
        throw construction_error("remove_tadpole(" + std::to_string(n) + "," +
                                 std::to_string(m) + "): verification failed: " + r.detail);
    return out;
}

struct TrimResult {
    LabeledGraph host;
    PathDecomposition decomposition;
};

/// Remove the listed edges in order; each must be an end edge of some path
/// at its turn.  Paths shrunk to a single vertex are dropped.  Rejects,
/// with the offending index, a removal that is interior or absent.
inline TrimResult trim_path_ends(const PathDecomposition& d, std::span<const Edge> removals) {
    LabeledGraph host = d.host;
    std::vector<std::vector<Vertex>> lines;
    for (const Path& p : d.paths) lines.push_back(p.vertices);

    for (std::size_t i = 0; i < removals.size(); ++i) {
        Edge e = removals[i];
        bool done = false;
        bool present = false;
        for (auto& ln : lines) {
            for (std::size_t j = 0; j + 1 < ln.size(); ++j)
                if (Edge(ln[j], ln[j + 1]) == e) present = true;
            if (ln.size() >= 2 &&
                (Edge(ln[0], ln[1]) == e || Edge(ln[ln.size() - 2], ln.back()) == e)) {
                if (Edge(ln[0], ln[1]) == e)
                    ln.erase(ln.begin());
                else
                    ln.pop_back();
                done = true;
                break;
            }
        }
        if (!done)
            throw std::invalid_argument(
                "trim_path_ends: removal #" + std::to_string(i) + " " + to_string(e) +
                (present ? " is interior to its path" : " lies on no path"));
        host.remove(e);
        std::erase_if(lines, [](const std::vector<Vertex>& ln) { return ln.size() < 2; });
    }

    TrimResult out;
    out.host = host;
    out.decomposition.host = host;
    for (const auto& ln : lines) out.decomposition.paths.push_back(Path(ln));
    out.decomposition.sort_paths();
    return out;
}

namespace detail {

/// Depth-first search for an ordering of `target` that trims off a given
/// decomposition, trying candidate edges in lexicographic order so the
/// first complete ordering found is the least one.  Visited path-system
/// states are memoized.
class TrimOrderSearch {
public:
    explicit TrimOrderSearch(const PathDecomposition& d) {
        for (const Path& p : d.paths) lines_.push_back(p.vertices);
        std::sort(lines_.begin(), lines_.end());
    }

    std::optional<std::vector<Edge>> run(const std::set<Edge>& target) {
        sequence_.clear();
        seen_.clear();
        if (dfs(target)) return sequence_;
        return std::nullopt;
    }

private:
    std::vector<std::vector<Vertex>> lines_;
    std::vector<Edge> sequence_;
    std::set<std::vector<std::vector<Vertex>>> seen_;

    bool dfs(const std::set<Edge>& remaining) {
        if (remaining.empty()) return true;
        if (!seen_.insert(lines_).second) return false;
        for (Edge e : remaining) {
            std::size_t idx = lines_.size();
            bool front = false;
            for (std::size_t i = 0; i < lines_.size(); ++i) {
                const auto& ln = lines_[i];
                if (Edge(ln[0], ln[1]) == e) { idx = i; front = true; break; }
                if (Edge(ln[ln.size() - 2], ln.back()) == e) { idx = i; front = false; break; }
            }
            if (idx == lines_.size()) continue;
            std::vector<std::vector<Vertex>> saved = lines_;
            auto& ln = lines_[idx];
            if (front)
                ln.erase(ln.begin());
            else
                ln.pop_back();
            if (ln.size() < 2) lines_.erase(lines_.begin() + idx);
            std::sort(lines_.begin(), lines_.end());
            sequence_.push_back(e);
            std::set<Edge> rest = remaining;
            rest.erase(e);
            if (dfs(rest)) return true;
            sequence_.pop_back();
            lines_ = std::move(saved);
        }
        return false;
    }
};

}  // namespace detail

/// Can `target` be realized as path ends?  Tries construct(n) first and
/// returns the lexicographically least ordering of `target` that
/// trim_path_ends accepts against it; failing that, scans every
/// enumerated Gallai-bound decomposition of K_n (class representatives
/// under all relabelings, in fingerprint-then-permutation order) and
/// returns the least ordering against the first decomposition admitting
/// one.  nullopt means infeasible over the searched set.  Exhaustive
/// within the cap and fully deterministic.
inline std::optional<std::vector<Edge>> path_ends_feasible(int n,
                                                           const std::vector<Edge>& target,
                                                           int cap = 8) {
    if (n < 2) throw std::invalid_argument("path_ends_feasible: n must be at least 2");
    if (n > cap)
        throw std::invalid_argument("path_ends_feasible: n exceeds the search cap of " +
                                    std::to_string(cap));
    std::set<Edge> wanted;
    for (Edge e : target) {
        if (e.v > n)
            throw std::invalid_argument("path_ends_feasible: edge " + to_string(e) +
                                        " lies outside K_" + std::to_string(n));
        wanted.insert(e);
    }
    if (wanted.size() != target.size())
        throw std::invalid_argument("path_ends_feasible: duplicate target edge");

    if (auto witness = detail::TrimOrderSearch(construct(n)).run(wanted)) return witness;

    std::vector<IsoClass> census = enumerate_decompositions(n, EnumerateOptions{cap, {}});
    std::vector<Vertex> image(n);
    for (Vertex v = 1; v <= n; ++v) image[v - 1] = v;
    std::set<std::vector<Path>> tried;
    for (const IsoClass& cls : census) {
        std::vector<Vertex> img = image;
        do {
            PathDecomposition d = apply_permutation(cls.representative, img);
            if (!tried.insert(d.paths).second) continue;
            if (auto witness = detail::TrimOrderSearch(d).run(wanted)) return witness;
        } while (std::next_permutation(img.begin(), img.end()));
    }
    return std::nullopt;
}

}  // namespace gallai
