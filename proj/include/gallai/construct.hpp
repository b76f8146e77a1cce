#pragma once

// Explicit Gallai-bound path decompositions of K_n: the rotated-zigzag
// (Walecki) decomposition for even n, and the two reroute-based
// constructions that extend it to odd n.  Every construction self-verifies
// before returning.

#include <array>
#include <optional>

#include "gallai/core.hpp"

namespace gallai {

/// Cyclic relabeling v -> ((v-1+t) mod n) + 1 on an even number of
/// vertices; shifting the base zigzag by t = 0..n/2-1 produces the whole
/// decomposition.
struct Rotation {
    int n = 0;
    int shift = 0;

    Rotation(int vertex_count, int t) : n(vertex_count), shift(t) {
        if (n < 2 || n % 2 != 0)
            throw std::invalid_argument("Rotation: n must be even and >= 2");
        if (t < 0 || t >= n / 2)
            throw std::invalid_argument("Rotation: shift must lie in 0..n/2-1");
    }

    Vertex apply(Vertex v) const { return (v - 1 + shift) % n + 1; }

    Path apply(const Path& p) const {
        std::vector<Vertex> seq;
        seq.reserve(p.vertices.size());
        for (Vertex w : p.vertices) seq.push_back(apply(w));
        return Path(std::move(seq));
    }
};

/// Base zigzag on 2k vertices: 1, 2, 2k, 3, 2k-1, 4, ...
/// (s_1 = 1, s_2 = 2, s_{2i+1} = 2k+1-i, s_{2i+2} = i+2).
inline std::vector<Vertex> walecki_zigzag(int k) {
    if (k < 1) throw std::invalid_argument("walecki_zigzag: k must be positive");
    const int n = 2 * k;
    std::vector<Vertex> seq;
    seq.reserve(n);
    seq.push_back(1);
    seq.push_back(2);
    for (int i = 1; static_cast<int>(seq.size()) < n; ++i) {
        seq.push_back(n + 1 - i);
        if (static_cast<int>(seq.size()) < n) seq.push_back(i + 2);
    }
    return seq;
}

/// K_{2k} as k Hamiltonian paths: the base zigzag rotated by t = 0..k-1.
inline PathDecomposition walecki_even(int k) {
    if (k < 1) throw std::invalid_argument("walecki_even: k must be positive");
    const int n = 2 * k;
    PathDecomposition d;
    d.host = complete_graph(n);
    const std::vector<Vertex> base = walecki_zigzag(k);
    for (int t = 0; t < k; ++t) {
        Rotation rot(n, t);
        std::vector<Vertex> seq;
        seq.reserve(base.size());
        for (Vertex w : base) seq.push_back(rot.apply(w));
        d.paths.push_back(Path(std::move(seq)));
    }
    d.sort_paths();
    VerificationReport r = verify_decomposition(d);
    if (!r.ok())
        throw construction_error("walecki_even(" + std::to_string(k) +
                                 "): self-verification failed: " + r.detail);
    return d;
}

namespace detail {

/// Index of the path covering e, or nullopt.
inline std::optional<std::size_t> find_path_covering(const std::vector<Path>& paths, Edge e) {
    for (std::size_t i = 0; i < paths.size(); ++i)
        if (paths[i].covers(e)) return i;
    return std::nullopt;
}

/// Splice m into seq between the endpoints of e (seq must traverse e).
inline std::vector<Vertex> splice_detour(const std::vector<Vertex>& seq, Edge e, Vertex m) {
    std::vector<Vertex> out;
    out.reserve(seq.size() + 1);
    for (std::size_t i = 0; i < seq.size(); ++i) {
        out.push_back(seq[i]);
        if (i + 1 < seq.size() && Edge(seq[i], seq[i + 1]) == e) out.push_back(m);
    }
    return out;
}

/// Drop an end edge from seq, shrinking it by one vertex.
inline std::vector<Vertex> drop_end_edge(const std::vector<Vertex>& seq, Edge e) {
    if (Edge(seq[0], seq[1]) == e)
        return std::vector<Vertex>(seq.begin() + 1, seq.end());
    return std::vector<Vertex>(seq.begin(), seq.end() - 1);
}

}  // namespace detail

/// Replace edge e = {a,b} on its path by the detour a-m-b.  The host loses
/// e and gains {a,m} and {b,m} (growing to include m if needed); every
/// other path is untouched.  Rejects e not on any path, m already on e's
/// path, and detour edges already covered.
inline PathDecomposition reroute(const PathDecomposition& d, Edge e, Vertex m) {
    if (m < 1) throw std::invalid_argument("reroute: vertex labels must be positive");
    auto idx = detail::find_path_covering(d.paths, e);
    if (!idx)
        throw std::invalid_argument("reroute: edge " + to_string(e) + " lies on no path");
    const Path& p = d.paths[*idx];
    for (Vertex w : p.vertices)
        if (w == m)
            throw std::invalid_argument("reroute: vertex " + std::to_string(m) +
                                        " already lies on the path of " + to_string(e));
    const Edge da(e.u, m), db(e.v, m);
    for (Edge g : {da, db})
        if (d.covers(g) || d.host.contains(g))
            throw std::invalid_argument("reroute: detour edge " + to_string(g) +
                                        " already covered");

    PathDecomposition out = d;
    out.host.n = std::max(out.host.n, m);
    out.host.remove(e);
    out.host.add(da);
    out.host.add(db);
    out.paths[*idx] = Path(detail::splice_detour(p.vertices, e, m));
    out.sort_paths();
    return out;
}

namespace detail {

// A reroute plan for absorbing vertex 2k+1 into the K_{2k} decomposition:
// k vertex-disjoint consecutive pairs to reroute, plus the closing sequence
// whose edges re-cover everything the reroutes and detachments removed.
struct AbsorbPlan {
    std::vector<Edge> reroutes;       // perfect matching of consecutive pairs
    std::vector<Vertex> closing_path; // path through all of 1..2k
};

/// The two perfect matchings of C_{2k} made of consecutive pairs: the odd
/// pairs {1,2},{3,4},... with closing path 1..2k, and the even pairs
/// {2,3},{4,5},...,{2k,1} with closing path 2..2k,1.  Picks the first whose
/// pairs land on k distinct paths.
inline AbsorbPlan choose_absorb_plan(const std::vector<Path>& paths, int k) {
    const int n = 2 * k;
    std::array<AbsorbPlan, 2> options;
    for (Vertex a = 1; a <= n - 1; a += 2) options[0].reroutes.push_back(Edge(a, a + 1));
    for (Vertex v = 1; v <= n; ++v) options[0].closing_path.push_back(v);
    for (Vertex a = 2; a <= n - 2; a += 2) options[1].reroutes.push_back(Edge(a, a + 1));
    if (k >= 1) options[1].reroutes.push_back(Edge(1, n));
    for (Vertex v = 2; v <= n; ++v) options[1].closing_path.push_back(v);
    options[1].closing_path.push_back(1);

    for (const AbsorbPlan& plan : options) {
        std::vector<char> hit(paths.size(), 0);
        bool distinct = true;
        for (Edge e : plan.reroutes) {
            auto idx = find_path_covering(paths, e);
            if (!idx || hit[*idx]) {
                distinct = false;
                break;
            }
            hit[*idx] = 1;
        }
        if (distinct) return plan;
    }
    throw construction_error("no consecutive-pair matching hits " + std::to_string(k) +
                             " distinct paths");
}

/// Shared tail of both odd constructions: detach every closing-path edge
/// that still sits on an existing path (it must be a path end), then add
/// the closing sequence itself.
inline void detach_and_close(PathDecomposition& d, const std::vector<Vertex>& closing,
                             const std::vector<Edge>& rerouted) {
    for (std::size_t i = 0; i + 1 < closing.size(); ++i) {
        Edge e(closing[i], closing[i + 1]);
        if (std::find(rerouted.begin(), rerouted.end(), e) != rerouted.end()) continue;
        auto idx = find_path_covering(d.paths, e);
        if (!idx)
            throw construction_error("closing edge " + to_string(e) + " lies on no path");
        Path& p = d.paths[*idx];
        if (!p.is_end_edge(e))
            throw construction_error("closing edge " + to_string(e) +
                                     " is interior to its path, not an end edge");
        p = Path(drop_end_edge(p.vertices, e));
        d.host.remove(e);
    }
    for (std::size_t i = 0; i + 1 < closing.size(); ++i)
        d.host.add(Edge(closing[i], closing[i + 1]));
    d.paths.push_back(Path(closing));
}

}  // namespace detail

/// K_{2k+1} for odd k, as k+1 paths: reroute one consecutive pair per
/// zigzag path to vertex 2k+1, drop the complementary pairs from their
/// path ends, and add the path through 1..2k.
inline PathDecomposition odd_decomposition_odd_k(int k) {
    if (k < 1 || k % 2 == 0)
        throw std::invalid_argument("odd_decomposition_odd_k: k must be odd and positive");
    const Vertex apex = 2 * k + 1;
    PathDecomposition d = walecki_even(k);
    detail::AbsorbPlan plan = detail::choose_absorb_plan(d.paths, k);
    for (Edge e : plan.reroutes) d = reroute(d, e, apex);
    detail::detach_and_close(d, plan.closing_path, plan.reroutes);
    d.sort_paths();
    if (d.host != complete_graph(apex))
        throw construction_error("odd_decomposition_odd_k: host is not complete");
    VerificationReport r = verify_decomposition(d);
    if (!r.ok())
        throw construction_error("odd_decomposition_odd_k(" + std::to_string(k) +
                                 "): self-verification failed: " + r.detail);
    return d;
}

/// K_{2k+1} for even k, as k+1 paths: reroute the pairs below k and above
/// k+1 to vertex 2k+1, then thread the remaining edges into the single
/// path 1,...,k+1, 2k+1, 2k, ..., k+2, detaching each reused edge from the
/// end of the path that held it.
inline PathDecomposition odd_decomposition_even_k(int k) {
    if (k < 2 || k % 2 != 0)
        throw std::invalid_argument("odd_decomposition_even_k: k must be even and >= 2");
    const int n = 2 * k;
    const Vertex apex = n + 1;
    PathDecomposition d = walecki_even(k);

    std::vector<Edge> reroutes;
    for (Vertex a = 1; a <= k - 1; a += 2) reroutes.push_back(Edge(a, a + 1));
    for (Vertex a = k + 2; a <= n - 2; a += 2) reroutes.push_back(Edge(a, a + 1));
    {
        // each pair must sit on its own path or no path could absorb the apex
        std::vector<char> hit(d.paths.size(), 0);
        for (Edge e : reroutes) {
            auto idx = detail::find_path_covering(d.paths, e);
            if (!idx || hit[*idx])
                throw construction_error("rerouted pairs do not hit distinct paths");
            hit[*idx] = 1;
        }
    }
    for (Edge e : reroutes) d = reroute(d, e, apex);

    std::vector<Vertex> closing;
    for (Vertex v = 1; v <= k + 1; ++v) closing.push_back(v);
    closing.push_back(apex);
    for (Vertex v = n; v >= k + 2; --v) closing.push_back(v);
    // {k+1, 2k+1} and {2k+1, 2k} are brand new, not detachable from anywhere
    std::vector<Edge> skip = reroutes;
    skip.push_back(Edge(k + 1, apex));
    skip.push_back(Edge(n, apex));
    detail::detach_and_close(d, closing, skip);

    d.sort_paths();
    if (d.host != complete_graph(apex))
        throw construction_error("odd_decomposition_even_k: host is not complete");
    VerificationReport r = verify_decomposition(d);
    if (!r.ok())
        throw construction_error("odd_decomposition_even_k(" + std::to_string(k) +
                                 "): self-verification failed: " + r.detail);
    return d;
}

/// Gallai-bound decomposition of K_n for any n >= 2: exactly
/// gallai_bound(n) paths, verifier-clean.
inline PathDecomposition construct(int n) {
    if (n < 2) throw std::invalid_argument("construct: n must be at least 2");
    if (n % 2 == 0) return walecki_even(n / 2);
    const int k = (n - 1) / 2;
    return k % 2 == 1 ? odd_decomposition_odd_k(k) : odd_decomposition_even_k(k);
}

}  // namespace gallai
