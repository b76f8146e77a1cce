#pragma once

// Graph, path and decomposition data model for path decompositions of
// complete and nearly complete graphs, plus the verifier used as the
// postcondition oracle by every construction in this library.
//
// Vertices are 1-based integers.  All types are immutable values after
// construction and all functions are pure; everything here is safe to
// call concurrently.

#include <algorithm>
#include <compare>
#include <cstdint>
#include <queue>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace gallai {

using Vertex = int;

/// Raised when a pinned labeling convention turns out not to deliver the
/// structure a construction relies on (a rerouted edge set hitting the same
/// path twice, an edge that should be a path end but is interior, ...).
/// Never expected for legal inputs; it signals a convention bug.
class construction_error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// floor((n+1)/2): the number of paths any connected n-vertex graph is
/// conjectured to decompose into.  Rejects n < 1.
inline int gallai_bound(int n) {
    if (n < 1) throw std::invalid_argument("gallai_bound: n must be positive");
    return (n + 1) / 2;
}

/// Undirected edge on positive vertex labels, stored smaller-first so that
/// {a,b} and {b,a} compare and hash equal.  Loops are rejected.
struct Edge {
    Vertex u = 0;
    Vertex v = 0;

    Edge() = default;
    Edge(Vertex a, Vertex b) : u(std::min(a, b)), v(std::max(a, b)) {
        if (a == b) throw std::invalid_argument("Edge: endpoints must be distinct");
        if (u < 1) throw std::invalid_argument("Edge: vertex labels must be positive");
    }

    bool touches(Vertex w) const { return u == w || v == w; }
    Vertex other(Vertex w) const { return u == w ? v : u; }

    auto operator<=>(const Edge&) const = default;
};

inline std::string to_string(Edge e) {
    return "{" + std::to_string(e.u) + "," + std::to_string(e.v) + "}";
}

/// Simple undirected graph on vertices 1..n with an explicit edge set,
/// kept sorted and duplicate-free.  Hosts K_n and K_n minus a removed
/// subgraph.
struct LabeledGraph {
    int n = 0;
    std::vector<Edge> edges;  // sorted ascending, unique

    LabeledGraph() = default;
    explicit LabeledGraph(int vertex_count) : n(vertex_count) {
        if (n < 1) throw std::invalid_argument("LabeledGraph: n must be positive");
    }

    std::size_t edge_count() const { return edges.size(); }

    bool contains(Edge e) const {
        return std::binary_search(edges.begin(), edges.end(), e);
    }

    void add(Edge e) {
        if (e.v > n) throw std::invalid_argument("LabeledGraph::add: vertex out of range");
        auto it = std::lower_bound(edges.begin(), edges.end(), e);
        if (it != edges.end() && *it == e)
            throw std::invalid_argument("LabeledGraph::add: duplicate edge " + to_string(e));
        edges.insert(it, e);
    }

    void remove(Edge e) {
        auto it = std::lower_bound(edges.begin(), edges.end(), e);
        if (it == edges.end() || *it != e)
            throw std::invalid_argument("LabeledGraph::remove: absent edge " + to_string(e));
        edges.erase(it);
    }

    bool operator==(const LabeledGraph&) const = default;
};

/// Complete graph on 1..n (all n(n-1)/2 edges).  Rejects n < 1.
inline LabeledGraph complete_graph(int n) {
    LabeledGraph g(n);
    g.edges.reserve(static_cast<std::size_t>(n) * (n - 1) / 2);
    for (Vertex u = 1; u <= n; ++u)
        for (Vertex v = u + 1; v <= n; ++v)
            g.edges.push_back(Edge(u, v));
    return g;
}

/// True iff all n vertices lie in one component.  An isolated vertex makes
/// the graph disconnected (K_2 minus its edge is disconnected); a single
/// vertex with no edges is connected.
inline bool is_connected(const LabeledGraph& g) {
    if (g.n == 1) return true;
    std::vector<std::vector<Vertex>> adj(g.n + 1);
    for (Edge e : g.edges) {
        adj[e.u].push_back(e.v);
        adj[e.v].push_back(e.u);
    }
    std::vector<char> seen(g.n + 1, 0);
    std::queue<Vertex> q;
    q.push(1);
    seen[1] = 1;
    int reached = 1;
    while (!q.empty()) {
        Vertex w = q.front();
        q.pop();
        for (Vertex x : adj[w])
            if (!seen[x]) {
                seen[x] = 1;
                ++reached;
                q.push(x);
            }
    }
    return reached == g.n;
}

/// Simple path given as its vertex sequence (at least two vertices, all
/// distinct).  Stored orientation-normalized: of the sequence and its
/// reverse, the lexicographically smaller is kept, so a path and its
/// reversal are the same value.
struct Path {
    std::vector<Vertex> vertices;

    Path() = default;
    explicit Path(std::vector<Vertex> seq) : vertices(std::move(seq)) {
        if (vertices.size() < 2)
            throw std::invalid_argument("Path: needs at least two vertices");
        for (Vertex w : vertices)
            if (w < 1) throw std::invalid_argument("Path: vertex labels must be positive");
        auto sorted = vertices;
        std::sort(sorted.begin(), sorted.end());
        if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
            throw std::invalid_argument("Path: vertices must be distinct");
        normalize();
    }

    void normalize() {
        std::vector<Vertex> rev(vertices.rbegin(), vertices.rend());
        if (rev < vertices) vertices = std::move(rev);
    }

    int length() const { return static_cast<int>(vertices.size()) - 1; }

    std::vector<Edge> edges() const {
        std::vector<Edge> out;
        out.reserve(vertices.size() - 1);
        for (std::size_t i = 0; i + 1 < vertices.size(); ++i)
            out.push_back(Edge(vertices[i], vertices[i + 1]));
        return out;
    }

    bool covers(Edge e) const {
        for (std::size_t i = 0; i + 1 < vertices.size(); ++i)
            if (Edge(vertices[i], vertices[i + 1]) == e) return true;
        return false;
    }

    Edge first_edge() const { return Edge(vertices[0], vertices[1]); }
    Edge last_edge() const {
        return Edge(vertices[vertices.size() - 2], vertices.back());
    }
    bool is_end_edge(Edge e) const { return e == first_edge() || e == last_edge(); }

    auto operator<=>(const Path&) const = default;
};

/// A claimed decomposition: paths whose edge sets should partition the
/// host's edges.  Paths are kept in sorted order so that equal inputs give
/// identical (not merely isomorphic) values.
struct PathDecomposition {
    LabeledGraph host;
    std::vector<Path> paths;

    void sort_paths() { std::sort(paths.begin(), paths.end()); }

    std::size_t path_count() const { return paths.size(); }

    bool covers(Edge e) const {
        for (const Path& p : paths)
            if (p.covers(e)) return true;
        return false;
    }

    bool operator==(const PathDecomposition&) const = default;
};

/// Outcome of checking one decomposition, one property per flag with the
/// first violation spelled out.  Invalid input yields a failing report,
/// never an exception.
struct VerificationReport {
    bool paths_valid = true;     // every path is a simple path of the host
    bool edges_disjoint = true;  // no edge on two paths
    bool covers_host = true;     // every host edge on some path
    bool within_bound = true;    // path count <= gallai_bound(n)
    int path_count = 0;
    int bound = 0;
    std::string detail;  // empty when all checks pass

    bool ok() const { return paths_valid && edges_disjoint && covers_host && within_bound; }
};

inline VerificationReport verify_decomposition(const PathDecomposition& d) {
    VerificationReport r;
    r.path_count = static_cast<int>(d.paths.size());
    if (d.host.n < 1) {
        r.paths_valid = false;
        r.detail = "host has no vertices";
        return r;
    }
    r.bound = gallai_bound(d.host.n);

    auto note = [&r](const std::string& msg) {
        if (r.detail.empty()) r.detail = msg;
    };

    for (std::size_t i = 0; i < d.paths.size(); ++i) {
        const Path& p = d.paths[i];
        if (p.vertices.size() < 2) {
            r.paths_valid = false;
            note("path #" + std::to_string(i) + " has fewer than two vertices");
            continue;
        }
        for (Vertex w : p.vertices)
            if (w < 1 || w > d.host.n) {
                r.paths_valid = false;
                note("path #" + std::to_string(i) + " uses vertex " + std::to_string(w) +
                     " outside 1.." + std::to_string(d.host.n));
            }
        if (!r.paths_valid) continue;
        for (std::size_t j = 0; j + 1 < p.vertices.size(); ++j) {
            Edge e(p.vertices[j], p.vertices[j + 1]);
            if (!d.host.contains(e)) {
                r.paths_valid = false;
                note("path #" + std::to_string(i) + " uses non-host edge " + to_string(e));
                break;
            }
        }
    }

    std::vector<Edge> used;
    for (const Path& p : d.paths)
        for (Edge e : p.edges()) used.push_back(e);
    std::sort(used.begin(), used.end());
    for (std::size_t i = 0; i + 1 < used.size(); ++i)
        if (used[i] == used[i + 1]) {
            r.edges_disjoint = false;
            note("edge " + to_string(used[i]) + " appears on two paths");
            break;
        }

    for (Edge e : d.host.edges)
        if (!std::binary_search(used.begin(), used.end(), e)) {
            r.covers_host = false;
            note("host edge " + to_string(e) + " is uncovered");
            break;
        }

    if (r.path_count > r.bound) {
        r.within_bound = false;
        note(std::to_string(r.path_count) + " paths exceed the bound " +
             std::to_string(r.bound));
    }
    return r;
}

// --- relabeling -----------------------------------------------------------
//
// image[v-1] is the new label of vertex v.  The paper's constructions pin
// specific labels (star center v_n, tadpole cycle v_1..v_m); relabeling
// moves them anywhere without loss of generality.

inline void check_permutation(std::span<const Vertex> image, int n) {
    if (static_cast<int>(image.size()) != n)
        throw std::invalid_argument("permutation must cover 1..n");
    std::vector<char> seen(n + 1, 0);
    for (Vertex w : image) {
        if (w < 1 || w > n || seen[w])
            throw std::invalid_argument("not a permutation of 1..n");
        seen[w] = 1;
    }
}

inline Edge apply_permutation(Edge e, std::span<const Vertex> image) {
    return Edge(image[e.u - 1], image[e.v - 1]);
}

inline Path apply_permutation(const Path& p, std::span<const Vertex> image) {
    std::vector<Vertex> seq;
    seq.reserve(p.vertices.size());
    for (Vertex w : p.vertices) seq.push_back(image[w - 1]);
    return Path(std::move(seq));
}

inline LabeledGraph apply_permutation(const LabeledGraph& g, std::span<const Vertex> image) {
    check_permutation(image, g.n);
    LabeledGraph out(g.n);
    out.edges.reserve(g.edges.size());
    for (Edge e : g.edges) out.edges.push_back(apply_permutation(e, image));
    std::sort(out.edges.begin(), out.edges.end());
    return out;
}

inline PathDecomposition apply_permutation(const PathDecomposition& d,
                                           std::span<const Vertex> image) {
    PathDecomposition out;
    out.host = apply_permutation(d.host, image);
    out.paths.reserve(d.paths.size());
    for (const Path& p : d.paths) out.paths.push_back(apply_permutation(p, image));
    out.sort_paths();
    return out;
}

}  // namespace gallai
