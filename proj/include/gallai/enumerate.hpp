#pragma once

// Exhaustive generation of the Gallai-bound path decompositions of K_n up
// to vertex relabeling.  Canonicalization is exact minimization over
// relabelings (never a heuristic); the census search breaks symmetry by
// pinning the lexicographically least path and deduplicates by canonical
// form afterwards.

#include <bit>
#include <chrono>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>

#include "gallai/core.hpp"

namespace gallai {

/// Relabeling-invariant fingerprint: the lexicographic minimum, over all
/// vertex permutations, of the sorted orientation-normalized path list.
/// Equal fingerprints exactly characterize isomorphic decompositions.
struct CanonicalForm {
    std::vector<std::vector<Vertex>> fingerprint;
    auto operator<=>(const CanonicalForm&) const = default;
};

namespace detail {

/// Image of the path list under a full permutation, normalized and sorted.
inline std::vector<std::vector<Vertex>> mapped_fingerprint(
    const std::vector<Path>& paths, const std::vector<Vertex>& image) {
    std::vector<std::vector<Vertex>> out;
    out.reserve(paths.size());
    for (const Path& p : paths) {
        std::vector<Vertex> seq;
        seq.reserve(p.vertices.size());
        for (Vertex w : p.vertices) seq.push_back(image[w - 1]);
        std::vector<Vertex> rev(seq.rbegin(), seq.rend());
        if (rev < seq) seq = std::move(rev);
        out.push_back(std::move(seq));
    }
    std::sort(out.begin(), out.end());
    return out;
}

}  // namespace detail

/// Exact canonical form of a decomposition of a complete host.
///
/// The minimum fingerprint must start with the sequence (1,2,...,L) where
/// L is the smallest path order, and the optimal permutation maps some
/// minimal-length path onto it exactly; so it suffices to try each such
/// path in both orientations and, for each, every assignment of the
/// remaining labels.  That covers all of the n! permutations that can
/// attain the minimum.
inline CanonicalForm canonical_form(const PathDecomposition& d) {
    if (d.host != complete_graph(d.host.n))
        throw std::invalid_argument("canonical_form: host must be a complete graph");
    if (d.paths.empty())
        throw std::invalid_argument("canonical_form: empty decomposition");
    VerificationReport r = verify_decomposition(d);
    if (!r.ok())
        throw std::invalid_argument("canonical_form: invalid decomposition: " + r.detail);

    const int n = d.host.n;
    std::size_t min_order = d.paths[0].vertices.size();
    for (const Path& p : d.paths) min_order = std::min(min_order, p.vertices.size());

    std::optional<std::vector<std::vector<Vertex>>> best;
    std::vector<Vertex> image(n, 0);
    for (const Path& p : d.paths) {
        if (p.vertices.size() != min_order) continue;
        for (int orient = 0; orient < 2; ++orient) {
            std::vector<Vertex> anchor = p.vertices;
            if (orient) std::reverse(anchor.begin(), anchor.end());
            std::fill(image.begin(), image.end(), 0);
            for (std::size_t i = 0; i < anchor.size(); ++i)
                image[anchor[i] - 1] = static_cast<Vertex>(i) + 1;
            std::vector<Vertex> free_vertices;
            for (Vertex v = 1; v <= n; ++v)
                if (image[v - 1] == 0) free_vertices.push_back(v);
            std::vector<Vertex> labels;
            for (Vertex l = static_cast<Vertex>(min_order) + 1; l <= n; ++l)
                labels.push_back(l);
            do {
                for (std::size_t i = 0; i < free_vertices.size(); ++i)
                    image[free_vertices[i] - 1] = labels[i];
                auto fp = detail::mapped_fingerprint(d.paths, image);
                if (!best || fp < *best) best = std::move(fp);
            } while (std::next_permutation(labels.begin(), labels.end()));
        }
    }
    return CanonicalForm{*best};
}

/// Number of vertex permutations mapping the path set onto itself.
inline std::uint64_t automorphism_count(const PathDecomposition& d) {
    const int n = d.host.n;
    std::set<std::vector<Vertex>> path_set;
    for (const Path& p : d.paths) path_set.insert(p.vertices);
    std::vector<Vertex> image(n);
    for (Vertex v = 1; v <= n; ++v) image[v - 1] = v;
    std::uint64_t count = 0;
    std::vector<Vertex> seq;
    do {
        bool fixes = true;
        for (const Path& p : d.paths) {
            seq.clear();
            for (Vertex w : p.vertices) seq.push_back(image[w - 1]);
            std::vector<Vertex> rev(seq.rbegin(), seq.rend());
            if (rev < seq) seq = std::move(rev);
            if (!path_set.count(seq)) {
                fixes = false;
                break;
            }
        }
        if (fixes) ++count;
    } while (std::next_permutation(image.begin(), image.end()));
    return count;
}

inline std::uint64_t factorial(int n) {
    std::uint64_t f = 1;
    for (int i = 2; i <= n; ++i) f *= static_cast<std::uint64_t>(i);
    return f;
}

/// One isomorphism class of the census: its fingerprint, a representative
/// decomposition relabeled into canonical position, and the exact number
/// of labeled decompositions in the class (n! over the automorphism count).
struct IsoClass {
    CanonicalForm canonical;
    PathDecomposition representative;
    std::uint64_t labeled_count = 0;
};

struct EnumerateOptions {
    int cap = 8;                                // reject larger n ...
    std::optional<double> budget_seconds;       // ... unless a budget is given
};

namespace detail {

// Backtracking generator for edge-disjoint path systems that cover K_n
// with exactly gallai_bound(n) paths (fewer can never cover all edges).
// Paths are produced in strictly increasing normalized order, so every
// path set appears exactly once.
class DecompositionSearch {
public:
    using Callback = std::function<void(const std::vector<std::vector<Vertex>>&)>;

    DecompositionSearch(int n, Callback cb)
        : n_(n), bound_(gallai_bound(n)), adj_(n + 1, 0), degree_(n + 1, 0), emit_(std::move(cb)) {
        for (Vertex u = 1; u <= n; ++u)
            for (Vertex v = u + 1; v <= n; ++v) add_edge(u, v);
        // next_path holds a reference into chosen_; it must never reallocate
        chosen_.reserve(static_cast<std::size_t>(bound_) + 1);
    }

    void set_deadline(std::chrono::steady_clock::time_point t) { deadline_ = t; }

    /// Enumerate all decompositions (no symmetry breaking).
    void run_all() { next_path({}); }

    /// Enumerate decompositions whose lexicographically least path is
    /// exactly (1, 2, ..., L), for every feasible L.  Every isomorphism
    /// class has such a member, so the classes found are complete.
    void run_anchored() {
        for (int order = min_first_order(); order <= n_; ++order) {
            std::vector<Vertex> first;
            for (Vertex v = 1; v <= order; ++v) first.push_back(v);
            for (std::size_t i = 0; i + 1 < first.size(); ++i) use_edge(first[i], first[i + 1]);
            chosen_.push_back(first);
            next_path(first);
            chosen_.pop_back();
            for (std::size_t i = 0; i + 1 < first.size(); ++i) add_edge(first[i], first[i + 1]);
        }
    }

private:
    int n_;
    int bound_;
    std::vector<std::uint32_t> adj_;  // remaining-edge adjacency bitmask, bit v = neighbor v
    std::vector<int> degree_;
    int edges_left_ = 0;
    std::vector<std::vector<Vertex>> chosen_;
    std::vector<Vertex> partial_;
    Callback emit_;
    std::optional<std::chrono::steady_clock::time_point> deadline_;
    long node_budget_check_ = 0;

    // smallest first-path order that leaves few enough edges for the rest
    int min_first_order() const {
        const int rest_capacity = (bound_ - 1) * (n_ - 1);
        int need = edges_left_ - rest_capacity;  // edges the first path must take
        return std::max(2, need + 1);
    }

    void add_edge(Vertex u, Vertex v) {
        adj_[u] |= 1u << v;
        adj_[v] |= 1u << u;
        ++degree_[u];
        ++degree_[v];
        ++edges_left_;
    }
    void use_edge(Vertex u, Vertex v) {
        adj_[u] &= ~(1u << v);
        adj_[v] &= ~(1u << u);
        --degree_[u];
        --degree_[v];
        --edges_left_;
    }
    bool has_edge(Vertex u, Vertex v) const { return adj_[u] & (1u << v); }

    void check_deadline() {
        if (deadline_ && ++node_budget_check_ % 4096 == 0 &&
            std::chrono::steady_clock::now() > *deadline_)
            throw std::runtime_error("enumeration budget exceeded");
    }

    bool slots_feasible() const {
        const int slots = bound_ - static_cast<int>(chosen_.size());
        if (edges_left_ > slots * (n_ - 1)) return false;
        for (Vertex v = 1; v <= n_; ++v)
            if (degree_[v] > 2 * slots) return false;
        return true;
    }

    void next_path(const std::vector<Vertex>& prev) {
        check_deadline();
        if (edges_left_ == 0) {
            if (static_cast<int>(chosen_.size()) == bound_) emit_(chosen_);
            return;
        }
        if (static_cast<int>(chosen_.size()) >= bound_) return;
        if (!slots_feasible()) return;
        // pick a start vertex; cmp tracks the relation to prev so only
        // strictly greater paths are produced
        for (Vertex a = 1; a <= n_; ++a) {
            if (degree_[a] == 0) continue;
            int cmp;  // -1: prefix below prev (dead), 0: equal so far, 1: above
            if (prev.empty())
                cmp = 1;
            else if (a < prev[0])
                continue;
            else
                cmp = a > prev[0] ? 1 : 0;
            partial_.push_back(a);
            extend(prev, cmp);
            partial_.pop_back();
        }
    }

    void extend(const std::vector<Vertex>& prev, int cmp) {
        check_deadline();
        const Vertex tip = partial_.back();
        const std::size_t depth = partial_.size();
        std::uint32_t nbrs = adj_[tip];
        while (nbrs) {
            const Vertex v = static_cast<Vertex>(std::countr_zero(nbrs));
            nbrs &= nbrs - 1;
            if (std::find(partial_.begin(), partial_.end(), v) != partial_.end()) continue;
            int ncmp = cmp;
            if (cmp == 0) {
                if (depth >= prev.size())
                    ncmp = 1;  // prev is a strict prefix
                else if (v < prev[depth])
                    continue;
                else if (v > prev[depth])
                    ncmp = 1;
            }
            partial_.push_back(v);
            use_edge(tip, v);
            // close the path here if normalized and strictly above prev
            const bool closed_equals_prev = ncmp == 0 && partial_.size() == prev.size();
            if (partial_.size() >= 2 && partial_.front() < partial_.back() &&
                !(ncmp == 0 && partial_.size() < prev.size()) && !closed_equals_prev) {
                chosen_.push_back(partial_);
                std::vector<Vertex> snapshot;
                snapshot.swap(partial_);
                next_path(chosen_.back());
                partial_.swap(snapshot);
                chosen_.pop_back();
            }
            extend(prev, ncmp);
            use_restore(tip, v);
            partial_.pop_back();
        }
    }

    void use_restore(Vertex u, Vertex v) { add_edge(u, v); }
};

}  // namespace detail

/// Every labeled Gallai-bound path decomposition of K_n by direct
/// generation, no symmetry breaking.  Kept to desk sizes (n <= 6); this is
/// the oracle the symmetry-broken enumerator is cross-checked against.
inline std::vector<PathDecomposition> labeled_decompositions(int n) {
    if (n < 2 || n > 6)
        throw std::invalid_argument("labeled_decompositions: n must lie in 2..6");
    std::vector<PathDecomposition> out;
    LabeledGraph host = complete_graph(n);
    detail::DecompositionSearch search(n, [&](const std::vector<std::vector<Vertex>>& lines) {
        PathDecomposition d;
        d.host = host;
        for (const auto& ln : lines) d.paths.push_back(Path(ln));
        d.sort_paths();
        out.push_back(std::move(d));
    });
    search.run_all();
    return out;
}

/// Count of labeled Gallai-bound decompositions of K_n (n <= 6).
inline std::uint64_t count_labeled(int n) {
    return static_cast<std::uint64_t>(labeled_decompositions(n).size());
}

/// The complete census of Gallai-bound path decompositions of K_n up to
/// relabeling, sorted by fingerprint, each class carrying its exact
/// labeled count.
inline std::vector<IsoClass> enumerate_decompositions(int n,
                                                      const EnumerateOptions& opts = {}) {
    if (n < 2) throw std::invalid_argument("enumerate_decompositions: n must be at least 2");
    if (n > 9)
        throw std::invalid_argument("enumerate_decompositions: exact canonicalization is "
                                    "limited to n <= 9");
    if (n > opts.cap && !opts.budget_seconds)
        throw std::invalid_argument("enumerate_decompositions: n exceeds the cap of " +
                                    std::to_string(opts.cap) +
                                    "; pass a time budget to override");

    LabeledGraph host = complete_graph(n);
    std::map<CanonicalForm, std::uint64_t> seen;  // fingerprint -> raw hits
    detail::DecompositionSearch search(n, [&](const std::vector<std::vector<Vertex>>& lines) {
        PathDecomposition d;
        d.host = host;
        for (const auto& ln : lines) d.paths.push_back(Path(ln));
        d.sort_paths();
        ++seen[canonical_form(d)];
    });
    if (opts.budget_seconds)
        search.set_deadline(std::chrono::steady_clock::now() +
                            std::chrono::duration_cast<std::chrono::steady_clock::duration>(
                                std::chrono::duration<double>(*opts.budget_seconds)));
    search.run_anchored();

    std::vector<IsoClass> out;
    out.reserve(seen.size());
    for (const auto& [form, hits] : seen) {
        IsoClass cls;
        cls.canonical = form;
        cls.representative.host = host;
        for (const auto& seq : form.fingerprint) cls.representative.paths.push_back(Path(seq));
        cls.representative.sort_paths();
        cls.labeled_count = factorial(n) / automorphism_count(cls.representative);
        out.push_back(std::move(cls));
    }
    return out;
}

}  // namespace gallai
