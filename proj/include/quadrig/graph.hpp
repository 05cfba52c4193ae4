// Finite simple graphs on vertex set {0, ..., n-1}.  Edges are stored
// normalized (u < v) and sorted, so edge lists compare as sets.  A union-find
// with rollback supports the backtracking searches in the packing module.
#pragma once

#include <algorithm>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "base.hpp"

namespace quadrig {

struct Edge {
    int u{0}, v{0};

    Edge() = default;
    Edge(int a, int b) : u(std::min(a, b)), v(std::max(a, b)) {}

    bool operator==(const Edge& o) const { return u == o.u && v == o.v; }
    bool operator!=(const Edge& o) const { return !(*this == o); }
    bool operator<(const Edge& o) const { return u != o.u ? u < o.u : v < o.v; }

    bool touches(int w) const { return u == w || v == w; }
    int other(int w) const { return u == w ? v : u; }
};

inline std::string edge_str(const Edge& e) {
    return std::to_string(e.u) + "-" + std::to_string(e.v);
}

inline std::string edge_list_str(const std::vector<Edge>& es) {
    std::string s = "{";
    for (size_t i = 0; i < es.size(); i++) {
        if (i) s += ", ";
        s += edge_str(es[i]);
    }
    return s + "}";
}

class Graph {
  public:
    Graph() = default;

    // Validates vertex range, loop-freeness, and duplicate-freeness.
    Graph(int n, std::vector<Edge> edges) : n_(n), edges_(std::move(edges)) {
        if (n_ <= 0) throw Error(Err::InvalidGraph, "vertex count must be positive");
        for (auto& e : edges_) {
            if (e.u == e.v) throw Error(Err::InvalidGraph, "loop at " + std::to_string(e.u));
            if (e.u < 0 || e.v >= n_)
                throw Error(Err::InvalidGraph, "edge " + edge_str(e) + " out of range");
        }
        std::sort(edges_.begin(), edges_.end());
        if (std::adjacent_find(edges_.begin(), edges_.end()) != edges_.end())
            throw Error(Err::InvalidGraph, "duplicate edge");
        adj_.assign(n_, {});
        for (auto& e : edges_) {
            adj_[e.u].push_back(e.v);
            adj_[e.v].push_back(e.u);
        }
        for (auto& a : adj_) std::sort(a.begin(), a.end());
    }

    int n() const { return n_; }
    const std::vector<Edge>& edges() const { return edges_; }
    const std::vector<int>& neighbors(int v) const { return adj_[v]; }
    int degree(int v) const { return int(adj_[v].size()); }
    int edge_count() const { return int(edges_.size()); }

    bool has_edge(int u, int v) const {
        Edge e(u, v);
        return std::binary_search(edges_.begin(), edges_.end(), e);
    }
    bool has_edge(const Edge& e) const { return has_edge(e.u, e.v); }

    // Index of e in the sorted edge list; -1 when absent.
    int edge_index(const Edge& e) const {
        auto it = std::lower_bound(edges_.begin(), edges_.end(), e);
        if (it == edges_.end() || *it != e) return -1;
        return int(it - edges_.begin());
    }

    bool operator==(const Graph& o) const { return n_ == o.n_ && edges_ == o.edges_; }

  private:
    int n_{1};
    std::vector<Edge> edges_;
    std::vector<std::vector<int>> adj_;
};

struct UnionFind {
    std::vector<int> parent, rank_;

    explicit UnionFind(int n) : parent(n), rank_(n, 0) {
        for (int i = 0; i < n; i++) parent[i] = i;
    }

    int find(int x) {
        while (parent[x] != x) {
            parent[x] = parent[parent[x]];
            x = parent[x];
        }
        return x;
    }

    // False when x and y were already connected.
    bool unite(int x, int y) {
        int rx = find(x), ry = find(y);
        if (rx == ry) return false;
        if (rank_[rx] < rank_[ry]) std::swap(rx, ry);
        parent[ry] = rx;
        if (rank_[rx] == rank_[ry]) rank_[rx]++;
        return true;
    }
};

// Union by rank without path compression so that unions can be undone in
// reverse order.  Used by the orbit-assignment backtracking search.
struct RollbackUF {
    std::vector<int> parent, rank_;
    std::vector<std::pair<int, int>> log;  // (child root attached, old rank of parent root)

    explicit RollbackUF(int n) : parent(n), rank_(n, 0) {
        for (int i = 0; i < n; i++) parent[i] = i;
    }

    int find(int x) const {
        while (parent[x] != x) x = parent[x];
        return x;
    }

    bool unite(int x, int y) {
        int rx = find(x), ry = find(y);
        if (rx == ry) return false;
        if (rank_[rx] < rank_[ry]) std::swap(rx, ry);
        log.emplace_back(ry, rank_[rx]);
        parent[ry] = rx;
        if (rank_[rx] == rank_[ry]) rank_[rx]++;
        return true;
    }

    size_t mark() const { return log.size(); }

    void rollback(size_t m) {
        while (log.size() > m) {
            auto [child, old_rank] = log.back();
            log.pop_back();
            rank_[parent[child]] = old_rank;
            parent[child] = child;
        }
    }
};

inline bool is_connected(const Graph& g) {
    UnionFind uf(g.n());
    int comps = g.n();
    for (auto& e : g.edges())
        if (uf.unite(e.u, e.v)) comps--;
    return comps == 1;
}

// True when `edges` forms a spanning tree of {0, ..., n-1}.
inline bool is_spanning_tree(int n, const std::vector<Edge>& edges) {
    if (int(edges.size()) != n - 1) return false;
    UnionFind uf(n);
    for (auto& e : edges)
        if (!uf.unite(e.u, e.v)) return false;
    return true;
}

inline bool is_forest(int n, const std::vector<Edge>& edges) {
    UnionFind uf(n);
    for (auto& e : edges)
        if (!uf.unite(e.u, e.v)) return false;
    return true;
}

inline std::vector<Edge> sorted_edges(std::vector<Edge> es) {
    std::sort(es.begin(), es.end());
    return es;
}

}  // namespace quadrig
