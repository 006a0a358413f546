#include "swsync/graph.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>
#include <string>

#include "swsync/error.hpp"

namespace swsync {

namespace {

// Uniform on (0, 1], built from the top 53 bits so the stream is reproducible
// across standard library implementations.
double uniform_open_closed(std::mt19937_64& rng) {
    return (static_cast<double>(rng() >> 11) + 1.0) * 0x1.0p-53;
}

bool is_ring_pair(int i, int j, int node_count, int half_degree) {
    const int gap = std::abs(j - i);
    return std::min(gap, node_count - gap) <= half_degree;
}

}  // namespace

Graph::Graph(int node_count, std::span<const Edge> edges) {
    if (node_count < 0) {
        throw InvalidArgument("node count must be non-negative");
    }
    adjacency_.resize(static_cast<std::size_t>(node_count));
    for (auto [i, j] : edges) {
        if (i < 0 || j < 0 || i >= node_count || j >= node_count) {
            throw InvalidArgument("edge (" + std::to_string(i) + ", " + std::to_string(j) +
                                  ") out of range for " + std::to_string(node_count) + " nodes");
        }
        if (i == j) {
            throw InvalidArgument("self-loop at node " + std::to_string(i));
        }
        adjacency_[static_cast<std::size_t>(i)].push_back(j);
        adjacency_[static_cast<std::size_t>(j)].push_back(i);
    }
    for (std::size_t v = 0; v < adjacency_.size(); ++v) {
        auto& nbrs = adjacency_[v];
        std::sort(nbrs.begin(), nbrs.end());
        if (std::adjacent_find(nbrs.begin(), nbrs.end()) != nbrs.end()) {
            throw InvalidArgument("duplicate edge at node " + std::to_string(v));
        }
    }
    edge_count_ = edges.size();
}

bool Graph::has_edge(int i, int j) const {
    if (i < 0 || j < 0 || i >= node_count() || j >= node_count()) {
        return false;
    }
    const auto nbrs = neighbors(i);
    return std::binary_search(nbrs.begin(), nbrs.end(), j);
}

std::vector<Edge> Graph::edges() const {
    std::vector<Edge> out;
    out.reserve(edge_count_);
    for (int i = 0; i < node_count(); ++i) {
        for (int j : neighbors(i)) {
            if (i < j) {
                out.emplace_back(i, j);
            }
        }
    }
    return out;
}

void SmallWorldParams::validate() const {
    if (half_degree < 1) {
        throw InvalidArgument("half degree k must be at least 1");
    }
    if (node_count <= 2 * half_degree) {
        throw InvalidArgument("node count N must exceed 2k (N = " + std::to_string(node_count) +
                              ", k = " + std::to_string(half_degree) + ")");
    }
    if (!(shortcut_rate >= 0.0) || !std::isfinite(shortcut_rate)) {
        throw InvalidArgument("shortcut rate r must be a finite non-negative number");
    }
    if (shortcut_rate > node_count) {
        throw InvalidArgument("shortcut probability r/N exceeds 1");
    }
}

Graph ring_lattice(int node_count, int half_degree) {
    SmallWorldParams{node_count, half_degree, 0.0, 0}.validate();
    std::vector<Edge> edges;
    edges.reserve(static_cast<std::size_t>(node_count) * static_cast<std::size_t>(half_degree));
    for (int i = 0; i < node_count; ++i) {
        for (int m = 1; m <= half_degree; ++m) {
            const int j = (i + m) % node_count;
            edges.emplace_back(std::min(i, j), std::max(i, j));
        }
    }
    return Graph(node_count, edges);
}

Graph generate_small_world(const SmallWorldParams& params) {
    params.validate();
    const int n = params.node_count;
    const int k = params.half_degree;
    const double p = params.shortcut_probability();

    std::vector<Edge> edges = ring_lattice(n, k).edges();
    if (p <= 0.0) {
        return Graph(n, edges);
    }

    // Walk the C(N,2) pair index space with geometric jumps between successes.
    std::mt19937_64 rng(params.seed);
    const double log_q = std::log1p(-p);
    const std::int64_t total = static_cast<std::int64_t>(n) * (n - 1) / 2;
    std::int64_t index = -1;
    int row = 0;
    std::int64_t row_start = 0;  // pair index of (row, row + 1)
    while (true) {
        const std::int64_t skip =
            p >= 1.0 ? 0 : static_cast<std::int64_t>(std::floor(std::log(uniform_open_closed(rng)) / log_q));
        if (skip >= total - index - 1) {
            break;
        }
        index += skip + 1;
        while (index >= row_start + (n - 1 - row)) {
            row_start += n - 1 - row;
            ++row;
        }
        const int col = row + 1 + static_cast<int>(index - row_start);
        if (!is_ring_pair(row, col, n, k)) {
            edges.emplace_back(row, col);
        }
    }
    return Graph(n, edges);
}

Graph complete_graph(int node_count) {
    std::vector<Edge> edges;
    for (int i = 0; i < node_count; ++i) {
        for (int j = i + 1; j < node_count; ++j) {
            edges.emplace_back(i, j);
        }
    }
    return Graph(node_count, edges);
}

std::vector<int> degree_sequence(const Graph& g) {
    std::vector<int> out(static_cast<std::size_t>(g.node_count()));
    for (int i = 0; i < g.node_count(); ++i) {
        out[static_cast<std::size_t>(i)] = g.degree(i);
    }
    return out;
}

std::int64_t count_triangles(const Graph& g) {
    std::int64_t closed = 0;
    for (int i = 0; i < g.node_count(); ++i) {
        const auto ni = g.neighbors(i);
        for (int j : ni) {
            if (j <= i) {
                continue;
            }
            const auto nj = g.neighbors(j);
            auto a = ni.begin();
            auto b = nj.begin();
            while (a != ni.end() && b != nj.end()) {
                if (*a < *b) {
                    ++a;
                } else if (*b < *a) {
                    ++b;
                } else {
                    ++closed;
                    ++a;
                    ++b;
                }
            }
        }
    }
    // every triangle is seen once from each of its three edges
    return closed / 3;
}

int connected_components(const Graph& g) {
    std::vector<int> parent(static_cast<std::size_t>(g.node_count()));
    std::iota(parent.begin(), parent.end(), 0);
    auto find = [&](int v) {
        while (parent[static_cast<std::size_t>(v)] != v) {
            auto& pv = parent[static_cast<std::size_t>(v)];
            pv = parent[static_cast<std::size_t>(pv)];
            v = pv;
        }
        return v;
    };
    int components = g.node_count();
    for (auto [i, j] : g.edges()) {
        const int ri = find(i);
        const int rj = find(j);
        if (ri != rj) {
            parent[static_cast<std::size_t>(ri)] = rj;
            --components;
        }
    }
    return components;
}

Eigen::MatrixXd adjacency_matrix(const Graph& g) {
    const int n = g.node_count();
    Eigen::MatrixXd a = Eigen::MatrixXd::Zero(n, n);
    for (int i = 0; i < n; ++i) {
        for (int j : g.neighbors(i)) {
            a(i, j) = 1.0;
        }
    }
    return a;
}

Eigen::MatrixXd laplacian(const Graph& g) {
    const int n = g.node_count();
    Eigen::MatrixXd l = -adjacency_matrix(g);
    for (int i = 0; i < n; ++i) {
        l(i, i) = g.degree(i);
    }
    return l;
}

Graph permute(const Graph& g, std::span<const int> perm) {
    if (static_cast<int>(perm.size()) != g.node_count()) {
        throw InvalidArgument("permutation size does not match node count");
    }
    std::vector<Edge> edges;
    for (auto [i, j] : g.edges()) {
        edges.emplace_back(perm[static_cast<std::size_t>(i)], perm[static_cast<std::size_t>(j)]);
    }
    return Graph(g.node_count(), edges);
}

}  // namespace swsync
