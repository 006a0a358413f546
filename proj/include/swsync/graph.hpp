#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <span>
#include <utility>
#include <vector>

#include <Eigen/Dense>

namespace swsync {

using Edge = std::pair<int, int>;

/// Undirected simple graph on nodes 0..N-1, stored as sorted adjacency lists.
/// Immutable once constructed.
class Graph {
public:
    Graph() = default;

    /// Builds from an edge list. Throws InvalidArgument on self-loops,
    /// duplicate edges (in either orientation) or out-of-range endpoints.
    Graph(int node_count, std::span<const Edge> edges);

    int node_count() const noexcept { return static_cast<int>(adjacency_.size()); }
    std::size_t edge_count() const noexcept { return edge_count_; }

    std::span<const int> neighbors(int node) const { return adjacency_[static_cast<std::size_t>(node)]; }
    int degree(int node) const { return static_cast<int>(adjacency_[static_cast<std::size_t>(node)].size()); }
    bool has_edge(int i, int j) const;

    /// Edges as (i, j) with i < j, lexicographically sorted.
    std::vector<Edge> edges() const;

    friend bool operator==(const Graph&, const Graph&) = default;

private:
    std::vector<std::vector<int>> adjacency_;
    std::size_t edge_count_ = 0;
};

/// 2k-neighbour ring: node i joined to (i +- m) mod N for 1 <= m <= k.
struct SmallWorldParams {
    int node_count = 0;
    int half_degree = 1;
    double shortcut_rate = 0.0;  // shortcut probability p = shortcut_rate / node_count
    std::uint64_t seed = 0;

    double shortcut_probability() const { return shortcut_rate / node_count; }
    /// Throws InvalidArgument unless N > 2k >= 2, r >= 0 and r <= N.
    void validate() const;
};

Graph ring_lattice(int node_count, int half_degree);

/// Ring lattice plus an independent Bernoulli(r/N) shortcut on every pair that
/// is not already a ring edge. Deterministic for a fixed seed.
Graph generate_small_world(const SmallWorldParams& params);

Graph complete_graph(int node_count);

std::vector<int> degree_sequence(const Graph& g);

/// Number of 3-cliques, by intersecting sorted neighbour lists along each edge.
std::int64_t count_triangles(const Graph& g);

int connected_components(const Graph& g);

Eigen::MatrixXd adjacency_matrix(const Graph& g);
Eigen::MatrixXd laplacian(const Graph& g);

/// Relabels node i as perm[i].
Graph permute(const Graph& g, std::span<const int> perm);

// Edge-list text format: first data line N, then one "i j" per edge.
// Blank lines and lines starting with '#' are skipped.
void write_edge_list(const Graph& g, std::ostream& out);
Graph read_edge_list(std::istream& in);
void save_edge_list(const Graph& g, const std::filesystem::path& path);
Graph load_edge_list(const std::filesystem::path& path);

}  // namespace swsync
