#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <vector>

#include "comove/similarity.hpp"

namespace comove {

/// Undirected simple graph over the agents of one window.
class AgentGraph {
public:
    explicit AgentGraph(std::size_t num_nodes);

    std::size_t num_nodes() const noexcept { return n_; }
    bool has_edge(std::size_t i, std::size_t j) const noexcept { return adj_[i * n_ + j] != 0; }
    std::size_t degree(std::size_t i) const noexcept { return degrees_[i]; }
    std::size_t num_edges() const noexcept;

    /// Ignores self-loops and existing edges.
    void add_edge(std::size_t i, std::size_t j);

    static AgentGraph complete(std::size_t n);

private:
    std::size_t n_;
    std::vector<std::uint8_t> adj_;
    std::vector<std::size_t> degrees_;
};

/// a_ij = 1 iff i != j and m(i, j) <= tau.
AgentGraph threshold_graph(const DissimilarityMatrix& m, double tau);

/// ln(k_i) / ln(N - 1), with 0 for isolated nodes. Requires N >= 3.
double node_entropy(const AgentGraph& g, std::size_t i);

struct EntropyResult {
    std::vector<double> per_node;
    double network = 0.0;  ///< mean of per_node
};

/// Normalized network entropy: the mean normalized node entropy. Requires N >= 3.
EntropyResult network_entropy(const AgentGraph& g);

/// Uniform random-walk step distribution out of node i (1/k_i over its
/// neighbours); empty for isolated nodes.
std::vector<double> walk_distribution(const AgentGraph& g, std::size_t i);

/// Alternative score: ln(sum of all entries of m) / (N ln(N - 1)). Missing
/// when the matrix sums to zero. Requires N >= 3.
std::optional<double> literal_matrix_entropy(const DissimilarityMatrix& m);

}  // namespace comove
