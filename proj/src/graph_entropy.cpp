#include "comove/graph_entropy.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace comove {

namespace {

void require_three_nodes(std::size_t n) {
    if (n < 3) throw std::invalid_argument("graph entropy needs at least 3 nodes, got " + std::to_string(n));
}

}  // namespace

AgentGraph::AgentGraph(std::size_t num_nodes) : n_(num_nodes), adj_(num_nodes * num_nodes, 0), degrees_(num_nodes, 0) {}

std::size_t AgentGraph::num_edges() const noexcept {
    std::size_t twice = 0;
    for (auto k : degrees_) twice += k;
    return twice / 2;
}

void AgentGraph::add_edge(std::size_t i, std::size_t j) {
    if (i >= n_ || j >= n_) throw std::out_of_range("edge endpoint out of range");
    if (i == j || has_edge(i, j)) return;
    adj_[i * n_ + j] = adj_[j * n_ + i] = 1;
    ++degrees_[i];
    ++degrees_[j];
}

AgentGraph AgentGraph::complete(std::size_t n) {
    AgentGraph g(n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j) g.add_edge(i, j);
    return g;
}

AgentGraph threshold_graph(const DissimilarityMatrix& m, double tau) {
    if (!(tau > 0.0 && tau <= 1.0)) throw std::invalid_argument("threshold tau must lie in (0, 1]");
    AgentGraph g(m.size());
    for (std::size_t i = 0; i < m.size(); ++i)
        for (std::size_t j = i + 1; j < m.size(); ++j)
            if (m(i, j) <= tau) g.add_edge(i, j);
    return g;
}

double node_entropy(const AgentGraph& g, std::size_t i) {
    require_three_nodes(g.num_nodes());
    const std::size_t k = g.degree(i);
    if (k == 0) return 0.0;
    return std::log(static_cast<double>(k)) / std::log(static_cast<double>(g.num_nodes() - 1));
}

EntropyResult network_entropy(const AgentGraph& g) {
    require_three_nodes(g.num_nodes());
    EntropyResult out;
    out.per_node.reserve(g.num_nodes());
    double sum = 0.0;
    for (std::size_t i = 0; i < g.num_nodes(); ++i) {
        out.per_node.push_back(node_entropy(g, i));
        sum += out.per_node.back();
    }
    out.network = sum / static_cast<double>(g.num_nodes());
    return out;
}

std::vector<double> walk_distribution(const AgentGraph& g, std::size_t i) {
    std::vector<double> p;
    const std::size_t k = g.degree(i);
    if (k == 0) return p;
    p.reserve(k);
    for (std::size_t j = 0; j < g.num_nodes(); ++j)
        if (g.has_edge(i, j)) p.push_back(1.0 / static_cast<double>(k));
    return p;
}

std::optional<double> literal_matrix_entropy(const DissimilarityMatrix& m) {
    const std::size_t n = m.size();
    require_three_nodes(n);
    double sum = 0.0;
    for (double v : m.matrix().values()) sum += v;
    if (!(sum > 0.0)) return std::nullopt;
    const double nd = static_cast<double>(n);
    return std::log(sum) / (nd * std::log(nd - 1.0));
}

}  // namespace comove
