#pragma once

// Network model: dense symmetric 0/1 adjacency matrices, random and
// block-clustered generators, and edge-list ingestion/export.

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <istream>
#include <numeric>
#include <ostream>
#include <sstream>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "rmtnet/error.hpp"
#include "rmtnet/parallel.hpp"
#include "rmtnet/random.hpp"

namespace rmtnet {

// Symmetric binary matrix with zero diagonal. Only set_edge() mutates it, so
// the invariants hold by construction.
class AdjacencyMatrix {
public:
    AdjacencyMatrix() = default;

    explicit AdjacencyMatrix(std::size_t n) : n_(n), entries_(n * n, 0) {
        if (n == 0) throw invalid_dimension("adjacency matrix needs at least one node");
    }

    std::size_t size() const noexcept { return n_; }

    std::uint8_t operator()(std::size_t i, std::size_t j) const noexcept { return entries_[i * n_ + j]; }

    bool has_edge(std::size_t i, std::size_t j) const noexcept { return (*this)(i, j) != 0; }

    // Self-loops are rejected; callers that ingest raw data filter them first.
    void set_edge(std::size_t i, std::size_t j, bool present = true) {
        if (i >= n_ || j >= n_) throw invalid_dimension("edge index out of range");
        if (i == j) throw invalid_spec("self-loops are not representable");
        const std::uint8_t v = present ? 1 : 0;
        entries_[i * n_ + j] = v;
        entries_[j * n_ + i] = v;
    }

    std::size_t edge_count() const noexcept {
        std::size_t total = 0;
        for (auto v : entries_) total += v;
        return total / 2;
    }

    // Edges (i, j) with i < j in ascending (i, j) order.
    std::vector<std::pair<std::size_t, std::size_t>> edges() const {
        std::vector<std::pair<std::size_t, std::size_t>> out;
        for (std::size_t i = 0; i < n_; ++i)
            for (std::size_t j = i + 1; j < n_; ++j)
                if (has_edge(i, j)) out.emplace_back(i, j);
        return out;
    }

    const std::vector<std::uint8_t>& data() const noexcept { return entries_; }

    friend bool operator==(const AdjacencyMatrix&, const AdjacencyMatrix&) = default;

private:
    std::size_t n_ = 0;
    std::vector<std::uint8_t> entries_;
};

struct EnsembleSpec {
    std::size_t count = 20;
    std::size_t n = 1000;
    double p_intra = 0.1;
    std::vector<std::size_t> block_sizes{1000};
    double q_inter = 0.0;
    std::uint64_t seed = 0;

    // Mean degree pN of the unclustered model.
    double mean_degree() const noexcept { return p_intra * static_cast<double>(n); }

    void validate() const {
        if (count < 1) throw invalid_spec("ensemble count must be >= 1");
        if (block_sizes.empty()) throw invalid_spec("block list is empty");
        if (std::accumulate(block_sizes.begin(), block_sizes.end(), std::size_t{0}) != n)
            throw invalid_spec("block sizes must sum to n");
        if (!(p_intra >= 0.0 && p_intra <= 1.0)) throw invalid_spec("p_intra must lie in [0,1]");
        if (!(q_inter >= 0.0 && q_inter <= 1.0)) throw invalid_spec("q_inter must lie in [0,1]");
    }
};

namespace detail {

inline void check_probability(double p, const char* name) {
    if (!(p >= 0.0 && p <= 1.0)) throw invalid_parameter(std::string(name) + " must lie in [0,1]");
}

}  // namespace detail

// Block-clustered network. Pairs are visited row-major over i < j and each
// consumes exactly one engine draw, whether or not its probability is 0 or 1,
// so the stream layout is independent of the parameters.
inline AdjacencyMatrix generate_clustered(const std::vector<std::size_t>& block_sizes, double p_intra,
                                          double q_inter, std::uint64_t seed) {
    if (block_sizes.empty()) throw invalid_spec("block list is empty");
    for (auto b : block_sizes)
        if (b < 2) throw invalid_spec("every block needs at least 2 nodes");
    detail::check_probability(p_intra, "p_intra");
    detail::check_probability(q_inter, "q_inter");

    const std::size_t n = std::accumulate(block_sizes.begin(), block_sizes.end(), std::size_t{0});
    std::vector<std::size_t> block_of(n);
    for (std::size_t b = 0, start = 0; b < block_sizes.size(); start += block_sizes[b], ++b)
        std::fill_n(block_of.begin() + static_cast<std::ptrdiff_t>(start), block_sizes[b], b);

    AdjacencyMatrix a(n);
    engine eng(seed);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
            const double prob = block_of[i] == block_of[j] ? p_intra : q_inter;
            if (uniform01(eng) < prob) a.set_edge(i, j);
        }
    }
    return a;
}

// Erdős–Rényi G(n, p): the single-block case of generate_clustered.
inline AdjacencyMatrix generate_er(std::size_t n, double p, std::uint64_t seed) {
    if (n < 2) throw invalid_dimension("random network needs n >= 2");
    detail::check_probability(p, "p");
    return generate_clustered({n}, p, 0.0, seed);
}

// Member i is generated from mix_seed(spec.seed, i).
inline AdjacencyMatrix generate_member(const EnsembleSpec& spec, std::size_t index) {
    const auto s = mix_seed(spec.seed, static_cast<std::uint64_t>(index));
    if (spec.block_sizes.size() == 1) return generate_er(spec.n, spec.p_intra, s);
    return generate_clustered(spec.block_sizes, spec.p_intra, spec.q_inter, s);
}

inline std::vector<AdjacencyMatrix> generate_ensemble(const EnsembleSpec& spec, unsigned threads = 1) {
    spec.validate();
    std::vector<AdjacencyMatrix> out(spec.count);
    parallel_for(spec.count, threads, [&](std::size_t i) { out[i] = generate_member(spec, i); });
    return out;
}

// ---- edge lists ------------------------------------------------------------

struct IngestResult {
    AdjacencyMatrix matrix;
    std::vector<std::string> labels;  // labels[k] is the label of node k
    std::size_t self_loops_dropped = 0;
    std::size_t duplicate_edges = 0;
};

// Two whitespace-separated labels per line; '#' starts a comment. Labels are
// numbered in first-appearance order.
inline IngestResult ingest_edge_list(std::istream& in) {
    std::unordered_map<std::string, std::size_t> index_of;
    std::vector<std::string> labels;
    std::vector<std::pair<std::size_t, std::size_t>> raw;
    std::size_t loops = 0;

    auto intern = [&](const std::string& label) {
        auto [it, inserted] = index_of.try_emplace(label, labels.size());
        if (inserted) labels.push_back(label);
        return it->second;
    };

    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
        std::istringstream fields(line);
        std::string u, v, extra;
        if (!(fields >> u)) continue;  // blank or comment-only
        if (!(fields >> v)) throw parse_error(line_no, "expected two node labels");
        if (fields >> extra) throw parse_error(line_no, "unexpected third field '" + extra + "'");
        const auto iu = intern(u);
        const auto iv = intern(v);
        if (iu == iv) {
            ++loops;
            continue;
        }
        raw.emplace_back(iu, iv);
    }
    if (raw.empty()) throw empty_network("edge list contains no edges");

    IngestResult result{AdjacencyMatrix(labels.size()), std::move(labels), loops, 0};
    for (auto [i, j] : raw) {
        if (result.matrix.has_edge(i, j)) ++result.duplicate_edges;
        result.matrix.set_edge(i, j);
    }
    return result;
}

// One "i j" line per edge, ascending i then j.
inline void write_edge_list(std::ostream& out, const AdjacencyMatrix& a) {
    for (auto [i, j] : a.edges()) out << i << ' ' << j << '\n';
}

}  // namespace rmtnet
