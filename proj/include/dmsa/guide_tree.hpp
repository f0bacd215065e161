#pragma once

#include <cstddef>
#include <limits>
#include <span>
#include <string>
#include <vector>

#include "dmsa/kmer.hpp"
#include "dmsa/seqcore.hpp"
#include "dmsa/work_stats.hpp"

namespace dmsa {

// Dense symmetric distance matrix.
class DistanceMatrix {
public:
    explicit DistanceMatrix(std::size_t n) : n_(n), d_(n * n, 0.0) {}

    std::size_t size() const noexcept { return n_; }
    double operator()(std::size_t i, std::size_t j) const noexcept { return d_[i * n_ + j]; }
    void set(std::size_t i, std::size_t j, double v) noexcept {
        d_[i * n_ + j] = v;
        d_[j * n_ + i] = v;
    }

private:
    std::size_t n_;
    std::vector<double> d_;
};

// k-mer distances over all unordered pairs (n(n-1)/2 evaluations).
DistanceMatrix kmer_distance_matrix(std::span<const Sequence> seqs, const KmerParams& params,
                                    WorkStats* stats = nullptr);

/// Rooted binary tree. Nodes [0, leaf_count) are leaves in input order;
/// internal nodes follow in merge order, so iterating them forward is a
/// valid post-order. The root is the last node.
class GuideTree {
public:
    static constexpr std::size_t kNone = std::numeric_limits<std::size_t>::max();

    struct Node {
        std::size_t left = kNone;
        std::size_t right = kNone;
        double height = 0.0;  // merge height; 0 for leaves
        bool is_leaf() const noexcept { return left == kNone; }
    };

    explicit GuideTree(std::vector<std::string> leaf_ids);

    std::size_t leaf_count() const noexcept { return leaf_ids_.size(); }
    const std::vector<std::string>& leaf_ids() const noexcept { return leaf_ids_; }
    const std::vector<Node>& nodes() const noexcept { return nodes_; }
    std::size_t root() const noexcept { return nodes_.size() - 1; }

    std::size_t join(std::size_t left, std::size_t right, double height);

    // Newick string, leaves labelled by id and branch lengths from heights.
    std::string newick() const;

private:
    std::vector<std::string> leaf_ids_;
    std::vector<Node> nodes_;
};

// UPGMA. Among equally close cluster pairs, the pair whose (smaller, larger)
// minimum-leaf-id tuple sorts first is merged; that cluster becomes the left
// child.
GuideTree upgma(std::span<const std::string> ids, const DistanceMatrix& distances);

GuideTree build_guide_tree(std::span<const Sequence> seqs, const KmerParams& params, WorkStats* stats = nullptr);

}  // namespace dmsa
