#include "dmsa/guide_tree.hpp"

#include <sstream>
#include <stdexcept>
#include <utility>

namespace dmsa {

DistanceMatrix kmer_distance_matrix(std::span<const Sequence> seqs, const KmerParams& params, WorkStats* stats) {
    const auto vectors = count_all(seqs, params.k);
    DistanceMatrix d(seqs.size());
    for (std::size_t i = 0; i < seqs.size(); ++i)
        for (std::size_t j = i + 1; j < seqs.size(); ++j) d.set(i, j, kmer_distance(vectors[i], vectors[j], params, stats));
    return d;
}

GuideTree::GuideTree(std::vector<std::string> leaf_ids) : leaf_ids_(std::move(leaf_ids)), nodes_(leaf_ids_.size()) {
    if (leaf_ids_.empty()) throw std::invalid_argument("guide tree needs at least one leaf");
}

std::size_t GuideTree::join(std::size_t left, std::size_t right, double height) {
    if (left >= nodes_.size() || right >= nodes_.size() || left == right)
        throw std::invalid_argument("guide tree join on invalid nodes");
    nodes_.push_back({left, right, height});
    return nodes_.size() - 1;
}

std::string GuideTree::newick() const {
    std::ostringstream out;
    out.precision(6);
    auto emit = [&](auto&& self, std::size_t node, double parent_height) -> void {
        const auto& n = nodes_[node];
        if (n.is_leaf()) {
            out << leaf_ids_[node];
        } else {
            out << '(';
            self(self, n.left, n.height);
            out << ',';
            self(self, n.right, n.height);
            out << ')';
        }
        if (node != root()) out << ':' << (parent_height - n.height);
    };
    emit(emit, root(), 0.0);
    out << ';';
    return out.str();
}

GuideTree upgma(std::span<const std::string> ids, const DistanceMatrix& distances) {
    const std::size_t n = ids.size();
    if (distances.size() != n) throw std::invalid_argument("distance matrix size does not match id count");
    GuideTree tree(std::vector<std::string>(ids.begin(), ids.end()));
    if (n == 1) return tree;

    struct Cluster {
        std::size_t node;
        std::size_t size;
        std::string min_id;
    };
    std::vector<Cluster> clusters;
    std::vector<std::size_t> active;
    for (std::size_t i = 0; i < n; ++i) {
        clusters.push_back({i, 1, ids[i]});
        active.push_back(i);
    }
    // Cluster-level distances, indexed by slot in `clusters`.
    std::vector<std::vector<double>> d(n, std::vector<double>(n));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) d[i][j] = distances(i, j);

    auto key = [&](std::size_t a, std::size_t b) {
        const auto& x = clusters[a].min_id;
        const auto& y = clusters[b].min_id;
        return x < y ? std::pair<const std::string&, const std::string&>(x, y)
                     : std::pair<const std::string&, const std::string&>(y, x);
    };

    while (active.size() > 1) {
        std::size_t best_a = active[0], best_b = active[1];
        double best = d[best_a][best_b];
        for (std::size_t s = 0; s < active.size(); ++s) {
            for (std::size_t t = s + 1; t < active.size(); ++t) {
                const std::size_t a = active[s], b = active[t];
                const double v = d[a][b];
                if (v < best || (v == best && key(a, b) < key(best_a, best_b))) {
                    best = v;
                    best_a = a;
                    best_b = b;
                }
            }
        }
        if (clusters[best_b].min_id < clusters[best_a].min_id) std::swap(best_a, best_b);

        const std::size_t node = tree.join(clusters[best_a].node, clusters[best_b].node, best / 2.0);
        const double wa = static_cast<double>(clusters[best_a].size);
        const double wb = static_cast<double>(clusters[best_b].size);
        // Reuse best_a's slot for the merged cluster.
        for (std::size_t other : active) {
            if (other == best_a || other == best_b) continue;
            const double v = (wa * d[best_a][other] + wb * d[best_b][other]) / (wa + wb);
            d[best_a][other] = v;
            d[other][best_a] = v;
        }
        clusters[best_a] = {node, clusters[best_a].size + clusters[best_b].size, clusters[best_a].min_id};
        std::erase(active, best_b);
    }
    return tree;
}

GuideTree build_guide_tree(std::span<const Sequence> seqs, const KmerParams& params, WorkStats* stats) {
    if (seqs.empty()) throw std::invalid_argument("guide tree needs at least one sequence");
    const auto ids = ids_of(seqs);
    return upgma(ids, kmer_distance_matrix(seqs, params, stats));
}

}  // namespace dmsa
