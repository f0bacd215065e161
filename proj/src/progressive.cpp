#include "dmsa/progressive.hpp"

#include <optional>
#include <stdexcept>
#include <unordered_map>

#include "dmsa/error.hpp"

namespace dmsa {

namespace {

Alignment merge(const Alignment& a, const Alignment& b, const SubstitutionModel& model, const GapModel& gaps,
                WorkStats* stats) {
    const auto& alphabet = model.alphabet();
    const auto result = align_profiles(profile_of(a, alphabet), profile_of(b, alphabet), model, gaps, stats);
    return apply_script(result.script, a, b);
}

}  // namespace

Alignment progressive_align(std::span<const Sequence> seqs, const GuideTree& tree, const SubstitutionModel& model,
                            const GapModel& gaps, WorkStats* stats) {
    if (tree.leaf_count() != seqs.size()) throw DataError("guide tree leaf count does not match sequence count");
    std::unordered_map<std::string_view, std::size_t> by_id;
    for (std::size_t i = 0; i < seqs.size(); ++i) by_id.emplace(seqs[i].id(), i);

    const auto& nodes = tree.nodes();
    std::vector<std::optional<Alignment>> partial(nodes.size());
    for (std::size_t leaf = 0; leaf < tree.leaf_count(); ++leaf) {
        auto it = by_id.find(tree.leaf_ids()[leaf]);
        if (it == by_id.end()) throw DataError("guide tree leaf '" + tree.leaf_ids()[leaf] + "' has no sequence");
        partial[leaf] = Alignment::single(seqs[it->second]);
    }
    for (std::size_t node = tree.leaf_count(); node < nodes.size(); ++node) {
        auto& left = partial[nodes[node].left];
        auto& right = partial[nodes[node].right];
        partial[node] = merge(*left, *right, model, gaps, stats);
        left.reset();
        right.reset();
    }
    return partial[tree.root()]->reordered(seqs);
}

Alignment chain_align(std::span<const Sequence> seqs, const SubstitutionModel& model, const GapModel& gaps,
                      WorkStats* stats) {
    if (seqs.empty()) throw std::invalid_argument("chain alignment needs at least one sequence");
    Alignment acc = Alignment::single(seqs[0]);
    for (std::size_t i = 1; i < seqs.size(); ++i) acc = merge(acc, Alignment::single(seqs[i]), model, gaps, stats);
    return acc;
}

Alignment BuiltinAligner::align(std::span<const Sequence> seqs, WorkStats* stats) const {
    if (seqs.empty()) throw std::invalid_argument("cannot align an empty sequence set");
    const auto tree = build_guide_tree(seqs, kmer_, stats);
    return progressive_align(seqs, tree, model_, gaps_, stats);
}

}  // namespace dmsa
