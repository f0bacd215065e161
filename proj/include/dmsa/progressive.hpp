#pragma once

#include <memory>
#include <span>
#include <string>

#include "dmsa/guide_tree.hpp"
#include "dmsa/kmer.hpp"
#include "dmsa/pairwise.hpp"
#include "dmsa/seqcore.hpp"
#include "dmsa/substitution.hpp"
#include "dmsa/work_stats.hpp"

namespace dmsa {

// Anything that turns a set of sequences into an alignment of exactly those
// sequences. Implementations must be safe to call concurrently.
class Aligner {
public:
    virtual ~Aligner() = default;
    virtual Alignment align(std::span<const Sequence> seqs, WorkStats* stats = nullptr) const = 0;
    virtual std::string name() const = 0;
};

// Merges child alignments bottom-up along `tree` with profile-profile
// alignment. Output rows follow the order of `seqs`.
Alignment progressive_align(std::span<const Sequence> seqs, const GuideTree& tree, const SubstitutionModel& model,
                            const GapModel& gaps, WorkStats* stats = nullptr);

// Adds sequences one at a time, in the given order, onto a growing alignment.
Alignment chain_align(std::span<const Sequence> seqs, const SubstitutionModel& model, const GapModel& gaps,
                      WorkStats* stats = nullptr);

// k-mer UPGMA guide tree followed by progressive profile alignment.
class BuiltinAligner final : public Aligner {
public:
    BuiltinAligner(KmerParams kmer, SubstitutionModel model, GapModel gaps)
        : kmer_(kmer), model_(std::move(model)), gaps_(gaps) {}

    Alignment align(std::span<const Sequence> seqs, WorkStats* stats = nullptr) const override;
    std::string name() const override { return "builtin"; }

    const SubstitutionModel& model() const noexcept { return model_; }
    const GapModel& gaps() const noexcept { return gaps_; }

private:
    KmerParams kmer_;
    SubstitutionModel model_;
    GapModel gaps_;
};

}  // namespace dmsa
