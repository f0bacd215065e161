#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "dmsa/seqcore.hpp"

namespace dmsa {

// Branch rates are multiplied by tree_depth_scale (clamped below 1), which
// stands in for overall divergence: 0 gives identical leaves.
struct EvolveParams {
    std::size_t root_len = 100;
    std::size_t n_seqs = 16;
    double sub_rate = 0.05;       // per site per branch
    double indel_rate = 0.005;    // per site per branch; insertions and deletions equally likely
    double mean_indel_len = 2.0;  // geometric, >= 1
    double tree_depth_scale = 1.0;
    std::uint64_t seed = 1;

    void validate() const;
};

struct SynthData {
    std::vector<Sequence> seqs;
    Alignment truth;  // same row order as seqs
};

// Leaves are named "seq<i>". Columns that end up all-gap are dropped from
// the true alignment.
SynthData generate(const EvolveParams& params, const Alphabet& alphabet);

// One family split into clades: the root evolves along one stem branch per
// clade, with rates multiplied by stem_scale * (c + 1) / clusters for clade
// c, and each clade then grows its own balanced subtree. Clade c holds leaves seq<first>..; sizes differ by at
// most one.
struct ClusterParams {
    EvolveParams base;
    std::size_t clusters = 4;
    double stem_scale = 4.0;
};

SynthData generate_clustered(const ClusterParams& params, const Alphabet& alphabet);

}  // namespace dmsa
