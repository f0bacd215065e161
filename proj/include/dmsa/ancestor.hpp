#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "dmsa/pairwise.hpp"
#include "dmsa/profile.hpp"
#include "dmsa/seqcore.hpp"
#include "dmsa/substitution.hpp"
#include "dmsa/work_stats.hpp"

namespace dmsa {

// Summary of one worker's local alignment: its full profile and a gap-free
// consensus over the columns that are not majority gap.
struct AncestorProfile {
    Profile profile;
    Sequence consensus;
    std::size_t source_worker = 0;
};

// Consensus residue per column is the most frequent one, earliest in the
// alphabet on ties. Columns with gap_freq > 0.5 are left out of the
// consensus. Throws DataError if no column survives.
AncestorProfile extract_ancestor(const Alignment& local, const Alphabet& alphabet, std::size_t source_worker = 0);

struct GlobalAncestor {
    Alignment consensi;
    Profile profile;
};

// Aligns the consensi, adding them in the order given.
GlobalAncestor build_global_ancestor(std::span<const AncestorProfile> locals, const SubstitutionModel& model,
                                     const GapModel& gaps, WorkStats* stats = nullptr);

struct TunedAlignment {
    Alignment alignment;  // one column per script op
    EditScript script;    // A = local columns, B = ancestor columns
};

// Profile-aligns a local alignment to the global ancestor and re-gaps its rows
// into the resulting frame.
TunedAlignment fine_tune(const Alignment& local, const Profile& global_ancestor, const SubstitutionModel& model,
                         const GapModel& gaps, WorkStats* stats = nullptr);

/// Shared coordinate frame for gluing: ancestor columns plus, for every slot
/// (before ancestor column 0, between columns, after the last), how many
/// local columns each worker inserts there.
struct GlueFrame {
    std::size_t ancestor_cols = 0;
    std::vector<EditScript> scripts;               // one per worker, worker order
    std::vector<std::vector<std::size_t>> inserts;  // [worker][slot], slot in [0, ancestor_cols]

    static GlueFrame from_scripts(std::size_t ancestor_cols, std::vector<EditScript> scripts);

    std::size_t width() const noexcept;
};

// Stacks the tuned alignments (worker order) into the frame. Insertions that
// several workers make at the same slot are laid side by side in worker order,
// padded with gaps in everyone else's rows.
Alignment glue(const GlueFrame& frame, std::span<const Alignment> tuned);

}  // namespace dmsa
