#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "dmsa/profile.hpp"
#include "dmsa/seqcore.hpp"
#include "dmsa/substitution.hpp"
#include "dmsa/work_stats.hpp"

namespace dmsa {

// kInsA consumes a column of A against a gap in B; kInsB the reverse.
enum class EditOp : std::uint8_t { kMatch, kInsA, kInsB };

struct EditScript {
    std::vector<EditOp> ops;

    std::size_t length_a() const noexcept;
    std::size_t length_b() const noexcept;
    std::size_t count(EditOp op) const noexcept;
    std::size_t size() const noexcept { return ops.size(); }

    std::string to_string() const;  // "M", "A", "B" per op
    static EditScript from_string(std::string_view text);

    bool operator==(const EditScript&) const = default;
};

struct PairwiseResult {
    EditScript script;
    double score = 0.0;
};

// Global affine-gap alignment of two residue strings. Terminal gaps are
// charged. Ties prefer match, then insert-A, then insert-B.
PairwiseResult align_pair(const Sequence& a, const Sequence& b, const SubstitutionModel& model,
                          const GapModel& gaps, WorkStats* stats = nullptr);

// Column-level global alignment of two profiles under PSP match scores. A gap
// opposite a column is charged (open/extend) * (1 - that column's gap_freq).
PairwiseResult align_profiles(const Profile& x, const Profile& y, const SubstitutionModel& model,
                              const GapModel& gaps, WorkStats* stats = nullptr);

// Realises `script` on two alignments: rows of `a` first, then rows of `b`.
Alignment apply_script(const EditScript& script, const Alignment& a, const Alignment& b);

// Re-gaps the A side of `script` alone: the returned alignment has one
// column per op, with gap columns where the op is kInsB.
Alignment project_a(const EditScript& script, const Alignment& a);

}  // namespace dmsa
