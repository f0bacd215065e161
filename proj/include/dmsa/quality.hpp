#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "dmsa/seqcore.hpp"
#include "dmsa/substitution.hpp"

namespace dmsa {

/// Residue pairs placed in a common column. Rows are named by their index in
/// the sorted id list, so two sets over the same sequences compare directly.
struct PairSet {
    struct Pair {
        std::uint32_t a = 0;  // row index, a < b
        std::uint32_t ia = 0;  // residue index within row a
        std::uint32_t b = 0;
        std::uint32_t ib = 0;

        auto operator<=>(const Pair&) const = default;
    };

    std::vector<std::string> ids;  // sorted
    std::vector<Pair> pairs;        // sorted, unique

    std::size_t size() const noexcept { return pairs.size(); }
};

PairSet aligned_pairs(const Alignment& a);

// Number of pairs present in both sets. Throws DataError if the sets are over
// different ids.
std::size_t common_pairs(const PairSet& x, const PairSet& y);

// Recall of reference pairs; 1 when the reference has none.
double q_score(const Alignment& test, const Alignment& ref);
// Fraction of reference columns (with at least one residue) reproduced
// exactly as a test column.
double tc_score(const Alignment& test, const Alignment& ref);
// Precision of test pairs; 1 when the test has none.
double modeler_score(const Alignment& test, const Alignment& ref);

// Sum over row pairs of the induced pairwise score. Columns where both rows
// gap are dropped first; each maximal gap run in either row costs
// gaps.run_cost(length).
double sp_score(const Alignment& a, const SubstitutionModel& model, const GapModel& gaps,
                bool terminal_gaps = true);

}  // namespace dmsa
