#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <vector>

namespace dmsa {

struct RankedSeq {
    std::string id;
    double rank = 0.0;
    std::size_t home_worker = 0;
};

// Orders by rank, then id.
void sort_by_rank(std::vector<RankedSeq>& ranked);

// p-1 non-decreasing bucket boundaries.
struct PivotSet {
    std::vector<double> pivots;

    std::size_t bucket_count() const noexcept { return pivots.size() + 1; }
};

struct WorkerPlan {
    std::vector<std::vector<std::string>> buckets;
    std::vector<std::size_t> bucket_of;  // parallel to the input of assign_buckets

    std::size_t size(std::size_t bucket) const { return buckets.at(bucket).size(); }
    std::size_t max_load() const noexcept;
    std::vector<std::size_t> counts() const;
};

// Positions floor((j+1) * n / (count+1)), j = 0..count-1, into a list of n.
// count == n yields every position. Throws std::invalid_argument if
// count == 0 or count > n.
std::vector<std::size_t> regular_sample_positions(std::size_t n, std::size_t count);

// Same spacing rule, allowing count > n; positions then repeat.
std::vector<std::size_t> regular_sample_positions_with_repeats(std::size_t n, std::size_t count);

// Ids at the regular sample positions of a rank-sorted list.
std::vector<std::string> choose_local_samples(std::span<const RankedSeq> ranked, std::size_t count);

// Sorts the gathered sample ranks and keeps those at 1-based positions
// floor(p/2) + j*p, j = 0..p-2. Requires exactly p*(p-1) samples and p >= 2.
PivotSet select_pivots(std::vector<double> sample_ranks, std::size_t p);

// Index of the first pivot >= rank, or the last bucket.
std::size_t bucket_for(double rank, const PivotSet& pivots);

WorkerPlan assign_buckets(std::span<const RankedSeq> ranked, const PivotSet& pivots);

}  // namespace dmsa
