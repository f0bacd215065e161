#include "dmsa/partition.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace dmsa {

void sort_by_rank(std::vector<RankedSeq>& ranked) {
    std::sort(ranked.begin(), ranked.end(), [](const RankedSeq& a, const RankedSeq& b) {
        if (a.rank != b.rank) return a.rank < b.rank;
        return a.id < b.id;
    });
}

std::size_t WorkerPlan::max_load() const noexcept {
    std::size_t best = 0;
    for (const auto& b : buckets) best = std::max(best, b.size());
    return best;
}

std::vector<std::size_t> WorkerPlan::counts() const {
    std::vector<std::size_t> out;
    out.reserve(buckets.size());
    for (const auto& b : buckets) out.push_back(b.size());
    return out;
}

std::vector<std::size_t> regular_sample_positions_with_repeats(std::size_t n, std::size_t count) {
    if (n == 0 || count == 0) throw std::invalid_argument("regular sampling needs a non-empty list and count");
    std::vector<std::size_t> pos;
    pos.reserve(count);
    for (std::size_t j = 0; j < count; ++j) pos.push_back((j + 1) * n / (count + 1));
    return pos;
}

std::vector<std::size_t> regular_sample_positions(std::size_t n, std::size_t count) {
    if (count == 0) throw std::invalid_argument("sample count must be at least 1");
    if (count > n)
        throw std::invalid_argument("cannot choose " + std::to_string(count) + " samples from " + std::to_string(n) +
                                    " items");
    return regular_sample_positions_with_repeats(n, count);
}

std::vector<std::string> choose_local_samples(std::span<const RankedSeq> ranked, std::size_t count) {
    for (std::size_t i = 1; i < ranked.size(); ++i)
        if (ranked[i].rank < ranked[i - 1].rank) throw std::invalid_argument("local samples need a rank-sorted list");
    std::vector<std::string> ids;
    for (std::size_t p : regular_sample_positions(ranked.size(), count)) ids.push_back(ranked[p].id);
    return ids;
}

PivotSet select_pivots(std::vector<double> sample_ranks, std::size_t p) {
    if (p < 2) throw std::invalid_argument("pivot selection needs at least two workers");
    if (sample_ranks.size() != p * (p - 1))
        throw std::invalid_argument("expected " + std::to_string(p * (p - 1)) + " sample ranks, got " +
                                    std::to_string(sample_ranks.size()));
    for (double r : sample_ranks)
        if (!std::isfinite(r)) throw std::invalid_argument("sample rank is not finite");
    std::sort(sample_ranks.begin(), sample_ranks.end());
    PivotSet set;
    set.pivots.reserve(p - 1);
    for (std::size_t j = 0; j + 1 < p; ++j) set.pivots.push_back(sample_ranks[p / 2 + j * p - 1]);
    return set;
}

std::size_t bucket_for(double rank, const PivotSet& pivots) {
    auto it = std::lower_bound(pivots.pivots.begin(), pivots.pivots.end(), rank);
    return static_cast<std::size_t>(it - pivots.pivots.begin());
}

WorkerPlan assign_buckets(std::span<const RankedSeq> ranked, const PivotSet& pivots) {
    if (!std::is_sorted(pivots.pivots.begin(), pivots.pivots.end()))
        throw std::invalid_argument("pivots must be sorted");
    WorkerPlan plan;
    plan.buckets.resize(pivots.bucket_count());
    plan.bucket_of.reserve(ranked.size());
    for (const auto& r : ranked) {
        const std::size_t b = bucket_for(r.rank, pivots);
        plan.buckets[b].push_back(r.id);
        plan.bucket_of.push_back(b);
    }
    return plan;
}

}  // namespace dmsa
