#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "dmsa/seqcore.hpp"
#include "dmsa/work_stats.hpp"

namespace dmsa {

inline constexpr std::size_t kMaxKmerLength = 8;

struct KmerParams {
    std::size_t k = 5;
    double delta = 0.02;

    // Throws std::invalid_argument unless 1 <= k <= 8 and 0 < delta <= 0.1.
    void validate() const;
};

/// Sparse k-mer occurrence counts of one sequence. Words are packed one byte
/// per residue into a 64-bit key, so k is capped at 8.
class KmerVector {
public:
    using Entry = std::pair<std::uint64_t, std::uint32_t>;

    KmerVector(std::size_t k, std::size_t seq_len, std::vector<Entry> sorted_counts);

    std::size_t k() const noexcept { return k_; }
    std::size_t seq_len() const noexcept { return seq_len_; }
    // Sorted by packed key.
    const std::vector<Entry>& entries() const noexcept { return counts_; }
    std::size_t distinct() const noexcept { return counts_.size(); }
    std::uint64_t total() const noexcept;

    std::uint32_t count(std::string_view kmer) const;
    std::vector<std::pair<std::string, std::uint32_t>> as_strings() const;

    static std::uint64_t pack(std::string_view kmer);
    std::string unpack(std::uint64_t key) const;

private:
    std::size_t k_;
    std::size_t seq_len_;
    std::vector<Entry> counts_;
};

KmerVector count_kmers(const Sequence& seq, std::size_t k);
KmerVector count_kmers(std::string_view residues, std::size_t k);

// Fraction of common k-mers, normalised by the shorter sequence. 0 when the
// shorter sequence has fewer than k residues.
double common_kmer_fraction(const KmerVector& x, const KmerVector& y);

// -ln(delta + F). Throws std::invalid_argument on mismatched k.
double kmer_distance(const KmerVector& x, const KmerVector& y, const KmerParams& params,
                     WorkStats* stats = nullptr);

// Mean distance of pool[i] to every member of the pool, itself included.
double kmer_rank(std::size_t i, std::span<const KmerVector> pool, const KmerParams& params,
                 WorkStats* stats = nullptr);

// Mean distance of `seq` to each sample member.
double rank_against_sample(const KmerVector& seq, std::span<const KmerVector> sample, const KmerParams& params,
                           WorkStats* stats = nullptr);

// All ranks of a pool: |pool|^2 distance evaluations.
std::vector<double> kmer_ranks(std::span<const KmerVector> pool, const KmerParams& params,
                               WorkStats* stats = nullptr);

std::vector<KmerVector> count_all(std::span<const Sequence> seqs, std::size_t k);

}  // namespace dmsa
