#pragma once

#include <cstddef>
#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "dmsa/kmer.hpp"
#include "dmsa/ledger.hpp"
#include "dmsa/partition.hpp"
#include "dmsa/progressive.hpp"
#include "dmsa/seqcore.hpp"
#include "dmsa/substitution.hpp"

namespace dmsa {

struct RunConfig {
    std::size_t workers = 1;
    KmerParams kmer;
    std::size_t sample_k = 0;  // per-worker global-sample size; 0 means workers - 1
    GapModel gaps;
    std::string matrix = "pam200";  // bundled name or path to a table file
    Alphabet alphabet = Alphabet::protein();
    std::uint64_t seed = 0;  // recorded only; the pipeline itself makes no random choices
    std::optional<std::string> external_command;
    bool parallel = true;  // run worker stages on threads

    std::size_t effective_sample_k() const noexcept;
    void validate() const;
};

SubstitutionModel make_model(const RunConfig& config);
std::unique_ptr<Aligner> make_aligner(const RunConfig& config);

/// What the decomposition stages decided, per worker. Lists are sorted by
/// the rank they carry.
struct Decomposition {
    std::vector<std::vector<RankedSeq>> local_ranked;
    std::vector<std::vector<std::string>> global_sample;  // ids each worker contributed
    std::vector<std::vector<RankedSeq>> global_ranked;
    std::vector<std::vector<double>> regular_sample_ranks;
    PivotSet pivots;
    std::vector<std::vector<std::string>> buckets;  // ids, by input order within a bucket
};

struct PipelineResult {
    Alignment alignment;  // rows in input order
    CostLedger ledger;
    Decomposition decomposition;
};

// Initial placement: sequence i starts on worker i mod p.
std::vector<std::vector<std::size_t>> round_robin(std::size_t n, std::size_t p);

// The full pipeline over `config.workers` logical workers. Workers exchange
// data only through serialised messages, all of which land in the ledger.
// With one worker the decomposition and ancestor stages are skipped and the
// result equals `aligner.align(seqs)`.
PipelineResult run_pipeline(std::span<const Sequence> seqs, const RunConfig& config);
PipelineResult run_pipeline(std::span<const Sequence> seqs, const RunConfig& config, const Aligner& aligner);

// Only the ranking and redistribution stages; no alignment.
PipelineResult decompose(std::span<const Sequence> seqs, const RunConfig& config);

}  // namespace dmsa
