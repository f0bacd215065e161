#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "dmsa/message.hpp"
#include "dmsa/work_stats.hpp"

namespace dmsa {

// Pipeline stages, in execution order.
enum class Stage : std::uint8_t {
    kLocalRank,
    kGlobalRank,
    kPivots,
    kRedistribute,
    kAlign,
    kAncestor,
    kGlobalAncestor,
    kFineTune,
    kGlue,
};
inline constexpr std::size_t kStageCount = 9;

std::string_view to_string(Stage stage);

// Communication round a message belongs to.
std::string_view round_of(MessageKind kind);

struct MessageRecord {
    std::size_t from = 0;
    std::size_t to = 0;
    MessageKind kind = MessageKind::kSampleSeqs;
    std::size_t bytes = 0;
    Stage stage = Stage::kLocalRank;

    bool operator==(const MessageRecord&) const = default;
};

struct StageCost {
    WorkStats work;
    std::uint64_t bytes_sent = 0;
    double wall_ms = 0.0;
};

/// Per-stage, per-worker counters plus the full message log of one run.
class CostLedger {
public:
    explicit CostLedger(std::size_t workers = 1);

    std::size_t workers() const noexcept { return workers_; }

    void add_work(Stage stage, std::size_t worker, const WorkStats& work, double wall_ms);
    void record(const MessageRecord& message);

    const StageCost& cost(Stage stage, std::size_t worker) const { return costs_.at(index(stage, worker)); }
    const std::vector<MessageRecord>& messages() const noexcept { return messages_; }

    WorkStats total_work() const;
    WorkStats stage_work(Stage stage) const;
    std::uint64_t total_bytes() const;
    std::uint64_t bytes_of(MessageKind kind) const;
    std::uint64_t round_bytes(std::string_view round) const;
    double total_wall_ms() const;

private:
    std::size_t index(Stage stage, std::size_t worker) const;

    std::size_t workers_;
    std::vector<StageCost> costs_;
    std::vector<MessageRecord> messages_;
};

// CSV with a header; one row per (stage, worker):
//   stage,worker,dp_cells,kmer_evals,bytes_sent,wall_ms
std::string ledger_report(const CostLedger& ledger, bool include_wall_time = true);

// CSV of the message log: from,to,kind,round,stage,bytes
std::string message_log_csv(const CostLedger& ledger);

}  // namespace dmsa
