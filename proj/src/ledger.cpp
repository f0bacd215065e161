#include "dmsa/ledger.hpp"

#include <cstdio>
#include <stdexcept>

namespace dmsa {

std::string_view to_string(Stage stage) {
    switch (stage) {
        case Stage::kLocalRank: return "local_rank";
        case Stage::kGlobalRank: return "global_rank";
        case Stage::kPivots: return "pivots";
        case Stage::kRedistribute: return "redistribute";
        case Stage::kAlign: return "align";
        case Stage::kAncestor: return "ancestor";
        case Stage::kGlobalAncestor: return "global_ancestor";
        case Stage::kFineTune: return "fine_tune";
        case Stage::kGlue: return "glue";
    }
    return "unknown";
}

std::string_view round_of(MessageKind kind) {
    switch (kind) {
        case MessageKind::kSampleSeqs:
        case MessageKind::kSampleRanks:
        case MessageKind::kPivots: return "round1";
        case MessageKind::kSeqBatch: return "round2";
        case MessageKind::kLocalAncestor:
        case MessageKind::kGlobalAncestor: return "ancestor";
        case MessageKind::kTunedAlignment: return "gather";
    }
    return "unknown";
}

CostLedger::CostLedger(std::size_t workers) : workers_(workers), costs_(kStageCount * workers) {
    if (workers == 0) throw std::invalid_argument("ledger needs at least one worker");
}

std::size_t CostLedger::index(Stage stage, std::size_t worker) const {
    if (worker >= workers_) throw std::out_of_range("ledger worker index out of range");
    return static_cast<std::size_t>(stage) * workers_ + worker;
}

void CostLedger::add_work(Stage stage, std::size_t worker, const WorkStats& work, double wall_ms) {
    auto& c = costs_[index(stage, worker)];
    c.work += work;
    c.wall_ms += wall_ms;
}

void CostLedger::record(const MessageRecord& message) {
    costs_[index(message.stage, message.from)].bytes_sent += message.bytes;
    messages_.push_back(message);
}

WorkStats CostLedger::total_work() const {
    WorkStats total;
    for (const auto& c : costs_) total += c.work;
    return total;
}

WorkStats CostLedger::stage_work(Stage stage) const {
    WorkStats total;
    for (std::size_t w = 0; w < workers_; ++w) total += cost(stage, w).work;
    return total;
}

std::uint64_t CostLedger::total_bytes() const {
    std::uint64_t total = 0;
    for (const auto& m : messages_) total += m.bytes;
    return total;
}

std::uint64_t CostLedger::bytes_of(MessageKind kind) const {
    std::uint64_t total = 0;
    for (const auto& m : messages_)
        if (m.kind == kind) total += m.bytes;
    return total;
}

std::uint64_t CostLedger::round_bytes(std::string_view round) const {
    std::uint64_t total = 0;
    for (const auto& m : messages_)
        if (round_of(m.kind) == round) total += m.bytes;
    return total;
}

double CostLedger::total_wall_ms() const {
    double total = 0.0;
    for (const auto& c : costs_) total += c.wall_ms;
    return total;
}

std::string ledger_report(const CostLedger& ledger, bool include_wall_time) {
    std::string out = include_wall_time ? "stage,worker,dp_cells,kmer_evals,bytes_sent,wall_ms\n"
                                        : "stage,worker,dp_cells,kmer_evals,bytes_sent\n";
    char buf[64];
    for (std::size_t s = 0; s < kStageCount; ++s) {
        const auto stage = static_cast<Stage>(s);
        for (std::size_t w = 0; w < ledger.workers(); ++w) {
            const auto& c = ledger.cost(stage, w);
            out += to_string(stage);
            out += ',' + std::to_string(w) + ',' + std::to_string(c.work.dp_cells) + ',' +
                   std::to_string(c.work.kmer_evals) + ',' + std::to_string(c.bytes_sent);
            if (include_wall_time) {
                std::snprintf(buf, sizeof buf, ",%.3f", c.wall_ms);
                out += buf;
            }
            out += '\n';
        }
    }
    return out;
}

std::string message_log_csv(const CostLedger& ledger) {
    std::string out = "from,to,kind,round,stage,bytes\n";
    for (const auto& m : ledger.messages()) {
        out += std::to_string(m.from) + ',' + std::to_string(m.to) + ',';
        out += to_string(m.kind);
        out += ',';
        out += round_of(m.kind);
        out += ',';
        out += to_string(m.stage);
        out += ',' + std::to_string(m.bytes) + '\n';
    }
    return out;
}

}  // namespace dmsa
