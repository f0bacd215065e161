#include "dmsa/runtime.hpp"

#include <algorithm>
#include <chrono>
#include <exception>
#include <filesystem>
#include <functional>
#include <stdexcept>
#include <thread>
#include <unordered_map>

#include "dmsa/ancestor.hpp"
#include "dmsa/error.hpp"
#include "dmsa/external.hpp"
#include "dmsa/message.hpp"

namespace dmsa {

std::size_t RunConfig::effective_sample_k() const noexcept {
    if (sample_k != 0) return sample_k;
    return workers > 1 ? workers - 1 : 1;
}

void RunConfig::validate() const {
    if (workers < 1) throw std::invalid_argument("need at least one worker");
    kmer.validate();
    gaps.validate();
}

SubstitutionModel make_model(const RunConfig& config) {
    if (config.matrix == "pam200" || config.matrix == "vtml240" || config.matrix == "unit")
        return SubstitutionModel::bundled(config.matrix, config.alphabet);
    std::error_code ec;
    if (std::filesystem::is_regular_file(config.matrix, ec))
        return SubstitutionModel::from_file(config.matrix, config.alphabet);
    throw std::invalid_argument("unknown substitution matrix '" + config.matrix + "'");
}

std::unique_ptr<Aligner> make_aligner(const RunConfig& config) {
    if (config.external_command) return std::make_unique<ExternalAligner>(*config.external_command, config.alphabet);
    return std::make_unique<BuiltinAligner>(config.kmer, make_model(config), config.gaps);
}

std::vector<std::vector<std::size_t>> round_robin(std::size_t n, std::size_t p) {
    std::vector<std::vector<std::size_t>> out(p);
    for (std::size_t i = 0; i < n; ++i) out[i % p].push_back(i);
    return out;
}

namespace {

constexpr std::size_t kRoot = 0;

struct Worker {
    std::size_t index = 0;
    std::vector<IndexedSequence> home;
    std::unordered_map<std::string, std::size_t> home_pos;

    std::vector<Message> inbox;
    std::vector<Message> outbox;
    WorkStats stats;

    std::vector<RankedSeq> local_ranked;
    std::vector<IndexedSequence> sample;
    std::vector<RankedSeq> global_ranked;
    std::vector<double> regular_ranks;
    PivotSet pivots;
    std::vector<IndexedSequence> bucket;
    std::optional<Alignment> local;
    std::optional<Profile> global_ancestor;
    std::optional<TunedAlignment> tuned;

    // Root only.
    std::vector<std::size_t> ancestor_sources;
    std::optional<Alignment> glued;

    void send(std::size_t to, MessageKind kind, std::vector<std::uint8_t> payload) {
        outbox.push_back({static_cast<std::uint32_t>(index), static_cast<std::uint32_t>(to), kind, std::move(payload)});
    }

    // Messages of `kind`, in sender order; removes them from the inbox.
    std::vector<Message> take(MessageKind kind) {
        std::vector<Message> out;
        std::vector<Message> keep;
        for (auto& m : inbox) (m.kind == kind ? out : keep).push_back(std::move(m));
        inbox = std::move(keep);
        std::stable_sort(out.begin(), out.end(), [](const Message& a, const Message& b) { return a.from < b.from; });
        return out;
    }
};

class Pipeline {
public:
    Pipeline(std::span<const Sequence> seqs, const RunConfig& config, const Aligner* aligner)
        : seqs_(seqs), config_(config), aligner_(aligner), p_(config.workers), ledger_(config.workers),
          model_(make_model(config)) {
        config_.validate();
        if (seqs_.empty()) throw std::invalid_argument("pipeline needs at least one sequence");
        if (p_ > 1 && seqs_.size() < p_)
            throw std::invalid_argument("need at least as many sequences (" + std::to_string(seqs_.size()) +
                                        ") as workers (" + std::to_string(p_) + ")");
        const auto placement = round_robin(seqs_.size(), p_);
        workers_.resize(p_);
        for (std::size_t w = 0; w < p_; ++w) {
            workers_[w].index = w;
            for (std::size_t i : placement[w]) {
                workers_[w].home_pos.emplace(seqs_[i].id(), workers_[w].home.size());
                workers_[w].home.push_back({static_cast<std::uint32_t>(i), seqs_[i]});
            }
        }
    }

    void run_decomposition() {
        run_stage(Stage::kLocalRank, [this](Worker& w) { local_rank(w); });
        if (p_ == 1) return;
        run_stage(Stage::kGlobalRank, [this](Worker& w) { global_rank(w); });
        run_root(Stage::kPivots, [this](Worker& root) { choose_pivots(root); });
        run_stage(Stage::kRedistribute, [this](Worker& w) { redistribute(w); });
    }

    Alignment run_alignment() {
        if (p_ == 1) {
            auto& only = workers_[0];
            only.bucket = only.home;
            run_stage(Stage::kAlign, [this](Worker& w) { align_bucket(w); });
            return *only.local;
        }
        run_stage(Stage::kAlign, [this](Worker& w) { align_bucket(w); });
        run_stage(Stage::kAncestor, [this](Worker& w) { send_ancestor(w); });
        run_root(Stage::kGlobalAncestor, [this](Worker& root) { build_ancestor(root); });
        run_stage(Stage::kFineTune, [this](Worker& w) { tune(w); });
        run_root(Stage::kGlue, [this](Worker& root) { glue_all(root); });
        return *workers_[kRoot].glued;
    }

    Decomposition trace() const {
        Decomposition d;
        for (const auto& w : workers_) {
            d.local_ranked.push_back(w.local_ranked);
            std::vector<std::string> ids;
            for (const auto& s : w.sample) ids.push_back(s.seq.id());
            d.global_sample.push_back(std::move(ids));
            d.global_ranked.push_back(w.global_ranked);
            d.regular_sample_ranks.push_back(w.regular_ranks);
            std::vector<std::string> bucket;
            for (const auto& s : w.bucket) bucket.push_back(s.seq.id());
            d.buckets.push_back(std::move(bucket));
        }
        d.pivots = workers_[kRoot].pivots;
        return d;
    }

    CostLedger& ledger() { return ledger_; }

private:
    using Clock = std::chrono::steady_clock;

    template <class Fn>
    void run_stage(Stage stage, Fn&& fn) {
        std::vector<std::exception_ptr> errors(p_);
        std::vector<WorkStats> work(p_);
        std::vector<double> ms(p_, 0.0);
        auto body = [&](std::size_t w) {
            const auto before = workers_[w].stats;
            const auto t0 = Clock::now();
            try {
                fn(workers_[w]);
            } catch (...) {
                errors[w] = std::current_exception();
            }
            ms[w] = std::chrono::duration<double, std::milli>(Clock::now() - t0).count();
            work[w].dp_cells = workers_[w].stats.dp_cells - before.dp_cells;
            work[w].kmer_evals = workers_[w].stats.kmer_evals - before.kmer_evals;
        };
        if (config_.parallel && p_ > 1) {
            std::vector<std::jthread> threads;
            threads.reserve(p_);
            for (std::size_t w = 0; w < p_; ++w) threads.emplace_back(body, w);
        } else {
            for (std::size_t w = 0; w < p_; ++w) body(w);
        }
        for (std::size_t w = 0; w < p_; ++w) ledger_.add_work(stage, w, work[w], ms[w]);
        for (auto& e : errors)
            if (e) std::rethrow_exception(e);
        deliver(stage);
    }

    template <class Fn>
    void run_root(Stage stage, Fn&& fn) {
        auto& root = workers_[kRoot];
        const auto before = root.stats;
        const auto t0 = Clock::now();
        fn(root);
        const double ms = std::chrono::duration<double, std::milli>(Clock::now() - t0).count();
        WorkStats work;
        work.dp_cells = root.stats.dp_cells - before.dp_cells;
        work.kmer_evals = root.stats.kmer_evals - before.kmer_evals;
        ledger_.add_work(stage, kRoot, work, ms);
        deliver(stage);
    }

    // Barrier: every outbox is serialised, logged and decoded into the
    // receiver's inbox, in (sender, send order).
    void deliver(Stage stage) {
        for (auto& w : workers_) {
            for (auto& m : w.outbox) {
                if (m.to >= p_ || m.to == w.index) throw std::logic_error("message addressed to an invalid worker");
                const auto bytes = m.encode();
                ledger_.record({m.from, m.to, m.kind, bytes.size(), stage});
                workers_[m.to].inbox.push_back(Message::decode(bytes));
            }
            w.outbox.clear();
        }
    }

    std::vector<Sequence> plain(std::span<const IndexedSequence> items) const {
        std::vector<Sequence> out;
        out.reserve(items.size());
        for (const auto& s : items) out.push_back(s.seq);
        return out;
    }

    void local_rank(Worker& w) {
        const auto home = plain(w.home);
        const auto kmers = count_all(home, config_.kmer.k);
        const auto ranks = kmer_ranks(kmers, config_.kmer, &w.stats);
        w.local_ranked.clear();
        for (std::size_t i = 0; i < home.size(); ++i) w.local_ranked.push_back({home[i].id(), ranks[i], w.index});
        sort_by_rank(w.local_ranked);
        if (p_ == 1) return;

        const std::size_t count = std::min(config_.effective_sample_k(), w.home.size());
        for (std::size_t pos : regular_sample_positions(w.home.size(), count))
            w.sample.push_back(w.home[w.home_pos.at(w.local_ranked[pos].id)]);
        const auto payload = encode_sequences(w.sample);
        for (std::size_t to = 0; to < p_; ++to)
            if (to != w.index) w.send(to, MessageKind::kSampleSeqs, payload);
    }

    void global_rank(Worker& w) {
        std::vector<Sequence> sample;
        auto received = w.take(MessageKind::kSampleSeqs);
        std::size_t next = 0;
        for (std::size_t src = 0; src < p_; ++src) {
            if (src == w.index) {
                for (const auto& s : w.sample) sample.push_back(s.seq);
                continue;
            }
            if (next >= received.size() || received[next].from != src)
                throw std::logic_error("missing global sample from worker " + std::to_string(src));
            for (auto& s : decode_sequences(received[next++].payload)) sample.push_back(std::move(s.seq));
        }
        const auto sample_kmers = count_all(sample, config_.kmer.k);
        w.global_ranked.clear();
        for (const auto& item : w.home) {
            const auto v = count_kmers(item.seq, config_.kmer.k);
            w.global_ranked.push_back(
                {item.seq.id(), rank_against_sample(v, sample_kmers, config_.kmer, &w.stats), w.index});
        }
        sort_by_rank(w.global_ranked);

        // Fewer than p-1 local sequences: regular positions repeat.
        w.regular_ranks.clear();
        for (std::size_t pos : regular_sample_positions_with_repeats(w.global_ranked.size(), p_ - 1))
            w.regular_ranks.push_back(w.global_ranked[pos].rank);
        if (w.index != kRoot) w.send(kRoot, MessageKind::kSampleRanks, encode_reals(w.regular_ranks));
    }

    void choose_pivots(Worker& root) {
        std::vector<double> gathered = root.regular_ranks;
        for (const auto& m : root.take(MessageKind::kSampleRanks)) {
            const auto ranks = decode_reals(m.payload);
            gathered.insert(gathered.end(), ranks.begin(), ranks.end());
        }
        root.pivots = select_pivots(std::move(gathered), p_);
        const auto payload = encode_reals(root.pivots.pivots);
        for (std::size_t to = 1; to < p_; ++to) root.send(to, MessageKind::kPivots, payload);
    }

    void redistribute(Worker& w) {
        if (w.index != kRoot) {
            auto msgs = w.take(MessageKind::kPivots);
            if (msgs.size() != 1) throw std::logic_error("expected one pivot message");
            w.pivots.pivots = decode_reals(msgs.front().payload);
        }
        std::vector<std::vector<IndexedSequence>> outgoing(p_);
        for (const auto& r : w.global_ranked) outgoing[bucket_for(r.rank, w.pivots)].push_back(w.home[w.home_pos.at(r.id)]);
        for (std::size_t b = 0; b < p_; ++b) {
            auto& batch = outgoing[b];
            std::sort(batch.begin(), batch.end(),
                      [](const IndexedSequence& x, const IndexedSequence& y) { return x.input_index < y.input_index; });
            if (b == w.index) w.bucket = std::move(batch);
            else if (!batch.empty()) w.send(b, MessageKind::kSeqBatch, encode_sequences(batch));
        }
    }

    void align_bucket(Worker& w) {
        if (p_ > 1) {
            for (const auto& m : w.take(MessageKind::kSeqBatch))
                for (auto& s : decode_sequences(m.payload)) w.bucket.push_back(std::move(s));
            std::sort(w.bucket.begin(), w.bucket.end(),
                      [](const IndexedSequence& x, const IndexedSequence& y) { return x.input_index < y.input_index; });
        }
        if (w.bucket.empty()) return;
        const auto seqs = plain(w.bucket);
        Alignment aln = aligner_->align(seqs, &w.stats);
        aln.check_against(seqs);
        w.local = std::move(aln);
    }

    void send_ancestor(Worker& w) {
        if (!w.local) return;
        auto anc = extract_ancestor(*w.local, config_.alphabet, w.index);
        if (w.index != kRoot) w.send(kRoot, MessageKind::kLocalAncestor, encode_ancestor(anc));
        else own_ancestor_ = std::move(anc);
    }

    void build_ancestor(Worker& root) {
        std::vector<AncestorProfile> locals;
        if (own_ancestor_) locals.push_back(std::move(*own_ancestor_));
        for (const auto& m : root.take(MessageKind::kLocalAncestor)) locals.push_back(decode_ancestor(m.payload));
        std::sort(locals.begin(), locals.end(),
                  [](const AncestorProfile& a, const AncestorProfile& b) { return a.source_worker < b.source_worker; });
        root.ancestor_sources.clear();
        for (const auto& a : locals) root.ancestor_sources.push_back(a.source_worker);

        auto global = build_global_ancestor(locals, model_, config_.gaps, &root.stats);
        const auto payload = encode_profile(global.profile);
        for (std::size_t src : root.ancestor_sources)
            if (src != kRoot) root.send(src, MessageKind::kGlobalAncestor, payload);
        root.global_ancestor = std::move(global.profile);
    }

    void tune(Worker& w) {
        if (!w.local) return;
        if (w.index != kRoot) {
            auto msgs = w.take(MessageKind::kGlobalAncestor);
            if (msgs.size() != 1) throw std::logic_error("expected one global ancestor message");
            w.global_ancestor = decode_profile(msgs.front().payload);
        }
        auto tuned = fine_tune(*w.local, *w.global_ancestor, model_, config_.gaps, &w.stats);
        if (w.index != kRoot) w.send(kRoot, MessageKind::kTunedAlignment, encode_tuned(tuned));
        else w.tuned = std::move(tuned);
    }

    void glue_all(Worker& root) {
        std::vector<std::pair<std::size_t, TunedAlignment>> parts;
        if (root.tuned) parts.emplace_back(kRoot, std::move(*root.tuned));
        for (const auto& m : root.take(MessageKind::kTunedAlignment)) parts.emplace_back(m.from, decode_tuned(m.payload));
        std::sort(parts.begin(), parts.end(), [](const auto& a, const auto& b) { return a.first < b.first; });

        std::vector<EditScript> scripts;
        std::vector<Alignment> tuned;
        for (auto& [src, t] : parts) {
            scripts.push_back(std::move(t.script));
            tuned.push_back(std::move(t.alignment));
        }
        const auto frame = GlueFrame::from_scripts(root.global_ancestor->width(), std::move(scripts));
        root.glued = glue(frame, tuned).reordered(seqs_);
    }

    std::span<const Sequence> seqs_;
    RunConfig config_;
    const Aligner* aligner_;
    std::size_t p_;
    CostLedger ledger_;
    SubstitutionModel model_;
    std::vector<Worker> workers_;
    std::optional<AncestorProfile> own_ancestor_;
};

}  // namespace

PipelineResult run_pipeline(std::span<const Sequence> seqs, const RunConfig& config, const Aligner& aligner) {
    Pipeline pipeline(seqs, config, &aligner);
    pipeline.run_decomposition();
    Alignment aln = pipeline.run_alignment();
    aln.check_against(seqs);
    return PipelineResult{std::move(aln), std::move(pipeline.ledger()), pipeline.trace()};
}

PipelineResult run_pipeline(std::span<const Sequence> seqs, const RunConfig& config) {
    const auto aligner = make_aligner(config);
    return run_pipeline(seqs, config, *aligner);
}

PipelineResult decompose(std::span<const Sequence> seqs, const RunConfig& config) {
    Pipeline pipeline(seqs, config, nullptr);
    pipeline.run_decomposition();
    if (config.workers > 1) {
        // Buckets as they would arrive, without aligning.
        auto d = pipeline.trace();
        std::vector<std::vector<std::pair<std::size_t, std::string>>> buckets(config.workers);
        std::unordered_map<std::string, std::size_t> input_index;
        for (std::size_t i = 0; i < seqs.size(); ++i) input_index.emplace(seqs[i].id(), i);
        for (const auto& list : d.global_ranked)
            for (const auto& r : list) buckets[bucket_for(r.rank, d.pivots)].emplace_back(input_index.at(r.id), r.id);
        d.buckets.clear();
        for (auto& b : buckets) {
            std::sort(b.begin(), b.end());
            std::vector<std::string> ids;
            for (auto& [i, id] : b) ids.push_back(std::move(id));
            d.buckets.push_back(std::move(ids));
        }
        return PipelineResult{Alignment{}, std::move(pipeline.ledger()), std::move(d)};
    }
    auto d = pipeline.trace();
    d.buckets = {ids_of(seqs)};
    return PipelineResult{Alignment{}, std::move(pipeline.ledger()), std::move(d)};
}

}  // namespace dmsa
