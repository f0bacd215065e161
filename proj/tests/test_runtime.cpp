#include <stdexcept>
#include <doctest.h>

#include <map>
#include <numeric>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "dmsa/error.hpp"
#include "dmsa/runtime.hpp"
#include "dmsa/synth.hpp"

using namespace dmsa;

namespace {

RunConfig config_for(std::size_t p) {
    RunConfig c;
    c.workers = p;
    return c;
}

std::string random_over(std::mt19937_64& rng, const std::string& letters, std::size_t len) {
    std::uniform_int_distribution<std::size_t> pick(0, letters.size() - 1);
    std::string s;
    for (std::size_t i = 0; i < len; ++i) s.push_back(letters[pick(rng)]);
    return s;
}

// Cluster A: identical copies over one half of the alphabet. Cluster B:
// unrelated sequences over the other half. Interleaved 3:1 so both workers
// hold the same mix.
std::vector<Sequence> two_clusters(std::set<std::string>& cluster_a) {
    std::mt19937_64 rng(17);
    const auto a = random_over(rng, "ACDEFGHIKL", 50);
    std::vector<Sequence> seqs;
    for (int i = 0; i < 32; ++i) {
        const std::string id = "s" + std::to_string(i);
        if (i % 8 < 6) {
            seqs.emplace_back(id, a);
            cluster_a.insert(id);
        } else {
            seqs.emplace_back(id, random_over(rng, "MNPQRSTVWY", 40 + i));
        }
    }
    return seqs;
}

std::size_t count_kind(const CostLedger& ledger, MessageKind kind) {
    std::size_t n = 0;
    for (const auto& m : ledger.messages()) n += m.kind == kind;
    return n;
}

}  // namespace

TEST_CASE("one worker reproduces the aligner run directly") {
    for (std::uint64_t seed = 1; seed <= 5; ++seed) {
        const auto data = generate({70, 20, 0.15, 0.02, 2.0, 1.0, seed}, Alphabet::protein());
        const auto config = config_for(1);
        const auto result = run_pipeline(data.seqs, config);
        CHECK(result.alignment == make_aligner(config)->align(data.seqs));
        CHECK(result.ledger.total_bytes() == 0);
        CHECK(result.ledger.messages().empty());
    }
}

TEST_CASE("outputs are valid alignments of the input, in input order") {
    for (std::size_t p : {2, 3, 4}) {
        for (std::uint64_t seed = 1; seed <= 4; ++seed) {
            const auto data = generate({50, p + seed * 5, 0.2, 0.03, 2.0, 1.0, seed}, Alphabet::protein());
            const auto result = run_pipeline(data.seqs, config_for(p));
            CHECK_NOTHROW(result.alignment.check_against(data.seqs));
            CHECK(ids_of(result.alignment.sequences()) == ids_of(data.seqs));
        }
    }
}

TEST_CASE("as many sequences as workers is enough; fewer is rejected") {
    const auto data = generate({30, 4, 0.2, 0.03, 2.0, 1.0, 3}, Alphabet::protein());
    CHECK_NOTHROW(run_pipeline(data.seqs, config_for(4)).alignment.check_against(data.seqs));
    CHECK_THROWS_AS(run_pipeline(std::span(data.seqs).first(3), config_for(4)), std::invalid_argument);
    CHECK_THROWS_AS(run_pipeline(std::vector<Sequence>{}, config_for(1)), std::invalid_argument);
}

TEST_CASE("two separated clusters land in separate buckets") {
    std::set<std::string> cluster_a;
    const auto seqs = two_clusters(cluster_a);
    for (std::size_t sample_k : {1, 3}) {
        auto config = config_for(2);
        config.sample_k = sample_k;
        const auto d = decompose(seqs, config).decomposition;
        REQUIRE(d.buckets.size() == 2);
        CHECK(d.buckets[0].size() == cluster_a.size());
        for (const auto& id : d.buckets[0]) CHECK(cluster_a.count(id) == 1);
        for (const auto& id : d.buckets[1]) CHECK(cluster_a.count(id) == 0);

        const auto result = run_pipeline(seqs, config);
        CHECK_NOTHROW(result.alignment.check_against(seqs));
    }
}

TEST_CASE("N=512, p=4: bucket bound and redistribution bytes") {
    // Divergence low enough that ranks are informative; with no shared
    // k-mers every rank is -ln(delta) and the tie rule fills bucket 0.
    const auto data = generate({40, 512, 0.03, 0.003, 2.0, 1.0, 77}, Alphabet::protein());
    const auto result = run_pipeline(data.seqs, config_for(4));
    const auto& d = result.decomposition;
    std::size_t max_bucket = 0;
    for (const auto& b : d.buckets) max_bucket = std::max(max_bucket, b.size());
    CHECK(max_bucket <= 256);

    // Expected SEQ_BATCH bytes from the decomposition: one message per
    // (home, bucket) pair with at least one sequence crossing.
    std::map<std::string, std::size_t> home, bucket;
    for (const auto& list : d.global_ranked)
        for (const auto& r : list) home[r.id] = r.home_worker;
    for (std::size_t b = 0; b < d.buckets.size(); ++b)
        for (const auto& id : d.buckets[b]) bucket[id] = b;
    std::map<std::pair<std::size_t, std::size_t>, std::size_t> payload;
    std::size_t residue_bytes = 0;
    for (const auto& s : data.seqs) {
        const auto from = home.at(s.id());
        const auto to = bucket.at(s.id());
        if (from == to) continue;
        auto [it, fresh] = payload.emplace(std::pair{from, to}, 4);
        it->second += encoded_sequence_size(s);
        residue_bytes += s.length();
    }
    std::size_t expected = 0;
    for (const auto& [key, bytes] : payload) expected += Message::kHeaderSize + bytes;
    CHECK(result.ledger.round_bytes("round2") == expected);
    CHECK(result.ledger.bytes_of(MessageKind::kSeqBatch) == expected);
    CHECK(count_kind(result.ledger, MessageKind::kSeqBatch) == payload.size());
    CHECK(result.ledger.round_bytes("round2") >= residue_bytes);
}

TEST_CASE("message log is complete") {
    const std::size_t p = 4;
    const auto data = generate({40, 64, 0.2, 0.02, 2.0, 1.0, 5}, Alphabet::protein());
    const auto result = run_pipeline(data.seqs, config_for(p));
    const auto& ledger = result.ledger;

    std::uint64_t sent = 0;
    for (std::size_t s = 0; s < kStageCount; ++s)
        for (std::size_t w = 0; w < p; ++w) sent += ledger.cost(static_cast<Stage>(s), w).bytes_sent;
    CHECK(sent == ledger.total_bytes());

    std::size_t active = 0;
    for (const auto& b : result.decomposition.buckets) active += !b.empty();
    const std::size_t root_active = result.decomposition.buckets[0].empty() ? 0 : 1;
    CHECK(count_kind(ledger, MessageKind::kSampleSeqs) == p * (p - 1));
    CHECK(count_kind(ledger, MessageKind::kSampleRanks) == p - 1);
    CHECK(count_kind(ledger, MessageKind::kPivots) == p - 1);
    CHECK(count_kind(ledger, MessageKind::kLocalAncestor) == active - root_active);
    CHECK(count_kind(ledger, MessageKind::kGlobalAncestor) == active - root_active);
    CHECK(count_kind(ledger, MessageKind::kTunedAlignment) == active - root_active);

    // Rank records are one binary64 each.
    const std::uint64_t rank_msg = Message::kHeaderSize + 4 + 8 * (p - 1);
    CHECK(ledger.bytes_of(MessageKind::kSampleRanks) == (p - 1) * rank_msg);
    CHECK(ledger.bytes_of(MessageKind::kPivots) == (p - 1) * rank_msg);
    CHECK(ledger.round_bytes("round1") >= p * (p - 1) * 8);

    for (const auto& m : ledger.messages()) {
        CHECK(m.from != m.to);
        CHECK(m.to < p);
        if (m.kind == MessageKind::kSampleRanks || m.kind == MessageKind::kLocalAncestor ||
            m.kind == MessageKind::kTunedAlignment)
            CHECK(m.to == 0);
        if (m.kind == MessageKind::kPivots || m.kind == MessageKind::kGlobalAncestor) CHECK(m.from == 0);
    }
}

TEST_CASE("local-rank work is the sum of squared home sizes") {
    const auto data = generate({30, 100, 0.2, 0.0, 2.0, 1.0, 8}, Alphabet::protein());
    for (std::size_t p : {1, 2, 3, 4}) {
        const auto result = decompose(data.seqs, config_for(p));
        std::uint64_t expected = 0;
        for (const auto& home : round_robin(data.seqs.size(), p)) expected += home.size() * home.size();
        CHECK(result.ledger.stage_work(Stage::kLocalRank).kmer_evals == expected);
    }
}

TEST_CASE("global rank evaluates every home sequence against k*p samples") {
    const auto data = generate({30, 40, 0.2, 0.0, 2.0, 1.0, 8}, Alphabet::protein());
    auto config = config_for(4);
    config.sample_k = 2;
    const auto result = decompose(data.seqs, config);
    CHECK(result.ledger.stage_work(Stage::kGlobalRank).kmer_evals == 40 * 8);
    for (const auto& ids : result.decomposition.global_sample) CHECK(ids.size() == 2);
}

TEST_CASE("an empty bucket is skipped") {
    const std::vector<Sequence> seqs{{"a", "MKVLAG"}, {"b", "MKVLAG"}, {"c", "MKVLAG"},
                                     {"d", "MKVLAG"}, {"e", "MKVLAG"}, {"f", "MKVLAG"}};
    const auto result = run_pipeline(seqs, config_for(2));
    CHECK(result.decomposition.buckets[1].empty());
    CHECK_NOTHROW(result.alignment.check_against(seqs));
    CHECK(count_kind(result.ledger, MessageKind::kLocalAncestor) == 0);
    CHECK(count_kind(result.ledger, MessageKind::kTunedAlignment) == 0);
}

TEST_CASE("threaded and stepped schedules give identical results") {
    const auto data = generate({50, 48, 0.2, 0.03, 2.0, 1.0, 12}, Alphabet::protein());
    auto threaded = config_for(4);
    auto stepped = threaded;
    stepped.parallel = false;
    const auto a = run_pipeline(data.seqs, threaded);
    const auto b = run_pipeline(data.seqs, stepped);
    const auto c = run_pipeline(data.seqs, threaded);
    CHECK(a.alignment == b.alignment);
    CHECK(a.alignment == c.alignment);
    CHECK(a.ledger.messages() == b.ledger.messages());
    CHECK(ledger_report(a.ledger, false) == ledger_report(b.ledger, false));
    CHECK(ledger_report(a.ledger, false) == ledger_report(c.ledger, false));
}

TEST_CASE("ledger report has one row per stage and worker") {
    const auto data = generate({30, 12, 0.2, 0.03, 2.0, 1.0, 4}, Alphabet::protein());
    const auto result = run_pipeline(data.seqs, config_for(3));
    std::istringstream in(ledger_report(result.ledger));
    std::string line;
    std::getline(in, line);
    CHECK(line == "stage,worker,dp_cells,kmer_evals,bytes_sent,wall_ms");
    std::size_t rows = 0;
    while (std::getline(in, line)) ++rows;
    CHECK(rows == kStageCount * 3);

    std::istringstream log(message_log_csv(result.ledger));
    std::getline(log, line);
    CHECK(line == "from,to,kind,round,stage,bytes");
}

TEST_CASE("external aligner inside the pipeline") {
    // Substitution-only data has equal lengths, so `cat` is a valid aligner.
    const auto data = generate({30, 12, 0.2, 0.0, 2.0, 1.0, 6}, Alphabet::protein());
    auto config = config_for(3);
    config.external_command = "cat";
    CHECK_NOTHROW(run_pipeline(data.seqs, config).alignment.check_against(data.seqs));
    config.external_command = "false";
    CHECK_THROWS_AS(run_pipeline(data.seqs, config), ExternalAlignerError);
}

TEST_CASE("config validation") {
    const auto data = generate({30, 8, 0.2, 0.0, 2.0, 1.0, 6}, Alphabet::protein());
    auto config = config_for(0);
    CHECK_THROWS_AS(run_pipeline(data.seqs, config), std::invalid_argument);
    config = config_for(2);
    config.matrix = "nonexistent";
    CHECK_THROWS_AS(run_pipeline(data.seqs, config), std::invalid_argument);
    CHECK(config_for(4).effective_sample_k() == 3);
}
