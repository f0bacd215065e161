#include <stdexcept>
#include <doctest.h>

#include <cmath>
#include <random>
#include <string>
#include <vector>

#include "dmsa/kmer.hpp"
#include "support/oracles.hpp"

using namespace dmsa;

namespace {

std::string random_string(std::mt19937_64& rng, std::size_t len, const std::string& letters) {
    std::uniform_int_distribution<std::size_t> pick(0, letters.size() - 1);
    std::string s;
    for (std::size_t i = 0; i < len; ++i) s.push_back(letters[pick(rng)]);
    return s;
}

}  // namespace

TEST_CASE("k-mer counts agree with substring enumeration") {
    std::mt19937_64 rng(7);
    for (int trial = 0; trial < 200; ++trial) {
        const std::size_t k = 1 + trial % 5;
        const auto s = random_string(rng, 1 + rng() % 40, "ACGT");
        const auto v = count_kmers(s, k);
        const auto expected = oracle::kmer_counts(s, k);
        std::vector<std::pair<std::string, std::uint32_t>> want;
        for (const auto& [w, c] : expected) want.emplace_back(w, static_cast<std::uint32_t>(c));
        CHECK(v.as_strings() == want);
        CHECK(v.total() == (s.size() >= k ? s.size() - k + 1 : 0));
    }
}

TEST_CASE("pack and unpack are inverse") {
    const auto v = count_kmers("ACDEFGHI", 8);
    CHECK(v.unpack(KmerVector::pack("ACDEFGHI")) == "ACDEFGHI");
    CHECK(v.count("ACDEFGHI") == 1);
    CHECK(v.count("ACDEFGHK") == 0);
}

TEST_CASE("common k-mer fraction, hand example") {
    // X = AAAB: AA x2, AB x1. Y = AAB: AA x1, AB x1. min(n,m)-k+1 = 2.
    const auto x = count_kmers("AAAB", 2);
    const auto y = count_kmers("AAB", 2);
    CHECK(common_kmer_fraction(x, y) == doctest::Approx(1.0));
    const auto z = count_kmers("BBBA", 2);
    CHECK(common_kmer_fraction(x, z) == doctest::Approx(0.0));
}

TEST_CASE("distance uses natural log of delta plus F") {
    const KmerParams params{2, 0.02};
    const auto x = count_kmers("AAAB", 2);
    CHECK(kmer_distance(x, x, params) == doctest::Approx(-std::log(1.02)));
    const auto z = count_kmers("BBBA", 2);
    CHECK(kmer_distance(x, z, params) == doctest::Approx(-std::log(0.02)));
}

TEST_CASE("sequences shorter than k share nothing") {
    const KmerParams params{5, 0.02};
    const auto x = count_kmers("ACG", 5);
    const auto y = count_kmers("ACGTACGT", 5);
    CHECK(common_kmer_fraction(x, y) == 0.0);
    CHECK(kmer_distance(x, y, params) == doctest::Approx(-std::log(0.02)));
}

TEST_CASE("distance matches the oracle and is symmetric") {
    std::mt19937_64 rng(11);
    for (int trial = 0; trial < 300; ++trial) {
        const std::size_t k = 1 + trial % 6;
        const double delta = 0.01 + 0.01 * (trial % 5);
        const KmerParams params{k, delta};
        const auto a = random_string(rng, 1 + rng() % 60, "ACGT");
        const auto b = random_string(rng, 1 + rng() % 60, "ACGT");
        const auto va = count_kmers(a, k);
        const auto vb = count_kmers(b, k);
        const double d = kmer_distance(va, vb, params);
        CHECK(d == doctest::Approx(oracle::kmer_distance(a, b, k, delta)));
        CHECK(d == kmer_distance(vb, va, params));
        CHECK(d >= -std::log(1.0 + delta) - 1e-12);
    }
}

TEST_CASE("rank is the mean distance over the pool, self included") {
    const KmerParams params{3, 0.02};
    const std::vector<std::string> pool{"ACGTACGTAA", "ACGTTTGCAA", "GGGGCCCCAA", "ACGTACGTAC"};
    std::vector<KmerVector> vecs;
    for (const auto& s : pool) vecs.push_back(count_kmers(s, 3));
    WorkStats stats;
    const auto ranks = kmer_ranks(vecs, params, &stats);
    CHECK(stats.kmer_evals == pool.size() * pool.size());
    for (std::size_t i = 0; i < pool.size(); ++i) {
        double sum = 0.0;
        for (const auto& other : pool) sum += oracle::kmer_distance(pool[i], other, 3, 0.02);
        CHECK(ranks[i] == doctest::Approx(sum / static_cast<double>(pool.size())));
        CHECK(ranks[i] == kmer_rank(i, vecs, params));
    }

    // Against an external sample the sequence itself is not added.
    WorkStats sample_stats;
    const double r = rank_against_sample(vecs[0], std::span(vecs).subspan(1), params, &sample_stats);
    CHECK(sample_stats.kmer_evals == 3);
    double sum = 0.0;
    for (std::size_t j = 1; j < pool.size(); ++j) sum += oracle::kmer_distance(pool[0], pool[j], 3, 0.02);
    CHECK(r == doctest::Approx(sum / 3.0));
}

TEST_CASE("parameter validation") {
    CHECK_THROWS_AS((KmerParams{0, 0.02}.validate()), std::invalid_argument);
    CHECK_THROWS_AS((KmerParams{9, 0.02}.validate()), std::invalid_argument);
    CHECK_THROWS_AS((KmerParams{5, 0.0}.validate()), std::invalid_argument);
    CHECK_THROWS_AS((KmerParams{5, 0.2}.validate()), std::invalid_argument);
    CHECK_NOTHROW((KmerParams{8, 0.1}.validate()));

    const auto a = count_kmers("ACGTACGT", 3);
    const auto b = count_kmers("ACGTACGT", 4);
    CHECK_THROWS_AS(kmer_distance(a, b, KmerParams{3, 0.02}), std::invalid_argument);
    std::vector<KmerVector> empty;
    CHECK_THROWS_AS(rank_against_sample(a, empty, KmerParams{3, 0.02}), std::invalid_argument);
}
