#include <doctest.h>

#include <cmath>
#include <stdexcept>
#include <vector>

#include "dmsa/kmer.hpp"
#include "dmsa/quality.hpp"
#include "dmsa/synth.hpp"

using namespace dmsa;

TEST_CASE("no mutation: every leaf equals the root, no gaps") {
    const auto data = generate({80, 9, 0.0, 0.0, 2.0, 1.0, 4}, Alphabet::protein());
    REQUIRE(data.seqs.size() == 9);
    for (const auto& s : data.seqs) CHECK(s.residues() == data.seqs[0].residues());
    CHECK(data.truth.n_cols() == 80);
}

TEST_CASE("zero depth scale switches mutation off") {
    const auto data = generate({50, 6, 0.5, 0.2, 2.0, 0.0, 4}, Alphabet::protein());
    for (const auto& s : data.seqs) CHECK(s.residues() == data.seqs[0].residues());
}

TEST_CASE("single leaf") {
    const auto data = generate({25, 1, 0.3, 0.1, 2.0, 1.0, 4}, Alphabet::protein());
    CHECK(data.seqs.size() == 1);
    CHECK(data.truth.depth() == 1);
    CHECK(data.truth.rows()[0].text == data.seqs[0].residues());
}

TEST_CASE("true alignment is valid for many parameter settings") {
    for (std::uint64_t seed = 1; seed <= 40; ++seed) {
        const EvolveParams params{1 + seed * 3, 1 + seed % 13, 0.05 * (seed % 5), 0.02 * (seed % 4),
                                  1.0 + (seed % 3), 0.5 + 0.25 * (seed % 4), seed};
        const auto data = generate(params, seed % 2 ? Alphabet::protein() : Alphabet::nucleotide());
        CHECK(data.seqs.size() == params.n_seqs);
        CHECK_NOTHROW(data.truth.check_against(data.seqs));
        CHECK(ids_of(data.truth.sequences()) == ids_of(data.seqs));
        CHECK(q_score(data.truth, data.truth) == 1.0);
        for (std::size_t c = 0; c < data.truth.n_cols(); ++c) {
            bool any = false;
            for (const auto& row : data.truth.rows()) any = any || row.text[c] != kGapChar;
            CHECK(any);
        }
    }
}

TEST_CASE("deterministic per seed") {
    const EvolveParams params{60, 10, 0.1, 0.05, 2.0, 1.0, 123};
    const auto a = generate(params, Alphabet::protein());
    const auto b = generate(params, Alphabet::protein());
    CHECK(a.seqs == b.seqs);
    CHECK(a.truth == b.truth);
    auto other = params;
    other.seed = 124;
    CHECK_FALSE(generate(other, Alphabet::protein()).seqs == a.seqs);
}

TEST_CASE("substitutions always change the residue") {
    // With sub_rate near 1 every branch rewrites nearly every site.
    const auto data = generate({200, 2, 0.99, 0.0, 1.0, 1.0, 8}, Alphabet::nucleotide());
    std::size_t same = 0;
    for (std::size_t i = 0; i < 200; ++i) same += data.seqs[0].residues()[i] == data.seqs[1].residues()[i];
    // Each site differs from the root on both branches; equal leaves need the
    // same replacement letter, probability about 1/3.
    CHECK(same < 100);
}

// Symmetric indels give zero expected drift; the mean leaf length over 100
// seeds stays within 3 standard errors of root_len.
TEST_CASE("mean leaf length stays near the root length") {
    const std::size_t root_len = 200;
    std::vector<double> means;
    for (std::uint64_t seed = 1; seed <= 100; ++seed) {
        const auto data = generate({root_len, 8, 0.1, 0.01, 2.0, 1.0, seed}, Alphabet::protein());
        double total = 0.0;
        for (const auto& s : data.seqs) total += static_cast<double>(s.length());
        means.push_back(total / static_cast<double>(data.seqs.size()));
    }
    double mean = 0.0;
    for (double m : means) mean += m;
    mean /= static_cast<double>(means.size());
    double var = 0.0;
    for (double m : means) var += (m - mean) * (m - mean);
    var /= static_cast<double>(means.size() - 1);
    const double se = std::sqrt(var / static_cast<double>(means.size()));
    CHECK(std::abs(mean - static_cast<double>(root_len)) <= 3.0 * se);
}

TEST_CASE("clustered data forms clades of one family") {
    const auto data = generate_clustered({{120, 12, 0.02, 0.002, 2.0, 1.0, 5}, 3, 8.0}, Alphabet::protein());
    CHECK(data.seqs.size() == 12);
    CHECK_NOTHROW(data.truth.check_against(data.seqs));
    // Leaves of one clade are closer to each other than to other clades.
    const auto counts = count_all(data.seqs, 5);
    double within = 0.0, across = 0.0;
    int n_within = 0, n_across = 0;
    for (std::size_t i = 0; i < 12; ++i)
        for (std::size_t j = i + 1; j < 12; ++j) {
            const double d = kmer_distance(counts[i], counts[j], KmerParams{});
            if (i / 4 == j / 4) {
                within += d;
                ++n_within;
            } else {
                across += d;
                ++n_across;
            }
        }
    CHECK(within / n_within < across / n_across);
    // Clades share the root's columns.
    const auto pairs = aligned_pairs(data.truth);
    bool cross = false;
    for (const auto& p : pairs.pairs)
        cross = cross || std::stoi(pairs.ids[p.a].substr(3)) / 4 != std::stoi(pairs.ids[p.b].substr(3)) / 4;
    CHECK(cross);
}

TEST_CASE("parameter validation") {
    CHECK_THROWS_AS(generate({0, 4, 0.1, 0.0, 2.0, 1.0, 1}, Alphabet::protein()), std::invalid_argument);
    CHECK_THROWS_AS(generate({10, 0, 0.1, 0.0, 2.0, 1.0, 1}, Alphabet::protein()), std::invalid_argument);
    CHECK_THROWS_AS(generate({10, 4, 1.0, 0.0, 2.0, 1.0, 1}, Alphabet::protein()), std::invalid_argument);
    CHECK_THROWS_AS(generate({10, 4, 0.1, 0.0, 0.5, 1.0, 1}, Alphabet::protein()), std::invalid_argument);
}
