#include <stdexcept>
#include <doctest.h>

#include <string>
#include <vector>

#include "dmsa/error.hpp"
#include "dmsa/fasta.hpp"
#include "dmsa/seqcore.hpp"

using namespace dmsa;

TEST_CASE("alphabet indexes symbols in order and resolves the wildcard") {
    const auto plain = Alphabet::nucleotide();
    CHECK(plain.size() == 4);
    CHECK(plain.index_of('G') == 2);
    CHECK(plain.index_of('N') == -1);
    CHECK(plain.normalize('c') == 'C');
    CHECK_FALSE(plain.normalize('n').has_value());

    const auto wild = Alphabet::nucleotide(true);
    CHECK(wild.size() == 5);
    CHECK(wild.symbol(4) == 'N');
    CHECK(wild.normalize('r') == 'N');
    CHECK_FALSE(wild.normalize('-').has_value());

    CHECK_THROWS_AS(Alphabet("A"), std::invalid_argument);
    CHECK_THROWS_AS(Alphabet("AA"), std::invalid_argument);
    CHECK_THROWS_AS(Alphabet("A-"), std::invalid_argument);
}

TEST_CASE("sequence rejects empty ids, empty residues and gaps") {
    CHECK_NOTHROW(Sequence("a", "ACGT"));
    CHECK_THROWS_AS(Sequence("", "ACGT"), DataError);
    CHECK_THROWS_AS(Sequence("a", ""), DataError);
    CHECK_THROWS_AS(Sequence("a", "AC-GT"), DataError);
}

TEST_CASE("alignment shape checks") {
    CHECK_THROWS_WITH_AS(Alignment(std::vector<AlignedRow>{{"a", "AC-"}, {"b", "AC"}}), doctest::Contains("ragged"), DataError);
    CHECK_THROWS_WITH_AS(Alignment(std::vector<AlignedRow>{{"a", "AC"}, {"a", "AC"}}), doctest::Contains("duplicate id 'a'"), DataError);

    const Alignment aln({{"a", "A-C"}, {"b", "AGC"}});
    CHECK(aln.depth() == 2);
    CHECK(aln.n_cols() == 3);
    const std::vector<Sequence> seqs{{"b", "AGC"}, {"a", "AC"}};
    CHECK_NOTHROW(aln.check_against(seqs));
    CHECK(aln.reordered(seqs).rows().front().id == "b");

    const std::vector<Sequence> wrong{{"a", "AC"}, {"b", "AGG"}};
    CHECK_THROWS_WITH_AS(aln.check_against(wrong), doctest::Contains("'b'"), DataError);
    const std::vector<Sequence> missing{{"a", "AC"}, {"c", "AGC"}};
    CHECK_THROWS_AS(aln.check_against(missing), DataError);
    const std::vector<Sequence> fewer{{"a", "AC"}};
    CHECK_THROWS_WITH_AS(aln.check_against(fewer), doctest::Contains("unexpected id 'b'"), DataError);
}

TEST_CASE("degap strips gap characters only") {
    CHECK(degap("-A-C--") == "AC");
    CHECK(degap("AC") == "AC");
}

TEST_CASE("FASTA parsing") {
    const auto protein = Alphabet::protein();

    SUBCASE("multi-line records, lower case, blank lines") {
        const auto seqs = parse_fasta(">x first\nacd\nEF\n\n>y\nKL\n", protein);
        REQUIRE(seqs.size() == 2);
        CHECK(seqs[0].id() == "x");
        CHECK(seqs[0].residues() == "ACDEF");
        CHECK(seqs[1].residues() == "KL");
    }
    SUBCASE("duplicate id names the id") {
        CHECK_THROWS_WITH_AS(parse_fasta(">a\nAC\n>a\nAA\n", protein), doctest::Contains("duplicate id 'a'"),
                             DataError);
    }
    SUBCASE("empty record") {
        CHECK_THROWS_WITH_AS(parse_fasta(">a\n>b\nAC\n", protein), doctest::Contains("empty record 'a'"), DataError);
    }
    SUBCASE("foreign character without wildcard") {
        CHECK_THROWS_WITH_AS(parse_fasta(">a\nAC1\n", protein), doctest::Contains("'1'"), DataError);
        CHECK_THROWS_AS(parse_fasta(">a\nACB\n", protein), DataError);
        CHECK(parse_fasta(">a\nACB\n", Alphabet::protein(true))[0].residues() == "ACX");
    }
    SUBCASE("gaps are rejected in plain FASTA but accepted in aligned FASTA") {
        CHECK_THROWS_AS(parse_fasta(">a\nA-C\n", protein), DataError);
        const auto rows = parse_aligned_fasta(">a\nA.C\n>b\nAGC\n", protein);
        CHECK(rows[0].text == "A-C");
    }
    SUBCASE("data before the first header") {
        CHECK_THROWS_AS(parse_fasta("AC\n>a\nAC\n", protein), DataError);
    }
}

TEST_CASE("FASTA writing wraps at 60 columns and round-trips") {
    const std::string long_residues(130, 'A');
    const std::vector<Sequence> seqs{{"a", long_residues}, {"b", "CD"}};
    const auto text = write_fasta(seqs);
    CHECK(text.find(std::string(60, 'A') + "\n" + std::string(60, 'A') + "\n" + std::string(10, 'A') + "\n") !=
          std::string::npos);
    CHECK(parse_fasta(text, Alphabet::protein()) == seqs);

    const Alignment aln({{"a", "A-C"}, {"b", "AGC"}});
    CHECK(Alignment(parse_aligned_fasta(write_fasta(aln), Alphabet::protein())) == aln);
}
