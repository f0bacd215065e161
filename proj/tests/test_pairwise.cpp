#include <stdexcept>
#include <doctest.h>

#include <random>
#include <string>

#include "dmsa/error.hpp"
#include "dmsa/pairwise.hpp"
#include "dmsa/profile.hpp"
#include "support/oracles.hpp"

using namespace dmsa;

namespace {

const Alphabet kDna = Alphabet::nucleotide();

std::string random_string(std::mt19937_64& rng, std::size_t len) {
    std::uniform_int_distribution<std::size_t> pick(0, 3);
    std::string s;
    for (std::size_t i = 0; i < len; ++i) s.push_back("ACGT"[pick(rng)]);
    return s;
}

std::string gapped(const EditScript& script, const std::string& s, EditOp consumes) {
    std::string out;
    std::size_t i = 0;
    for (auto op : script.ops) out.push_back(op == EditOp::kMatch || op == consumes ? s[i++] : kGapChar);
    return out;
}

}  // namespace

TEST_CASE("gap run cost is open plus length times extend") {
    const GapModel gaps;
    CHECK(gaps.run_cost(0) == 0.0);
    CHECK(gaps.run_cost(1) == -3.5);
    CHECK(gaps.run_cost(4) == -5.0);
    CHECK_THROWS_AS((GapModel{1.0, -0.5}.validate()), std::invalid_argument);
}

TEST_CASE("edit script text form") {
    const auto s = EditScript::from_string("MMABM");
    CHECK(s.length_a() == 4);
    CHECK(s.length_b() == 4);
    CHECK(s.to_string() == "MMABM");
    CHECK_THROWS_AS(EditScript::from_string("MX"), std::invalid_argument);
}

TEST_CASE("pairwise score equals brute force and the script reproduces it") {
    const auto unit = SubstitutionModel::unit(kDna);
    const GapModel gaps;
    std::mt19937_64 rng(3);
    for (int trial = 0; trial < 400; ++trial) {
        const auto a = random_string(rng, 1 + rng() % 5);
        const auto b = random_string(rng, 1 + rng() % 5);
        const auto r = align_pair(Sequence("a", a), Sequence("b", b), unit, gaps);
        CHECK(r.score == oracle::brute_force_best(a, b, unit, gaps));
        CHECK(r.script.length_a() == a.size());
        CHECK(r.script.length_b() == b.size());
        CHECK(oracle::score_script(r.script.to_string(), a, b, unit, gaps) == r.score);
    }
}

TEST_CASE("identical sequences align without gaps") {
    const auto unit = SubstitutionModel::unit(kDna);
    const auto r = align_pair(Sequence("a", "ACGTTGCA"), Sequence("b", "ACGTTGCA"), unit, GapModel{});
    CHECK(r.script.to_string() == "MMMMMMMM");
    CHECK(r.score == 16.0);
}

TEST_CASE("ties prefer match over gaps") {
    // Every script scores 0 here.
    const auto flat = SubstitutionModel::unit(kDna, 0.0, 0.0);
    const GapModel free{0.0, 0.0};
    const auto r = align_pair(Sequence("a", "AC"), Sequence("b", "GT"), flat, free);
    CHECK(r.script.to_string() == "MM");
}

TEST_CASE("dp cells are counted") {
    WorkStats stats;
    align_pair(Sequence("a", "ACGTA"), Sequence("b", "ACG"), SubstitutionModel::unit(kDna), GapModel{}, &stats);
    CHECK(stats.dp_cells == 15);
}

TEST_CASE("PSP score of two columns, hand computed") {
    const auto unit = SubstitutionModel::unit(kDna);
    ProfileColumn x{{0.5, 0.5, 0.0, 0.0}, 0.0};
    ProfileColumn y{{1.0, 0.0, 0.0, 0.0}, 0.0};
    // 0.5*1*2 + 0.5*1*(-1)
    CHECK(psp_score(x, y, unit) == doctest::Approx(0.5));
    ProfileColumn z{{0.25, 0.25, 0.0, 0.0}, 0.5};
    // 0.25*(0.5*2 + 0.5*-1) + 0.25*(0.5*-1 + 0.5*2)
    CHECK(psp_score(z, x, unit) == doctest::Approx(0.25));
}

TEST_CASE("profile of an alignment") {
    const Alignment aln({{"a", "AC-"}, {"b", "AGT"}});
    const auto prof = profile_of(aln, kDna);
    CHECK(prof.depth == 2);
    REQUIRE(prof.width() == 3);
    CHECK(prof.columns[0].freqs == std::vector<double>{1.0, 0.0, 0.0, 0.0});
    CHECK(prof.columns[1].freqs == std::vector<double>{0.0, 0.5, 0.5, 0.0});
    CHECK(prof.columns[2].gap_freq == 0.5);
}

TEST_CASE("profile alignment of single sequences matches pairwise alignment") {
    const auto unit = SubstitutionModel::unit(kDna);
    const GapModel gaps;
    std::mt19937_64 rng(5);
    for (int trial = 0; trial < 200; ++trial) {
        const Sequence a("a", random_string(rng, 1 + rng() % 12));
        const Sequence b("b", random_string(rng, 1 + rng() % 12));
        const auto direct = align_pair(a, b, unit, gaps);
        const auto prof = align_profiles(profile_of(Alignment::single(a), kDna),
                                         profile_of(Alignment::single(b), kDna), unit, gaps);
        CHECK(prof.score == direct.score);
        CHECK(prof.script == direct.script);
    }
}

TEST_CASE("gap costs opposite gappy columns are scaled down") {
    // Column 1 of X is half gap: an insertion of it costs half.
    const auto unit = SubstitutionModel::unit(kDna);
    const GapModel gaps{-2.0, -1.0};
    const auto x = profile_of(Alignment(std::vector<AlignedRow>{{"a", "AC"}, {"b", "A-"}}), kDna);
    const auto y = profile_of(Alignment::single(Sequence("c", "A")), kDna);
    const auto r = align_profiles(x, y, unit, gaps);
    CHECK(r.script.to_string() == "MA");
    CHECK(r.score == doctest::Approx(2.0 + 0.5 * (-3.0)));
}

TEST_CASE("applying and projecting scripts") {
    const Alignment a({{"a1", "AC"}, {"a2", "A-"}});
    const Alignment b = Alignment::single(Sequence("b", "AGC"));
    const auto script = EditScript::from_string("MBM");
    const auto merged = apply_script(script, a, b);
    CHECK(merged.rows() == std::vector<AlignedRow>{{"a1", "A-C"}, {"a2", "A--"}, {"b", "AGC"}});
    CHECK(project_a(script, a).rows() == std::vector<AlignedRow>{{"a1", "A-C"}, {"a2", "A--"}});
    CHECK_THROWS_AS(apply_script(EditScript::from_string("MM"), a, b), DataError);
}

TEST_CASE("pairwise gapped strings degap to the inputs") {
    const auto pam = SubstitutionModel::bundled("pam200", Alphabet::protein());
    const Sequence a("a", "MKTAYIAKQRQISFVKSHFSRQ");
    const Sequence b("b", "MKTAYIAKQISFVKSHFSRQLEER");
    const auto r = align_pair(a, b, pam, GapModel{});
    CHECK(degap(gapped(r.script, a.residues(), EditOp::kInsA)) == a.residues());
    CHECK(degap(gapped(r.script, b.residues(), EditOp::kInsB)) == b.residues());
}

TEST_CASE("bundled matrices are symmetric with sensible diagonals") {
    for (const char* name : {"pam200", "vtml240"}) {
        const auto m = SubstitutionModel::bundled(name, Alphabet::protein());
        CHECK(m.size() == 20);
        for (std::size_t i = 0; i < 20; ++i) {
            for (std::size_t j = 0; j < 20; ++j) CHECK(m.score(i, j) == m.score(j, i));
            CHECK(m.score(i, i) > 0.0);
        }
        CHECK(m.score('W', 'W') > m.score('A', 'A'));
    }
    // NCBI PAM200 integer values.
    const auto pam = SubstitutionModel::bundled("pam200", Alphabet::protein());
    CHECK(pam.score('W', 'W') == 18.0);
    CHECK(pam.score('A', 'A') == 3.0);
    CHECK(pam.score('C', 'C') == 12.0);
    CHECK(pam.score('Y', 'Y') == 11.0);
    const auto wild = SubstitutionModel::bundled("pam200", Alphabet::protein(true));
    CHECK(wild.score('X', 'W') == 0.0);
    CHECK_THROWS_AS(SubstitutionModel::bundled("blosum62", Alphabet::protein()), std::invalid_argument);
}

TEST_CASE("matrix parser") {
    const auto m = SubstitutionModel::parse("# tiny\n A C G T\nA 1 0 0 0\nC 0 1 0 0\nG 0 0 1 0\nT 0 0 0 1\n", kDna,
                                            "tiny");
    CHECK(m.score('A', 'A') == 1.0);
    CHECK(m.score('A', 'G') == 0.0);
    CHECK_THROWS_AS(SubstitutionModel::parse(" A C G T\nA 1 2 0 0\nC 0 1 0 0\nG 0 0 1 0\nT 0 0 0 1\n", kDna, "bad"),
                    DataError);
    CHECK_THROWS_AS(SubstitutionModel::parse(" A C G\nA 1 0 0\nC 0 1 0\nG 0 0 1\n", kDna, "short"), DataError);
}
