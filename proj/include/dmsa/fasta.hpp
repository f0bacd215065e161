#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "dmsa/seqcore.hpp"

namespace dmsa {

// Residues are uppercased and checked against `alphabet`. Errors (empty
// record, duplicate id, bad character) are DataError and name the line.
std::vector<Sequence> parse_fasta(std::string_view text, const Alphabet& alphabet);

// Gapped FASTA. Gap characters are accepted; each record must degap to a
// valid sequence. Row widths are not checked here.
std::vector<AlignedRow> parse_aligned_fasta(std::string_view text, const Alphabet& alphabet);

inline constexpr std::size_t kFastaLineWidth = 60;

std::string write_fasta(const Alignment& alignment);
std::string write_fasta(std::span<const Sequence> seqs);

std::string read_file(const std::string& path);
void write_file(const std::string& path, std::string_view contents);

}  // namespace dmsa
