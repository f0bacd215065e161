#pragma once

#include <span>
#include <string>

#include "dmsa/progressive.hpp"
#include "dmsa/seqcore.hpp"

namespace dmsa {

// Runs `command` through /bin/sh with the sequences as FASTA. The template
// may name `{in}` and `{out}` files; without `{in}` the FASTA goes to stdin,
// without `{out}` the aligned FASTA is read from stdout. The result is
// validated against the input (ids, widths, degapped residues) and returned
// in input order. Failures throw ExternalAlignerError.
Alignment external_align(std::span<const Sequence> seqs, const std::string& command, const Alphabet& alphabet);

class ExternalAligner final : public Aligner {
public:
    ExternalAligner(std::string command, Alphabet alphabet)
        : command_(std::move(command)), alphabet_(std::move(alphabet)) {}

    Alignment align(std::span<const Sequence> seqs, WorkStats* stats = nullptr) const override;
    std::string name() const override { return "cmd:" + command_; }

private:
    std::string command_;
    Alphabet alphabet_;
};

}  // namespace dmsa
