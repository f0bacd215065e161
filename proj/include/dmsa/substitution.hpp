#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "dmsa/seqcore.hpp"

namespace dmsa {

// Cost of a gap run of length L is open + L * extend.
struct GapModel {
    double open = -3.0;
    double extend = -0.5;

    double run_cost(std::size_t length) const noexcept {
        return length == 0 ? 0.0 : open + static_cast<double>(length) * extend;
    }
    void validate() const;
};

/// Log-odds substitution scores laid out over an Alphabet (row/column i is
/// `alphabet.symbol(i)`). The wildcard residue, if any, scores 0.
class SubstitutionModel {
public:
    SubstitutionModel(std::string name, Alphabet alphabet, std::vector<double> scores, std::vector<double> background);

    // Parses the whitespace table format: '#' comments, a header row of
    // residue letters, then one row per letter (an optional leading label is
    // skipped). Letters not in `alphabet` are dropped; every alphabet residue
    // except the wildcard must be present. Background is uniform.
    static SubstitutionModel parse(std::string_view text, const Alphabet& alphabet, std::string name);
    static SubstitutionModel from_file(const std::string& path, const Alphabet& alphabet);

    // "pam200", "vtml240" or "unit" (+2 match, -1 mismatch).
    static SubstitutionModel bundled(std::string_view name, const Alphabet& alphabet);
    static SubstitutionModel unit(const Alphabet& alphabet, double match = 2.0, double mismatch = -1.0);

    const std::string& name() const noexcept { return name_; }
    const Alphabet& alphabet() const noexcept { return alphabet_; }
    std::size_t size() const noexcept { return alphabet_.size(); }
    const std::vector<double>& background() const noexcept { return background_; }

    double score(std::size_t i, std::size_t j) const noexcept { return scores_[i * size() + j]; }
    double score(char a, char b) const;
    const double* row(std::size_t i) const noexcept { return scores_.data() + i * size(); }

private:
    std::string name_;
    Alphabet alphabet_;
    std::vector<double> scores_;
    std::vector<double> background_;
};

}  // namespace dmsa
