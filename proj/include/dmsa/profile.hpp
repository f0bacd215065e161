#pragma once

#include <cstddef>
#include <vector>

#include "dmsa/seqcore.hpp"
#include "dmsa/substitution.hpp"

namespace dmsa {

// Residue frequencies of one alignment column, over the model alphabet, plus
// the gap frequency. freqs sum with gap_freq to 1.
struct ProfileColumn {
    std::vector<double> freqs;
    double gap_freq = 0.0;

    bool operator==(const ProfileColumn&) const = default;
};

struct Profile {
    std::vector<ProfileColumn> columns;
    std::size_t depth = 0;

    std::size_t width() const noexcept { return columns.size(); }
    bool operator==(const Profile&) const = default;
};

Profile profile_of(const Alignment& alignment, const Alphabet& alphabet);

// Expected log-odds score between two columns; gaps contribute nothing.
double psp_score(const ProfileColumn& x, const ProfileColumn& y, const SubstitutionModel& model);

}  // namespace dmsa
