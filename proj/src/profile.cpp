#include "dmsa/profile.hpp"

#include <stdexcept>

#include "dmsa/error.hpp"

namespace dmsa {

Profile profile_of(const Alignment& alignment, const Alphabet& alphabet) {
    if (alignment.empty()) throw std::invalid_argument("profile of an empty alignment");
    const std::size_t c = alphabet.size();
    const std::size_t width = alignment.n_cols();
    std::vector<std::vector<std::size_t>> counts(width, std::vector<std::size_t>(c, 0));
    std::vector<std::size_t> gaps(width, 0);
    for (const auto& row : alignment.rows()) {
        for (std::size_t col = 0; col < width; ++col) {
            const char ch = row.text[col];
            if (ch == kGapChar) {
                ++gaps[col];
                continue;
            }
            const int idx = alphabet.index_of(ch);
            if (idx < 0) throw DataError("row '" + row.id + "' has residue '" + ch + "' outside the alphabet");
            ++counts[col][static_cast<std::size_t>(idx)];
        }
    }
    const double depth = static_cast<double>(alignment.depth());
    Profile profile;
    profile.depth = alignment.depth();
    profile.columns.reserve(width);
    for (std::size_t col = 0; col < width; ++col) {
        ProfileColumn pc;
        pc.freqs.resize(c);
        for (std::size_t i = 0; i < c; ++i) pc.freqs[i] = static_cast<double>(counts[col][i]) / depth;
        pc.gap_freq = static_cast<double>(gaps[col]) / depth;
        profile.columns.push_back(std::move(pc));
    }
    return profile;
}

double psp_score(const ProfileColumn& x, const ProfileColumn& y, const SubstitutionModel& model) {
    const std::size_t c = model.size();
    if (x.freqs.size() != c || y.freqs.size() != c)
        throw std::invalid_argument("profile column does not match the model alphabet");
    double total = 0.0;
    for (std::size_t i = 0; i < c; ++i) {
        if (x.freqs[i] == 0.0) continue;
        const double* row = model.row(i);
        double inner = 0.0;
        for (std::size_t j = 0; j < c; ++j) inner += y.freqs[j] * row[j];
        total += x.freqs[i] * inner;
    }
    return total;
}

}  // namespace dmsa
