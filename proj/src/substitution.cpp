#include "dmsa/substitution.hpp"

#include <cctype>
#include <cmath>
#include <numeric>
#include <sstream>
#include <stdexcept>

#include "dmsa/error.hpp"
#include "dmsa/fasta.hpp"

namespace dmsa {

namespace detail {
extern const std::string_view kPam200Text;
extern const std::string_view kVtml240Text;
}  // namespace detail

namespace {

constexpr std::string_view kAminoOrder = "ARNDCQEGHILKMFPSTWYV";

// Dayhoff amino-acid frequencies, in kAminoOrder.
constexpr double kDayhoffFreqs[] = {0.087, 0.041, 0.040, 0.047, 0.033, 0.038, 0.050, 0.089, 0.034, 0.037,
                                    0.085, 0.081, 0.015, 0.040, 0.051, 0.070, 0.058, 0.010, 0.030, 0.065};

// Stationary frequencies implied by VTML120, in kAminoOrder.
constexpr double kVtmlFreqs[] = {0.0790, 0.0537, 0.0346, 0.0529, 0.0160, 0.0433, 0.0655, 0.0761, 0.0291, 0.0493,
                                 0.0761, 0.0505, 0.0242, 0.0357, 0.0490, 0.0732, 0.0460, 0.0151, 0.0415, 0.0893};

std::vector<double> background_from(const double* freqs, const Alphabet& alphabet) {
    std::vector<double> bg(alphabet.size(), 0.0);
    const auto wild = alphabet.wildcard();
    for (std::size_t i = 0; i < alphabet.size(); ++i) {
        const char c = alphabet.symbol(i);
        if (wild && c == *wild) continue;
        const auto pos = kAminoOrder.find(c);
        bg[i] = pos == std::string_view::npos ? 0.0 : freqs[pos];
    }
    double sum = std::accumulate(bg.begin(), bg.end(), 0.0);
    if (sum <= 0.0) {
        bg.assign(alphabet.size(), 1.0 / static_cast<double>(alphabet.size()));
        return bg;
    }
    for (auto& v : bg) v /= sum;
    return bg;
}

}  // namespace

void GapModel::validate() const {
    if (open > 0.0 || extend > 0.0) throw std::invalid_argument("gap penalties must be <= 0");
}

SubstitutionModel::SubstitutionModel(std::string name, Alphabet alphabet, std::vector<double> scores,
                                     std::vector<double> background)
    : name_(std::move(name)), alphabet_(std::move(alphabet)), scores_(std::move(scores)),
      background_(std::move(background)) {
    const std::size_t c = alphabet_.size();
    if (scores_.size() != c * c) throw std::invalid_argument("substitution table size does not match alphabet");
    if (background_.size() != c) throw std::invalid_argument("background size does not match alphabet");
    for (std::size_t i = 0; i < c; ++i)
        for (std::size_t j = 0; j < i; ++j)
            if (scores_[i * c + j] != scores_[j * c + i])
                throw DataError("substitution table '" + name_ + "' is not symmetric");
    const double total = std::accumulate(background_.begin(), background_.end(), 0.0);
    if (std::abs(total - 1.0) > 1e-9) throw DataError("background of '" + name_ + "' does not sum to 1");
}

double SubstitutionModel::score(char a, char b) const {
    const int i = alphabet_.index_of(a);
    const int j = alphabet_.index_of(b);
    if (i < 0 || j < 0) throw std::invalid_argument("residue outside the model alphabet");
    return score(static_cast<std::size_t>(i), static_cast<std::size_t>(j));
}

SubstitutionModel SubstitutionModel::parse(std::string_view text, const Alphabet& alphabet, std::string name) {
    std::istringstream in{std::string(text)};
    std::string line;
    std::vector<char> header;
    std::vector<std::vector<double>> rows;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        const auto first = line.find_first_not_of(" \t\r");
        if (first == std::string::npos || line[first] == '#') continue;
        std::istringstream fields(line);
        std::vector<std::string> tokens;
        for (std::string tok; fields >> tok;) tokens.push_back(tok);
        if (header.empty()) {
            for (const auto& tok : tokens) {
                if (tok.size() != 1) throw DataError(name + ": line " + std::to_string(line_no) + ": bad header token");
                header.push_back(static_cast<char>(std::toupper(static_cast<unsigned char>(tok[0]))));
            }
            continue;
        }
        std::size_t skip = (tokens.size() == header.size() + 1) ? 1 : 0;
        if (tokens.size() != header.size() + skip)
            throw DataError(name + ": line " + std::to_string(line_no) + ": expected " +
                            std::to_string(header.size()) + " scores");
        std::vector<double> row;
        for (std::size_t t = skip; t < tokens.size(); ++t) {
            try {
                row.push_back(std::stod(tokens[t]));
            } catch (const std::exception&) {
                throw DataError(name + ": line " + std::to_string(line_no) + ": bad number '" + tokens[t] + "'");
            }
        }
        rows.push_back(std::move(row));
    }
    if (header.empty() || rows.size() != header.size())
        throw DataError(name + ": expected a header and " + std::to_string(header.size()) + " rows");

    const std::size_t c = alphabet.size();
    std::vector<int> col_of(c, -1);
    const auto wild = alphabet.wildcard();
    for (std::size_t i = 0; i < c; ++i) {
        const char sym = alphabet.symbol(i);
        if (wild && sym == *wild) continue;
        for (std::size_t h = 0; h < header.size(); ++h)
            if (header[h] == sym) col_of[i] = static_cast<int>(h);
        if (col_of[i] < 0) throw DataError(name + ": no scores for residue '" + std::string(1, sym) + "'");
    }
    std::vector<double> scores(c * c, 0.0);
    for (std::size_t i = 0; i < c; ++i)
        for (std::size_t j = 0; j < c; ++j)
            if (col_of[i] >= 0 && col_of[j] >= 0) scores[i * c + j] = rows[col_of[i]][col_of[j]];
    return SubstitutionModel(std::move(name), alphabet, std::move(scores),
                             std::vector<double>(c, 1.0 / static_cast<double>(c)));
}

SubstitutionModel SubstitutionModel::from_file(const std::string& path, const Alphabet& alphabet) {
    return parse(read_file(path), alphabet, path);
}

SubstitutionModel SubstitutionModel::unit(const Alphabet& alphabet, double match, double mismatch) {
    const std::size_t c = alphabet.size();
    const auto wild = alphabet.wildcard();
    std::vector<double> scores(c * c);
    for (std::size_t i = 0; i < c; ++i)
        for (std::size_t j = 0; j < c; ++j) {
            const bool wildcard = wild && (alphabet.symbol(i) == *wild || alphabet.symbol(j) == *wild);
            scores[i * c + j] = wildcard ? 0.0 : (i == j ? match : mismatch);
        }
    return SubstitutionModel("unit", alphabet, std::move(scores), std::vector<double>(c, 1.0 / static_cast<double>(c)));
}

SubstitutionModel SubstitutionModel::bundled(std::string_view name, const Alphabet& alphabet) {
    if (name == "unit") return unit(alphabet);
    const double* freqs = nullptr;
    std::string_view text;
    if (name == "pam200") {
        text = detail::kPam200Text;
        freqs = kDayhoffFreqs;
    } else if (name == "vtml240") {
        text = detail::kVtml240Text;
        freqs = kVtmlFreqs;
    } else {
        throw std::invalid_argument("unknown substitution matrix '" + std::string(name) + "'");
    }
    auto parsed = parse(text, alphabet, std::string(name));
    std::vector<double> scores(parsed.size() * parsed.size());
    for (std::size_t i = 0; i < parsed.size(); ++i)
        for (std::size_t j = 0; j < parsed.size(); ++j) scores[i * parsed.size() + j] = parsed.score(i, j);
    return SubstitutionModel(std::string(name), alphabet, std::move(scores), background_from(freqs, alphabet));
}

}  // namespace dmsa
