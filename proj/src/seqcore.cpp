#include "dmsa/seqcore.hpp"

#include <algorithm>
#include <cctype>
#include <stdexcept>
#include <unordered_map>
#include <unordered_set>

#include "dmsa/error.hpp"

namespace dmsa {

Alphabet::Alphabet(std::string symbols, std::optional<char> wildcard)
    : symbols_(std::move(symbols)), wildcard_(wildcard) {
    if (wildcard_) symbols_.push_back(*wildcard_);
    index_.fill(-1);
    if (symbols_.size() < 2) throw std::invalid_argument("alphabet needs at least two symbols");
    for (std::size_t i = 0; i < symbols_.size(); ++i) {
        const auto c = static_cast<unsigned char>(symbols_[i]);
        if (symbols_[i] == kGapChar) throw std::invalid_argument("gap character cannot be a residue");
        if (index_[c] >= 0) throw std::invalid_argument(std::string("duplicate alphabet symbol '") + symbols_[i] + "'");
        index_[c] = static_cast<std::int16_t>(i);
    }
}

Alphabet Alphabet::protein(bool with_wildcard) {
    return Alphabet("ARNDCQEGHILKMFPSTWYV", with_wildcard ? std::optional<char>('X') : std::nullopt);
}

Alphabet Alphabet::nucleotide(bool with_wildcard) {
    return Alphabet("ACGT", with_wildcard ? std::optional<char>('N') : std::nullopt);
}

std::optional<char> Alphabet::normalize(char c) const noexcept {
    const char up = static_cast<char>(std::toupper(static_cast<unsigned char>(c)));
    if (contains(up)) return up;
    if (wildcard_ && std::isalpha(static_cast<unsigned char>(up))) return *wildcard_;
    return std::nullopt;
}

std::vector<std::uint8_t> Alphabet::encode(std::string_view residues) const {
    std::vector<std::uint8_t> out;
    out.reserve(residues.size());
    for (char c : residues) {
        const int idx = index_of(c);
        if (idx < 0) throw DataError(std::string("residue '") + c + "' is not in the alphabet");
        out.push_back(static_cast<std::uint8_t>(idx));
    }
    return out;
}

Sequence::Sequence(std::string id, std::string residues) : id_(std::move(id)), residues_(std::move(residues)) {
    if (id_.empty()) throw DataError("sequence id is empty");
    if (residues_.empty()) throw DataError("sequence '" + id_ + "' is empty");
    if (residues_.find(kGapChar) != std::string::npos)
        throw DataError("sequence '" + id_ + "' contains a gap character");
}

Alignment::Alignment(std::vector<AlignedRow> rows) : rows_(std::move(rows)) {
    if (rows_.empty()) return;
    n_cols_ = rows_.front().text.size();
    std::unordered_set<std::string_view> seen;
    for (const auto& row : rows_) {
        if (row.text.size() != n_cols_)
            throw DataError("ragged alignment: row '" + row.id + "' has " + std::to_string(row.text.size()) +
                            " columns, expected " + std::to_string(n_cols_));
        if (!seen.insert(row.id).second) throw DataError("duplicate id '" + row.id + "' in alignment");
    }
}

Alignment Alignment::single(const Sequence& seq) {
    return Alignment({AlignedRow{seq.id(), seq.residues()}});
}

void Alignment::check_against(std::span<const Sequence> seqs) const {
    std::unordered_map<std::string_view, const AlignedRow*> by_id;
    for (const auto& row : rows_) by_id.emplace(row.id, &row);
    for (const auto& seq : seqs) {
        auto it = by_id.find(seq.id());
        if (it == by_id.end()) throw DataError("missing id '" + seq.id() + "' in alignment");
        if (degap(it->second->text) != seq.residues())
            throw DataError("row '" + seq.id() + "' does not degap to its input sequence");
    }
    if (rows_.size() != seqs.size()) {
        std::unordered_set<std::string_view> wanted;
        for (const auto& seq : seqs) wanted.insert(seq.id());
        for (const auto& row : rows_)
            if (!wanted.count(row.id)) throw DataError("unexpected id '" + row.id + "' in alignment");
    }
}

Alignment Alignment::reordered(std::span<const std::string> ids) const {
    std::unordered_map<std::string_view, std::size_t> pos;
    for (std::size_t i = 0; i < rows_.size(); ++i) pos.emplace(rows_[i].id, i);
    if (ids.size() != rows_.size()) throw DataError("reorder: id count differs from alignment depth");
    std::vector<AlignedRow> out;
    out.reserve(rows_.size());
    for (const auto& id : ids) {
        auto it = pos.find(id);
        if (it == pos.end()) throw DataError("missing id '" + id + "' in alignment");
        out.push_back(rows_[it->second]);
    }
    return Alignment(std::move(out));
}

Alignment Alignment::reordered(std::span<const Sequence> seqs) const {
    const auto ids = ids_of(seqs);
    return reordered(std::span<const std::string>(ids));
}

std::vector<Sequence> Alignment::sequences() const {
    std::vector<Sequence> out;
    out.reserve(rows_.size());
    for (const auto& row : rows_) out.emplace_back(row.id, degap(row.text));
    return out;
}

std::string degap(std::string_view row) {
    std::string out;
    out.reserve(row.size());
    std::copy_if(row.begin(), row.end(), std::back_inserter(out), [](char c) { return c != kGapChar; });
    return out;
}

std::vector<std::string> ids_of(std::span<const Sequence> seqs) {
    std::vector<std::string> ids;
    ids.reserve(seqs.size());
    for (const auto& s : seqs) ids.push_back(s.id());
    return ids;
}

}  // namespace dmsa
