#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace dmsa {

inline constexpr char kGapChar = '-';

/// Ordered residue alphabet. Residues are addressed by their position in
/// `symbols()`, which also fixes tie-breaking order wherever residues compete
/// (consensus calling, matrix layout).
///
/// An optional wildcard symbol is appended as the last residue. Input letters
/// outside the alphabet map onto it instead of being rejected; substitution
/// models score it 0 against everything.
class Alphabet {
public:
    Alphabet(std::string symbols, std::optional<char> wildcard = std::nullopt);

    static Alphabet protein(bool with_wildcard = false);
    static Alphabet nucleotide(bool with_wildcard = false);

    const std::string& symbols() const noexcept { return symbols_; }
    std::size_t size() const noexcept { return symbols_.size(); }
    std::optional<char> wildcard() const noexcept { return wildcard_; }

    bool contains(char c) const noexcept { return index_[static_cast<unsigned char>(c)] >= 0; }
    // -1 when `c` is not a residue of this alphabet.
    int index_of(char c) const noexcept { return index_[static_cast<unsigned char>(c)]; }
    char symbol(std::size_t i) const { return symbols_.at(i); }

    // Uppercases `c` and resolves it against the alphabet, falling back to the
    // wildcard for other letters. Returns nullopt if the character is rejected.
    std::optional<char> normalize(char c) const noexcept;

    std::vector<std::uint8_t> encode(std::string_view residues) const;

    bool operator==(const Alphabet& other) const noexcept {
        return symbols_ == other.symbols_ && wildcard_ == other.wildcard_;
    }

private:
    std::string symbols_;
    std::optional<char> wildcard_;
    std::array<std::int16_t, 256> index_{};
};

/// A named, ungapped residue string. Immutable once built.
class Sequence {
public:
    Sequence(std::string id, std::string residues);

    const std::string& id() const noexcept { return id_; }
    const std::string& residues() const noexcept { return residues_; }
    std::size_t length() const noexcept { return residues_.size(); }

    bool operator==(const Sequence&) const = default;

private:
    std::string id_;
    std::string residues_;
};

struct AlignedRow {
    std::string id;
    std::string text;  // gapped

    bool operator==(const AlignedRow&) const = default;
};

/// Equal-length gapped rows. Construction checks the shape invariants (equal
/// widths, unique ids); `check_against` checks the rows against the original
/// sequences.
class Alignment {
public:
    Alignment() = default;
    explicit Alignment(std::vector<AlignedRow> rows);

    static Alignment single(const Sequence& seq);

    const std::vector<AlignedRow>& rows() const noexcept { return rows_; }
    std::size_t depth() const noexcept { return rows_.size(); }
    std::size_t n_cols() const noexcept { return n_cols_; }
    bool empty() const noexcept { return rows_.empty(); }

    // Throws DataError unless every sequence appears exactly once and every
    // row degaps to its sequence.
    void check_against(std::span<const Sequence> seqs) const;

    // Rows rearranged to follow the order of `ids`; every id must be present.
    Alignment reordered(std::span<const std::string> ids) const;
    Alignment reordered(std::span<const Sequence> seqs) const;

    std::vector<Sequence> sequences() const;

    bool operator==(const Alignment&) const = default;

private:
    std::vector<AlignedRow> rows_;
    std::size_t n_cols_ = 0;
};

std::string degap(std::string_view row);

std::vector<std::string> ids_of(std::span<const Sequence> seqs);

}  // namespace dmsa
