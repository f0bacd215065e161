#include "dmsa/fasta.hpp"

#include <cctype>
#include <fstream>
#include <sstream>
#include <unordered_set>

#include "dmsa/error.hpp"

namespace dmsa {
namespace {

struct RawRecord {
    std::string id;
    std::string body;
    std::size_t header_line = 0;
};

bool is_blank(std::string_view line) {
    for (char c : line)
        if (!std::isspace(static_cast<unsigned char>(c))) return false;
    return true;
}

std::vector<RawRecord> split_records(std::string_view text, const Alphabet& alphabet, bool allow_gaps) {
    std::vector<RawRecord> records;
    std::unordered_set<std::string> seen;
    std::size_t line_no = 0;
    std::size_t pos = 0;
    while (pos < text.size()) {
        std::size_t end = text.find('\n', pos);
        if (end == std::string_view::npos) end = text.size();
        std::string_view line = text.substr(pos, end - pos);
        pos = end + 1;
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
        if (is_blank(line)) continue;

        if (line.front() == '>') {
            std::size_t start = 1;
            while (start < line.size() && std::isspace(static_cast<unsigned char>(line[start]))) ++start;
            std::size_t stop = start;
            while (stop < line.size() && !std::isspace(static_cast<unsigned char>(line[stop]))) ++stop;
            std::string id(line.substr(start, stop - start));
            if (id.empty()) throw DataError("line " + std::to_string(line_no) + ": header without an id");
            if (!seen.insert(id).second)
                throw DataError("line " + std::to_string(line_no) + ": duplicate id '" + id + "'");
            records.push_back({std::move(id), {}, line_no});
            continue;
        }

        if (records.empty()) throw DataError("line " + std::to_string(line_no) + ": sequence data before first header");
        auto& body = records.back().body;
        for (char c : line) {
            if (std::isspace(static_cast<unsigned char>(c))) continue;
            if (allow_gaps && (c == kGapChar || c == '.')) {
                body.push_back(kGapChar);
                continue;
            }
            auto norm = alphabet.normalize(c);
            if (!norm)
                throw DataError("line " + std::to_string(line_no) + ": character '" + std::string(1, c) +
                                "' is not in the alphabet (record '" + records.back().id + "')");
            body.push_back(*norm);
        }
    }
    return records;
}

}  // namespace

std::vector<Sequence> parse_fasta(std::string_view text, const Alphabet& alphabet) {
    std::vector<Sequence> out;
    for (auto& rec : split_records(text, alphabet, false)) {
        if (rec.body.empty())
            throw DataError("line " + std::to_string(rec.header_line) + ": empty record '" + rec.id + "'");
        out.emplace_back(std::move(rec.id), std::move(rec.body));
    }
    return out;
}

std::vector<AlignedRow> parse_aligned_fasta(std::string_view text, const Alphabet& alphabet) {
    std::vector<AlignedRow> out;
    for (auto& rec : split_records(text, alphabet, true)) {
        if (degap(rec.body).empty())
            throw DataError("line " + std::to_string(rec.header_line) + ": empty record '" + rec.id + "'");
        out.push_back({std::move(rec.id), std::move(rec.body)});
    }
    return out;
}

namespace {

void append_record(std::string& out, std::string_view id, std::string_view body) {
    out += '>';
    out += id;
    out += '\n';
    for (std::size_t i = 0; i < body.size(); i += kFastaLineWidth) {
        out += body.substr(i, kFastaLineWidth);
        out += '\n';
    }
}

}  // namespace

std::string write_fasta(const Alignment& alignment) {
    std::string out;
    for (const auto& row : alignment.rows()) append_record(out, row.id, row.text);
    return out;
}

std::string write_fasta(std::span<const Sequence> seqs) {
    std::string out;
    for (const auto& s : seqs) append_record(out, s.id(), s.residues());
    return out;
}

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw DataError("cannot open '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_file(const std::string& path, std::string_view contents) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw DataError("cannot write '" + path + "'");
    out << contents;
    if (!out) throw DataError("failed writing '" + path + "'");
}

}  // namespace dmsa
