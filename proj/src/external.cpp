#include "dmsa/external.hpp"

#include <sys/wait.h>

#include <atomic>
#include <cstdlib>
#include <filesystem>
#include <unistd.h>

#include "dmsa/error.hpp"
#include "dmsa/fasta.hpp"

namespace dmsa {

namespace {

namespace fs = std::filesystem;

// Scratch directory removed on scope exit.
class ScratchDir {
public:
    ScratchDir() {
        static std::atomic<unsigned> counter{0};
        path_ = fs::temp_directory_path() /
                ("dmsa-ext-" + std::to_string(::getpid()) + "-" + std::to_string(counter.fetch_add(1)));
        fs::create_directories(path_);
    }
    ~ScratchDir() {
        std::error_code ec;
        fs::remove_all(path_, ec);
    }
    ScratchDir(const ScratchDir&) = delete;
    ScratchDir& operator=(const ScratchDir&) = delete;

    fs::path file(const char* name) const { return path_ / name; }

private:
    fs::path path_;
};

std::string shell_quote(const std::string& s) {
    std::string out = "'";
    for (char c : s) {
        if (c == '\'') out += "'\\''";
        else out += c;
    }
    return out + "'";
}

void replace_all(std::string& text, const std::string& from, const std::string& to) {
    for (std::size_t pos = 0; (pos = text.find(from, pos)) != std::string::npos; pos += to.size())
        text.replace(pos, from.size(), to);
}

}  // namespace

Alignment external_align(std::span<const Sequence> seqs, const std::string& command, const Alphabet& alphabet) {
    if (seqs.empty()) throw std::invalid_argument("cannot align an empty sequence set");
    ScratchDir dir;
    const auto in_path = dir.file("in.fa").string();
    const auto out_path = dir.file("out.afa").string();
    const auto err_path = dir.file("stderr.txt").string();
    write_file(in_path, write_fasta(seqs));

    std::string cmd = command;
    const bool named_in = cmd.find("{in}") != std::string::npos;
    const bool named_out = cmd.find("{out}") != std::string::npos;
    replace_all(cmd, "{in}", shell_quote(in_path));
    replace_all(cmd, "{out}", shell_quote(out_path));
    std::string full = "( " + cmd + " )";
    if (!named_in) full += " < " + shell_quote(in_path);
    if (!named_out) full += " > " + shell_quote(out_path);
    full += " 2> " + shell_quote(err_path);

    const int status = std::system(full.c_str());
    if (status == -1) throw ExternalAlignerError("could not launch external aligner");
    if (!WIFEXITED(status) || WEXITSTATUS(status) != 0) {
        std::string detail;
        std::error_code ec;
        if (fs::exists(err_path, ec)) detail = read_file(err_path);
        if (detail.size() > 400) detail.resize(400);
        throw ExternalAlignerError("external aligner failed (status " +
                                   std::to_string(WIFEXITED(status) ? WEXITSTATUS(status) : -1) + ")" +
                                   (detail.empty() ? "" : ": " + detail));
    }

    try {
        std::error_code ec;
        if (!fs::exists(out_path, ec)) throw DataError("no output file");
        Alignment aln(parse_aligned_fasta(read_file(out_path), alphabet));
        aln.check_against(seqs);
        return aln.reordered(seqs);
    } catch (const DataError& e) {
        throw ExternalAlignerError(std::string("external aligner output rejected: ") + e.what());
    }
}

Alignment ExternalAligner::align(std::span<const Sequence> seqs, WorkStats*) const {
    return external_align(seqs, command_, alphabet_);
}

}  // namespace dmsa
