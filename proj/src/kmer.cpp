#include "dmsa/kmer.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace dmsa {

void KmerParams::validate() const {
    if (k < 1 || k > kMaxKmerLength)
        throw std::invalid_argument("k-mer length must be in [1, " + std::to_string(kMaxKmerLength) + "]");
    if (!(delta > 0.0 && delta <= 0.1)) throw std::invalid_argument("k-mer delta must be in (0, 0.1]");
}

KmerVector::KmerVector(std::size_t k, std::size_t seq_len, std::vector<Entry> sorted_counts)
    : k_(k), seq_len_(seq_len), counts_(std::move(sorted_counts)) {}

std::uint64_t KmerVector::total() const noexcept {
    std::uint64_t sum = 0;
    for (const auto& [key, n] : counts_) sum += n;
    return sum;
}

std::uint64_t KmerVector::pack(std::string_view kmer) {
    std::uint64_t key = 0;
    for (char c : kmer) key = (key << 8) | static_cast<unsigned char>(c);
    return key;
}

std::string KmerVector::unpack(std::uint64_t key) const {
    std::string out(k_, '\0');
    for (std::size_t i = k_; i-- > 0;) {
        out[i] = static_cast<char>(key & 0xffu);
        key >>= 8;
    }
    return out;
}

std::uint32_t KmerVector::count(std::string_view kmer) const {
    if (kmer.size() != k_) return 0;
    const auto key = pack(kmer);
    auto it = std::lower_bound(counts_.begin(), counts_.end(), Entry{key, 0},
                               [](const Entry& a, const Entry& b) { return a.first < b.first; });
    return (it != counts_.end() && it->first == key) ? it->second : 0;
}

std::vector<std::pair<std::string, std::uint32_t>> KmerVector::as_strings() const {
    std::vector<std::pair<std::string, std::uint32_t>> out;
    out.reserve(counts_.size());
    for (const auto& [key, n] : counts_) out.emplace_back(unpack(key), n);
    return out;
}

KmerVector count_kmers(std::string_view residues, std::size_t k) {
    if (k < 1 || k > kMaxKmerLength) throw std::invalid_argument("k-mer length out of range");
    const std::size_t n = residues.size();
    std::vector<std::uint64_t> keys;
    if (n >= k) {
        keys.reserve(n - k + 1);
        const std::uint64_t mask = (k == 8) ? ~std::uint64_t{0} : ((std::uint64_t{1} << (8 * k)) - 1);
        std::uint64_t key = KmerVector::pack(residues.substr(0, k - 1));
        for (std::size_t i = k - 1; i < n; ++i) {
            key = ((key << 8) | static_cast<unsigned char>(residues[i])) & mask;
            keys.push_back(key);
        }
        std::sort(keys.begin(), keys.end());
    }
    std::vector<KmerVector::Entry> counts;
    for (std::size_t i = 0; i < keys.size();) {
        std::size_t j = i;
        while (j < keys.size() && keys[j] == keys[i]) ++j;
        counts.emplace_back(keys[i], static_cast<std::uint32_t>(j - i));
        i = j;
    }
    return KmerVector(k, n, std::move(counts));
}

KmerVector count_kmers(const Sequence& seq, std::size_t k) { return count_kmers(seq.residues(), k); }

double common_kmer_fraction(const KmerVector& x, const KmerVector& y) {
    const std::size_t shorter = std::min(x.seq_len(), y.seq_len());
    if (shorter < x.k()) return 0.0;
    const auto& a = x.entries();
    const auto& b = y.entries();
    std::uint64_t common = 0;
    for (std::size_t i = 0, j = 0; i < a.size() && j < b.size();) {
        if (a[i].first < b[j].first) {
            ++i;
        } else if (b[j].first < a[i].first) {
            ++j;
        } else {
            common += std::min(a[i].second, b[j].second);
            ++i;
            ++j;
        }
    }
    return static_cast<double>(common) / static_cast<double>(shorter - x.k() + 1);
}

double kmer_distance(const KmerVector& x, const KmerVector& y, const KmerParams& params, WorkStats* stats) {
    if (x.k() != y.k() || x.k() != params.k) throw std::invalid_argument("k-mer vectors built with different k");
    if (stats) ++stats->kmer_evals;
    return -std::log(params.delta + common_kmer_fraction(x, y));
}

double kmer_rank(std::size_t i, std::span<const KmerVector> pool, const KmerParams& params, WorkStats* stats) {
    if (pool.empty()) throw std::invalid_argument("k-mer rank over an empty pool");
    if (i >= pool.size()) throw std::invalid_argument("k-mer rank index outside the pool");
    return rank_against_sample(pool[i], pool, params, stats);
}

double rank_against_sample(const KmerVector& seq, std::span<const KmerVector> sample, const KmerParams& params,
                           WorkStats* stats) {
    if (sample.empty()) throw std::invalid_argument("k-mer rank against an empty sample");
    double sum = 0.0;
    for (const auto& other : sample) sum += kmer_distance(seq, other, params, stats);
    return sum / static_cast<double>(sample.size());
}

std::vector<double> kmer_ranks(std::span<const KmerVector> pool, const KmerParams& params, WorkStats* stats) {
    std::vector<double> ranks(pool.size());
    for (std::size_t i = 0; i < pool.size(); ++i) ranks[i] = kmer_rank(i, pool, params, stats);
    return ranks;
}

std::vector<KmerVector> count_all(std::span<const Sequence> seqs, std::size_t k) {
    std::vector<KmerVector> out;
    out.reserve(seqs.size());
    for (const auto& s : seqs) out.push_back(count_kmers(s, k));
    return out;
}

}  // namespace dmsa
