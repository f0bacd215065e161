#include "dmsa/synth.hpp"

#include <algorithm>
#include <list>
#include <random>
#include <stdexcept>
#include <unordered_map>

namespace dmsa {

void EvolveParams::validate() const {
    if (root_len < 1) throw std::invalid_argument("root_len must be at least 1");
    if (n_seqs < 1) throw std::invalid_argument("n_seqs must be at least 1");
    if (!(sub_rate >= 0.0 && sub_rate < 1.0)) throw std::invalid_argument("sub_rate must lie in [0, 1)");
    if (!(indel_rate >= 0.0 && indel_rate < 1.0)) throw std::invalid_argument("indel_rate must lie in [0, 1)");
    if (!(mean_indel_len >= 1.0)) throw std::invalid_argument("mean_indel_len must be at least 1");
    if (!(tree_depth_scale >= 0.0)) throw std::invalid_argument("tree_depth_scale must be non-negative");
}

namespace {

using Column = std::list<std::size_t>::iterator;

struct Site {
    Column column;
    char residue;
};

class Evolver {
public:
    Evolver(const EvolveParams& params, const std::string& residues, std::mt19937_64& rng, std::list<std::size_t>& columns,
            std::size_t& next_column)
        : residues_(residues), rng_(rng), columns_(columns), next_column_(next_column),
          sub_(std::min(params.sub_rate * params.tree_depth_scale, 0.999)),
          indel_(std::min(params.indel_rate * params.tree_depth_scale, 0.999)),
          length_(1.0 / params.mean_indel_len) {}

    std::vector<Site> root(std::size_t len) {
        std::vector<Site> out;
        for (std::size_t i = 0; i < len; ++i) out.push_back({new_column(columns_.end()), random_residue()});
        return out;
    }

    std::vector<Site> stem(const std::vector<Site>& parent, double factor) {
        const double sub = sub_, indel = indel_;
        sub_ = std::min(sub * factor, 0.999);
        indel_ = std::min(indel * factor, 0.999);
        auto child = branch(parent);
        sub_ = sub;
        indel_ = indel;
        return child;
    }

    // Leaves of a balanced tree over `n` leaves below `node`, appended in order.
    void grow(const std::vector<Site>& node, std::size_t n, std::vector<std::vector<Site>>& leaves) {
        if (n == 1) {
            leaves.push_back(node);
            return;
        }
        const std::size_t left = (n + 1) / 2;
        const auto l = branch(node);
        const auto r = branch(node);
        grow(l, left, leaves);
        grow(r, n - left, leaves);
    }

private:
    std::vector<Site> branch(const std::vector<Site>& parent) {
        std::vector<Site> child;
        child.reserve(parent.size());
        std::size_t i = 0;
        while (i < parent.size()) {
            Site s = parent[i];
            if (chance(indel_)) {
                const std::size_t len = indel_length();
                if (chance(0.5)) {
                    // Deletion, never emptying the sequence.
                    std::size_t take = std::min(len, parent.size() - i);
                    if (child.empty() && take == parent.size() - i) --take;
                    if (take > 0) {
                        i += take;
                        continue;
                    }
                } else {
                    mutate(s);
                    child.push_back(s);
                    Column after = s.column;
                    for (std::size_t k = 0; k < len; ++k) {
                        after = new_column(std::next(after));
                        child.push_back({after, random_residue()});
                    }
                    ++i;
                    continue;
                }
            }
            mutate(s);
            child.push_back(s);
            ++i;
        }
        return child;
    }

    void mutate(Site& s) {
        if (!chance(sub_)) return;
        std::uniform_int_distribution<std::size_t> pick(0, residues_.size() - 2);
        std::size_t j = pick(rng_);
        const auto cur = residues_.find(s.residue);
        if (j >= cur) ++j;
        s.residue = residues_[j];
    }

    Column new_column(Column before) { return columns_.insert(before, next_column_++); }

    char random_residue() {
        std::uniform_int_distribution<std::size_t> pick(0, residues_.size() - 1);
        return residues_[pick(rng_)];
    }

    bool chance(double p) { return std::uniform_real_distribution<double>(0.0, 1.0)(rng_) < p; }

    std::size_t indel_length() { return 1 + std::geometric_distribution<std::size_t>(length_)(rng_); }

    const std::string& residues_;
    std::mt19937_64& rng_;
    std::list<std::size_t>& columns_;
    std::size_t& next_column_;
    double sub_;
    double indel_;
    double length_;
};

std::string residues_of(const Alphabet& alphabet) {
    std::string out = alphabet.symbols();
    if (alphabet.wildcard()) out.pop_back();
    if (out.size() < 2) throw std::invalid_argument("alphabet needs at least two residues");
    return out;
}

// Lays out leaves against the shared column order, dropping all-gap columns.
SynthData assemble(const std::list<std::size_t>& columns, const std::vector<std::vector<Site>>& leaves) {
    std::unordered_map<std::size_t, std::size_t> position;
    std::size_t pos = 0;
    for (std::size_t id : columns) position.emplace(id, pos++);

    std::vector<char> used(pos, 0);
    for (const auto& leaf : leaves)
        for (const auto& s : leaf) used[position.at(*s.column)] = 1;
    std::vector<std::size_t> compact(pos, 0);
    std::size_t width = 0;
    for (std::size_t c = 0; c < pos; ++c)
        if (used[c]) compact[c] = width++;

    SynthData out;
    std::vector<AlignedRow> rows;
    for (std::size_t i = 0; i < leaves.size(); ++i) {
        const std::string id = "seq" + std::to_string(i);
        std::string text(width, kGapChar);
        std::string residues;
        for (const auto& s : leaves[i]) {
            text[compact[position.at(*s.column)]] = s.residue;
            residues.push_back(s.residue);
        }
        out.seqs.emplace_back(id, residues);
        rows.push_back({id, std::move(text)});
    }
    out.truth = Alignment(std::move(rows));
    return out;
}

SynthData evolve_family(const EvolveParams& params, const std::string& residues, std::mt19937_64& rng) {
    std::list<std::size_t> columns;
    std::size_t next_column = 0;
    Evolver evolver(params, residues, rng, columns, next_column);
    const auto root = evolver.root(params.root_len);
    std::vector<std::vector<Site>> leaves;
    evolver.grow(root, params.n_seqs, leaves);
    return assemble(columns, leaves);
}

}  // namespace

SynthData generate(const EvolveParams& params, const Alphabet& alphabet) {
    params.validate();
    const auto residues = residues_of(alphabet);
    std::mt19937_64 rng(params.seed);
    return evolve_family(params, residues, rng);
}

SynthData generate_clustered(const ClusterParams& params, const Alphabet& alphabet) {
    params.base.validate();
    if (params.clusters < 1 || params.clusters > params.base.n_seqs)
        throw std::invalid_argument("cluster count must lie in [1, n_seqs]");
    if (!(params.stem_scale >= 0.0)) throw std::invalid_argument("stem_scale must be non-negative");
    const auto residues = residues_of(alphabet);
    std::mt19937_64 rng(params.base.seed);

    std::list<std::size_t> columns;
    std::size_t next_column = 0;
    Evolver evolver(params.base, residues, rng, columns, next_column);
    const auto root = evolver.root(params.base.root_len);
    std::vector<std::vector<Site>> leaves;
    for (std::size_t c = 0; c < params.clusters; ++c) {
        const std::size_t n = params.base.n_seqs / params.clusters + (c < params.base.n_seqs % params.clusters ? 1 : 0);
        const double factor = params.stem_scale * static_cast<double>(c + 1) / static_cast<double>(params.clusters);
        evolver.grow(evolver.stem(root, factor), n, leaves);
    }
    return assemble(columns, leaves);
}

}  // namespace dmsa
