#include "dmsa/quality.hpp"

#include <algorithm>
#include <numeric>

#include "dmsa/error.hpp"

namespace dmsa {

namespace {

// Row indices of `a` in sorted-id order.
std::vector<std::size_t> sorted_rows(const Alignment& a) {
    std::vector<std::size_t> order(a.depth());
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::sort(order.begin(), order.end(),
              [&](std::size_t x, std::size_t y) { return a.rows()[x].id < a.rows()[y].id; });
    return order;
}

void require_same_sequences(const Alignment& test, const Alignment& ref) {
    const auto seqs = ref.sequences();
    test.check_against(seqs);
}

}  // namespace

PairSet aligned_pairs(const Alignment& a) {
    PairSet out;
    const auto order = sorted_rows(a);
    const std::size_t depth = order.size();
    for (std::size_t r : order) out.ids.push_back(a.rows()[r].id);

    std::vector<std::uint32_t> next(depth, 0);
    std::vector<std::pair<std::uint32_t, std::uint32_t>> present;  // (row, residue index)
    for (std::size_t c = 0; c < a.n_cols(); ++c) {
        present.clear();
        for (std::size_t r = 0; r < depth; ++r) {
            if (a.rows()[order[r]].text[c] == kGapChar) continue;
            present.emplace_back(static_cast<std::uint32_t>(r), next[r]++);
        }
        for (std::size_t i = 0; i < present.size(); ++i)
            for (std::size_t j = i + 1; j < present.size(); ++j)
                out.pairs.push_back({present[i].first, present[i].second, present[j].first, present[j].second});
    }
    std::sort(out.pairs.begin(), out.pairs.end());
    return out;
}

std::size_t common_pairs(const PairSet& x, const PairSet& y) {
    if (x.ids != y.ids) throw DataError("pair sets cover different sequences");
    std::size_t n = 0;
    auto i = x.pairs.begin();
    auto j = y.pairs.begin();
    while (i != x.pairs.end() && j != y.pairs.end()) {
        if (*i < *j) ++i;
        else if (*j < *i) ++j;
        else {
            ++n;
            ++i;
            ++j;
        }
    }
    return n;
}

double q_score(const Alignment& test, const Alignment& ref) {
    require_same_sequences(test, ref);
    const auto r = aligned_pairs(ref);
    if (r.size() == 0) return 1.0;
    return static_cast<double>(common_pairs(aligned_pairs(test), r)) / static_cast<double>(r.size());
}

double modeler_score(const Alignment& test, const Alignment& ref) {
    require_same_sequences(test, ref);
    const auto t = aligned_pairs(test);
    if (t.size() == 0) return 1.0;
    return static_cast<double>(common_pairs(t, aligned_pairs(ref))) / static_cast<double>(t.size());
}

double tc_score(const Alignment& test, const Alignment& ref) {
    require_same_sequences(test, ref);
    const auto by_id = test.reordered(ids_of(ref.sequences()));
    const std::size_t depth = ref.depth();

    // test_col[r][i]: test column holding residue i of row r.
    std::vector<std::vector<std::size_t>> test_col(depth);
    std::vector<std::size_t> residues_in_col(by_id.n_cols(), 0);
    for (std::size_t r = 0; r < depth; ++r) {
        const auto& text = by_id.rows()[r].text;
        for (std::size_t c = 0; c < text.size(); ++c) {
            if (text[c] == kGapChar) continue;
            test_col[r].push_back(c);
            ++residues_in_col[c];
        }
    }

    std::size_t counted = 0;
    std::size_t reproduced = 0;
    std::vector<std::size_t> next(depth, 0);
    for (std::size_t c = 0; c < ref.n_cols(); ++c) {
        std::size_t members = 0;
        std::size_t target = 0;
        bool same = true;
        for (std::size_t r = 0; r < depth; ++r) {
            if (ref.rows()[r].text[c] == kGapChar) continue;
            const std::size_t tc = test_col[r][next[r]++];
            if (members == 0) target = tc;
            else if (tc != target) same = false;
            ++members;
        }
        if (members == 0) continue;
        ++counted;
        if (same && residues_in_col[target] == members) ++reproduced;
    }
    if (counted == 0) return 1.0;
    return static_cast<double>(reproduced) / static_cast<double>(counted);
}

double sp_score(const Alignment& a, const SubstitutionModel& model, const GapModel& gaps, bool terminal_gaps) {
    const auto& alphabet = model.alphabet();
    std::vector<std::vector<int>> coded;
    coded.reserve(a.depth());
    for (const auto& row : a.rows()) {
        std::vector<int> v(row.text.size());
        for (std::size_t c = 0; c < row.text.size(); ++c) {
            const char ch = row.text[c];
            if (ch == kGapChar) {
                v[c] = -1;
                continue;
            }
            const auto n = alphabet.normalize(ch);
            if (!n) throw DataError(std::string("residue '") + ch + "' in row '" + row.id + "' is not in the alphabet");
            v[c] = alphabet.index_of(*n);
        }
        coded.push_back(std::move(v));
    }

    double total = 0.0;
    std::vector<std::pair<int, int>> cols;
    for (std::size_t x = 0; x < coded.size(); ++x) {
        for (std::size_t y = x + 1; y < coded.size(); ++y) {
            cols.clear();
            for (std::size_t c = 0; c < a.n_cols(); ++c)
                if (coded[x][c] >= 0 || coded[y][c] >= 0) cols.emplace_back(coded[x][c], coded[y][c]);

            // A run is terminal when no co-resident column follows or precedes it.
            std::size_t first_match = cols.size();
            std::size_t last_match = 0;
            for (std::size_t i = 0; i < cols.size(); ++i) {
                if (cols[i].first < 0 || cols[i].second < 0) continue;
                first_match = std::min(first_match, i);
                last_match = i;
            }
            std::size_t run_x = 0;
            std::size_t run_y = 0;
            auto close = [&](std::size_t& run, std::size_t end) {
                if (run == 0) return;
                const std::size_t start = end - run;
                const bool terminal = first_match == cols.size() || start < first_match || start > last_match;
                if (terminal_gaps || !terminal) total += gaps.run_cost(run);
                run = 0;
            };
            for (std::size_t i = 0; i < cols.size(); ++i) {
                const auto [u, v] = cols[i];
                if (u >= 0 && v >= 0) {
                    close(run_x, i);
                    close(run_y, i);
                    total += model.score(static_cast<std::size_t>(u), static_cast<std::size_t>(v));
                } else if (u < 0) {
                    close(run_y, i);
                    ++run_x;
                } else {
                    close(run_x, i);
                    ++run_y;
                }
            }
            close(run_x, cols.size());
            close(run_y, cols.size());
        }
    }
    return total;
}

}  // namespace dmsa
