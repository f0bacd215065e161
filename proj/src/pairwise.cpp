#include "dmsa/pairwise.hpp"

#include <algorithm>
#include <limits>
#include <stdexcept>

#include "dmsa/error.hpp"

namespace dmsa {

std::size_t EditScript::count(EditOp op) const noexcept {
    return static_cast<std::size_t>(std::count(ops.begin(), ops.end(), op));
}

std::size_t EditScript::length_a() const noexcept { return count(EditOp::kMatch) + count(EditOp::kInsA); }
std::size_t EditScript::length_b() const noexcept { return count(EditOp::kMatch) + count(EditOp::kInsB); }

std::string EditScript::to_string() const {
    std::string out;
    out.reserve(ops.size());
    for (auto op : ops) out.push_back(op == EditOp::kMatch ? 'M' : op == EditOp::kInsA ? 'A' : 'B');
    return out;
}

EditScript EditScript::from_string(std::string_view text) {
    EditScript s;
    s.ops.reserve(text.size());
    for (char c : text) {
        switch (c) {
            case 'M': s.ops.push_back(EditOp::kMatch); break;
            case 'A': s.ops.push_back(EditOp::kInsA); break;
            case 'B': s.ops.push_back(EditOp::kInsB); break;
            default: throw std::invalid_argument(std::string("bad edit op '") + c + "'");
        }
    }
    return s;
}

namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();

enum State : std::uint8_t { kM = 0, kX = 1, kY = 2 };

// Index of the maximum of three candidates; earlier wins ties.
inline std::uint8_t argmax3(double m, double x, double y) {
    std::uint8_t best = kM;
    double v = m;
    if (x > v) {
        v = x;
        best = kX;
    }
    if (y > v) best = kY;
    return best;
}

// Three-state Gotoh recurrence. `match(i, j)` scores A[i] against B[j];
// `scale_a(i)` / `scale_b(j)` weight gap costs opposite that column.
template <class Match, class ScaleA, class ScaleB>
PairwiseResult affine_global(std::size_t n, std::size_t m, const GapModel& gaps, Match&& match,
                             ScaleA&& scale_a, ScaleB&& scale_b, WorkStats* stats) {
    const std::size_t cols = m + 1;
    std::vector<double> prev_m(cols, kNegInf), prev_x(cols, kNegInf), prev_y(cols, kNegInf);
    std::vector<double> cur_m(cols), cur_x(cols), cur_y(cols);
    // Per cell and state: the state of the predecessor cell.
    std::vector<std::uint8_t> back((n + 1) * cols * 3, kM);
    auto bp = [&](std::size_t i, std::size_t j, std::uint8_t s) -> std::uint8_t& {
        return back[(i * cols + j) * 3 + s];
    };
    const double open_ext = gaps.open + gaps.extend;

    prev_m[0] = 0.0;
    for (std::size_t j = 1; j <= m; ++j) {
        const double sb = scale_b(j - 1);
        const double from_m = prev_m[j - 1] + sb * open_ext;
        const double from_y = prev_y[j - 1] + sb * gaps.extend;
        if (from_y > from_m) {
            prev_y[j] = from_y;
            bp(0, j, kY) = kY;
        } else {
            prev_y[j] = from_m;
            bp(0, j, kY) = kM;
        }
    }

    for (std::size_t i = 1; i <= n; ++i) {
        const double sa = scale_a(i - 1);
        cur_m[0] = kNegInf;
        cur_y[0] = kNegInf;
        {
            const double from_m = prev_m[0] + sa * open_ext;
            const double from_x = prev_x[0] + sa * gaps.extend;
            if (from_x > from_m) {
                cur_x[0] = from_x;
                bp(i, 0, kX) = kX;
            } else {
                cur_x[0] = from_m;
                bp(i, 0, kX) = kM;
            }
        }
        for (std::size_t j = 1; j <= m; ++j) {
            // Match: diagonal predecessor.
            const std::uint8_t dm = argmax3(prev_m[j - 1], prev_x[j - 1], prev_y[j - 1]);
            const double best_diag = dm == kM ? prev_m[j - 1] : dm == kX ? prev_x[j - 1] : prev_y[j - 1];
            cur_m[j] = best_diag + match(i - 1, j - 1);
            bp(i, j, kM) = dm;

            // Insert A: vertical predecessor.
            const double xm = prev_m[j] + sa * open_ext;
            const double xx = prev_x[j] + sa * gaps.extend;
            const double xy = prev_y[j] + sa * open_ext;
            const std::uint8_t dx = argmax3(xm, xx, xy);
            cur_x[j] = dx == kM ? xm : dx == kX ? xx : xy;
            bp(i, j, kX) = dx;

            // Insert B: horizontal predecessor.
            const double sb = scale_b(j - 1);
            const double ym = cur_m[j - 1] + sb * open_ext;
            const double yx = cur_x[j - 1] + sb * open_ext;
            const double yy = cur_y[j - 1] + sb * gaps.extend;
            const std::uint8_t dy = argmax3(ym, yx, yy);
            cur_y[j] = dy == kM ? ym : dy == kX ? yx : yy;
            bp(i, j, kY) = dy;
        }
        std::swap(prev_m, cur_m);
        std::swap(prev_x, cur_x);
        std::swap(prev_y, cur_y);
    }
    if (stats) stats->dp_cells += static_cast<std::uint64_t>(n) * m;

    std::uint8_t state = argmax3(prev_m[m], prev_x[m], prev_y[m]);
    PairwiseResult result;
    result.score = state == kM ? prev_m[m] : state == kX ? prev_x[m] : prev_y[m];
    if (n == 0 && m == 0) return result;

    std::size_t i = n, j = m;
    auto& ops = result.script.ops;
    ops.reserve(n + m);
    while (i > 0 || j > 0) {
        const std::uint8_t prev = bp(i, j, state);
        switch (state) {
            case kM:
                ops.push_back(EditOp::kMatch);
                --i;
                --j;
                break;
            case kX:
                ops.push_back(EditOp::kInsA);
                --i;
                break;
            default:
                ops.push_back(EditOp::kInsB);
                --j;
                break;
        }
        state = prev;
    }
    std::reverse(ops.begin(), ops.end());
    return result;
}

}  // namespace

PairwiseResult align_pair(const Sequence& a, const Sequence& b, const SubstitutionModel& model,
                          const GapModel& gaps, WorkStats* stats) {
    const auto ea = model.alphabet().encode(a.residues());
    const auto eb = model.alphabet().encode(b.residues());
    const auto one = [](std::size_t) { return 1.0; };
    return affine_global(
        ea.size(), eb.size(), gaps, [&](std::size_t i, std::size_t j) { return model.score(std::size_t{ea[i]}, std::size_t{eb[j]}); }, one,
        one, stats);
}

PairwiseResult align_profiles(const Profile& x, const Profile& y, const SubstitutionModel& model,
                              const GapModel& gaps, WorkStats* stats) {
    if (x.columns.empty() || y.columns.empty()) throw std::invalid_argument("profile alignment needs non-empty profiles");
    const std::size_t c = model.size();

    // Sparse residue lists of x, and y pre-multiplied by the score rows, so a
    // match costs one multiply-add per residue present in the x column.
    struct Sparse {
        std::vector<std::uint8_t> idx;
        std::vector<double> freq;
    };
    std::vector<Sparse> xs(x.width());
    for (std::size_t col = 0; col < x.width(); ++col) {
        const auto& f = x.columns[col].freqs;
        if (f.size() != c) throw std::invalid_argument("profile column does not match the model alphabet");
        for (std::size_t i = 0; i < c; ++i)
            if (f[i] != 0.0) {
                xs[col].idx.push_back(static_cast<std::uint8_t>(i));
                xs[col].freq.push_back(f[i]);
            }
    }
    std::vector<double> yw(y.width() * c);
    for (std::size_t col = 0; col < y.width(); ++col) {
        const auto& f = y.columns[col].freqs;
        if (f.size() != c) throw std::invalid_argument("profile column does not match the model alphabet");
        for (std::size_t i = 0; i < c; ++i) {
            const double* row = model.row(i);
            double inner = 0.0;
            for (std::size_t j = 0; j < c; ++j) inner += f[j] * row[j];
            yw[col * c + i] = inner;
        }
    }
    const auto match = [&](std::size_t a, std::size_t b) {
        const auto& sp = xs[a];
        const double* w = yw.data() + b * c;
        double total = 0.0;
        for (std::size_t t = 0; t < sp.idx.size(); ++t) total += sp.freq[t] * w[sp.idx[t]];
        return total;
    };
    const auto scale_a = [&](std::size_t a) { return 1.0 - x.columns[a].gap_freq; };
    const auto scale_b = [&](std::size_t b) { return 1.0 - y.columns[b].gap_freq; };
    return affine_global(x.width(), y.width(), gaps, match, scale_a, scale_b, stats);
}

Alignment apply_script(const EditScript& script, const Alignment& a, const Alignment& b) {
    if (script.length_a() != a.n_cols() || script.length_b() != b.n_cols())
        throw DataError("edit script of shape " + std::to_string(script.length_a()) + "x" +
                        std::to_string(script.length_b()) + " does not fit alignments of width " +
                        std::to_string(a.n_cols()) + " and " + std::to_string(b.n_cols()));
    std::vector<AlignedRow> rows;
    rows.reserve(a.depth() + b.depth());
    for (const auto& r : a.rows()) rows.push_back({r.id, std::string(script.size(), kGapChar)});
    for (const auto& r : b.rows()) rows.push_back({r.id, std::string(script.size(), kGapChar)});
    std::size_t ia = 0, ib = 0;
    for (std::size_t k = 0; k < script.size(); ++k) {
        const EditOp op = script.ops[k];
        if (op != EditOp::kInsB) {
            for (std::size_t r = 0; r < a.depth(); ++r) rows[r].text[k] = a.rows()[r].text[ia];
            ++ia;
        }
        if (op != EditOp::kInsA) {
            for (std::size_t r = 0; r < b.depth(); ++r) rows[a.depth() + r].text[k] = b.rows()[r].text[ib];
            ++ib;
        }
    }
    return Alignment(std::move(rows));
}

Alignment project_a(const EditScript& script, const Alignment& a) {
    if (script.length_a() != a.n_cols())
        throw DataError("edit script consumes " + std::to_string(script.length_a()) +
                        " columns but the alignment has " + std::to_string(a.n_cols()));
    std::vector<AlignedRow> rows;
    rows.reserve(a.depth());
    for (const auto& r : a.rows()) rows.push_back({r.id, std::string(script.size(), kGapChar)});
    std::size_t ia = 0;
    for (std::size_t k = 0; k < script.size(); ++k) {
        if (script.ops[k] == EditOp::kInsB) continue;
        for (std::size_t r = 0; r < a.depth(); ++r) rows[r].text[k] = a.rows()[r].text[ia];
        ++ia;
    }
    return Alignment(std::move(rows));
}

}  // namespace dmsa
