#include "dmsa/ancestor.hpp"

#include <stdexcept>

#include "dmsa/error.hpp"
#include "dmsa/progressive.hpp"

namespace dmsa {

AncestorProfile extract_ancestor(const Alignment& local, const Alphabet& alphabet, std::size_t source_worker) {
    if (local.empty()) throw std::invalid_argument("ancestor of an empty alignment");
    Profile profile = profile_of(local, alphabet);
    std::string consensus;
    for (const auto& col : profile.columns) {
        if (col.gap_freq > 0.5) continue;
        std::size_t best = 0;
        for (std::size_t i = 1; i < col.freqs.size(); ++i)
            if (col.freqs[i] > col.freqs[best]) best = i;
        consensus.push_back(alphabet.symbol(best));
    }
    if (consensus.empty()) throw DataError("every column of the local alignment is majority gap");
    return AncestorProfile{std::move(profile), Sequence("ancestor" + std::to_string(source_worker), std::move(consensus)),
                           source_worker};
}

GlobalAncestor build_global_ancestor(std::span<const AncestorProfile> locals, const SubstitutionModel& model,
                                     const GapModel& gaps, WorkStats* stats) {
    if (locals.empty()) throw std::invalid_argument("global ancestor needs at least one local ancestor");
    std::vector<Sequence> consensi;
    consensi.reserve(locals.size());
    for (const auto& a : locals) consensi.push_back(a.consensus);
    Alignment aln = chain_align(consensi, model, gaps, stats);
    Profile profile = profile_of(aln, model.alphabet());
    return GlobalAncestor{std::move(aln), std::move(profile)};
}

TunedAlignment fine_tune(const Alignment& local, const Profile& global_ancestor, const SubstitutionModel& model,
                         const GapModel& gaps, WorkStats* stats) {
    auto result = align_profiles(profile_of(local, model.alphabet()), global_ancestor, model, gaps, stats);
    Alignment tuned = project_a(result.script, local);
    return TunedAlignment{std::move(tuned), std::move(result.script)};
}

GlueFrame GlueFrame::from_scripts(std::size_t ancestor_cols, std::vector<EditScript> scripts) {
    GlueFrame frame;
    frame.ancestor_cols = ancestor_cols;
    frame.inserts.assign(scripts.size(), std::vector<std::size_t>(ancestor_cols + 1, 0));
    for (std::size_t w = 0; w < scripts.size(); ++w) {
        if (scripts[w].length_b() != ancestor_cols)
            throw DataError("worker " + std::to_string(w) + " script covers " + std::to_string(scripts[w].length_b()) +
                            " ancestor columns, expected " + std::to_string(ancestor_cols));
        std::size_t slot = 0;
        for (EditOp op : scripts[w].ops) {
            if (op == EditOp::kInsA) ++frame.inserts[w][slot];
            else ++slot;
        }
    }
    frame.scripts = std::move(scripts);
    return frame;
}

std::size_t GlueFrame::width() const noexcept {
    std::size_t w = ancestor_cols;
    for (const auto& per_worker : inserts)
        for (std::size_t n : per_worker) w += n;
    return w;
}

Alignment glue(const GlueFrame& frame, std::span<const Alignment> tuned) {
    const std::size_t workers = frame.scripts.size();
    if (tuned.size() != workers) throw DataError("glue: expected one tuned alignment per worker");
    for (std::size_t w = 0; w < workers; ++w)
        if (tuned[w].n_cols() != frame.scripts[w].size())
            throw DataError("glue: worker " + std::to_string(w) + " alignment width " +
                            std::to_string(tuned[w].n_cols()) + " does not match its script length " +
                            std::to_string(frame.scripts[w].size()));

    // Inserted columns at a slot, summed over all workers.
    std::vector<std::size_t> slot_width(frame.ancestor_cols + 1, 0);
    for (std::size_t w = 0; w < workers; ++w)
        for (std::size_t s = 0; s <= frame.ancestor_cols; ++s) slot_width[s] += frame.inserts[w][s];
    // Offset of worker w's block within each slot.
    std::vector<std::vector<std::size_t>> offset(workers, std::vector<std::size_t>(frame.ancestor_cols + 1, 0));
    for (std::size_t s = 0; s <= frame.ancestor_cols; ++s) {
        std::size_t acc = 0;
        for (std::size_t w = 0; w < workers; ++w) {
            offset[w][s] = acc;
            acc += frame.inserts[w][s];
        }
    }
    // Start column of each slot; ancestor column s sits right after slot s.
    std::vector<std::size_t> slot_start(frame.ancestor_cols + 1, 0);
    for (std::size_t s = 0, col = 0; s <= frame.ancestor_cols; ++s) {
        slot_start[s] = col;
        col += slot_width[s] + 1;
    }
    const std::size_t width = frame.width();

    std::vector<AlignedRow> rows;
    for (std::size_t w = 0; w < workers; ++w) {
        // Target column for each of this worker's tuned columns.
        std::vector<std::size_t> target;
        target.reserve(frame.scripts[w].size());
        std::size_t slot = 0, within = 0;
        for (EditOp op : frame.scripts[w].ops) {
            if (op == EditOp::kInsA) {
                target.push_back(slot_start[slot] + offset[w][slot] + within++);
            } else {
                target.push_back(slot_start[slot] + slot_width[slot]);
                ++slot;
                within = 0;
            }
        }
        for (const auto& row : tuned[w].rows()) {
            std::string text(width, kGapChar);
            for (std::size_t c = 0; c < target.size(); ++c) text[target[c]] = row.text[c];
            rows.push_back({row.id, std::move(text)});
        }
    }
    return Alignment(std::move(rows));
}

}  // namespace dmsa
