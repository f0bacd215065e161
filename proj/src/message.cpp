#include "dmsa/message.hpp"

#include <bit>
#include <cstring>

#include "dmsa/error.hpp"

namespace dmsa {

static_assert(std::endian::native == std::endian::little, "wire format assumes a little-endian host");

std::string_view to_string(MessageKind kind) {
    switch (kind) {
        case MessageKind::kSampleSeqs: return "SAMPLE_SEQS";
        case MessageKind::kSampleRanks: return "SAMPLE_RANKS";
        case MessageKind::kPivots: return "PIVOTS";
        case MessageKind::kSeqBatch: return "SEQ_BATCH";
        case MessageKind::kLocalAncestor: return "LOCAL_ANCESTOR";
        case MessageKind::kGlobalAncestor: return "GLOBAL_ANCESTOR";
        case MessageKind::kTunedAlignment: return "TUNED_ALIGNMENT";
    }
    return "UNKNOWN";
}

namespace {

class Writer {
public:
    void u8(std::uint8_t v) { out_.push_back(v); }
    void u32(std::uint32_t v) { raw(&v, sizeof v); }
    void f64(double v) { raw(&v, sizeof v); }
    void str(std::string_view s) {
        u32(static_cast<std::uint32_t>(s.size()));
        raw(s.data(), s.size());
    }
    void raw(const void* p, std::size_t n) {
        const auto* b = static_cast<const std::uint8_t*>(p);
        out_.insert(out_.end(), b, b + n);
    }
    std::vector<std::uint8_t> take() { return std::move(out_); }

private:
    std::vector<std::uint8_t> out_;
};

class Reader {
public:
    explicit Reader(std::span<const std::uint8_t> in) : in_(in) {}

    std::uint8_t u8() {
        need(1);
        return in_[pos_++];
    }
    std::uint32_t u32() {
        std::uint32_t v;
        copy(&v, sizeof v);
        return v;
    }
    double f64() {
        double v;
        copy(&v, sizeof v);
        return v;
    }
    std::string str() {
        const std::uint32_t n = u32();
        need(n);
        std::string s(reinterpret_cast<const char*>(in_.data() + pos_), n);
        pos_ += n;
        return s;
    }
    std::span<const std::uint8_t> rest() const { return in_.subspan(pos_); }
    void skip(std::size_t n) {
        need(n);
        pos_ += n;
    }
    void finish() const {
        if (pos_ != in_.size()) throw DataError("message payload has trailing bytes");
    }

private:
    void need(std::size_t n) const {
        if (in_.size() - pos_ < n) throw DataError("truncated message payload");
    }
    void copy(void* dst, std::size_t n) {
        need(n);
        std::memcpy(dst, in_.data() + pos_, n);
        pos_ += n;
    }

    std::span<const std::uint8_t> in_;
    std::size_t pos_ = 0;
};

void put_profile(Writer& w, const Profile& p) {
    const std::uint32_t c = p.columns.empty() ? 0 : static_cast<std::uint32_t>(p.columns.front().freqs.size());
    w.u32(static_cast<std::uint32_t>(p.depth));
    w.u32(static_cast<std::uint32_t>(p.columns.size()));
    w.u32(c);
    for (const auto& col : p.columns) {
        for (double f : col.freqs) w.f64(f);
        w.f64(col.gap_freq);
    }
}

Profile get_profile(Reader& r) {
    Profile p;
    p.depth = r.u32();
    const std::uint32_t width = r.u32();
    const std::uint32_t c = r.u32();
    p.columns.resize(width);
    for (auto& col : p.columns) {
        col.freqs.resize(c);
        for (auto& f : col.freqs) f = r.f64();
        col.gap_freq = r.f64();
    }
    return p;
}

}  // namespace

std::vector<std::uint8_t> Message::encode() const {
    Writer w;
    w.u32(from);
    w.u32(to);
    w.u8(static_cast<std::uint8_t>(kind));
    w.u32(static_cast<std::uint32_t>(payload.size()));
    w.raw(payload.data(), payload.size());
    return w.take();
}

Message Message::decode(std::span<const std::uint8_t> bytes) {
    Reader r(bytes);
    Message m;
    m.from = r.u32();
    m.to = r.u32();
    const std::uint8_t kind = r.u8();
    if (kind < 1 || kind > 7) throw DataError("unknown message kind " + std::to_string(kind));
    m.kind = static_cast<MessageKind>(kind);
    const std::uint32_t len = r.u32();
    auto rest = r.rest();
    if (rest.size() != len) throw DataError("message length field does not match payload");
    m.payload.assign(rest.begin(), rest.end());
    return m;
}

std::vector<std::uint8_t> encode_sequences(std::span<const IndexedSequence> seqs) {
    Writer w;
    w.u32(static_cast<std::uint32_t>(seqs.size()));
    for (const auto& s : seqs) {
        w.u32(s.input_index);
        w.str(s.seq.id());
        w.str(s.seq.residues());
    }
    return w.take();
}

std::vector<IndexedSequence> decode_sequences(std::span<const std::uint8_t> payload) {
    Reader r(payload);
    const std::uint32_t n = r.u32();
    std::vector<IndexedSequence> out;
    out.reserve(n);
    for (std::uint32_t i = 0; i < n; ++i) {
        const std::uint32_t idx = r.u32();
        std::string id = r.str();
        std::string residues = r.str();
        out.push_back({idx, Sequence(std::move(id), std::move(residues))});
    }
    r.finish();
    return out;
}

std::vector<std::uint8_t> encode_reals(std::span<const double> values) {
    Writer w;
    w.u32(static_cast<std::uint32_t>(values.size()));
    for (double v : values) w.f64(v);
    return w.take();
}

std::vector<double> decode_reals(std::span<const std::uint8_t> payload) {
    Reader r(payload);
    std::vector<double> out(r.u32());
    for (auto& v : out) v = r.f64();
    r.finish();
    return out;
}

std::vector<std::uint8_t> encode_profile(const Profile& profile) {
    Writer w;
    put_profile(w, profile);
    return w.take();
}

Profile decode_profile(std::span<const std::uint8_t> payload) {
    Reader r(payload);
    Profile p = get_profile(r);
    r.finish();
    return p;
}

std::vector<std::uint8_t> encode_ancestor(const AncestorProfile& ancestor) {
    Writer w;
    w.u32(static_cast<std::uint32_t>(ancestor.source_worker));
    w.str(ancestor.consensus.id());
    w.str(ancestor.consensus.residues());
    put_profile(w, ancestor.profile);
    return w.take();
}

AncestorProfile decode_ancestor(std::span<const std::uint8_t> payload) {
    Reader r(payload);
    const std::uint32_t worker = r.u32();
    std::string id = r.str();
    std::string residues = r.str();
    Profile p = get_profile(r);
    r.finish();
    return AncestorProfile{std::move(p), Sequence(std::move(id), std::move(residues)), worker};
}

std::vector<std::uint8_t> encode_tuned(const TunedAlignment& tuned) {
    Writer w;
    w.str(tuned.script.to_string());
    w.u32(static_cast<std::uint32_t>(tuned.alignment.depth()));
    for (const auto& row : tuned.alignment.rows()) {
        w.str(row.id);
        w.str(row.text);
    }
    return w.take();
}

TunedAlignment decode_tuned(std::span<const std::uint8_t> payload) {
    Reader r(payload);
    TunedAlignment t;
    t.script = EditScript::from_string(r.str());
    const std::uint32_t depth = r.u32();
    std::vector<AlignedRow> rows;
    rows.reserve(depth);
    for (std::uint32_t i = 0; i < depth; ++i) {
        std::string id = r.str();
        std::string text = r.str();
        rows.push_back({std::move(id), std::move(text)});
    }
    r.finish();
    t.alignment = Alignment(std::move(rows));
    return t;
}

}  // namespace dmsa
