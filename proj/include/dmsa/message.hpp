#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "dmsa/ancestor.hpp"
#include "dmsa/pairwise.hpp"
#include "dmsa/profile.hpp"
#include "dmsa/seqcore.hpp"

namespace dmsa {

enum class MessageKind : std::uint8_t {
    kSampleSeqs = 1,      // global-sample sequences, all-to-all
    kSampleRanks = 2,     // regular-sample ranks, worker -> root
    kPivots = 3,          // bucket boundaries, root -> all
    kSeqBatch = 4,        // redistributed sequences
    kLocalAncestor = 5,   // worker -> root
    kGlobalAncestor = 6,  // root -> workers
    kTunedAlignment = 7,  // worker -> root
};

std::string_view to_string(MessageKind kind);

// Wire layout, little-endian:
//   u32 from | u32 to | u8 kind | u32 payload_len | payload
// Payload primitives: u32 counts/lengths, raw bytes for strings, IEEE-754
// binary64 for reals.
struct Message {
    std::uint32_t from = 0;
    std::uint32_t to = 0;
    MessageKind kind = MessageKind::kSampleSeqs;
    std::vector<std::uint8_t> payload;

    std::vector<std::uint8_t> encode() const;
    static Message decode(std::span<const std::uint8_t> bytes);
    std::size_t wire_size() const noexcept { return kHeaderSize + payload.size(); }

    static constexpr std::size_t kHeaderSize = 13;
};

// Sequences travel with their position in the original input.
struct IndexedSequence {
    std::uint32_t input_index = 0;
    Sequence seq;
};

std::vector<std::uint8_t> encode_sequences(std::span<const IndexedSequence> seqs);
std::vector<IndexedSequence> decode_sequences(std::span<const std::uint8_t> payload);

std::vector<std::uint8_t> encode_reals(std::span<const double> values);
std::vector<double> decode_reals(std::span<const std::uint8_t> payload);

std::vector<std::uint8_t> encode_profile(const Profile& profile);
Profile decode_profile(std::span<const std::uint8_t> payload);

std::vector<std::uint8_t> encode_ancestor(const AncestorProfile& ancestor);
AncestorProfile decode_ancestor(std::span<const std::uint8_t> payload);

std::vector<std::uint8_t> encode_tuned(const TunedAlignment& tuned);
TunedAlignment decode_tuned(std::span<const std::uint8_t> payload);

// Size of one encoded sequence record inside a SEQ_BATCH / SAMPLE_SEQS payload.
inline std::size_t encoded_sequence_size(const Sequence& s) noexcept {
    return 4 + 4 + s.id().size() + 4 + s.residues().size();
}

}  // namespace dmsa
