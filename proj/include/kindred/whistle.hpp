#ifndef KINDRED_WHISTLE_HPP
#define KINDRED_WHISTLE_HPP

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "kindred/bignum.hpp"
#include "kindred/gossip.hpp"

namespace kindred {

// A sequenced organism: the dead-drop key material.
struct OrganismDna {
    std::string sequence;  // over {A,C,G,T}
    std::string label;
};

OrganismDna parse_fasta(const std::string& text);

// Optional context bound into the key: the book sentence and the drop
// address. Both absent is the mailed-organism variant.
struct DropContext {
    std::optional<std::string> sentence;
    std::optional<std::string> address;
};

struct WhistleKey {
    std::array<std::uint8_t, 64> bytes{};
    std::string transcript;  // which fields entered the derivation

    bool operator==(const WhistleKey&) const = default;
};

inline constexpr std::size_t kDefaultDnaPrefix = 1000;

// KDF over (first prefix_len bases || sentence? || address?).
WhistleKey derive_whistle_key(const OrganismDna& dna, const DropContext& ctx,
                              std::size_t prefix_len = kDefaultDnaPrefix);

inline constexpr std::size_t kNonceSize = 16;
inline constexpr std::size_t kTagSize = 32;
// nonce + encrypted length prefix + tag
inline constexpr std::size_t kCipherOverhead = kNonceSize + 4 + kTagSize;

// Binary layout: 16-byte nonce || ciphertext || 32-byte tag || zero padding
// to the standard size. The ciphertext's first 4 bytes encrypt the
// plaintext length, so the tag position is recoverable from the key alone.
struct CipherEnvelope {
    std::vector<std::uint8_t> bytes;

    std::string as_payload() const { return std::string(bytes.begin(), bytes.end()); }
    static CipherEnvelope from_payload(const std::string& payload);
};

// Keyed-hash keystream with an HMAC tag over nonce||ciphertext
// (encrypt-then-authenticate); trial decryption can detect success.
CipherEnvelope encrypt_payload(const WhistleKey& key, const std::vector<std::uint8_t>& plaintext,
                               std::size_t padded_size, std::uint64_t nonce_seed);

// Returns the plaintext iff the tag verifies under this key.
std::optional<std::vector<std::uint8_t>> try_decrypt(const WhistleKey& key,
                                                     const CipherEnvelope& envelope);

struct DecryptionEvent {
    NodeId helper;
    int received_round = 0;
    int publish_round = 0;  // received + seeded uniform wait in [7, 30] days
};

struct WhistleSimReport {
    DeliveryReport delivery;
    std::vector<DecryptionEvent> decryptions;

    std::string to_json() const;
};

// Floods a ciphertext from the whistleblower; each helper tries every key
// it holds on arrival and, on success, schedules publication after a
// seeded random wait. Helpers always relay regardless of outcome.
WhistleSimReport run_whistle_sim(const SocialGraph& graph, const NodeId& whistleblower,
                                 const CipherEnvelope& envelope,
                                 const std::vector<std::pair<NodeId, WhistleKey>>& helper_keys,
                                 WorldConfig config = {});

struct KeyspaceReport {
    Magnitude dna_combinations;    // 4^prefix_len
    Magnitude total_combinations;  // times 2^context_entropy_bits

    std::string to_json() const;
};

KeyspaceReport keyspace_report(long long prefix_len_bases, double context_entropy_bits = 0.0);

}  // namespace kindred

#endif
