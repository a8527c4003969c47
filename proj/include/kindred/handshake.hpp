#ifndef KINDRED_HANDSHAKE_HPP
#define KINDRED_HANDSHAKE_HPP

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "kindred/commitment.hpp"
#include "kindred/str_core.hpp"

namespace kindred {

enum class Role { Child, Parent };
enum class Phase { Idle, Requested, PeerVerified, Resolved, Keyed, Failed };

std::string to_string(Role r);
std::string to_string(Phase p);

// 64-byte key shared by both parties after resolution.
struct SessionKey {
    std::vector<std::uint8_t> bytes;  // KDF digest, 64 bytes

    std::string hex() const;
};

// Deterministic padding input: same (date, factor) on both sides yields
// the same padding string.
struct PaddingSeed {
    std::string date;
    std::string factor;
};

// 16 printable characters derived from the seed.
std::string make_padding(const PaddingSeed& seed);

struct TranscriptRecord {
    Phase phase = Phase::Idle;
    std::optional<std::string> emitted;  // canonical request JSON, if any
    std::optional<MatchVerdict> verdict;
};

std::string transcript_to_jsonl(const std::vector<TranscriptRecord>& transcript);

struct HandshakeConfig {
    CommitConfig commit;
    int default_ttl = 8;
};

// Three-round mutual authentication: H1 request, H2 counter-proof,
// H3 shared-allele resolution, then key derivation. Either role may
// initiate; the rounds differ only in which hash id they use.
class HandshakeSession {
public:
    HandshakeSession(Role role, StrProfile profile, SecondFactor factor, HandshakeConfig config = {});

    // Initiator: emit the H1 request. Idle -> Requested.
    DigestSetRequest initiate();

    // Responder: verify an incoming H1 request against a locally built one.
    // On Exact/ProbableMutation emits the H2 counter-proof and moves
    // Idle -> PeerVerified; otherwise returns nothing (the node just relays).
    std::optional<DigestSetRequest> respond(const DigestSetRequest& incoming);

    // Initiator: verify the H2 counter-proof. Requested -> PeerVerified.
    bool verify_counter(const DigestSetRequest& counter);

    // Either side at PeerVerified: emit the H3 resolution sets.
    DigestSetRequest resolution_offer();

    // Identify, per marker, which local allele's H3 commitment appears in
    // the counterpart's H3 set. PeerVerified -> Resolved, or Failed if some
    // marker has no intersecting allele.
    const std::map<std::string, Allele>& resolve_shared(const DigestSetRequest& counterpart);

    // KDF over the panel-ordered expanded shared alleles, the factor and
    // the padding. Resolved -> Keyed.
    SessionKey derive_key(const std::string& padding);

    Phase phase() const { return phase_; }
    Role role() const { return role_; }
    bool ambiguous_resolution() const { return ambiguous_; }
    const std::map<std::string, Allele>& shared_alleles() const { return shared_alleles_; }
    const std::vector<TranscriptRecord>& transcript() const { return transcript_; }
    const StrProfile& profile() const { return profile_; }

private:
    void record(std::optional<std::string> emitted, std::optional<MatchVerdict> verdict);
    void fail(const std::string& why);

    Role role_;
    Phase phase_ = Phase::Idle;
    StrProfile profile_;
    SecondFactor factor_;
    HandshakeConfig config_;
    std::map<std::string, Allele> shared_alleles_;
    bool ambiguous_ = false;
    std::vector<TranscriptRecord> transcript_;
};

}  // namespace kindred

#endif
