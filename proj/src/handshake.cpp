#include "kindred/handshake.hpp"

#include "json.hpp"
#include "kindred/errors.hpp"
#include "kindred/hashing.hpp"

namespace kindred {

using nlohmann::json;

std::string to_string(Role r) {
    return r == Role::Child ? "child" : "parent";
}

std::string to_string(Phase p) {
    switch (p) {
        case Phase::Idle: return "idle";
        case Phase::Requested: return "requested";
        case Phase::PeerVerified: return "peer-verified";
        case Phase::Resolved: return "resolved";
        case Phase::Keyed: return "keyed";
        case Phase::Failed: return "failed";
    }
    return "?";
}

std::string SessionKey::hex() const {
    static const char* digits = "0123456789abcdef";
    std::string out;
    out.reserve(bytes.size() * 2);
    for (auto b : bytes) {
        out.push_back(digits[b >> 4]);
        out.push_back(digits[b & 0x0f]);
    }
    return out;
}

std::string make_padding(const PaddingSeed& seed) {
    // 16 printable characters, same on both sides for equal seeds
    std::string hex = HashRegistry::standard().digest_hex(HashId::KDF, seed.date + "|" + seed.factor);
    return hex.substr(0, 16);
}

namespace {

json verdict_to_json(const MatchVerdict& v) {
    json per = json::object();
    for (const auto& [name, ok] : v.per_marker) per[name] = ok;
    return {{"per_marker", per},
            {"matched", v.matched},
            {"total", v.total},
            {"decision", to_string(v.decision)}};
}

}  // namespace

std::string transcript_to_jsonl(const std::vector<TranscriptRecord>& transcript) {
    std::string out;
    for (const auto& rec : transcript) {
        json line{{"phase", to_string(rec.phase)}};
        line["emitted"] = rec.emitted ? json::parse(*rec.emitted) : json(nullptr);
        if (rec.verdict) line["verdict"] = verdict_to_json(*rec.verdict);
        out += line.dump();
        out += '\n';
    }
    return out;
}

HandshakeSession::HandshakeSession(Role role, StrProfile profile, SecondFactor factor,
                                   HandshakeConfig config)
    : role_(role), profile_(std::move(profile)), factor_(std::move(factor)), config_(config) {}

void HandshakeSession::record(std::optional<std::string> emitted, std::optional<MatchVerdict> verdict) {
    transcript_.push_back({phase_, std::move(emitted), std::move(verdict)});
}

void HandshakeSession::fail(const std::string& why) {
    phase_ = Phase::Failed;
    record(std::nullopt, std::nullopt);
    throw StateError(why);
}

DigestSetRequest HandshakeSession::initiate() {
    if (phase_ != Phase::Idle)
        throw StateError("initiate requires phase idle, session is " + to_string(phase_));
    auto req = build_request(profile_, factor_, HashId::H1, config_.default_ttl, config_.commit);
    phase_ = Phase::Requested;
    record(req.canonical_json(), std::nullopt);
    return req;
}

std::optional<DigestSetRequest> HandshakeSession::respond(const DigestSetRequest& incoming) {
    if (phase_ != Phase::Idle)
        throw StateError("respond requires phase idle, session is " + to_string(phase_));
    if (incoming.hash != HashId::H1) return std::nullopt;  // ignore and relay
    auto local = build_request(profile_, factor_, HashId::H1, config_.default_ttl, config_.commit);
    MatchVerdict verdict;
    try {
        verdict = compare_request(incoming, local, config_.commit);
    } catch (const ValidationError&) {
        return std::nullopt;  // different panel, not for us
    }
    if (verdict.decision == MatchDecision::NoMatch) {
        record(std::nullopt, verdict);
        return std::nullopt;
    }
    auto counter = build_request(profile_, factor_, HashId::H2, config_.default_ttl, config_.commit);
    phase_ = Phase::PeerVerified;
    record(counter.canonical_json(), verdict);
    return counter;
}

bool HandshakeSession::verify_counter(const DigestSetRequest& counter) {
    if (phase_ != Phase::Requested)
        throw StateError("verify_counter requires phase requested, session is " + to_string(phase_));
    if (counter.hash != HashId::H2) return false;
    auto local = build_request(profile_, factor_, HashId::H2, config_.default_ttl, config_.commit);
    MatchVerdict verdict;
    try {
        verdict = compare_request(counter, local, config_.commit);
    } catch (const ValidationError&) {
        return false;
    }
    if (verdict.decision == MatchDecision::NoMatch) {
        record(std::nullopt, verdict);
        return false;
    }
    phase_ = Phase::PeerVerified;
    record(std::nullopt, verdict);
    return true;
}

DigestSetRequest HandshakeSession::resolution_offer() {
    if (phase_ != Phase::PeerVerified)
        throw StateError("resolution_offer requires phase peer-verified, session is " + to_string(phase_));
    auto req = build_request(profile_, factor_, HashId::H3, config_.default_ttl, config_.commit);
    record(req.canonical_json(), std::nullopt);
    return req;
}

const std::map<std::string, Allele>& HandshakeSession::resolve_shared(
    const DigestSetRequest& counterpart) {
    if (phase_ != Phase::PeerVerified)
        throw StateError("resolve_shared requires phase peer-verified, session is " + to_string(phase_));
    if (counterpart.hash != HashId::H3)
        throw StateError("resolution round must use H3, got " + to_string(counterpart.hash));
    for (const auto& entry : profile_) {
        auto it = counterpart.sets.find(entry.marker.name);
        if (it == counterpart.sets.end())
            fail("counterpart resolution omits marker " + entry.marker.name);
        const DigestSet& peer = it->second;
        std::vector<Allele> candidates;
        for (const Allele& a : {entry.pair.first, entry.pair.second}) {
            char c = commit_allele(expand_allele(entry.marker.motif, a), factor_, HashId::H3,
                                   config_.commit);
            if (c == peer.lo || c == peer.hi) {
                if (candidates.empty() || candidates.back() != a) candidates.push_back(a);
            }
        }
        if (candidates.empty())
            fail("no shared allele at marker " + entry.marker.name + " during resolution");
        if (candidates.size() > 1) {
            // double collision: deterministic tie-break, smaller allele
            ambiguous_ = true;
        }
        shared_alleles_[entry.marker.name] = candidates.front();
    }
    phase_ = Phase::Resolved;
    record(std::nullopt, std::nullopt);
    return shared_alleles_;
}

SessionKey HandshakeSession::derive_key(const std::string& padding) {
    if (phase_ != Phase::Resolved)
        throw StateError("derive_key requires phase resolved, session is " + to_string(phase_));
    std::string preimage;
    for (const auto& entry : profile_) {
        auto it = shared_alleles_.find(entry.marker.name);
        if (it == shared_alleles_.end())
            throw StateError("marker " + entry.marker.name + " unresolved before key derivation");
        preimage += expand_allele(entry.marker.motif, it->second);
    }
    preimage += factor_.value;
    preimage += padding;
    SessionKey key{config_.commit.registry->digest(HashId::KDF, preimage)};
    phase_ = Phase::Keyed;
    record(std::nullopt, std::nullopt);
    return key;
}

}  // namespace kindred
