#include "kindred/whistle.hpp"

#include <algorithm>
#include <sstream>

#include "json.hpp"
#include "kindred/errors.hpp"
#include "kindred/hashing.hpp"
#include "kindred/rng.hpp"

namespace kindred {

using nlohmann::json;

OrganismDna parse_fasta(const std::string& text) {
    std::istringstream in(text);
    std::string line;
    OrganismDna dna;
    bool saw_header = false;
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        if (line[0] == '>') {
            if (saw_header) break;  // one record per input
            dna.label = line.substr(1);
            saw_header = true;
            continue;
        }
        for (char c : line) {
            if (c != 'A' && c != 'C' && c != 'G' && c != 'T')
                throw ParseError(std::string("non-ACGT character '") + c + "' in sequence");
            dna.sequence.push_back(c);
        }
    }
    if (dna.sequence.empty()) throw ParseError("FASTA input holds no sequence data");
    return dna;
}

WhistleKey derive_whistle_key(const OrganismDna& dna, const DropContext& ctx,
                              std::size_t prefix_len) {
    if (dna.sequence.size() < prefix_len)
        throw ValidationError("sequence shorter than the " + std::to_string(prefix_len) +
                              "-base key prefix");
    std::string preimage = dna.sequence.substr(0, prefix_len);
    std::string transcript = "dna[" + std::to_string(prefix_len) + "]";
    if (ctx.sentence) {
        preimage += *ctx.sentence;
        transcript += "+sentence";
    }
    if (ctx.address) {
        preimage += *ctx.address;
        transcript += "+address";
    }
    auto digest = HashRegistry::standard().digest(HashId::KDF, preimage);
    WhistleKey key;
    std::copy(digest.begin(), digest.end(), key.bytes.begin());
    key.transcript = std::move(transcript);
    return key;
}

namespace {

// keystream block i = SHA-512(key || nonce || block index)
void apply_keystream(const WhistleKey& key, const std::uint8_t* nonce, std::uint8_t* data,
                     std::size_t len, std::size_t offset) {
    std::string block_input(reinterpret_cast<const char*>(key.bytes.data()), key.bytes.size());
    block_input.append(reinterpret_cast<const char*>(nonce), kNonceSize);
    const std::size_t header = block_input.size();
    block_input.resize(header + 8);
    std::size_t pos = 0;
    while (pos < len) {
        std::uint64_t block = (offset + pos) / 64;
        for (int i = 0; i < 8; ++i)
            block_input[header + i] = static_cast<char>((block >> (56 - 8 * i)) & 0xff);
        auto ks = HashRegistry::standard().digest(HashId::KDF, block_input);
        std::size_t in_block = (offset + pos) % 64;
        while (in_block < 64 && pos < len) data[pos++] ^= ks[in_block++];
    }
}

std::array<std::uint8_t, 32> envelope_tag(const WhistleKey& key, const std::uint8_t* nonce_and_ct,
                                          std::size_t len) {
    return hmac_sha256(key.bytes.data(), key.bytes.size(), nonce_and_ct, len);
}

bool constant_time_equal(const std::uint8_t* a, const std::uint8_t* b, std::size_t len) {
    unsigned diff = 0;
    for (std::size_t i = 0; i < len; ++i) diff |= a[i] ^ b[i];
    return diff == 0;
}

}  // namespace

CipherEnvelope CipherEnvelope::from_payload(const std::string& payload) {
    if (payload.size() < kCipherOverhead) throw ParseError("cipher envelope too short");
    CipherEnvelope env;
    env.bytes.assign(payload.begin(), payload.end());
    return env;
}

CipherEnvelope encrypt_payload(const WhistleKey& key, const std::vector<std::uint8_t>& plaintext,
                               std::size_t padded_size, std::uint64_t nonce_seed) {
    if (plaintext.size() + kCipherOverhead > padded_size)
        throw ValidationError("plaintext of " + std::to_string(plaintext.size()) +
                              " bytes exceeds the standard size minus overhead; chunk it");
    CipherEnvelope env;
    env.bytes.assign(padded_size, 0);

    auto rng = std::mt19937_64(nonce_seed);
    for (std::size_t i = 0; i < kNonceSize; ++i)
        env.bytes[i] = static_cast<std::uint8_t>(rng());

    // ciphertext = keystream over (be32 length || plaintext)
    std::uint8_t* ct = env.bytes.data() + kNonceSize;
    std::uint32_t len = static_cast<std::uint32_t>(plaintext.size());
    ct[0] = static_cast<std::uint8_t>(len >> 24);
    ct[1] = static_cast<std::uint8_t>(len >> 16);
    ct[2] = static_cast<std::uint8_t>(len >> 8);
    ct[3] = static_cast<std::uint8_t>(len);
    std::copy(plaintext.begin(), plaintext.end(), ct + 4);
    std::size_t ct_len = 4 + plaintext.size();
    apply_keystream(key, env.bytes.data(), ct, ct_len, 0);

    auto tag = envelope_tag(key, env.bytes.data(), kNonceSize + ct_len);
    std::copy(tag.begin(), tag.end(), ct + ct_len);
    return env;
}

std::optional<std::vector<std::uint8_t>> try_decrypt(const WhistleKey& key,
                                                     const CipherEnvelope& envelope) {
    if (envelope.bytes.size() < kCipherOverhead) return std::nullopt;
    const std::uint8_t* nonce = envelope.bytes.data();
    const std::uint8_t* ct = nonce + kNonceSize;

    std::uint8_t len_bytes[4] = {ct[0], ct[1], ct[2], ct[3]};
    apply_keystream(key, nonce, len_bytes, 4, 0);
    std::uint32_t len = (std::uint32_t(len_bytes[0]) << 24) | (std::uint32_t(len_bytes[1]) << 16) |
                        (std::uint32_t(len_bytes[2]) << 8) | std::uint32_t(len_bytes[3]);
    if (len > envelope.bytes.size() - kCipherOverhead) return std::nullopt;  // wrong key

    std::size_t ct_len = 4 + len;
    auto tag = envelope_tag(key, envelope.bytes.data(), kNonceSize + ct_len);
    if (!constant_time_equal(tag.data(), ct + ct_len, kTagSize)) return std::nullopt;

    std::vector<std::uint8_t> plaintext(ct + 4, ct + 4 + len);
    apply_keystream(key, nonce, plaintext.data(), plaintext.size(), 4);
    return plaintext;
}

std::string WhistleSimReport::to_json() const {
    json events = json::array();
    for (const auto& e : decryptions)
        events.push_back({{"helper", e.helper},
                          {"received_round", e.received_round},
                          {"publish_round", e.publish_round}});
    return json{{"delivery", json::parse(delivery.to_json())}, {"decryptions", events}}.dump();
}

WhistleSimReport run_whistle_sim(const SocialGraph& graph, const NodeId& whistleblower,
                                 const CipherEnvelope& envelope,
                                 const std::vector<std::pair<NodeId, WhistleKey>>& helper_keys,
                                 WorldConfig config) {
    World world(graph, config);
    WhistleSimReport report;
    std::string payload = envelope.as_payload();
    for (const auto& [helper, _] : helper_keys) world.set_behavior(helper, BehaviorKind::WhistleHelper);
    world.set_receive_hook([&](const NodeId& node, const Envelope& env, int round) {
        if (env.payload != payload) return;
        for (const auto& [helper, key] : helper_keys) {
            if (helper != node) continue;
            if (try_decrypt(key, envelope)) {
                // publication delay in simulated days, one round per day
                auto rng = make_rng(config.seed, "whistle-wait/" + node);
                std::uniform_int_distribution<int> wait(7, 30);
                report.decryptions.push_back({node, round, round + wait(rng)});
            }
        }
    });
    world.originate(whistleblower,
                    Envelope::wrap(payload, config.default_ttl, config.padded_size));
    world.run_until_quiet();
    report.delivery.first_delivery_round = world.first_delivery();
    report.delivery.rounds = world.round();
    report.delivery.duplicates = world.duplicate_count();
    report.delivery.forwards = world.forward_count();
    report.delivery.coverage = world.first_delivery().size();
    return report;
}

std::string KeyspaceReport::to_json() const {
    return json{{"dna", {{"mantissa", dna_combinations.mantissa},
                         {"exponent", dna_combinations.exponent}}},
                {"total", {{"mantissa", total_combinations.mantissa},
                           {"exponent", total_combinations.exponent}}}}
        .dump();
}

KeyspaceReport keyspace_report(long long prefix_len_bases, double context_entropy_bits) {
    if (prefix_len_bases < 0) throw ValidationError("prefix length must be non-negative");
    KeyspaceReport report;
    long double log4 = std::log10(4.0L);
    long double log2 = std::log10(2.0L);
    report.dna_combinations = Magnitude::from_log10(prefix_len_bases * log4);
    report.total_combinations =
        Magnitude::from_log10(prefix_len_bases * log4 + context_entropy_bits * log2);
    return report;
}

}  // namespace kindred
