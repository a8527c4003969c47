#include "kindred/commitment.hpp"

#include <algorithm>
#include <cctype>

#include "json.hpp"
#include "kindred/errors.hpp"

namespace kindred {

using nlohmann::json;

namespace {

bool is_hex_char(char c) {
    return (c >= '0' && c <= '9') || (c >= 'a' && c <= 'f');
}

}  // namespace

SecondFactor::SecondFactor(std::string v) : value(std::move(v)) {
    if (value.empty())
        throw ValidationError("second authentication factor must be non-empty");
}

DigestSet::DigestSet(char a, char b) {
    a = static_cast<char>(std::tolower(static_cast<unsigned char>(a)));
    b = static_cast<char>(std::tolower(static_cast<unsigned char>(b)));
    if (!is_hex_char(a) || !is_hex_char(b))
        throw ValidationError("digest set characters must be hex digits");
    lo = std::min(a, b);
    hi = std::max(a, b);
}

std::string to_string(MatchDecision d) {
    switch (d) {
        case MatchDecision::Exact: return "exact";
        case MatchDecision::ProbableMutation: return "probable-mutation";
        case MatchDecision::NoMatch: return "no-match";
    }
    return "?";
}

std::string DigestSetRequest::canonical_json() const {
    json sets_obj = json::object();
    for (const auto& [name, set] : sets)
        sets_obj[name] = {std::string(1, set.lo), std::string(1, set.hi)};
    // nlohmann objects keep keys sorted, so dump() is canonical
    return json{{"hash", to_string(hash)}, {"ttl", ttl}, {"sets", sets_obj}}.dump();
}

DigestSetRequest DigestSetRequest::from_json(const std::string& text) {
    json doc;
    try {
        doc = json::parse(text);
    } catch (const json::parse_error& e) {
        throw ParseError(std::string("request JSON: ") + e.what());
    }
    if (!doc.is_object() || !doc.contains("hash") || !doc.contains("ttl") || !doc.contains("sets"))
        throw ParseError("request needs \"hash\", \"ttl\" and \"sets\"");
    DigestSetRequest req;
    req.hash = hash_id_from_string(doc["hash"].get<std::string>());
    req.ttl = doc["ttl"].get<int>();
    if (req.ttl < 0) throw ParseError("ttl must be non-negative");
    for (const auto& [name, chars] : doc["sets"].items()) {
        if (!chars.is_array() || chars.size() != 2)
            throw ParseError("digest set for \"" + name + "\" must hold exactly two characters");
        auto a = chars[0].get<std::string>();
        auto b = chars[1].get<std::string>();
        if (a.size() != 1 || b.size() != 1)
            throw ParseError("digest set entries must be single hex characters");
        req.sets.emplace(name, DigestSet(a[0], b[0]));
    }
    return req;
}

char commit_allele(std::string_view expanded, const SecondFactor& factor, HashId hash,
                   const CommitConfig& config) {
    // raw concatenation, no separator
    std::string preimage;
    preimage.reserve(expanded.size() + factor.value.size());
    preimage.append(expanded);
    preimage.append(factor.value);
    std::string hex = config.registry->digest_hex(hash, preimage);
    int idx = config.char_index_from_end;
    if (idx < 0 || idx >= static_cast<int>(hex.size()))
        throw ConfigError("commitment character index out of digest range");
    return hex[hex.size() - 1 - static_cast<std::size_t>(idx)];
}

DigestSetRequest build_request(const StrProfile& profile, const SecondFactor& factor, HashId hash,
                               int ttl, const CommitConfig& config) {
    if (profile.empty()) throw ValidationError("cannot build a request from an empty profile");
    if (ttl < 0) throw ValidationError("ttl must be non-negative");
    DigestSetRequest req;
    req.hash = hash;
    req.ttl = ttl;
    for (const auto& entry : profile) {
        char a = commit_allele(expand_allele(entry.marker.motif, entry.pair.first), factor, hash, config);
        char b = commit_allele(expand_allele(entry.marker.motif, entry.pair.second), factor, hash, config);
        req.sets.emplace(entry.marker.name, DigestSet(a, b));
    }
    return req;
}

bool marker_matches(const DigestSet& sent, const DigestSet& local) {
    return sent.intersects(local);
}

MatchVerdict compare_request(const DigestSetRequest& incoming, const DigestSetRequest& local,
                             const CommitConfig& config) {
    if (incoming.hash != local.hash)
        throw ValidationError("requests built with different hash ids (" + to_string(incoming.hash) +
                              " vs " + to_string(local.hash) + "); rebuild with " +
                              to_string(incoming.hash));
    MatchVerdict verdict;
    for (const auto& [name, set] : incoming.sets) {
        auto it = local.sets.find(name);
        if (it == local.sets.end())
            throw ValidationError("marker \"" + name + "\" missing from local request");
        bool ok = marker_matches(set, it->second);
        verdict.per_marker[name] = ok;
        if (ok) ++verdict.matched;
        ++verdict.total;
    }
    if (local.sets.size() != incoming.sets.size())
        throw ValidationError("requests cover different marker sets");
    if (verdict.matched == verdict.total)
        verdict.decision = MatchDecision::Exact;
    else if (verdict.matched >= verdict.total - config.mutation_slack)
        verdict.decision = MatchDecision::ProbableMutation;
    else
        verdict.decision = MatchDecision::NoMatch;
    return verdict;
}

}  // namespace kindred
