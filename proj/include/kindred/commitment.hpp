#ifndef KINDRED_COMMITMENT_HPP
#define KINDRED_COMMITMENT_HPP

#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "kindred/hashing.hpp"
#include "kindred/str_core.hpp"

namespace kindred {

// The "something you know" factor shared by separated relatives
// (birth date, place, family secret). Must be non-empty.
struct SecondFactor {
    std::string value;

    explicit SecondFactor(std::string v);
};

// Multiset of two lowercase hex characters; (6,6) is legal and distinct
// from a singleton. Stored sorted.
struct DigestSet {
    char lo = '0';
    char hi = '0';

    DigestSet() = default;
    DigestSet(char a, char b);

    auto operator<=>(const DigestSet&) const = default;

    // true iff the multisets share at least one character
    bool intersects(const DigestSet& other) const {
        return lo == other.lo || lo == other.hi || hi == other.lo || hi == other.hi;
    }
};

// The wire object flooded through the network. Carries no sender identity.
struct DigestSetRequest {
    HashId hash = HashId::H1;
    int ttl = 0;
    std::map<std::string, DigestSet> sets;  // marker name -> pair of hex chars

    // Canonical JSON bytes: markers sorted by name, hex lowercase, set
    // characters sorted. Also the dedup fingerprint input in the simulator.
    std::string canonical_json() const;
    static DigestSetRequest from_json(const std::string& text);
};

enum class MatchDecision { Exact, ProbableMutation, NoMatch };

std::string to_string(MatchDecision d);

struct MatchVerdict {
    std::map<std::string, bool> per_marker;
    int matched = 0;
    int total = 0;
    MatchDecision decision = MatchDecision::NoMatch;
};

struct CommitConfig {
    const HashRegistry* registry = &HashRegistry::standard();
    // which hex character of the digest is committed, counted from the end
    int char_index_from_end = 0;
    // ProbableMutation when matched >= total - mutation_slack
    int mutation_slack = 1;
};

// Last hex character of hash(expanded_allele || factor); the one-way
// commitment to one allele.
char commit_allele(std::string_view expanded, const SecondFactor& factor, HashId hash,
                   const CommitConfig& config = {});

DigestSetRequest build_request(const StrProfile& profile, const SecondFactor& factor, HashId hash,
                               int ttl, const CommitConfig& config = {});

bool marker_matches(const DigestSet& sent, const DigestSet& local);

MatchVerdict compare_request(const DigestSetRequest& incoming, const DigestSetRequest& local,
                             const CommitConfig& config = {});

}  // namespace kindred

#endif
