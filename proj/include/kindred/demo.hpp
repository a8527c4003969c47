#ifndef KINDRED_DEMO_HPP
#define KINDRED_DEMO_HPP

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "kindred/commitment.hpp"
#include "kindred/gossip.hpp"
#include "kindred/handshake.hpp"
#include "kindred/str_core.hpp"

namespace kindred {

// Fixture for an end-to-end mutual-authentication replay over a contact
// graph: two related parties, a shared second factor, and bystanders who
// check requests against their own profiles and relay.
struct DemoFixture {
    SecondFactor factor{"?"};
    std::string padding;
    SocialGraph graph;
    NodeId initiator_node;
    NodeId responder_node;
    Role initiator_role = Role::Parent;
    StrProfile initiator_profile;
    StrProfile responder_profile;

    struct Bystander {
        NodeId node;
        SecondFactor factor{"?"};
        StrProfile profile;
    };
    std::vector<Bystander> bystanders;

    // printed digest sets to report agreement against, keyed by hash id
    std::map<HashId, std::map<std::string, DigestSet>> expected_sets;

    static DemoFixture from_json(const std::string& text);
};

struct DemoResult {
    MatchVerdict h1_verdict;   // responder's view of the H1 request
    MatchVerdict h2_verdict;   // initiator's view of the counter-proof
    std::map<std::string, Allele> shared_alleles;
    SessionKey initiator_key;
    SessionKey responder_key;
    bool keys_equal = false;
    int h1_arrival_round = -1;  // first-delivery round at the responder
    int bystander_responses = 0;
    // per hash id, per marker: does the built set equal the printed one
    std::map<HashId, std::map<std::string, bool>> expected_agreement;
    std::string initiator_transcript;  // JSON lines
    std::string responder_transcript;

    std::string to_json() const;
};

DemoResult run_handshake_demo(const DemoFixture& fixture, const HandshakeConfig& config = {});

}  // namespace kindred

#endif
