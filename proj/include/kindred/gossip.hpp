#ifndef KINDRED_GOSSIP_HPP
#define KINDRED_GOSSIP_HPP

#include <cstdint>
#include <functional>
#include <map>
#include <set>
#include <string>
#include <vector>

namespace kindred {

using NodeId = std::string;

// Undirected contact graph; no self-loops, adjacency kept symmetric.
class SocialGraph {
public:
    void add_node(const NodeId& id);
    void add_edge(const NodeId& a, const NodeId& b);

    bool has_node(const NodeId& id) const { return adjacency_.count(id) != 0; }
    const std::set<NodeId>& neighbors(const NodeId& id) const;
    std::vector<NodeId> nodes() const;
    std::size_t node_count() const { return adjacency_.size(); }
    std::size_t edge_count() const;

    int diameter() const;  // max over node pairs in the same component
    std::set<NodeId> component_of(const NodeId& origin) const;

    static SocialGraph from_json(const std::string& text);
    std::string to_json() const;

private:
    std::map<NodeId, std::set<NodeId>> adjacency_;
};

// What travels on an edge: opaque padded payload plus relay bookkeeping.
// No sender or recipient fields.
struct Envelope {
    std::string fingerprint;  // sha256 hex of the payload bytes, the dedup key
    std::string payload;
    int ttl = 0;
    std::size_t padded_size = 0;

    static Envelope wrap(std::string payload, int ttl, std::size_t padded_size);
};

enum class BehaviorKind { Relay, Seeker, WhistleHelper, AdversaryObserver, AdversaryDropper };

struct WorldConfig {
    int default_ttl = 8;
    int rate_limit = 5;       // originations per node per window
    int rate_window = 100;    // rounds
    std::size_t padded_size = 4096;
    std::uint64_t seed = 0;
    bool limit_forwards = false;  // relays are not rate limited by default
};

struct EdgeObservation {
    int round = 0;
    NodeId from;
    NodeId to;
    std::string fingerprint;
};

// Synchronous-round flood simulator. Every node forwards each newly seen,
// non-expired envelope to all neighbors; duplicates are absorbed. Relaying
// is unconditional: local processing hooks run after the forward decision,
// so no behavior can halt propagation (the anti-tagging rule).
class World {
public:
    World(SocialGraph graph, WorldConfig config = {});

    void set_behavior(const NodeId& id, BehaviorKind kind);
    BehaviorKind behavior(const NodeId& id) const;

    // Called once per node per fingerprint, on first delivery.
    using ReceiveHook = std::function<void(const NodeId& node, const Envelope& env, int round)>;
    void set_receive_hook(ReceiveHook hook) { receive_hook_ = std::move(hook); }

    void monitor_edge(const NodeId& a, const NodeId& b);

    // Origination counts against the origin's rate limit; returns false
    // when the message is rejected at the origin's own edge.
    bool originate(const NodeId& origin, Envelope env);

    void step();
    void run_until_quiet(int max_rounds = 100000);

    int round() const { return round_; }
    bool quiet() const { return in_flight_.empty(); }
    const SocialGraph& graph() const { return graph_; }
    const WorldConfig& config() const { return config_; }

    const std::map<NodeId, int>& first_delivery() const { return first_delivery_; }
    long duplicate_count() const { return duplicates_; }
    long forward_count() const { return forwards_; }
    int admitted_count() const { return admitted_; }
    int rejected_count() const { return rejected_; }
    const std::map<NodeId, int>& peak_inbox() const { return peak_inbox_; }
    const std::vector<EdgeObservation>& observations() const { return observations_; }

private:
    struct InFlight {
        NodeId from;
        NodeId to;
        Envelope env;
    };

    void deliver(const NodeId& node, const Envelope& env, const NodeId& from);

    SocialGraph graph_;
    WorldConfig config_;
    int round_ = 0;
    std::map<NodeId, BehaviorKind> behaviors_;
    std::map<NodeId, std::set<std::string>> seen_;
    std::vector<InFlight> in_flight_;   // deliveries due next step
    std::map<NodeId, int> first_delivery_;
    std::map<NodeId, std::map<int, int>> originations_;  // node -> window -> count
    std::set<std::pair<NodeId, NodeId>> monitored_;      // stored with a < b
    std::vector<EdgeObservation> observations_;
    ReceiveHook receive_hook_;
    long duplicates_ = 0;
    long forwards_ = 0;
    int admitted_ = 0;
    int rejected_ = 0;
    std::map<NodeId, int> peak_inbox_;
};

struct DeliveryReport {
    std::map<NodeId, int> first_delivery_round;
    int rounds = 0;
    long duplicates = 0;
    long forwards = 0;
    std::size_t coverage = 0;

    std::string to_json() const;
};

DeliveryReport run_flood(const SocialGraph& graph, const NodeId& origin, const std::string& payload,
                         WorldConfig config = {});

// Droppers absorb instead of relaying; delivery survives while origin and
// the rest stay connected in the residual graph.
DeliveryReport scenario_dos(const SocialGraph& graph, const NodeId& origin, const std::string& payload,
                            const std::set<NodeId>& droppers, WorldConfig config = {});

struct RateLimitReport {
    int admitted = 0;
    int rejected = 0;
    std::map<NodeId, int> peak_inbox;

    std::string to_json() const;
};

RateLimitReport scenario_flooding(const SocialGraph& graph, const NodeId& attacker, int volume,
                                  WorldConfig config = {});

struct AnonymityReport {
    std::vector<EdgeObservation> transcript;
    std::vector<NodeId> consistent_origins;
    bool ambiguous = false;

    std::string to_json() const;
};

// Replay-based indistinguishability: a node is a consistent origin when a
// flood started there reproduces the monitored transcript up to a round
// shift (the observer does not know the injection round).
AnonymityReport scenario_origin_anonymity(const SocialGraph& graph,
                                          const std::vector<std::pair<NodeId, NodeId>>& observer_edges,
                                          const NodeId& origin, WorldConfig config = {});

struct TaggingReport {
    DeliveryReport tagged;
    DeliveryReport untagged;
    bool coverage_equal = false;
    int helper_decrypt_round = -1;

    std::string to_json() const;
};

// A helper that recognizes (decrypts) the tagged payload must not change
// propagation; coverage of tagged and untagged runs is compared.
TaggingReport scenario_tagging(const SocialGraph& graph, const NodeId& origin,
                               const std::string& tagged_payload, const NodeId& helper,
                               WorldConfig config = {});

}  // namespace kindred

#endif
