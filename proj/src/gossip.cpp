#include "kindred/gossip.hpp"

#include <algorithm>
#include <deque>

#include "json.hpp"
#include "kindred/errors.hpp"
#include "kindred/hashing.hpp"

namespace kindred {

using nlohmann::json;

void SocialGraph::add_node(const NodeId& id) {
    adjacency_.try_emplace(id);
}

void SocialGraph::add_edge(const NodeId& a, const NodeId& b) {
    if (a == b) throw ValidationError("self-loop on node \"" + a + "\"");
    adjacency_[a].insert(b);
    adjacency_[b].insert(a);
}

const std::set<NodeId>& SocialGraph::neighbors(const NodeId& id) const {
    auto it = adjacency_.find(id);
    if (it == adjacency_.end()) throw ValidationError("unknown node \"" + id + "\"");
    return it->second;
}

std::vector<NodeId> SocialGraph::nodes() const {
    std::vector<NodeId> out;
    out.reserve(adjacency_.size());
    for (const auto& [id, _] : adjacency_) out.push_back(id);
    return out;
}

std::size_t SocialGraph::edge_count() const {
    std::size_t twice = 0;
    for (const auto& [_, nbrs] : adjacency_) twice += nbrs.size();
    return twice / 2;
}

namespace {

std::map<NodeId, int> bfs_distances(const SocialGraph& g, const NodeId& start) {
    std::map<NodeId, int> dist{{start, 0}};
    std::deque<NodeId> queue{start};
    while (!queue.empty()) {
        NodeId cur = queue.front();
        queue.pop_front();
        for (const auto& nbr : g.neighbors(cur)) {
            if (!dist.count(nbr)) {
                dist[nbr] = dist[cur] + 1;
                queue.push_back(nbr);
            }
        }
    }
    return dist;
}

}  // namespace

int SocialGraph::diameter() const {
    int best = 0;
    for (const auto& [id, _] : adjacency_)
        for (const auto& [_, d] : bfs_distances(*this, id)) best = std::max(best, d);
    return best;
}

std::set<NodeId> SocialGraph::component_of(const NodeId& origin) const {
    std::set<NodeId> comp;
    for (const auto& [id, _] : bfs_distances(*this, origin)) comp.insert(id);
    return comp;
}

SocialGraph SocialGraph::from_json(const std::string& text) {
    json doc;
    try {
        doc = json::parse(text);
    } catch (const json::parse_error& e) {
        throw ParseError(std::string("graph JSON: ") + e.what());
    }
    SocialGraph g;
    if (doc.contains("nodes"))
        for (const auto& n : doc["nodes"]) g.add_node(n.get<std::string>());
    if (doc.contains("edges"))
        for (const auto& e : doc["edges"]) {
            if (!e.is_array() || e.size() != 2) throw ParseError("edge must be a pair of node ids");
            g.add_edge(e[0].get<std::string>(), e[1].get<std::string>());
        }
    return g;
}

std::string SocialGraph::to_json() const {
    json edges = json::array();
    for (const auto& [id, nbrs] : adjacency_)
        for (const auto& nbr : nbrs)
            if (id < nbr) edges.push_back({id, nbr});
    return json{{"nodes", nodes()}, {"edges", edges}}.dump();
}

Envelope Envelope::wrap(std::string payload, int ttl, std::size_t padded_size) {
    if (ttl < 0) throw ValidationError("envelope ttl must be non-negative");
    if (payload.size() > padded_size)
        throw ValidationError("payload exceeds the standard message size");
    Envelope env;
    env.fingerprint = sha256_hex(payload);
    env.payload = std::move(payload);
    env.ttl = ttl;
    env.padded_size = padded_size;
    return env;
}

World::World(SocialGraph graph, WorldConfig config)
    : graph_(std::move(graph)), config_(config) {}

void World::set_behavior(const NodeId& id, BehaviorKind kind) {
    if (!graph_.has_node(id)) throw ValidationError("behavior for unknown node \"" + id + "\"");
    behaviors_[id] = kind;
}

BehaviorKind World::behavior(const NodeId& id) const {
    auto it = behaviors_.find(id);
    return it == behaviors_.end() ? BehaviorKind::Relay : it->second;
}

void World::monitor_edge(const NodeId& a, const NodeId& b) {
    if (!graph_.has_node(a) || !graph_.has_node(b))
        throw ValidationError("monitored edge endpoints must be graph nodes");
    monitored_.insert({std::min(a, b), std::max(a, b)});
}

bool World::originate(const NodeId& origin, Envelope env) {
    if (!graph_.has_node(origin)) throw ValidationError("origin \"" + origin + "\" not in graph");
    if (env.padded_size != config_.padded_size)
        throw ValidationError("envelope violates the standard message size");
    int window = round_ / config_.rate_window;
    int& count = originations_[origin][window];
    if (count >= config_.rate_limit) {
        ++rejected_;
        return false;
    }
    ++count;
    ++admitted_;
    deliver(origin, env, origin);
    return true;
}

void World::deliver(const NodeId& node, const Envelope& env, const NodeId& from) {
    if (node != from && monitored_.count({std::min(node, from), std::max(node, from)}))
        observations_.push_back({round_, from, node, env.fingerprint});
    auto& seen = seen_[node];
    if (seen.count(env.fingerprint)) {
        ++duplicates_;
        return;
    }
    seen.insert(env.fingerprint);
    first_delivery_.emplace(node, round_);
    // forward first, then process locally: a decrypting helper cannot be
    // told apart from a pure relay
    if (behavior(node) != BehaviorKind::AdversaryDropper && env.ttl > 0) {
        Envelope next = env;
        next.ttl = env.ttl - 1;
        for (const auto& nbr : graph_.neighbors(node)) {
            in_flight_.push_back({node, nbr, next});
            ++forwards_;
        }
    }
    if (receive_hook_) receive_hook_(node, env, round_);
}

void World::step() {
    ++round_;
    std::vector<InFlight> due;
    due.swap(in_flight_);
    // deterministic delivery order: recipient id, then sender id
    std::stable_sort(due.begin(), due.end(), [](const InFlight& a, const InFlight& b) {
        return std::tie(a.to, a.from) < std::tie(b.to, b.from);
    });
    std::map<NodeId, int> inbox_sizes;
    for (const auto& msg : due) {
        if (msg.env.padded_size != config_.padded_size)
            throw ConfigError("message size invariant violated on edge " + msg.from + "-" + msg.to);
        ++inbox_sizes[msg.to];
        deliver(msg.to, msg.env, msg.from);
    }
    for (const auto& [node, size] : inbox_sizes) {
        int& peak = peak_inbox_[node];
        peak = std::max(peak, size);
    }
}

void World::run_until_quiet(int max_rounds) {
    while (!in_flight_.empty() && round_ < max_rounds) step();
}

namespace {

DeliveryReport report_from(const World& world) {
    DeliveryReport report;
    report.first_delivery_round = world.first_delivery();
    report.rounds = world.round();
    report.duplicates = world.duplicate_count();
    report.forwards = world.forward_count();
    report.coverage = world.first_delivery().size();
    return report;
}

json observations_json(const std::vector<EdgeObservation>& obs) {
    json arr = json::array();
    for (const auto& o : obs)
        arr.push_back({{"round", o.round}, {"from", o.from}, {"to", o.to}, {"fingerprint", o.fingerprint}});
    return arr;
}

// Monitored transcript with rounds rebased to the first observation and
// the fingerprint dropped; what an observer can compare across candidates.
std::vector<std::tuple<int, NodeId, NodeId>> normalized(const std::vector<EdgeObservation>& obs) {
    if (obs.empty()) return {};
    int base = obs.front().round;
    for (const auto& o : obs) base = std::min(base, o.round);
    std::vector<std::tuple<int, NodeId, NodeId>> out;
    out.reserve(obs.size());
    for (const auto& o : obs) out.emplace_back(o.round - base, o.from, o.to);
    std::sort(out.begin(), out.end());
    return out;
}

}  // namespace

std::string DeliveryReport::to_json() const {
    json rounds_obj = json::object();
    for (const auto& [node, round] : first_delivery_round) rounds_obj[node] = round;
    return json{{"first_delivery_round", rounds_obj},
                {"rounds", rounds},
                {"duplicates", duplicates},
                {"forwards", forwards},
                {"coverage", coverage}}
        .dump();
}

std::string RateLimitReport::to_json() const {
    json peaks = json::object();
    for (const auto& [node, peak] : peak_inbox) peaks[node] = peak;
    return json{{"admitted", admitted}, {"rejected", rejected}, {"peak_inbox", peaks}}.dump();
}

std::string AnonymityReport::to_json() const {
    return json{{"transcript", observations_json(transcript)},
                {"consistent_origins", consistent_origins},
                {"ambiguous", ambiguous}}
        .dump();
}

std::string TaggingReport::to_json() const {
    return json{{"tagged", json::parse(tagged.to_json())},
                {"untagged", json::parse(untagged.to_json())},
                {"coverage_equal", coverage_equal},
                {"helper_decrypt_round", helper_decrypt_round}}
        .dump();
}

DeliveryReport run_flood(const SocialGraph& graph, const NodeId& origin, const std::string& payload,
                         WorldConfig config) {
    World world(graph, config);
    world.originate(origin, Envelope::wrap(payload, config.default_ttl, config.padded_size));
    world.run_until_quiet();
    return report_from(world);
}

DeliveryReport scenario_dos(const SocialGraph& graph, const NodeId& origin, const std::string& payload,
                            const std::set<NodeId>& droppers, WorldConfig config) {
    World world(graph, config);
    for (const auto& d : droppers) world.set_behavior(d, BehaviorKind::AdversaryDropper);
    world.originate(origin, Envelope::wrap(payload, config.default_ttl, config.padded_size));
    world.run_until_quiet();
    return report_from(world);
}

RateLimitReport scenario_flooding(const SocialGraph& graph, const NodeId& attacker, int volume,
                                  WorldConfig config) {
    World world(graph, config);
    for (int i = 0; i < volume; ++i) {
        std::string payload = "attack-" + std::to_string(i);
        world.originate(attacker, Envelope::wrap(payload, config.default_ttl, config.padded_size));
    }
    world.run_until_quiet();
    RateLimitReport report;
    report.admitted = world.admitted_count();
    report.rejected = world.rejected_count();
    report.peak_inbox = world.peak_inbox();
    return report;
}

namespace {

std::vector<EdgeObservation> observe_flood(const SocialGraph& graph, const NodeId& origin,
                                           const std::vector<std::pair<NodeId, NodeId>>& edges,
                                           const std::string& payload, const WorldConfig& config) {
    World world(graph, config);
    for (const auto& [a, b] : edges) world.monitor_edge(a, b);
    world.originate(origin, Envelope::wrap(payload, config.default_ttl, config.padded_size));
    world.run_until_quiet();
    return world.observations();
}

}  // namespace

AnonymityReport scenario_origin_anonymity(const SocialGraph& graph,
                                          const std::vector<std::pair<NodeId, NodeId>>& observer_edges,
                                          const NodeId& origin, WorldConfig config) {
    AnonymityReport report;
    report.transcript = observe_flood(graph, origin, observer_edges, "request", config);
    auto observed = normalized(report.transcript);
    for (const auto& candidate : graph.nodes()) {
        auto replay = observe_flood(graph, candidate, observer_edges, "request", config);
        if (normalized(replay) == observed) report.consistent_origins.push_back(candidate);
    }
    report.ambiguous = report.consistent_origins.size() >= 2;
    return report;
}

TaggingReport scenario_tagging(const SocialGraph& graph, const NodeId& origin,
                               const std::string& tagged_payload, const NodeId& helper,
                               WorldConfig config) {
    TaggingReport report;
    {
        World world(graph, config);
        world.set_behavior(helper, BehaviorKind::WhistleHelper);
        int decrypt_round = -1;
        world.set_receive_hook([&](const NodeId& node, const Envelope& env, int round) {
            if (node == helper && env.payload == tagged_payload) decrypt_round = round;
        });
        world.originate(origin, Envelope::wrap(tagged_payload, config.default_ttl, config.padded_size));
        world.run_until_quiet();
        report.tagged = report_from(world);
        report.helper_decrypt_round = decrypt_round;
    }
    report.untagged = run_flood(graph, origin, "untagged-control", config);
    report.coverage_equal =
        report.tagged.first_delivery_round == report.untagged.first_delivery_round;
    return report;
}

}  // namespace kindred
