#include "kindred/demo.hpp"

#include "json.hpp"
#include "kindred/errors.hpp"

namespace kindred {

using nlohmann::json;

namespace {

StrProfile profile_from(const json& doc) {
    return parse_profile(doc.dump());
}

}  // namespace

DemoFixture DemoFixture::from_json(const std::string& text) {
    json doc;
    try {
        doc = json::parse(text);
    } catch (const json::parse_error& e) {
        throw ParseError(std::string("fixture JSON: ") + e.what());
    }
    DemoFixture fx;
    fx.factor = SecondFactor(doc.at("factor").get<std::string>());
    fx.padding = doc.value("padding", "");
    fx.graph = SocialGraph::from_json(doc.at("graph").dump());
    const auto& init = doc.at("initiator");
    fx.initiator_node = init.at("node").get<std::string>();
    fx.initiator_role = init.value("role", "parent") == "child" ? Role::Child : Role::Parent;
    fx.initiator_profile = profile_from(init.at("profile"));
    const auto& resp = doc.at("responder");
    fx.responder_node = resp.at("node").get<std::string>();
    fx.responder_profile = profile_from(resp.at("profile"));
    const json bystanders = doc.value("bystanders", json::array());
    for (const auto& b : bystanders) {
        fx.bystanders.push_back({b.at("node").get<std::string>(),
                                 SecondFactor(b.at("factor").get<std::string>()),
                                 profile_from(b.at("profile"))});
    }
    const json expected = doc.value("expected_sets", json::object());
    for (const auto& [hash_name, sets] : expected.items()) {
        HashId id = hash_id_from_string(hash_name);
        for (const auto& [marker, chars] : sets.items()) {
            fx.expected_sets[id].emplace(
                marker, DigestSet(chars.at(0).get<std::string>().at(0),
                                  chars.at(1).get<std::string>().at(0)));
        }
    }
    return fx;
}

namespace {

json verdict_json(const MatchVerdict& v) {
    json per = json::object();
    for (const auto& [name, ok] : v.per_marker) per[name] = ok;
    return {{"per_marker", per},
            {"matched", v.matched},
            {"total", v.total},
            {"decision", to_string(v.decision)}};
}

std::map<std::string, bool> agreement_for(const DigestSetRequest& built,
                                          const std::map<std::string, DigestSet>& printed) {
    std::map<std::string, bool> agreement;
    for (const auto& [marker, set] : printed) {
        auto it = built.sets.find(marker);
        agreement[marker] = it != built.sets.end() && it->second == set;
    }
    return agreement;
}

}  // namespace

std::string DemoResult::to_json() const {
    json shared = json::object();
    for (const auto& [marker, allele] : shared_alleles) shared[marker] = allele.display();
    json agreement = json::object();
    for (const auto& [hash, per_marker] : expected_agreement) {
        json inner = json::object();
        for (const auto& [marker, ok] : per_marker) inner[marker] = ok;
        agreement[to_string(hash)] = inner;
    }
    return json{{"h1_verdict", verdict_json(h1_verdict)},
                {"h2_verdict", verdict_json(h2_verdict)},
                {"shared_alleles", shared},
                {"initiator_key", initiator_key.hex()},
                {"responder_key", responder_key.hex()},
                {"keys_equal", keys_equal},
                {"h1_arrival_round", h1_arrival_round},
                {"bystander_responses", bystander_responses},
                {"expected_agreement", agreement}}
        .dump();
}

DemoResult run_handshake_demo(const DemoFixture& fixture, const HandshakeConfig& config) {
    DemoResult result;

    Role responder_role = fixture.initiator_role == Role::Parent ? Role::Child : Role::Parent;
    HandshakeSession initiator(fixture.initiator_role, fixture.initiator_profile, fixture.factor,
                               config);
    HandshakeSession responder(responder_role, fixture.responder_profile, fixture.factor, config);

    // round 1: H1 request flooded from the initiator
    auto h1 = initiator.initiate();
    WorldConfig wc;
    wc.default_ttl = config.default_ttl;
    auto delivery = run_flood(fixture.graph, fixture.initiator_node, h1.canonical_json(), wc);
    auto arrival = delivery.first_delivery_round.find(fixture.responder_node);
    if (arrival == delivery.first_delivery_round.end())
        throw ValidationError("H1 request never reaches the responder; raise the ttl");
    result.h1_arrival_round = arrival->second;

    // bystanders check against their own profile and factor, then relay
    for (const auto& b : fixture.bystanders) {
        HandshakeSession bystander(responder_role, b.profile, b.factor, config);
        if (bystander.respond(h1)) ++result.bystander_responses;
    }

    // round 2: counter-proof under H2
    auto h2 = responder.respond(h1);
    if (!h2) throw ValidationError("responder rejected the H1 request");
    result.h1_verdict = *responder.transcript().back().verdict;
    if (!initiator.verify_counter(*h2)) throw ValidationError("initiator rejected the counter-proof");
    result.h2_verdict = *initiator.transcript().back().verdict;

    // round 3: both sides resolve the shared alleles from H3 sets
    auto initiator_h3 = initiator.resolution_offer();
    auto responder_h3 = responder.resolution_offer();
    result.shared_alleles = responder.resolve_shared(initiator_h3);
    auto initiator_shared = initiator.resolve_shared(responder_h3);
    if (initiator_shared != result.shared_alleles)
        throw ValidationError("the two sides resolved different shared alleles");

    result.initiator_key = initiator.derive_key(fixture.padding);
    result.responder_key = responder.derive_key(fixture.padding);
    result.keys_equal = result.initiator_key.bytes == result.responder_key.bytes;

    // agreement with the printed digest sets is reported, never asserted
    for (const auto& [hash, printed] : fixture.expected_sets) {
        DigestSetRequest built;
        if (hash == HashId::H1)
            built = h1;
        else if (hash == HashId::H2)
            built = *h2;
        else
            built = initiator_h3;
        result.expected_agreement[hash] = agreement_for(built, printed);
    }

    result.initiator_transcript = transcript_to_jsonl(initiator.transcript());
    result.responder_transcript = transcript_to_jsonl(responder.transcript());
    return result;
}

}  // namespace kindred
