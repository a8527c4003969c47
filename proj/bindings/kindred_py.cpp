#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <optional>

#include "kindred/analysis.hpp"
#include "kindred/commitment.hpp"
#include "kindred/demo.hpp"
#include "kindred/dna_encoding.hpp"
#include "kindred/errors.hpp"
#include "kindred/gossip.hpp"
#include "kindred/handshake.hpp"
#include "kindred/str_core.hpp"
#include "kindred/whistle.hpp"

namespace py = pybind11;
using namespace kindred;

namespace {

WhistleKey key_from_bytes(const py::bytes& raw) {
    std::string s = raw;
    if (s.size() != 64) throw ValidationError("whistle keys are 64 bytes");
    WhistleKey key;
    std::copy(s.begin(), s.end(), key.bytes.begin());
    return key;
}

}  // namespace

PYBIND11_MODULE(_kindred, m) {
    m.doc() = "DNA two-factor authentication and dead-drop protocol core";

    py::register_exception<ValidationError>(m, "ValidationError", PyExc_ValueError);
    py::register_exception<StateError>(m, "StateError", PyExc_RuntimeError);

    m.def(
        "expand_allele",
        [](const std::string& motif, int repeats, int partial) {
            return expand_allele(motif, Allele{repeats, partial});
        },
        py::arg("motif"), py::arg("repeats"), py::arg("partial") = 0);

    m.def(
        "paternity_consistent",
        [](const std::string& child_json, const std::string& parent_json) {
            auto r = paternity_consistent(parse_profile(child_json), parse_profile(parent_json));
            return py::make_tuple(r.per_marker, r.overall);
        },
        py::arg("child_profile_json"), py::arg("parent_profile_json"));

    m.def(
        "possible_children",
        [](std::pair<std::string, std::string> mother, std::pair<std::string, std::string> father) {
            auto kids = possible_children(
                GenotypePair(Allele::parse(mother.first), Allele::parse(mother.second)),
                GenotypePair(Allele::parse(father.first), Allele::parse(father.second)));
            std::vector<std::pair<std::string, std::string>> out;
            for (const auto& k : kids) out.push_back({k.first.display(), k.second.display()});
            return out;
        },
        py::arg("mother"), py::arg("father"));

    m.def(
        "build_request",
        [](const std::string& profile_json, const std::string& factor, const std::string& hash,
           int ttl) {
            return build_request(parse_profile(profile_json), SecondFactor(factor),
                                 hash_id_from_string(hash), ttl)
                .canonical_json();
        },
        py::arg("profile_json"), py::arg("factor"), py::arg("hash") = "H1", py::arg("ttl") = 8);

    m.def(
        "compare_request",
        [](const std::string& incoming_json, const std::string& local_json) {
            auto v = compare_request(DigestSetRequest::from_json(incoming_json),
                                     DigestSetRequest::from_json(local_json));
            return py::make_tuple(v.per_marker, v.matched, v.total, to_string(v.decision));
        },
        py::arg("incoming_json"), py::arg("local_json"));

    m.def(
        "run_handshake_demo",
        [](const std::string& fixture_json) {
            return run_handshake_demo(DemoFixture::from_json(fixture_json)).to_json();
        },
        py::arg("fixture_json"));

    m.def(
        "run_flood",
        [](const std::string& graph_json, const std::string& origin, int ttl) {
            WorldConfig wc;
            wc.default_ttl = ttl;
            return run_flood(SocialGraph::from_json(graph_json), origin, "request", wc).to_json();
        },
        py::arg("graph_json"), py::arg("origin"), py::arg("ttl") = 8);

    m.def(
        "exact_marker_fp",
        [](const std::string& rule) {
            FpModel model;
            model.rule = match_rule_from_string(rule);
            return exact_marker_fp(model);
        },
        py::arg("rule") = "multiset");

    m.def(
        "mc_marker_fp",
        [](const std::string& rule, long trials, std::uint64_t seed) {
            FpModel model;
            model.rule = match_rule_from_string(rule);
            auto est = mc_marker_fp(model, trials, seed);
            return py::make_tuple(est.estimate, est.stderr_);
        },
        py::arg("rule"), py::arg("trials"), py::arg("seed"));

    m.def(
        "brute_force_cost",
        [](int values, int markers, int years, int hospitals) {
            auto mag = brute_force_cost(CostModel{values, markers, years, hospitals});
            return py::make_tuple(mag.mantissa, mag.exponent);
        },
        py::arg("values") = 10, py::arg("markers") = 16, py::arg("years") = 93,
        py::arg("hospitals") = 1000);

    m.def(
        "cf_sqrt", [](long long n, int terms) { return cf_sqrt(n, terms).to_json(); },
        py::arg("n"), py::arg("terms") = 16);

    m.def(
        "seq_to_digits", [](const std::string& seq) { return seq_to_digits(seq); },
        py::arg("sequence"));
    m.def(
        "digits_to_seq", [](const std::vector<int>& digits) { return digits_to_seq(digits); },
        py::arg("digits"));

    m.def(
        "derive_whistle_key",
        [](const std::string& sequence, std::optional<std::string> sentence,
           std::optional<std::string> address, std::size_t prefix) {
            DropContext ctx{sentence, address};
            auto key = derive_whistle_key(OrganismDna{sequence, ""}, ctx, prefix);
            return py::bytes(reinterpret_cast<const char*>(key.bytes.data()), key.bytes.size());
        },
        py::arg("sequence"), py::arg("sentence") = std::nullopt, py::arg("address") = std::nullopt,
        py::arg("prefix") = kDefaultDnaPrefix);

    m.def(
        "encrypt_payload",
        [](const py::bytes& key, const py::bytes& plaintext, std::size_t padded_size,
           std::uint64_t nonce_seed) {
            std::string pt = plaintext;
            auto env = encrypt_payload(key_from_bytes(key),
                                       std::vector<std::uint8_t>(pt.begin(), pt.end()), padded_size,
                                       nonce_seed);
            return py::bytes(reinterpret_cast<const char*>(env.bytes.data()), env.bytes.size());
        },
        py::arg("key"), py::arg("plaintext"), py::arg("padded_size") = 4096,
        py::arg("nonce_seed") = 0);

    m.def(
        "try_decrypt",
        [](const py::bytes& key, const py::bytes& envelope) -> std::optional<py::bytes> {
            auto env = CipherEnvelope::from_payload(envelope);
            auto pt = try_decrypt(key_from_bytes(key), env);
            if (!pt) return std::nullopt;
            return py::bytes(reinterpret_cast<const char*>(pt->data()), pt->size());
        },
        py::arg("key"), py::arg("envelope"));
}
