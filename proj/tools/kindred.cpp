#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "json.hpp"
#include "kindred/analysis.hpp"
#include "kindred/commitment.hpp"
#include "kindred/demo.hpp"
#include "kindred/dna_encoding.hpp"
#include "kindred/errors.hpp"
#include "kindred/gossip.hpp"
#include "kindred/handshake.hpp"
#include "kindred/rng.hpp"
#include "kindred/str_core.hpp"
#include "kindred/whistle.hpp"

namespace {

using nlohmann::json;
using namespace kindred;

struct GlobalOpts {
    std::uint64_t seed = 0;
    std::string config_path;
    std::string out_path;
    std::string format = "json";
};

// exit 2: a scenario invariant the run was expected to uphold did not hold
struct ScenarioFailure : std::runtime_error {
    using std::runtime_error::runtime_error;
};

std::string slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ValidationError("cannot open \"" + path + "\"");
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

bool color_enabled() {
    return std::getenv("KINDRED_NO_COLOR") == nullptr;
}

void emit(const GlobalOpts& opts, const std::string& json_text) {
    std::string rendered =
        opts.format == "text" ? json::parse(json_text).dump(2) + "\n" : json_text + "\n";
    if (!opts.out_path.empty()) {
        std::ofstream out(opts.out_path, std::ios::binary);
        if (!out) throw ValidationError("cannot write \"" + opts.out_path + "\"");
        out << rendered;
    } else {
        std::cout << rendered;
    }
}

void status_line(const std::string& label, bool ok) {
    const char* green = color_enabled() ? "\x1b[32m" : "";
    const char* red = color_enabled() ? "\x1b[31m" : "";
    const char* reset = color_enabled() ? "\x1b[0m" : "";
    std::cerr << (ok ? green : red) << (ok ? "ok" : "FAIL") << reset << "  " << label << "\n";
}

WorldConfig world_config(const GlobalOpts& opts) {
    WorldConfig wc;
    wc.seed = opts.seed;
    if (!opts.config_path.empty()) {
        json cfg = json::parse(slurp(opts.config_path));
        wc.default_ttl = cfg.value("ttl", wc.default_ttl);
        wc.rate_limit = cfg.value("rateLimit", wc.rate_limit);
        wc.rate_window = cfg.value("rateWindow", wc.rate_window);
        wc.padded_size = cfg.value("paddedSize", wc.padded_size);
        wc.seed = cfg.value("seed", wc.seed);
    }
    return wc;
}

json verdict_json(const MatchVerdict& v) {
    json per = json::object();
    for (const auto& [name, ok] : v.per_marker) per[name] = ok;
    return {{"per_marker", per},
            {"matched", v.matched},
            {"total", v.total},
            {"decision", to_string(v.decision)}};
}

StrProfile random_profile(std::uint64_t seed, int marker_count) {
    auto panel = default_panel();
    if (marker_count < 1 || marker_count > static_cast<int>(panel.size()))
        throw ValidationError("marker count must be within the 16-locus panel");
    auto rng = make_rng(seed, "profile-gen");
    std::uniform_int_distribution<int> repeats(6, 18);
    StrProfile profile;
    for (int i = 0; i < marker_count; ++i)
        profile.add(panel[i], GenotypePair(Allele{repeats(rng)}, Allele{repeats(rng)}));
    return profile;
}

std::pair<NodeId, NodeId> parse_edge(const std::string& spec) {
    auto sep = spec.find(':');
    if (sep == std::string::npos || sep == 0 || sep + 1 == spec.size())
        throw ValidationError("edge must be given as A:B, got \"" + spec + "\"");
    return {spec.substr(0, sep), spec.substr(sep + 1)};
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"kindred: DNA two-factor authentication and dead-drop protocol toolkit"};
    app.require_subcommand(1);
    app.fallthrough();  // global options may follow the subcommand

    GlobalOpts opts;
    app.add_option("--seed", opts.seed, "root seed; every random draw derives from it");
    app.add_option("--config", opts.config_path, "scenario config JSON");
    app.add_option("--out", opts.out_path, "write the report here instead of stdout");
    app.add_option("--format", opts.format, "json|text")
        ->check(CLI::IsMember({"json", "text"}));

    // profile ------------------------------------------------------------
    auto* profile = app.add_subcommand("profile", "STR profile tools");
    profile->require_subcommand(1);
    auto* profile_gen = profile->add_subcommand("gen", "generate a random profile");
    int gen_markers = 16;
    profile_gen->add_option("--markers", gen_markers, "panel prefix size");
    auto* profile_check = profile->add_subcommand("check", "obligate-allele paternity consistency");
    std::string child_path, parent_path;
    profile_check->add_option("--child", child_path)->required();
    profile_check->add_option("--parent", parent_path)->required();

    // request ------------------------------------------------------------
    auto* request = app.add_subcommand("request", "digest-set requests");
    request->require_subcommand(1);
    auto* request_build = request->add_subcommand("build", "build a request from a profile");
    std::string req_profile, req_factor, req_hash = "H1";
    int req_ttl = 8;
    request_build->add_option("--profile", req_profile)->required();
    request_build->add_option("--factor", req_factor)->required();
    request_build->add_option("--hash", req_hash);
    request_build->add_option("--ttl", req_ttl);
    auto* request_compare = request->add_subcommand("compare", "compare two requests");
    std::string cmp_incoming, cmp_local;
    request_compare->add_option("--incoming", cmp_incoming)->required();
    request_compare->add_option("--local", cmp_local)->required();

    // handshake ----------------------------------------------------------
    auto* handshake = app.add_subcommand("handshake", "mutual authentication");
    handshake->require_subcommand(1);
    auto* handshake_demo = handshake->add_subcommand("demo", "replay a fixture end to end");
    std::string fixtures_path;
    handshake_demo->add_option("--fixtures", fixtures_path)->required();

    // sim ----------------------------------------------------------------
    auto* sim = app.add_subcommand("sim", "flood simulator scenarios");
    sim->require_subcommand(1);
    std::string sim_graph, sim_origin, sim_target, sim_helper, sim_attacker;
    std::vector<std::string> sim_droppers, sim_edges;
    int sim_ttl = -1, sim_volume = 50;
    auto* sim_flood = sim->add_subcommand("flood", "plain flood coverage");
    sim_flood->add_option("--graph", sim_graph)->required();
    sim_flood->add_option("--origin", sim_origin)->required();
    sim_flood->add_option("--ttl", sim_ttl);
    auto* sim_dos = sim->add_subcommand("dos", "droppers absorbing messages");
    sim_dos->add_option("--graph", sim_graph)->required();
    sim_dos->add_option("--origin", sim_origin)->required();
    sim_dos->add_option("--target", sim_target);
    sim_dos->add_option("--droppers", sim_droppers)->delimiter(',');
    sim_dos->add_option("--ttl", sim_ttl);
    auto* sim_anon = sim->add_subcommand("anonymity", "origin indistinguishability");
    sim_anon->add_option("--graph", sim_graph)->required();
    sim_anon->add_option("--origin", sim_origin)->required();
    sim_anon->add_option("--edge", sim_edges, "monitored edge A:B, repeatable");
    sim_anon->add_option("--ttl", sim_ttl);
    auto* sim_tag = sim->add_subcommand("tagging", "tagged-message coverage equality");
    sim_tag->add_option("--graph", sim_graph)->required();
    sim_tag->add_option("--origin", sim_origin)->required();
    sim_tag->add_option("--helper", sim_helper)->required();
    sim_tag->add_option("--ttl", sim_ttl);
    auto* sim_flooding = sim->add_subcommand("flooding", "origination rate limiting");
    sim_flooding->add_option("--graph", sim_graph)->required();
    sim_flooding->add_option("--attacker", sim_attacker)->required();
    sim_flooding->add_option("--volume", sim_volume);

    // whistle ------------------------------------------------------------
    auto* whistle = app.add_subcommand("whistle", "dead-drop scheme");
    whistle->require_subcommand(1);
    std::string wh_fasta, wh_sentence, wh_address, wh_in, wh_envelope;
    std::size_t wh_prefix = kDefaultDnaPrefix;
    auto* whistle_derive = whistle->add_subcommand("derive", "derive a key from an organism");
    whistle_derive->add_option("--fasta", wh_fasta)->required();
    whistle_derive->add_option("--sentence", wh_sentence);
    whistle_derive->add_option("--address", wh_address);
    whistle_derive->add_option("--prefix", wh_prefix);
    auto* whistle_encrypt = whistle->add_subcommand("encrypt", "encrypt a payload file");
    std::string wh_out_file;
    std::size_t wh_padded = 4096;
    whistle_encrypt->add_option("--fasta", wh_fasta)->required();
    whistle_encrypt->add_option("--in", wh_in)->required();
    whistle_encrypt->add_option("--envelope", wh_out_file, "envelope output file")->required();
    whistle_encrypt->add_option("--sentence", wh_sentence);
    whistle_encrypt->add_option("--address", wh_address);
    whistle_encrypt->add_option("--prefix", wh_prefix);
    whistle_encrypt->add_option("--padded-size", wh_padded);
    auto* whistle_sim = whistle->add_subcommand("sim", "helpers trying keys on a flooded cipher");
    whistle_sim->add_option("--graph", sim_graph)->required();
    whistle_sim->add_option("--origin", sim_origin)->required();
    whistle_sim->add_option("--fasta", wh_fasta)->required();
    whistle_sim->add_option("--helper", sim_helper, "node holding the matching key")->required();
    whistle_sim->add_option("--prefix", wh_prefix);
    auto* whistle_keyspace = whistle->add_subcommand("keyspace", "key material combinatorics");
    long long ks_prefix = 1000;
    double ks_bits = 0.0;
    whistle_keyspace->add_option("--prefix", ks_prefix);
    whistle_keyspace->add_option("--context-bits", ks_bits);

    // analyze ------------------------------------------------------------
    auto* analyze = app.add_subcommand("analyze", "security arithmetic");
    analyze->require_subcommand(1);
    auto* analyze_fp = analyze->add_subcommand("fp", "per-marker false-match probability");
    std::string fp_rule = "multiset";
    long fp_trials = 1000000;
    int fp_markers = 16;
    analyze_fp->add_option("--rule", fp_rule)->check(CLI::IsMember({"multiset", "single"}));
    analyze_fp->add_option("--trials", fp_trials);
    analyze_fp->add_option("--markers", fp_markers);
    auto* analyze_cost = analyze->add_subcommand("cost", "brute-force key search cost");
    CostModel cost;
    analyze_cost->add_option("--values", cost.allele_values_per_marker);
    analyze_cost->add_option("--markers", cost.markers);
    analyze_cost->add_option("--years", cost.age_years);
    analyze_cost->add_option("--hospitals", cost.hospitals);

    // cf -------------------------------------------------------------
    auto* cf_cmd = app.add_subcommand("cf", "continued fraction of sqrt(n)");
    long long cf_n = 7;
    int cf_terms = 9;
    cf_cmd->add_option("--n", cf_n)->required();
    cf_cmd->add_option("--terms", cf_terms);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 64;
    }

    try {
        if (profile_gen->parsed()) {
            emit(opts, serialize_profile(random_profile(opts.seed, gen_markers)));
        } else if (profile_check->parsed()) {
            auto result = paternity_consistent(parse_profile(slurp(child_path)),
                                               parse_profile(slurp(parent_path)));
            json per = json::object();
            for (const auto& [name, ok] : result.per_marker) per[name] = ok;
            emit(opts, json{{"per_marker", per}, {"overall", result.overall}}.dump());
        } else if (request_build->parsed()) {
            auto req = build_request(parse_profile(slurp(req_profile)), SecondFactor(req_factor),
                                     hash_id_from_string(req_hash), req_ttl);
            emit(opts, req.canonical_json());
        } else if (request_compare->parsed()) {
            auto verdict = compare_request(DigestSetRequest::from_json(slurp(cmp_incoming)),
                                           DigestSetRequest::from_json(slurp(cmp_local)));
            emit(opts, verdict_json(verdict).dump());
        } else if (handshake_demo->parsed()) {
            auto fixture = DemoFixture::from_json(slurp(fixtures_path));
            auto result = run_handshake_demo(fixture);
            emit(opts, result.to_json());
            bool ok = result.keys_equal && result.h1_verdict.decision == MatchDecision::Exact;
            if (opts.format == "text") status_line("mutual authentication", ok);
            if (!ok) throw ScenarioFailure("handshake demo did not reach exact mutual keys");
        } else if (sim_flood->parsed() || sim_dos->parsed() || sim_anon->parsed() ||
                   sim_tag->parsed() || sim_flooding->parsed()) {
            auto graph = SocialGraph::from_json(slurp(sim_graph));
            WorldConfig wc = world_config(opts);
            if (sim_ttl >= 0) wc.default_ttl = sim_ttl;
            if (sim_flood->parsed()) {
                emit(opts, run_flood(graph, sim_origin, "request", wc).to_json());
            } else if (sim_dos->parsed()) {
                std::set<NodeId> droppers(sim_droppers.begin(), sim_droppers.end());
                auto report = scenario_dos(graph, sim_origin, "request", droppers, wc);
                json doc = json::parse(report.to_json());
                if (!sim_target.empty())
                    doc["delivered"] = report.first_delivery_round.count(sim_target) > 0;
                emit(opts, doc.dump());
            } else if (sim_anon->parsed()) {
                std::vector<std::pair<NodeId, NodeId>> edges;
                for (const auto& e : sim_edges) edges.push_back(parse_edge(e));
                emit(opts, scenario_origin_anonymity(graph, edges, sim_origin, wc).to_json());
            } else if (sim_tag->parsed()) {
                auto report = scenario_tagging(graph, sim_origin, "tagged-payload", sim_helper, wc);
                emit(opts, report.to_json());
                if (!report.coverage_equal)
                    throw ScenarioFailure("tagged coverage differs from untagged coverage");
            } else {
                emit(opts, scenario_flooding(graph, sim_attacker, sim_volume, wc).to_json());
            }
        } else if (whistle_derive->parsed() || whistle_encrypt->parsed() || whistle_sim->parsed()) {
            DropContext ctx;
            if (!wh_sentence.empty()) ctx.sentence = wh_sentence;
            if (!wh_address.empty()) ctx.address = wh_address;
            auto key = derive_whistle_key(parse_fasta(slurp(wh_fasta)), ctx, wh_prefix);
            if (whistle_derive->parsed()) {
                std::string hex;
                for (auto b : key.bytes) {
                    hex.push_back("0123456789abcdef"[b >> 4]);
                    hex.push_back("0123456789abcdef"[b & 0x0f]);
                }
                emit(opts, json{{"key", hex}, {"transcript", key.transcript}}.dump());
            } else if (whistle_encrypt->parsed()) {
                auto data = slurp(wh_in);
                std::vector<std::uint8_t> plaintext(data.begin(), data.end());
                auto env = encrypt_payload(key, plaintext, wh_padded,
                                           derive_seed(opts.seed, "whistle-nonce"));
                std::ofstream out(wh_out_file, std::ios::binary);
                if (!out) throw ValidationError("cannot write \"" + wh_out_file + "\"");
                out.write(reinterpret_cast<const char*>(env.bytes.data()),
                          static_cast<std::streamsize>(env.bytes.size()));
                emit(opts, json{{"bytes", env.bytes.size()},
                                {"fingerprint", sha256_hex(env.as_payload())}}
                               .dump());
            } else {
                auto graph = SocialGraph::from_json(slurp(sim_graph));
                WorldConfig wc = world_config(opts);
                auto env = encrypt_payload(key, {'X'}, wc.padded_size,
                                           derive_seed(wc.seed, "whistle-nonce"));
                auto report = run_whistle_sim(graph, sim_origin, env, {{sim_helper, key}}, wc);
                emit(opts, report.to_json());
            }
        } else if (whistle_keyspace->parsed()) {
            emit(opts, keyspace_report(ks_prefix, ks_bits).to_json());
        } else if (analyze_fp->parsed()) {
            FpModel model;
            model.rule = match_rule_from_string(fp_rule);
            model.markers = fp_markers;
            emit(opts, fp_report(model, fp_trials, opts.seed).to_json());
        } else if (analyze_cost->parsed()) {
            auto magnitude = brute_force_cost(cost);
            emit(opts, json{{"mantissa", magnitude.mantissa},
                            {"exponent", magnitude.exponent},
                            {"display", magnitude.str()}}
                           .dump());
        } else if (cf_cmd->parsed()) {
            emit(opts, cf_sqrt(cf_n, cf_terms).to_json());
        }
    } catch (const ScenarioFailure& e) {
        std::cerr << "scenario failure: " << e.what() << "\n";
        return 2;
    } catch (const ValidationError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const StateError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
