// End-to-end tests that drive the installed command-line binary. The build
// passes the binary and source locations in as compile definitions.
#include <sys/wait.h>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>

#include "doctest.h"
#include "json.hpp"
#include "schema_check.hpp"

using nlohmann::json;

namespace {

const std::string kCli = KINDRED_CLI_PATH;
const std::string kSource = KINDRED_SOURCE_DIR;

struct RunResult {
    int exit_code = -1;
    std::string out;  // contents of the --out file, when one was used
};

std::string temp_path(const std::string& stem) {
    static int counter = 0;
    return std::string("cli_tmp_") + stem + "_" + std::to_string(counter++);
}

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

void write_file(const std::string& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    out << text;
}

// Run the CLI with the given arguments, routing the report to a temp file.
RunResult run_cli(const std::string& args, bool with_out = true) {
    RunResult result;
    std::string out_file = temp_path("out");
    std::string cmd = kCli + " " + args;
    if (with_out) cmd += " --out " + out_file;
    cmd += " >/dev/null 2>&1";
    int rc = std::system(cmd.c_str());
    result.exit_code = WIFEXITED(rc) ? WEXITSTATUS(rc) : -1;
    if (with_out) {
        result.out = read_file(out_file);
        std::remove(out_file.c_str());
    }
    return result;
}

bool conforms(const std::string& schema_name, const std::string& text, std::string* why = nullptr) {
    return schema_check::validate_against_file(kSource + "/schemas/" + schema_name,
                                               json::parse(text), why);
}

std::string ring_graph_file() {
    json nodes = json::array();
    json edges = json::array();
    for (int i = 0; i < 6; ++i) {
        nodes.push_back("n" + std::to_string(i));
        edges.push_back({"n" + std::to_string(i), "n" + std::to_string((i + 1) % 6)});
    }
    std::string path = temp_path("graph") + ".json";
    write_file(path, json{{"nodes", nodes}, {"edges", edges}}.dump());
    return path;
}

}  // namespace

TEST_CASE("cli: exit codes for misuse and bad input") {
    CHECK(run_cli("definitely-not-a-command", false).exit_code == 64);
    CHECK(run_cli("profile", false).exit_code == 64);  // missing subcommand
    CHECK(run_cli("cf", false).exit_code == 64);       // missing required --n
    CHECK(run_cli("--help", false).exit_code == 0);
    CHECK(run_cli("profile check --child missing.json --parent missing.json", false).exit_code ==
          1);
    CHECK(run_cli("cf --n 0", false).exit_code == 1);
}

TEST_CASE("cli: profile gen conforms to the schema and is seed-deterministic") {
    auto a = run_cli("profile gen --seed 5");
    auto b = run_cli("profile gen --seed 5");
    auto c = run_cli("profile gen --seed 6");
    CHECK(a.exit_code == 0);
    CHECK(a.out == b.out);
    CHECK(a.out != c.out);
    std::string why;
    CHECK_MESSAGE(conforms("profile.schema.json", a.out, &why), why);

    CHECK(run_cli("profile gen --markers 99", false).exit_code == 1);
}

TEST_CASE("cli: profile check on generated relatives") {
    std::string p = temp_path("prof") + ".json";
    auto gen = run_cli("profile gen --seed 9");
    write_file(p, gen.out);
    auto self = run_cli("profile check --child " + p + " --parent " + p);
    CHECK(self.exit_code == 0);
    json doc = json::parse(self.out);
    CHECK(doc.at("overall") == true);
    std::string why;
    CHECK_MESSAGE(conforms("paternity.schema.json", self.out, &why), why);
    std::remove(p.c_str());
}

TEST_CASE("cli: request build and compare") {
    std::string p = temp_path("prof") + ".json";
    write_file(p, run_cli("profile gen --seed 4").out);

    auto req = run_cli("request build --profile " + p + " --factor 1/1/1747 --hash H1 --ttl 8");
    CHECK(req.exit_code == 0);
    std::string why;
    CHECK_MESSAGE(conforms("request.schema.json", req.out, &why), why);

    std::string r = temp_path("req") + ".json";
    write_file(r, req.out);
    auto verdict = run_cli("request compare --incoming " + r + " --local " + r);
    CHECK(verdict.exit_code == 0);
    json doc = json::parse(verdict.out);
    CHECK(doc.at("decision") == "exact");
    CHECK_MESSAGE(conforms("verdict.schema.json", verdict.out, &why), why);

    CHECK(run_cli("request build --profile " + p + " --factor 1/1/1747 --hash H9", false)
              .exit_code == 1);
    std::remove(p.c_str());
    std::remove(r.c_str());
}

TEST_CASE("cli: handshake demo replays the bundled fixture") {
    auto demo = run_cli("handshake demo --fixtures " + kSource + "/fixtures/rousseau.json");
    CHECK(demo.exit_code == 0);
    json doc = json::parse(demo.out);
    CHECK(doc.at("keys_equal") == true);
    CHECK(doc.at("initiator_key") == doc.at("responder_key"));
    CHECK(doc.at("shared_alleles").at("D13S317") == "9");
    std::string why;
    CHECK_MESSAGE(conforms("demo.schema.json", demo.out, &why), why);
}

TEST_CASE("cli: sim scenarios emit schema-conformant reports") {
    std::string g = ring_graph_file();
    std::string why;

    auto flood = run_cli("sim flood --graph " + g + " --origin n0");
    CHECK(flood.exit_code == 0);
    CHECK_MESSAGE(conforms("delivery.schema.json", flood.out, &why), why);
    CHECK(json::parse(flood.out).at("coverage") == 6);

    auto dos = run_cli("sim dos --graph " + g + " --origin n0 --droppers n2 --target n3");
    CHECK(dos.exit_code == 0);
    CHECK(json::parse(dos.out).at("delivered") == true);  // ring survives one dropper

    auto anon = run_cli("sim anonymity --graph " + g + " --origin n0 --edge n2:n3");
    CHECK(anon.exit_code == 0);
    CHECK_MESSAGE(conforms("anonymity.schema.json", anon.out, &why), why);
    CHECK(json::parse(anon.out).at("consistent_origins").size() >= 2);

    auto tag = run_cli("sim tagging --graph " + g + " --origin n0 --helper n3");
    CHECK(tag.exit_code == 0);
    CHECK_MESSAGE(conforms("tagging.schema.json", tag.out, &why), why);

    auto rate = run_cli("sim flooding --graph " + g + " --attacker n0 --volume 50");
    CHECK(rate.exit_code == 0);
    CHECK_MESSAGE(conforms("ratelimit.schema.json", rate.out, &why), why);
    json rl = json::parse(rate.out);
    CHECK(rl.at("admitted") == 5);
    CHECK(rl.at("rejected") == 45);

    CHECK(run_cli("sim flood --graph " + g + " --origin ghost", false).exit_code == 1);
    CHECK(run_cli("sim anonymity --graph " + g + " --origin n0 --edge badspec", false)
              .exit_code == 1);
    std::remove(g.c_str());
}

TEST_CASE("cli: scenario config file overrides world defaults") {
    std::string g = ring_graph_file();
    std::string cfg = temp_path("cfg") + ".json";
    write_file(cfg, R"({"rateLimit":2,"rateWindow":100})");
    auto rate = run_cli("sim flooding --graph " + g + " --attacker n0 --volume 10 --config " + cfg);
    CHECK(rate.exit_code == 0);
    CHECK(json::parse(rate.out).at("admitted") == 2);
    std::remove(g.c_str());
    std::remove(cfg.c_str());
}

TEST_CASE("cli: whistle derive, encrypt and keyspace") {
    std::string fasta = temp_path("fasta") + ".fa";
    std::string seq;
    for (int i = 0; i < 300; ++i) seq += "ACGT";
    write_file(fasta, ">cutting\n" + seq + "\n");

    auto key = run_cli("whistle derive --fasta " + fasta + " --sentence s --address a");
    CHECK(key.exit_code == 0);
    std::string why;
    CHECK_MESSAGE(conforms("whistle_key.schema.json", key.out, &why), why);
    json kdoc = json::parse(key.out);
    CHECK(kdoc.at("key").get<std::string>().size() == 128);
    CHECK(kdoc.at("transcript") == "dna[1000]+sentence+address");

    std::string plain = temp_path("plain") + ".bin";
    write_file(plain, std::string(1024, 'z'));
    std::string envelope = temp_path("env") + ".bin";
    auto enc = run_cli("whistle encrypt --fasta " + fasta + " --in " + plain + " --envelope " +
                       envelope + " --seed 3");
    CHECK(enc.exit_code == 0);
    CHECK_MESSAGE(conforms("encrypt.schema.json", enc.out, &why), why);
    CHECK(json::parse(enc.out).at("bytes") == 4096);
    CHECK(read_file(envelope).size() == 4096);

    auto ks = run_cli("whistle keyspace --prefix 1000");
    CHECK(ks.exit_code == 0);
    CHECK_MESSAGE(conforms("keyspace.schema.json", ks.out, &why), why);
    CHECK(json::parse(ks.out).at("dna").at("exponent") == 602);

    std::string g = ring_graph_file();
    auto sim = run_cli("whistle sim --graph " + g + " --origin n0 --fasta " + fasta +
                       " --helper n3 --seed 8");
    CHECK(sim.exit_code == 0);
    CHECK_MESSAGE(conforms("whistle_sim.schema.json", sim.out, &why), why);
    json sdoc = json::parse(sim.out);
    CHECK(sdoc.at("decryptions").size() == 1);
    CHECK(sdoc.at("decryptions")[0].at("helper") == "n3");

    std::remove(fasta.c_str());
    std::remove(plain.c_str());
    std::remove(envelope.c_str());
    std::remove(g.c_str());
}

TEST_CASE("cli: analyze fp and cost") {
    std::string why;
    auto fp = run_cli("analyze fp --rule multiset --trials 20000 --seed 2");
    CHECK(fp.exit_code == 0);
    CHECK_MESSAGE(conforms("fp.schema.json", fp.out, &why), why);
    CHECK(json::parse(fp.out).at("exact").get<double>() ==
          doctest::Approx(931.0 / 4096.0).epsilon(1e-9));

    auto single = run_cli("analyze fp --rule single --trials 20000 --seed 2");
    CHECK(json::parse(single.out).at("exact").get<double>() ==
          doctest::Approx(31.0 / 256.0).epsilon(1e-9));

    auto cost = run_cli("analyze cost --values 10 --markers 16 --years 93 --hospitals 1000");
    CHECK(cost.exit_code == 0);
    CHECK_MESSAGE(conforms("cost.schema.json", cost.out, &why), why);
    json cdoc = json::parse(cost.out);
    CHECK(cdoc.at("display") == "3.3945e23");
    CHECK(cdoc.at("exponent") == 23);
}

TEST_CASE("cli: cf expansion of sqrt(7)") {
    auto cf = run_cli("cf --n 7 --terms 9");
    CHECK(cf.exit_code == 0);
    std::string why;
    CHECK_MESSAGE(conforms("cf.schema.json", cf.out, &why), why);
    json doc = json::parse(cf.out);
    CHECK(doc.at("head") == 2);
    CHECK(doc.at("tail") == json::array({1, 1, 1, 4, 1, 1, 1, 4}));
    CHECK(doc.at("period") == json::array({0, 4}));
}

TEST_CASE("cli: same seed, byte-identical reports") {
    std::string g = ring_graph_file();
    auto a = run_cli("sim flood --graph " + g + " --origin n1 --seed 77");
    auto b = run_cli("sim flood --graph " + g + " --origin n1 --seed 77");
    CHECK(a.out == b.out);
    auto fa = run_cli("analyze fp --trials 5000 --seed 12");
    auto fb = run_cli("analyze fp --trials 5000 --seed 12");
    CHECK(fa.out == fb.out);
    std::remove(g.c_str());
}

TEST_CASE("cli: text format pretty-prints the same document") {
    auto jsonic = run_cli("cf --n 7 --terms 9");
    auto texty = run_cli("cf --n 7 --terms 9 --format text");
    CHECK(texty.exit_code == 0);
    CHECK(json::parse(texty.out) == json::parse(jsonic.out));
    CHECK(texty.out.find('\n') != texty.out.rfind('\n'));  // multi-line
}
