#include "kindred/analysis.hpp"

#include <cmath>

#include "json.hpp"
#include "kindred/errors.hpp"
#include "kindred/rng.hpp"

namespace kindred {

using nlohmann::json;

std::string to_string(MatchRule r) {
    return r == MatchRule::MultisetIntersection ? "multiset" : "single";
}

MatchRule match_rule_from_string(const std::string& s) {
    if (s == "multiset") return MatchRule::MultisetIntersection;
    if (s == "single") return MatchRule::SingleCharVsPair;
    throw ValidationError("unknown match rule \"" + s + "\" (expected multiset or single)");
}

namespace {

void validate(const FpModel& model) {
    if (model.alphabet_size < 1) throw ValidationError("alphabet size must be positive");
    if (model.set_size != 2) throw ValidationError("digest sets hold exactly two characters");
    if (model.markers < 1) throw ValidationError("marker count must be positive");
}

}  // namespace

double exact_marker_fp(const FpModel& model) {
    validate(model);
    const long n = model.alphabet_size;
    long hits = 0;
    long total = 0;
    if (model.rule == MatchRule::MultisetIntersection) {
        for (long v1 = 0; v1 < n; ++v1)
            for (long v2 = 0; v2 < n; ++v2)
                for (long p1 = 0; p1 < n; ++p1)
                    for (long p2 = 0; p2 < n; ++p2) {
                        ++total;
                        if (p1 == v1 || p1 == v2 || p2 == v1 || p2 == v2) ++hits;
                    }
    } else {
        for (long c = 0; c < n; ++c)
            for (long p1 = 0; p1 < n; ++p1)
                for (long p2 = 0; p2 < n; ++p2) {
                    ++total;
                    if (c == p1 || c == p2) ++hits;
                }
    }
    return static_cast<double>(hits) / static_cast<double>(total);
}

McEstimate mc_marker_fp(const FpModel& model, long trials, std::uint64_t seed) {
    validate(model);
    if (trials <= 0) throw ValidationError("trial count must be positive");
    auto rng = make_rng(seed, "mc-marker-fp");
    std::uniform_int_distribution<int> pick(0, model.alphabet_size - 1);
    long hits = 0;
    for (long t = 0; t < trials; ++t) {
        int p1 = pick(rng), p2 = pick(rng);
        bool hit;
        if (model.rule == MatchRule::MultisetIntersection) {
            int v1 = pick(rng), v2 = pick(rng);
            hit = p1 == v1 || p1 == v2 || p2 == v1 || p2 == v2;
        } else {
            int c = pick(rng);
            hit = c == p1 || c == p2;
        }
        if (hit) ++hits;
    }
    McEstimate est;
    est.trials = trials;
    est.estimate = static_cast<double>(hits) / static_cast<double>(trials);
    est.stderr_ = std::sqrt(est.estimate * (1.0 - est.estimate) / static_cast<double>(trials));
    return est;
}

double all_marker_fp(const FpModel& model) {
    return std::pow(exact_marker_fp(model), model.markers);
}

Magnitude brute_force_cost(const CostModel& model) {
    if (model.allele_values_per_marker < 1 || model.markers < 1 || model.age_years < 1 ||
        model.hospitals < 1)
        throw ValidationError("cost model fields must be positive");
    long double log10_cost =
        model.markers * std::log10(static_cast<long double>(model.allele_values_per_marker)) +
        std::log10(static_cast<long double>(model.age_years) * 365.0L) +
        std::log10(static_cast<long double>(model.hospitals));
    return Magnitude::from_log10(log10_cost);
}

std::string FpReport::to_json() const {
    return json{{"rule", to_string(rule)},
                {"exact", exact},
                {"mc", {{"est", mc.estimate}, {"stderr", mc.stderr_}, {"trials", mc.trials}}},
                {"claimed", claimed},
                {"markers", markers},
                {"all_markers_exact", all_markers_exact},
                {"all_markers_claim", all_markers_claim}}
        .dump();
}

FpReport fp_report(const FpModel& model, long trials, std::uint64_t seed) {
    FpReport report;
    report.rule = model.rule;
    report.exact = exact_marker_fp(model);
    report.mc = mc_marker_fp(model, trials, seed);
    report.markers = model.markers;
    report.all_markers_exact = all_marker_fp(model);
    report.all_markers_claim = std::pow(kClaimedPerMarkerFp, model.markers);
    return report;
}

}  // namespace kindred
