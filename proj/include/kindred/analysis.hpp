#ifndef KINDRED_ANALYSIS_HPP
#define KINDRED_ANALYSIS_HPP

#include <cstdint>
#include <string>

#include "kindred/bignum.hpp"

namespace kindred {

// Per-marker false-match probability under the uniform-hash model. The
// scheme's own rule compares the prover's pair of hex characters against
// the verifier's pair (MultisetIntersection); SingleCharVsPair prices one
// fixed character against a pair, the closest reading of the quoted 1/8.
enum class MatchRule { MultisetIntersection, SingleCharVsPair };

std::string to_string(MatchRule r);
MatchRule match_rule_from_string(const std::string& s);

struct FpModel {
    int alphabet_size = 16;
    int set_size = 2;
    int markers = 16;
    MatchRule rule = MatchRule::MultisetIntersection;
};

// The claimed per-marker chance figure, reported alongside for comparison.
inline constexpr double kClaimedPerMarkerFp = 0.125;

// Exact probability by exhaustive enumeration over all ordered character
// tuples (no closed form is trusted).
double exact_marker_fp(const FpModel& model);

struct McEstimate {
    double estimate = 0.0;
    double stderr_ = 0.0;
    long trials = 0;
};

McEstimate mc_marker_fp(const FpModel& model, long trials, std::uint64_t seed);

// exact_marker_fp ^ markers, under the independence assumption.
double all_marker_fp(const FpModel& model);

struct CostModel {
    int allele_values_per_marker = 10;
    int markers = 16;
    int age_years = 93;  // days = years * 365
    int hospitals = 1000;
};

// allele_values^markers * (years*365) * hospitals, in magnitude form.
Magnitude brute_force_cost(const CostModel& model);

struct FpReport {
    MatchRule rule;
    double exact = 0.0;
    McEstimate mc;
    double claimed = kClaimedPerMarkerFp;
    double all_markers_exact = 0.0;
    double all_markers_claim = 0.0;  // 0.125^markers
    int markers = 16;

    std::string to_json() const;
};

FpReport fp_report(const FpModel& model, long trials, std::uint64_t seed);

}  // namespace kindred

#endif
