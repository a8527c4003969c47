#include "kindred/dna_encoding.hpp"

#include <cmath>
#include <map>

#include "json.hpp"
#include "kindred/errors.hpp"

namespace kindred {

using nlohmann::json;

BaseBijection::BaseBijection(std::array<char, 4> digit_to_base) : digit_to_base_(digit_to_base) {
    int seen[4] = {0, 0, 0, 0};
    for (char c : digit_to_base_) {
        const char* bases = "ACGT";
        const char* pos = std::char_traits<char>::find(bases, 4, c);
        if (!pos) throw ValidationError(std::string("bijection target '") + c + "' is not a base");
        ++seen[pos - bases];
    }
    for (int s : seen)
        if (s != 1) throw ValidationError("base mapping must be bijective");
}

char BaseBijection::base_for(int digit) const {
    if (digit < 1 || digit > 4)
        throw ValidationError("digit " + std::to_string(digit) + " outside {1,2,3,4}");
    return digit_to_base_[digit - 1];
}

int BaseBijection::digit_for(char base) const {
    for (int i = 0; i < 4; ++i)
        if (digit_to_base_[i] == base) return i + 1;
    throw ValidationError(std::string("character '") + base + "' is not a base");
}

std::vector<int> seq_to_digits(std::string_view seq, const BaseBijection& f) {
    std::vector<int> digits;
    digits.reserve(seq.size());
    for (char c : seq) digits.push_back(f.digit_for(c));
    return digits;
}

std::string digits_to_seq(const std::vector<int>& digits, const BaseBijection& f) {
    std::string seq;
    seq.reserve(digits.size());
    for (int d : digits) seq.push_back(f.base_for(d));
    return seq;
}

std::string CfExpansion::to_json() const {
    json doc{{"head", head}, {"tail", tail}};
    doc["period"] = period ? json{period->first, period->second} : json(nullptr);
    return doc.dump();
}

namespace {

long long isqrt_ll(long long n) {
    long long r = static_cast<long long>(std::sqrt(static_cast<double>(n)));
    while (r * r > n) --r;
    while ((r + 1) * (r + 1) <= n) ++r;
    return r;
}

}  // namespace

CfExpansion cf_sqrt(long long n, int terms) {
    if (n < 1) throw ValidationError("cf_sqrt requires n >= 1");
    CfExpansion cf;
    long long a0 = isqrt_ll(n);
    cf.head = a0;
    if (a0 * a0 == n) return cf;  // perfect square: finite expansion [a0]
    if (terms <= 0) throw ValidationError("non-square n needs a positive term count");

    // terms counts the head too, so the tail gets terms - 1 entries.
    // state (m, d): sqrt(n) remainder is (sqrt(n)+m)/d; a is the next term
    long long m = 0, d = 1, a = a0;
    std::map<std::pair<long long, long long>, int> seen;
    for (int i = 0; i < terms - 1; ++i) {
        m = d * a - m;
        d = (n - m * m) / d;
        a = (a0 + m) / d;
        if (!cf.period) {
            auto [it, inserted] = seen.emplace(std::make_pair(m, d), i);
            if (!inserted) cf.period = {it->second, i - it->second};
        }
        cf.tail.push_back(a);
    }
    return cf;
}

std::pair<long double, long double> convergent(const CfExpansion& cf, int k) {
    if (k < 0 || k > static_cast<int>(cf.tail.size()))
        throw ValidationError("convergent order outside the computed expansion");
    long double num = cf.tail.empty() || k == 0 ? cf.head : 0.0L;
    long double den = 1.0L;
    if (k > 0) {
        num = cf.tail[k - 1];
        den = 1.0L;
        for (int i = k - 2; i >= 0; --i) {
            // fold x -> a_i + 1/x
            long double new_num = cf.tail[i] * num + den;
            den = num;
            num = new_num;
        }
        // head + 1/x
        long double new_num = cf.head * num + den;
        den = num;
        num = new_num;
    }
    return {num, den};
}

}  // namespace kindred
