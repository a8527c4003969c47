#ifndef KINDRED_DNA_ENCODING_HPP
#define KINDRED_DNA_ENCODING_HPP

#include <array>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace kindred {

// Bijection between digits {1,2,3,4} and bases; default 1=C, 2=G, 3=A, 4=T.
class BaseBijection {
public:
    BaseBijection() : digit_to_base_{'C', 'G', 'A', 'T'} {}
    explicit BaseBijection(std::array<char, 4> digit_to_base);

    char base_for(int digit) const;
    int digit_for(char base) const;

private:
    std::array<char, 4> digit_to_base_;
};

std::vector<int> seq_to_digits(std::string_view seq, const BaseBijection& f = {});
std::string digits_to_seq(const std::vector<int>& digits, const BaseBijection& f = {});

// Continued fraction [head; tail...]. For a non-square n the tail is
// eventually periodic; period is (start offset in tail, length).
struct CfExpansion {
    long long head = 0;
    std::vector<long long> tail;
    std::optional<std::pair<int, int>> period;

    std::string to_json() const;
};

// Expansion of sqrt(n) via the exact (m, d, a) integer recurrence; no
// floating point, period detected by the first repeated state.
CfExpansion cf_sqrt(long long n, int terms);

// Evaluate the convergent using head and the first k tail terms.
// Numerator/denominator as long doubles; plenty for desk-scale checks.
std::pair<long double, long double> convergent(const CfExpansion& cf, int k);

}  // namespace kindred

#endif
