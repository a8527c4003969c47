#ifndef KINDRED_BIGNUM_HPP
#define KINDRED_BIGNUM_HPP

#include <cmath>
#include <cstdint>
#include <cstdio>
#include <string>

namespace kindred {

// Decimal magnitude carried as mantissa * 10^exponent with 1 <= mantissa < 10.
// Big enough for 4^150e9 without arbitrary precision; exact to ~15 digits.
struct Magnitude {
    double mantissa = 0.0;  // 0 only for the zero value
    std::int64_t exponent = 0;

    static Magnitude from_log10(long double log10_value) {
        Magnitude m;
        std::int64_t e = static_cast<std::int64_t>(std::floor(log10_value));
        long double frac = log10_value - static_cast<long double>(e);
        m.mantissa = static_cast<double>(std::pow(10.0L, frac));
        // pow can land on 10.0 through rounding
        if (m.mantissa >= 10.0) {
            m.mantissa /= 10.0;
            ++e;
        }
        m.exponent = e;
        return m;
    }

    static Magnitude from_value(long double v) {
        if (v == 0.0L) return Magnitude{};
        return from_log10(std::log10(v));
    }

    long double log10() const {
        return std::log10(static_cast<long double>(mantissa)) +
               static_cast<long double>(exponent);
    }

    Magnitude operator*(const Magnitude& rhs) const {
        return from_log10(log10() + rhs.log10());
    }

    std::string str() const {
        char buf[64];
        std::snprintf(buf, sizeof(buf), "%.4fe%lld", mantissa,
                      static_cast<long long>(exponent));
        return buf;
    }
};

}  // namespace kindred

#endif
