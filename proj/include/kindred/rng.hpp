#ifndef KINDRED_RNG_HPP
#define KINDRED_RNG_HPP

#include <cstdint>
#include <random>
#include <string_view>

namespace kindred {

inline std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

// Counter-based seed splitting: every module-level seed is derived from the
// single run seed plus a label, never from ambient state.
inline std::uint64_t derive_seed(std::uint64_t root, std::string_view label,
                                 std::uint64_t counter = 0) {
    std::uint64_t h = 0xcbf29ce484222325ULL;  // FNV-1a over the label
    for (char c : label) {
        h ^= static_cast<unsigned char>(c);
        h *= 0x100000001b3ULL;
    }
    return splitmix64(root ^ splitmix64(h) ^ counter);
}

inline std::mt19937_64 make_rng(std::uint64_t root, std::string_view label,
                                std::uint64_t counter = 0) {
    return std::mt19937_64(derive_seed(root, label, counter));
}

}  // namespace kindred

#endif
