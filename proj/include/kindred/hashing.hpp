#ifndef KINDRED_HASHING_HPP
#define KINDRED_HASHING_HPP

#include <array>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace kindred {

// Wire identifiers for the hash registry. Only the id travels in requests;
// the registry fixes which concrete function backs each id.
enum class HashId { H1, H2, H3, KDF };

std::string to_string(HashId id);
HashId hash_id_from_string(std::string_view s);

// Registry mapping each HashId to one collision-resistant function,
// fixed at configuration time. The standard registry uses
// H1=SHA-1, H2=SHA-256, H3=SHA-384, KDF=SHA-512.
class HashRegistry {
public:
    static const HashRegistry& standard();

    std::vector<std::uint8_t> digest(HashId id, std::string_view data) const;
    std::string digest_hex(HashId id, std::string_view data) const;
    std::size_t digest_size(HashId id) const;

private:
    HashRegistry() = default;
};

std::vector<std::uint8_t> sha256_bytes(std::string_view data);
std::string sha256_hex(std::string_view data);

// HMAC-SHA-256 over raw bytes; used by the whistle cipher's tag.
std::array<std::uint8_t, 32> hmac_sha256(const std::uint8_t* key, std::size_t key_len,
                                         const std::uint8_t* data, std::size_t data_len);

}  // namespace kindred

#endif
