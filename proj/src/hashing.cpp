#include "kindred/hashing.hpp"

#include <openssl/evp.h>
#include <openssl/hmac.h>

#include "kindred/errors.hpp"

namespace kindred {
namespace {

const EVP_MD* md_for(HashId id) {
    switch (id) {
        case HashId::H1: return EVP_sha1();
        case HashId::H2: return EVP_sha256();
        case HashId::H3: return EVP_sha384();
        case HashId::KDF: return EVP_sha512();
    }
    throw ConfigError("unregistered hash id");
}

std::vector<std::uint8_t> evp_digest(const EVP_MD* md, std::string_view data) {
    std::vector<std::uint8_t> out(EVP_MD_size(md));
    unsigned int len = 0;
    if (!EVP_Digest(data.data(), data.size(), out.data(), &len, md, nullptr))
        throw ConfigError("digest computation failed");
    out.resize(len);
    return out;
}

std::string to_hex(const std::vector<std::uint8_t>& bytes) {
    static const char* digits = "0123456789abcdef";
    std::string hex;
    hex.reserve(bytes.size() * 2);
    for (auto b : bytes) {
        hex.push_back(digits[b >> 4]);
        hex.push_back(digits[b & 0x0f]);
    }
    return hex;
}

}  // namespace

std::string to_string(HashId id) {
    switch (id) {
        case HashId::H1: return "H1";
        case HashId::H2: return "H2";
        case HashId::H3: return "H3";
        case HashId::KDF: return "KDF";
    }
    return "?";
}

HashId hash_id_from_string(std::string_view s) {
    if (s == "H1") return HashId::H1;
    if (s == "H2") return HashId::H2;
    if (s == "H3") return HashId::H3;
    if (s == "KDF") return HashId::KDF;
    throw ParseError("unknown hash id: " + std::string(s));
}

const HashRegistry& HashRegistry::standard() {
    static const HashRegistry reg;
    return reg;
}

std::vector<std::uint8_t> HashRegistry::digest(HashId id, std::string_view data) const {
    return evp_digest(md_for(id), data);
}

std::string HashRegistry::digest_hex(HashId id, std::string_view data) const {
    return to_hex(digest(id, data));
}

std::size_t HashRegistry::digest_size(HashId id) const {
    return static_cast<std::size_t>(EVP_MD_size(md_for(id)));
}

std::vector<std::uint8_t> sha256_bytes(std::string_view data) {
    return evp_digest(EVP_sha256(), data);
}

std::string sha256_hex(std::string_view data) {
    return to_hex(sha256_bytes(data));
}

std::array<std::uint8_t, 32> hmac_sha256(const std::uint8_t* key, std::size_t key_len,
                                         const std::uint8_t* data, std::size_t data_len) {
    std::array<std::uint8_t, 32> out{};
    unsigned int len = 0;
    if (!HMAC(EVP_sha256(), key, static_cast<int>(key_len), data, data_len, out.data(), &len) ||
        len != out.size())
        throw ConfigError("hmac computation failed");
    return out;
}

}  // namespace kindred
