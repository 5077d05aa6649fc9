#include "ppat/credential_store.hpp"

#include <algorithm>
#include <fstream>
#include <functional>
#include <sstream>

#include <openssl/crypto.h>
#include <openssl/evp.h>

#include <json.hpp>

namespace ppat {

namespace {

using ordered_json = nlohmann::ordered_json;

// ---------------------------------------------------------------------------
// Hex helpers
// ---------------------------------------------------------------------------

std::string to_hex(const std::vector<std::uint8_t>& bytes) {
    static const char* digits = "0123456789abcdef";
    std::string out;
    out.reserve(bytes.size() * 2);
    for (std::uint8_t b : bytes) {
        out += digits[b >> 4];
        out += digits[b & 0xF];
    }
    return out;
}

std::vector<std::uint8_t> from_hex(std::string_view hex) {
    auto nibble = [](char c) -> int {
        if (c >= '0' && c <= '9') return c - '0';
        if (c >= 'a' && c <= 'f') return c - 'a' + 10;
        if (c >= 'A' && c <= 'F') return c - 'A' + 10;
        return -1;
    };
    if (hex.size() % 2 != 0) throw IntegrityError("hex string has odd length");
    std::vector<std::uint8_t> out;
    out.reserve(hex.size() / 2);
    for (std::size_t i = 0; i < hex.size(); i += 2) {
        const int hi = nibble(hex[i]);
        const int lo = nibble(hex[i + 1]);
        if (hi < 0 || lo < 0) throw IntegrityError("invalid hex digit");
        out.push_back(static_cast<std::uint8_t>((hi << 4) | lo));
    }
    return out;
}

// ---------------------------------------------------------------------------
// Digest registry
// ---------------------------------------------------------------------------

struct DigestEntry {
    const char* name;
    const EVP_MD* (*md)();
    unsigned bits;
};

constexpr DigestEntry kDigests[] = {
    {"sha256", EVP_sha256, 256},
    {"sha512", EVP_sha512, 512},
};

const DigestEntry& digest_entry(const std::string& algorithm) {
    for (const auto& entry : kDigests)
        if (algorithm == entry.name) return entry;
    throw DomainError("unknown digest algorithm '" + algorithm + "'");
}

// ---------------------------------------------------------------------------
// AES-256-GCM sealing (nonce || ciphertext || tag)
// ---------------------------------------------------------------------------

constexpr std::size_t kNonceBytes = 12;
constexpr std::size_t kTagBytes = 16;

struct EvpCipherCtx {
    EVP_CIPHER_CTX* ctx = EVP_CIPHER_CTX_new();
    ~EvpCipherCtx() { EVP_CIPHER_CTX_free(ctx); }
};

std::vector<std::uint8_t> seal(const std::array<std::uint8_t, 32>& key,
                               const std::string& plaintext, SeededRng& rng) {
    std::vector<std::uint8_t> blob(kNonceBytes);
    for (auto& b : blob) b = static_cast<std::uint8_t>(rng.uniform_below(256));

    EvpCipherCtx c;
    if (!c.ctx || EVP_EncryptInit_ex(c.ctx, EVP_aes_256_gcm(), nullptr, key.data(), blob.data()) != 1)
        throw Error("cipher initialization failed");

    std::vector<std::uint8_t> ct(plaintext.size());
    int len = 0;
    if (EVP_EncryptUpdate(c.ctx, ct.data(), &len,
                          reinterpret_cast<const std::uint8_t*>(plaintext.data()),
                          static_cast<int>(plaintext.size())) != 1)
        throw Error("encryption failed");
    int fin = 0;
    if (EVP_EncryptFinal_ex(c.ctx, ct.data() + len, &fin) != 1) throw Error("encryption failed");
    ct.resize(static_cast<std::size_t>(len + fin));

    std::array<std::uint8_t, kTagBytes> tag{};
    if (EVP_CIPHER_CTX_ctrl(c.ctx, EVP_CTRL_GCM_GET_TAG, kTagBytes, tag.data()) != 1)
        throw Error("tag extraction failed");

    blob.insert(blob.end(), ct.begin(), ct.end());
    blob.insert(blob.end(), tag.begin(), tag.end());
    return blob;
}

/// Returns the plaintext, or throws IntegrityError when the tag fails.
std::string open_sealed(const std::array<std::uint8_t, 32>& key,
                        const std::vector<std::uint8_t>& blob) {
    if (blob.size() < kNonceBytes + kTagBytes)
        throw IntegrityError("sealed blob shorter than nonce plus tag");
    const std::uint8_t* nonce = blob.data();
    const std::uint8_t* ct = blob.data() + kNonceBytes;
    const std::size_t ct_len = blob.size() - kNonceBytes - kTagBytes;
    std::array<std::uint8_t, kTagBytes> tag{};
    std::copy(blob.end() - kTagBytes, blob.end(), tag.begin());

    EvpCipherCtx c;
    if (!c.ctx || EVP_DecryptInit_ex(c.ctx, EVP_aes_256_gcm(), nullptr, key.data(), nonce) != 1)
        throw Error("cipher initialization failed");

    std::string plaintext(ct_len, '\0');
    int len = 0;
    if (EVP_DecryptUpdate(c.ctx, reinterpret_cast<std::uint8_t*>(plaintext.data()), &len, ct,
                          static_cast<int>(ct_len)) != 1)
        throw IntegrityError("sealed blob failed to decrypt");
    if (EVP_CIPHER_CTX_ctrl(c.ctx, EVP_CTRL_GCM_SET_TAG, kTagBytes, tag.data()) != 1)
        throw Error("tag installation failed");
    int fin = 0;
    if (EVP_DecryptFinal_ex(c.ctx, reinterpret_cast<std::uint8_t*>(plaintext.data()) + len, &fin) != 1)
        throw IntegrityError("sealed blob failed authentication");
    plaintext.resize(static_cast<std::size_t>(len + fin));
    return plaintext;
}

// ---------------------------------------------------------------------------
// Per-combination preimage
// ---------------------------------------------------------------------------

std::vector<std::uint8_t> combo_preimage(const std::vector<std::uint8_t>& salt,
                                         const std::vector<std::uint32_t>& positions,
                                         std::string_view characters) {
    std::vector<std::uint8_t> msg;
    msg.reserve(salt.size() + positions.size() + characters.size());
    msg.insert(msg.end(), salt.begin(), salt.end());
    for (std::uint32_t p : positions) msg.push_back(static_cast<std::uint8_t>(p));
    msg.insert(msg.end(), characters.begin(), characters.end());
    return msg;
}

void for_each_subset(std::uint32_t n, std::uint32_t m,
                     const std::function<void(const std::vector<std::uint32_t>&)>& fn) {
    std::vector<std::uint32_t> subset;
    subset.reserve(m);
    auto rec = [&](auto&& self, std::uint32_t start) -> void {
        if (subset.size() == m) {
            fn(subset);
            return;
        }
        for (std::uint32_t p = start; p + (m - subset.size()) <= n; ++p) {
            subset.push_back(p);
            self(self, p + 1);
            subset.pop_back();
        }
    };
    rec(rec, 0);
}

} // namespace

// ============================================================================
// Backend names and digests
// ============================================================================

std::string backend_name(Backend backend) {
    switch (backend) {
        case Backend::Plaintext: return "plaintext";
        case Backend::HashPerCombination: return "hash_per_combination";
        case Backend::EncryptedWithKeyService: return "encrypted_with_key_service";
    }
    throw DomainError("unknown backend tag");
}

Backend backend_from_name(std::string_view name) {
    if (name == "plaintext") return Backend::Plaintext;
    if (name == "hash_per_combination") return Backend::HashPerCombination;
    if (name == "encrypted_with_key_service") return Backend::EncryptedWithKeyService;
    throw DomainError("unknown backend name '" + std::string(name) + "'");
}

std::vector<std::string> digest_algorithms() {
    std::vector<std::string> names;
    for (const auto& entry : kDigests) names.emplace_back(entry.name);
    return names;
}

unsigned digest_bits(const std::string& algorithm) { return digest_entry(algorithm).bits; }

std::vector<std::uint8_t> compute_digest(const std::string& algorithm,
                                         const std::vector<std::uint8_t>& message) {
    const DigestEntry& entry = digest_entry(algorithm);
    std::vector<std::uint8_t> out(EVP_MAX_MD_SIZE);
    unsigned out_len = 0;
    if (EVP_Digest(message.data(), message.size(), out.data(), &out_len, entry.md(), nullptr) != 1)
        throw Error("digest computation failed");
    out.resize(out_len);
    return out;
}

// ============================================================================
// KeyService
// ============================================================================

KeyService::Sealed KeyService::enroll(const Password& password, SeededRng& rng) {
    std::array<std::uint8_t, 32> key{};
    for (auto& b : key) b = static_cast<std::uint8_t>(rng.uniform_below(256));

    std::lock_guard lock(mu_);
    std::vector<std::uint8_t> id_bytes(8);
    for (auto& b : id_bytes) b = static_cast<std::uint8_t>(rng.uniform_below(256));
    std::string key_id = "k" + to_hex(id_bytes);
    while (keys_.count(key_id)) key_id += "x";
    keys_[key_id] = key;

    return Sealed{key_id, seal(key, password.characters(), rng)};
}

bool KeyService::check(const std::string& key_id, const std::vector<std::uint8_t>& ciphertext,
                       const Challenge& challenge, const Response& response) const {
    std::array<std::uint8_t, 32> key{};
    {
        std::lock_guard lock(mu_);
        auto it = keys_.find(key_id);
        if (it == keys_.end()) throw ProtocolError("unknown key id '" + key_id + "'");
        key = it->second;
    }
    const std::string plaintext = open_sealed(key, ciphertext);
    decryptions_.fetch_add(1); // the full password just existed in the clear

    if (response.characters.size() != challenge.size())
        throw ProtocolError("response length does not match challenge size");
    bool ok = true;
    for (std::uint32_t j = 0; j < challenge.size(); ++j) {
        const std::uint32_t p = challenge.positions()[j];
        if (p >= plaintext.size()) throw ProtocolError("challenge position out of range");
        ok = ok && response.characters[j] == plaintext[p];
    }
    return ok;
}

void KeyService::save(const std::filesystem::path& path) const {
    ordered_json doc;
    doc["version"] = 1;
    ordered_json keys = ordered_json::object();
    {
        std::lock_guard lock(mu_);
        for (const auto& [id, key] : keys_)
            keys[id] = to_hex(std::vector<std::uint8_t>(key.begin(), key.end()));
    }
    doc["keys"] = std::move(keys);
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("cannot open key store '" + path.string() + "' for writing");
    out << doc.dump(2) << "\n";
}

void KeyService::load(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open key store '" + path.string() + "'");
    std::stringstream buf;
    buf << in.rdbuf();
    ordered_json doc;
    try {
        doc = ordered_json::parse(buf.str());
    } catch (const std::exception& e) {
        throw IntegrityError(std::string("key store is not valid JSON: ") + e.what());
    }
    if (!doc.contains("keys") || !doc["keys"].is_object())
        throw IntegrityError("key store has no keys object");
    std::map<std::string, std::array<std::uint8_t, 32>> keys;
    for (const auto& [id, hex] : doc["keys"].items()) {
        const std::vector<std::uint8_t> bytes = from_hex(hex.get<std::string>());
        if (bytes.size() != 32) throw IntegrityError("key '" + id + "' is not 32 bytes");
        std::array<std::uint8_t, 32> key{};
        std::copy(bytes.begin(), bytes.end(), key.begin());
        keys[id] = key;
    }
    std::lock_guard lock(mu_);
    keys_ = std::move(keys);
}

// ============================================================================
// Enroll / verify / cost
// ============================================================================

BigInt CredentialRecord::digest_payload_bits() const {
    if (backend != Backend::HashPerCombination) return 0;
    return BigInt(entries.size()) * digest_bits(digest_algorithm);
}

CredentialRecord enroll(const Password& password, SchemeParams params, Backend backend,
                        SeededRng& rng, KeyService* key_service,
                        const std::string& digest_algorithm, std::size_t salt_bytes) {
    params.validate();
    if (password.length() != params.n)
        throw DomainError("password length " + std::to_string(password.length()) +
                          " does not match n=" + std::to_string(params.n));

    CredentialRecord record;
    record.backend = backend;
    record.params = params;
    record.alphabet_symbols = password.alphabet().symbols();

    switch (backend) {
        case Backend::Plaintext:
            record.plaintext = password.characters();
            break;

        case Backend::HashPerCombination: {
            if (params.n > 255)
                throw DomainError("per-combination storage encodes positions as single octets; "
                                  "n must be at most 255");
            digest_entry(digest_algorithm); // validate the name up front
            record.digest_algorithm = digest_algorithm;
            record.salt.resize(salt_bytes);
            for (auto& b : record.salt) b = static_cast<std::uint8_t>(rng.uniform_below(256));
            for_each_subset(params.n, params.m, [&](const std::vector<std::uint32_t>& subset) {
                std::string chars;
                chars.reserve(subset.size());
                for (std::uint32_t p : subset) chars += password.at(p);
                record.entries.push_back(ComboDigest{
                    subset,
                    compute_digest(digest_algorithm,
                                   combo_preimage(record.salt, subset, chars))});
            });
            break;
        }

        case Backend::EncryptedWithKeyService: {
            if (key_service == nullptr)
                throw DomainError("encrypted backend needs a key service");
            KeyService::Sealed sealed = key_service->enroll(password, rng);
            record.key_id = std::move(sealed.key_id);
            record.ciphertext = std::move(sealed.ciphertext);
            break;
        }
    }
    return record;
}

bool verify(const CredentialRecord& record, const Challenge& challenge, const Response& response,
            const KeyService* key_service) {
    record.params.validate();
    if (response.characters.size() != challenge.size())
        throw ProtocolError("response length does not match challenge size");
    for (std::uint32_t p : challenge.positions())
        if (p >= record.params.n) throw ProtocolError("challenge position out of range");

    switch (record.backend) {
        case Backend::Plaintext: {
            if (record.plaintext.size() != record.params.n)
                throw IntegrityError("plaintext record has wrong length");
            bool ok = true;
            for (std::uint32_t j = 0; j < challenge.size(); ++j)
                ok = ok && response.characters[j] == record.plaintext[challenge.positions()[j]];
            return ok;
        }

        case Backend::HashPerCombination: {
            const auto& positions = challenge.positions();
            if (positions.size() != record.params.m)
                throw UnsupportedChallengeError("per-combination record serves exactly m=" +
                                                std::to_string(record.params.m) + " positions");
            if (std::adjacent_find(positions.begin(), positions.end()) != positions.end())
                throw UnsupportedChallengeError(
                    "per-combination record cannot serve repeated-position challenges");
            const auto it = std::lower_bound(
                record.entries.begin(), record.entries.end(), positions,
                [](const ComboDigest& e, const std::vector<std::uint32_t>& key) {
                    return e.positions < key;
                });
            if (it == record.entries.end() || it->positions != positions)
                throw IntegrityError("record is missing the digest for this position tuple");
            const std::vector<std::uint8_t> probe = compute_digest(
                record.digest_algorithm,
                combo_preimage(record.salt, positions, response.characters));
            if (probe.size() != it->digest.size())
                throw IntegrityError("stored digest width does not match the algorithm");
            return CRYPTO_memcmp(probe.data(), it->digest.data(), probe.size()) == 0;
        }

        case Backend::EncryptedWithKeyService: {
            if (key_service == nullptr)
                throw DomainError("encrypted backend needs a key service to verify");
            return key_service->check(record.key_id, record.ciphertext, challenge, response);
        }
    }
    throw IntegrityError("record carries an unknown backend tag");
}

BigInt storage_cost(SchemeParams params, Backend backend, std::uint64_t digest_bits_count,
                    std::uint64_t alphabet_size, std::uint64_t salt_bits) {
    params.validate();
    switch (backend) {
        case Backend::Plaintext: {
            if (alphabet_size < 2) throw DomainError("alphabet size must be at least 2");
            std::uint64_t bits_per_char = 0;
            while ((std::uint64_t{1} << bits_per_char) < alphabet_size) ++bits_per_char;
            return BigInt(params.n) * bits_per_char;
        }
        case Backend::HashPerCombination:
            return BigInt(digest_bits_count) * binom(params.n, params.m) + salt_bits;
        case Backend::EncryptedWithKeyService:
            return BigInt(kNonceBytes + params.n + kTagBytes) * 8;
    }
    throw DomainError("unknown backend tag");
}

// ============================================================================
// Serialization
// ============================================================================

std::string serialize_record(const CredentialRecord& record) {
    ordered_json doc;
    doc["version"] = 1;
    doc["backend"] = backend_name(record.backend);
    doc["n"] = record.params.n;
    doc["m"] = record.params.m;
    doc["alphabet"] = record.alphabet_symbols;
    switch (record.backend) {
        case Backend::Plaintext:
            doc["password"] = record.plaintext;
            break;
        case Backend::HashPerCombination: {
            doc["digest_algorithm"] = record.digest_algorithm;
            doc["salt"] = to_hex(record.salt);
            ordered_json entries = ordered_json::array();
            for (const auto& e : record.entries) {
                ordered_json item;
                item["positions"] = e.positions;
                item["digest"] = to_hex(e.digest);
                entries.push_back(std::move(item));
            }
            doc["entries"] = std::move(entries);
            break;
        }
        case Backend::EncryptedWithKeyService:
            doc["key_id"] = record.key_id;
            doc["ciphertext"] = to_hex(record.ciphertext);
            break;
    }
    return doc.dump(2) + "\n";
}

CredentialRecord parse_record(std::string_view text) {
    ordered_json doc;
    try {
        doc = ordered_json::parse(text);
    } catch (const std::exception& e) {
        throw IntegrityError(std::string("record is not valid JSON: ") + e.what());
    }

    auto need = [&](const char* field) -> const ordered_json& {
        if (!doc.contains(field))
            throw IntegrityError(std::string("record is missing field '") + field + "'");
        return doc[field];
    };

    if (need("version").get<int>() != 1) throw IntegrityError("unsupported record version");

    CredentialRecord record;
    try {
        record.backend = backend_from_name(need("backend").get<std::string>());
    } catch (const DomainError& e) {
        throw IntegrityError(e.what());
    }
    record.params.n = need("n").get<std::uint32_t>();
    record.params.m = need("m").get<std::uint32_t>();
    try {
        record.params.validate();
    } catch (const InvalidParamsError& e) {
        throw IntegrityError(e.what());
    }
    record.alphabet_symbols = need("alphabet").get<std::string>();

    switch (record.backend) {
        case Backend::Plaintext:
            record.plaintext = need("password").get<std::string>();
            if (record.plaintext.size() != record.params.n)
                throw IntegrityError("plaintext length does not match n");
            break;

        case Backend::HashPerCombination: {
            record.digest_algorithm = need("digest_algorithm").get<std::string>();
            unsigned bits = 0;
            try {
                bits = digest_bits(record.digest_algorithm);
            } catch (const DomainError& e) {
                throw IntegrityError(e.what());
            }
            record.salt = from_hex(need("salt").get<std::string>());
            const ordered_json& entries = need("entries");
            if (!entries.is_array()) throw IntegrityError("entries must be an array");
            const BigInt expected = binom(record.params.n, record.params.m);
            if (BigInt(entries.size()) != expected)
                throw IntegrityError("record must contain exactly " + expected.str() +
                                     " digests, found " + std::to_string(entries.size()));
            for (const auto& item : entries) {
                ComboDigest e;
                e.positions = item.at("positions").get<std::vector<std::uint32_t>>();
                if (e.positions.size() != record.params.m)
                    throw IntegrityError("entry does not carry m positions");
                if (!std::is_sorted(e.positions.begin(), e.positions.end()) ||
                    std::adjacent_find(e.positions.begin(), e.positions.end()) !=
                        e.positions.end())
                    throw IntegrityError("entry positions must be strictly ascending");
                if (!e.positions.empty() && e.positions.back() >= record.params.n)
                    throw IntegrityError("entry position out of range");
                e.digest = from_hex(item.at("digest").get<std::string>());
                if (e.digest.size() * 8 != bits)
                    throw IntegrityError("digest width does not match the algorithm");
                record.entries.push_back(std::move(e));
            }
            for (std::size_t i = 1; i < record.entries.size(); ++i)
                if (!(record.entries[i - 1].positions < record.entries[i].positions))
                    throw IntegrityError("entries must be sorted by position tuple");
            break;
        }

        case Backend::EncryptedWithKeyService:
            record.key_id = need("key_id").get<std::string>();
            record.ciphertext = from_hex(need("ciphertext").get<std::string>());
            break;
    }
    return record;
}

} // namespace ppat
