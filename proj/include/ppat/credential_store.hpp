#pragma once

#include <array>
#include <atomic>
#include <cstdint>
#include <filesystem>
#include <map>
#include <mutex>
#include <string>
#include <string_view>
#include <vector>

#include "ppat/combinatorics.hpp"
#include "ppat/protocol_sim.hpp"
#include "ppat/rng.hpp"

namespace ppat {

// ============================================================================
// Backends and digests
// ============================================================================

enum class Backend {
    Plaintext,
    HashPerCombination,
    EncryptedWithKeyService,
};

std::string backend_name(Backend backend);
Backend backend_from_name(std::string_view name);

/// Names of the registered digest algorithms ("sha256" is the default).
std::vector<std::string> digest_algorithms();

/// Output width of a registered algorithm, in bits. Unknown name -> DomainError.
unsigned digest_bits(const std::string& algorithm);

/// Computes a registered digest over a byte string.
std::vector<std::uint8_t> compute_digest(const std::string& algorithm,
                                         const std::vector<std::uint8_t>& message);

// ============================================================================
// Key service (mock of a verify-only hardware module)
// ============================================================================

/// Holds symmetric keys behind an enroll/check interface; raw keys never
/// leave the service. During check the full password is decrypted inside
/// the service (the unavoidable exposure of this backend), and a counter
/// of those decryption events is exposed so the exposure stays measurable.
class KeyService {
public:
    struct Sealed {
        std::string key_id;
        std::vector<std::uint8_t> ciphertext; ///< nonce || ct || tag
    };

    KeyService() = default;

    /// Generates a fresh key, encrypts the password under it, returns the
    /// sealed blob plus the key id. The key stays inside the service.
    Sealed enroll(const Password& password, SeededRng& rng);

    /// Decrypts internally and checks the response characters against the
    /// challenged positions. Unknown key id -> ProtocolError; failed
    /// authentication tag -> IntegrityError.
    bool check(const std::string& key_id, const std::vector<std::uint8_t>& ciphertext,
               const Challenge& challenge, const Response& response) const;

    /// How many times a full password was decrypted inside the service.
    std::uint64_t decryption_count() const { return decryptions_.load(); }

    // Mock persistence: a real module would keep keys in tamper-resistant
    // memory. The file stands in for that internal storage and is never
    // part of a credential record.
    void save(const std::filesystem::path& path) const;
    void load(const std::filesystem::path& path); ///< replaces the key table

private:
    mutable std::mutex mu_;
    std::map<std::string, std::array<std::uint8_t, 32>> keys_;
    mutable std::atomic<std::uint64_t> decryptions_{0};
};

// ============================================================================
// Credential records
// ============================================================================

/// One per-combination digest: the m challenge positions (ascending) and
/// the digest of salt || position-octets || characters-at-positions.
struct ComboDigest {
    std::vector<std::uint32_t> positions;
    std::vector<std::uint8_t> digest;

    friend bool operator==(const ComboDigest&, const ComboDigest&) = default;
};

/// Backend-tagged stored secret, serializable to a versioned text document.
struct CredentialRecord {
    Backend backend = Backend::Plaintext;
    SchemeParams params;
    std::string alphabet_symbols;

    // Plaintext
    std::string plaintext;

    // HashPerCombination
    std::string digest_algorithm;
    std::vector<std::uint8_t> salt;
    std::vector<ComboDigest> entries; ///< all C(n,m) m-subsets, ascending

    // EncryptedWithKeyService
    std::string key_id;
    std::vector<std::uint8_t> ciphertext;

    /// Bits of digest material (entry count x digest width); 0 for other
    /// backends.
    BigInt digest_payload_bits() const;

    friend bool operator==(const CredentialRecord&, const CredentialRecord&) = default;
};

inline constexpr std::size_t kDefaultSaltBytes = 16;

/// Enrolls a password under the chosen backend.
///
/// HashPerCombination stores, for every m-subset S of positions in
/// ascending order, digest(salt || encode(S) || characters-at-S), with a
/// fresh salt drawn from `rng` per enrollment; encode(S) is one octet per
/// index, so it requires n <= 255. EncryptedWithKeyService needs a
/// KeyService to hold the key.
CredentialRecord enroll(const Password& password, SchemeParams params, Backend backend,
                        SeededRng& rng, KeyService* key_service = nullptr,
                        const std::string& digest_algorithm = "sha256",
                        std::size_t salt_bytes = kDefaultSaltBytes);

/// Accept iff the response matches the stored secret at the challenged
/// positions. Digest comparison is constant-time in the digest content.
/// Repeated-position challenges against HashPerCombination raise
/// UnsupportedChallengeError; structurally broken records raise
/// IntegrityError.
bool verify(const CredentialRecord& record, const Challenge& challenge,
            const Response& response, const KeyService* key_service = nullptr);

/// Storage footprint in bits for one user.
///   Plaintext:          n * ceil(log2(alphabet size))   (informational)
///   HashPerCombination: digest_bits * C(n,m) + salt_bits
///   Encrypted:          (nonce + n + tag) * 8 for the sealed blob
BigInt storage_cost(SchemeParams params, Backend backend, std::uint64_t digest_bits_count,
                    std::uint64_t alphabet_size, std::uint64_t salt_bits = kDefaultSaltBytes * 8);

// ============================================================================
// Record file format
// ============================================================================

/// Versioned, self-describing text serialization. Round-trips bit-exactly:
/// serialize(parse(serialize(r))) == serialize(r).
std::string serialize_record(const CredentialRecord& record);

/// Parses and structurally validates a record document; violations raise
/// IntegrityError.
CredentialRecord parse_record(std::string_view text);

} // namespace ppat
