#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "ats/dm.hpp"
#include "ats/koe.hpp"
#include "ats/relations.hpp"
#include "ats/stern.hpp"

namespace ats {

// Public parameters: B and the two escrow-free base keys (a_i^(0), b_i^(0)).
struct PublicParams {
    Params params;
    RingVec B;  // 1 x m
    KoePublicKey base1, base2;
    bool operator==(const PublicParams&) const = default;
};

struct GroupPublicKey {
    PublicParams pp;
    DmVerifKey vk;
    KoePublicKey gm1, gm2;  // (a_i^(1), b_i^(1))
    const Params& params() const { return pp.params; }
    // tr = 0 selects the setup keys, tr = 1 the GM keys.
    const KoePublicKey& base(int tr, int i) const;
    bool operator==(const GroupPublicKey&) const = default;
};

struct IssueKey {
    DmSignKey R;
    bool operator==(const IssueKey&) const = default;
};

struct OpeningKey {
    RingElem s1;
    RingVec e1;
    bool operator==(const OpeningKey&) const = default;
};

struct GroupKeys {
    GroupPublicKey gpk;
    IssueKey ik;
    OpeningKey ok;
};

struct UserKeys {
    RingElem upk;  // p = B*x
    RingVec usk;   // x, ternary
};

struct Certificate {
    RingElem p;
    KoePublicKey epk1, epk2;
    DmSignature sig;
    bool operator==(const Certificate&) const = default;
};

struct EscrowWitness {
    KoeRandomizer w1, w2;
    bool operator==(const EscrowWitness&) const = default;
};

struct RegEntry {
    uint64_t index = 0;
    RingElem p;
    uint8_t tr = 0;
    EscrowWitness escrow;
    bool operator==(const RegEntry&) const = default;
};

struct GmState {
    SignerState signer;
    std::vector<RegEntry> reg;
};

struct EnrollResult {
    Certificate cert;
    EscrowWitness escrow;
    RegEntry entry;
};

struct GroupSignature {
    NizkProof proof;
    KoeCiphertext c1, c2;
    bool operator==(const GroupSignature&) const = default;
};

struct OpenResult {
    std::optional<RingElem> p;
    std::optional<NizkProof> proof;
    bool bottom() const { return !p.has_value(); }
};

// Secrets that production code erases; only tests ask for them.
struct SetupTrapdoor {
    KoeKeys k1, k2;
};
struct GmTrapdoor {
    KoeKeys k2;
};

PublicParams ats_setup(const Params& p, Rng& rng, SetupTrapdoor* keep = nullptr);
GroupKeys ats_gkeygen(const PublicParams& pp, Rng& rng, GmTrapdoor* keep = nullptr);
UserKeys ats_ukeygen(const PublicParams& pp, Rng& rng);

// Throws PolicyError on a duplicate upk unless allow_duplicates, ExhaustedError when
// the tag space is used up. state is left untouched on failure.
EnrollResult ats_enroll(const GroupPublicKey& gpk, const IssueKey& ik, GmState& state, const RingElem& upk,
                        uint8_t tr, Rng& rng, bool allow_duplicates = false);

GroupSignature ats_sign(const GroupPublicKey& gpk, const Certificate& cert, const RingVec& usk,
                        std::span<const uint8_t> message, Rng& rng);
bool ats_verify(const GroupPublicKey& gpk, std::span<const uint8_t> message, const GroupSignature& sig);

OpenResult ats_open(const GroupPublicKey& gpk, const OpeningKey& ok, const std::vector<RegEntry>& reg,
                    std::span<const uint8_t> message, const GroupSignature& sig, Rng& rng);
bool ats_judge(const GroupPublicKey& gpk, std::span<const uint8_t> message, const GroupSignature& sig,
               const std::optional<RingElem>& p_open, const std::optional<NizkProof>& proof);

bool ats_account(const GroupPublicKey& gpk, const Certificate& cert, const EscrowWitness& escrow, int tr);

// Relation instances as rebuilt by verifiers.
RelationInstance ats_sign_relation(const GroupPublicKey& gpk, const GroupSignature& sig);
RelationInstance ats_open_relation(const GroupPublicKey& gpk, const GroupSignature& sig, const RingElem& p_open);

// Canonical bytes of a group signature (proof || c1 || c2).
std::vector<uint8_t> signature_bytes(const Params& p, const GroupSignature& sig);
GroupSignature parse_signature_bytes(const Params& p, std::span<const uint8_t> bytes);

}  // namespace ats
