#pragma once

#include "ats/decomp.hpp"
#include "ats/ring.hpp"

namespace ats {

struct KoePublicKey {
    RingVec a;
    RingVec b;
    bool operator==(const KoePublicKey&) const = default;
};

struct KoeSecretKey {
    RingElem s;
    bool operator==(const KoeSecretKey&) const = default;
};

// (g, e1, e2); also the shape of each half of an escrow witness.
struct KoeRandomizer {
    RingElem g;
    RingVec e1;
    RingVec e2;
    bool operator==(const KoeRandomizer&) const = default;
};

struct KoeCiphertext {
    RingVec c1;
    RingVec c2;
    bool operator==(const KoeCiphertext&) const = default;
};

struct KoeKeys {
    KoePublicKey pk;
    KoeSecretKey sk;
    RingVec e;  // b = a*s + e
};

KoeKeys koe_keygen(const Params& p, Rng& rng);
// b = a*s + e for caller-chosen s, e (setup and tests).
KoeKeys koe_keygen_from(const Params& p, Rng& rng, RingElem s, RingVec e);

KoeRandomizer koe_sample_randomizer(const Params& p, Rng& rng);
void check_randomizer(const Params& p, const KoeRandomizer& r);

// (a*g + e1, b*g + e2); deterministic in (pk, r).
KoePublicKey koe_keyrand(const Params& p, const KoePublicKey& pk, const KoeRandomizer& r);
// Sampling form: draws r, returns both.
std::pair<KoePublicKey, KoeRandomizer> koe_keyrand(const Params& p, const KoePublicKey& pk, Rng& rng);

KoeCiphertext koe_enc(const Params& p, const KoePublicKey& pk, const RingElem& msg,
                      const KoeRandomizer& r);
RingElem koe_dec(const Params& p, const KoeSecretKey& sk, const KoeCiphertext& ct);

// Nearest trit t to y/floor(q/4); ties go to smaller |t|, then to +1.
int round_trit(int64_t y, const Params& p);

// inf_norm(c2 - c1*s - floor(q/4)*rdec(msg)).
int64_t koe_noise(const Params& p, const KoeSecretKey& sk, const KoeCiphertext& ct,
                  const RingElem& msg);

}  // namespace ats
