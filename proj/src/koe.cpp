#include "ats/koe.hpp"

#include <cstdlib>

#include "ats/errors.hpp"

namespace ats {

KoeKeys koe_keygen(const Params& p, Rng& rng) {
    // s = 0 makes b short, and then anyone can decrypt under the key or its randomizations.
    RingElem s;
    do s = sample_chi(rng, p, p.B);
    while (s.is_zero());
    RingVec e = sample_chi_vec(rng, p, p.B, p.ell);
    return koe_keygen_from(p, rng, std::move(s), std::move(e));
}

KoeKeys koe_keygen_from(const Params& p, Rng& rng, RingElem s, RingVec e) {
    if (e.size() != p.ell) throw ShapeError("koe key noise must have ell entries");
    KoeKeys k;
    k.pk.a = sample_uniform_vec(rng, p, p.ell);
    k.pk.b = add(mul(k.pk.a, s), e);
    k.sk.s = std::move(s);
    k.e = std::move(e);
    return k;
}

KoeRandomizer koe_sample_randomizer(const Params& p, Rng& rng) {
    KoeRandomizer r;
    // g = 0 leaves only small noise in front of the message; any short key would decrypt.
    do r.g = sample_chi(rng, p, p.B);
    while (r.g.is_zero());
    r.e1 = sample_chi_vec(rng, p, p.B, p.ell);
    r.e2 = sample_chi_vec(rng, p, p.B, p.ell);
    return r;
}

void check_randomizer(const Params& p, const KoeRandomizer& r) {
    if (r.e1.size() != p.ell || r.e2.size() != p.ell || r.g.n() != p.n)
        throw ShapeError("randomizer shape mismatch");
    if (inf_norm(r.g) > p.B || inf_norm(r.e1) > p.B || inf_norm(r.e2) > p.B)
        throw DomainError("randomizer exceeds bound B");
}

KoePublicKey koe_keyrand(const Params& p, const KoePublicKey& pk, const KoeRandomizer& r) {
    check_randomizer(p, r);
    if (pk.a.size() != p.ell || pk.b.size() != p.ell) throw ShapeError("public key shape mismatch");
    return {add(mul(pk.a, r.g), r.e1), add(mul(pk.b, r.g), r.e2)};
}

std::pair<KoePublicKey, KoeRandomizer> koe_keyrand(const Params& p, const KoePublicKey& pk, Rng& rng) {
    KoeRandomizer r = koe_sample_randomizer(p, rng);
    KoePublicKey out = koe_keyrand(p, pk, r);
    return {std::move(out), std::move(r)};
}

KoeCiphertext koe_enc(const Params& p, const KoePublicKey& pk, const RingElem& msg,
                      const KoeRandomizer& r) {
    check_randomizer(p, r);
    RingVec m = scale(rdec_ring(msg), p.q4());
    return {add(mul(pk.a, r.g), r.e1), add(add(mul(pk.b, r.g), r.e2), m)};
}

int round_trit(int64_t y, const Params& p) {
    const int64_t q4 = p.q4();
    int best = 0;
    int64_t best_d = -1;
    // Candidate order encodes the tie rule.
    for (int t : {0, 1, -1}) {
        int64_t d = std::llabs(reduce(y - t * q4, p.q));
        if (best_d < 0 || d < best_d) {
            best = t;
            best_d = d;
        }
    }
    return best;
}

RingElem koe_dec(const Params& p, const KoeSecretKey& sk, const KoeCiphertext& ct) {
    if (ct.c1.size() != p.ell || ct.c2.size() != p.ell) throw ShapeError("ciphertext shape mismatch");
    RingVec d = sub(ct.c2, mul(ct.c1, sk.s));
    TernaryVec t;
    t.reserve(p.n * p.ell);
    for (const auto& e : d)
        for (int32_t y : e.c) t.push_back(static_cast<int8_t>(round_trit(y, p)));
    // t is tau of the rounded R^ell vector; H folds it back to one element.
    IntVecQ folded = apply_H(full_sequence(p), t, p.q);
    return tau_inv(folded, p.n)[0];
}

int64_t koe_noise(const Params& p, const KoeSecretKey& sk, const KoeCiphertext& ct,
                  const RingElem& msg) {
    RingVec d = sub(sub(ct.c2, mul(ct.c1, sk.s)), scale(rdec_ring(msg), p.q4()));
    return inf_norm(d);
}

}  // namespace ats
