#include "ats/ats.hpp"

#include <algorithm>

#include "ats/bytes.hpp"
#include "ats/decomp.hpp"
#include "ats/errors.hpp"

namespace ats {

namespace {

void wipe(RingElem& a) { std::fill(a.c.begin(), a.c.end(), 0); }
void wipe(RingVec& v) {
    for (auto& a : v) wipe(a);
}
void wipe(KoeKeys& k) {
    wipe(k.sk.s);
    wipe(k.e);
}

AtsPublic ats_public(const GroupPublicKey& gpk, const GroupSignature& sig) {
    return AtsPublic{gpk.vk, gpk.pp.B, sig.c1, sig.c2};
}

OpenPublic open_public(const GroupPublicKey& gpk, const GroupSignature& sig, const RingElem& p_open) {
    return OpenPublic{gpk.gm1, sig.c1, p_open};
}

void check_ct(const Params& p, const KoeCiphertext& ct) {
    if (ct.c1.size() != p.ell || ct.c2.size() != p.ell) throw ShapeError("ciphertext must have ell entries");
    for (const RingVec* v : {&ct.c1, &ct.c2})
        for (const auto& a : *v)
            if (a.n() != p.n || a.q != p.q) throw ShapeError("ciphertext ring element has wrong shape");
}

// Open-proof context: the full signature, bound next to M.
std::vector<uint8_t> open_context(const GroupPublicKey& gpk, const GroupSignature& sig) {
    return signature_bytes(gpk.params(), sig);
}

}  // namespace

const KoePublicKey& GroupPublicKey::base(int tr, int i) const {
    if (tr != 0 && tr != 1) throw DomainError("tr must be 0 or 1");
    if (i != 1 && i != 2) throw DomainError("key index must be 1 or 2");
    if (tr == 0) return i == 1 ? pp.base1 : pp.base2;
    return i == 1 ? gm1 : gm2;
}

PublicParams ats_setup(const Params& p, Rng& rng, SetupTrapdoor* keep) {
    p.validate();
    PublicParams pp;
    pp.params = p;
    pp.B = sample_uniform_vec(rng, p, p.m);
    KoeKeys k1 = koe_keygen(p, rng);
    KoeKeys k2 = koe_keygen(p, rng);
    pp.base1 = k1.pk;
    pp.base2 = k2.pk;
    if (keep) {
        keep->k1 = k1;
        keep->k2 = k2;
    }
    wipe(k1);
    wipe(k2);
    return pp;
}

GroupKeys ats_gkeygen(const PublicParams& pp, Rng& rng, GmTrapdoor* keep) {
    const Params& p = pp.params;
    p.validate();
    GroupKeys out;
    out.gpk.pp = pp;
    auto [vk, sk] = dm_keygen(p, rng);
    out.gpk.vk = std::move(vk);
    out.ik.R = std::move(sk);
    // A GM secret that also fits the base key would open tr=0 signatures (1 in 81 at n=4, B=1).
    auto fits = [&](const KoePublicKey& base, const RingElem& s) {
        return inf_norm(sub(base.b, mul(base.a, s))) <= p.q10();
    };
    KoeKeys k1 = koe_keygen(p, rng);
    while (fits(pp.base1, k1.sk.s)) k1 = koe_keygen(p, rng);
    KoeKeys k2 = koe_keygen(p, rng);
    while (fits(pp.base2, k2.sk.s)) k2 = koe_keygen(p, rng);
    out.gpk.gm1 = k1.pk;
    out.gpk.gm2 = k2.pk;
    out.ok = OpeningKey{k1.sk.s, k1.e};
    if (keep) keep->k2 = k2;
    wipe(k1);
    wipe(k2);
    return out;
}

UserKeys ats_ukeygen(const PublicParams& pp, Rng& rng) {
    UserKeys u;
    u.usk = sample_chi_vec(rng, pp.params, 1, pp.params.m);
    u.upk = dot(pp.B, u.usk);
    return u;
}

EnrollResult ats_enroll(const GroupPublicKey& gpk, const IssueKey& ik, GmState& state, const RingElem& upk,
                        uint8_t tr, Rng& rng, bool allow_duplicates) {
    const Params& p = gpk.params();
    if (tr > 1) throw DomainError("tr must be 0 or 1");
    if (upk.n() != p.n || upk.q != p.q) throw ShapeError("upk has wrong shape");
    if (!allow_duplicates)
        for (const auto& e : state.reg)
            if (e.p == upk) throw PolicyError("upk already enrolled");
    // Fails before any randomness is spent.
    tag_from_state(p, state.signer.S);

    EnrollResult out;
    auto [epk1, w1] = koe_keyrand(p, gpk.base(tr, 1), rng);
    auto [epk2, w2] = koe_keyrand(p, gpk.base(tr, 2), rng);
    out.cert.p = upk;
    out.cert.epk1 = std::move(epk1);
    out.cert.epk2 = std::move(epk2);
    out.escrow = EscrowWitness{std::move(w1), std::move(w2)};
    SignerState next = state.signer;
    out.cert.sig = dm_sign(p, gpk.vk, ik.R, next, ats_message(upk, out.cert.epk1, out.cert.epk2), rng);
    out.entry = RegEntry{state.signer.S, upk, tr, out.escrow};
    state.signer = next;
    state.reg.push_back(out.entry);
    return out;
}

RelationInstance ats_sign_relation(const GroupPublicKey& gpk, const GroupSignature& sig) {
    check_ct(gpk.params(), sig.c1);
    check_ct(gpk.params(), sig.c2);
    return build_ats_relation(gpk.params(), ats_public(gpk, sig));
}

RelationInstance ats_open_relation(const GroupPublicKey& gpk, const GroupSignature& sig, const RingElem& p_open) {
    check_ct(gpk.params(), sig.c1);
    return build_open_relation(gpk.params(), open_public(gpk, sig, p_open));
}

GroupSignature ats_sign(const GroupPublicKey& gpk, const Certificate& cert, const RingVec& usk,
                        std::span<const uint8_t> message, Rng& rng) {
    const Params& p = gpk.params();
    if (usk.size() != p.m) throw ShapeError("usk must have m entries");
    if (dot(gpk.pp.B, usk) != cert.p) throw WitnessError("usk does not match the certificate: B*x != p");
    AtsWitness w;
    w.p = cert.p;
    w.epk1 = cert.epk1;
    w.epk2 = cert.epk2;
    w.sig = cert.sig;
    w.x = usk;
    w.enc1 = koe_sample_randomizer(p, rng);
    w.enc2 = koe_sample_randomizer(p, rng);
    GroupSignature sig;
    sig.c1 = koe_enc(p, cert.epk1, cert.p, w.enc1);
    sig.c2 = koe_enc(p, cert.epk2, cert.p, w.enc2);
    RelationInstance rel = ats_sign_relation(gpk, sig);
    Witness wit = encode_ats_witness(rel, p, ats_public(gpk, sig), w);
    sig.proof = fs_prove(rel, wit, message, {}, p.kappa, rng);
    return sig;
}

bool ats_verify(const GroupPublicKey& gpk, std::span<const uint8_t> message, const GroupSignature& sig) {
    try {
        if (sig.proof.relid != kRelAts) return false;
        RelationInstance rel = ats_sign_relation(gpk, sig);
        return fs_verify(rel, message, {}, sig.proof);
    } catch (const std::exception&) {
        return false;
    }
}

OpenResult ats_open(const GroupPublicKey& gpk, const OpeningKey& ok, const std::vector<RegEntry>& reg,
                    std::span<const uint8_t> message, const GroupSignature& sig, Rng& rng) {
    const Params& p = gpk.params();
    OpenResult out;
    if (!ats_verify(gpk, message, sig)) return out;
    KoeSecretKey sk{ok.s1};
    RingElem p_open = koe_dec(p, sk, sig.c1);
    auto hit = std::find_if(reg.begin(), reg.end(), [&](const RegEntry& e) { return e.p == p_open; });
    if (hit == reg.end()) return out;

    OpenWitness w;
    w.s = ok.s1;
    w.e = ok.e1;
    w.y = sub(sub(sig.c1.c2, mul(sig.c1.c1, ok.s1)), scale(rdec_ring(p_open), p.q4()));
    if (inf_norm(w.y) > p.q10()) return out;
    RelationInstance rel = ats_open_relation(gpk, sig, p_open);
    Witness wit = encode_open_witness(rel, p, open_public(gpk, sig, p_open), w);
    out.p = p_open;
    out.proof = fs_prove(rel, wit, message, open_context(gpk, sig), p.kappa, rng);
    return out;
}

bool ats_judge(const GroupPublicKey& gpk, std::span<const uint8_t> message, const GroupSignature& sig,
               const std::optional<RingElem>& p_open, const std::optional<NizkProof>& proof) {
    if (!p_open || !proof) return false;
    try {
        if (proof->relid != kRelOpen) return false;
        if (!ats_verify(gpk, message, sig)) return false;
        RelationInstance rel = ats_open_relation(gpk, sig, *p_open);
        return fs_verify(rel, message, open_context(gpk, sig), *proof);
    } catch (const std::exception&) {
        return false;
    }
}

bool ats_account(const GroupPublicKey& gpk, const Certificate& cert, const EscrowWitness& escrow, int tr) {
    try {
        const Params& p = gpk.params();
        if (tr != 0 && tr != 1) return false;
        if (!dm_verify(p, gpk.vk, ats_message(cert.p, cert.epk1, cert.epk2), cert.sig)) return false;
        check_randomizer(p, escrow.w1);
        check_randomizer(p, escrow.w2);
        return koe_keyrand(p, gpk.base(tr, 1), escrow.w1) == cert.epk1 &&
               koe_keyrand(p, gpk.base(tr, 2), escrow.w2) == cert.epk2;
    } catch (const std::exception&) {
        return false;
    }
}

std::vector<uint8_t> signature_bytes(const Params& p, const GroupSignature& sig) {
    ByteWriter w;
    w.put_blob(serialize_proof(proof_shape(p, relation_spec(p, kRelAts)), sig.proof));
    const size_t width = p.coeff_bytes();
    for (const KoeCiphertext* ct : {&sig.c1, &sig.c2}) {
        check_ct(p, *ct);
        put_ring_vec(w, ct->c1, width);
        put_ring_vec(w, ct->c2, width);
    }
    return w.take();
}

GroupSignature parse_signature_bytes(const Params& p, std::span<const uint8_t> bytes) {
    ByteReader r(bytes);
    GroupSignature sig;
    std::vector<uint8_t> proof = r.get_blob();
    sig.proof = parse_proof(proof_shape(p, relation_spec(p, kRelAts)), proof);
    if (sig.proof.relid != kRelAts) throw FormatError("signature proof has the wrong relation id");
    for (KoeCiphertext* ct : {&sig.c1, &sig.c2}) {
        ct->c1 = get_ring_vec(r, p, p.ell);
        ct->c2 = get_ring_vec(r, p, p.ell);
    }
    r.expect_end();
    return sig;
}

}  // namespace ats
