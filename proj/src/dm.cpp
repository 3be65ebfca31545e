#include "ats/dm.hpp"

#include "ats/decomp.hpp"
#include "ats/errors.hpp"

namespace ats {

namespace {

constexpr int kMaxSignAttempts = 256;

RingElem sample_ternary(Rng& rng, const Params& p) { return sample_chi(rng, p, 1); }

// Balanced-ternary digits of every coefficient; digit i of coefficient j lands in out[i].c[j].
RingVec gadget_invert(const Params& p, const RingElem& target) {
    RingVec out = zero_vec(p, p.k);
    for (size_t j = 0; j < p.n; ++j) {
        int64_t x = target.c[j];
        for (uint32_t i = 0; i < p.k; ++i) {
            int64_t r = ((x % 3) + 3) % 3;
            int d = r == 2 ? -1 : static_cast<int>(r);
            out[i].c[j] = d;
            x = (x - d) / 3;
        }
        if (x != 0) throw InternalError("gadget inversion did not terminate");
    }
    return out;
}

}  // namespace

std::pair<DmVerifKey, DmSignKey> dm_keygen(const Params& p, Rng& rng) {
    DmSignKey sk;
    sk.R.reserve(size_t{p.m} * p.k);
    for (size_t i = 0; i < size_t{p.m} * p.k; ++i) sk.R.push_back(sample_ternary(rng, p));

    DmVerifKey vk;
    RingVec abar = sample_uniform_vec(rng, p, p.m);
    vk.A = abar;
    for (uint32_t j = 0; j < p.k; ++j) {
        RingElem col = RingElem::zero(p);
        col.c[0] = reduce(pow3(j), p.q);
        for (uint32_t i = 0; i < p.m; ++i) col = sub(col, mul(abar[i], sk.R[size_t{i} * p.k + j]));
        vk.A.push_back(std::move(col));
    }
    vk.F0 = sample_uniform_vec(rng, p, p.m_bar);
    for (uint32_t i = 0; i <= p.d; ++i) vk.A_tags.push_back(sample_uniform_vec(rng, p, p.k));
    vk.F = sample_uniform_vec(rng, p, p.ell);
    vk.F1 = sample_uniform_vec(rng, p, p.m_bar_s);
    vk.u = sample_uniform(rng, p);
    return {std::move(vk), std::move(sk)};
}

RingElem Tag::block(const Params& p, uint32_t i) const {
    if (i < 1 || i > p.d) throw ShapeError("tag block index out of range");
    if (bits.size() != p.cd()) throw ShapeError("tag length must be c_d");
    RingElem out = RingElem::zero(p);
    RingElem x = RingElem::one(p);
    for (uint32_t j = p.c[i - 1]; j < p.c[i]; ++j)
        if (bits[j]) out = add(out, mul_xj(x, j));
    return out;
}

RingElem Tag::poly(const Params& p) const {
    RingElem out = RingElem::zero(p);
    for (uint32_t i = 1; i <= p.d; ++i) out = add(out, block(p, i));
    return out;
}

uint64_t Tag::value() const {
    uint64_t s = 0;
    for (size_t j = bits.size(); j-- > 0;) s = (s << 1) | bits[j];
    return s;
}

Tag tag_from_state(const Params& p, uint64_t S) {
    uint32_t cd = p.cd();
    if (cd < 64 && S >= (uint64_t{1} << cd)) throw ExhaustedError("signer state exhausted");
    Tag t;
    t.bits.resize(cd);
    for (uint32_t j = 0; j < cd; ++j) t.bits[j] = j < 64 ? static_cast<uint8_t>((S >> j) & 1) : 0;
    return t;
}

RingVec tag_matrix(const Params& p, const DmVerifKey& vk, const Tag& t) {
    if (vk.A_tags.size() != p.d + 1) throw ShapeError("verification key has wrong tag block count");
    RingVec out = vk.A_tags[0];
    for (uint32_t i = 1; i <= p.d; ++i) out = add(out, mul(vk.A_tags[i], t.block(p, i)));
    return out;
}

RingElem dm_target(const Params& p, const DmVerifKey& vk, const RingVec& m, const RingVec& r,
                   DmTrace* trace) {
    if (m.size() != p.m_s) throw ShapeError("message must have m_s entries");
    if (r.size() != p.m_bar) throw ShapeError("r must have m_bar entries");
    RingVec msg_dec = rdec_ring(m);
    RingElem y = add(dot(vk.F0, r), dot(vk.F1, msg_dec));
    RingVec y_dec = rdec_ring(y);
    RingElem target = add(dot(vk.F, y_dec), vk.u);
    if (trace) *trace = {std::move(msg_dec), std::move(y), std::move(y_dec)};
    return target;
}

RingVec preimage_sample(const Params& p, const DmVerifKey& vk, const DmSignKey& sk, const Tag& t,
                        const RingElem& target, Rng& rng) {
    RingVec atag = tag_matrix(p, vk, t);
    for (int attempt = 0; attempt < kMaxSignAttempts; ++attempt) {
        RingVec z;
        for (uint32_t i = 0; i < p.k; ++i) z.push_back(sample_ternary(rng, p));
        RingVec x2 = gadget_invert(p, sub(target, dot(atag, z)));
        RingVec x1;
        for (uint32_t i = 0; i < p.m; ++i) {
            RingElem acc = RingElem::zero(p);
            for (uint32_t j = 0; j < p.k; ++j) acc = add(acc, mul(sk.R[size_t{i} * p.k + j], x2[j]));
            x1.push_back(std::move(acc));
        }
        if (inf_norm(x1) > p.beta) continue;
        RingVec v = std::move(x1);
        v.insert(v.end(), x2.begin(), x2.end());
        v.insert(v.end(), z.begin(), z.end());
        return v;
    }
    throw InternalError("preimage sampling failed after bounded retries");
}

DmSignature dm_sign_with_tag(const Params& p, const DmVerifKey& vk, const DmSignKey& sk,
                             const Tag& t, const RingVec& m, Rng& rng, DmTrace* trace) {
    DmSignature sig;
    sig.t = t;
    sig.r = sample_chi_vec(rng, p, p.beta, p.m_bar);
    RingElem target = dm_target(p, vk, m, sig.r, trace);
    sig.v = preimage_sample(p, vk, sk, t, target, rng);
    return sig;
}

DmSignature dm_sign(const Params& p, const DmVerifKey& vk, const DmSignKey& sk,
                    SignerState& state, const RingVec& m, Rng& rng, DmTrace* trace) {
    Tag t = tag_from_state(p, state.S);
    DmSignature sig = dm_sign_with_tag(p, vk, sk, t, m, rng, trace);
    ++state.S;
    return sig;
}

bool dm_verify(const Params& p, const DmVerifKey& vk, const RingVec& m, const DmSignature& sig) {
    try {
        if (sig.t.bits.size() != p.cd()) return false;
        for (uint8_t b : sig.t.bits)
            if (b > 1) return false;
        if (sig.r.size() != p.m_bar || sig.v.size() != size_t{p.m_bar} + p.k) return false;
        if (vk.A.size() != p.m_bar) return false;
        if (inf_norm(sig.r) > p.beta || inf_norm(sig.v) > p.beta) return false;
        RingVec at = vk.A;
        RingVec atag = tag_matrix(p, vk, sig.t);
        at.insert(at.end(), atag.begin(), atag.end());
        return dot(at, sig.v) == dm_target(p, vk, m, sig.r);
    } catch (const std::exception&) {
        return false;
    }
}

}  // namespace ats
