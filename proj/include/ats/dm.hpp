#pragma once

#include <cstdint>
#include <vector>

#include "ats/ring.hpp"

namespace ats {

struct DmVerifKey {
    RingVec A;       // 1 x m_bar, [Abar | G - Abar*R]
    RingVec F0;      // 1 x m_bar
    std::vector<RingVec> A_tags;  // A_[0..d], each 1 x k
    RingVec F;       // 1 x ell
    RingVec F1;      // 1 x m_bar_s
    RingElem u;
    bool operator==(const DmVerifKey&) const = default;
};

struct DmSignKey {
    RingVec R;  // m x k ternary, row-major
    bool operator==(const DmSignKey&) const = default;
};

struct Tag {
    std::vector<uint8_t> bits;  // t_0 .. t_{c_d - 1}

    // t_[i](X) = sum_{j = c_{i-1}}^{c_i - 1} t_j X^j, i in 1..d.
    RingElem block(const Params& p, uint32_t i) const;
    // t(X) = sum_i t_[i](X).
    RingElem poly(const Params& p) const;
    uint64_t value() const;
    bool operator==(const Tag&) const = default;
};

struct DmSignature {
    Tag t;
    RingVec r;  // m_bar
    RingVec v;  // m_bar + k
    bool operator==(const DmSignature&) const = default;
};

struct SignerState {
    uint64_t S = 0;
};

// Intermediate values of one signature, needed by the proving relations.
struct DmTrace {
    RingVec msg_dec;  // rdec(m), m_bar_s entries
    RingElem y;       // F0*r + F1*rdec(m)
    RingVec y_dec;    // rdec(y), ell entries
};

std::pair<DmVerifKey, DmSignKey> dm_keygen(const Params& p, Rng& rng);

Tag tag_from_state(const Params& p, uint64_t S);

// A_[0] + sum_i t_[i] * A_[i].
RingVec tag_matrix(const Params& p, const DmVerifKey& vk, const Tag& t);
// F*rdec(F0*r + F1*rdec(m)) + u.
RingElem dm_target(const Params& p, const DmVerifKey& vk, const RingVec& m, const RingVec& r,
                   DmTrace* trace = nullptr);

// v with [A | A_tag]*v = target and ||v|| <= beta.
RingVec preimage_sample(const Params& p, const DmVerifKey& vk, const DmSignKey& sk, const Tag& t,
                        const RingElem& target, Rng& rng);

// Stateless core: sign under an explicit tag.
DmSignature dm_sign_with_tag(const Params& p, const DmVerifKey& vk, const DmSignKey& sk,
                             const Tag& t, const RingVec& m, Rng& rng, DmTrace* trace = nullptr);
DmSignature dm_sign(const Params& p, const DmVerifKey& vk, const DmSignKey& sk,
                    SignerState& state, const RingVec& m, Rng& rng, DmTrace* trace = nullptr);

bool dm_verify(const Params& p, const DmVerifKey& vk, const RingVec& m, const DmSignature& sig);

}  // namespace ats
