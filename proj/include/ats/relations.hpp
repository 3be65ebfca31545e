#pragma once

#include <cstdint>

#include "ats/dm.hpp"
#include "ats/koe.hpp"
#include "ats/stern.hpp"

namespace ats {

enum RelationId : uint8_t { kRelDm = 1, kRelRlwe = 2, kRelAts = 3, kRelOpen = 4 };

// Block lengths of an extended witness. Unused blocks stay 0.
struct RelationDims {
    size_t L1 = 0, L2 = 0, L3 = 0, L4 = 0;
    size_t K = 0;
    size_t total() const { return L1 + L2 + L3 + L4; }
};

RelationDims dm_dims(const Params& p);
RelationDims rlwe_dims(const Params& p);
RelationDims ats_dims(const Params& p);
RelationDims open_dims(const Params& p);

// Permutation layout of a relation; depends on the parameters only.
PermutationSpec relation_spec(const Params& p, RelationId id);

// Possession of a DM signature on a hidden message.
RelationInstance build_dm_relation(const Params& p, const DmVerifKey& vk);
Witness encode_dm_witness(const RelationInstance& rel, const Params& p, const DmVerifKey& vk,
                          const RingVec& m, const DmSignature& sig);

// c = a*g + e with a hidden, g and e B-bounded.
RelationInstance build_rlwe_relation(const Params& p, const RingVec& c);
Witness encode_rlwe_witness(const RelationInstance& rel, const Params& p, const RingVec& c,
                            const RingVec& a, const RingElem& g, const RingVec& e);

struct AtsPublic {
    DmVerifKey vk;
    RingVec B;  // 1 x m
    KoeCiphertext c1, c2;
};

struct AtsWitness {
    RingElem p;
    KoePublicKey epk1, epk2;  // (a'_1, b'_1), (a'_2, b'_2)
    DmSignature sig;
    RingVec x;
    KoeRandomizer enc1, enc2;  // (g'_i, e'_{i,1}, e'_{i,2})
};

// Signed message m = (p || a'_1 || b'_1 || a'_2 || b'_2).
RingVec ats_message(const RingElem& p, const KoePublicKey& epk1, const KoePublicKey& epk2);

RelationInstance build_ats_relation(const Params& p, const AtsPublic& pub);
// Refuses with WitnessError naming the violated condition.
Witness encode_ats_witness(const RelationInstance& rel, const Params& p, const AtsPublic& pub,
                           const AtsWitness& w);

struct OpenPublic {
    KoePublicKey pk;  // (a_1^(1), b_1^(1))
    KoeCiphertext c1;
    RingElem p_open;
};

struct OpenWitness {
    RingElem s;
    RingVec e;
    RingVec y;  // c_{1,2} - c_{1,1}*s - floor(q/4)*rdec(p')
};

RelationInstance build_open_relation(const Params& p, const OpenPublic& pub);
Witness encode_open_witness(const RelationInstance& rel, const Params& p, const OpenPublic& pub,
                            const OpenWitness& w);

// Columns of the extended witness that carry the unextended entries, in w0 order.
std::vector<size_t> value_positions(const PermutationSpec& spec);

}  // namespace ats
