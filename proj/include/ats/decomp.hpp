#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "ats/ring.hpp"

namespace ats {

using TernaryVec = std::vector<int8_t>;

struct BSequence {
    int64_t B = 0;
    uint32_t delta = 0;
    std::vector<int64_t> seq;  // B_1 .. B_delta
};

BSequence b_sequence(int64_t B);

// Greedy binary decomposition of a in [0, B]; seq . idec = a.
TernaryVec idec(const BSequence& bs, int64_t a);

// tau(rdec_B(a)): coefficient-major, delta digits per coefficient, length n*delta.
TernaryVec rdec_tau(const RingElem& a, const BSequence& bs);
// Vector form: concatenation over the entries of v.
TernaryVec rdec_tau(const RingVec& v, const BSequence& bs);
// rdec_B(a) as delta ring elements whose tau is rdec_tau(a).
RingVec rdec_ring(const RingElem& a, const BSequence& bs);
RingVec rdec_ring(const RingVec& v, const BSequence& bs);

// Default bound (q-1)/2.
BSequence full_sequence(const Params& p);
TernaryVec rdec_tau(const RingElem& a);
RingVec rdec_ring(const RingElem& a);
RingVec rdec_ring(const RingVec& v);

// Blockwise weighted sum with (B_1..B_delta): H_{m,B} * w without materializing H.
IntVecQ apply_H(const BSequence& bs, std::span<const int8_t> w, int64_t q);
IntVecQ apply_H(const BSequence& bs, const IntVecQ& w);
// Dense H_{m,B} (n*m rows). Test oracle only.
IntMatQ dense_H(const BSequence& bs, size_t n, size_t m, int64_t q);

RingVec ternary_to_ring(std::span<const int8_t> t, const Params& p);
IntVecQ ternary_to_intvec(std::span<const int8_t> t, int64_t q);

// 2-bit codes 00=0, 01=1, 11=-1; entry i at bits 2*(i%4) of byte i/4.
std::vector<uint8_t> pack_ternary(std::span<const int8_t> t);
TernaryVec unpack_ternary(std::span<const uint8_t> bytes, size_t len);
inline size_t packed_ternary_size(size_t len) { return (len + 3) / 4; }

}  // namespace ats
