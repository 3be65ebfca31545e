#pragma once

#include <array>
#include <cstdint>
#include <memory>
#include <span>
#include <vector>

#include "ats/perm.hpp"
#include "ats/ring.hpp"

namespace ats {

// Sparse K x L matrix mod q as (row, col, val) triplets; duplicates add up.
struct SparseMatQ {
    int64_t q = 0;
    size_t rows = 0;
    size_t cols = 0;
    std::vector<uint32_t> r;
    std::vector<uint32_t> c;
    std::vector<int32_t> v;

    SparseMatQ() = default;
    SparseMatQ(size_t rows_, size_t cols_, int64_t q_) : q(q_), rows(rows_), cols(cols_) {}
    void add(size_t row, size_t col, int64_t val);
    size_t nnz() const { return v.size(); }
    IntVecQ mul(std::span<const int32_t> x) const;
    IntMatQ to_dense() const;
};

// String commitment: COM(payload; rho) = B1*bits(rho) + B2*bits(SHA-256(payload)) mod q.
class ComKey {
public:
    static constexpr size_t kLambda = 128;
    static constexpr size_t kHashBits = 256;

    explicit ComKey(const Params& p);

    size_t rows() const { return rows_; }
    size_t rho_bits() const { return rho_bits_; }
    size_t rho_bytes() const { return (rho_bits_ + 7) / 8; }
    size_t digest_bytes() const { return rows_ * width_; }

    std::vector<uint8_t> commit_hash(const Digest& payload_hash, std::span<const uint8_t> rho) const;
    std::vector<uint8_t> commit(std::span<const uint8_t> payload, std::span<const uint8_t> rho) const;

private:
    int64_t q_;
    size_t width_;
    size_t rows_;
    size_t rho_bits_;
    std::vector<int32_t> b1_;  // rows x rho_bits
    std::vector<int32_t> b2_;  // rows x kHashBits
};

// Hashes the canonical fixed-width encoding of Z_q entries without materializing it.
class PayloadHasher {
public:
    PayloadHasher(int64_t q, size_t width);
    ~PayloadHasher();
    void bytes(std::span<const uint8_t> b);
    void zq(std::span<const int32_t> x);
    // Entries of a + b mod q.
    void zq_sum(std::span<const int32_t> a, std::span<const int8_t> b);
    Digest final();

private:
    void flush();
    struct Impl;
    std::unique_ptr<Impl> impl_;
    int64_t q_;
    size_t width_;
    std::vector<uint8_t> buf_;
};

struct RelationInstance {
    uint8_t id = 0;
    Params params;
    SparseMatQ M;
    IntVecQ u;
    PermutationSpec spec;
    std::shared_ptr<const ComKey> com;
    Digest statement{};  // binds the public input into Fiat-Shamir

    size_t L() const { return spec.length(); }
    size_t K() const { return u.size(); }
    // w in VALID and M*w = u.
    bool satisfied(std::span<const int32_t> w) const;
    bool satisfied(std::span<const int8_t> w) const;
    void finalize_statement(std::span<const uint8_t> public_input);
};

using Witness = TernaryVec;

struct SternCommitment {
    std::vector<uint8_t> c1, c2, c3;
    bool operator==(const SternCommitment&) const = default;
};

struct SternResponse {
    uint8_t ch = 0;
    TernaryVec t_w;                  // ch 1
    PermutationSpec::Values eta;     // ch 2, 3
    std::vector<int32_t> vec;        // t_r (ch 1), w2 (ch 2), w3 (ch 3)
    std::vector<uint8_t> rho_a;      // ch1: rho2, ch2: rho1, ch3: rho1
    std::vector<uint8_t> rho_b;      // ch1: rho3, ch2: rho3, ch3: rho2
    bool operator==(const SternResponse&) const = default;
};

// Prover-side secrets of one round.
struct SternProverState {
    PermutationSpec::Values eta;
    std::vector<uint32_t> src;
    std::shared_ptr<const Witness> w;
    std::vector<int32_t> r_w;
    std::vector<uint8_t> rho1, rho2, rho3;
};

std::pair<SternCommitment, SternProverState> stern_commit(const RelationInstance& rel, const Witness& w,
                                                          Rng& rng);
SternResponse stern_respond(const RelationInstance& rel, const SternProverState& st, uint8_t ch);
bool stern_verify(const RelationInstance& rel, const SternCommitment& cmt, const SternResponse& rsp);

// Witness w' = w2 - w3 from three accepting transcripts on one commitment.
std::vector<int32_t> extract_witness(const RelationInstance& rel, const SternCommitment& cmt,
                                     const SternResponse& r1, const SternResponse& r2,
                                     const SternResponse& r3);

// Witness-less cheating prover. Strategy A commits honestly to a random valid w'
// (answers ch 1 and 3); strategy B shifts C1 by M*w' - u (answers ch 1 and 2).
enum class SimStrategy { A, B };
std::pair<SternCommitment, SternProverState> simulate_commit(const RelationInstance& rel,
                                                             SimStrategy s, Rng& rng);
// Accepted transcript for target_ch in {1,2,3}.
std::pair<SternCommitment, SternResponse> simulate_round(const RelationInstance& rel, uint8_t target_ch,
                                                         Rng& rng);

struct NizkProof {
    uint8_t relid = 0;
    std::vector<SternCommitment> cmts;
    std::vector<uint8_t> chs;
    std::vector<SternResponse> rsps;
    bool operator==(const NizkProof&) const = default;
};

std::vector<uint8_t> fs_challenges(const RelationInstance& rel, std::span<const uint8_t> message,
                                   std::span<const uint8_t> context,
                                   const std::vector<SternCommitment>& cmts);
NizkProof fs_prove(const RelationInstance& rel, const Witness& w, std::span<const uint8_t> message,
                   std::span<const uint8_t> context, uint32_t kappa, Rng& rng);
bool fs_verify(const RelationInstance& rel, std::span<const uint8_t> message,
               std::span<const uint8_t> context, const NizkProof& proof);

// Binary layout: "ATSP" u16 version u8 relid u16 kappa, then per round
// C1 C2 C3 || ch || response.
constexpr uint16_t kProofVersion = 1;
constexpr size_t kProofHeaderBytes = 9;

struct ProofShape {
    int64_t q = 0;
    size_t L = 0;
    size_t eta_len = 0;
    std::vector<size_t> eta_comps;
    size_t width = 0;
    size_t rho_bytes = 0;
    size_t com_bytes = 0;
};
ProofShape proof_shape(const RelationInstance& rel);
ProofShape proof_shape(const Params& p, const PermutationSpec& spec);

std::vector<uint8_t> serialize_proof(const ProofShape& shape, const NizkProof& proof);
NizkProof parse_proof(const ProofShape& shape, std::span<const uint8_t> bytes);
// Closed-form byte size for a given challenge vector.
size_t proof_size(const ProofShape& shape, std::span<const uint8_t> chs);

}  // namespace ats
