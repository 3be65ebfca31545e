#include <map>
#include <set>

#include "doctest.h"

#include "ats/errors.hpp"
#include "ats/stern.hpp"
#include "instances.hpp"

using namespace ats;
using namespace ats::testing;

namespace {

std::span<const uint8_t> bytes_of(const std::string& s) {
    return {reinterpret_cast<const uint8_t*>(s.data()), s.size()};
}

const RelationId kAll[] = {kRelDm, kRelRlwe, kRelAts, kRelOpen};

}  // namespace

TEST_CASE("commitment is deterministic with fixed-size digests") {
    Params p = small_params();
    ComKey ck(p);
    Rng rng(61);
    std::vector<uint8_t> rho(ck.rho_bytes());
    rng.fill(rho.data(), rho.size());
    std::vector<uint8_t> a{1, 2, 3}, big(5000, 7);
    CHECK(ck.commit(a, rho) == ck.commit(a, rho));
    CHECK(ck.commit(a, rho).size() == ck.digest_bytes());
    CHECK(ck.commit(big, rho).size() == ck.digest_bytes());
    CHECK(ck.commit(a, rho) != ck.commit(big, rho));
    // Leftover-hash length: at least rows * log2(q) + 2 * lambda bits of randomness.
    CHECK(ck.rho_bits() >= ck.rows() * ceil_log2(p.q) + 2 * ComKey::kLambda);

    std::set<std::vector<uint8_t>> seen;
    for (int t = 0; t < 10000; ++t) {
        rng.fill(rho.data(), rho.size());
        seen.insert(ck.commit(a, rho));
    }
    CHECK(seen.size() == 10000);
}

TEST_CASE("honest rounds accept every challenge") {
    Params p = small_params();
    Rng rng(62);
    for (RelationId id : kAll) {
        CAPTURE(relation_name(id));
        auto h = honest(p, id, rng);
        REQUIRE(h.rel.satisfied(std::span<const int8_t>(h.w)));
        for (int t = 0; t < 5; ++t) {
            auto [cmt, st] = stern_commit(h.rel, h.w, rng);
            for (uint8_t ch = 1; ch <= 3; ++ch) CHECK(stern_verify(h.rel, cmt, stern_respond(h.rel, st, ch)));
        }
    }
}

TEST_CASE("prover refuses a witness outside the relation") {
    Params p = small_params();
    Rng rng(63);
    auto h = honest_rlwe(p, rng);
    auto bad = h.w;
    bad[0] = static_cast<int8_t>(bad[0] == 1 ? -1 : 1);
    CHECK_THROWS_AS(stern_commit(h.rel, bad, rng), WitnessError);
    CHECK_THROWS_AS(fs_prove(h.rel, bad, {}, {}, p.kappa, rng), WitnessError);
}

TEST_CASE("verifier rejects replayed and tampered responses") {
    Params p = small_params();
    Rng rng(64);
    auto h = honest_dm(p, rng);
    auto [cmt, st] = stern_commit(h.rel, h.w, rng);

    auto r2 = stern_respond(h.rel, st, 2);
    auto replay = r2;
    replay.ch = 3;
    CHECK_FALSE(stern_verify(h.rel, cmt, replay));

    // C3 is opened by ch 1 and ch 2; ch 3 never touches it.
    auto r1 = stern_respond(h.rel, st, 1);
    auto r3 = stern_respond(h.rel, st, 3);
    auto flipped = cmt;
    flipped.c3[0] ^= 1;
    CHECK_FALSE(stern_verify(h.rel, flipped, r1));
    CHECK_FALSE(stern_verify(h.rel, flipped, r2));
    CHECK(stern_verify(h.rel, flipped, r3));

    // t_w outside VALID.
    auto bad = r1;
    bad.t_w[0] = static_cast<int8_t>(bad.t_w[0] == 0 ? 1 : 0);
    CHECK_FALSE(stern_verify(h.rel, cmt, bad));

    auto shortv = r2;
    shortv.vec.pop_back();
    CHECK_FALSE(stern_verify(h.rel, cmt, shortv));
    auto badrho = r2;
    badrho.rho_a.push_back(0);
    CHECK_FALSE(stern_verify(h.rel, cmt, badrho));
}

TEST_CASE("ch=1 response is uniform over VALID at minimal dims") {
    // Single trit component with an Enc segment: VALID has 3 elements.
    Params p = small_params();
    RelationInstance rel;
    rel.id = 9;
    rel.params = p;
    size_t z = rel.spec.add_component(1, false);
    rel.spec.add_enc(z);
    rel.M = SparseMatQ(1, 3, p.q);
    rel.M.add(0, 0, 1);
    rel.u = IntVecQ{p.q, {1}};
    rel.com = std::make_shared<ComKey>(p);
    rel.finalize_statement({});
    // M reads slot 0 only; enc3(0) = (1, 0, -1) satisfies it.
    Witness w = enc3(0);
    REQUIRE(rel.satisfied(std::span<const int8_t>(w)));
    Rng rng(65);
    std::map<TernaryVec, int> hits;
    const int N = 3000;
    for (int t = 0; t < N; ++t) {
        auto [cmt, st] = stern_commit(rel, w, rng);
        ++hits[stern_respond(rel, st, 1).t_w];
    }
    CHECK(hits.size() == 3);
    for (const auto& [v, c] : hits) {
        CHECK(rel.spec.valid(std::span<const int8_t>(v)));
        CHECK(std::abs(c - N / 3) < 150);
    }
}

TEST_CASE("extractor recovers the witness") {
    Params p = small_params();
    Rng rng(66);
    for (RelationId id : kAll) {
        CAPTURE(relation_name(id));
        auto h = honest(p, id, rng);
        auto [cmt, st] = stern_commit(h.rel, h.w, rng);
        auto w2 = extract_witness(h.rel, cmt, stern_respond(h.rel, st, 1), stern_respond(h.rel, st, 2),
                                  stern_respond(h.rel, st, 3));
        CHECK(h.rel.satisfied(std::span<const int32_t>(w2)));
        CHECK(w2 == std::vector<int32_t>(h.w.begin(), h.w.end()));
    }
}

TEST_CASE("extractor refuses transcripts from different commitments") {
    Params p = small_params();
    Rng rng(67);
    auto h = honest_rlwe(p, rng);
    auto [c1, s1] = stern_commit(h.rel, h.w, rng);
    auto [c2, s2] = stern_commit(h.rel, h.w, rng);
    CHECK_THROWS_AS(extract_witness(h.rel, c1, stern_respond(h.rel, s1, 1), stern_respond(h.rel, s1, 2),
                                    stern_respond(h.rel, s2, 3)),
                    ExtractionError);
    CHECK_THROWS_AS(extract_witness(h.rel, c1, stern_respond(h.rel, s1, 2), stern_respond(h.rel, s1, 1),
                                    stern_respond(h.rel, s1, 3)),
                    ExtractionError);
}

TEST_CASE("simulator passes at most two of three challenges") {
    Params p = small_params();
    Rng rng(68);
    auto h = honest_rlwe(p, rng);
    for (auto strat : {SimStrategy::A, SimStrategy::B}) {
        for (int t = 0; t < 30; ++t) {
            auto [cmt, st] = simulate_commit(h.rel, strat, rng);
            int ok = 0;
            for (uint8_t ch = 1; ch <= 3; ++ch) ok += stern_verify(h.rel, cmt, stern_respond(h.rel, st, ch));
            CHECK(ok == 2);
        }
    }
    for (uint8_t target = 1; target <= 3; ++target) {
        auto [cmt, rsp] = simulate_round(h.rel, target, rng);
        CHECK(stern_verify(h.rel, cmt, rsp));
    }
    int accepted = 0;
    const int N = 3000;
    for (int t = 0; t < N; ++t) {
        auto [cmt, st] = simulate_commit(h.rel, rng.bit() ? SimStrategy::A : SimStrategy::B, rng);
        accepted += stern_verify(h.rel, cmt, stern_respond(h.rel, st, uint8_t(rng.uniform(3) + 1)));
    }
    CHECK(std::abs(double(accepted) / N - 2.0 / 3.0) < 0.05);
}

TEST_CASE("Fiat-Shamir proofs verify, serialize and bind their inputs") {
    Params p = small_params();
    Rng rng(69);
    for (RelationId id : kAll) {
        CAPTURE(relation_name(id));
        auto h = honest(p, id, rng);
        std::string msg = "message", ctx = "context";
        auto proof = fs_prove(h.rel, h.w, bytes_of(msg), bytes_of(ctx), p.kappa, rng);
        CHECK(proof.relid == id);
        CHECK(proof.chs == fs_challenges(h.rel, bytes_of(msg), bytes_of(ctx), proof.cmts));
        CHECK(fs_verify(h.rel, bytes_of(msg), bytes_of(ctx), proof));

        auto shape = proof_shape(h.rel);
        auto bytes = serialize_proof(shape, proof);
        CHECK(bytes.size() == proof_size(shape, proof.chs));
        auto back = parse_proof(shape, bytes);
        CHECK(back == proof);
        CHECK(fs_verify(h.rel, bytes_of(msg), bytes_of(ctx), back));

        std::string ctx2 = "context2", msg2 = "message2";
        CHECK_FALSE(fs_verify(h.rel, bytes_of(msg), bytes_of(ctx2), proof));
        CHECK_FALSE(fs_verify(h.rel, bytes_of(msg2), bytes_of(ctx), proof));
        auto wrong = proof;
        wrong.relid = static_cast<uint8_t>(id % 4 + 1);
        CHECK_FALSE(fs_verify(h.rel, bytes_of(msg), bytes_of(ctx), wrong));
        auto shortp = proof;
        shortp.cmts.pop_back();
        CHECK_FALSE(fs_verify(h.rel, bytes_of(msg), bytes_of(ctx), shortp));

        bytes.pop_back();
        CHECK_THROWS_AS(parse_proof(shape, bytes), FormatError);
    }
}

TEST_CASE("challenge derivation is unbiased in shape") {
    Params p = small_params();
    Rng rng(70);
    auto h = honest_rlwe(p, rng);
    std::vector<SternCommitment> cmts;
    for (int i = 0; i < 3000; ++i) cmts.push_back(stern_commit(h.rel, h.w, rng).first);
    auto chs = fs_challenges(h.rel, {}, {}, cmts);
    int count[4] = {0, 0, 0, 0};
    for (uint8_t c : chs) {
        REQUIRE((c >= 1 && c <= 3));
        ++count[c];
    }
    for (int c = 1; c <= 3; ++c) CHECK(std::abs(count[c] - 1000) < 120);
}
