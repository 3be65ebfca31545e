#include "doctest.h"

#include "ats/dm.hpp"
#include "ats/errors.hpp"

using namespace ats;

namespace {

struct DmFixture {
    Params p = Params::defaults();
    Rng rng{41};
    DmVerifKey vk;
    DmSignKey sk;
    DmFixture() { std::tie(vk, sk) = dm_keygen(p, rng); }
    RingVec message() { return sample_uniform_vec(rng, p, p.m_s); }
};

// [A | A_tag] * v recomputed from the key blocks.
RingElem apply_At(const Params& p, const DmVerifKey& vk, const Tag& t, const RingVec& v) {
    RingElem acc = RingElem::zero(p);
    for (size_t i = 0; i < p.m_bar; ++i) acc = add(acc, mul(vk.A[i], v[i]));
    for (size_t j = 0; j < p.k; ++j) {
        RingElem col = vk.A_tags[0][j];
        for (uint32_t i = 1; i <= p.d; ++i) col = add(col, mul(vk.A_tags[i][j], t.block(p, i)));
        acc = add(acc, mul(col, v[p.m_bar + j]));
    }
    return acc;
}

}  // namespace

TEST_CASE("tag_from_state bit expansion") {
    Params p = Params::defaults();
    CHECK(tag_from_state(p, 0).bits == std::vector<uint8_t>(p.cd(), 0));
    auto t5 = tag_from_state(p, 5);
    CHECK(t5.bits[0] == 1);
    CHECK(t5.bits[1] == 0);
    CHECK(t5.bits[2] == 1);
    CHECK(t5.bits[3] == 0);
    Params small = Params::make_with_tags(8, 9, 2, 31, 16, 0, {0, 2, 4, 8});
    for (uint64_t S = 0; S < 256; ++S) {
        auto t = tag_from_state(small, S);
        uint64_t back = 0;
        for (size_t j = 0; j < t.bits.size(); ++j) back += uint64_t(t.bits[j]) << j;
        CHECK(back == S);
        CHECK(t.value() == S);
    }
    CHECK_THROWS_AS(tag_from_state(small, 256), ExhaustedError);
}

TEST_CASE("tag blocks partition the tag polynomial") {
    Params p = Params::defaults();
    auto t = tag_from_state(p, 0xA5C3);
    RingElem sum = RingElem::zero(p);
    for (uint32_t i = 1; i <= p.d; ++i) sum = add(sum, t.block(p, i));
    CHECK(sum == t.poly(p));
    // t(X) = sum_j t_j X^j with X^n = -1 folding the high bits.
    RingElem direct = RingElem::zero(p);
    for (uint32_t j = 0; j < p.cd(); ++j)
        if (t.bits[j]) direct = add(direct, mul_xj(RingElem::one(p), j));
    CHECK(direct == t.poly(p));
}

TEST_CASE("keygen is deterministic and embeds the gadget") {
    Params p = Params::defaults();
    Rng r1(42), r2(42);
    auto a = dm_keygen(p, r1), b = dm_keygen(p, r2);
    CHECK(a.first == b.first);
    CHECK(a.second == b.second);
    const auto& [vk, sk] = a;
    CHECK(vk.A.size() == p.m_bar);
    CHECK(vk.F0.size() == p.m_bar);
    CHECK(vk.A_tags.size() == p.d + 1);
    CHECK(vk.F.size() == p.ell);
    CHECK(vk.F1.size() == p.m_bar_s);
    CHECK(inf_norm(sk.R) <= 1);
    // A * [R; I] = G, column j of G is the constant 3^j.
    for (uint32_t j = 0; j < p.k; ++j) {
        RingElem acc = vk.A[p.m + j];
        for (uint32_t i = 0; i < p.m; ++i) acc = add(acc, mul(vk.A[i], sk.R[size_t{i} * p.k + j]));
        RingElem g = RingElem::zero(p);
        g.c[0] = reduce(pow3(j), p.q);
        CHECK(acc == g);
    }
}

TEST_CASE("public blocks look uniform") {
    DmFixture f;
    // 27 bins of width 729 over [0, q).
    std::vector<int> count(27, 0);
    size_t total = 0;
    auto feed = [&](const RingVec& v) {
        for (const auto& e : v)
            for (int32_t x : e.c) {
                ++count[size_t((x + f.p.half()) / 729)];
                ++total;
            }
    };
    feed(f.vk.F1);
    feed(f.vk.F0);
    for (const auto& b : f.vk.A_tags) feed(b);
    double expected = double(total) / 27.0, stat = 0;
    for (int c : count) stat += (c - expected) * (c - expected) / expected;
    CHECK(stat < 54.05);
}

TEST_CASE("preimages satisfy the equation and the bound") {
    DmFixture f;
    for (int t = 0; t < 100; ++t) {
        auto tag = tag_from_state(f.p, f.rng.uniform(1u << 16));
        auto target = sample_uniform(f.rng, f.p);
        auto v = preimage_sample(f.p, f.vk, f.sk, tag, target, f.rng);
        CHECK(v.size() == f.p.m_bar + f.p.k);
        CHECK(inf_norm(v) <= f.p.beta);
        CHECK(apply_At(f.p, f.vk, tag, v) == target);
    }
}

TEST_CASE("sign and verify across advancing states") {
    DmFixture f;
    SignerState st;
    std::vector<uint64_t> tags;
    for (int t = 0; t < 50; ++t) {
        auto m = f.message();
        auto sig = dm_sign(f.p, f.vk, f.sk, st, m, f.rng);
        CHECK(dm_verify(f.p, f.vk, m, sig));
        CHECK(inf_norm(sig.r) <= f.p.beta);
        CHECK(apply_At(f.p, f.vk, sig.t, sig.v) == dm_target(f.p, f.vk, m, sig.r));
        tags.push_back(sig.t.value());
    }
    CHECK(st.S == 50);
    for (size_t i = 0; i < tags.size(); ++i) CHECK(tags[i] == i);
}

TEST_CASE("verify rejects tampering") {
    DmFixture f;
    SignerState st{3};
    auto m = f.message();
    auto sig = dm_sign(f.p, f.vk, f.sk, st, m, f.rng);
    REQUIRE(dm_verify(f.p, f.vk, m, sig));

    auto m2 = m;
    m2[5].c[0] = reduce(m2[5].c[0] + 1, f.p.q);
    CHECK_FALSE(dm_verify(f.p, f.vk, m2, sig));

    auto s2 = sig;
    s2.v = scale(s2.v, 2);
    s2.v[0].c[0] = static_cast<int32_t>(f.p.beta + 1);
    CHECK_FALSE(dm_verify(f.p, f.vk, m, s2));

    auto s3 = sig;
    s3.t = tag_from_state(f.p, sig.t.value() + 1);
    CHECK_FALSE(dm_verify(f.p, f.vk, m, s3));

    auto s4 = sig;
    s4.r[0].c[0] = static_cast<int32_t>(f.p.beta + 1);
    CHECK_FALSE(dm_verify(f.p, f.vk, m, s4));

    auto s5 = sig;
    s5.v.pop_back();
    CHECK_FALSE(dm_verify(f.p, f.vk, m, s5));
}

TEST_CASE("signing refuses an exhausted state") {
    DmFixture f;
    SignerState st{uint64_t{1} << f.p.cd()};
    CHECK_THROWS_AS(dm_sign(f.p, f.vk, f.sk, st, f.message(), f.rng), ExhaustedError);
    CHECK(st.S == uint64_t{1} << f.p.cd());
}
