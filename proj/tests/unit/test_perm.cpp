#include <map>

#include "doctest.h"

#include "ats/errors.hpp"
#include "ats/perm.hpp"

using namespace ats;

namespace {

TernaryVec random_trits(Rng& rng, size_t len) {
    TernaryVec t(len);
    for (auto& x : t) x = static_cast<int8_t>(rng.trit());
    return t;
}

TernaryVec random_bits(Rng& rng, size_t len) {
    TernaryVec t(len);
    for (auto& x : t) x = static_cast<int8_t>(rng.bit());
    return t;
}

TernaryVec shifted(std::span<const int8_t> z, std::span<const int8_t> e) {
    TernaryVec out(z.size());
    for (size_t i = 0; i < z.size(); ++i) out[i] = mod3c(z[i] + e[i]);
    return out;
}

TernaryVec xored(std::span<const int8_t> t, std::span<const int8_t> b) {
    TernaryVec out(t.size());
    for (size_t i = 0; i < t.size(); ++i) out[i] = static_cast<int8_t>(t[i] ^ b[i]);
    return out;
}

// z (trit), t (bit), g (trit, two entries) extended by Enc, Mix and Mult.
PermutationSpec tiny_spec() {
    PermutationSpec s;
    size_t z = s.add_component(1, false);
    size_t t = s.add_component(1, true);
    size_t g = s.add_component(2, false);
    s.add_enc(g);
    s.add_mix(t, z);
    s.add_mult(z, g, 2);
    return s;
}

// Every Values tuple of a PermutationSpec with small components.
std::vector<PermutationSpec::Values> all_values(const PermutationSpec& s) {
    std::vector<PermutationSpec::Values> out{{}};
    for (const auto& c : s.components()) {
        std::vector<PermutationSpec::Values> next;
        size_t radix = c.binary ? 2 : 3, combos = 1;
        for (size_t i = 0; i < c.len; ++i) combos *= radix;
        for (const auto& prefix : out)
            for (size_t code = 0; code < combos; ++code) {
                TernaryVec v(c.len);
                size_t x = code;
                for (size_t i = 0; i < c.len; ++i, x /= radix)
                    v[i] = static_cast<int8_t>(c.binary ? int(x % radix) : int(x % radix) - 1);
                auto p = prefix;
                p.push_back(v);
                next.push_back(std::move(p));
            }
        out = std::move(next);
    }
    return out;
}

}  // namespace

TEST_CASE("enc3 values") {
    CHECK(enc3(0) == TernaryVec{1, 0, -1});
    CHECK(enc3(-1) == TernaryVec{0, -1, 1});
    CHECK(enc3(1) == TernaryVec{-1, 1, 0});
    CHECK_THROWS_AS(enc3(2), DomainError);
}

TEST_CASE("pi_e law over all 9 cases") {
    int cases = 0;
    for (int z = -1; z <= 1; ++z) {
        CHECK(pi_e(0, enc3(z)) == enc3(z));
        for (int e = -1; e <= 1; ++e, ++cases) CHECK(pi_e(e, enc3(z)) == enc3(mod3c(z + e)));
    }
    CHECK(cases == 9);
}

TEST_CASE("psi_be law over all 36 cases") {
    int cases = 0;
    for (int t = 0; t <= 1; ++t)
        for (int z = -1; z <= 1; ++z) {
            CHECK(psi_be(0, 0, ext(t, z)) == ext(t, z));
            for (int b = 0; b <= 1; ++b)
                for (int e = -1; e <= 1; ++e, ++cases)
                    CHECK(psi_be(b, e, ext(t, z)) == ext(t ^ b, mod3c(z + e)));
        }
    CHECK(cases == 36);
    // t = 0 zeroes the t-slots.
    for (int z = -1; z <= 1; ++z) {
        auto v = ext(0, z);
        for (size_t p = 1; p < 6; p += 2) CHECK(v[p] == 0);
    }
}

TEST_CASE("phi_be law over all 81 cases") {
    int cases = 0;
    for (int a = -1; a <= 1; ++a)
        for (int g = -1; g <= 1; ++g) {
            CHECK(phi_be(0, 0, mult3(a, g)) == mult3(a, g));
            for (int b = -1; b <= 1; ++b)
                for (int e = -1; e <= 1; ++e, ++cases)
                    CHECK(phi_be(b, e, mult3(a, g)) == mult3(mod3c(a + b), mod3c(g + e)));
        }
    CHECK(cases == 81);
    // The centre slot carries a*g.
    for (int g = -1; g <= 1; ++g) CHECK(mult3(0, g)[4] == 0);
    for (int a = -1; a <= 1; ++a)
        for (int g = -1; g <= 1; ++g) CHECK(mult3(a, g)[4] == a * g);
}

TEST_CASE("Pi_e and Psi_be on random vectors") {
    Rng rng(51);
    for (int t = 0; t < 1000; ++t) {
        auto z = random_trits(rng, 4), e = random_trits(rng, 4);
        auto tb = random_bits(rng, 3), b = random_bits(rng, 3);
        CHECK(Pi_e(e, enc_vec(z)) == enc_vec(shifted(z, e)));
        CHECK(Psi_be(b, e, mix(tb, z)) == mix(xored(tb, b), shifted(z, e)));
    }
    auto z = random_trits(rng, 4);
    TernaryVec zero4(4, 0), zero3(3, 0);
    CHECK(Pi_e(zero4, enc_vec(z)) == enc_vec(z));
    auto m = mix(zero3, z);
    CHECK(m.size() == 3 * 4 + 6 * 4 * 3);
    for (size_t i = 12; i < m.size(); i += 2) CHECK(m[i + 1] == 0);
}

TEST_CASE("expd ordering and mult/Phi law") {
    // n=2, ell=1, delta=1: a has 2 entries, g has 2 groups of 1.
    TernaryVec a{1, -1}, g{-1, 1};
    CHECK(expd(a, g, 1) == TernaryVec{-1, 1, 1, -1});
    TernaryVec zero(4, 0);
    for (int8_t x : expd(TernaryVec{1, -1, 1, 1}, zero, 2)) CHECK(x == 0);

    Rng rng(52);
    for (int t = 0; t < 1000; ++t) {
        // n=4, ell=2, delta=2.
        auto as = random_trits(rng, 8), gs = random_trits(rng, 8);
        auto b = random_trits(rng, 8), e = random_trits(rng, 8);
        auto ex = expd(as, gs, 2);
        auto mv = mult_vec(as, gs, 2);
        REQUIRE(mv.size() == 9 * ex.size());
        for (size_t i = 0; i < ex.size(); ++i) CHECK(mv[9 * i + 4] == ex[i]);
        CHECK(Phi_be(b, e, mv, 2) == mult_vec(shifted(as, b), shifted(gs, e), 2));
    }
    // Entry (j, i, k) is a_i * g_{j*delta + k}.
    auto as = random_trits(rng, 3), gs = random_trits(rng, 4);
    auto ex = expd(as, gs, 2);
    for (size_t j = 0; j < 2; ++j)
        for (size_t i = 0; i < 3; ++i)
            for (size_t k = 0; k < 2; ++k) CHECK(ex[j * 6 + i * 2 + k] == as[i] * gs[j * 2 + k]);
}

TEST_CASE("shape errors") {
    TernaryVec v3(3, 0), v5(5, 0);
    CHECK_THROWS_AS(pi_e(0, v5), ShapeError);
    CHECK_THROWS_AS(expd(v3, v5, 2), ShapeError);
    CHECK_THROWS_AS(Pi_e(v3, v5), ShapeError);
}

TEST_CASE("PermutationSpec gamma agrees with act and maps VALID to VALID") {
    auto s = tiny_spec();
    CHECK(s.length() == 3 * 2 + (3 + 6) + 9 * 2);
    Rng rng(53);
    for (int t = 0; t < 200; ++t) {
        auto x = s.random_values(rng);
        auto eta = s.sample_seed(rng);
        auto w = s.encode(x);
        CHECK(s.valid(std::span<const int8_t>(w)));
        auto out = apply_perm(s.gamma(eta), std::span<const int8_t>(w));
        CHECK(out == s.encode(s.act(x, eta)));
        CHECK(s.valid(std::span<const int8_t>(out)));
        // Inverse seed undoes the permutation.
        auto back = apply_perm(s.gamma(s.inverse_seed(eta)), std::span<const int8_t>(out));
        CHECK(back == w);
        auto dec = s.decode(std::vector<int32_t>(w.begin(), w.end()));
        REQUIRE(dec.has_value());
        CHECK(*dec == x);
    }
}

TEST_CASE("gamma is uniform over VALID at minimal dims") {
    auto s = tiny_spec();
    auto values = all_values(s);
    CHECK(values.size() == 3 * 2 * 9);
    auto w = s.encode(values[7]);
    std::map<TernaryVec, int> hits;
    for (const auto& eta : values) ++hits[apply_perm(s.gamma(eta), std::span<const int8_t>(w))];
    CHECK(hits.size() == values.size());
    for (const auto& [v, c] : hits) {
        CHECK(c == 1);
        CHECK(s.valid(std::span<const int8_t>(v)));
    }
}

TEST_CASE("VALID rejects malformed vectors") {
    auto s = tiny_spec();
    Rng rng(54);
    auto w = s.random_valid(rng);
    std::vector<int32_t> wi(w.begin(), w.end());
    CHECK(s.valid(std::span<const int32_t>(wi)));
    auto bad = wi;
    bad[0] = 2;
    CHECK_FALSE(s.valid(std::span<const int32_t>(bad)));
    // Swapping two entries of an enc block breaks its structure unless they are equal.
    bad = wi;
    for (size_t i = 0; i < 3; ++i)
        if (bad[i] != bad[(i + 1) % 3]) {
            std::swap(bad[i], bad[(i + 1) % 3]);
            break;
        }
    CHECK_FALSE(s.valid(std::span<const int32_t>(bad)));
    bad = wi;
    bad.pop_back();
    CHECK_FALSE(s.valid(std::span<const int32_t>(bad)));
}

TEST_CASE("seed packing round trip") {
    auto s = tiny_spec();
    Rng rng(55);
    for (int t = 0; t < 50; ++t) {
        auto eta = s.sample_seed(rng);
        auto bytes = s.pack_seed(eta);
        CHECK(bytes.size() == s.packed_seed_size());
        CHECK(s.unpack_seed(bytes) == eta);
    }
}
