#include "ats/rng.hpp"

#include <openssl/evp.h>
#include <openssl/rand.h>

#include <array>
#include <cstring>

#include "ats/errors.hpp"
#include "ats/hash.hpp"

namespace ats {

namespace {
constexpr size_t kBlock = 4096;
}

struct Rng::Impl {
    EVP_CIPHER_CTX* ctx = nullptr;
    std::array<uint8_t, kBlock> buf{};
    size_t pos = kBlock;

    ~Impl() {
        if (ctx) EVP_CIPHER_CTX_free(ctx);
    }
};

static std::unique_ptr<Rng::Impl> make_impl(const Digest& key) {
    auto impl = std::make_unique<Rng::Impl>();
    impl->ctx = EVP_CIPHER_CTX_new();
    std::array<uint8_t, 16> iv{};
    if (!impl->ctx ||
        EVP_EncryptInit_ex(impl->ctx, EVP_chacha20(), nullptr, key.data(), iv.data()) != 1)
        throw InternalError("chacha20 init failed");
    return impl;
}

Rng::Rng(uint64_t seed) {
    Sha256 h;
    h.update(std::string_view("ats-rng"));
    uint8_t le[8];
    for (int i = 0; i < 8; ++i) le[i] = static_cast<uint8_t>(seed >> (8 * i));
    h.update(le, 8);
    impl_ = make_impl(h.final());
}

Rng::Rng(std::span<const uint8_t> seed) {
    Sha256 h;
    h.update(std::string_view("ats-rng-bytes"));
    h.update(seed);
    impl_ = make_impl(h.final());
}

Rng::~Rng() = default;
Rng::Rng(Rng&&) noexcept = default;
Rng& Rng::operator=(Rng&&) noexcept = default;

Rng Rng::from_os() {
    std::array<uint8_t, 32> seed{};
    if (RAND_bytes(seed.data(), static_cast<int>(seed.size())) != 1)
        throw InternalError("RAND_bytes failed");
    return Rng(std::span<const uint8_t>(seed));
}

Rng Rng::fork() {
    std::array<uint8_t, 32> seed{};
    fill(seed.data(), seed.size());
    return Rng(std::span<const uint8_t>(seed));
}

void Rng::refill() {
    static const std::array<uint8_t, kBlock> zeros{};
    int outl = 0;
    if (EVP_EncryptUpdate(impl_->ctx, impl_->buf.data(), &outl, zeros.data(), kBlock) != 1 ||
        outl != static_cast<int>(kBlock))
        throw InternalError("chacha20 keystream failed");
    impl_->pos = 0;
}

void Rng::fill(uint8_t* out, size_t len) {
    while (len > 0) {
        if (impl_->pos == kBlock) refill();
        size_t take = std::min(len, kBlock - impl_->pos);
        std::memcpy(out, impl_->buf.data() + impl_->pos, take);
        impl_->pos += take;
        out += take;
        len -= take;
    }
}

uint8_t Rng::next_u8() {
    if (impl_->pos == kBlock) refill();
    return impl_->buf[impl_->pos++];
}

uint16_t Rng::next_u16() {
    uint8_t b[2];
    fill(b, 2);
    return static_cast<uint16_t>(b[0] | (b[1] << 8));
}

uint32_t Rng::next_u32() {
    uint8_t b[4];
    fill(b, 4);
    return static_cast<uint32_t>(b[0]) | (static_cast<uint32_t>(b[1]) << 8) |
           (static_cast<uint32_t>(b[2]) << 16) | (static_cast<uint32_t>(b[3]) << 24);
}

uint64_t Rng::next_u64() {
    uint64_t lo = next_u32();
    return lo | (static_cast<uint64_t>(next_u32()) << 32);
}

uint64_t Rng::uniform(uint64_t bound) {
    if (bound <= 1) return 0;
    if (bound <= 256) {
        uint32_t lim = 256 - (256 % bound);
        for (;;) {
            uint32_t x = next_u8();
            if (x < lim) return x % bound;
        }
    }
    if (bound <= 65536) {
        uint32_t lim = 65536 - (65536 % bound);
        for (;;) {
            uint32_t x = next_u16();
            if (x < lim) return x % bound;
        }
    }
    if (bound <= (uint64_t{1} << 32)) {
        uint64_t lim = (uint64_t{1} << 32) - ((uint64_t{1} << 32) % bound);
        for (;;) {
            uint64_t x = next_u32();
            if (x < lim) return x % bound;
        }
    }
    uint64_t lim = UINT64_MAX - (UINT64_MAX % bound);
    for (;;) {
        uint64_t x = next_u64();
        if (x < lim) return x % bound;
    }
}

void Rng::uniform_centered(std::span<int32_t> out, int64_t q) {
    const int64_t half = (q - 1) / 2;
    if (q <= 256 || q > 65536) {
        for (auto& x : out) x = static_cast<int32_t>(static_cast<int64_t>(uniform(static_cast<uint64_t>(q))) - half);
        return;
    }
    const uint32_t qq = static_cast<uint32_t>(q);
    const uint32_t lim = 65536 - (65536 % qq);
    // x % qq by reciprocal multiplication, exact for 32-bit x.
    const uint64_t recip = UINT64_MAX / qq + 1;
    auto mod = [&](uint32_t x) {
        return static_cast<uint32_t>((static_cast<unsigned __int128>(recip * x) * qq) >> 64);
    };
    size_t i = 0;
    while (i < out.size()) {
        if (kBlock - impl_->pos < 2) {
            if (impl_->pos == kBlock) refill();
            else {
                uint32_t x = next_u16();
                if (x < lim) out[i++] = static_cast<int32_t>(mod(x)) - static_cast<int32_t>(half);
                continue;
            }
        }
        const uint8_t* b = impl_->buf.data();
        size_t pos = impl_->pos;
        // Branch-free rejection: always store, advance only on acceptance.
        while (pos + 2 <= kBlock && i < out.size()) {
            uint32_t x = static_cast<uint32_t>(b[pos] | (b[pos + 1] << 8));
            pos += 2;
            out[i] = static_cast<int32_t>(mod(x)) - static_cast<int32_t>(half);
            i += x < lim;
        }
        impl_->pos = pos;
    }
}

}  // namespace ats
