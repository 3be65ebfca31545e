#pragma once

#include <cstddef>
#include <cstdint>
#include <memory>
#include <span>
#include <vector>

namespace ats {

// Deterministic generator: ChaCha20 keystream keyed by SHA-256 of the seed.
class Rng {
public:
    explicit Rng(uint64_t seed);
    explicit Rng(std::span<const uint8_t> seed);
    ~Rng();
    Rng(Rng&&) noexcept;
    Rng& operator=(Rng&&) noexcept;

    // Seeded from the OS entropy pool.
    static Rng from_os();

    void fill(uint8_t* out, size_t len);
    uint8_t next_u8();
    uint16_t next_u16();
    uint32_t next_u32();
    uint64_t next_u64();

    // Uniform in [0, bound), bound >= 1, unbiased.
    uint64_t uniform(uint64_t bound);
    // Uniform in [lo, hi].
    int64_t uniform_range(int64_t lo, int64_t hi) {
        return lo + static_cast<int64_t>(uniform(static_cast<uint64_t>(hi - lo) + 1));
    }
    int trit() { return static_cast<int>(uniform(3)) - 1; }
    // out[i] = uniform(q) - (q-1)/2 for every entry; same stream as the scalar calls.
    void uniform_centered(std::span<int32_t> out, int64_t q);
    int bit() { return next_u8() & 1; }

    // Derive an independent child stream.
    Rng fork();

    struct Impl;

private:
    void refill();

    std::unique_ptr<Impl> impl_;
};

}  // namespace ats
