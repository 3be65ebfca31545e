#pragma once

#include <cstddef>
#include <cstdint>
#include <memory>
#include <span>
#include <string_view>
#include <vector>

#include "ats/params.hpp"

namespace ats {

class Sha256 {
public:
    Sha256();
    ~Sha256();
    Sha256(const Sha256&) = delete;
    Sha256& operator=(const Sha256&) = delete;

    void update(const void* data, size_t len);
    void update(std::span<const uint8_t> data) { update(data.data(), data.size()); }
    void update(std::string_view s) { update(s.data(), s.size()); }
    Digest final();

private:
    struct Impl;
    std::unique_ptr<Impl> impl_;
};

Digest sha256(std::span<const uint8_t> data);

std::vector<uint8_t> shake256(std::span<const uint8_t> input, size_t out_len);

// Unbounded output stream: block i = SHAKE256(seed || le64(i)).
class Xof {
public:
    explicit Xof(std::span<const uint8_t> seed);
    void read(uint8_t* out, size_t len);
    uint8_t next_byte();

private:
    void refill();

    std::vector<uint8_t> seed_;
    std::vector<uint8_t> buf_;
    size_t pos_ = 0;
    uint64_t block_ = 0;
};

}  // namespace ats
