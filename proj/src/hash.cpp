#include "ats/hash.hpp"

#include <openssl/evp.h>

#include <cstring>

#include "ats/errors.hpp"

namespace ats {

struct Sha256::Impl {
    EVP_MD_CTX* ctx = nullptr;
};

Sha256::Sha256() : impl_(std::make_unique<Impl>()) {
    impl_->ctx = EVP_MD_CTX_new();
    if (!impl_->ctx || EVP_DigestInit_ex(impl_->ctx, EVP_sha256(), nullptr) != 1)
        throw InternalError("sha256 init failed");
}

Sha256::~Sha256() {
    if (impl_ && impl_->ctx) EVP_MD_CTX_free(impl_->ctx);
}

void Sha256::update(const void* data, size_t len) {
    if (len == 0) return;
    if (EVP_DigestUpdate(impl_->ctx, data, len) != 1) throw InternalError("sha256 update failed");
}

Digest Sha256::final() {
    Digest out{};
    unsigned int len = 0;
    if (EVP_DigestFinal_ex(impl_->ctx, out.data(), &len) != 1 || len != out.size())
        throw InternalError("sha256 final failed");
    return out;
}

Digest sha256(std::span<const uint8_t> data) {
    Sha256 h;
    h.update(data);
    return h.final();
}

std::vector<uint8_t> shake256(std::span<const uint8_t> input, size_t out_len) {
    std::vector<uint8_t> out(out_len);
    EVP_MD_CTX* ctx = EVP_MD_CTX_new();
    bool ok = ctx && EVP_DigestInit_ex(ctx, EVP_shake256(), nullptr) == 1 &&
              EVP_DigestUpdate(ctx, input.data(), input.size()) == 1 &&
              EVP_DigestFinalXOF(ctx, out.data(), out_len) == 1;
    EVP_MD_CTX_free(ctx);
    if (!ok) throw InternalError("shake256 failed");
    return out;
}

Xof::Xof(std::span<const uint8_t> seed) : seed_(seed.begin(), seed.end()) {}

void Xof::refill() {
    std::vector<uint8_t> input(seed_);
    for (int i = 0; i < 8; ++i) input.push_back(static_cast<uint8_t>(block_ >> (8 * i)));
    buf_ = shake256(input, 4096);
    pos_ = 0;
    ++block_;
}

void Xof::read(uint8_t* out, size_t len) {
    while (len > 0) {
        if (pos_ >= buf_.size()) refill();
        size_t take = std::min(len, buf_.size() - pos_);
        std::memcpy(out, buf_.data() + pos_, take);
        pos_ += take;
        out += take;
        len -= take;
    }
}

uint8_t Xof::next_byte() {
    if (pos_ >= buf_.size()) refill();
    return buf_[pos_++];
}

}  // namespace ats
