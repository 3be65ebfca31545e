#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "ats/errors.hpp"

namespace ats {

class ByteWriter {
public:
    void put_u8(uint8_t v) { buf_.push_back(v); }
    void put_u16(uint16_t v) { put_le(v, 2); }
    void put_u32(uint32_t v) { put_le(v, 4); }
    void put_u64(uint64_t v) { put_le(v, 8); }
    void put_i64(int64_t v) { put_le(static_cast<uint64_t>(v), 8); }
    void put_le(uint64_t v, size_t width) {
        for (size_t i = 0; i < width; ++i) buf_.push_back(static_cast<uint8_t>(v >> (8 * i)));
    }
    void put_bytes(std::span<const uint8_t> b) { buf_.insert(buf_.end(), b.begin(), b.end()); }
    void put_bytes(std::string_view s) { buf_.insert(buf_.end(), s.begin(), s.end()); }
    // u32 length prefix then the bytes.
    void put_blob(std::span<const uint8_t> b) {
        put_u32(static_cast<uint32_t>(b.size()));
        put_bytes(b);
    }

    const std::vector<uint8_t>& data() const { return buf_; }
    std::vector<uint8_t> take() { return std::move(buf_); }
    size_t size() const { return buf_.size(); }

private:
    std::vector<uint8_t> buf_;
};

class ByteReader {
public:
    explicit ByteReader(std::span<const uint8_t> data) : data_(data) {}

    uint8_t get_u8() { return static_cast<uint8_t>(get_le(1)); }
    uint16_t get_u16() { return static_cast<uint16_t>(get_le(2)); }
    uint32_t get_u32() { return static_cast<uint32_t>(get_le(4)); }
    uint64_t get_u64() { return get_le(8); }
    int64_t get_i64() { return static_cast<int64_t>(get_le(8)); }
    uint64_t get_le(size_t width) {
        need(width);
        uint64_t v = 0;
        for (size_t i = 0; i < width; ++i) v |= static_cast<uint64_t>(data_[pos_ + i]) << (8 * i);
        pos_ += width;
        return v;
    }
    std::span<const uint8_t> get_bytes(size_t len) {
        need(len);
        auto s = data_.subspan(pos_, len);
        pos_ += len;
        return s;
    }
    std::vector<uint8_t> get_blob() {
        uint32_t len = get_u32();
        auto s = get_bytes(len);
        return {s.begin(), s.end()};
    }
    void expect(std::string_view magic) {
        auto s = get_bytes(magic.size());
        if (!std::equal(s.begin(), s.end(), magic.begin())) throw FormatError("bad magic");
    }

    size_t remaining() const { return data_.size() - pos_; }
    size_t position() const { return pos_; }
    void expect_end() const {
        if (pos_ != data_.size()) throw FormatError("trailing bytes");
    }

private:
    void need(size_t len) const {
        if (len > data_.size() - pos_) throw FormatError("truncated input");
    }

    std::span<const uint8_t> data_;
    size_t pos_ = 0;
};

std::string to_hex(std::span<const uint8_t> b);
std::vector<uint8_t> from_hex(std::string_view s);

}  // namespace ats
