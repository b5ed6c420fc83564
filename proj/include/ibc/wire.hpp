// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "ibc/errors.hpp"

namespace ibc::wire {

inline void put_u8(std::vector<std::uint8_t>& out, std::uint8_t v) { out.push_back(v); }

inline void put_u16(std::vector<std::uint8_t>& out, std::uint16_t v) {
  out.push_back(static_cast<std::uint8_t>(v >> 8));
  out.push_back(static_cast<std::uint8_t>(v));
}

inline void put_u32(std::vector<std::uint8_t>& out, std::uint32_t v) {
  out.push_back(static_cast<std::uint8_t>(v >> 24));
  out.push_back(static_cast<std::uint8_t>(v >> 16));
  out.push_back(static_cast<std::uint8_t>(v >> 8));
  out.push_back(static_cast<std::uint8_t>(v));
}

inline void put_u64(std::vector<std::uint8_t>& out, std::uint64_t v) {
  put_u32(out, static_cast<std::uint32_t>(v >> 32));
  put_u32(out, static_cast<std::uint32_t>(v));
}

inline void put_bytes(std::vector<std::uint8_t>& out, std::span<const std::uint8_t> b) {
  out.insert(out.end(), b.begin(), b.end());
}

/// 4-byte big-endian length, then the bytes.
inline void put_lp(std::vector<std::uint8_t>& out, std::span<const std::uint8_t> b) {
  put_u32(out, static_cast<std::uint32_t>(b.size()));
  put_bytes(out, b);
}

inline void put_lp_str(std::vector<std::uint8_t>& out, const std::string& s) {
  put_lp(out, std::span<const std::uint8_t>(
                  reinterpret_cast<const std::uint8_t*>(s.data()), s.size()));
}

/// Bounds-checked sequential reader over a byte span.
class Reader {
 public:
  explicit Reader(std::span<const std::uint8_t> data) : data_(data) {}

  std::size_t remaining() const { return data_.size() - pos_; }
  bool done() const { return pos_ == data_.size(); }
  std::size_t position() const { return pos_; }

  std::uint8_t u8() {
    need(1);
    return data_[pos_++];
  }
  std::uint16_t u16() {
    need(2);
    std::uint16_t v = (static_cast<std::uint16_t>(data_[pos_]) << 8) | data_[pos_ + 1];
    pos_ += 2;
    return v;
  }
  std::uint32_t u32() {
    need(4);
    std::uint32_t v = 0;
    for (int i = 0; i < 4; ++i) v = (v << 8) | data_[pos_ + i];
    pos_ += 4;
    return v;
  }
  std::uint64_t u64() {
    std::uint64_t hi = u32();
    return (hi << 32) | u32();
  }
  std::span<const std::uint8_t> bytes(std::size_t n) {
    need(n);
    auto s = data_.subspan(pos_, n);
    pos_ += n;
    return s;
  }
  /// 4-byte big-endian length-prefixed bytes; caps absurd lengths up front.
  std::span<const std::uint8_t> lp() {
    std::uint32_t n = u32();
    if (n > remaining()) throw MalformedEncoding("length prefix exceeds buffer");
    return bytes(n);
  }
  std::string lp_str() {
    auto b = lp();
    return std::string(reinterpret_cast<const char*>(b.data()), b.size());
  }
  void expect_magic(const char (&magic)[5]) {
    auto b = bytes(4);
    for (int i = 0; i < 4; ++i) {
      if (b[i] != static_cast<std::uint8_t>(magic[i])) {
        throw MalformedEncoding("bad magic");
      }
    }
  }
  void expect_end() {
    if (!done()) throw MalformedEncoding("trailing bytes");
  }

 private:
  void need(std::size_t n) const {
    if (remaining() < n) throw MalformedEncoding("short buffer");
  }
  std::span<const std::uint8_t> data_;
  std::size_t pos_ = 0;
};

}  // namespace ibc::wire
