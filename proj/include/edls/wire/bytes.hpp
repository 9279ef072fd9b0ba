// Copyright (c) 2026 The EDLS Authors
// SPDX-License-Identifier: Apache-2.0

#ifndef EDLS_WIRE_BYTES_HPP
#define EDLS_WIRE_BYTES_HPP

#include <bit>
#include <cstdint>
#include <cstring>
#include <span>
#include <string>
#include <vector>

#include "edls/error.hpp"

namespace edls::wire {

using Bytes = std::vector<std::uint8_t>;

// Little-endian primitive writer. All integers on the wire are fixed-width
// little-endian regardless of host order.
class ByteWriter {
 public:
  void u8(std::uint8_t v) { out_.push_back(v); }
  void u16(std::uint16_t v) { raw(&v, sizeof v); }
  void u32(std::uint32_t v) { raw(&v, sizeof v); }
  void u64(std::uint64_t v) { raw(&v, sizeof v); }
  void i32(std::int32_t v) { u32(std::bit_cast<std::uint32_t>(v)); }
  void i64(std::int64_t v) { u64(std::bit_cast<std::uint64_t>(v)); }
  void f64(double v) { u64(std::bit_cast<std::uint64_t>(v)); }
  void bytes(std::span<const std::uint8_t> v) {
    out_.insert(out_.end(), v.begin(), v.end());
  }
  void str(const std::string& s) {
    u32(static_cast<std::uint32_t>(s.size()));
    out_.insert(out_.end(), s.begin(), s.end());
  }

  Bytes take() { return std::move(out_); }
  std::size_t size() const { return out_.size(); }

 private:
  void raw(const void* p, std::size_t len) {
    static_assert(std::endian::native == std::endian::little,
                  "big-endian hosts need byte swaps here");
    const auto* b = static_cast<const std::uint8_t*>(p);
    out_.insert(out_.end(), b, b + len);
  }
  Bytes out_;
};

// Bounds-checked little-endian reader; any overrun is a malformed frame.
class ByteReader {
 public:
  explicit ByteReader(std::span<const std::uint8_t> data) : data_(data) {}

  std::uint8_t u8() { return take(1)[0]; }
  std::uint16_t u16() { return scalar<std::uint16_t>(); }
  std::uint32_t u32() { return scalar<std::uint32_t>(); }
  std::uint64_t u64() { return scalar<std::uint64_t>(); }
  std::int32_t i32() { return std::bit_cast<std::int32_t>(u32()); }
  std::int64_t i64() { return std::bit_cast<std::int64_t>(u64()); }
  double f64() { return std::bit_cast<double>(u64()); }
  std::span<const std::uint8_t> bytes(std::size_t len) { return take(len); }
  std::string str() {
    const std::uint32_t len = u32();
    const auto s = take(len);
    return std::string(s.begin(), s.end());
  }

  std::size_t remaining() const { return data_.size() - pos_; }
  bool done() const { return remaining() == 0; }
  void expect_done() const {
    if (!done()) raise(Errc::bad_frame, "trailing bytes in section");
  }

 private:
  template <typename T>
  T scalar() {
    const auto s = take(sizeof(T));
    T v;
    std::memcpy(&v, s.data(), sizeof(T));
    return v;
  }
  std::span<const std::uint8_t> take(std::size_t len) {
    if (len > remaining())
      raise(Errc::bad_frame, "truncated data: field overruns the buffer");
    const auto s = data_.subspan(pos_, len);
    pos_ += len;
    return s;
  }

  std::span<const std::uint8_t> data_;
  std::size_t pos_ = 0;
};

}  // namespace edls::wire

#endif  // EDLS_WIRE_BYTES_HPP
