// SPDX-License-Identifier: Apache-2.0
#include "vaba/tuple.hpp"

#include <openssl/evp.h>
#include <openssl/hmac.h>

#include <cstring>
#include <stdexcept>

namespace vaba {

Bytes to_bytes(std::string_view s) {
  return Bytes(s.begin(), s.end());
}

std::string hex_encode(std::span<const std::uint8_t> data) {
  static constexpr char digits[] = "0123456789abcdef";
  std::string out;
  out.reserve(data.size() * 2);
  for (std::uint8_t b : data) {
    out.push_back(digits[b >> 4]);
    out.push_back(digits[b & 0xf]);
  }
  return out;
}

Bytes hex_decode(std::string_view hex) {
  auto nibble = [](char c) -> int {
    if (c >= '0' && c <= '9') return c - '0';
    if (c >= 'a' && c <= 'f') return c - 'a' + 10;
    if (c >= 'A' && c <= 'F') return c - 'A' + 10;
    return -1;
  };
  if (hex.size() % 2 != 0) throw std::invalid_argument("hex string has odd length");
  Bytes out(hex.size() / 2);
  for (std::size_t i = 0; i < out.size(); ++i) {
    int hi = nibble(hex[2 * i]);
    int lo = nibble(hex[2 * i + 1]);
    if (hi < 0 || lo < 0) throw std::invalid_argument("invalid hex digit");
    out[i] = static_cast<std::uint8_t>((hi << 4) | lo);
  }
  return out;
}

Digest sha256(std::span<const std::uint8_t> data) {
  Digest out{};
  unsigned int len = 0;
  EVP_Digest(data.data(), data.size(), out.data(), &len, EVP_sha256(), nullptr);
  return out;
}

Tag hmac_sha256(std::span<const std::uint8_t> key, std::span<const std::uint8_t> data) {
  Tag out{};
  unsigned int len = 0;
  HMAC(EVP_sha256(), key.data(), static_cast<int>(key.size()), data.data(), data.size(),
       out.data(), &len);
  return out;
}

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

namespace {

void put_u32_be(Bytes& out, std::uint32_t v) {
  out.push_back(static_cast<std::uint8_t>(v >> 24));
  out.push_back(static_cast<std::uint8_t>(v >> 16));
  out.push_back(static_cast<std::uint8_t>(v >> 8));
  out.push_back(static_cast<std::uint8_t>(v));
}

void put_u64_be(Bytes& out, std::uint64_t v) {
  put_u32_be(out, static_cast<std::uint32_t>(v >> 32));
  put_u32_be(out, static_cast<std::uint32_t>(v));
}

void encode_into(const TupleValue& tv, Bytes& out);

}  // namespace

TupleValue TupleValue::integer(std::uint64_t v) {
  TupleValue t;
  t.node_ = v;
  return t;
}

TupleValue TupleValue::bytes(Bytes b) {
  TupleValue t;
  t.node_ = std::move(b);
  return t;
}

TupleValue TupleValue::bytes(std::string_view s) {
  return bytes(to_bytes(s));
}

TupleValue TupleValue::tuple(std::vector<TupleValue> elems) {
  TupleValue t;
  t.node_ = std::move(elems);
  return t;
}

bool TupleValue::is_integer() const { return std::holds_alternative<std::uint64_t>(node_); }
bool TupleValue::is_bytes() const { return std::holds_alternative<Bytes>(node_); }
bool TupleValue::is_tuple() const { return std::holds_alternative<std::vector<TupleValue>>(node_); }

std::uint64_t TupleValue::as_integer() const { return std::get<std::uint64_t>(node_); }
const Bytes& TupleValue::as_bytes() const { return std::get<Bytes>(node_); }
const std::vector<TupleValue>& TupleValue::as_tuple() const {
  return std::get<std::vector<TupleValue>>(node_);
}

namespace {

void encode_into(const TupleValue& tv, Bytes& out) {
  if (tv.is_integer()) {
    out.push_back('i');
    put_u64_be(out, tv.as_integer());
  } else if (tv.is_bytes()) {
    const Bytes& b = tv.as_bytes();
    out.push_back('s');
    put_u32_be(out, static_cast<std::uint32_t>(b.size()));
    out.insert(out.end(), b.begin(), b.end());
  } else {
    const auto& elems = tv.as_tuple();
    out.push_back('t');
    put_u32_be(out, static_cast<std::uint32_t>(elems.size()));
    for (const auto& e : elems) encode_into(e, out);
  }
}

}  // namespace

Bytes TupleValue::encode() const {
  Bytes out;
  encode_into(*this, out);
  return out;
}

std::string TupleValue::to_string() const {
  if (is_integer()) return std::to_string(as_integer());
  if (is_bytes()) {
    const Bytes& b = as_bytes();
    bool printable = !b.empty();
    for (std::uint8_t c : b)
      if (c < 0x20 || c > 0x7e) printable = false;
    if (printable) return "\"" + std::string(b.begin(), b.end()) + "\"";
    return "0x" + hex_encode(b);
  }
  std::string out = "(";
  const auto& elems = as_tuple();
  for (std::size_t i = 0; i < elems.size(); ++i) {
    if (i) out += ", ";
    out += elems[i].to_string();
  }
  out += ")";
  return out;
}

std::strong_ordering TupleValue::operator<=>(const TupleValue& other) const {
  // Order by encoding; injectivity of the encoding makes this a total order
  // consistent with equality.
  Bytes a = encode();
  Bytes b = other.encode();
  int c = std::memcmp(a.data(), b.data(), std::min(a.size(), b.size()));
  if (c < 0) return std::strong_ordering::less;
  if (c > 0) return std::strong_ordering::greater;
  return a.size() <=> b.size();
}

TupleValue tup(std::initializer_list<TupleValue> elems) {
  return TupleValue::tuple(std::vector<TupleValue>(elems));
}

}  // namespace vaba
