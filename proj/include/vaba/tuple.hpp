// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <compare>
#include <cstdint>
#include <initializer_list>
#include <string>
#include <variant>
#include <vector>

#include "vaba/bytes.hpp"

namespace vaba {

// Canonical value used for every identifier and signed payload in the
// protocol stack: an integer, a byte string, or a nested tuple of these.
// The encoding is length-prefixed and type-tagged, so distinct values
// never share an encoding and signatures stay bit-stable across modules.
class TupleValue {
 public:
  TupleValue() : node_(std::uint64_t{0}) {}

  static TupleValue integer(std::uint64_t v);
  static TupleValue bytes(Bytes b);
  static TupleValue bytes(std::string_view s);
  static TupleValue tuple(std::vector<TupleValue> elems);

  bool is_integer() const;
  bool is_bytes() const;
  bool is_tuple() const;

  std::uint64_t as_integer() const;          // throws std::bad_variant_access
  const Bytes& as_bytes() const;             // throws std::bad_variant_access
  const std::vector<TupleValue>& as_tuple() const;

  Bytes encode() const;
  Digest digest() const { return sha256(encode()); }

  // Human-readable form for traces and debugging, e.g. ("vaba", 2, 1).
  std::string to_string() const;

  friend bool operator==(const TupleValue&, const TupleValue&) = default;
  std::strong_ordering operator<=>(const TupleValue& other) const;

 private:
  std::variant<std::uint64_t, Bytes, std::vector<TupleValue>> node_;
};

// Shorthand builders; most call sites nest these.
TupleValue tup(std::initializer_list<TupleValue> elems);
inline TupleValue tint(std::uint64_t v) { return TupleValue::integer(v); }
inline TupleValue tbytes(std::string_view s) { return TupleValue::bytes(s); }

}  // namespace vaba
