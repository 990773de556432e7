// SPDX-License-Identifier: Apache-2.0
#include "vaba/crypto.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>

#include <nlohmann/json.hpp>

namespace vaba {

namespace {

Bytes u64_le(std::uint64_t v) {
  Bytes out(8);
  for (int i = 0; i < 8; ++i) out[i] = static_cast<std::uint8_t>(v >> (8 * i));
  return out;
}

Tag derive(const Tag& parent, std::string_view label, std::uint64_t index = 0) {
  Bytes data = to_bytes(label);
  Bytes idx = u64_le(index);
  data.insert(data.end(), idx.begin(), idx.end());
  return hmac_sha256(parent, data);
}

}  // namespace

ThresholdSignature threshold_sign(std::span<const SignatureShare> shares) {
  if (shares.empty()) throw std::invalid_argument("threshold_sign: empty share set");
  ThresholdSignature sig;
  sig.message_digest = shares.front().message_digest;
  for (const auto& s : shares) {
    if (s.message_digest != sig.message_digest)
      throw std::invalid_argument("threshold_sign: shares reference different messages");
  }
  sig.evidence.assign(shares.begin(), shares.end());
  std::sort(sig.evidence.begin(), sig.evidence.end(),
            [](const auto& a, const auto& b) { return a.signer < b.signer; });
  sig.evidence.erase(std::unique(sig.evidence.begin(), sig.evidence.end(),
                                 [](const auto& a, const auto& b) { return a.signer == b.signer; }),
                     sig.evidence.end());
  return sig;
}

PartySigner::PartySigner(PartyId id, Tag sign_key, Tag coin_key)
    : id_(id), sign_key_(sign_key), coin_key_(coin_key) {}

SignatureShare PartySigner::share_sign(std::span<const std::uint8_t> message) const {
  SignatureShare s;
  s.signer = id_;
  s.message_digest = sha256(message);
  s.tag = hmac_sha256(sign_key_, s.message_digest);
  return s;
}

SignatureShare PartySigner::share_sign(const TupleValue& payload) const {
  Bytes enc = payload.encode();
  return share_sign(enc);
}

CoinShare PartySigner::coin_share(std::span<const std::uint8_t> name) const {
  CoinShare c;
  c.signer = id_;
  c.coin_name = sha256(name);
  c.tag = hmac_sha256(coin_key_, c.coin_name);
  return c;
}

CoinShare PartySigner::coin_share(const TupleValue& name) const {
  Bytes enc = name.encode();
  return coin_share(enc);
}

TrustedDealer::TrustedDealer(std::uint32_t n, std::uint32_t f, std::uint64_t seed)
    : n_(n), f_(f), seed_(seed) {
  if (n < 1) throw std::invalid_argument("dealer: need at least one party");
  if (n < 3 * f + 1) throw std::invalid_argument("dealer: n must be at least 3f+1");
  Tag master = hmac_sha256(u64_le(seed), to_bytes("vaba-dealer-master"));
  coin_master_seed_ = derive(master, "coin-master");
  app_tag_key_ = derive(master, "app-tag");
  sign_keys_.reserve(n);
  coin_keys_.reserve(n);
  signers_.reserve(n);
  for (PartyId i = 0; i < n; ++i) {
    sign_keys_.push_back(derive(master, "sign", i));
    coin_keys_.push_back(derive(master, "coin", i));
    signers_.emplace_back(i, sign_keys_.back(), coin_keys_.back());
  }
}

const PartySigner& TrustedDealer::signer(PartyId id) const {
  if (id >= n_) throw std::out_of_range("dealer: no such party");
  return signers_[id];
}

bool TrustedDealer::share_validate(std::span<const std::uint8_t> message, PartyId signer,
                                   const SignatureShare& share) const {
  if (signer >= n_ || share.signer != signer) return false;
  if (share.message_digest != sha256(message)) return false;
  return hmac_sha256(sign_keys_[signer], share.message_digest) == share.tag;
}

bool TrustedDealer::share_validate(const TupleValue& payload, PartyId signer,
                                   const SignatureShare& share) const {
  Bytes enc = payload.encode();
  return share_validate(enc, signer, share);
}

bool TrustedDealer::threshold_validate(std::span<const std::uint8_t> message,
                                       const ThresholdSignature& sig) const {
  Digest digest = sha256(message);
  if (sig.message_digest != digest) return false;
  std::set<PartyId> distinct;
  for (const auto& s : sig.evidence) {
    if (s.signer >= n_ || s.message_digest != digest) continue;
    if (hmac_sha256(sign_keys_[s.signer], s.message_digest) != s.tag) continue;
    distinct.insert(s.signer);
  }
  return distinct.size() >= signature_threshold();
}

bool TrustedDealer::threshold_validate(const TupleValue& payload,
                                       const ThresholdSignature& sig) const {
  Bytes enc = payload.encode();
  return threshold_validate(enc, sig);
}

bool TrustedDealer::coin_share_validate(std::span<const std::uint8_t> name, PartyId signer,
                                        const CoinShare& share) const {
  if (signer >= n_ || share.signer != signer) return false;
  if (share.coin_name != sha256(name)) return false;
  return hmac_sha256(coin_keys_[signer], share.coin_name) == share.tag;
}

bool TrustedDealer::coin_share_validate(const TupleValue& name, PartyId signer,
                                        const CoinShare& share) const {
  Bytes enc = name.encode();
  return coin_share_validate(enc, signer, share);
}

std::optional<PartyId> TrustedDealer::coin_toss(std::span<const std::uint8_t> name,
                                                std::span<const CoinShare> shares) const {
  std::set<PartyId> distinct;
  for (const auto& s : shares) {
    if (coin_share_validate(name, s.signer, s)) distinct.insert(s.signer);
  }
  if (distinct.size() < coin_threshold()) return std::nullopt;
  Tag prf = hmac_sha256(coin_master_seed_, sha256(name));
  std::uint64_t x = 0;
  for (int i = 0; i < 8; ++i) x = (x << 8) | prf[i];
  return static_cast<PartyId>(x % n_);
}

std::optional<PartyId> TrustedDealer::coin_toss(const TupleValue& name,
                                                std::span<const CoinShare> shares) const {
  Bytes enc = name.encode();
  return coin_toss(enc, shares);
}

TupleValue TrustedDealer::make_tagged_value(std::uint64_t payload) const {
  Bytes enc = tint(payload).encode();
  Tag tag = hmac_sha256(app_tag_key_, enc);
  return tup({tint(payload), TupleValue::bytes(Bytes(tag.begin(), tag.end()))});
}

bool TrustedDealer::tagged_value_validate(const TupleValue& value) const {
  if (!value.is_tuple()) return false;
  const auto& elems = value.as_tuple();
  if (elems.size() != 2 || !elems[0].is_integer() || !elems[1].is_bytes()) return false;
  Bytes enc = elems[0].encode();
  Tag expect = hmac_sha256(app_tag_key_, enc);
  const Bytes& got = elems[1].as_bytes();
  return got.size() == expect.size() && std::equal(got.begin(), got.end(), expect.begin());
}

std::string TrustedDealer::to_json() const {
  nlohmann::json doc;
  doc["n"] = n_;
  doc["f"] = f_;
  doc["seed"] = seed_;
  doc["parties"] = nlohmann::json::array();
  for (PartyId i = 0; i < n_; ++i) {
    doc["parties"].push_back({{"id", i},
                              {"sign_key", hex_encode(sign_keys_[i])},
                              {"coin_key", hex_encode(coin_keys_[i])}});
  }
  return doc.dump(2);
}

TrustedDealer TrustedDealer::from_json(const std::string& text) {
  nlohmann::json doc = nlohmann::json::parse(text);
  TrustedDealer dealer(doc.at("n").get<std::uint32_t>(), doc.at("f").get<std::uint32_t>(),
                       doc.at("seed").get<std::uint64_t>());
  for (const auto& p : doc.at("parties")) {
    PartyId id = p.at("id").get<PartyId>();
    if (id >= dealer.n_) throw std::invalid_argument("dealer fixture: party id out of range");
    if (hex_decode(p.at("sign_key").get<std::string>()) !=
            Bytes(dealer.sign_keys_[id].begin(), dealer.sign_keys_[id].end()) ||
        hex_decode(p.at("coin_key").get<std::string>()) !=
            Bytes(dealer.coin_keys_[id].begin(), dealer.coin_keys_[id].end()))
      throw std::invalid_argument("dealer fixture: key material does not match seed");
  }
  return dealer;
}

}  // namespace vaba
