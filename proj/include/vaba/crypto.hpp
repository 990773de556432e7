// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <memory>
#include <optional>
#include <span>
#include <vector>

#include "vaba/bytes.hpp"
#include "vaba/tuple.hpp"

namespace vaba {

// Dealer-based threshold signatures and threshold coin.
//
// Test-grade backend: a signature share is a keyed MAC over the payload
// digest under a per-party key derived from the dealer seed, and a threshold
// signature carries its contributing shares so validation can re-check them.
// The interface is what matters to the rest of the stack; a pairing-based
// backend could sit behind the same surface. A threshold signature counts as
// one word regardless of how many shares it carries internally.

struct SignatureShare {
  PartyId signer = 0;
  Digest message_digest{};
  Tag tag{};

  friend bool operator==(const SignatureShare&, const SignatureShare&) = default;
};

struct ThresholdSignature {
  static constexpr int kWordSize = 1;

  Digest message_digest{};
  std::vector<SignatureShare> evidence;  // canonical: sorted by signer, distinct

  friend bool operator==(const ThresholdSignature&, const ThresholdSignature&) = default;
};

struct CoinShare {
  PartyId signer = 0;
  Digest coin_name{};
  Tag tag{};

  friend bool operator==(const CoinShare&, const CoinShare&) = default;
};

// Bundles shares into a threshold signature. Does not check the threshold;
// an undersized bundle simply fails threshold_validate later.
// Throws std::invalid_argument if shares reference different digests or the
// set is empty.
ThresholdSignature threshold_sign(std::span<const SignatureShare> shares);

// Private per-party capability handed out by the dealer.
class PartySigner {
 public:
  PartySigner() = default;
  PartySigner(PartyId id, Tag sign_key, Tag coin_key);

  PartyId id() const { return id_; }

  SignatureShare share_sign(std::span<const std::uint8_t> message) const;
  SignatureShare share_sign(const TupleValue& payload) const;

  CoinShare coin_share(std::span<const std::uint8_t> name) const;
  CoinShare coin_share(const TupleValue& name) const;

 private:
  PartyId id_ = 0;
  Tag sign_key_{};
  Tag coin_key_{};
};

class TrustedDealer {
 public:
  // Deterministic function of (n, f, seed). Throws std::invalid_argument
  // unless n >= 3f+1 and n >= 1.
  TrustedDealer(std::uint32_t n, std::uint32_t f, std::uint64_t seed);

  std::uint32_t n() const { return n_; }
  std::uint32_t f() const { return f_; }
  std::uint64_t seed() const { return seed_; }
  std::uint32_t signature_threshold() const { return 2 * f_ + 1; }
  std::uint32_t coin_threshold() const { return f_ + 1; }

  const PartySigner& signer(PartyId id) const;  // key-material handout

  // Public verification surface, available to every component.
  bool share_validate(std::span<const std::uint8_t> message, PartyId signer,
                      const SignatureShare& share) const;
  bool share_validate(const TupleValue& payload, PartyId signer,
                      const SignatureShare& share) const;
  bool threshold_validate(std::span<const std::uint8_t> message,
                          const ThresholdSignature& sig) const;
  bool threshold_validate(const TupleValue& payload, const ThresholdSignature& sig) const;

  bool coin_share_validate(std::span<const std::uint8_t> name, PartyId signer,
                           const CoinShare& share) const;
  bool coin_share_validate(const TupleValue& name, PartyId signer,
                           const CoinShare& share) const;

  // Reconstructs the coin for `name` from at least f+1 distinct valid shares;
  // extra or invalid shares are ignored. Returns nullopt when fewer than f+1
  // distinct valid shares are supplied. The result depends only on the name
  // and the dealer seed.
  std::optional<PartyId> coin_toss(std::span<const std::uint8_t> name,
                                   std::span<const CoinShare> shares) const;
  std::optional<PartyId> coin_toss(const TupleValue& name,
                                   std::span<const CoinShare> shares) const;

  // Application-level tag for the "signed" agreement validator: mints a
  // value that carries a MAC the validator can check.
  TupleValue make_tagged_value(std::uint64_t payload) const;
  bool tagged_value_validate(const TupleValue& value) const;

  // Key-material fixture: {"n":..,"f":..,"seed":..,"parties":[{"id","sign_key","coin_key"}]}
  std::string to_json() const;
  static TrustedDealer from_json(const std::string& text);  // throws on mismatch

 private:
  std::uint32_t n_ = 0;
  std::uint32_t f_ = 0;
  std::uint64_t seed_ = 0;
  Tag coin_master_seed_{};
  Tag app_tag_key_{};
  std::vector<PartySigner> signers_;
  std::vector<Tag> sign_keys_;
  std::vector<Tag> coin_keys_;
};

// Restricted crypto view handed to adversary code: verification and coin
// reconstruction only. No signer handles, no coin master seed, no tag
// minting, so a scheduling strategy cannot predict a coin before f+1 shares
// exist or forge shares for uncorrupted parties.
class PublicCrypto {
 public:
  explicit PublicCrypto(const TrustedDealer* dealer) : dealer_(dealer) {}

  std::uint32_t n() const { return dealer_->n(); }
  std::uint32_t f() const { return dealer_->f(); }

  bool share_validate(const TupleValue& payload, PartyId signer,
                      const SignatureShare& share) const {
    return dealer_->share_validate(payload, signer, share);
  }
  bool threshold_validate(const TupleValue& payload, const ThresholdSignature& sig) const {
    return dealer_->threshold_validate(payload, sig);
  }
  bool coin_share_validate(const TupleValue& name, PartyId signer, const CoinShare& share) const {
    return dealer_->coin_share_validate(name, signer, share);
  }
  std::optional<PartyId> coin_toss(const TupleValue& name,
                                   std::span<const CoinShare> shares) const {
    return dealer_->coin_toss(name, shares);
  }

 private:
  const TrustedDealer* dealer_;
};

}  // namespace vaba
