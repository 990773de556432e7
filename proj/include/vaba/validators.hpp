// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <functional>
#include <string>

#include "vaba/crypto.hpp"
#include "vaba/envelope.hpp"

namespace vaba {

// Pluggable agreement-level validity predicate.
using AppValidator = std::function<bool(const Value&)>;

// Built-ins:
//   "always" - accepts anything
//   "even"   - value must be an even integer
//   "signed" - value must carry a dealer-minted tag
AppValidator make_app_validator(const std::string& name, const TrustedDealer* dealer);

bool is_known_validator(const std::string& name);

}  // namespace vaba
