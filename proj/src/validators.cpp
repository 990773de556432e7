// SPDX-License-Identifier: Apache-2.0
#include "vaba/validators.hpp"

#include <stdexcept>

namespace vaba {

AppValidator make_app_validator(const std::string& name, const TrustedDealer* dealer) {
  if (name == "always") {
    return [](const Value&) { return true; };
  }
  if (name == "even") {
    return [](const Value& v) { return v.is_integer() && v.as_integer() % 2 == 0; };
  }
  if (name == "signed") {
    return [dealer](const Value& v) { return dealer->tagged_value_validate(v); };
  }
  throw std::invalid_argument("unknown validator: " + name);
}

bool is_known_validator(const std::string& name) {
  return name == "always" || name == "even" || name == "signed";
}

}  // namespace vaba
