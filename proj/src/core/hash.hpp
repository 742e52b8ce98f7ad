#pragma once

#include <string>
#include <string_view>

namespace homct {

/// Raw 32-byte SHA-256 digest.
std::string sha256_raw(std::string_view data);
/// Lowercase hex SHA-256 digest.
std::string sha256_hex(std::string_view data);

}  // namespace homct
