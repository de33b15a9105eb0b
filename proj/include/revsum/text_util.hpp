#pragma once

#include <cstdint>
#include <string>
#include <string_view>

namespace revsum {

std::string to_lower_ascii(std::string_view s);

// Replaces every invalid UTF-8 sequence with U+FFFD. Returns the number of
// replacements made.
int utf8_sanitize(std::string& s);

std::uint64_t fnv1a64(std::string_view s);

// splitmix64 finalizer; used to derive per-sentence RNG seeds from a model
// seed without correlation between nearby inputs.
std::uint64_t mix_seed(std::uint64_t a, std::uint64_t b);

std::string hex64(std::uint64_t v);

}  // namespace revsum
