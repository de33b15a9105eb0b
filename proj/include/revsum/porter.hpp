#pragma once

#include <string>
#include <string_view>

namespace revsum {

// Porter suffix stripping, steps 1a through 5b, matching the author's
// reference implementation (words of length <= 2 pass through untouched).
// Input is expected to be lowercase; bytes outside [a-z] are treated as
// consonants and never rewritten.
std::string porter_stem(std::string_view token);

}  // namespace revsum
