#include "revsum/text_util.hpp"

#include <cctype>

namespace revsum {

std::string to_lower_ascii(std::string_view s) {
    std::string out(s);
    for (char& c : out) {
        c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
    }
    return out;
}

namespace {

// Length of a valid UTF-8 sequence starting at s[i], or 0 if invalid.
int utf8_sequence_length(const std::string& s, std::size_t i) {
    const auto byte = [&](std::size_t j) {
        return static_cast<unsigned char>(s[j]);
    };
    const unsigned char b0 = byte(i);
    if (b0 < 0x80) return 1;
    if (b0 < 0xC2) return 0;  // continuation byte or overlong lead
    int len = 0;
    if (b0 < 0xE0) len = 2;
    else if (b0 < 0xF0) len = 3;
    else if (b0 < 0xF5) len = 4;
    else return 0;
    if (i + len > s.size()) return 0;
    for (int j = 1; j < len; ++j) {
        if ((byte(i + j) & 0xC0) != 0x80) return 0;
    }
    // Reject overlong 3/4-byte forms and surrogates.
    if (b0 == 0xE0 && byte(i + 1) < 0xA0) return 0;
    if (b0 == 0xED && byte(i + 1) >= 0xA0) return 0;
    if (b0 == 0xF0 && byte(i + 1) < 0x90) return 0;
    if (b0 == 0xF4 && byte(i + 1) >= 0x90) return 0;
    return len;
}

}  // namespace

int utf8_sanitize(std::string& s) {
    static const char kReplacement[] = "\xEF\xBF\xBD";
    std::string out;
    out.reserve(s.size());
    int replaced = 0;
    std::size_t i = 0;
    while (i < s.size()) {
        const int len = utf8_sequence_length(s, i);
        if (len == 0) {
            out.append(kReplacement, 3);
            ++replaced;
            ++i;
        } else {
            out.append(s, i, static_cast<std::size_t>(len));
            i += static_cast<std::size_t>(len);
        }
    }
    if (replaced > 0) s = std::move(out);
    return replaced;
}

std::uint64_t fnv1a64(std::string_view s) {
    std::uint64_t h = 1469598103934665603ULL;
    for (unsigned char c : s) {
        h ^= c;
        h *= 1099511628211ULL;
    }
    return h;
}

std::uint64_t mix_seed(std::uint64_t a, std::uint64_t b) {
    std::uint64_t z = a + 0x9E3779B97F4A7C15ULL * (b + 1);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

std::string hex64(std::uint64_t v) {
    static const char* digits = "0123456789abcdef";
    std::string out(16, '0');
    for (int i = 15; i >= 0; --i) {
        out[static_cast<std::size_t>(i)] = digits[v & 0xF];
        v >>= 4;
    }
    return out;
}

}  // namespace revsum
