#include "mcqg/text.hpp"

namespace mcqg::text {

char32_t decode_utf8(std::string_view s, std::size_t& pos) noexcept {
    const auto lead = static_cast<unsigned char>(s[pos]);
    std::size_t len = 1;
    char32_t cp = lead;
    if (lead >= 0xF0 && lead < 0xF8) {
        len = 4;
        cp = lead & 0x07;
    } else if (lead >= 0xE0) {
        len = lead < 0xF0 ? 3 : 1;
        cp = lead & 0x0F;
    } else if (lead >= 0xC0) {
        len = 2;
        cp = lead & 0x1F;
    }
    if (len == 1 || pos + len > s.size()) {
        ++pos;
        return lead;
    }
    for (std::size_t i = 1; i < len; ++i) {
        const auto cont = static_cast<unsigned char>(s[pos + i]);
        if ((cont & 0xC0) != 0x80) {
            ++pos;
            return lead;
        }
        cp = (cp << 6) | (cont & 0x3F);
    }
    pos += len;
    return cp;
}

bool is_unicode_space(char32_t cp) noexcept {
    switch (cp) {
        case U' ': case U'\t': case U'\n': case U'\v': case U'\f': case U'\r':
        case 0x85: case 0xA0: case 0x1680: case 0x2028: case 0x2029:
        case 0x202F: case 0x205F: case 0x3000:
            return true;
        default:
            return cp >= 0x2000 && cp <= 0x200A;
    }
}

bool is_punctuation(char32_t cp) noexcept {
    if (cp < 0x80) {
        return (cp >= 0x21 && cp <= 0x2F) || (cp >= 0x3A && cp <= 0x40) ||
               (cp >= 0x5B && cp <= 0x60) || (cp >= 0x7B && cp <= 0x7E);
    }
    switch (cp) {
        case 0xA1: case 0xA7: case 0xAB: case 0xB6: case 0xB7: case 0xBB: case 0xBF:
        case 0x3001: case 0x3002: case 0xFF01: case 0xFF0C: case 0xFF1F:
            return true;
        default:
            // General Punctuation, minus the spaces and invisible operators.
            return (cp >= 0x2010 && cp <= 0x2027) || (cp >= 0x2030 && cp <= 0x205E);
    }
}

namespace {

struct Span {
    std::size_t begin;
    std::size_t end;
};

// Byte offsets of code points satisfying `pred` at the front and back.
template <typename Pred>
Span strip(std::string_view s, Pred pred) noexcept {
    std::size_t begin = 0;
    while (begin < s.size()) {
        std::size_t next = begin;
        if (!pred(decode_utf8(s, next))) break;
        begin = next;
    }
    std::size_t end = begin;
    std::size_t pos = begin;
    while (pos < s.size()) {
        if (!pred(decode_utf8(s, pos))) end = pos;
    }
    return {begin, end};
}

}  // namespace

std::string_view trim(std::string_view s) noexcept {
    const auto span = strip(s, is_unicode_space);
    return s.substr(span.begin, span.end - span.begin);
}

std::string to_lower_ascii(std::string_view s) {
    std::string out(s);
    for (char& c : out) {
        if (c >= 'A' && c <= 'Z') c = static_cast<char>(c - 'A' + 'a');
    }
    return out;
}

std::vector<std::string> tokenize(std::string_view s) {
    std::vector<std::string> tokens;
    std::size_t pos = 0;
    std::size_t token_start = std::string_view::npos;
    auto flush = [&](std::size_t token_end) {
        if (token_start == std::string_view::npos) return;
        const auto raw = s.substr(token_start, token_end - token_start);
        const auto span = strip(raw, is_punctuation);
        if (span.end > span.begin) {
            tokens.push_back(to_lower_ascii(raw.substr(span.begin, span.end - span.begin)));
        }
        token_start = std::string_view::npos;
    };
    while (pos < s.size()) {
        const std::size_t at = pos;
        if (is_unicode_space(decode_utf8(s, pos))) {
            flush(at);
        } else if (token_start == std::string_view::npos) {
            token_start = at;
        }
    }
    flush(s.size());
    return tokens;
}

}  // namespace mcqg::text
