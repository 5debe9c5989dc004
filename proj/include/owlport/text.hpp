#pragma once

#include <string>
#include <string_view>
#include <vector>

namespace owlport {

// Lowercase (ASCII) with leading/trailing whitespace removed and internal
// runs collapsed to one space. Used for every label lookup.
std::string normalize_label(std::string_view text);

// Unicode scalar values of a UTF-8 string. Malformed bytes decode to U+FFFD.
std::u32string decode_utf8(std::string_view text);
std::string encode_utf8(std::u32string_view text);

}  // namespace owlport
