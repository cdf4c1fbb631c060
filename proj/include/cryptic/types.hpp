#pragma once

#include <optional>
#include <string>
#include <string_view>

#include "cryptic/strings.hpp"

namespace cryptic {

enum class Orientation { Across, Down };

inline std::string to_string(Orientation o) {
    return o == Orientation::Across ? "A" : "D";
}

inline std::optional<Orientation> parse_orientation(std::string_view s) {
    std::string v = to_lower(trim(s));
    if (v == "a" || v == "across") return Orientation::Across;
    if (v == "d" || v == "down") return Orientation::Down;
    return std::nullopt;
}

}  // namespace cryptic
