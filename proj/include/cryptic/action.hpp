#pragma once

#include <array>
#include <optional>
#include <string>
#include <string_view>

namespace cryptic {

// The closed set of wordplay actions a proof may name.  The serialised
// spellings are part of the proof grammar and must not change.
enum class Action {
    Anagram,
    RemoveFirst,
    Initials,
    RemoveLast,
    GoesInside,
    GoesOutside,
    Reverse,
    Substring,
    Homophone,
};

inline constexpr std::array<Action, 9> kAllActions = {
    Action::Anagram,     Action::RemoveFirst, Action::Initials,
    Action::RemoveLast,  Action::GoesInside,  Action::GoesOutside,
    Action::Reverse,     Action::Substring,   Action::Homophone,
};

inline std::string_view action_name(Action a) {
    switch (a) {
        case Action::Anagram: return "ANAGRAM";
        case Action::RemoveFirst: return "REMOVE_FIRST";
        case Action::Initials: return "INITIALS";
        case Action::RemoveLast: return "REMOVE_LAST";
        case Action::GoesInside: return "GOES_INSIDE";
        case Action::GoesOutside: return "GOES_OUTSIDE";
        case Action::Reverse: return "REVERSE";
        case Action::Substring: return "SUBSTRING";
        case Action::Homophone: return "HOMOPHONE";
    }
    return "";
}

inline std::optional<Action> parse_action(std::string_view name) {
    for (Action a : kAllActions)
        if (action_name(a) == name) return a;
    return std::nullopt;
}

}  // namespace cryptic
