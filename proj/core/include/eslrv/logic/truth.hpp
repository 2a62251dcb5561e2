#pragma once

#include <optional>
#include <string_view>

namespace eslrv::logic {

/// Three-valued truth under the open-world assumption. Unknown is a value of
/// its own and is never treated as False.
enum class Truth { False, True, Unknown };

std::string_view to_string(Truth t);

/// Accepts TRUE/FALSE/UNKNOWN in any letter case.
std::optional<Truth> parse_truth(std::string_view text);

constexpr Truth negate(Truth t) {
  switch (t) {
    case Truth::True: return Truth::False;
    case Truth::False: return Truth::True;
    default: return Truth::Unknown;
  }
}

}  // namespace eslrv::logic
