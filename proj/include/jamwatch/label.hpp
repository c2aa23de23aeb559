#pragma once

#include <array>
#include <string>
#include <string_view>

#include "jamwatch/error.hpp"

namespace jamwatch {

/// The three channel situations a watchdog observes. The first two are
/// legitimate traffic; only Jammed is anomalous.
enum class Label { EmptyChannel, ActiveChannel, Jammed };

inline constexpr std::array<Label, 3> kAllLabels{Label::EmptyChannel, Label::ActiveChannel,
                                                 Label::Jammed};

inline std::string_view to_string(Label l) {
  switch (l) {
    case Label::EmptyChannel: return "empty";
    case Label::ActiveChannel: return "active";
    case Label::Jammed: return "jammed";
  }
  return "?";
}

inline Label parse_label(std::string_view s) {
  for (Label l : kAllLabels)
    if (to_string(l) == s) return l;
  throw FormatError("unknown label '" + std::string(s) + "'");
}

inline bool is_jammed(Label l) { return l == Label::Jammed; }

}  // namespace jamwatch
