#pragma once

#include <string_view>

#include "ivmd/interval.hpp"

namespace ivmd {

enum class ImplicationKind { kKleeneDienes, kLukasiewicz, kReichenbach };

inline constexpr double kDefaultIntervalWidth = 0.3;

/// Fuzzy implication I(x, y). Throws kDomain outside [0,1]^2.
double implication(ImplicationKind kind, double x, double y);

/// Maps a classifier probability x to [I(x, y), min(1, I(x, y) + y)].
UnitInterval build_interval(ImplicationKind kind, double x, double y_width = kDefaultIntervalWidth);

std::string_view to_string(ImplicationKind kind);
/// Accepts "kleene_dienes"/"kd", "lukasiewicz"/"luk", "reichenbach"/"rb". Throws kConfig.
ImplicationKind parse_implication(std::string_view name);

}  // namespace ivmd
