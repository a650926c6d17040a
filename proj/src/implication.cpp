#include "ivmd/implication.hpp"

#include <algorithm>
#include <string>

#include "ivmd/error.hpp"

namespace ivmd {

namespace {

void require_unit(double v, const char* what) {
  if (!(v >= 0.0 && v <= 1.0)) {
    throw Error(ErrorCode::kDomain, std::string(what) + " = " + std::to_string(v) + " outside [0,1]");
  }
}

}  // namespace

double implication(ImplicationKind kind, double x, double y) {
  require_unit(x, "x");
  require_unit(y, "y");
  switch (kind) {
    case ImplicationKind::kKleeneDienes:
      return std::max(1.0 - x, y);
    case ImplicationKind::kLukasiewicz:
      return std::min(1.0, 1.0 - x + y);
    case ImplicationKind::kReichenbach:
      // 1 - x + xy, factored so the boundary values are exact.
      return 1.0 - x * (1.0 - y);
  }
  throw Error(ErrorCode::kDomain, "unknown implication kind");
}

UnitInterval build_interval(ImplicationKind kind, double x, double y_width) {
  const double lower = implication(kind, x, y_width);
  return {lower, std::min(1.0, lower + y_width)};
}

std::string_view to_string(ImplicationKind kind) {
  switch (kind) {
    case ImplicationKind::kKleeneDienes: return "kleene_dienes";
    case ImplicationKind::kLukasiewicz: return "lukasiewicz";
    case ImplicationKind::kReichenbach: return "reichenbach";
  }
  return "unknown";
}

ImplicationKind parse_implication(std::string_view name) {
  if (name == "kleene_dienes" || name == "kd" || name == "kleene-dienes") return ImplicationKind::kKleeneDienes;
  if (name == "lukasiewicz" || name == "luk") return ImplicationKind::kLukasiewicz;
  if (name == "reichenbach" || name == "rb") return ImplicationKind::kReichenbach;
  throw Error(ErrorCode::kConfig, "unknown implication '" + std::string(name) + "'");
}

}  // namespace ivmd
