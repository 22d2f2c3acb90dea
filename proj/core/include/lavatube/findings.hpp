#pragma once

#include <string>
#include <string_view>
#include <vector>

namespace lavatube {

enum class FindingClass { Infeasible, DiscrepancyVsPaper, LimitViolation };

std::string_view to_string(FindingClass c);

struct Finding {
  FindingClass kind = FindingClass::Infeasible;
  std::string module;
  std::string message;

  bool operator==(const Finding&) const = default;
};

inline bool any_of_class(const std::vector<Finding>& fs, FindingClass c) {
  for (const auto& f : fs)
    if (f.kind == c) return true;
  return false;
}

} // namespace lavatube
