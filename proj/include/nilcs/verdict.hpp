#pragma once

#include <algorithm>
#include <string>
#include <string_view>
#include <vector>

namespace nilcs {

enum class Status { pass, fail, hypothesis_not_met };

inline std::string_view to_string(Status s) {
  switch (s) {
    case Status::pass: return "pass";
    case Status::fail: return "fail";
    case Status::hypothesis_not_met: return "hypothesis-not-met";
  }
  return "unknown";
}

struct Verdict {
  std::string name;
  Status status = Status::pass;
  std::string detail;
};

inline Verdict check(std::string name, bool ok, std::string detail_on_failure = {}) {
  return {std::move(name), ok ? Status::pass : Status::fail, ok ? std::string() : std::move(detail_on_failure)};
}

inline Verdict not_applicable(std::string name, std::string why) {
  return {std::move(name), Status::hypothesis_not_met, std::move(why)};
}

inline bool no_failures(const std::vector<Verdict>& vs) {
  return std::none_of(vs.begin(), vs.end(), [](const Verdict& v) { return v.status == Status::fail; });
}

inline const Verdict* find_verdict(const std::vector<Verdict>& vs, std::string_view name) {
  auto it = std::find_if(vs.begin(), vs.end(), [&](const Verdict& v) { return v.name == name; });
  return it == vs.end() ? nullptr : &*it;
}

}  // namespace nilcs
