#include <algorithm>
#include <bit>
#include <map>
#include <mutex>
#include <string>

#include "mpat/error.hpp"
#include "mpat/pattern.hpp"

namespace mpat {

namespace {

// "3^i-2^j-1^k" style: edge counts by size, descending.
std::string size_power_name(const MPattern& x) {
  PatternCounts c = pattern_counts(x);
  std::string s;
  for (int k = x.m; k >= 1; --k) {
    if (!s.empty()) s += '-';
    s += std::to_string(k) + "^" + std::to_string(c.x[k]);
  }
  return s;
}

// Appendix-style 4-pattern digit string: constant '1' prefix, then
// (x3, y3, x2, y2, x1, y1). The prefix is the x4+y4 digit, which is always 1
// on four slots (the full set is either an edge or missing, never dominated).
std::string digit_signature(const MPattern& x) {
  PatternCounts c = pattern_counts(x);
  std::string s = std::to_string(c.x[4] + c.y[4]);
  for (int k = 3; k >= 1; --k) {
    s += std::to_string(c.x[k]);
    s += std::to_string(c.y[k]);
  }
  return s;
}

// Signature -> canonical ids sharing it, for m=4 suffix disambiguation.
const std::map<std::string, std::vector<PatternId>>& m4_signature_groups() {
  static std::map<std::string, std::vector<PatternId>> groups;
  static std::once_flag flag;
  std::call_once(flag, [] {
    for (const auto& p : enumerate_patterns(4))
      groups[digit_signature(p)].push_back(pattern_id(p));
    for (auto& [sig, ids] : groups) std::sort(ids.begin(), ids.end());
  });
  return groups;
}

}  // namespace

std::string pattern_name(const MPattern& x) {
  if (x.m <= 3) return size_power_name(x);
  if (x.m == 4) {
    std::string sig = digit_signature(x);
    const auto& groups = m4_signature_groups();
    auto it = groups.find(sig);
    if (it != groups.end() && it->second.size() > 1) {
      PatternId id = pattern_id(x);
      for (std::size_t i = 0; i < it->second.size(); ++i)
        if (it->second[i] == id) {
          sig += '-';
          sig += static_cast<char>('a' + i);
          break;
        }
    }
    return sig;
  }
  return pattern_id(x);
}

MPattern parse_name(const std::string& s, int m) {
  if (m < 1 || m > 3)
    fail(ErrorCategory::Naming, "names are unique only for m <= 3");
  // Expected form: "<m>^i-<m-1>^j-...-1^k".
  std::vector<int> want_x(m + 1, 0);
  std::size_t pos = 0;
  for (int k = m; k >= 1; --k) {
    std::string head = std::to_string(k) + "^";
    if (s.compare(pos, head.size(), head) != 0)
      fail(ErrorCategory::Naming, "malformed pattern name: " + s);
    pos += head.size();
    std::size_t end = pos;
    while (end < s.size() && s[end] != '-') ++end;
    if (end == pos) fail(ErrorCategory::Naming, "malformed pattern name: " + s);
    try {
      want_x[k] = std::stoi(s.substr(pos, end - pos));
    } catch (...) {
      fail(ErrorCategory::Naming, "malformed pattern name: " + s);
    }
    pos = end;
    if (k > 1) {
      if (pos >= s.size() || s[pos] != '-')
        fail(ErrorCategory::Naming, "malformed pattern name: " + s);
      ++pos;
    }
  }
  if (pos != s.size())
    fail(ErrorCategory::Naming, "malformed pattern name: " + s);

  for (const auto& p : enumerate_patterns(m)) {
    PatternCounts c = pattern_counts(p);
    bool match = true;
    for (int k = 1; k <= m; ++k)
      if (c.x[k] != want_x[k]) {
        match = false;
        break;
      }
    if (match) return p;
  }
  fail(ErrorCategory::Naming, "no " + std::to_string(m) +
                                  "-pattern matches name: " + s);
}

}  // namespace mpat
