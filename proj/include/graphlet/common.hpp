#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

namespace graphlet {

using VertexId = std::uint32_t;
using EdgeId = std::size_t;

using u128 = unsigned __int128;
using i128 = __int128;

// Patterns are numbered 1..17; arrays are indexed by id - 1.
inline constexpr std::size_t kPatternCount = 17;

using CountVector = std::array<u128, kPatternCount>;
using RealVector = std::array<double, kPatternCount>;

constexpr std::size_t slot(int pattern_id) { return static_cast<std::size_t>(pattern_id - 1); }

// ---------------------------------------------------------------------------
// Errors

class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& what, std::size_t line)
      : std::runtime_error(line ? "line " + std::to_string(line) + ": " + what : what), line_(line) {}
  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

class OverflowError : public std::overflow_error {
 public:
  using std::overflow_error::overflow_error;
};

class CapacityError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// ---------------------------------------------------------------------------
// Checked 128-bit arithmetic

inline u128 checked_add(u128 a, u128 b) {
  u128 r;
  if (__builtin_add_overflow(a, b, &r)) throw OverflowError("128-bit count overflow in addition");
  return r;
}

inline u128 checked_mul(u128 a, u128 b) {
  u128 r;
  if (__builtin_mul_overflow(a, b, &r)) throw OverflowError("128-bit count overflow in multiplication");
  return r;
}

inline i128 checked_add(i128 a, i128 b) {
  i128 r;
  if (__builtin_add_overflow(a, b, &r)) throw OverflowError("128-bit count overflow in addition");
  return r;
}

inline i128 checked_sub(i128 a, i128 b) {
  i128 r;
  if (__builtin_sub_overflow(a, b, &r)) throw OverflowError("128-bit count overflow in subtraction");
  return r;
}

inline i128 checked_mul(i128 a, i128 b) {
  i128 r;
  if (__builtin_mul_overflow(a, b, &r)) throw OverflowError("128-bit count overflow in multiplication");
  return r;
}

inline i128 to_signed(u128 v) {
  if (v > static_cast<u128>(std::numeric_limits<i128>::max()))
    throw OverflowError("count exceeds signed 128-bit range");
  return static_cast<i128>(v);
}

constexpr u128 choose2(u128 k) { return k < 2 ? 0 : (k % 2 == 0 ? (k / 2) * (k - 1) : k * ((k - 1) / 2)); }

inline u128 binomial(u128 n, unsigned k) {
  if (k > n) return 0;
  u128 r = 1;
  for (unsigned i = 1; i <= k; ++i) {
    // r * (n - k + i) is divisible by i after the multiply
    r = checked_mul(r, n - k + i) / i;
  }
  return r;
}

inline std::string to_string(u128 v) {
  if (v == 0) return "0";
  std::string s;
  while (v > 0) {
    s.insert(s.begin(), static_cast<char>('0' + static_cast<int>(v % 10)));
    v /= 10;
  }
  return s;
}

inline std::string to_string(i128 v) {
  if (v < 0) return "-" + to_string(static_cast<u128>(-v));
  return to_string(static_cast<u128>(v));
}

// ---------------------------------------------------------------------------
// Graphlet taxonomy

struct PatternInfo {
  int id;
  std::string_view name;
  int vertices;
  int edges;
  bool connected;
};

inline constexpr std::array<PatternInfo, kPatternCount> kPatterns{{
    {1, "edge", 2, 1, true},
    {2, "2-node-independent", 2, 0, false},
    {3, "triangle", 3, 3, true},
    {4, "2-star", 3, 2, true},
    {5, "3-node-1-edge", 3, 1, false},
    {6, "3-node-independent", 3, 0, false},
    {7, "4-clique", 4, 6, true},
    {8, "chordal-cycle", 4, 5, true},
    {9, "tailed-triangle", 4, 4, true},
    {10, "4-cycle", 4, 4, true},
    {11, "3-star", 4, 3, true},
    {12, "4-path", 4, 3, true},
    {13, "4-node-1-triangle", 4, 3, false},
    {14, "4-node-2-star", 4, 2, false},
    {15, "4-node-2-edge", 4, 2, false},
    {16, "4-node-1-edge", 4, 1, false},
    {17, "4-node-independent", 4, 0, false},
}};

inline std::string_view pattern_name(int id) { return kPatterns.at(slot(id)).name; }

inline std::optional<int> pattern_by_name(std::string_view name) {
  for (const auto& p : kPatterns)
    if (p.name == name) return p.id;
  // Also accept "G7" or "7".
  if (!name.empty() && (name.front() == 'G' || name.front() == 'g')) name.remove_prefix(1);
  int id = 0;
  if (name.empty() || name.size() > 2) return std::nullopt;
  for (char ch : name) {
    if (ch < '0' || ch > '9') return std::nullopt;
    id = id * 10 + (ch - '0');
  }
  if (id < 1 || id > static_cast<int>(kPatternCount)) return std::nullopt;
  return id;
}

}  // namespace graphlet
