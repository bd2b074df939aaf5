#pragma once

#include <cmath>
#include <optional>
#include <span>
#include <stdexcept>
#include <vector>

#include "graphlet/common.hpp"
#include "graphlet/estimator.hpp"

namespace graphlet {

enum class GfdVariant { connected, disconnected, combined };

inline std::pair<int, int> gfd_range(GfdVariant v) {
  switch (v) {
    case GfdVariant::connected: return {7, 12};
    case GfdVariant::disconnected: return {13, 17};
    default: return {7, 17};
  }
}

inline std::string to_string(GfdVariant v) {
  switch (v) {
    case GfdVariant::connected: return "connected";
    case GfdVariant::disconnected: return "disconnected";
    default: return "combined";
  }
}

/// Graphlet frequency distribution over the 4-node patterns of the variant,
/// in taxonomy order.
inline std::vector<double> gfd(const RealVector& x, GfdVariant variant) {
  auto [lo, hi] = gfd_range(variant);
  long double total = 0;
  for (int id = lo; id <= hi; ++id) total += x[slot(id)];
  if (!(total > 0)) throw std::invalid_argument("graphlet frequency distribution undefined: all selected counts are zero");
  std::vector<double> out;
  out.reserve(static_cast<std::size_t>(hi - lo + 1));
  for (int id = lo; id <= hi; ++id) out.push_back(static_cast<double>(x[slot(id)] / total));
  return out;
}

inline std::vector<double> gfd(const GraphletEstimate& est, GfdVariant variant) { return gfd(est.x, variant); }

/// max_k |F_a(k) - F_b(k)| over cumulative sums in the given order.
inline double ks_statistic(std::span<const double> a, std::span<const double> b) {
  if (a.size() != b.size()) throw std::invalid_argument("ks_statistic: length mismatch");
  long double ca = 0, cb = 0, best = 0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    ca += a[i];
    cb += b[i];
    best = std::max(best, std::fabs(ca - cb));
  }
  return static_cast<double>(std::min(1.0L, best));
}

/// |X_i - Y_i| / Y_i where Y_i > 0; entries with Y_i == 0 are nullopt and
/// `exact_zero` reports whether X_i == 0 there.
struct RelativeError {
  std::array<std::optional<double>, kPatternCount> error;
  std::array<bool, kPatternCount> exact_zero{};

  double max() const {
    double best = 0;
    for (const auto& e : error)
      if (e) best = std::max(best, *e);
    return best;
  }
};

inline RelativeError relative_error(const RealVector& x, const RealVector& y) {
  RelativeError out;
  for (std::size_t i = 0; i < kPatternCount; ++i) {
    if (y[i] > 0)
      out.error[i] = std::fabs(x[i] - y[i]) / y[i];
    else
      out.exact_zero[i] = x[i] == 0.0;
  }
  return out;
}

}  // namespace graphlet
