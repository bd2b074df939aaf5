#pragma once

#include <string>
#include <vector>

#include "graphlet/graphlet.hpp"

namespace graphlet::suite {

struct NamedGraph {
  std::string name;
  Graph graph;
};

inline std::vector<NamedGraph> desk_graphs() {
  return {{"K4", gen::complete(4)},       {"K5", gen::complete(5)}, {"P4", gen::path(4)},
          {"C4", gen::cycle(4)},          {"S3", gen::star(3)},     {"triangle+isolated", gen::triangle_plus_isolated()}};
}

/// 50 seeded G(n, p) graphs with n in [5, 30] and p in {0.1, 0.2, 0.4}.
inline std::vector<NamedGraph> random_suite() {
  static constexpr double ps[] = {0.1, 0.2, 0.4};
  std::vector<NamedGraph> out;
  for (std::size_t i = 0; i < 50; ++i) {
    std::size_t n = 5 + (i * 7) % 26;
    double p = ps[i % 3];
    std::uint64_t seed = 1000 + i;
    out.push_back({"G(" + std::to_string(n) + "," + std::to_string(p) + ",seed " + std::to_string(seed) + ")",
                   gen::erdos_renyi(n, p, seed)});
  }
  return out;
}

inline std::vector<NamedGraph> oracle_suite() {
  auto out = desk_graphs();
  for (auto& g : random_suite()) out.push_back(std::move(g));
  return out;
}

inline RealVector to_real(const oracle::ExactCounts& y) {
  RealVector r{};
  for (std::size_t i = 0; i < kPatternCount; ++i) r[i] = static_cast<double>(y[i]);
  return r;
}

}  // namespace graphlet::suite
