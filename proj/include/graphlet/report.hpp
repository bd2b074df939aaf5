#pragma once

// JSON and TSV renderings of results. Wall time goes under the "volatile"
// key so reports compare byte-for-byte once that key is dropped.

#include <json.hpp>

#include <sstream>
#include <string>

#include "graphlet/adaptive.hpp"
#include "graphlet/estimator.hpp"
#include "graphlet/extremal.hpp"
#include "graphlet/micro.hpp"

namespace graphlet::report {

using Json = nlohmann::ordered_json;

inline Json number(double x) {
  if (std::isfinite(x)) return x;
  return nullptr;
}

inline Json counts_json(const GraphletEstimate& est) {
  Json counts = Json::object();
  for (const auto& p : kPatterns) {
    Json row;
    row["id"] = p.id;
    if (est.exact)
      row["count"] = Json::parse(to_string(est.exact->at(slot(p.id))));
    else
      row["count"] = number(est[p.id]);
    row["lb"] = number(est.lb[slot(p.id)]);
    row["ub"] = number(est.ub[slot(p.id)]);
    row["variance"] = number(est.var[slot(p.id)]);
    if (est.clamped[slot(p.id)]) row["clamped"] = true;
    counts[std::string(p.name)] = std::move(row);
  }
  return counts;
}

inline Json estimate_json(const GraphletEstimate& est) {
  Json j;
  j["n"] = est.n;
  j["m"] = est.m;
  j["sampled_edges"] = est.k_used;
  j["exact"] = est.exact.has_value();
  j["confidence"] = 1.0 - est.alpha;
  if (est.approximate_inclusion) j["approximate_inclusion"] = true;
  j["counts"] = counts_json(est);
  return j;
}

inline Json design_json(const SampleDesign& d) {
  Json j;
  if (d.mode == SampleMode::probability)
    j["probability"] = d.probability;
  else
    j["samples"] = d.size;
  j["weighting"] = to_string(d.weighting);
  j["replacement"] = d.replacement;
  j["seed"] = d.seed;
  return j;
}

inline Json micro_json(const Graph& g, const MicroEstimate& me) {
  Json j;
  j["edge"] = {g.label(me.u), g.label(me.v)};
  Json x = Json::object();
  for (const auto& p : kPatterns) {
    if (p.id == 2) continue;
    x[std::string(p.name)] = me[p.id];
  }
  j["x"] = std::move(x);
  j["omega"] = me.omega;
  j["p_e"] = me.p_e;
  j["seed"] = me.seed;
  return j;
}

inline Json trace_json(const AdaptiveTrace& trace) {
  Json rows = Json::array();
  for (const auto& it : trace.iterations)
    rows.push_back({{"t", it.t}, {"k_t", it.k_t}, {"cumulative", it.cumulative}, {"phi", it.phi}, {"delta", it.delta}});
  return rows;
}

inline std::string format_value(double x) {
  std::ostringstream os;
  os.precision(17);
  os << x;
  return os.str();
}

/// id, name, count, lb, ub, variance: one line per pattern.
inline std::string counts_tsv(const GraphletEstimate& est) {
  std::ostringstream os;
  os << "id\tname\tcount\tlb\tub\tvariance\n";
  for (const auto& p : kPatterns) {
    os << p.id << '\t' << p.name << '\t';
    os << (est.exact ? to_string(est.exact->at(slot(p.id))) : format_value(est[p.id]));
    os << '\t' << format_value(est.lb[slot(p.id)]) << '\t' << format_value(est.ub[slot(p.id)]) << '\t'
       << format_value(est.var[slot(p.id)]) << '\n';
  }
  return os.str();
}

inline std::string trace_tsv(const AdaptiveTrace& trace) {
  std::ostringstream os;
  os << "t\tK_t\tcum_samples\tdelta\n";
  for (const auto& it : trace.iterations)
    os << it.t << '\t' << it.k_t << '\t' << it.cumulative << '\t' << format_value(it.delta) << '\n';
  return os.str();
}

}  // namespace graphlet::report
