#pragma once

#include <cstdint>
#include <iomanip>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>

#include <nlohmann/json.hpp>

#include "fairkc/verify.hpp"

namespace fairkc {

template <DistanceScalar S>
nlohmann::ordered_json to_json(const ReductionCertificate<S>& cert) {
  using ojson = nlohmann::ordered_json;
  ojson doc = ojson::object();
  doc["reduction"] = cert.reduction;
  doc["passed"] = cert.passed();
  doc["metric_ok"] = cert.metric_ok;
  doc["opt_source"] = cert.opt_source ? ojson(to_string(*cert.opt_source)) : ojson(nullptr);
  doc["opt_target"] = cert.opt_target ? ojson(to_string(*cert.opt_target)) : ojson(nullptr);
  doc["opt_equal"] = cert.opt_equal;
  ojson claims = ojson::array();
  for (const auto& c : cert.checks) {
    ojson entry = ojson::object();
    entry["id"] = c.id;
    entry["verdict"] = to_string(c.verdict);
    entry["detail"] = c.detail;
    entry["witnesses"] = c.witnesses;
    claims.push_back(std::move(entry));
  }
  doc["claims"] = std::move(claims);
  return doc;
}

template <DistanceScalar S>
void print_claim_table(std::ostream& os, const ReductionCertificate<S>& cert) {
  os << cert.reduction << "\n";
  for (const auto& c : cert.checks) {
    os << "  " << std::left << std::setw(24) << c.id << std::setw(8) << to_string(c.verdict) << c.detail << "\n";
    for (const auto& w : c.witnesses) os << "      " << w << "\n";
  }
}

// One benchmark row. ratio is present iff optimum is.
struct BenchRecord {
  std::string instance_id;
  std::size_t n = 0;
  std::size_t t = 0;
  std::size_t k = 0;
  std::string algorithm;
  double radius = 0;
  std::optional<double> optimum;
  std::optional<double> ratio;
  double wall_ms = 0;
  std::uint64_t seed = 0;

  void set_optimum(double opt) {
    optimum = opt;
    ratio = opt > 0 ? radius / opt : 1.0;
  }
};

inline const char* bench_csv_header() { return "instance_id,n,t,k,algorithm,radius,optimum,ratio,wall_ms,seed"; }

inline std::string to_csv(const BenchRecord& r) {
  std::ostringstream os;
  os << std::setprecision(10);
  os << r.instance_id << ',' << r.n << ',' << r.t << ',' << r.k << ',' << r.algorithm << ',' << r.radius << ',';
  if (r.optimum) os << *r.optimum;
  os << ',';
  if (r.ratio) os << *r.ratio;
  os << ',' << std::fixed << std::setprecision(3) << r.wall_ms << ',' << r.seed;
  return os.str();
}

inline nlohmann::ordered_json to_json(const BenchRecord& r) {
  nlohmann::ordered_json doc = nlohmann::ordered_json::object();
  doc["instance_id"] = r.instance_id;
  doc["n"] = r.n;
  doc["t"] = r.t;
  doc["k"] = r.k;
  doc["algorithm"] = r.algorithm;
  doc["radius"] = r.radius;
  doc["optimum"] = r.optimum ? nlohmann::ordered_json(*r.optimum) : nlohmann::ordered_json(nullptr);
  doc["ratio"] = r.ratio ? nlohmann::ordered_json(*r.ratio) : nlohmann::ordered_json(nullptr);
  doc["wall_ms"] = r.wall_ms;
  doc["seed"] = r.seed;
  return doc;
}

}  // namespace fairkc
