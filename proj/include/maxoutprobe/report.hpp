#pragma once

#include <json.hpp>

#include "maxoutprobe/estimators.hpp"
#include "maxoutprobe/sampling.hpp"

namespace mop {

inline nlohmann::ordered_json estimate_report(const EstimateSet& e) {
  nlohmann::ordered_json j;
  j["method"] = std::string(method_name(e.method));
  j["m_hat"] = e.m_hat;
  j["c_hat"] = e.c_hat;
  j["probes_used"] = e.probes_used;
  j["clamped_flags"] = {{"m_hat", e.m_hat_clamped}, {"c_hat", e.c_hat_clamped}};
  return j;
}

inline nlohmann::ordered_json fractions_report(const SampleFractions& f) {
  nlohmann::ordered_json j;
  j["f_n"] = f.f_n ? nlohmann::ordered_json(*f.f_n) : nlohmann::ordered_json(nullptr);
  j["f_e"] = f.f_e;
  return j;
}

}  // namespace mop
