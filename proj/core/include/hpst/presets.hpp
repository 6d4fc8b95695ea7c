#pragma once

#include <span>
#include <string>
#include <string_view>

#include "hpst/chain_model.hpp"

namespace hpst {

/// A named chain family together with its reference parameter values and the
/// default search settings used to analyze it.
struct Preset {
  std::string name;      // CLI name, e.g. "L11_2_0_2"
  std::string notation;  // human-readable, e.g. "L11(2,0,2)"
  ChainSpec spec;        // symbolic template; spec.parameters hold the reference values
  double p0 = 0.9;
  double t_max = 100.0;
  double dt = 0.01;
  int table = 0;  // index of the reference table reproduced by this preset
};

[[nodiscard]] std::span<const Preset> presets();
/// Throws DomainError for unknown names.
[[nodiscard]] const Preset& find_preset(std::string_view name);

}  // namespace hpst
