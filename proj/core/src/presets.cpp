#include "hpst/presets.hpp"

#include <algorithm>
#include <vector>

#include "hpst/errors.hpp"

namespace hpst {

namespace {

using namespace std::string_literals;

std::vector<Preset> make_presets() {
  std::vector<Preset> out;

  // Two 2-node blocks joined by one weak bond.
  out.push_back({"L11_2_0_2", "L11(2,0,2)",
                 ChainSpec{4, {1.0, "delta"s, 1.0}, {1, 2, 3, 4}, {{"delta", 0.196}}, true},
                 0.9, 100.0, 0.01, 1});
  // Two homogeneous 3-node blocks; register = block ends.
  out.push_back({"L11_3_0_3", "L11(3,0,3)",
                 ChainSpec{6, {1.0, 1.0, "delta2"s, 1.0, 1.0}, {1, 3, 4, 6}, {{"delta2", 0.028}}, true},
                 0.9, 500.0, 0.01, 2});
  // 2-node blocks bridged by a 2-node connector.
  out.push_back({"L11_2_2_2", "L11(2,2,2)",
                 ChainSpec{6,
                           {1.0, "delta1"s, "delta2"s, "delta1"s, 1.0},
                           {1, 2, 5, 6},
                           {{"delta1", 0.224}, {"delta2", 0.649}},
                           true},
                 0.9, 100.0, 0.01, 3});
  // Two L11(2,0,2) chains joined by a weaker bond; only delta3 is free.
  out.push_back({"L1111_2x4", "L1111(2,0,2,0,2,0,2)",
                 ChainSpec{8,
                           {1.0, 0.196, 1.0, "delta3"s, 1.0, 0.196, 1.0},
                           {1, 2, 3, 4, 5, 6, 7, 8},
                           {{"delta3", 0.010}},
                           true},
                 0.8, 5000.0, 0.01, 4});
  // Deformed 6-node chain: intra-block bonds optimized too.
  out.push_back({"Lhat11_3_0_3", "Lhat11(3,0,3)",
                 ChainSpec{6,
                           {1.0, "delta1"s, "delta2"s, "delta1"s, 1.0},
                           {1, 3, 4, 6},
                           {{"delta1", 0.769}, {"delta2", 0.092}},
                           true},
                 0.9, 100.0, 0.01, 5});
  out.push_back({"Lhat1221_2x4", "Lhat1221(2,0,2,0,2,0,2)",
                 ChainSpec{8,
                           {1.0, "delta1"s, "delta2"s, "delta3"s, "delta2"s, "delta1"s, 1.0},
                           {1, 2, 3, 4, 5, 6, 7, 8},
                           {{"delta1", 0.247}, {"delta2", 0.977}, {"delta3", 0.018}},
                           true},
                 0.8, 5000.0, 0.01, 6});
  return out;
}

}  // namespace

std::span<const Preset> presets() {
  static const std::vector<Preset> all = make_presets();
  return all;
}

const Preset& find_preset(std::string_view name) {
  const auto all = presets();
  auto it = std::find_if(all.begin(), all.end(), [&](const Preset& p) { return p.name == name; });
  if (it == all.end()) {
    std::string known;
    for (const auto& p : all) known += (known.empty() ? "" : ", ") + p.name;
    throw DomainError("unknown preset '" + std::string(name) + "' (known: " + known + ")");
  }
  return *it;
}

}  // namespace hpst
