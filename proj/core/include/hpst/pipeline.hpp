#pragma once

#include "hpst/chain_model.hpp"
#include "hpst/hamiltonian.hpp"
#include "hpst/spectral.hpp"

namespace hpst {

/// Everything derived from a resolved chain, computed once.
struct ChainAnalysis {
  ChainSpec spec;
  Geometry geometry;
  CouplingMatrix coupling;
  SingleExcitationBlock block;
  SpectralData spectrum;
};

/// Resolves `spec` (with `bindings` overriding its stored parameters) and runs
/// geometry -> coupling matrix -> single-excitation block -> spectrum.
[[nodiscard]] ChainAnalysis analyze_chain(const ChainSpec& spec, const Bindings& bindings = {});

}  // namespace hpst
