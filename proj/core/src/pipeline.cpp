#include "hpst/pipeline.hpp"

namespace hpst {

ChainAnalysis analyze_chain(const ChainSpec& spec, const Bindings& bindings) {
  ChainAnalysis out;
  out.spec = resolve_parameters(spec, bindings);
  out.geometry = positions_from_couplings(out.spec);
  out.coupling = full_coupling_matrix(out.geometry);
  out.block = build_single_excitation_block(out.coupling);
  out.spectrum = eigendecompose(out.block);
  return out;
}

}  // namespace hpst
