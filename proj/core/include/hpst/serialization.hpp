#pragma once

#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "hpst/chain_model.hpp"
#include "hpst/coupling_optimizer.hpp"
#include "hpst/dynamics.hpp"
#include "hpst/hpst_search.hpp"
#include "hpst/phase_compensation.hpp"
#include "hpst/spectral.hpp"

namespace hpst {

// JSON documents. Decoders throw FormatError on malformed input.

[[nodiscard]] std::string to_json(const ChainSpec& spec);
[[nodiscard]] ChainSpec chain_spec_from_json(std::string_view text);

[[nodiscard]] std::string to_json(const HpstTable& table);
[[nodiscard]] HpstTable hpst_table_from_json(std::string_view text);

[[nodiscard]] std::string to_json(const OptimizationResult& result, bool include_trace = true);

[[nodiscard]] std::string to_json(const PhasePolynomial& poly);
[[nodiscard]] PhasePolynomial phase_polynomial_from_json(std::string_view text);

[[nodiscard]] std::string to_json(const CompensationReport& report);

// CSV: header row, comma separated, LF line endings.

/// Columns t, P_<s><r1>, P_<s><r2>, ... for one source node.
[[nodiscard]] std::string probability_csv(const SpectralData& spectrum, int source, std::span<const int> targets,
                                          double t_max, double dt);
[[nodiscard]] std::string matrix_csv(const Matrix& m);
/// One row per mode: j, lambda_j, u_1j .. u_Nj.
[[nodiscard]] std::string spectrum_csv(const SpectralData& spectrum);
[[nodiscard]] std::string trace_csv(const std::vector<TracePoint>& trace);
/// Columns t, omega; `samples` points evenly spaced on [0, t_end].
[[nodiscard]] std::string omega_csv(const PhasePolynomial& poly, std::size_t samples);

/// Aligned text table, three numbers "P t phi" ("%.3f %.3f %.3f") per
/// off-diagonal cell; both triangles are filled.
[[nodiscard]] std::string format_text_table(const HpstTable& table, std::span<const int> register_nodes);

}  // namespace hpst
