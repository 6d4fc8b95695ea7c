#pragma once

#include <cstddef>
#include <map>
#include <string>
#include <variant>
#include <vector>

#include "hpst/linalg.hpp"

namespace hpst {

/// Parameter name -> value. Ordered so that iteration (and hence every
/// derived tie-break) is deterministic.
using Bindings = std::map<std::string, double>;

/// One nearest-neighbour coupling: either a number (in units of the first
/// bond) or the name of a free parameter such as "delta1".
using CouplingTerm = std::variant<double, std::string>;

/// Symbolic chain layout. Register nodes are 1-based node indices.
///
/// Segment structure (L_i blocks, C_i connectors) is encoded entirely by the
/// coupling list and the register; the L_{...}(...) notation only appears in
/// preset names.
struct ChainSpec {
  std::size_t n_nodes = 0;
  std::vector<CouplingTerm> nn_couplings;
  std::vector<int> register_nodes;
  Bindings parameters;
  bool symmetric = false;

  /// True when no coupling is symbolic.
  [[nodiscard]] bool is_resolved() const noexcept;
  /// Distinct symbolic names in order of first appearance along the chain.
  [[nodiscard]] std::vector<std::string> symbolic_names() const;
  /// Numeric coupling list; throws ChainError if any term is symbolic.
  [[nodiscard]] std::vector<double> numeric_couplings() const;
};

/// Node coordinates along the chain axis; x_1 = 0 and strictly increasing.
struct Geometry {
  std::vector<double> positions;
};

/// Full dipolar coupling matrix D_ij = r_ij^-3 with zero diagonal.
struct CouplingMatrix {
  Matrix d;

  [[nodiscard]] std::size_t n_nodes() const noexcept { return d.rows(); }
  /// Bond i (1-based): D_{i,i+1}.
  [[nodiscard]] double nn_coupling(std::size_t bond) const { return d(bond - 1, bond); }
};

/// Structural checks on a spec. Numeric couplings must be positive, the
/// register strictly increasing inside [1, N], and a spec flagged symmetric
/// must be mirror symmetric (symbol for symbol, or exactly for numbers).
void validate(const ChainSpec& spec);

/// Substitutes every symbolic coupling. Values in `bindings` take precedence
/// over the defaults stored in `spec.parameters`; the returned spec records the
/// values actually used in its `parameters` map.
[[nodiscard]] ChainSpec resolve_parameters(const ChainSpec& spec, const Bindings& bindings = {});

/// Inverts the cube law bond by bond: x_{i+1} = x_i + D_i^{-1/3}.
[[nodiscard]] Geometry positions_from_couplings(const ChainSpec& spec);

/// Every pair is filled; nothing beyond nearest neighbours is truncated.
[[nodiscard]] CouplingMatrix full_coupling_matrix(const Geometry& geom);

}  // namespace hpst
