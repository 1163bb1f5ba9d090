#pragma once

#include "fvslab/report.hpp"

namespace fvslab {

struct BatteryOptions {
  /// Negative control: add a copy of the butterfly's full-set weak density row
  /// with its rhs raised by one, which must turn at least one check red.
  bool corrupt = false;
};

/// Fixed battery of published worked examples: the figure1 gap family, the
/// butterfly optima for the weak density and orientation LPs, the K4 optimum
/// with cycle cover rows, the K5 subgraph point, the labelling LP mapping into
/// the orientation polyhedron, and the small algorithm traces. One assertion
/// per claim.
RunReport reference_battery(const BatteryOptions& options = {}, const Caps& caps = {});

}  // namespace fvslab
