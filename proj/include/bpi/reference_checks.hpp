#pragma once

#include <string>
#include <vector>

namespace bpi {

/// A reproduced magnitude estimate compared against its quoted value.
struct ReferenceCheck {
  std::string name;
  double computed = 0.0;
  double expected = 0.0;
  double lower = 0.0;
  double upper = 0.0;
  bool passed = false;
};

/// Recomputes the reference magnitude estimates (1 um probe, 1e20 m^-3,
/// 1 T, 100 eV) together with the dip and sensitivity figures.
std::vector<ReferenceCheck> reference_checks();

}  // namespace bpi
