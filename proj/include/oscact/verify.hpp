#pragma once

#include <string>
#include <vector>

namespace oscact {

enum class Suite { riccati, darboux, limits, entropy, fdt, all };

std::string suite_name(Suite s);
Suite suite_from_name(const std::string& name);

struct VerifyOptions {
  double hbar = 1.0;
  /// Tolerance for the residual-class checks. Identity-class checks carry
  /// their own fixed tolerances (1e-12/1e-13 closed-form identities, 1e-6
  /// finite-difference cross-checks) and ignore this value.
  double tolerance = 1e-8;
};

struct VerifyCheck {
  std::string name;
  double max_residual = 0.0;
  double tolerance = 0.0;
  bool pass = false;
};

struct VerifyReport {
  Suite suite = Suite::all;
  std::vector<VerifyCheck> checks;
  bool overall = false;  // conjunction of all checks
};

/// Runs the named suite on the canonical grids (log-spaced 64 points on
/// [0.1, 10] for x > 0 families, 64 points on [-10, 10] for symmetric ones,
/// lambda in {1, 2, 10, 1000, inf} with domains trimmed where a lambda
/// forbids part of the symmetric grid).
VerifyReport run_suite(Suite suite, const VerifyOptions& opts = {});

}  // namespace oscact
