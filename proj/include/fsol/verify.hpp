#pragma once

#include <map>
#include <string>
#include <vector>

#include "fsol/solop.hpp"

namespace fsol {

// One named identity check with its worst residual.
struct CheckReport {
  std::string name;
  double residual = 0;
  double tolerance = 0;
  bool pass = false;
  double seconds = 0;
  uint64_t seed = 0;
  std::map<std::string, double> details;
};

// Seeded panel of Gaussian-polynomial test functions (shared by the check
// suite and the acceptance tests).
std::vector<TestFunction> seeded_psi_panel(int dim, int count, uint64_t seed);

// The four canonical symbols: |xi|^2 (n=3), |xi|^2+1 (n=3),
// (|xi|^2-1)(|xi|^2-4) (n=2 and 3), and a shifted-frame spec with b != 0.
std::vector<SymbolSpec> canonical_specs();
SymbolSpec shifted_frame_spec();

// Principal-value regularization equalities (a = 0 and a > 0 with the
// boundary constant), fixed psi family, k = 1, 2, 3.
CheckReport check_logres();

// Closed-form sphere integral vs direct spherical quadrature over seeded
// (M, y) pairs for n = 2, 3.
CheckReport check_bessel(uint64_t seed = 0xF0DD);

// Solution-operator identity: residual of <Op(p) P0 delta_0, psi> - psi(0)
// over the seeded psi panel.
CheckReport check_identity(const SymbolSpec& spec, uint64_t seed = 0xF0DD,
                           const QuadParams& params = {});

// Newtonian and Yukawa pairings against radial-kernel quadrature oracles.
CheckReport check_closed_forms(const QuadParams& params = {});

// Weak-* approximation: e_k decreasing with e_8 <= 1e-3.
CheckReport check_approximation(const SymbolSpec& spec, const QuadParams& params = {});

// Partial-fraction reconstruction over the fixed root-configuration set.
CheckReport check_partial_fractions();

// Chebyshev vs analytic derivative paths on a seeded panel.
CheckReport check_deriv_paths(uint64_t seed = 0xF0DD, const QuadParams& params = {});

std::vector<CheckReport> run_all_checks(uint64_t seed = 0xF0DD, const QuadParams& params = {});

}  // namespace fsol
