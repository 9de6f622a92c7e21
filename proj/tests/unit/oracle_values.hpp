#pragma once

// Frozen output of tests/oracles/oracles.py (mpmath/sympy, 40 digits).
namespace oracle {

// (5,1) coefficient of R_j for v = (0, sin 5x, 0), f = sin y, as a multiple of i
inline constexpr double kCommutatorImag_j0 = 0.08954148872781724489;
inline constexpr double kCommutatorImag_j1 = -0.000035965043951752388278;
inline constexpr double kCommutatorImag_j2 = -0.24996403495604824761;

// f = cos x, g = cos y, s = 5/2
inline constexpr double kProductRatioCosCos = 0.58690671752748274372;

// single mode |k| = 4, s = 2
inline constexpr double kBlocksOverWeight_k4_s2 = 0.36938003322353584811;

inline constexpr double kBlockAt4_j0 = 0.0;
inline constexpr double kBlockAt4_j1 = 0.64183404508873102044;
inline constexpr double kBlockAt4_j2 = 0.35816595491126897956;

// sin(x + 0.3) + 0.5 sin(2y + 0.7)
inline constexpr double kLipschitzShifted = 2.9142135623730950488;

}  // namespace oracle
