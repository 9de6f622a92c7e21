#pragma once

#include <cstdint>
#include <string_view>

#include "hallmhd/lp/layout.hpp"
#include "hallmhd/report.hpp"
#include "hallmhd/spectral/random.hpp"

namespace hallmhd::lp {

/// Right-hand side variants of the commutator estimate, with
/// critical = 1 + d/2:
///   low:       sigma < critical, (||grad v||_{H^{d/2}} + ||grad v||_{L^inf}) ||f||_{H^sigma}
///   critical:  sigma = critical, ||grad v||_{H^{d/2+1}} ||f||_{H^sigma}
///   high:      sigma > critical, ||grad v||_{H^{sigma-1}} ||f||_{H^sigma}
///   positive:  sigma > 0, ||grad v||_{L^inf} ||f||_{H^sigma} + ||grad f||_{L^inf} ||grad v||_{H^{sigma-1}}
enum class CommutatorCase { low, critical, high, positive };

std::string_view to_string(CommutatorCase c);
/// Throws std::invalid_argument for unknown names.
CommutatorCase commutator_case_from_string(std::string_view name);

/// Ratio ||fg||_{H^s} / (||f||_{L^inf} ||g||_{H^s} + ||f||_{H^s} ||g||_{L^inf})
/// for scalar f, g. The report carries one sample; lhs and rhs exclude the
/// constant and fitted_constant is the ratio. Block norms of both inputs are
/// attached as series "f_blocks" and "g_blocks".
InequalityReport verify_product_estimate(const Field& f, const Field& g, double s, const Layout& layout);

/// Ratio (sum_j (2^{j sigma} ||R_j||_{L2})^2)^{1/2} / rhs(case). Throws
/// std::invalid_argument when sigma does not belong to the case. When the
/// right side vanishes the ratio is 0 if the left side is at roundoff level
/// and +inf otherwise.
InequalityReport verify_commutator_estimate(const Field& v, const Field& f, double sigma, CommutatorCase which,
                                            const Layout& layout);

/// Representative sigma of each case: low 1, critical 1 + d/2, high and
/// positive s (which must exceed 1 + d/2).
double representative_sigma(CommutatorCase which, int dim, double s);

struct SweepOptions {
  int seeds = 50;
  std::uint64_t first_seed = 1;
  spectral::RandomSpectrum spectrum{0.0, 4.0, spectral::Envelope::power};
  /// Multiplier on the maximum ratio used as the persisted constant.
  double headroom = 1.1;
};

/// Product estimate over seeded random scalar pairs. lhs/rhs hold one entry
/// per seed (times = seed), values["max_ratio"] the maximum ratio and
/// fitted_constant = headroom * max_ratio. pass requires every ratio finite.
InequalityReport product_sweep(const spectral::GridPtr& grid, double s, const SweepOptions& options);

/// Commutator estimate over seeded (solenoidal v, scalar f) pairs.
InequalityReport commutator_sweep(const spectral::GridPtr& grid, double sigma, CommutatorCase which,
                                  const SweepOptions& options);

}  // namespace hallmhd::lp
