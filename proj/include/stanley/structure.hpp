#pragma once

#include "stanley/modular.hpp"

namespace stanley {

enum class StructureKind {
  independent,
  modular,
  regular,
  pseudomodular,
  none_at_horizon,
};

/// Parameters recovered from a sequence. The defining recurrences hold, with
/// these values, at every index inside the reported horizon:
///   a_{B 2^j + i} = a_{B 2^j} + c_i          (c = core terms, own terms when
///   a_{B 2^j}     = 2 a_{B 2^j - 1} - lambda + 1     no core is involved)
/// where B = m * 2^k0 and block positions are shifted left by sigma.
struct StructureReport {
  StructureKind kind = StructureKind::none_at_horizon;
  Int lambda = 0;
  Int m = 1;              // minimal block length
  Int repeat_factor = 0;  // a_m, a_{2^kappa}, or the first tile offset
  Int sigma = 0;
  int k0 = 0;  // first doubling level at which the recurrences hold
  std::optional<std::vector<Int>> core_generators;
  std::size_t horizon = 0;
};

struct DetectOptions {
  int sigma_max = 8;
};

/// Independence test: blocks at 2^k for k >= kappa, kappa minimal, validated
/// on every index within the horizon. Requires two full doubling levels
/// (|seq| >= 4 * 2^kappa); throws HorizonError when not even kappa = 0 fits.
std::optional<StructureReport> detect_independent(const Sequence& seq);

/// Block-structure test with blocks at m * 2^k for all k >= 0, m minimal and
/// not restricted to powers of 2. Requires |seq| >= 4m for a candidate m.
std::optional<StructureReport> detect_modular_params(const Sequence& seq);

/// Shifted tiling by a modular core: blocks at m * 2^k - sigma translate the
/// core's terms. Cores are taken from `core_candidates` (generator sets);
/// when empty, S_p(0) and the sequence itself are tried. Returns minimal
/// sigma, then minimal first level.
std::optional<StructureReport> detect_pseudomodular(
    const Sequence& seq,
    const std::vector<std::vector<Int>>& core_candidates = {},
    const DetectOptions& options = {});

/// Definition-level modular test: the horizon must equal A + N * S_p(0) for
/// A = first m terms and N = a_m, with A verifying as a modular set. This is
/// the detector the generator scan uses; unlike the doubling recurrences it
/// is meaningful for every odd prime p.
std::optional<StructureReport> detect_modular_expansion(const Sequence& seq);

/// Generator set A_k^c of Theorem-style pseudomodular construction: the first
/// m 2^k - sigma terms of S(A) followed by the next block translated by c.
/// The result is checked p-free and its sequence checked pseudomodular with
/// core S(A); a failure throws (it would contradict the theorem).
std::vector<Int> build_pseudomodular(const ModularSet& m, int k, Int c,
                                     Int sigma = 0);

struct GrowthVerdict {
  enum class Classification { type1_evidence, type2_fit, unknown };
  Classification classification = Classification::unknown;
  double band_low = 0.0;   // min of a_n / n^{log_{p-1} p} over the horizon
  double band_high = 0.0;  // max of the same ratio
  double fit_r2 = 0.0;     // c * n^2 / ln n fit over the top half
  std::size_t horizon = 0;
};

/// Structure detection first; otherwise a desk-scale regression against
/// Theta(n^2 / log n). The fit threshold is a labeled heuristic, not a
/// theorem.
GrowthVerdict classify_growth(const Sequence& seq);

/// Fit threshold used by classify_growth.
inline constexpr double kType2FitThreshold = 0.90;

}  // namespace stanley
