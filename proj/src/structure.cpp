#include "stanley/structure.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace stanley {

namespace {

// Checks the doubling recurrences for blocks at base * 2^j - sigma against
// core terms. Returns lambda on success. `full_levels` demands that the
// first `full_levels` levels lie entirely inside the horizon.
std::optional<Int> validate_blocks(const std::vector<Int>& a,
                                   const std::vector<Int>& core, Int base,
                                   Int sigma, int full_levels) {
  const Int h = static_cast<Int>(a.size());
  const Int first = base - sigma;
  if (first < 1 || first >= h) return std::nullopt;

  Int lambda = 2 * a[first - 1] + 1 - a[first];
  if (lambda < 0) return std::nullopt;

  Int required = base;
  for (int j = 1; j < full_levels; ++j) required *= 2;
  if (required * 2 - sigma > h) return std::nullopt;

  int jumps = 0;
  for (Int block = base; block - sigma < h; block *= 2) {
    Int at = block - sigma;
    if (a[at] != 2 * a[at - 1] - lambda + 1) return std::nullopt;
    ++jumps;
    Int span = std::min(block, h - at);
    if (span > static_cast<Int>(core.size())) span = core.size();
    for (Int i = 1; i < span; ++i) {
      if (a[at + i] != a[at] + core[i]) return std::nullopt;
    }
  }
  if (jumps < 2) return std::nullopt;
  return lambda;
}

Sequence core_sequence(const std::vector<Int>& generators, int p,
                       std::size_t count) {
  return greedy_stanley(generators, p, count);
}

bool is_power_of_two(Int x) { return x > 0 && (x & (x - 1)) == 0; }

}  // namespace

std::optional<StructureReport> detect_independent(const Sequence& seq) {
  const auto& a = seq.terms;
  if (a.size() < 4)
    throw HorizonError("detect_independent: horizon too small for two levels");

  for (Int block = 1; 4 * block <= static_cast<Int>(a.size()); block *= 2) {
    if (auto lambda = validate_blocks(a, a, block, 0, 2)) {
      StructureReport r;
      r.kind = StructureKind::independent;
      r.lambda = *lambda;
      r.m = block;
      r.repeat_factor = a[block];
      r.k0 = 0;
      while ((Int{1} << r.k0) < block) ++r.k0;
      r.horizon = a.size();
      return r;
    }
  }
  return std::nullopt;
}

std::optional<StructureReport> detect_modular_params(const Sequence& seq) {
  const auto& a = seq.terms;
  if (a.size() < 4)
    throw HorizonError("detect_modular_params: horizon too small");

  for (Int m = 1; 4 * m <= static_cast<Int>(a.size()); ++m) {
    if (auto lambda = validate_blocks(a, a, m, 0, 2)) {
      StructureReport r;
      r.kind = StructureKind::modular;
      r.lambda = *lambda;
      r.m = m;
      r.repeat_factor = a[m];
      r.horizon = a.size();
      return r;
    }
  }
  return std::nullopt;
}

std::optional<StructureReport> detect_pseudomodular(
    const Sequence& seq, const std::vector<std::vector<Int>>& core_candidates,
    const DetectOptions& options) {
  const auto& a = seq.terms;
  if (a.size() < 4)
    throw HorizonError("detect_pseudomodular: horizon too small");

  // a modular sequence is pseudomodular with zero shift and itself as core
  if (auto own = detect_modular_params(seq)) {
    own->kind = StructureKind::modular;
    own->sigma = 0;
    own->core_generators = seq.generators;
    return own;
  }

  std::vector<std::vector<Int>> candidates = core_candidates;
  if (candidates.empty()) candidates.push_back({0});

  for (const auto& gens : candidates) {
    Sequence core;
    std::optional<StructureReport> core_rep;
    try {
      core = core_sequence(gens, seq.p, a.size());
      core_rep = detect_modular_params(core);
    } catch (const std::exception&) {
      continue;  // unusable candidate
    }
    if (!core_rep) continue;

    for (Int sigma = 0; sigma <= options.sigma_max; ++sigma) {
      for (Int base = core_rep->m;
           2 * base - sigma <= static_cast<Int>(a.size()); base *= 2) {
        auto lambda = validate_blocks(a, core.terms, base, sigma, 1);
        if (!lambda || *lambda != core_rep->lambda) continue;
        StructureReport r;
        r.kind = is_power_of_two(core_rep->m) ? StructureKind::regular
                                              : StructureKind::pseudomodular;
        r.lambda = *lambda;
        r.m = core_rep->m;
        r.sigma = sigma;
        r.repeat_factor = a[base - sigma];
        r.k0 = 0;
        while (core_rep->m * (Int{1} << r.k0) < base) ++r.k0;
        r.core_generators = gens;
        r.horizon = a.size();
        return r;
      }
    }
  }
  return std::nullopt;
}

std::optional<StructureReport> detect_modular_expansion(const Sequence& seq) {
  const auto& a = seq.terms;
  if (a.size() < 4)
    throw HorizonError("detect_modular_expansion: horizon too small");
  if (a.empty() || a[0] != 0) return std::nullopt;

  const Int h = static_cast<Int>(a.size());
  for (Int m = 1; 2 * m <= h; ++m) {
    Int n = a[m];
    bool match = true;
    for (Int j = m; j < h; ++j) {
      Int q = j / m, r = j % m;
      if (a[j] != a[r] + n * sp0_term(q, seq.p)) {
        match = false;
        break;
      }
    }
    if (!match) continue;
    std::vector<Int> head(a.begin(), a.begin() + m);
    if (!verify_modular_set(head, n, seq.p).valid) continue;
    StructureReport rep;
    rep.kind = StructureKind::modular;
    rep.m = m;
    rep.repeat_factor = n;
    rep.lambda = seq.p == 3 ? 2 * a[m - 1] + 1 - n : 0;
    rep.horizon = a.size();
    return rep;
  }
  return std::nullopt;
}

std::vector<Int> build_pseudomodular(const ModularSet& mset, int k, Int c,
                                     Int sigma) {
  if (k < 1) throw std::invalid_argument("build_pseudomodular: k must be >= 1");
  VerificationReport vr = verify_modular_set(mset);
  if (!vr.valid)
    throw std::invalid_argument("build_pseudomodular: not a modular set");

  const Int m = static_cast<Int>(mset.residues.size());
  const Int block = m << k;
  if (sigma < 0 || sigma >= block)
    throw std::invalid_argument("build_pseudomodular: bad sigma");

  Sequence seq = expand(mset, static_cast<std::size_t>(2 * block));
  auto rep = detect_modular_params(seq);
  if (!rep)
    throw std::logic_error("build_pseudomodular: expansion lost its structure");
  const Int lambda = rep->lambda;

  const Int upper = seq.terms[m * ((Int{1} << k) - 1)] - lambda;
  if (c < lambda || c > upper)
    throw std::invalid_argument(
        "build_pseudomodular: c outside [lambda, a_{m(2^k-1)} - lambda]");

  std::vector<Int> out;
  out.reserve(static_cast<std::size_t>(2 * block - sigma));
  for (Int i = 0; i < block - sigma; ++i) out.push_back(seq.terms[i]);
  for (Int i = block - sigma; i < 2 * block - sigma; ++i)
    out.push_back(c + seq.terms[i]);
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());

  if (find_p_ap(out, mset.p).has_value())
    throw std::logic_error(
        "build_pseudomodular: output is not p-free (theorem contradiction)");

  // the built sequence must tile by the original core at this horizon
  Sequence built = greedy_stanley(out, mset.p,
                                  static_cast<std::size_t>(8 * block));
  auto pseudo = detect_pseudomodular(built, {mset.residues});
  if (!pseudo)
    throw std::logic_error(
        "build_pseudomodular: output not pseudomodular with core S(A) "
        "(theorem contradiction)");
  return out;
}

GrowthVerdict classify_growth(const Sequence& seq) {
  const auto& a = seq.terms;
  if (a.size() < 64)
    throw std::invalid_argument("classify_growth needs at least 64 terms");

  GrowthVerdict verdict;
  verdict.horizon = a.size();

  const double exponent =
      std::log(static_cast<double>(seq.p)) / std::log(seq.p - 1.0);
  verdict.band_low = std::numeric_limits<double>::infinity();
  verdict.band_high = 0.0;
  for (std::size_t n = 1; n < a.size(); ++n) {
    double ratio = static_cast<double>(a[n]) /
                   std::pow(static_cast<double>(n), exponent);
    verdict.band_low = std::min(verdict.band_low, ratio);
    verdict.band_high = std::max(verdict.band_high, ratio);
  }

  // single-coefficient fit a_n ~ c * n^2 / ln n over the top half
  double sff = 0.0, sfa = 0.0, sa = 0.0;
  std::size_t lo = a.size() / 2;
  for (std::size_t n = lo; n < a.size(); ++n) {
    double f = static_cast<double>(n) * n / std::log(static_cast<double>(n));
    sff += f * f;
    sfa += f * static_cast<double>(a[n]);
    sa += static_cast<double>(a[n]);
  }
  double coeff = sfa / sff;
  double mean = sa / static_cast<double>(a.size() - lo);
  double ss_res = 0.0, ss_tot = 0.0;
  for (std::size_t n = lo; n < a.size(); ++n) {
    double f = static_cast<double>(n) * n / std::log(static_cast<double>(n));
    double e = static_cast<double>(a[n]) - coeff * f;
    ss_res += e * e;
    double d = static_cast<double>(a[n]) - mean;
    ss_tot += d * d;
  }
  verdict.fit_r2 = ss_tot > 0 ? 1.0 - ss_res / ss_tot : 0.0;

  bool structured = false;
  try {
    structured = detect_independent(seq).has_value() ||
                 detect_modular_params(seq).has_value() ||
                 detect_pseudomodular(seq).has_value();
  } catch (const HorizonError&) {
    structured = false;
  }

  if (structured)
    verdict.classification = GrowthVerdict::Classification::type1_evidence;
  else if (verdict.fit_r2 >= kType2FitThreshold)
    verdict.classification = GrowthVerdict::Classification::type2_fit;
  else
    verdict.classification = GrowthVerdict::Classification::unknown;
  return verdict;
}

}  // namespace stanley
