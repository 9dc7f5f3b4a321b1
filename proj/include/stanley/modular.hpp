#pragma once

#include "stanley/core.hpp"

namespace stanley {

/// A residue set A in {0,...,modulus-1} with 0 in A, p-free mod modulus,
/// covering every other residue. Construction routines in this module verify
/// before returning; a ModularSet built by hand can be checked with
/// verify_modular_set.
struct ModularSet {
  std::vector<Int> residues;
  Int modulus = 1;
  int p = 3;

  bool operator==(const ModularSet&) const = default;
};

struct VerificationReport {
  bool valid = false;
  std::optional<APWitness> freeness_witness;
  std::vector<Int> uncovered;
  double seconds = 0.0;
};

/// Thrown by verify_modular_set when 0 is missing from the candidate set;
/// the definition requires it, so this is distinct from a failed check.
struct MissingZeroError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

/// Full modular-set check: freeness mod n plus covering of the complement.
/// For p = 3 the cover table over all ordered pairs is precomputed and the
/// complement checked against it.
VerificationReport verify_modular_set(const std::vector<Int>& residues, Int n,
                                      int p);

inline VerificationReport verify_modular_set(const ModularSet& m) {
  return verify_modular_set(m.residues, m.modulus, m.p);
}

/// n-th term of S_p(0): the base-(p-1) digits of n read in base p.
Int sp0_term(Int n, int p);

/// First `count` terms of A + N * S_p(0), which equals S_p(A) for a verified
/// modular set. Rejects an invalid set.
Sequence expand(const ModularSet& m, std::size_t count);

/// alpha * A + N * S_l with modulus p^l * N, where S_l holds the first
/// (p-1)^l terms of S_p(0) and l is the smallest level whose candidate both
/// fits below the modulus and re-verifies. Requires gcd(alpha, N) = 1.
ModularSet scale(const ModularSet& m, Int alpha);

/// Product A + M * B with modulus M * N, re-verified.
ModularSet product(const ModularSet& a, const ModularSet& b);

struct OmegaOptions {
  Int window = 1000;              // consecutive settled values required
  std::size_t max_terms = 200000; // term budget before HorizonError
};

/// Largest x neither in S_p(A) nor covered by it, or -1 when every
/// non-element is covered. Generates until `window` consecutive values below
/// the frontier are settled; throws HorizonError past the term budget.
Int omega(const std::vector<Int>& generators, int p,
          const OmegaOptions& options = {});

/// Truncates a detected-independent sequence to a verified modular set
/// modulo p^l * rho, picking the smallest verifying l. Throws if the
/// sequence does not detect as independent.
ModularSet independent_to_modular(const Sequence& seq, int kappa_hint = -1);

}  // namespace stanley
