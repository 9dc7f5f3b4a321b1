#pragma once

#include "stanley/modular.hpp"

namespace stanley {

/// A basis: finite head b_0,...,b_{k0-1} followed by the geometric tail
/// b_{k0+j} = tail_start * p^j. The theorem hypotheses ask for
/// nu_p(b_k) = k at every index and tail_start = p^{k0}, so the tail is the
/// pure powers of p; heads like {1,7,10} with tail 30 are representable but
/// fail validation.
struct Basis {
  std::vector<Int> head;
  Int tail_start = 1;
  int p = 3;

  Int b(std::size_t k) const;

  bool operator==(const Basis&) const = default;
};

struct BasisValidation {
  bool valid = false;
  int first_failing_index = -1;
  std::string diagnostic;
};

/// Sufficient (not necessary) check of the basis theorem hypotheses.
BasisValidation validate_basis(const Basis& basis);

/// The `count` smallest sums of digit multiples of basis elements, digits in
/// {0,...,p-2}. Throws if two digit vectors produce the same value.
std::vector<Int> basis_sequence(const Basis& basis, std::size_t count);

/// Generator prefix of the basic sequence: the (p-1)^k0 sums over head
/// indices, k0 = head length.
std::vector<Int> basis_generator_prefix(const Basis& basis);

/// Smallest truncation index m usable as a modulus level: b_k = p^k for all
/// k >= m and the head digit sums stay below p^m.
int basis_truncation_level(const Basis& basis);

/// Constructive covering witness modulo N = p^m for a theorem-valid basis:
/// digits of the witness elements are fixed index by index so the finished
/// progression endpoint is congruent to x. The returned congruence is
/// checked before returning.
APWitness cover_witness_digits(Int x, const Basis& basis, int m);

struct Completion {
  Basis basis;
  std::vector<Int> generators;  // prefix whose Stanley sequence is basic
};

/// Completion of {0, a_1, ..., a_n} with pairwise distinct nu_3 valuations
/// and a_1 + a_2 > a_n: builds the filled-in basis with the smallest valid
/// multiplier c and checks the generated sequence starts with the input.
Completion complete(const std::vector<Int>& set, int p = 3);

/// alpha * A + N * S_B truncated at the smallest verifying level, where S_B
/// is the basic sequence of a theorem-valid basis. The level search starts at
/// the basis truncation level so the head structure lands inside the modulus.
ModularSet scale_basic(const ModularSet& a, Int alpha, const Basis& basis);

}  // namespace stanley
