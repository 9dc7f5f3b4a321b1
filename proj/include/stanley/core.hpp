#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace stanley {

using Int = std::int64_t;

/// Certificate for a p-term arithmetic progression. Integer witnesses have
/// strictly increasing elements and difference > 0. Modular witnesses
/// (modulus set) list the residues along the progression; the difference is a
/// nonzero residue and elements may wrap.
struct APWitness {
  std::vector<Int> elements;
  Int difference = 0;
  std::optional<Int> modulus;
};

/// A greedily generated p-free sequence, together with the generator set that
/// produced it. terms[0..|generators|-1] equals the sorted generators and
/// every later term is the minimal greedy extension.
struct Sequence {
  std::vector<Int> terms;
  std::vector<Int> generators;
  int p = 3;
};

/// Thrown when a generator set already contains a p-term progression.
struct NotPFreeError : std::invalid_argument {
  APWitness witness;
  explicit NotPFreeError(APWitness w);
};

/// Thrown when an open-ended computation exhausts its term or value budget
/// before reaching a stable answer.
struct HorizonError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

bool is_odd_prime(Int p);
void require_odd_prime(Int p);

/// Exponent of the largest power of p dividing x. Requires x > 0, p >= 2.
int nu_p(Int x, Int p);

/// Smallest p-AP contained in the set, by top element then by difference,
/// or nullopt if the set is p-free.
std::optional<APWitness> find_p_ap(const std::vector<Int>& set, int p);

/// Witness x_1 < ... < x_{p-1} in the set with common difference d > 0 and
/// x = x_{p-1} + d, smallest d first, or nullopt if x is not covered.
std::optional<APWitness> is_covered(Int x, const std::vector<Int>& set, int p);

/// Modulo-n covering: distinct residues x_1,...,x_{p-1} in the set and a
/// difference d != 0 (mod n) with x_{i+1} = x_i + d and x = x_{p-1} + d, all
/// mod n. Smallest d first.
std::optional<APWitness> is_covered_mod(Int x, const std::vector<Int>& residues,
                                        Int n, int p);

/// Freeness modulo n: returns a progression a, a+d, ..., a+(p-1)d (mod n)
/// entirely inside the set with d != 0 (mod n), or nullopt. Repeated residues
/// from wraparound still count as a violation.
std::optional<APWitness> p_free_mod(const std::vector<Int>& residues, Int n,
                                    int p);

/// Incremental coverage structure behind the greedy rule. Terms are added in
/// strictly increasing order. For p = 3 a cover bitmap is kept up to date so
/// that a candidate test is one bit lookup; on accepting term t the values
/// 2t - s are marked for every earlier term s. For p >= 5 candidates are
/// probed by stepping through differences against the member bitmap, keeping
/// memory linear in the frontier.
class CoverageSieve {
 public:
  explicit CoverageSieve(int p);

  void add_term(Int t);
  bool member(Int x) const;
  bool covered(Int x) const;

  /// Largest value any progression over the current terms can reach; covered()
  /// is final for every x (values beyond the frontier are uncoverable).
  Int frontier() const;

  Int last_term() const { return terms_.empty() ? -1 : terms_.back(); }
  const std::vector<Int>& terms() const { return terms_; }
  int p() const { return p_; }

 private:
  void ensure_cover_capacity(std::size_t index);

  int p_;
  std::vector<Int> terms_;
  std::vector<bool> members_;
  std::vector<bool> cover_;  // p == 3 only
};

/// Stateful greedy generator so callers can extend a sequence on demand.
class GreedyGenerator {
 public:
  GreedyGenerator(std::vector<Int> generators, int p);

  Int extend();  // accept and return the next term
  void extend_to_count(std::size_t count);
  void extend_past_value(Int value);

  const std::vector<Int>& terms() const { return sieve_.terms(); }
  const CoverageSieve& sieve() const { return sieve_; }
  const std::vector<Int>& generators() const { return generators_; }
  int p() const { return sieve_.p(); }

  Sequence snapshot(std::size_t count) const;

 private:
  CoverageSieve sieve_;
  std::vector<Int> generators_;
};

/// First `count` terms of the p-Stanley sequence S_p(A). Throws NotPFreeError
/// if A contains a p-AP and std::invalid_argument for a bad p or count.
Sequence greedy_stanley(const std::vector<Int>& generators, int p,
                        std::size_t count);

}  // namespace stanley
