#include "stanley/basic.hpp"

#include <algorithm>
#include <numeric>

namespace stanley {

namespace {

Int pow_int(Int base, int exp) {
  Int v = 1;
  for (int i = 0; i < exp; ++i) {
    if (v > (Int{1} << 62) / base) throw std::overflow_error("power overflow");
    v *= base;
  }
  return v;
}

void require_positive_entries(const Basis& basis) {
  for (std::size_t k = 0; k < basis.head.size(); ++k)
    if (basis.head[k] <= 0)
      throw std::invalid_argument("basis head entries must be positive");
  if (basis.tail_start <= 0)
    throw std::invalid_argument("basis tail_start must be positive");
}

// all digit sums over basis entries with value <= cap, in unspecified order
void enumerate_sums(const Basis& basis, Int cap, std::size_t k, Int value,
                    std::vector<Int>& out) {
  Int bk = basis.b(k);
  if (k >= basis.head.size() && bk > cap - value) {
    out.push_back(value);
    return;
  }
  Int max_digit = std::min<Int>(basis.p - 2, (cap - value) / bk);
  for (Int d = 0; d <= max_digit; ++d)
    enumerate_sums(basis, cap, k + 1, value + d * bk, out);
}

// up to two digit vectors that sum to `remaining`, for collision diagnostics
void collect_digit_vectors(const Basis& basis, Int remaining, std::size_t k,
                           std::vector<Int>& digits,
                           std::vector<std::vector<Int>>& out) {
  if (out.size() >= 2) return;
  Int bk = basis.b(k);
  if (k >= basis.head.size() && bk > remaining) {
    if (remaining == 0) out.push_back(digits);
    return;
  }
  Int max_digit = std::min<Int>(basis.p - 2, remaining / bk);
  for (Int d = 0; d <= max_digit; ++d) {
    digits.push_back(d);
    collect_digit_vectors(basis, remaining - d * bk, k + 1, digits, out);
    digits.pop_back();
    if (out.size() >= 2) return;
  }
}

std::string format_digits(const std::vector<Int>& digits) {
  std::string s = "(";
  for (std::size_t i = 0; i < digits.size(); ++i) {
    if (i) s += ",";
    s += std::to_string(digits[i]);
  }
  return s + ")";
}

Int mod_inverse(Int u, Int p) {
  Int r = 1, b = u % p, e = p - 2;  // Fermat, p prime
  while (e > 0) {
    if (e & 1) r = r * b % p;
    b = b * b % p;
    e >>= 1;
  }
  return r;
}

}  // namespace

Int Basis::b(std::size_t k) const {
  if (k < head.size()) return head[k];
  Int v = tail_start;
  for (std::size_t j = head.size(); j < k; ++j) {
    if (v > (Int{1} << 62) / p) throw std::overflow_error("basis tail overflow");
    v *= p;
  }
  return v;
}

BasisValidation validate_basis(const Basis& basis) {
  BasisValidation result;
  require_odd_prime(basis.p);
  for (std::size_t k = 0; k < basis.head.size(); ++k) {
    if (basis.head[k] <= 0) {
      result.first_failing_index = static_cast<int>(k);
      result.diagnostic = "head entry b_" + std::to_string(k) +
                          " is not positive";
      return result;
    }
    if (nu_p(basis.head[k], basis.p) != static_cast<int>(k)) {
      result.first_failing_index = static_cast<int>(k);
      result.diagnostic =
          "nu_" + std::to_string(basis.p) + "(b_" + std::to_string(k) + "=" +
          std::to_string(basis.head[k]) + ") = " +
          std::to_string(nu_p(basis.head[k], basis.p)) + ", expected " +
          std::to_string(k);
      return result;
    }
  }
  Int expected_tail = pow_int(basis.p, static_cast<int>(basis.head.size()));
  if (basis.tail_start != expected_tail) {
    result.first_failing_index = static_cast<int>(basis.head.size());
    result.diagnostic = "tail must start at p^" +
                        std::to_string(basis.head.size()) + " = " +
                        std::to_string(expected_tail) + ", got " +
                        std::to_string(basis.tail_start);
    return result;
  }
  result.valid = true;
  return result;
}

std::vector<Int> basis_sequence(const Basis& basis, std::size_t count) {
  require_odd_prime(basis.p);
  require_positive_entries(basis);
  if (count == 0) return {};

  Int cap = 16;
  for (Int h : basis.head) cap = std::max(cap, h);
  while (true) {
    std::vector<Int> sums;
    enumerate_sums(basis, cap, 0, 0, sums);
    std::sort(sums.begin(), sums.end());
    auto dup = std::adjacent_find(sums.begin(), sums.end());
    if (dup != sums.end()) {
      std::vector<std::vector<Int>> vecs;
      std::vector<Int> digits;
      collect_digit_vectors(basis, *dup, 0, digits, vecs);
      std::string msg = "sum collision at value " + std::to_string(*dup);
      if (vecs.size() >= 2)
        msg += ": digit vectors " + format_digits(vecs[0]) + " and " +
               format_digits(vecs[1]);
      throw std::invalid_argument(msg);
    }
    if (sums.size() >= count) {
      sums.resize(count);
      return sums;
    }
    if (cap > (Int{1} << 61)) throw std::overflow_error("basis cap overflow");
    cap *= 2;
  }
}

std::vector<Int> basis_generator_prefix(const Basis& basis) {
  std::size_t count = 1;
  for (std::size_t i = 0; i < basis.head.size(); ++i)
    count *= static_cast<std::size_t>(basis.p - 1);
  return basis_sequence(basis, count);
}

int basis_truncation_level(const Basis& basis) {
  BasisValidation v = validate_basis(basis);
  if (!v.valid)
    throw std::invalid_argument("basis_truncation_level: " + v.diagnostic);
  int m = static_cast<int>(basis.head.size());
  while (true) {
    Int bound = pow_int(basis.p, m);
    Int sum = 0;
    for (int k = 0; k < m; ++k) sum += (basis.p - 2) * basis.b(k);
    if (sum < bound) return m;
    ++m;
    if (m > 60) throw std::overflow_error("basis truncation level overflow");
  }
}

APWitness cover_witness_digits(Int x, const Basis& basis, int m) {
  BasisValidation v = validate_basis(basis);
  if (!v.valid)
    throw std::invalid_argument("cover_witness_digits: basis fails theorem "
                                "hypotheses: " + v.diagnostic);
  if (m < basis_truncation_level(basis))
    throw std::invalid_argument(
        "cover_witness_digits: truncation level too small");
  const Int p = basis.p;
  const Int n = pow_int(p, m);
  if (x < 0 || x >= n)
    throw std::invalid_argument("cover_witness_digits: x outside {0,...,N-1}");

  // head digit sums below the truncation level form the modular set
  Basis truncated{std::vector<Int>(), basis.tail_start, basis.p};
  truncated.head.assign(basis.head.begin(), basis.head.end());
  std::vector<Int> sums;
  {
    Basis full = basis;
    std::vector<Int> all;
    // sums over indices < m: digits elsewhere zero
    std::vector<Int> stack{0};
    for (int k = 0; k < m; ++k) {
      std::vector<Int> next;
      next.reserve(stack.size() * static_cast<std::size_t>(p - 1));
      for (Int s : stack)
        for (Int d = 0; d <= p - 2; ++d) next.push_back(s + d * full.b(k));
      stack = std::move(next);
    }
    sums = std::move(stack);
  }
  std::sort(sums.begin(), sums.end());
  if (std::binary_search(sums.begin(), sums.end(), x))
    throw std::invalid_argument(
        "cover_witness_digits: x is itself a head digit sum");

  // fix base-p digits of the progression endpoint from position 0 upward
  std::vector<Int> elements(static_cast<std::size_t>(p - 1), 0);
  Int endpoint = 0;  // = y_{p-2} + d once digits are placed
  Int diff = 0;
  Int pj = 1;
  for (int j = 0; j < m; ++j, pj *= p) {
    Int u = (basis.b(j) / pj) % p;
    Int want = (x / pj) % p;
    Int have = (endpoint / pj) % p;
    Int delta = ((want - have) % p + p) % p;
    Int t = delta * mod_inverse(u, p) % p;
    if (t <= p - 2) {
      for (Int i = 0; i < p - 1; ++i) elements[i] += t * basis.b(j);
      endpoint += t * basis.b(j);
    } else {
      for (Int i = 0; i < p - 1; ++i) elements[i] += i * basis.b(j);
      endpoint += (p - 1) * basis.b(j);
      diff += basis.b(j);
    }
  }

  if (diff == 0 || endpoint % n != x % n)
    throw std::logic_error("cover_witness_digits: construction failed");

  APWitness w;
  w.elements = elements;
  w.elements.push_back(x);
  w.difference = diff % n;
  w.modulus = n;
  // direct congruence check of the whole progression
  for (std::size_t i = 0; i + 1 < w.elements.size(); ++i) {
    Int lhs = (w.elements[i] + w.difference) % n;
    if (lhs != w.elements[i + 1] % n)
      throw std::logic_error("cover_witness_digits: progression check failed");
  }
  return w;
}

Completion complete(const std::vector<Int>& set) {
  std::vector<Int> v = set;
  std::sort(v.begin(), v.end());
  v.erase(std::unique(v.begin(), v.end()), v.end());
  if (v.size() != set.size())
    throw std::invalid_argument("complete: repeated elements");
  if (v.empty() || v.front() != 0)
    throw std::invalid_argument("complete: set must contain 0");
  if (v.size() < 2) throw std::invalid_argument("complete: need 0 < a_1");

  std::vector<Int> a(v.begin() + 1, v.end());
  const Int an = a.back();
  std::vector<int> valuations;
  for (Int x : a) valuations.push_back(nu_p(x, 3));
  std::vector<int> sorted_val = valuations;
  std::sort(sorted_val.begin(), sorted_val.end());
  if (std::adjacent_find(sorted_val.begin(), sorted_val.end()) !=
      sorted_val.end())
    throw std::invalid_argument("complete: nu_3 valuations must be distinct");
  if (a.size() >= 2 && a[0] + a[1] <= an)
    throw std::invalid_argument("complete: requires a_1 + a_2 > a_n");

  Int c = an + 1;
  while (c % 3 == 0) ++c;

  Basis basis;
  basis.p = 3;
  Int p3 = 1;
  for (int j = 0;; ++j, p3 *= 3) {
    if (p3 > an) {
      basis.tail_start = p3;
      break;
    }
    auto it = std::find(valuations.begin(), valuations.end(), j);
    if (it != valuations.end())
      basis.head.push_back(a[static_cast<std::size_t>(
          std::distance(valuations.begin(), it))]);
    else
      basis.head.push_back(c * p3);
  }
  // canonical form: fold trailing pure powers of 3 into the tail
  while (!basis.head.empty()) {
    Int pk = pow_int(3, static_cast<int>(basis.head.size()) - 1);
    if (basis.head.back() != pk) break;
    basis.head.pop_back();
    basis.tail_start = pk;
  }

  BasisValidation bv = validate_basis(basis);
  if (!bv.valid)
    throw std::logic_error("complete: built basis fails validation: " +
                           bv.diagnostic);

  // prefix check: the basic sequence must start with the input set
  std::vector<Int> prefix = basis_sequence(basis, v.size());
  if (prefix != v)
    throw std::logic_error(
        "complete: completion does not extend the input prefix "
        "(theorem contradiction)");

  // generators: sums over the first kappa indices, where the tail dominates
  int kappa = 0;
  {
    Int sum = 0;
    for (int k = 0;; ++k) {
      if (basis.b(k) < sum) kappa = k + 1;
      sum += basis.b(k);
      if (basis.b(k) > sum - basis.b(k) && basis.b(k + 1) >= sum) {
        // geometric tail keeps dominating from here on
        if (k + 1 >= static_cast<int>(basis.head.size())) break;
      }
      if (k > 60) throw std::overflow_error("complete: kappa search overflow");
    }
  }
  std::size_t gen_count = 1;
  for (int i = 0; i < kappa; ++i) gen_count *= 2;
  Completion result;
  result.basis = basis;
  result.generators = basis_sequence(basis, gen_count);
  return result;
}

ModularSet scale_basic(const ModularSet& a, Int alpha, const Basis& basis) {
  BasisValidation bv = validate_basis(basis);
  if (!bv.valid)
    throw std::invalid_argument("scale_basic: basis fails theorem hypotheses: " +
                                bv.diagnostic);
  if (basis.p != a.p) throw std::invalid_argument("scale_basic: mismatched p");
  if (alpha < 1) throw std::invalid_argument("alpha must be positive");
  if (std::gcd(alpha, a.modulus) != 1)
    throw std::invalid_argument("alpha must be coprime to the modulus");
  if (!verify_modular_set(a).valid)
    throw std::invalid_argument("scale_basic: input is not a modular set");

  for (int level = basis_truncation_level(basis);; ++level) {
    Int new_modulus = pow_int(a.p, level);
    if (new_modulus > (Int{1} << 62) / a.modulus)
      throw std::overflow_error("scale_basic: modulus overflow");
    new_modulus *= a.modulus;

    std::size_t block = 1;
    for (int i = 0; i < level; ++i) {
      block *= static_cast<std::size_t>(a.p - 1);
      if (block > (std::size_t{1} << 22))
        throw HorizonError("scale_basic: no verifying level in range");
    }
    std::vector<Int> tiles = basis_sequence(basis, block);

    std::vector<Int> candidate;
    candidate.reserve(a.residues.size() * tiles.size());
    for (Int t : tiles)
      for (Int r : a.residues) candidate.push_back(alpha * r + a.modulus * t);
    std::sort(candidate.begin(), candidate.end());

    if (candidate.back() >= new_modulus) continue;
    if (verify_modular_set(candidate, new_modulus, a.p).valid)
      return ModularSet{std::move(candidate), new_modulus, a.p};
    if (level > 40) throw HorizonError("scale_basic: no verifying level found");
  }
}

}  // namespace stanley
