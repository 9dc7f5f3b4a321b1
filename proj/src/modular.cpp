#include "stanley/modular.hpp"

#include <algorithm>
#include <chrono>
#include <numeric>

#include "stanley/structure.hpp"

namespace stanley {

namespace {

Int mod(Int x, Int n) {
  Int r = x % n;
  return r < 0 ? r + n : r;
}

void require_valid(const ModularSet& m, const char* who) {
  VerificationReport r = verify_modular_set(m);
  if (!r.valid)
    throw std::invalid_argument(std::string(who) +
                                ": input is not a modular set");
}

Int checked_pow_times(Int base, int exp, Int factor) {
  Int v = factor;
  for (int i = 0; i < exp; ++i) {
    if (v > (Int{1} << 62) / base) throw std::overflow_error("modulus overflow");
    v *= base;
  }
  return v;
}

}  // namespace

VerificationReport verify_modular_set(const std::vector<Int>& residues, Int n,
                                      int p) {
  auto start = std::chrono::steady_clock::now();
  require_odd_prime(p);
  if (n < 1) throw std::invalid_argument("modulus must be >= 1");
  if (std::find(residues.begin(), residues.end(), Int{0}) == residues.end())
    throw MissingZeroError("a modular set must contain 0");

  VerificationReport report;
  report.freeness_witness = p_free_mod(residues, n, p);

  std::vector<bool> in(static_cast<std::size_t>(n), false);
  for (Int r : residues) in[static_cast<std::size_t>(r)] = true;

  std::vector<bool> cov(static_cast<std::size_t>(n), false);
  if (p == 3) {
    for (Int z : residues)
      for (Int y : residues)
        if (z != y) cov[static_cast<std::size_t>(mod(2 * y - z, n))] = true;
  } else {
    // mark the endpoint of every (p-1)-term progression of distinct residues
    for (Int a : residues) {
      for (Int d = 1; d < n; ++d) {
        bool degenerate = false;
        for (int k = 1; k <= p - 2; ++k) {
          if (mod(static_cast<Int>(k) * d, n) == 0) {
            degenerate = true;
            break;
          }
        }
        if (degenerate) continue;
        bool run = true;
        for (int i = 1; i < p - 1; ++i) {
          if (!in[static_cast<std::size_t>(mod(a + i * d, n))]) {
            run = false;
            break;
          }
        }
        if (run)
          cov[static_cast<std::size_t>(mod(a + (p - 1) * d, n))] = true;
      }
    }
  }

  for (Int x = 0; x < n; ++x) {
    if (!in[static_cast<std::size_t>(x)] && !cov[static_cast<std::size_t>(x)])
      report.uncovered.push_back(x);
  }
  report.valid = !report.freeness_witness && report.uncovered.empty();
  report.seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
          .count();
  return report;
}

Int sp0_term(Int n, int p) {
  Int value = 0;
  Int scale = 1;
  while (n > 0) {
    value += (n % (p - 1)) * scale;
    n /= (p - 1);
    if (scale > (Int{1} << 60) / p) throw std::overflow_error("sp0_term overflow");
    scale *= p;
  }
  return value;
}

Sequence expand(const ModularSet& m, std::size_t count) {
  require_valid(m, "expand");
  std::vector<Int> a = m.residues;
  std::sort(a.begin(), a.end());

  Sequence out;
  out.p = m.p;
  out.generators = a;
  out.terms.reserve(count);
  for (Int q = 0; out.terms.size() < count; ++q) {
    Int base = m.modulus * sp0_term(q, m.p);
    for (Int r : a) {
      out.terms.push_back(base + r);
      if (out.terms.size() == count) break;
    }
  }
  return out;
}

ModularSet scale(const ModularSet& m, Int alpha) {
  if (alpha < 1) throw std::invalid_argument("alpha must be positive");
  if (std::gcd(alpha, m.modulus) != 1)
    throw std::invalid_argument("alpha must be coprime to the modulus");
  require_valid(m, "scale");

  for (int level = 0;; ++level) {
    Int new_modulus = checked_pow_times(m.p, level, m.modulus);
    std::size_t block = 1;
    for (int i = 0; i < level; ++i) block *= static_cast<std::size_t>(m.p - 1);

    std::vector<Int> candidate;
    candidate.reserve(m.residues.size() * block);
    for (std::size_t q = 0; q < block; ++q) {
      Int base = m.modulus * sp0_term(static_cast<Int>(q), m.p);
      for (Int r : m.residues) candidate.push_back(alpha * r + base);
    }
    std::sort(candidate.begin(), candidate.end());

    if (candidate.back() >= new_modulus) continue;
    if (verify_modular_set(candidate, new_modulus, m.p).valid)
      return ModularSet{std::move(candidate), new_modulus, m.p};
    if (level > 40) throw HorizonError("scale: no verifying level found");
  }
}

ModularSet product(const ModularSet& a, const ModularSet& b) {
  if (a.p != b.p) throw std::invalid_argument("product requires matching p");
  require_valid(a, "product");
  require_valid(b, "product");

  if (a.modulus > (Int{1} << 62) / std::max<Int>(b.modulus, 1))
    throw std::overflow_error("product modulus overflow");
  std::vector<Int> residues;
  residues.reserve(a.residues.size() * b.residues.size());
  for (Int y : b.residues)
    for (Int x : a.residues) residues.push_back(x + a.modulus * y);
  std::sort(residues.begin(), residues.end());

  ModularSet out{std::move(residues), a.modulus * b.modulus, a.p};
  if (!verify_modular_set(out).valid)
    throw std::logic_error("product failed re-verification");
  return out;
}

Int omega(const std::vector<Int>& generators, int p,
          const OmegaOptions& options) {
  GreedyGenerator gen(generators, p);
  Int candidate = -1;
  Int settled_to = -1;  // values <= settled_to have been classified

  while (true) {
    for (int i = 0; i < 256 && gen.terms().size() < options.max_terms; ++i)
      gen.extend();
    Int frontier = gen.sieve().last_term();
    for (Int x = settled_to + 1; x <= frontier; ++x) {
      if (!gen.sieve().member(x) && !gen.sieve().covered(x)) candidate = x;
    }
    settled_to = frontier;
    if (frontier - std::max<Int>(candidate, -1) >= options.window)
      return candidate;
    if (gen.terms().size() >= options.max_terms)
      throw HorizonError("omega: horizon exceeded before a stable window");
  }
}

ModularSet independent_to_modular(const Sequence& seq, int kappa_hint) {
  auto report = detect_independent(seq);
  if (!report)
    throw std::invalid_argument(
        "independent_to_modular: sequence not detected independent");
  if (kappa_hint >= 0 && report->k0 != kappa_hint)
    throw std::invalid_argument("independent_to_modular: kappa mismatch");

  Int rho = report->repeat_factor;
  // omega participates through the window hint; level selection is gated on
  // re-verification, which subsumes the proof's sufficient bounds.
  OmegaOptions opts;
  opts.window = std::max<Int>(rho * seq.p, 1000);
  omega(seq.generators, seq.p, opts);

  GreedyGenerator gen(seq.generators, seq.p);
  for (int level = 0;; ++level) {
    Int n = checked_pow_times(seq.p, level, rho);
    gen.extend_past_value(n);
    std::vector<Int> prefix;
    for (Int t : gen.terms()) {
      if (t >= n) break;
      prefix.push_back(t);
    }
    if (verify_modular_set(prefix, n, seq.p).valid)
      return ModularSet{std::move(prefix), n, seq.p};
    if (level > 40)
      throw HorizonError("independent_to_modular: no verifying level found");
  }
}

}  // namespace stanley
