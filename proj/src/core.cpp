#include "stanley/core.hpp"

#include <algorithm>
#include <limits>

namespace stanley {

namespace {

std::vector<Int> sorted_unique(std::vector<Int> v) {
  std::sort(v.begin(), v.end());
  v.erase(std::unique(v.begin(), v.end()), v.end());
  return v;
}

void require_residues(const std::vector<Int>& a, Int n) {
  if (n < 1) throw std::invalid_argument("modulus must be >= 1");
  for (Int r : a) {
    if (r < 0 || r >= n)
      throw std::invalid_argument("residue " + std::to_string(r) +
                                  " outside {0,...," + std::to_string(n - 1) +
                                  "}");
  }
}

Int mod(Int x, Int n) {
  Int r = x % n;
  return r < 0 ? r + n : r;
}

}  // namespace

NotPFreeError::NotPFreeError(APWitness w)
    : std::invalid_argument("generator set contains a p-term progression"),
      witness(std::move(w)) {}

bool is_odd_prime(Int p) {
  if (p < 3 || p % 2 == 0) return false;
  for (Int d = 3; d * d <= p; d += 2)
    if (p % d == 0) return false;
  return true;
}

void require_odd_prime(Int p) {
  if (!is_odd_prime(p))
    throw std::invalid_argument("p must be an odd prime, got " +
                                std::to_string(p));
}

int nu_p(Int x, Int p) {
  if (x <= 0 || p < 2) throw std::invalid_argument("nu_p requires x > 0, p >= 2");
  int k = 0;
  while (x % p == 0) {
    x /= p;
    ++k;
  }
  return k;
}

std::optional<APWitness> find_p_ap(const std::vector<Int>& set, int p) {
  require_odd_prime(p);
  std::vector<Int> v = sorted_unique(set);
  if (v.empty()) return std::nullopt;
  if (v.front() < 0) throw std::invalid_argument("set elements must be >= 0");
  if (static_cast<int>(v.size()) < p) return std::nullopt;

  std::vector<bool> in(static_cast<std::size_t>(v.back()) + 1, false);
  for (Int x : v) in[static_cast<std::size_t>(x)] = true;

  for (Int top : v) {
    Int dmax = top / (p - 1);
    for (Int d = 1; d <= dmax; ++d) {
      bool hit = true;
      for (int i = 1; i < p; ++i) {
        if (!in[static_cast<std::size_t>(top - i * d)]) {
          hit = false;
          break;
        }
      }
      if (hit) {
        APWitness w;
        for (int i = p - 1; i >= 0; --i) w.elements.push_back(top - i * d);
        w.difference = d;
        return w;
      }
    }
  }
  return std::nullopt;
}

std::optional<APWitness> is_covered(Int x, const std::vector<Int>& set, int p) {
  require_odd_prime(p);
  if (x < 0) throw std::invalid_argument("is_covered requires x >= 0");
  std::vector<Int> v = sorted_unique(set);
  if (v.empty()) return std::nullopt;
  if (v.front() < 0) throw std::invalid_argument("set elements must be >= 0");

  Int last = v.back();
  std::vector<bool> in(static_cast<std::size_t>(last) + 1, false);
  for (Int t : v) in[static_cast<std::size_t>(t)] = true;

  Int dmax = x / (p - 1);
  for (Int d = std::max<Int>(1, x - last); d <= dmax; ++d) {
    bool hit = true;
    for (int i = 1; i < p; ++i) {
      Int e = x - i * d;
      if (e > last || !in[static_cast<std::size_t>(e)]) {
        hit = false;
        break;
      }
    }
    if (hit) {
      APWitness w;
      for (int i = p - 1; i >= 1; --i) w.elements.push_back(x - i * d);
      w.elements.push_back(x);
      w.difference = d;
      return w;
    }
  }
  return std::nullopt;
}

std::optional<APWitness> is_covered_mod(Int x, const std::vector<Int>& residues,
                                        Int n, int p) {
  require_odd_prime(p);
  require_residues(residues, n);
  if (x < 0 || x >= n) throw std::invalid_argument("x must lie in {0,...,n-1}");

  std::vector<bool> in(static_cast<std::size_t>(n), false);
  for (Int r : residues) in[static_cast<std::size_t>(r)] = true;

  for (Int d = 1; d < n; ++d) {
    // the p-1 set elements must be pairwise distinct residues
    bool degenerate = false;
    for (int k = 1; k <= p - 2; ++k) {
      if (mod(static_cast<Int>(k) * d, n) == 0) {
        degenerate = true;
        break;
      }
    }
    if (degenerate) continue;
    bool hit = true;
    for (int i = 1; i < p; ++i) {
      if (!in[static_cast<std::size_t>(mod(x - i * d, n))]) {
        hit = false;
        break;
      }
    }
    if (hit) {
      APWitness w;
      for (int i = p - 1; i >= 1; --i) w.elements.push_back(mod(x - i * d, n));
      w.elements.push_back(x);
      w.difference = d;
      w.modulus = n;
      return w;
    }
  }
  return std::nullopt;
}

std::optional<APWitness> p_free_mod(const std::vector<Int>& residues, Int n,
                                    int p) {
  require_odd_prime(p);
  require_residues(residues, n);

  std::vector<bool> in(static_cast<std::size_t>(n), false);
  for (Int r : residues) in[static_cast<std::size_t>(r)] = true;
  std::vector<Int> v = sorted_unique(residues);

  for (Int a : v) {
    for (Int d = 1; d < n; ++d) {
      bool hit = true;
      for (int i = 1; i < p; ++i) {
        if (!in[static_cast<std::size_t>(mod(a + i * d, n))]) {
          hit = false;
          break;
        }
      }
      if (hit) {
        APWitness w;
        for (int i = 0; i < p; ++i) w.elements.push_back(mod(a + i * d, n));
        w.difference = d;
        w.modulus = n;
        return w;
      }
    }
  }
  return std::nullopt;
}

CoverageSieve::CoverageSieve(int p) : p_(p) { require_odd_prime(p); }

void CoverageSieve::ensure_cover_capacity(std::size_t index) {
  // grow when the marked region reaches 7/8 of the allocation
  if (index + 1 > cover_.size() || (index + 1) * 8 > cover_.size() * 7) {
    std::size_t want = std::max<std::size_t>(1024, (index + 1) * 2);
    if (want > cover_.size()) cover_.resize(want, false);
  }
}

void CoverageSieve::add_term(Int t) {
  if (t < 0) throw std::invalid_argument("terms must be >= 0");
  if (!terms_.empty() && t <= terms_.back())
    throw std::invalid_argument("terms must be added in increasing order");

  if (members_.size() <= static_cast<std::size_t>(t))
    members_.resize(static_cast<std::size_t>(t) * 2 + 16, false);
  members_[static_cast<std::size_t>(t)] = true;

  if (p_ == 3) {
    ensure_cover_capacity(static_cast<std::size_t>(2 * t));
    for (Int s : terms_) cover_[static_cast<std::size_t>(2 * t - s)] = true;
  }
  terms_.push_back(t);
}

bool CoverageSieve::member(Int x) const {
  return x >= 0 && static_cast<std::size_t>(x) < members_.size() &&
         members_[static_cast<std::size_t>(x)];
}

bool CoverageSieve::covered(Int x) const {
  if (x < 0 || terms_.empty()) return false;
  if (p_ == 3) {
    return static_cast<std::size_t>(x) < cover_.size() &&
           cover_[static_cast<std::size_t>(x)];
  }
  Int last = terms_.back();
  Int dmax = x / (p_ - 1);
  for (Int d = std::max<Int>(1, x - last); d <= dmax; ++d) {
    bool hit = true;
    for (int i = 1; i < p_; ++i) {
      if (!member(x - i * d)) {
        hit = false;
        break;
      }
    }
    if (hit) return true;
  }
  return false;
}

Int CoverageSieve::frontier() const {
  return terms_.empty() ? -1 : (p_ - 1) * terms_.back();
}

GreedyGenerator::GreedyGenerator(std::vector<Int> generators, int p)
    : sieve_(p) {
  std::vector<Int> g = sorted_unique(generators);
  if (g.empty()) throw std::invalid_argument("generator set must be nonempty");
  if (g.size() != generators.size())
    throw std::invalid_argument("generator set has repeated elements");
  if (g.front() < 0) throw std::invalid_argument("generators must be >= 0");
  if (auto w = find_p_ap(g, p)) throw NotPFreeError(*w);
  generators_ = g;
  for (Int t : g) sieve_.add_term(t);
}

Int GreedyGenerator::extend() {
  Int c = sieve_.last_term() + 1;
  while (sieve_.covered(c)) ++c;
  sieve_.add_term(c);
  return c;
}

void GreedyGenerator::extend_to_count(std::size_t count) {
  while (terms().size() < count) extend();
}

void GreedyGenerator::extend_past_value(Int value) {
  while (sieve_.last_term() <= value) extend();
}

Sequence GreedyGenerator::snapshot(std::size_t count) const {
  if (count > terms().size())
    throw std::invalid_argument("snapshot larger than generated prefix");
  Sequence s;
  s.terms.assign(terms().begin(), terms().begin() + count);
  s.generators = generators_;
  s.p = sieve_.p();
  return s;
}

Sequence greedy_stanley(const std::vector<Int>& generators, int p,
                        std::size_t count) {
  GreedyGenerator gen(generators, p);
  if (count < gen.generators().size())
    throw std::invalid_argument("count must be at least |A|");
  gen.extend_to_count(count);
  return gen.snapshot(count);
}

}  // namespace stanley
