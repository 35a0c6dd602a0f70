#ifndef FINLOC_FIXTURES_HPP
#define FINLOC_FIXTURES_HPP

#include <random>
#include <set>
#include <tuple>
#include <vector>

#include "finloc/ems.hpp"
#include "finloc/valuation.hpp"

namespace finloc {

/**
 * Deterministic RNG for the property harness. mt19937_64 is fully
 * specified, so identical seeds give identical streams on every platform;
 * draws go through explicit modulo reduction instead of the
 * implementation-defined standard distributions.
 */
struct Rng {
  std::mt19937_64 eng;
  explicit Rng(std::uint64_t seed) : eng(seed) {}
  std::uint64_t next() { return eng(); }
  std::uint64_t below(std::uint64_t n) { return n == 0 ? 0 : next() % n; }
  long range(long lo, long hi) {
    return lo + static_cast<long>(below(static_cast<std::uint64_t>(hi - lo + 1)));
  }
};

/// Uniform draw from the bounded rational grid {p/q : |p| ≤ max_num, 1 ≤ q ≤ max_den}.
inline Rat random_grid_rat(Rng& rng, long max_num = 12, long max_den = 4) {
  return Rat(rng.range(-max_num, max_num), rng.range(1, max_den));
}

inline CRat random_grid_crat(Rng& rng, long max_num = 12, long max_den = 4) {
  return CRat(random_grid_rat(rng, max_num, max_den), random_grid_rat(rng, max_num, max_den));
}

/// Atom weights from the grid, extended additively; on a finite Boolean
/// algebra every valuation arises this way.
inline Valuation random_real_valuation(LatticePtr L, Rng& rng) {
  std::vector<CRat> w;
  for (std::size_t i = 0; i < L->atoms().size(); ++i)
    w.push_back(CRat(random_grid_rat(rng)));
  return Valuation::from_atom_weights(std::move(L), w);
}

inline Valuation random_complex_valuation(LatticePtr L, Rng& rng) {
  std::vector<CRat> w;
  for (std::size_t i = 0; i < L->atoms().size(); ++i) w.push_back(random_grid_crat(rng));
  return Valuation::from_atom_weights(std::move(L), w);
}

namespace detail {

/// All set partitions of {0..n-1} as block lists, via restricted growth
/// strings; deterministic order.
inline std::vector<std::vector<Mask>> set_partitions(int n) {
  std::vector<std::vector<Mask>> out;
  if (n == 0) {
    out.push_back({});
    return out;
  }
  std::vector<int> rgs(n, 0);
  for (;;) {
    int blocks = 0;
    for (int i = 0; i < n; ++i) blocks = std::max(blocks, rgs[i] + 1);
    std::vector<Mask> part(blocks, 0);
    for (int i = 0; i < n; ++i) part[rgs[i]] |= Mask{1} << i;
    out.push_back(part);
    // next RGS
    int i = n - 1;
    for (; i > 0; --i) {
      int maxprev = 0;
      for (int j = 0; j < i; ++j) maxprev = std::max(maxprev, rgs[j]);
      if (rgs[i] <= maxprev) {
        ++rgs[i];
        for (int j = i + 1; j < n; ++j) rgs[j] = 0;
        break;
      }
    }
    if (i == 0) break;
  }
  return out;
}

inline EmsPtr ems_from_partition(int n, const std::vector<Mask>& blocks, Mask null_blocks_union) {
  // M = unions of blocks, N = all subsets of the negligible union.
  std::vector<Mask> M;
  for (Mask sel = 0; sel < (Mask{1} << blocks.size()); ++sel) {
    Mask m = 0;
    for (std::size_t b = 0; b < blocks.size(); ++b)
      if (mask_test(sel, static_cast<int>(b))) m |= blocks[b];
    M.push_back(m);
    if (blocks.empty()) break;
  }
  std::vector<Mask> N = submasks(null_blocks_union);
  return make_ems(n, std::move(M), std::move(N));
}

}  // namespace detail

/**
 * Exhaustive stream of enhanced measurable spaces on at most max_points
 * points, deduplicated up to carrier bijection. A finite σ-algebra is the
 * block algebra of a partition and completeness forces negligible sets to
 * be unions of singleton blocks, so the signature (multiset of block
 * sizes, number of negligible singletons) classifies fixtures up to
 * bijection.
 */
inline std::vector<EmsPtr> enumerate_ems_fixtures(int max_points) {
  if (max_points > 4)
    throw Error(Errc::BoundExceeded, "exhaustive EMS enumeration capped at 4 points");
  std::vector<EmsPtr> out;
  std::set<std::tuple<int, std::vector<int>, int>> seen;
  for (int n = 0; n <= max_points; ++n) {
    for (const auto& part : detail::set_partitions(n)) {
      std::vector<int> sizes;
      std::vector<Mask> singletons;
      for (Mask b : part) {
        sizes.push_back(popcount(b));
        if (popcount(b) == 1) singletons.push_back(b);
      }
      std::sort(sizes.begin(), sizes.end());
      std::sort(singletons.begin(), singletons.end());
      for (std::size_t k = 0; k <= singletons.size(); ++k) {
        if (!seen.insert({n, sizes, static_cast<int>(k)}).second) continue;
        Mask nullu = 0;
        for (std::size_t i = 0; i < k; ++i) nullu |= singletons[i];
        out.push_back(detail::ems_from_partition(n, part, nullu));
      }
    }
  }
  return out;
}

/// Random EMS on exactly n points: random partition, each singleton block
/// negligible with probability 1/2.
inline EmsPtr random_ems(int n, Rng& rng) {
  std::vector<int> rgs(n, 0);
  int maxv = 0;
  for (int i = 1; i < n; ++i) {
    rgs[i] = static_cast<int>(rng.below(static_cast<std::uint64_t>(maxv) + 2));
    maxv = std::max(maxv, rgs[i]);
  }
  int blocks = n == 0 ? 0 : maxv + 1;
  std::vector<Mask> part(blocks, 0);
  for (int i = 0; i < n; ++i) part[rgs[i]] |= Mask{1} << i;
  Mask nullu = 0;
  for (Mask b : part)
    if (popcount(b) == 1 && rng.below(2) == 0) nullu |= b;
  return detail::ems_from_partition(n, part, nullu);
}

/// Random finite measure: grid weights on the atom classes of M/N.
inline Measure random_finite_measure(EmsPtr E, Rng& rng, bool complex_valued) {
  std::vector<CRat> w;
  for (std::size_t i = 0; i < E->class_atoms().size(); ++i)
    w.push_back(complex_valued ? random_grid_crat(rng) : CRat(random_grid_rat(rng)));
  return Measure::from_class_weights(std::move(E), w);
}

/// Every valid premap src → dst, by exhaustive search over domains and
/// tables. Intended for small fixtures.
inline std::vector<PreMap> enumerate_premaps(EmsPtr src, EmsPtr dst) {
  std::vector<PreMap> out;
  const int nx = src->points(), ny = dst->points();
  for (Mask pdom = 0; pdom <= src->full(); ++pdom) {
    if (!src->in_N(src->full() & ~pdom)) {
      if (nx == 0) break;
      continue;
    }
    std::vector<int> idx;
    for (int x = 0; x < nx; ++x)
      if (mask_test(pdom, x)) idx.push_back(x);
    const std::size_t dom = idx.size();
    if (ny == 0 && dom > 0) {
      if (nx == 0) break;
      continue;
    }
    std::uint64_t total = 1;
    for (std::size_t i = 0; i < dom; ++i) total *= static_cast<std::uint64_t>(ny);
    for (std::uint64_t code = 0; code < total; ++code) {
      PreMap f{src, dst, pdom, std::vector<int>(nx, -1)};
      std::uint64_t c = code;
      for (std::size_t i = 0; i < dom; ++i) {
        f.map[idx[i]] = static_cast<int>(c % ny);
        c /= ny;
      }
      if (!premap_violation(f)) out.push_back(std::move(f));
    }
    if (nx == 0) break;
  }
  return out;
}

inline std::vector<LatticePtr> boolean_fixtures(int max_atoms) {
  std::vector<LatticePtr> out;
  for (int k = 0; k <= max_atoms; ++k) out.push_back(make_lattice(FiniteLattice::powerset(k)));
  return out;
}

}  // namespace finloc

#endif  // FINLOC_FIXTURES_HPP
