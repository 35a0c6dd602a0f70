#ifndef FINLOC_TESTS_FIXTURES_COMMON_HPP
#define FINLOC_TESTS_FIXTURES_COMMON_HPP

#include <vector>

#include "finloc/lattice.hpp"

namespace finloc::testfx {

/// Diamond M3: bottom, three incomparable middles, top. Smallest modular
/// nondistributive lattice.
inline FiniteLattice m3() {
  return FiniteLattice::from_leq({"0", "a", "b", "c", "1"}, [](int x, int y) {
    if (x == y) return true;
    if (x == 0) return true;
    if (y == 4) return true;
    return false;
  });
}

/// Pentagon N5: 0 < a < c < 1 and 0 < b < 1 with b incomparable to a, c.
inline FiniteLattice n5() {
  return FiniteLattice::from_leq({"0", "a", "c", "b", "1"}, [](int x, int y) {
    if (x == y) return true;
    if (x == 0) return true;
    if (y == 4) return true;
    if (x == 1 && y == 2) return true;  // a < c
    return false;
  });
}

/// Product of chains 2x3: distributive, not Boolean, six elements.
inline FiniteLattice chain2x3() {
  std::vector<std::string> labels;
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 3; ++j) labels.push_back("(" + std::to_string(i) + "," + std::to_string(j) + ")");
  return FiniteLattice::from_leq(labels, [](int x, int y) {
    int xi = x / 3, xj = x % 3, yi = y / 3, yj = y % 3;
    return xi <= yi && xj <= yj;
  });
}

/// Frame fixtures small enough for exhaustive quantification.
inline std::vector<LatticePtr> frame_fixtures() {
  std::vector<LatticePtr> out;
  for (int k = 0; k <= 4; ++k) out.push_back(make_lattice(FiniteLattice::powerset(k)));
  for (int n = 1; n <= 5; ++n) out.push_back(make_lattice(FiniteLattice::chain(n)));
  out.push_back(make_lattice(chain2x3()));
  return out;
}

inline std::vector<LatticePtr> all_lattice_fixtures() {
  auto out = frame_fixtures();
  out.push_back(make_lattice(m3()));
  out.push_back(make_lattice(n5()));
  return out;
}

}  // namespace finloc::testfx

#endif
