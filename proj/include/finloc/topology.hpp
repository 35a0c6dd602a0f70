#ifndef FINLOC_TOPOLOGY_HPP
#define FINLOC_TOPOLOGY_HPP

#include <algorithm>
#include <string>
#include <vector>

#include "finloc/core.hpp"

namespace finloc {

/**
 * A topology on a finite point set, stored extensionally as the family of
 * open sets. Closure under arbitrary unions and finite intersections
 * reduces to closure under the binary operations plus the bounds on a
 * finite carrier.
 */
class FiniteTopSpace {
 public:
  static FiniteTopSpace make(int npoints, std::vector<Mask> opens,
                             std::vector<std::string> labels = {}) {
    if (npoints < 0 || npoints > 20)
      throw Error(Errc::BoundExceeded, "topology carrier out of range");
    FiniteTopSpace T;
    T.n_ = npoints;
    T.labels_ = std::move(labels);
    std::sort(opens.begin(), opens.end());
    opens.erase(std::unique(opens.begin(), opens.end()), opens.end());
    const Mask full = full_mask(npoints);
    for (Mask m : opens)
      if (m & ~full)
        throw Error(Errc::ValidationError, "open set is not a subset of the carrier",
                    std::to_string(m));
    auto has = [&](Mask m) { return std::binary_search(opens.begin(), opens.end(), m); };
    if (!has(0)) throw Error(Errc::ValidationError, "topology misses the empty set");
    if (!has(full)) throw Error(Errc::ValidationError, "topology misses the full carrier");
    for (Mask a : opens)
      for (Mask b : opens) {
        if (!has(a | b))
          throw Error(Errc::ValidationError, "opens not closed under union",
                      T.set_label(a) + "," + T.set_label(b));
        if (!has(a & b))
          throw Error(Errc::ValidationError, "opens not closed under intersection",
                      T.set_label(a) + "," + T.set_label(b));
      }
    T.opens_ = std::move(opens);
    return T;
  }

  static FiniteTopSpace discrete(int npoints) {
    std::vector<Mask> opens;
    for (Mask m = 0; m <= full_mask(npoints) && npoints > 0; ++m) opens.push_back(m);
    if (npoints == 0) opens.push_back(0);
    return make(npoints, std::move(opens));
  }

  static FiniteTopSpace indiscrete(int npoints) {
    std::vector<Mask> opens{0};
    if (npoints > 0) opens.push_back(full_mask(npoints));
    return make(npoints, std::move(opens));
  }

  /// Two points; {1} open, {0} closed.
  static FiniteTopSpace sierpinski() { return make(2, {0, 0b10, 0b11}); }

  int points() const { return n_; }
  const std::vector<Mask>& opens() const { return opens_; }
  Mask full() const { return full_mask(n_); }

  bool is_open_set(Mask m) const {
    return std::binary_search(opens_.begin(), opens_.end(), m);
  }
  bool is_closed_set(Mask m) const { return is_open_set(full() & ~m); }

  /// Largest open subset.
  Mask interior(Mask a) const {
    Mask r = 0;
    for (Mask u : opens_)
      if ((u & ~a) == 0) r |= u;
    return r;
  }

  /// Smallest closed superset.
  Mask closure(Mask a) const { return full() & ~interior(full() & ~a); }

  /// Interior of the closure is empty.
  bool is_rare(Mask a) const { return interior(closure(a)) == 0; }

  bool is_clopen_set(Mask m) const { return is_open_set(m) && is_closed_set(m); }

  /// All rare subsets (downward closed by construction).
  std::vector<Mask> rare_sets() const {
    std::vector<Mask> out;
    for (Mask a = 0; a <= full(); ++a) {
      if (is_rare(a)) out.push_back(a);
      if (full() == 0) break;
    }
    return out;
  }

  /// Finite unions of rare sets.
  std::vector<Mask> meager_sets() const {
    std::vector<Mask> rare = rare_sets();
    std::vector<std::uint8_t> seen(std::size_t{1} << n_, 0);
    std::vector<Mask> frontier;
    for (Mask r : rare)
      if (!seen[r]) {
        seen[r] = 1;
        frontier.push_back(r);
      }
    // Close under binary unions to saturation.
    for (std::size_t i = 0; i < frontier.size(); ++i)
      for (Mask r : rare) {
        Mask u = frontier[i] | r;
        if (!seen[u]) {
          seen[u] = 1;
          frontier.push_back(u);
        }
      }
    std::sort(frontier.begin(), frontier.end());
    return frontier;
  }

  std::string point_label(int i) const {
    return i < static_cast<int>(labels_.size()) ? labels_[i] : std::to_string(i);
  }

  std::string set_label(Mask m) const {
    std::string s = "{";
    bool first = true;
    for (int i = 0; i < n_; ++i) {
      if (!mask_test(m, i)) continue;
      if (!first) s += ",";
      first = false;
      s += point_label(i);
    }
    return s + "}";
  }

  friend bool operator==(const FiniteTopSpace& a, const FiniteTopSpace& b) {
    return a.n_ == b.n_ && a.opens_ == b.opens_;
  }

 private:
  FiniteTopSpace() = default;
  int n_ = 0;
  std::vector<Mask> opens_;
  std::vector<std::string> labels_;
};

}  // namespace finloc

#endif  // FINLOC_TOPOLOGY_HPP
