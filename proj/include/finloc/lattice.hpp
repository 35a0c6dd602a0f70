#ifndef FINLOC_LATTICE_HPP
#define FINLOC_LATTICE_HPP

#include <algorithm>
#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "finloc/core.hpp"

namespace finloc {

/**
 * Structural classification of a finite lattice, computed once at
 * construction by literal quantifier elimination over the elements.
 * At finite scale a frame is the same thing as a distributive lattice.
 */
struct LatticeProfile {
  bool is_lattice = false;
  bool is_distributive = false;
  bool is_boolean = false;
  bool is_frame = false;
  bool is_regular = false;
  bool is_extremally_disconnected = false;
  bool is_boolean_locale = false;
};

class FiniteLattice;
using LatticePtr = std::shared_ptr<const FiniteLattice>;

/**
 * A finite bounded lattice stored intensionally: the order relation as a
 * dense table plus eagerly computed and validated meet/join tables.
 * Construction of a poset that is not a lattice raises a typed error.
 *
 * Values are immutable after construction; all operations are pure and
 * safe for concurrent reads.
 */
class FiniteLattice {
 public:
  /// Builds from an explicit order relation. `leq` must be a partial order
  /// whose every pair has a meet and a join; otherwise throws NotLattice
  /// with a witness pair.
  static FiniteLattice from_leq(std::vector<std::string> labels,
                                const std::function<bool(int, int)>& leq) {
    FiniteLattice L;
    L.labels_ = std::move(labels);
    const int n = static_cast<int>(L.labels_.size());
    L.n_ = n;
    L.leq_.assign(static_cast<std::size_t>(n) * n, 0);
    for (int a = 0; a < n; ++a)
      for (int b = 0; b < n; ++b) L.leq_[a * n + b] = leq(a, b) ? 1 : 0;
    L.finish_construction();
    return L;
  }

  /// Builds from a family of subsets of an ambient finite set, ordered by
  /// inclusion. Elements are sorted by (popcount, mask) so ids are stable.
  /// The family must form a lattice under inclusion (meets and joins need
  /// not be intersections and unions).
  static FiniteLattice from_sets(std::vector<Mask> members, int npoints,
                                 std::vector<std::string> point_labels = {}) {
    std::sort(members.begin(), members.end(), mask_order);
    members.erase(std::unique(members.begin(), members.end()), members.end());
    std::sort(members.begin(), members.end(), mask_order);
    FiniteLattice L;
    L.n_ = static_cast<int>(members.size());
    L.set_backed_ = true;
    L.points_n_ = npoints;
    L.member_masks_ = members;
    L.point_labels_ = std::move(point_labels);
    L.labels_.reserve(members.size());
    for (Mask m : members) L.labels_.push_back(L.set_label(m));
    L.leq_.assign(static_cast<std::size_t>(L.n_) * L.n_, 0);
    for (int a = 0; a < L.n_; ++a)
      for (int b = 0; b < L.n_; ++b)
        L.leq_[a * L.n_ + b] = (members[a] & ~members[b]) == 0 ? 1 : 0;
    L.finish_construction();
    return L;
  }

  /// Boolean algebra 2^k on k named atoms; element ids are the atom masks.
  static FiniteLattice powerset(int k) {
    if (k < 0 || k > 20) throw Error(Errc::BoundExceeded, "powerset arity out of range");
    std::vector<Mask> members;
    members.reserve(std::size_t{1} << k);
    for (Mask m = 0; m < (Mask{1} << k); ++m) members.push_back(m);
    return from_sets(std::move(members), k);
  }

  /// Total order 0 < m1 < ... < 1 with n elements.
  static FiniteLattice chain(int n) {
    if (n < 1) throw Error(Errc::NotLattice, "chain needs at least one element");
    std::vector<std::string> labels(n);
    for (int i = 0; i < n; ++i) {
      if (i == 0)
        labels[i] = "0";
      else if (i == n - 1)
        labels[i] = n == 1 ? "0" : "1";
      else
        labels[i] = n == 3 ? "m" : "m" + std::to_string(i);
    }
    return from_leq(std::move(labels), [](int a, int b) { return a <= b; });
  }

  int size() const { return n_; }
  bool leq(ElemId a, ElemId b) const { return leq_[a * n_ + b] != 0; }
  ElemId meet(ElemId a, ElemId b) const { return meet_[a * n_ + b]; }
  ElemId join(ElemId a, ElemId b) const { return join_[a * n_ + b]; }
  ElemId bottom() const { return bottom_; }
  ElemId top() const { return top_; }
  const std::string& label(ElemId e) const { return labels_[e]; }
  const std::vector<std::string>& labels() const { return labels_; }

  ElemId join_all(const std::vector<ElemId>& es) const {
    ElemId r = bottom_;
    for (ElemId e : es) r = join(r, e);
    return r;
  }
  ElemId meet_all(const std::vector<ElemId>& es) const {
    ElemId r = top_;
    for (ElemId e : es) r = meet(r, e);
    return r;
  }

  /// Elements covering bottom.
  const std::vector<ElemId>& atoms() const { return atoms_; }

  /// Mask of atoms below e (atom i of atoms() is bit i). Meaningful as a
  /// coordinate system only on atomistic lattices, e.g. Boolean algebras.
  Mask atom_mask(ElemId e) const { return atom_mask_[e]; }

  /// An element b with a∧b=0, a∨b=1, if one exists (unique when distributive).
  std::optional<ElemId> complement(ElemId a) const {
    for (ElemId b = 0; b < n_; ++b)
      if (meet(a, b) == bottom_ && join(a, b) == top_) return b;
    return std::nullopt;
  }

  const LatticeProfile& profile() const { return profile_; }

  /// Pseudocomplement table; only present on frames.
  bool has_neg() const { return !neg_.empty(); }
  ElemId neg(ElemId a) const { return neg_[a]; }

  bool is_set_backed() const { return set_backed_; }
  int points() const { return points_n_; }
  Mask member_mask(ElemId e) const { return member_masks_[e]; }
  const std::vector<Mask>& member_masks() const { return member_masks_; }
  std::optional<ElemId> index_of_mask(Mask m) const {
    for (int i = 0; i < n_; ++i)
      if (member_masks_[i] == m) return i;
    return std::nullopt;
  }

  /// Structural equality: same size and same order table.
  friend bool operator==(const FiniteLattice& a, const FiniteLattice& b) {
    return a.n_ == b.n_ && a.leq_ == b.leq_;
  }

 private:
  FiniteLattice() = default;

  static bool mask_order(Mask a, Mask b) {
    int pa = popcount(a), pb = popcount(b);
    return pa != pb ? pa < pb : a < b;
  }

  std::string set_label(Mask m) const {
    std::string s = "{";
    bool first = true;
    for (int i = 0; i < points_n_; ++i) {
      if (!mask_test(m, i)) continue;
      if (!first) s += ",";
      first = false;
      s += i < static_cast<int>(point_labels_.size()) ? point_labels_[i] : std::to_string(i);
    }
    return s + "}";
  }

  void finish_construction() {
    const int n = n_;
    if (n == 0) throw Error(Errc::NotLattice, "empty carrier has no bottom element");
    // Poset axioms.
    for (int a = 0; a < n; ++a)
      if (!leq(a, a)) throw Error(Errc::NotLattice, "order not reflexive", labels_[a]);
    for (int a = 0; a < n; ++a)
      for (int b = 0; b < n; ++b)
        if (a != b && leq(a, b) && leq(b, a))
          throw Error(Errc::NotLattice, "order not antisymmetric", labels_[a] + "," + labels_[b]);
    for (int a = 0; a < n; ++a)
      for (int b = 0; b < n; ++b) {
        if (!leq(a, b)) continue;
        for (int c = 0; c < n; ++c)
          if (leq(b, c) && !leq(a, c))
            throw Error(Errc::NotLattice, "order not transitive",
                        labels_[a] + "," + labels_[b] + "," + labels_[c]);
      }
    // Meet and join tables; unique greatest lower / least upper bounds.
    meet_.assign(static_cast<std::size_t>(n) * n, -1);
    join_.assign(static_cast<std::size_t>(n) * n, -1);
    for (int a = 0; a < n; ++a)
      for (int b = a; b < n; ++b) {
        ElemId m = -1;
        for (int c = 0; c < n; ++c) {
          if (!leq(c, a) || !leq(c, b)) continue;
          if (m == -1 || leq(m, c)) m = c;
        }
        if (m == -1 || ![&] {
              for (int c = 0; c < n; ++c)
                if (leq(c, a) && leq(c, b) && !leq(c, m)) return false;
              return true;
            }())
          throw Error(Errc::NotLattice, "pair has no meet", labels_[a] + "," + labels_[b]);
        ElemId j = -1;
        for (int c = 0; c < n; ++c) {
          if (!leq(a, c) || !leq(b, c)) continue;
          if (j == -1 || leq(c, j)) j = c;
        }
        if (j == -1 || ![&] {
              for (int c = 0; c < n; ++c)
                if (leq(a, c) && leq(b, c) && !leq(j, c)) return false;
              return true;
            }())
          throw Error(Errc::NotLattice, "pair has no join", labels_[a] + "," + labels_[b]);
        meet_[a * n + b] = meet_[b * n + a] = m;
        join_[a * n + b] = join_[b * n + a] = j;
      }
    // Global bounds exist in any finite lattice.
    bottom_ = 0;
    top_ = 0;
    for (int a = 0; a < n; ++a) {
      bottom_ = meet(bottom_, a);
      top_ = join(top_, a);
    }
    atoms_.clear();
    for (int a = 0; a < n; ++a) {
      if (a == bottom_) continue;
      bool covers_bottom = true;
      for (int c = 0; c < n; ++c)
        if (c != bottom_ && c != a && leq(c, a)) covers_bottom = false;
      if (covers_bottom) atoms_.push_back(a);
    }
    atom_mask_.assign(n, 0);
    if (atoms_.size() <= 64)
      for (int e = 0; e < n; ++e)
        for (std::size_t i = 0; i < atoms_.size(); ++i)
          if (leq(atoms_[i], e)) atom_mask_[e] |= Mask{1} << i;
    compute_profile();
  }

  void compute_profile() {
    const int n = n_;
    LatticeProfile p;
    p.is_lattice = true;
    p.is_distributive = true;
    for (int x = 0; x < n && p.is_distributive; ++x)
      for (int y = 0; y < n && p.is_distributive; ++y)
        for (int z = 0; z < n; ++z)
          if (meet(x, join(y, z)) != join(meet(x, y), meet(x, z))) {
            p.is_distributive = false;
            break;
          }
    // A finite distributive lattice has all joins and meet distributes over
    // them, i.e. it is a frame.
    p.is_frame = p.is_distributive;
    p.is_boolean = p.is_distributive;
    for (int a = 0; a < n && p.is_boolean; ++a)
      if (!complement(a)) p.is_boolean = false;
    if (p.is_frame) {
      neg_.assign(n, bottom_);
      for (int x = 0; x < n; ++x) {
        ElemId w = bottom_;
        for (int c = 0; c < n; ++c)
          if (meet(c, x) == bottom_) w = join(w, c);
        neg_[x] = w;
      }
      p.is_boolean_locale = true;
      for (int a = 0; a < n; ++a)
        if (join(a, neg_[a]) != top_) p.is_boolean_locale = false;
      p.is_extremally_disconnected = true;
      for (int x = 0; x < n; ++x)
        if (join(neg_[x], neg_[neg_[x]]) != top_) p.is_extremally_disconnected = false;
      p.is_regular = true;
      for (int y = 0; y < n; ++y) {
        ElemId s = bottom_;
        for (int x = 0; x < n; ++x)
          if (join(neg_[x], y) == top_) s = join(s, x);
        if (s != y) p.is_regular = false;
      }
    }
    profile_ = p;
  }

  int n_ = 0;
  std::vector<std::string> labels_;
  std::vector<std::uint8_t> leq_;
  std::vector<ElemId> meet_, join_;
  std::vector<ElemId> neg_;
  ElemId bottom_ = 0, top_ = 0;
  std::vector<ElemId> atoms_;
  std::vector<Mask> atom_mask_;
  LatticeProfile profile_;
  bool set_backed_ = false;
  int points_n_ = 0;
  std::vector<Mask> member_masks_;
  std::vector<std::string> point_labels_;
};

inline LatticePtr make_lattice(FiniteLattice L) {
  return std::make_shared<const FiniteLattice>(std::move(L));
}

/// Total map between lattice carriers, stored as an element table.
struct LatticeMap {
  LatticePtr src;
  LatticePtr dst;
  std::vector<ElemId> tab;

  ElemId operator()(ElemId e) const { return tab[e]; }

  static LatticeMap identity(LatticePtr L) {
    LatticeMap f{L, L, {}};
    f.tab.resize(L->size());
    for (int i = 0; i < L->size(); ++i) f.tab[i] = i;
    return f;
  }
};

inline LatticeMap compose(const LatticeMap& f, const LatticeMap& g) {
  if (f.dst->size() != g.src->size() || !(*f.dst == *g.src))
    throw Error(Errc::CarrierMismatch, "lattice map composition endpoints differ");
  LatticeMap h{f.src, g.dst, {}};
  h.tab.reserve(f.tab.size());
  for (ElemId e : f.tab) h.tab.push_back(g.tab[e]);
  return h;
}

inline bool maps_equal(const LatticeMap& f, const LatticeMap& g) { return f.tab == g.tab; }

// ---------------------------------------------------------------------------
// Frame-theoretic operations.
// ---------------------------------------------------------------------------

/**
 * Heyting implication x→y = sup{w | w∧x ≤ y}. Requires a frame: on a
 * nondistributive lattice the supremum may violate the defining adjunction,
 * so the call is rejected instead.
 */
inline ElemId heyting(const FiniteLattice& L, ElemId x, ElemId y) {
  if (!L.profile().is_frame)
    throw Error(Errc::NotDistributive, "Heyting implication needs a frame");
  ElemId w = L.bottom();
  for (int c = 0; c < L.size(); ++c)
    if (L.leq(L.meet(c, x), y)) w = L.join(w, c);
  return w;
}

/// ¬x = (x→0) = sup{w | w∧x = 0}.
inline ElemId pseudocomplement(const FiniteLattice& L, ElemId x) {
  if (!L.profile().is_frame)
    throw Error(Errc::NotDistributive, "pseudocomplement needs a frame");
  return L.neg(x);
}

/// Flags recomputed by literal quantifier elimination; see LatticeProfile.
inline LatticeProfile classify(const FiniteLattice& L) { return L.profile(); }

struct MapProfile {
  bool preserves_meets = false;  // binary meets and the empty meet (top)
  bool preserves_joins = false;  // binary joins and the empty join (bottom)
  bool is_open = false;          // infima and Heyting implication
};

/**
 * Checks the frame-map and open-map conditions. Binary meets/joins together
 * with the empty ones imply all finite ones by induction, which is the whole
 * story on a finite carrier; the all-subsets readings are kept as literal
 * oracles in the test suite.
 */
inline MapProfile check_frame_map(const LatticeMap& f) {
  const FiniteLattice& S = *f.src;
  const FiniteLattice& D = *f.dst;
  MapProfile p;
  p.preserves_meets = f(S.top()) == D.top();
  for (int a = 0; a < S.size() && p.preserves_meets; ++a)
    for (int b = 0; b < S.size(); ++b)
      if (f(S.meet(a, b)) != D.meet(f(a), f(b))) {
        p.preserves_meets = false;
        break;
      }
  p.preserves_joins = f(S.bottom()) == D.bottom();
  for (int a = 0; a < S.size() && p.preserves_joins; ++a)
    for (int b = 0; b < S.size(); ++b)
      if (f(S.join(a, b)) != D.join(f(a), f(b))) {
        p.preserves_joins = false;
        break;
      }
  p.is_open = false;
  if (S.profile().is_frame && D.profile().is_frame && p.preserves_meets) {
    p.is_open = true;
    for (int a = 0; a < S.size() && p.is_open; ++a)
      for (int b = 0; b < S.size(); ++b)
        if (f(heyting(S, a, b)) != heyting(D, f(a), f(b))) {
          p.is_open = false;
          break;
        }
  }
  return p;
}

/**
 * The adjoints of a lattice map f: src→dst, when they exist:
 *   upper: dst→src, upper(u) = sup{v | f(v) ≤ u}, with f(v) ≤ u ⟺ v ≤ upper(u);
 *   lower: dst→src, lower(u) = inf{v | u ≤ f(v)}, with lower(u) ≤ v ⟺ u ≤ f(v).
 * A side whose Galois condition fails anywhere is reported absent together
 * with a witness pair (u,v).
 */
struct AdjointResult {
  std::optional<LatticeMap> lower;
  std::optional<LatticeMap> upper;
  std::string lower_witness;
  std::string upper_witness;
  bool frobenius_checked = false;
  bool frobenius_holds = false;
};

inline AdjointResult adjoints(const LatticeMap& f) {
  const FiniteLattice& S = *f.src;
  const FiniteLattice& D = *f.dst;
  AdjointResult r;

  LatticeMap up{f.dst, f.src, std::vector<ElemId>(D.size())};
  for (int u = 0; u < D.size(); ++u) {
    ElemId v = S.bottom();
    for (int c = 0; c < S.size(); ++c)
      if (D.leq(f(c), u)) v = S.join(v, c);
    up.tab[u] = v;
  }
  bool up_ok = true;
  for (int u = 0; u < D.size() && up_ok; ++u)
    for (int v = 0; v < S.size(); ++v)
      if (D.leq(f(v), u) != S.leq(v, up.tab[u])) {
        up_ok = false;
        r.upper_witness = "u=" + D.label(u) + ",v=" + S.label(v);
        break;
      }
  if (up_ok) r.upper = std::move(up);

  LatticeMap lo{f.dst, f.src, std::vector<ElemId>(D.size())};
  for (int u = 0; u < D.size(); ++u) {
    ElemId v = S.top();
    for (int c = 0; c < S.size(); ++c)
      if (D.leq(u, f(c))) v = S.meet(v, c);
    lo.tab[u] = v;
  }
  bool lo_ok = true;
  for (int u = 0; u < D.size() && lo_ok; ++u)
    for (int v = 0; v < S.size(); ++v)
      if (S.leq(lo.tab[u], v) != D.leq(u, f(v))) {
        lo_ok = false;
        r.lower_witness = "u=" + D.label(u) + ",v=" + S.label(v);
        break;
      }
  if (lo_ok) r.lower = std::move(lo);

  // Frobenius reciprocity for open maps: lower(m ∧ f(n)) = lower(m) ∧ n.
  if (r.lower && check_frame_map(f).is_open) {
    r.frobenius_checked = true;
    r.frobenius_holds = true;
    const LatticeMap& fl = *r.lower;
    for (int m = 0; m < D.size() && r.frobenius_holds; ++m)
      for (int nx = 0; nx < S.size(); ++nx)
        if (fl(D.meet(m, f(nx))) != S.meet(fl(m), nx)) {
          r.frobenius_holds = false;
          break;
        }
  }
  return r;
}

/// Explicit isomorphism check: bijective and order-preserving both ways.
/// On failure `witness` names the offending element or pair.
struct IsoReport {
  bool is_iso = false;
  std::string witness;
};

inline IsoReport check_isomorphism(const LatticeMap& f) {
  const FiniteLattice& S = *f.src;
  const FiniteLattice& D = *f.dst;
  IsoReport rep;
  if (S.size() != D.size()) {
    rep.witness = "cardinality " + std::to_string(S.size()) + " vs " + std::to_string(D.size());
    return rep;
  }
  std::vector<int> hit(D.size(), 0);
  for (int a = 0; a < S.size(); ++a) {
    if (hit[f(a)]++) {
      rep.witness = "not injective at " + D.label(f(a));
      return rep;
    }
  }
  for (int a = 0; a < S.size(); ++a)
    for (int b = 0; b < S.size(); ++b)
      if (S.leq(a, b) != D.leq(f(a), f(b))) {
        rep.witness = "order mismatch at (" + S.label(a) + "," + S.label(b) + ")";
        return rep;
      }
  rep.is_iso = true;
  return rep;
}

}  // namespace finloc

#endif  // FINLOC_LATTICE_HPP
