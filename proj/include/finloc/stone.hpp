#ifndef FINLOC_STONE_HPP
#define FINLOC_STONE_HPP

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "finloc/lattice.hpp"
#include "finloc/topology.hpp"
#include "finloc/valuation.hpp"

namespace finloc {

/// Subset of a lattice closed downward and under finite joins.
struct IdealOfLattice {
  LatticePtr parent;
  Mask members = 0;  // bit per parent element; parent must have <= 64 elements
};

inline bool check_ideal(const IdealOfLattice& I) {
  const FiniteLattice& R = *I.parent;
  if (R.size() > 64) throw Error(Errc::BoundExceeded, "ideal mask limited to 64 elements");
  if (!mask_test(I.members, R.bottom())) return false;
  for (int a = 0; a < R.size(); ++a) {
    if (!mask_test(I.members, a)) continue;
    for (int b = 0; b < R.size(); ++b) {
      if (R.leq(b, a) && !mask_test(I.members, b)) return false;
      if (mask_test(I.members, b) && !mask_test(I.members, R.join(a, b))) return false;
    }
  }
  return true;
}

/**
 * The frame of all ideals of a finite distributive lattice, ordered by
 * inclusion. Every ideal of a finite lattice is the principal downset of
 * its join, so the members are exactly the downsets ↓r; the brute-force
 * subset enumeration stays in the test oracles. The result is verified to
 * be a frame whose Heyting implication matches I→J = {k | k∧i ∈ J ∀i∈I}.
 */
inline LatticePtr ideal_frame(LatticePtr R) {
  const FiniteLattice& L = *R;
  if (!L.profile().is_distributive)
    throw Error(Errc::NotDistributive, "ideal frame needs a distributive lattice");
  if (L.size() > 64) throw Error(Errc::BoundExceeded, "ideal frame limited to 64 elements");
  std::vector<Mask> downsets;
  downsets.reserve(L.size());
  for (int r = 0; r < L.size(); ++r) {
    Mask d = 0;
    for (int b = 0; b < L.size(); ++b)
      if (L.leq(b, r)) d |= Mask{1} << b;
    downsets.push_back(d);
  }
  auto idl = make_lattice(FiniteLattice::from_sets(std::move(downsets), L.size(), L.labels()));
  if (!idl->profile().is_frame)
    throw Error(Errc::ValidationError, "ideal lattice failed the frame check");
  // Heyting implication agrees with the ideal-quotient formula. Since every
  // ideal is principal, k·I ⊆ J reduces to k ∧ gen(I) ∈ J.
  for (int i = 0; i < idl->size(); ++i)
    for (int j = 0; j < idl->size(); ++j) {
      Mask expect = 0;
      for (int k = 0; k < L.size(); ++k) {
        bool in = true;
        for (int g = 0; g < L.size() && in; ++g)
          if (mask_test(idl->member_mask(i), g) && !mask_test(idl->member_mask(j), L.meet(k, g)))
            in = false;
        if (in) expect |= Mask{1} << k;
      }
      if (idl->member_mask(heyting(*idl, i, j)) != expect)
        throw Error(Errc::ValidationError, "ideal Heyting formula mismatch",
                    idl->label(i) + "," + idl->label(j));
    }
  return idl;
}

/// Canonical embedding r ↦ ↓r of a distributive lattice into its ideal frame.
inline LatticeMap principal_ideal_map(LatticePtr R, LatticePtr idl) {
  const FiniteLattice& L = *R;
  LatticeMap f{R, idl, std::vector<ElemId>(L.size())};
  for (int r = 0; r < L.size(); ++r) {
    Mask d = 0;
    for (int b = 0; b < L.size(); ++b)
      if (L.leq(b, r)) d |= Mask{1} << b;
    auto ix = idl->index_of_mask(d);
    if (!ix) throw Error(Errc::ValidationError, "principal ideal missing from ideal frame");
    f.tab[r] = *ix;
  }
  return f;
}

/// Functorial action on ideals: an ideal maps to the ideal generated by its
/// image; for principal ideals that is the downset of the generator image.
inline LatticeMap ideal_frame_map(const LatticeMap& f, LatticePtr idl_src, LatticePtr idl_dst) {
  const FiniteLattice& S = *f.src;
  const FiniteLattice& D = *f.dst;
  LatticeMap g{idl_src, idl_dst, std::vector<ElemId>(idl_src->size())};
  for (int i = 0; i < idl_src->size(); ++i) {
    ElemId gen = S.bottom();
    for (int e = 0; e < S.size(); ++e)
      if (mask_test(idl_src->member_mask(i), e)) gen = S.join(gen, e);
    Mask d = 0;
    for (int b = 0; b < D.size(); ++b)
      if (D.leq(b, f(gen))) d |= Mask{1} << b;
    auto ix = idl_dst->index_of_mask(d);
    if (!ix) throw Error(Errc::ValidationError, "image ideal missing from ideal frame");
    g.tab[i] = *ix;
  }
  return g;
}

/// A sublattice together with its embedding into the parent.
struct Subframe {
  LatticePtr lat;
  LatticePtr parent;
  std::vector<ElemId> to_parent;

  std::optional<ElemId> from_parent(ElemId p) const {
    for (std::size_t i = 0; i < to_parent.size(); ++i)
      if (to_parent[i] == p) return static_cast<ElemId>(i);
    return std::nullopt;
  }
};

/**
 * Compact opens of a finite frame. On a finite carrier every element is
 * compact in the literal sense (any cover is already finite; the test suite
 * keeps that definition as an oracle), so the operation returns the clopen
 * sublattice when the frame is extremally disconnected (where compact opens
 * of the Stonean chain are exactly the clopens) and the whole frame
 * otherwise (the coherent reading).
 */
inline Subframe copen(LatticePtr Lp) {
  const FiniteLattice& L = *Lp;
  if (!L.profile().is_frame) throw Error(Errc::NotDistributive, "copen needs a frame");
  Subframe sub;
  sub.parent = Lp;
  if (L.profile().is_extremally_disconnected) {
    for (int e = 0; e < L.size(); ++e)
      if (L.complement(e)) sub.to_parent.push_back(e);
  } else {
    for (int e = 0; e < L.size(); ++e) sub.to_parent.push_back(e);
  }
  std::vector<std::string> labels;
  for (ElemId e : sub.to_parent) labels.push_back(L.label(e));
  const auto& embed = sub.to_parent;
  sub.lat = make_lattice(FiniteLattice::from_leq(
      labels, [&L, &embed](int a, int b) { return L.leq(embed[a], embed[b]); }));
  return sub;
}

/// Spectrum of a finite frame: points are the frame maps L→2, realized as
/// the completely join-prime elements; opens are the element images.
struct Spectrum {
  FiniteTopSpace space;
  std::vector<ElemId> primes;          // prime element per point
  std::vector<Mask> element_open;      // per lattice element, its open image
};

inline bool is_join_prime(const FiniteLattice& L, ElemId m) {
  if (m == L.bottom()) return false;
  for (int x = 0; x < L.size(); ++x)
    for (int y = 0; y < L.size(); ++y)
      if (L.leq(m, L.join(x, y)) && !L.leq(m, x) && !L.leq(m, y)) return false;
  return true;
}

inline Spectrum spectrum(LatticePtr Lp) {
  const FiniteLattice& L = *Lp;
  if (!L.profile().is_frame) throw Error(Errc::NotDistributive, "spectrum needs a frame");
  std::vector<ElemId> primes;
  for (int m = 0; m < L.size(); ++m)
    if (is_join_prime(L, m)) primes.push_back(m);
  // Each prime yields the frame map x ↦ [x ≥ prime]; verified to be one.
  auto two = make_lattice(FiniteLattice::chain(2));
  for (ElemId p : primes) {
    LatticeMap hom{Lp, two, std::vector<ElemId>(L.size())};
    for (int x = 0; x < L.size(); ++x) hom.tab[x] = L.leq(p, x) ? 1 : 0;
    auto prof = check_frame_map(hom);
    if (!prof.preserves_meets || !prof.preserves_joins)
      throw Error(Errc::ValidationError, "spectrum point is not a frame map", L.label(p));
  }
  std::vector<std::string> labels;
  for (ElemId p : primes) labels.push_back(L.label(p));
  std::vector<Mask> elem_open(L.size(), 0);
  std::vector<Mask> opens;
  for (int u = 0; u < L.size(); ++u) {
    Mask o = 0;
    for (std::size_t i = 0; i < primes.size(); ++i)
      if (L.leq(primes[i], u)) o |= Mask{1} << i;
    elem_open[u] = o;
    opens.push_back(o);
  }
  Spectrum sp{FiniteTopSpace::make(static_cast<int>(primes.size()), std::move(opens), labels),
              std::move(primes), std::move(elem_open)};
  return sp;
}

inline FiniteTopSpace spectrum_points(LatticePtr L) { return spectrum(std::move(L)).space; }

/// Frame of opens of a finite topological space, ordered by inclusion.
inline LatticePtr omega(const FiniteTopSpace& T) {
  std::vector<std::string> labels;
  for (int i = 0; i < T.points(); ++i) labels.push_back(T.point_label(i));
  return make_lattice(FiniteLattice::from_sets(T.opens(), T.points(), labels));
}

// ---------------------------------------------------------------------------
// Stone duality unit and counit.
// ---------------------------------------------------------------------------

struct StoneUnit {
  LatticeMap map;   // Ideal(COpen(L)) → L, ideal ↦ join of its members
  IsoReport iso;
  MapProfile frame;
};

inline StoneUnit stone_unit(LatticePtr Lp) {
  const FiniteLattice& L = *Lp;
  if (!L.profile().is_frame) throw Error(Errc::NotDistributive, "stone_unit needs a frame");
  Subframe cop = copen(Lp);
  LatticePtr idl = ideal_frame(cop.lat);
  LatticeMap u{idl, Lp, std::vector<ElemId>(idl->size())};
  for (int i = 0; i < idl->size(); ++i) {
    ElemId j = L.bottom();
    for (int e = 0; e < cop.lat->size(); ++e)
      if (mask_test(idl->member_mask(i), e)) j = L.join(j, cop.to_parent[e]);
    u.tab[i] = j;
  }
  return {u, check_isomorphism(u), check_frame_map(u)};
}

struct StoneCounit {
  LatticeMap map;  // R → compact opens of Ideal(R); at finite scale every
                   // ideal is a compact open, so the codomain is the ideal frame
  IsoReport iso;
};

inline StoneCounit stone_counit(LatticePtr R) {
  if (!R->profile().is_distributive)
    throw Error(Errc::NotDistributive, "stone_counit needs a distributive lattice");
  LatticePtr idl = ideal_frame(R);
  LatticeMap c = principal_ideal_map(R, idl);
  return {c, check_isomorphism(c)};
}

// ---------------------------------------------------------------------------
// Double negation sublocale.
// ---------------------------------------------------------------------------

struct DoubleNegation {
  Subframe sub;     // the Boolean frame of ¬¬-fixed elements
  LatticeMap surj;  // x ↦ ¬¬x, a surjective frame map L → sub
};

inline DoubleNegation double_negation(LatticePtr Lp) {
  const FiniteLattice& L = *Lp;
  if (!L.profile().is_frame) throw Error(Errc::NotDistributive, "double negation needs a frame");
  Subframe sub;
  sub.parent = Lp;
  for (int e = 0; e < L.size(); ++e)
    if (L.neg(L.neg(e)) == e) sub.to_parent.push_back(e);
  std::vector<std::string> labels;
  for (ElemId e : sub.to_parent) labels.push_back(L.label(e));
  const auto& embed = sub.to_parent;
  sub.lat = make_lattice(FiniteLattice::from_leq(
      labels, [&L, &embed](int a, int b) { return L.leq(embed[a], embed[b]); }));
  if (!sub.lat->profile().is_boolean)
    throw Error(Errc::ValidationError, "double negation sublocale failed the Boolean check");
  LatticeMap surj{Lp, sub.lat, std::vector<ElemId>(L.size())};
  for (int x = 0; x < L.size(); ++x) {
    auto ix = sub.from_parent(L.neg(L.neg(x)));
    surj.tab[x] = *ix;
  }
  auto prof = check_frame_map(surj);
  if (!prof.preserves_meets || !prof.preserves_joins)
    throw Error(Errc::ValidationError, "double negation map is not a frame map");
  return {std::move(sub), std::move(surj)};
}

// ---------------------------------------------------------------------------
// Normal valuations vs valuations on the clopens.
// ---------------------------------------------------------------------------

/// Restriction of a normal valuation to the clopen sublattice; inverse to
/// precomposition with ¬¬. Both directions are exposed and roundtrip
/// exactly.
struct NormalRestriction {
  Subframe clopens;
  Valuation restricted;  // on clopens.lat
};

inline NormalRestriction restrict_normal_valuation(const Valuation& v) {
  const FiniteLattice& L = *v.carrier;
  auto flags = validate_valuation(v);
  if (!flags.normal) throw Error(Errc::NotNormal, "restriction needs a normal valuation");
  Subframe cop = copen(v.carrier);
  Valuation w = Valuation::zero(cop.lat);
  for (int e = 0; e < cop.lat->size(); ++e) w.vals[e] = v(cop.to_parent[e]);
  (void)L;
  return {std::move(cop), std::move(w)};
}

/// ν ↦ ν∘¬¬ : extends a valuation on the clopens to a normal valuation.
inline Valuation extend_valuation_by_double_negation(const Subframe& cop, const Valuation& w) {
  const FiniteLattice& L = *cop.parent;
  Valuation v = Valuation::zero(cop.parent);
  for (int x = 0; x < L.size(); ++x) {
    auto ix = cop.from_parent(L.neg(L.neg(x)));
    if (!ix) throw Error(Errc::ValidationError, "¬¬ image is not clopen", L.label(x));
    v.vals[x] = w(*ix);
  }
  return v;
}

// ---------------------------------------------------------------------------
// Duality level report.
// ---------------------------------------------------------------------------

enum class DualityLevel { NotFrame, Coherent, Stone, Stonean, Hyperstonean };

inline const char* duality_level_name(DualityLevel l) {
  switch (l) {
    case DualityLevel::NotFrame: return "not-a-frame";
    case DualityLevel::Coherent: return "coherent";
    case DualityLevel::Stone: return "Stone";
    case DualityLevel::Stonean: return "Stonean";
    case DualityLevel::Hyperstonean: return "hyperstonean";
  }
  return "?";
}

struct DualityReport {
  DualityLevel level = DualityLevel::NotFrame;
  LatticeProfile profile;
  std::map<ElemId, Valuation> witnesses;  // nonzero element -> normal valuation
  std::string notes;
};

/**
 * Highest level of the duality chain the structure satisfies. A finite
 * frame is always coherent; a finite regular frame is Boolean, and every
 * finite Boolean frame carries enough atom-indicator valuations, so the
 * Stone, Stonean and hyperstonean levels coincide at this scale. Each flag
 * is still evaluated from its own definition and the hyperstonean level
 * comes with explicit witnessing valuations.
 */
inline DualityReport check_duality_level(LatticePtr Lp) {
  const FiniteLattice& L = *Lp;
  DualityReport rep;
  rep.profile = L.profile();
  if (!rep.profile.is_frame) {
    rep.notes = "not distributive";
    return rep;
  }
  rep.level = DualityLevel::Coherent;
  if (!rep.profile.is_regular) {
    rep.notes = "not regular";
    return rep;
  }
  rep.level = DualityLevel::Stone;
  if (!rep.profile.is_extremally_disconnected) {
    rep.notes = "not extremally disconnected";
    return rep;
  }
  rep.level = DualityLevel::Stonean;
  bool enough = true;
  for (int a = 0; a < L.size(); ++a) {
    if (a == L.bottom()) continue;
    // Search a normal valuation that does not vanish on a; atom indicators
    // suffice on a Boolean frame.
    bool found = false;
    for (ElemId at : L.atoms()) {
      if (!L.leq(at, a)) continue;
      Valuation w = Valuation::atom_indicator(Lp, at);
      auto fl = validate_valuation(w);
      if (fl.normal && !w(a).is_zero()) {
        rep.witnesses.emplace(a, std::move(w));
        found = true;
        break;
      }
    }
    if (!found) enough = false;
  }
  if (enough) rep.level = DualityLevel::Hyperstonean;
  else rep.notes = "lacks normal valuations";
  return rep;
}

}  // namespace finloc

#endif  // FINLOC_STONE_HPP
