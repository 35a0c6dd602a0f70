#ifndef FINLOC_VALUATION_HPP
#define FINLOC_VALUATION_HPP

#include <map>
#include <utility>
#include <vector>

#include "finloc/lattice.hpp"
#include "finloc/rational.hpp"

namespace finloc {

/**
 * An exact-arithmetic valuation on a finite lattice: a value per element.
 * The defining equations (ν(0)=0, modularity) are checked by
 * validate_valuation rather than enforced by the type, so invalid maps can
 * be represented and classified.
 */
struct Valuation {
  LatticePtr carrier;
  std::vector<CRat> vals;

  CRat operator()(ElemId e) const { return vals[e]; }

  static Valuation zero(LatticePtr L) {
    return {L, std::vector<CRat>(static_cast<std::size_t>(L->size()))};
  }

  /// Extends atom weights additively: ν(e) = Σ of weights of atoms below e.
  /// On a finite Boolean algebra this reaches every valuation.
  static Valuation from_atom_weights(LatticePtr L, const std::vector<CRat>& w) {
    if (w.size() != L->atoms().size())
      throw Error(Errc::CarrierMismatch, "atom weight count differs from atom count");
    Valuation v = zero(L);
    for (int e = 0; e < L->size(); ++e) {
      CRat s;
      for (std::size_t i = 0; i < w.size(); ++i)
        if (L->leq(L->atoms()[i], e)) s += w[i];
      v.vals[e] = s;
    }
    return v;
  }

  /// Unit mass at one atom.
  static Valuation atom_indicator(LatticePtr L, ElemId atom) {
    Valuation v = zero(L);
    for (int e = 0; e < L->size(); ++e)
      if (L->leq(atom, e)) v.vals[e] = CRat(1);
    return v;
  }

  /// Weights of the valuation at the atoms, in atoms() order.
  std::vector<CRat> atom_values() const {
    std::vector<CRat> w;
    w.reserve(carrier->atoms().size());
    for (ElemId a : carrier->atoms()) w.push_back(vals[a]);
    return w;
  }

  Valuation real_part() const {
    Valuation v{carrier, vals};
    for (auto& z : v.vals) z = CRat(z.re);
    return v;
  }
  Valuation imag_part() const {
    Valuation v{carrier, vals};
    for (auto& z : v.vals) z = CRat(z.im);
    return v;
  }

  friend Valuation operator+(const Valuation& a, const Valuation& b) {
    Valuation r{a.carrier, a.vals};
    for (std::size_t i = 0; i < r.vals.size(); ++i) r.vals[i] += b.vals[i];
    return r;
  }
  friend Valuation operator-(const Valuation& a, const Valuation& b) {
    Valuation r{a.carrier, a.vals};
    for (std::size_t i = 0; i < r.vals.size(); ++i) r.vals[i] -= b.vals[i];
    return r;
  }
  friend bool operator==(const Valuation& a, const Valuation& b) { return a.vals == b.vals; }
};

struct ValuationFlags {
  bool valid = false;     // ν(0)=0 and modularity
  bool positive = false;  // real, nonnegative, monotone
  bool real = false;
  bool continuous = false;           // finite directed sets attain their maximum,
                                     // so this degenerates to validity
  bool completely_additive = false;  // literal check over disjoint families
  bool faithful = false;             // ν(x)=0 ⟹ x=0
  bool normal = false;               // frame carriers: ν(¬¬a)=ν(a)
};

namespace detail {

/// Enumerates all families of pairwise-disjoint nonzero elements and feeds
/// them to `fn(family)`; returns false if `fn` ever returns false.
inline bool for_each_disjoint_family(const FiniteLattice& L,
                                     const std::function<bool(const std::vector<ElemId>&)>& fn) {
  std::vector<ElemId> family;
  // Recursive enumeration over elements in id order.
  std::function<bool(int)> rec = [&](int start) -> bool {
    if (!family.empty() && !fn(family)) return false;
    for (int e = start; e < L.size(); ++e) {
      if (e == L.bottom()) continue;
      bool disjoint = true;
      for (ElemId f : family)
        if (L.meet(e, f) != L.bottom()) disjoint = false;
      if (!disjoint) continue;
      family.push_back(e);
      if (!rec(e + 1)) return false;
      family.pop_back();
    }
    return true;
  };
  return rec(0);
}

}  // namespace detail

/**
 * Evaluates every flag by its literal definition. Continuity collapses to
 * validity on a finite carrier (any directed set contains its supremum);
 * complete additivity stays a substantive check and is quantified over all
 * pairwise-disjoint families, whose joins always exist here.
 */
inline ValuationFlags validate_valuation(const Valuation& v) {
  const FiniteLattice& L = *v.carrier;
  ValuationFlags f;
  f.valid = v(L.bottom()).is_zero();
  for (int x = 0; x < L.size() && f.valid; ++x)
    for (int y = x; y < L.size(); ++y)
      if (v(x) + v(y) != v(L.join(x, y)) + v(L.meet(x, y))) {
        f.valid = false;
        break;
      }
  f.real = true;
  for (const CRat& z : v.vals)
    if (!z.is_real()) f.real = false;
  f.positive = f.real;
  for (const CRat& z : v.vals)
    if (z.re < 0) f.positive = false;
  if (f.positive)
    for (int x = 0; x < L.size() && f.positive; ++x)
      for (int y = 0; y < L.size(); ++y)
        if (L.leq(x, y) && v(y).re < v(x).re) {
          f.positive = false;
          break;
        }
  f.continuous = f.valid;
  f.completely_additive = v(L.bottom()).is_zero();
  if (f.completely_additive)
    f.completely_additive = detail::for_each_disjoint_family(L, [&](const std::vector<ElemId>& fam) {
      CRat sum;
      for (ElemId e : fam) sum += v(e);
      return v(L.join_all(fam)) == sum;
    });
  f.faithful = true;
  for (int x = 0; x < L.size(); ++x)
    if (x != L.bottom() && v(x).is_zero()) f.faithful = false;
  f.normal = false;
  if (L.profile().is_frame && f.valid) {
    f.normal = true;
    for (int a = 0; a < L.size(); ++a)
      if (v(L.neg(L.neg(a))) != v(a)) f.normal = false;
  }
  return f;
}

struct JordanDecomposition {
  ElemId nu_plus = -1;
  ElemId nu_minus = -1;
  Valuation pos_part;
  Valuation neg_part;
  Valuation abs;
  Rat variation_norm{0};
};

/**
 * Hahn–Jordan decomposition of a real valuation on a finite Boolean
 * carrier. nu_plus is the maximum element below which the valuation is
 * nonnegative (the join of the nonnegative atoms: on a Boolean carrier a
 * valid valuation is the additive extension of its atom weights, so a
 * value is nonnegative below `a` exactly when every atom under `a` is).
 * The defining clauses are re-verified on the result; the quantified
 * maximality statements live in the law suites where they are checked
 * against a brute-force oracle.
 */
inline JordanDecomposition hahn_jordan(const Valuation& v) {
  const FiniteLattice& L = *v.carrier;
  if (!L.profile().is_boolean)
    throw Error(Errc::NotBoolean, "Hahn-Jordan needs a Boolean carrier");
  for (const CRat& z : v.vals)
    if (!z.is_real()) throw Error(Errc::NotReal, "Hahn-Jordan needs a real valuation");
  // Atom-additivity is equivalent to (ν(0)=0 and modularity) on a finite
  // Boolean algebra and is cheap to check exactly.
  for (int e = 0; e < L.size(); ++e) {
    CRat s;
    for (ElemId a : L.atoms())
      if (L.leq(a, e)) s += v(a);
    if (s != v(e))
      throw Error(Errc::ValidationError, "input is not a valuation", L.label(e));
  }

  JordanDecomposition d;
  ElemId plus = L.bottom(), minus = L.bottom();
  for (ElemId a : L.atoms()) {
    if (v(a).re >= 0) plus = L.join(plus, a);
    if (v(a).re <= 0) minus = L.join(minus, a);
  }
  d.nu_plus = plus;
  d.nu_minus = minus;
  d.pos_part = Valuation::zero(v.carrier);
  d.neg_part = Valuation::zero(v.carrier);
  d.abs = Valuation::zero(v.carrier);
  for (int x = 0; x < L.size(); ++x) {
    d.pos_part.vals[x] = v(L.meet(plus, x));
    d.neg_part.vals[x] = -v(L.meet(minus, x)).re;
    d.abs.vals[x] = d.pos_part.vals[x] + d.neg_part.vals[x];
  }
  if (L.join(plus, minus) != L.top())
    throw Error(Errc::ValidationError, "Hahn decomposition does not cover the top");
  for (int x = 0; x < L.size(); ++x)
    if (d.pos_part(x) - d.neg_part(x) != v(x))
      throw Error(Errc::ValidationError, "Jordan reconstruction failed", L.label(x));
  d.variation_norm = d.abs(L.top()).re;
  return d;
}

/// Real and imaginary Jordan decompositions; the four positive summands of
/// a complex valuation are re.pos_part, re.neg_part, im.pos_part, im.neg_part.
struct ComplexJordan {
  JordanDecomposition re;
  JordanDecomposition im;
};

inline ComplexJordan complex_hahn_jordan(const Valuation& v) {
  return {hahn_jordan(v.real_part()), hahn_jordan(v.imag_part())};
}

/**
 * Witness map for localizability: a finite Boolean algebra always has, for
 * each nonzero b, a positive valuation that does not vanish on b (an atom
 * indicator). The operation makes those witnesses explicit.
 */
struct LocalizabilityReport {
  bool localizable = false;
  std::map<ElemId, Valuation> witnesses;  // nonzero element -> valuation
};

inline LocalizabilityReport is_localizable(LatticePtr A) {
  if (!A->profile().is_boolean)
    throw Error(Errc::NotBoolean, "localizability is defined for Boolean algebras");
  LocalizabilityReport rep;
  rep.localizable = true;
  for (int b = 0; b < A->size(); ++b) {
    if (b == A->bottom()) continue;
    ElemId atom = -1;
    for (ElemId a : A->atoms())
      if (A->leq(a, b)) {
        atom = a;
        break;
      }
    if (atom < 0) {  // cannot happen in a finite Boolean algebra with b != 0
      rep.localizable = false;
      continue;
    }
    Valuation w = Valuation::atom_indicator(A, atom);
    if (w(b).is_zero()) rep.localizable = false;
    rep.witnesses.emplace(b, std::move(w));
  }
  return rep;
}

}  // namespace finloc

#endif  // FINLOC_VALUATION_HPP
