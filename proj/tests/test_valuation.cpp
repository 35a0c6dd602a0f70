#include <catch2/catch_amalgamated.hpp>

#include "finloc/valuation.hpp"
#include "fixtures_common.hpp"

using namespace finloc;

namespace {

// Brute-force oracle for the Hahn decomposition: scan all elements for the
// maximality clauses, straight from the definitions.
struct HahnOracle {
  ElemId nu_plus;
  ElemId nu_minus;
  ElemId vanishing_max;
};

HahnOracle oracle_hahn(const Valuation& v) {
  const FiniteLattice& L = *v.carrier;
  auto nonneg_below = [&](ElemId a) {
    for (int b = 0; b < L.size(); ++b)
      if (L.leq(b, a) && v(b).re < 0) return false;
    return true;
  };
  auto nonpos_below = [&](ElemId a) {
    for (int b = 0; b < L.size(); ++b)
      if (L.leq(b, a) && v(b).re > 0) return false;
    return true;
  };
  auto vanishes_below = [&](ElemId a) {
    for (int b = 0; b < L.size(); ++b)
      if (L.leq(b, a) && !v(b).is_zero()) return false;
    return true;
  };
  HahnOracle o{L.bottom(), L.bottom(), L.bottom()};
  for (int a = 0; a < L.size(); ++a) {
    if (nonneg_below(a)) o.nu_plus = L.join(o.nu_plus, a);
    if (nonpos_below(a)) o.nu_minus = L.join(o.nu_minus, a);
    if (vanishes_below(a)) o.vanishing_max = L.join(o.vanishing_max, a);
  }
  // The joins must themselves satisfy the conditions (suprema are maxima).
  REQUIRE(nonneg_below(o.nu_plus));
  REQUIRE(nonpos_below(o.nu_minus));
  REQUIRE(vanishes_below(o.vanishing_max));
  return o;
}

}  // namespace

TEST_CASE("validate_valuation frozen examples") {
  auto B3 = make_lattice(FiniteLattice::powerset(3));
  Valuation counting = Valuation::from_atom_weights(B3, {CRat(1), CRat(1), CRat(1)});
  auto f = validate_valuation(counting);
  CHECK(f.valid);
  CHECK(f.positive);
  CHECK(f.real);
  CHECK(f.continuous);
  CHECK(f.completely_additive);
  CHECK(f.faithful);
  CHECK(f.normal);

  auto C3 = make_lattice(FiniteLattice::chain(3));
  Valuation vc = Valuation::zero(C3);
  vc.vals[1] = CRat(1);
  vc.vals[2] = CRat(1);
  auto fc = validate_valuation(vc);
  CHECK(fc.valid);
  CHECK(fc.positive);
  CHECK(fc.faithful);  // only 0 has value 0
  CHECK(fc.normal);    // ν(¬¬m)=ν(1)=1=ν(m)

  Valuation bad = Valuation::zero(B3);
  bad.vals[B3->bottom()] = CRat(1);
  CHECK_FALSE(validate_valuation(bad).valid);
}

TEST_CASE("complete additivity differs from modularity off frames") {
  // On the diamond M3 a modular map need not be additive on the disjoint
  // triple: a,b,c are pairwise disjoint with join 1.
  auto M = make_lattice(testfx::m3());
  Valuation v = Valuation::zero(M);
  v.vals[1] = CRat(1);
  v.vals[2] = CRat(1);
  v.vals[3] = CRat(1);
  v.vals[4] = CRat(2);
  auto f = validate_valuation(v);
  CHECK_FALSE(f.completely_additive);  // 1+1+1 != 2

  // On Boolean carriers the continuity (= validity) flag and the complete
  // additivity flag agree for every map from the exhaustive weight grid,
  // including non-valuations.
  auto B2 = make_lattice(FiniteLattice::powerset(2));
  for (int w0 = -2; w0 <= 2; ++w0)
    for (int w1 = -2; w1 <= 2; ++w1)
      for (int wj = -2; wj <= 2; ++wj) {
        Valuation u = Valuation::zero(B2);
        u.vals[1] = CRat(w0);
        u.vals[2] = CRat(w1);
        u.vals[3] = CRat(wj);  // arbitrary value at the top
        auto fl = validate_valuation(u);
        CHECK(fl.continuous == fl.completely_additive);
      }
}

TEST_CASE("hahn_jordan frozen examples") {
  auto B3 = make_lattice(FiniteLattice::powerset(3));

  // positive valuation
  Valuation pos = Valuation::from_atom_weights(B3, {CRat(1), CRat(2), CRat(Rat(1, 2))});
  auto dp = hahn_jordan(pos);
  CHECK(dp.nu_plus == B3->top());
  for (const auto& z : dp.neg_part.vals) CHECK(z.is_zero());
  CHECK(dp.variation_norm == Rat(7, 2));

  // zero valuation: the vanishing-maximality clause forces both tops
  auto dz = hahn_jordan(Valuation::zero(B3));
  CHECK(dz.nu_plus == B3->top());
  CHECK(dz.nu_minus == B3->top());
  CHECK(dz.variation_norm == 0);

  // atoms (1, -2, 0): nu_plus = a∨c, nu_minus = b∨c, norm 3
  Valuation mixed = Valuation::from_atom_weights(B3, {CRat(1), CRat(-2), CRat(0)});
  auto dm = hahn_jordan(mixed);
  ElemId a = B3->atoms()[0], b = B3->atoms()[1], c = B3->atoms()[2];
  CHECK(dm.nu_plus == B3->join(a, c));
  CHECK(dm.nu_minus == B3->join(b, c));
  CHECK(dm.variation_norm == 3);
  auto o = oracle_hahn(mixed);
  CHECK(o.nu_plus == dm.nu_plus);
  CHECK(o.nu_minus == dm.nu_minus);
  CHECK(o.vanishing_max == B3->meet(dm.nu_plus, dm.nu_minus));
}

TEST_CASE("hahn_jordan error paths") {
  auto C3 = make_lattice(FiniteLattice::chain(3));
  Valuation vc = Valuation::zero(C3);
  CHECK_THROWS_AS(hahn_jordan(vc), Error);  // NotBoolean

  auto B1 = make_lattice(FiniteLattice::powerset(1));
  Valuation vi = Valuation::from_atom_weights(B1, {CRat(Rat(0), Rat(1))});
  vi.vals[1].im = 1;
  CHECK_THROWS_AS(hahn_jordan(vi), Error);  // NotReal

  Valuation notval = Valuation::zero(B1);
  notval.vals[B1->top()] = CRat(0);
  notval.vals[B1->bottom()] = CRat(1);
  CHECK_THROWS_AS(hahn_jordan(notval), Error);
}

TEST_CASE("hahn_jordan exhaustive grid against the oracle") {
  auto B3 = make_lattice(FiniteLattice::powerset(3));
  for (int w0 = -2; w0 <= 2; ++w0)
    for (int w1 = -2; w1 <= 2; ++w1)
      for (int w2 = -2; w2 <= 2; ++w2) {
        Valuation v = Valuation::from_atom_weights(
            B3, {CRat(Rat(w0, 2)), CRat(w1), CRat(Rat(w2, 3))});
        auto d = hahn_jordan(v);
        auto o = oracle_hahn(v);
        CHECK(d.nu_plus == o.nu_plus);
        CHECK(d.nu_minus == o.nu_minus);
        CHECK(B3->join(d.nu_plus, d.nu_minus) == B3->top());
        CHECK(B3->meet(d.nu_plus, d.nu_minus) == o.vanishing_max);
        // Reconstruction and positivity of the parts, exact.
        for (int x = 0; x < B3->size(); ++x) {
          CHECK(d.pos_part(x) - d.neg_part(x) == v(x));
          CHECK(d.pos_part(x).re >= 0);
          CHECK(d.neg_part(x).re >= 0);
        }
        CHECK(validate_valuation(d.pos_part).positive);
        CHECK(validate_valuation(d.neg_part).positive);
        // Jordan linearity and norm-zero characterization.
        CHECK(d.abs(B3->top()) == d.pos_part(B3->top()) + d.neg_part(B3->top()));
        bool zero = true;
        for (const auto& z : v.vals) zero = zero && z.is_zero();
        CHECK((d.variation_norm == 0) == zero);
      }
}

TEST_CASE("complex decomposition into four positive summands") {
  auto B2 = make_lattice(FiniteLattice::powerset(2));
  Valuation v = Valuation::from_atom_weights(B2, {CRat(Rat(1), Rat(-2)), CRat(Rat(-3), Rat(5))});
  auto cj = complex_hahn_jordan(v);
  for (const Valuation* part :
       {&cj.re.pos_part, &cj.re.neg_part, &cj.im.pos_part, &cj.im.neg_part})
    CHECK(validate_valuation(*part).positive);
  for (int x = 0; x < B2->size(); ++x) {
    CRat rebuilt{cj.re.pos_part(x).re - cj.re.neg_part(x).re,
                 cj.im.pos_part(x).re - cj.im.neg_part(x).re};
    CHECK(rebuilt == v(x));
  }
}

TEST_CASE("is_localizable witnesses") {
  auto B1 = make_lattice(FiniteLattice::powerset(1));
  auto r1 = is_localizable(B1);
  CHECK(r1.localizable);
  REQUIRE(r1.witnesses.size() == 1);
  CHECK(r1.witnesses.begin()->second(B1->top()) == CRat(1));

  auto B4 = make_lattice(FiniteLattice::powerset(4));
  auto r4 = is_localizable(B4);
  CHECK(r4.localizable);
  CHECK(r4.witnesses.size() == 15);
  for (auto& [b, w] : r4.witnesses) {
    auto fl = validate_valuation(w);
    CHECK(fl.valid);
    CHECK(fl.positive);
    CHECK_FALSE(w(b).is_zero());
  }

  auto trivial = make_lattice(FiniteLattice::chain(1));
  auto rt = is_localizable(trivial);
  CHECK(rt.localizable);
  CHECK(rt.witnesses.empty());

  CHECK_THROWS_AS(is_localizable(make_lattice(FiniteLattice::chain(3))), Error);
}
