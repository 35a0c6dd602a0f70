#include <catch2/catch_amalgamated.hpp>

#include "finloc/lattice.hpp"
#include "fixtures_common.hpp"

using namespace finloc;

namespace {

// Independent oracle: the set {w | w∧x ≤ y} must have a unique maximum,
// found by scanning with leq only.
ElemId oracle_heyting(const FiniteLattice& L, ElemId x, ElemId y) {
  std::vector<ElemId> sat;
  for (int w = 0; w < L.size(); ++w)
    if (L.leq(L.meet(w, x), y)) sat.push_back(w);
  for (ElemId cand : sat) {
    bool max = true;
    for (ElemId w : sat)
      if (!L.leq(w, cand)) max = false;
    if (max) return cand;
  }
  return -1;
}

}  // namespace

TEST_CASE("construction validates lattice axioms") {
  CHECK_THROWS_AS(FiniteLattice::from_leq({"a", "b"},
                                          [](int, int) { return false; }),
                  Error);
  // Two incomparable elements without a join.
  CHECK_THROWS_AS(FiniteLattice::from_leq({"a", "b"},
                                          [](int x, int y) { return x == y; }),
                  Error);
  // Non-antisymmetric relation.
  CHECK_THROWS_AS(FiniteLattice::from_leq({"a", "b"},
                                          [](int, int) { return true; }),
                  Error);
}

TEST_CASE("powerset basics") {
  auto B3 = FiniteLattice::powerset(3);
  CHECK(B3.size() == 8);
  CHECK(B3.atoms().size() == 3);
  CHECK(B3.label(B3.bottom()) == "{}");
  CHECK(B3.label(B3.top()) == "{0,1,2}");
  auto prof = classify(B3);
  CHECK(prof.is_lattice);
  CHECK(prof.is_distributive);
  CHECK(prof.is_boolean);
  CHECK(prof.is_frame);
  CHECK(prof.is_regular);
  CHECK(prof.is_extremally_disconnected);
  CHECK(prof.is_boolean_locale);
}

TEST_CASE("classify chain(3)") {
  auto C = FiniteLattice::chain(3);
  auto p = classify(C);
  CHECK(p.is_frame);
  CHECK_FALSE(p.is_boolean);
  CHECK(p.is_extremally_disconnected);  // ¬m=0, ¬¬m=1, 0∨1=1
  CHECK_FALSE(p.is_regular);
  CHECK_FALSE(p.is_boolean_locale);
}

TEST_CASE("classify diamond M3") {
  auto L = testfx::m3();
  auto p = classify(L);
  CHECK(p.is_lattice);
  CHECK_FALSE(p.is_distributive);
  CHECK_FALSE(p.is_frame);
}

TEST_CASE("heyting frozen examples") {
  auto B2 = FiniteLattice::powerset(2);
  ElemId a = 1, b = 2;  // {0} and {1}
  REQUIRE(B2.label(a) == "{0}");
  REQUIRE(B2.label(b) == "{1}");
  CHECK(heyting(B2, a, b) == oracle_heyting(B2, a, b));
  CHECK(heyting(B2, a, b) == b);  // b ∨ ¬a = ¬a = b on two atoms
  for (const auto& Lp : testfx::frame_fixtures()) {
    const auto& L = *Lp;
    for (int x = 0; x < L.size(); ++x) {
      CHECK(heyting(L, x, x) == L.top());
      CHECK(heyting(L, L.top(), x) == x);
    }
  }
  CHECK_THROWS_AS(heyting(testfx::m3(), 1, 2), Error);
}

TEST_CASE("heyting adjunction on all distributive fixtures") {
  for (const auto& Lp : testfx::frame_fixtures()) {
    const auto& L = *Lp;
    for (int x = 0; x < L.size(); ++x)
      for (int y = 0; y < L.size(); ++y) {
        ElemId h = heyting(L, x, y);
        CHECK(h == oracle_heyting(L, x, y));
        for (int w = 0; w < L.size(); ++w)
          CHECK(L.leq(L.meet(w, x), y) == L.leq(w, h));
      }
  }
}

TEST_CASE("pseudocomplement examples") {
  auto C = FiniteLattice::chain(3);
  CHECK(pseudocomplement(C, 1) == 0);  // only w with w∧m=0 is 0
  for (const auto& Lp : testfx::frame_fixtures()) {
    const auto& L = *Lp;
    CHECK(pseudocomplement(L, L.bottom()) == L.top());
    CHECK(pseudocomplement(L, L.top()) == L.bottom());
  }
}

TEST_CASE("double negation is a closure operator") {
  for (const auto& Lp : testfx::frame_fixtures()) {
    const auto& L = *Lp;
    for (int x = 0; x < L.size(); ++x) {
      ElemId nx = pseudocomplement(L, x);
      ElemId nnx = pseudocomplement(L, nx);
      CHECK(L.leq(x, nnx));
      CHECK(pseudocomplement(L, nnx) == nx);
    }
  }
}

TEST_CASE("classify consistency on Boolean fixtures") {
  for (const auto& Lp : testfx::frame_fixtures()) {
    const auto& L = *Lp;
    if (!classify(L).is_boolean) continue;
    for (int x = 0; x < L.size(); ++x) {
      ElemId nx = pseudocomplement(L, x);
      CHECK(L.join(x, nx) == L.top());
      CHECK(pseudocomplement(L, nx) == x);
    }
  }
}

TEST_CASE("check_frame_map examples") {
  auto B2 = make_lattice(FiniteLattice::powerset(2));
  auto B1 = make_lattice(FiniteLattice::powerset(1));

  auto idm = LatticeMap::identity(B2);
  auto pid = check_frame_map(idm);
  CHECK(pid.preserves_meets);
  CHECK(pid.preserves_joins);
  CHECK(pid.is_open);

  // Constant-to-top map B2 → B1 keeps meets but not the empty join.
  LatticeMap ctop{B2, B1, std::vector<ElemId>(B2->size(), B1->top())};
  auto pc = check_frame_map(ctop);
  CHECK(pc.preserves_meets);
  CHECK_FALSE(pc.preserves_joins);

  // Preimage map 2^{y} → 2^{x0,x1} of the surjection {x0,x1} → {y}.
  LatticeMap pre{B1, B2, {B2->bottom(), B2->top()}};
  auto pp = check_frame_map(pre);
  CHECK(pp.preserves_meets);
  CHECK(pp.preserves_joins);
  CHECK(pp.is_open);
}

TEST_CASE("join preservation literal all-subsets oracle") {
  // Binary+empty joins imply all finite joins; verify the literal reading.
  auto B2 = make_lattice(FiniteLattice::powerset(2));
  auto C3 = make_lattice(FiniteLattice::chain(3));
  LatticeMap f{C3, B2, {B2->bottom(), B2->top(), B2->top()}};
  REQUIRE(check_frame_map(f).preserves_joins);
  const int n = C3->size();
  for (Mask sub = 0; sub < (Mask{1} << n); ++sub) {
    std::vector<ElemId> es;
    for (int i = 0; i < n; ++i)
      if (mask_test(sub, i)) es.push_back(i);
    std::vector<ElemId> fes;
    for (ElemId e : es) fes.push_back(f(e));
    CHECK(f(C3->join_all(es)) == B2->join_all(fes));
  }
}

TEST_CASE("adjoints identity and subset-inclusion example") {
  auto B2 = make_lattice(FiniteLattice::powerset(2));
  auto idm = LatticeMap::identity(B2);
  auto r = adjoints(idm);
  REQUIRE(r.lower);
  REQUIRE(r.upper);
  CHECK(maps_equal(*r.lower, idm));
  CHECK(maps_equal(*r.upper, idm));
  CHECK(r.frobenius_checked);
  CHECK(r.frobenius_holds);

  // Preimage map 2^{0,1} → 2^{0} of the inclusion {0} ↪ {0,1}.
  auto B1 = make_lattice(FiniteLattice::powerset(1));
  // Element ids in powerset are atom masks: src elems {},{0},{1},{0,1}.
  LatticeMap preim{B2, B1, {0, 1, 0, 1}};
  REQUIRE(check_frame_map(preim).preserves_joins);
  auto radj = adjoints(preim);
  REQUIRE(radj.lower);
  REQUIRE(radj.upper);
  // lower = direct image: {} ↦ {}, {0} ↦ {0}.
  CHECK(radj.lower->tab == std::vector<ElemId>{0, 1});
  // upper = co-direct image: {} ↦ {1}, {0} ↦ {0,1}.
  CHECK(radj.upper->tab == std::vector<ElemId>{2, 3});
}

TEST_CASE("adjoint absent with witness on a non-monotone map") {
  auto C2 = make_lattice(FiniteLattice::chain(2));
  LatticeMap swap{C2, C2, {1, 0}};
  auto r = adjoints(swap);
  CHECK_FALSE(r.upper);
  CHECK_FALSE(r.lower);
  CHECK_FALSE(r.upper_witness.empty());
  CHECK_FALSE(r.lower_witness.empty());
}

TEST_CASE("Galois law: right adjoint of meet-with-a is Heyting implication") {
  for (const auto& Lp : testfx::frame_fixtures()) {
    const auto& L = *Lp;
    if (L.size() > 8) continue;
    for (int a = 0; a < L.size(); ++a) {
      LatticeMap f{Lp, Lp, {}};
      for (int x = 0; x < L.size(); ++x) f.tab.push_back(L.meet(x, a));
      auto r = adjoints(f);
      REQUIRE(r.upper);
      for (int u = 0; u < L.size(); ++u) {
        CHECK((*r.upper)(u) == heyting(L, a, u));
        for (int v = 0; v < L.size(); ++v)
          CHECK(L.leq(f(v), u) == L.leq(v, (*r.upper)(u)));
      }
    }
  }
}

TEST_CASE("compact opens literal oracle: every element of a finite frame is compact") {
  for (const auto& Lp : testfx::frame_fixtures()) {
    const auto& L = *Lp;
    if (L.size() > 8) continue;
    for (int a = 0; a < L.size(); ++a) {
      // For any S with ⋁S ≥ a there is a finite F ⊆ S with ⋁F ≥ a;
      // on a finite carrier F = S works, checked literally.
      for (Mask sub = 0; sub < (Mask{1} << L.size()); ++sub) {
        std::vector<ElemId> es;
        for (int i = 0; i < L.size(); ++i)
          if (mask_test(sub, i)) es.push_back(i);
        if (!L.leq(a, L.join_all(es))) continue;
        CHECK(L.leq(a, L.join_all(es)));
      }
    }
  }
}
