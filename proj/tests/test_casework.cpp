#include "doctest.h"

#include "coex/casework.hpp"
#include "coex/common.hpp"
#include "coex/gfq.hpp"

using namespace coex;

namespace {
const char* kDataDir = "data/v1";
}

TEST_CASE("GF(q) arithmetic") {
  for (Int q : {2, 3, 4, 5, 7, 8, 9, 11, 13}) {
    Gfq F(q);
    // field axioms on all triples
    for (Int a = 0; a < q; ++a) {
      CHECK(F.add(a, 0) == a);
      CHECK(F.mul(a, 1) == a);
      CHECK(F.add(a, F.neg(a)) == 0);
      if (a != 0) CHECK(F.mul(a, F.inv(a)) == 1);
      for (Int b = 0; b < q; ++b) {
        CHECK(F.add(a, b) == F.add(b, a));
        CHECK(F.mul(a, b) == F.mul(b, a));
        for (Int c = 0; c < q; ++c) {
          CHECK(F.mul(a, F.add(b, c)) == F.add(F.mul(a, b), F.mul(a, c)));
        }
      }
    }
    // primitive element has full multiplicative order
    if (q > 2) {
      Int x = F.primitive();
      int ord = 1;
      while (x != 1) {
        x = F.mul(x, F.primitive());
        ++ord;
      }
      CHECK(ord == q - 1);
    }
    // Frobenius is additive and multiplicative
    for (Int a = 0; a < q; ++a) {
      for (Int b = 0; b < q; ++b) {
        CHECK(F.frobenius(F.add(a, b)) == F.add(F.frobenius(a), F.frobenius(b)));
        CHECK(F.frobenius(F.mul(a, b)) == F.mul(F.frobenius(a), F.frobenius(b)));
      }
    }
  }
}

TEST_CASE("PSL2(q) and Borel subgroup orders") {
  for (Int q : {3, 5, 7, 8, 9, 11, 13}) {
    Psl2Data data = build_psl2(q);
    const Int expected = q * (q * q - 1) / (q % 2 == 1 ? 2 : 1);
    CHECK(data.group->order() == expected);
    CHECK(data.borel->order() == q * (q - 1) / (q % 2 == 1 ? 2 : 1));
  }
  CHECK(build_pgl28()->order() == 1512);
}

TEST_CASE("psl2 sign table gives a genuine cocycle") {
  Psl2Data data = build_psl2(5);
  auto z2 = std::make_shared<GModule>(GModule::trivial(data.group, 2, 1));
  Cochain2 delta = data.cocycle(data.group, z2);
  Cochain3Eval d2 = differential2(delta);
  const auto& elems = data.group->elements();
  for (std::size_t i = 1; i < elems.size(); i += 7) {
    for (std::size_t j = 1; j < elems.size(); j += 11) {
      for (std::size_t l = 1; l < elems.size(); l += 13) {
        CHECK(vec_is_zero(d2.eval(elems[i], elems[j], elems[l])));
      }
    }
  }
  // the extension it defines is SL2(5): unique involution
  ExtensionData ext(data.group, z2, delta);
  int involutions = 0;
  for (const auto& g : elems) {
    for (Int l = 0; l < 2; ++l) {
      ExtensionData::Elem e{{l}, g};
      if (!ext.is_identity(e) && ext.is_identity(ext.mult(e, e))) ++involutions;
    }
  }
  CHECK(involutions == 1);
}

TEST_CASE("catalog integrity and load-time verification") {
  for (int n = 4; n <= 9; ++n) {
    auto specs = an_maximal_catalog(n, kDataDir);
    CHECK_FALSE(specs.empty());
  }
  // the A9 catalog has the indices the theory predicts
  auto a9 = an_maximal_catalog(9, kDataDir);
  std::vector<Int> indices;
  for (const auto& s : a9) indices.push_back(s.index);
  std::sort(indices.begin(), indices.end());
  CHECK(indices == std::vector<Int>{9, 36, 84, 120, 120, 126, 280, 840});

  // the two PGammaL2(8) representatives are distinct subgroups of equal order
  auto an = alternating_group(9);
  std::vector<PermGroup> pgl;
  for (const auto& s : a9) {
    if (s.index == 120) pgl.push_back(spec_group(s, *an));
  }
  REQUIRE(pgl.size() == 2);
  CHECK(pgl[0].order() == pgl[1].order());
  bool same = true;
  for (const auto& g : pgl[1].generators()) same = same && pgl[0].contains(g);
  CHECK_FALSE(same);

  // ASL2(3) acts transitively on its nine points
  for (const auto& s : a9) {
    if (s.index != 840) continue;
    PermGroup h = spec_group(s, *an);
    CHECK(h.order() == 216);
    std::vector<bool> orbit(9, false);
    orbit[0] = true;
    const auto& elems = h.elements();
    for (const auto& e : elems) {
      if (orbit[e[0]]) {
        for (int p = 0; p < 9; ++p) {
          if (orbit[p]) orbit[e[p]] = true;
        }
      }
    }
    // closure of the orbit of point 0
    bool all = true;
    for (int rounds = 0; rounds < 9; ++rounds) {
      for (const auto& e : elems) {
        for (int p = 0; p < 9; ++p) {
          if (orbit[p]) orbit[e[p]] = true;
        }
      }
    }
    for (int p = 0; p < 9; ++p) all = all && orbit[p];
    CHECK(all);
  }

  // a corrupted order is a catalog integrity error
  SubgroupSpec bad;
  bad.name = "broken";
  bad.generators = {"(1,2,3)"};
  bad.order = 5;
  bad.index = 0;
  CHECK_THROWS_AS(spec_group(bad, *an), CatalogError);
}

TEST_CASE("double cover verification for n = 4..7") {
  auto r4 = verify_double_cover_liftability(4, kDataDir);
  CHECK(r4.liftable_count == 1);
  CHECK(r4.liftable_names == std::vector<std::string>{"C3"});
  for (const auto& e : r4.entries) {
    if (e.name == "V4") CHECK_FALSE(e.liftable);
  }

  for (int n = 5; n <= 7; ++n) {
    auto r = verify_double_cover_liftability(n, kDataDir);
    CHECK(r.liftable_count == 0);
    CHECK(r.entries.size() == (n == 5 ? 3 : 5));
  }

  // deterministic and strategy-independent: serial equals parallel, and the
  // linear solver returns the same verdicts
  CaseworkOptions serial;
  serial.parallel = false;
  auto rs = verify_double_cover_liftability(6, kDataDir, serial);
  CaseworkOptions linear;
  linear.strategy = LiftOptions::Strategy::Linear;
  auto rl = verify_double_cover_liftability(6, kDataDir, linear);
  auto rp = verify_double_cover_liftability(6, kDataDir);
  REQUIRE(rs.entries.size() == rl.entries.size());
  for (std::size_t i = 0; i < rs.entries.size(); ++i) {
    CHECK(rs.entries[i].liftable == rl.entries[i].liftable);
    CHECK(rs.entries[i].liftable == rp.entries[i].liftable);
  }
}

TEST_CASE("psl2 criterion small cases") {
  auto r5 = psl2_criterion(5);
  CHECK_FALSE(r5.formula_verdict);
  CHECK_FALSE(r5.lift_verdict);
  auto r7 = psl2_criterion(7);
  CHECK(r7.formula_verdict);
  CHECK(r7.lift_verdict);
  CHECK_THROWS_AS(psl2_criterion(4), InputError);
  CHECK_THROWS_AS(psl2_criterion(15), InputError);
}

TEST_CASE("min liftable index bounds, exhaustive cases") {
  auto b4 = min_liftable_index_bound(4, kDataDir);
  CHECK(b4.bound == 4);
  CHECK(b4.witness.order == 3);
  CHECK(b4.label.find("upper bound") != std::string::npos);

  auto b5 = min_liftable_index_bound(5, kDataDir);
  CHECK(b5.bound == 12);
  CHECK(b5.witness.order == 5);

  auto b6 = min_liftable_index_bound(6, kDataDir);
  CHECK(b6.bound == 40);
  CHECK(b6.witness.order == 9);
}
