#include "doctest.h"

#include <memory>

#include "coex/cochain.hpp"
#include "coex/common.hpp"
#include "coex/gmodule.hpp"
#include "coex/perm.hpp"
#include "coex/spincover.hpp"

using namespace coex;

namespace {

Permutation P(const std::string& s, int degree) { return Permutation::parse_cycles(s, degree); }

GroupPtr alternating(int n) {
  std::vector<Permutation> gens;
  for (int k = 3; k <= n; ++k) gens.push_back(P("(1,2," + std::to_string(k) + ")", n));
  return std::make_shared<PermGroup>(n, gens);
}

}  // namespace

TEST_CASE("scalar one is the multiplicative identity") {
  SpinContext ctx(6);
  Rng rng(0);
  auto a6 = alternating(6);
  for (int t = 0; t < 20; ++t) {
    SpinElement a = ctx.section(a6->random_element(rng));
    CHECK(clifford_product(SpinElement::one(6), a) == a);
    CHECK(clifford_product(a, SpinElement::one(6)) == a);
  }
}

TEST_CASE("lift of (1 2)(3 4) squares to minus one") {
  SpinContext ctx(4);
  const Permutation u = P("(1,2)(3,4)", 4);
  SpinElement s = ctx.section(u);
  CHECK(s.terms().size() == 4);  // four monomials
  CHECK(s.shift() == 1);
  SpinElement sq = clifford_product(s, s);
  CHECK(sq.is_minus_one());
}

TEST_CASE("associativity on seeded random section products") {
  SpinContext ctx(6);
  auto a6 = alternating(6);
  Rng rng(1);
  for (int t = 0; t < 10000; ++t) {
    SpinElement a = ctx.section(a6->random_element(rng));
    SpinElement b = ctx.section(a6->random_element(rng));
    SpinElement c = ctx.section(a6->random_element(rng));
    CHECK(clifford_product(clifford_product(a, b), c) ==
          clifford_product(a, clifford_product(b, c)));
  }
}

TEST_CASE("spin section basics") {
  SpinContext ctx(6);
  SpinElement id = ctx.section(Permutation(6));
  CHECK(id.is_plus_one());
  CHECK(id.shift() == 0);

  CHECK_THROWS_AS(ctx.section(P("(1,2)", 6)), InputError);  // odd

  // s(g) * s(g^-1) is a +-1 scalar, and inverse() realizes it exactly
  auto a6 = alternating(6);
  Rng rng(2);
  for (int t = 0; t < 100; ++t) {
    const Permutation g = a6->random_element(rng);
    SpinElement s = ctx.section(g);
    SpinElement si = ctx.section(g.inverse());
    SpinElement prod = clifford_product(s, si);
    CHECK((prod.is_plus_one() || prod.is_minus_one()));
    CHECK(clifford_product(s, s.inverse()).is_plus_one());
  }
}

TEST_CASE("projection of a product is the product of projections") {
  SpinContext ctx(7);
  auto a7 = alternating(7);
  Rng rng(3);
  for (int t = 0; t < 200; ++t) {
    const Permutation g = a7->random_element(rng);
    const Permutation h = a7->random_element(rng);
    SpinElement p = clifford_product(ctx.section(g), ctx.section(h));
    CHECK(p.projection() == g * h);
  }
}

TEST_CASE("sign coherence: s(g) s(h) is always +-s(gh)") {
  for (int n = 5; n <= 7; ++n) {
    SpinContext ctx(n);
    auto an = alternating(n);
    Rng rng(4);
    for (int t = 0; t < 2000; ++t) {
      const Permutation g = an->random_element(rng);
      const Permutation h = an->random_element(rng);
      const Int v = ctx.cocycle(g, h);  // throws unless the product is +-s(gh)
      CHECK((v == 0 || v == 1));
    }
  }
}

TEST_CASE("spin cocycle hand values and normalization") {
  SpinContext ctx(5);
  auto a5 = std::make_shared<PermGroup>(
      5, std::vector<Permutation>{P("(1,2,3,4,5)", 5), P("(3,4,5)", 5)});
  const Permutation u = P("(1,2)(3,4)", 5);
  CHECK(ctx.cocycle(Permutation(5), u) == 0);  // normalized
  CHECK(ctx.cocycle(u, Permutation(5)) == 0);
  CHECK(ctx.cocycle(u, u) == 1);  // s(u)^2 = -1

  auto z2 = std::make_shared<GModule>(GModule::trivial(a5, 2, 1));
  Cochain2 delta = ctx.as_cochain2(a5, z2);
  // cocycle identity on sampled triples
  Cochain3Eval d2 = differential2(delta);
  Rng rng(5);
  for (int t = 0; t < 300; ++t) {
    CHECK(vec_is_zero(d2.eval(a5->random_element(rng), a5->random_element(rng),
                              a5->random_element(rng))));
  }
}

TEST_CASE("restriction to odd-order cyclic subgroups is a coboundary") {
  SpinContext ctx(5);
  auto a5 = std::make_shared<PermGroup>(
      5, std::vector<Permutation>{P("(1,2,3,4,5)", 5), P("(3,4,5)", 5)});
  auto z2 = std::make_shared<GModule>(GModule::trivial(a5, 2, 1));
  Cochain2 delta = ctx.as_cochain2(a5, z2);

  for (const std::string& gen : {"(1,2,3)", "(1,2,3,4,5)"}) {
    PermGroup cyc(5, {P(gen, 5)});
    auto r = solve_coboundary(delta, cyc);
    CHECK(r.phi.has_value());
  }
}

TEST_CASE("extension from the A4 spin cocycle is SL(2,3)") {
  auto a4 = std::make_shared<PermGroup>(
      4, std::vector<Permutation>{P("(1,2,3)", 4), P("(1,2)(3,4)", 4)});
  SpinContext ctx(4);
  auto z2 = std::make_shared<GModule>(GModule::trivial(a4, 2, 1));
  ExtensionData cover(a4, z2, ctx.as_cochain2(a4, z2));
  CHECK(cover.order() == 24);

  // exhaustive element-order census: SL(2,3) has orders 1:1, 2:1, 3:8, 4:6, 6:8
  std::map<int, int> census;
  for (const auto& g : a4->elements()) {
    for (Int l = 0; l < 2; ++l) {
      ExtensionData::Elem e{{l}, g};
      int order = 1;
      ExtensionData::Elem cur = e;
      while (!cover.is_identity(cur)) {
        cur = cover.mult(cur, e);
        ++order;
      }
      census[order]++;
    }
  }
  CHECK(census[1] == 1);
  CHECK(census[2] == 1);  // unique involution (central)
  CHECK(census[3] == 8);
  CHECK(census[4] == 6);
  CHECK(census[6] == 8);
}

TEST_CASE("normalization is idempotent under repeated products") {
  SpinContext ctx(8);
  auto a8 = alternating(8);
  Rng rng(6);
  for (int t = 0; t < 50; ++t) {
    const Permutation g = a8->random_element(rng);
    const Permutation h = a8->random_element(rng);
    SpinElement once = clifford_product(ctx.section(g), ctx.section(h));
    SpinElement sq1 = clifford_product(once, once);
    SpinElement sq2 = clifford_product(once, once);
    CHECK(sq1 == sq2);
  }
}
