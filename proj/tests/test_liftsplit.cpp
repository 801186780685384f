#include "doctest.h"

#include <memory>

#include "coex/cochain.hpp"
#include "coex/common.hpp"
#include "coex/gmodule.hpp"
#include "coex/liftsplit.hpp"
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

struct SpinCover {
  GroupPtr an;
  std::shared_ptr<SpinContext> ctx;
  std::shared_ptr<ExtensionData> ext;
};

SpinCover spin_cover(int n) {
  SpinCover c;
  c.an = alternating(n);
  c.ctx = std::make_shared<SpinContext>(n);
  auto z2 = std::make_shared<GModule>(GModule::trivial(c.an, 2, 1));
  c.ext = std::make_shared<ExtensionData>(c.an, z2, c.ctx->as_cochain2(c.an, z2));
  return c;
}

}  // namespace

TEST_CASE("the identity subgroup is always liftable") {
  auto cover = spin_cover(5);
  auto r = lift_test(*cover.ext, PermGroup::trivial(5));
  REQUIRE(r.split.has_value());
  CHECK(r.split->phi.size() == 1);
}

TEST_CASE("V4 in 2.A4 is not liftable; odd cyclic subgroups are") {
  auto cover = spin_cover(4);
  PermGroup v4(4, {P("(1,2)(3,4)", 4), P("(1,3)(2,4)", 4)});
  PermGroup c3(4, {P("(1,2,3)", 4)});

  for (auto strat : {LiftOptions::Strategy::SignSearch, LiftOptions::Strategy::Linear}) {
    LiftOptions opts;
    opts.strategy = strat;
    auto rv = lift_test(*cover.ext, v4, opts);
    CHECK_FALSE(rv.split.has_value());
    auto rc = lift_test(*cover.ext, c3, opts);
    REQUIRE(rc.split.has_value());
  }
}

TEST_CASE("complement_search on Q8, D4 and a direct product") {
  // Q8: preimage of V4 inside 2.A4; its center has no complement
  auto cover = spin_cover(4);
  PermGroup v4(4, {P("(1,2)(3,4)", 4), P("(1,3)(2,4)", 4)});
  auto q8 = oracle_from_extension(*cover.ext, v4);
  CHECK(q8.size == 8);
  auto nq8 = extension_kernel_indices(*cover.ext, v4);
  CHECK_FALSE(complement_search(q8, nq8).has_value());

  // D4 over its center: every order-4 subgroup contains the center
  PermGroup d4(4, {P("(1,2,3,4)", 4), P("(1,3)", 4)});
  auto od4 = oracle_from_permgroup(d4);
  const Permutation center = P("(1,3)(2,4)", 4);
  std::vector<int> nd4{0, d4.element_index(center)};
  std::sort(nd4.begin(), nd4.end());
  CHECK_FALSE(complement_search(od4, nd4).has_value());

  // Z/2 x V4 splits over the first factor
  PermGroup z2v4(6, {P("(1,2)", 6), P("(3,4)(5,6)", 6), P("(3,5)(4,6)", 6)});
  auto oz = oracle_from_permgroup(z2v4);
  std::vector<int> nz{0, z2v4.element_index(P("(1,2)", 6))};
  std::sort(nz.begin(), nz.end());
  auto comp = complement_search(oz, nz);
  REQUIRE(comp.has_value());
  CHECK(comp->size() == 4);
}

TEST_CASE("subgroup enumeration counts") {
  PermGroup c2(2, {P("(1,2)", 2)});
  CHECK(enumerate_subgroups(c2).size() == 2);

  PermGroup a4(4, {P("(1,2,3)", 4), P("(1,2)(3,4)", 4)});
  CHECK(enumerate_subgroups(a4).size() == 10);

  PermGroup a5(5, {P("(1,2,3,4,5)", 5), P("(3,4,5)", 5)});
  CHECK(enumerate_subgroups(a5).size() == 59);
}

TEST_CASE("lift_test agrees with complement_search on every subgroup of A4") {
  auto cover = spin_cover(4);
  auto subs = enumerate_subgroups(*cover.an);
  REQUIRE(subs.size() == 10);
  for (const auto& sub : subs) {
    auto lifted = lift_test(*cover.ext, *sub.group);
    auto oracle = oracle_from_extension(*cover.ext, *sub.group);
    auto comp = complement_search(oracle, extension_kernel_indices(*cover.ext, *sub.group));
    CHECK(lifted.split.has_value() == comp.has_value());
    // strategy independence
    LiftOptions lin;
    lin.strategy = LiftOptions::Strategy::Linear;
    CHECK(lift_test(*cover.ext, *sub.group, lin).split.has_value() == comp.has_value());
  }
}

TEST_CASE("downward closure and conjugation invariance of liftability on A4") {
  auto cover = spin_cover(4);
  auto subs = enumerate_subgroups(*cover.an);
  Rng rng(13);
  for (const auto& sub : subs) {
    const bool liftable = lift_test(*cover.ext, *sub.group).split.has_value();
    if (liftable) {
      // every subgroup of a liftable subgroup is liftable
      for (const auto& smaller : enumerate_subgroups(*sub.group)) {
        CHECK(lift_test(*cover.ext, *smaller.group).split.has_value());
      }
    }
    // conjugation invariance
    const Permutation g = cover.an->random_element(rng);
    std::vector<Permutation> conj_gens;
    for (const auto& s : sub.group->generators()) conj_gens.push_back(g.inverse() * s * g);
    PermGroup hg(4, conj_gens);
    CHECK(lift_test(*cover.ext, hg).split.has_value() == liftable);
  }
}

TEST_CASE("odd-order subgroups of A5 always lift; sign-search matches linear") {
  auto cover = spin_cover(5);
  auto subs = enumerate_subgroups(*cover.an);
  REQUIRE(subs.size() == 59);
  int odd = 0;
  for (const auto& sub : subs) {
    auto r = lift_test(*cover.ext, *sub.group);
    if (sub.group->order() % 2 == 1) {
      ++odd;
      CHECK(r.split.has_value());
    }
    LiftOptions lin;
    lin.strategy = LiftOptions::Strategy::Linear;
    CHECK(lift_test(*cover.ext, *sub.group, lin).split.has_value() == r.split.has_value());
  }
  CHECK(odd == 17);  // identity, ten C3, six C5
}

TEST_CASE("splitting data verifies d phi = delta exhaustively") {
  auto cover = spin_cover(5);
  PermGroup c5(5, {P("(1,2,3,4,5)", 5)});
  auto r = lift_test(*cover.ext, c5);
  REQUIRE(r.split.has_value());
  CHECK(r.split->verified_pairs == 16);  // (5-1)^2

  // complement closure in the extension: kappa(a) kappa(b) = kappa(ab)
  const auto& bfs = c5.bfs();
  for (const auto& a : bfs.elems) {
    for (const auto& b : bfs.elems) {
      ExtensionData::Elem ka{vec_neg(r.split->phi.eval(a), 2), a};
      ExtensionData::Elem kb{vec_neg(r.split->phi.eval(b), 2), b};
      ExtensionData::Elem kab{vec_neg(r.split->phi.eval(a * b), 2), a * b};
      CHECK(cover.ext->mult(ka, kb) == kab);
    }
  }
}

TEST_CASE("preimage oracle sizes respect the guard") {
  auto cover = spin_cover(9);
  CHECK_THROWS_AS(oracle_from_extension(*cover.ext, *cover.an), ResourceError);  // 2 * 181440
}
