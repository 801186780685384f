#include "doctest.h"

#include <memory>
#include <set>

#include "coex/common.hpp"
#include "coex/gmodule.hpp"
#include "coex/perm.hpp"

using namespace coex;

namespace {

Permutation P(const std::string& s, int degree) { return Permutation::parse_cycles(s, degree); }

std::shared_ptr<PermGroup> S3() {
  return std::make_shared<PermGroup>(3, std::vector<Permutation>{P("(1,2)", 3), P("(1,2,3)", 3)});
}
std::shared_ptr<PermGroup> C3() {
  return std::make_shared<PermGroup>(3, std::vector<Permutation>{P("(1,2,3)", 3)});
}

Vec random_vec(Rng& rng, int k, Int m) {
  Vec v(k);
  for (auto& x : v) x = rng.residue(m);
  return v;
}

}  // namespace

TEST_CASE("trivial and sign modules act as expected") {
  auto s3 = S3();
  auto triv = GModule::trivial(s3, 3, 1);
  CHECK(triv.act({2}, P("(1,2)", 3)) == Vec{2});

  // sign action of S3 on Z/3: odd generators negate
  auto sign = GModule::matrices(s3, 3, {{{2}}, {{1}}});
  CHECK(sign.act({1}, P("(1,2)", 3)) == Vec{2});
  CHECK(sign.act({1}, P("(1,2,3)", 3)) == Vec{1});
  CHECK(sign.act({1}, P("(1,3,2)", 3)) == Vec{1});   // even word
  CHECK(sign.act({1}, P("(2,3)", 3)) == Vec{2});     // odd word
  Rng rng(3);
  sign.validate(rng);
}

TEST_CASE("inconsistent matrix data is rejected by validate") {
  auto c2 = std::make_shared<PermGroup>(2, std::vector<Permutation>{P("(1,2)", 2)});
  // order-3 matrix assigned to an involution: not a module
  auto bad = GModule::matrices(c2, 3, {{{1, 1}, {0, 1}}});
  Rng rng(0);
  CHECK_THROWS_AS(bad.validate(rng), InputError);
  // singular matrix rejected immediately
  CHECK_THROWS_AS(GModule::matrices(c2, 4, {{{2, 0}, {0, 1}}}), InputError);
}

TEST_CASE("permutation module moves coordinates with the points") {
  auto s3 = S3();
  auto perm = GModule::permutation(s3, 5);
  // e_1 * (1,2) = e_2 (0-based: coordinate 0 -> 1)
  CHECK(perm.act({1, 0, 0}, P("(1,2)", 3)) == Vec{0, 1, 0});
  CHECK(perm.act({1, 2, 3}, P("(1,2,3)", 3)) == Vec{3, 1, 2});
  Rng rng(5);
  perm.validate(rng);
}

TEST_CASE("coinduced module: sizes, epsilon, evaluate") {
  auto s3 = S3();
  auto triv = std::make_shared<GModule>(GModule::trivial(s3, 3, 1));
  auto M = CoinducedModule(triv, C3());
  CHECK(M.index() == 2);
  CHECK(M.rank() == 2);  // |M| = 3^2 = 9

  Rng rng(11);
  for (int t = 0; t < 100; ++t) {
    Vec l = random_vec(rng, 1, 3);
    CHECK(M.evaluate(M.epsilon(l)) == l);  // evaluate after epsilon is the identity
  }

  // H = G: index 1, epsilon bijective
  auto MG = CoinducedModule(triv, s3);
  CHECK(MG.rank() == 1);
  for (Int v = 0; v < 3; ++v) {
    CHECK(MG.evaluate(MG.epsilon({v})) == Vec{v});
  }
}

TEST_CASE("coinduced action satisfies (mu g)(x) = mu(g x) exhaustively") {
  auto s3 = S3();
  auto sign = std::make_shared<GModule>(GModule::matrices(s3, 3, {{{2}}, {{1}}}));
  auto M = CoinducedModule(sign, C3());
  Rng rng(17);
  const auto& elems = s3->elements();
  for (int t = 0; t < 20; ++t) {
    Vec mu = random_vec(rng, M.rank(), 3);
    for (const auto& g : elems) {
      Vec mug = M.act(mu, g);
      for (const auto& x : elems) {
        CHECK(M.value_at(mug, x) == M.value_at(mu, g * x));
      }
    }
  }
}

TEST_CASE("epsilon is G-equivariant and injective") {
  auto s3 = S3();
  auto sign = std::make_shared<GModule>(GModule::matrices(s3, 3, {{{2}}, {{1}}}));
  auto M = CoinducedModule(sign, C3());
  Rng rng(23);
  for (int t = 0; t < 100; ++t) {
    Vec l = random_vec(rng, 1, 3);
    const Permutation g = s3->random_element(rng);
    CHECK(M.act(M.epsilon(l), g) == M.epsilon(sign->act(l, g)));
  }
  // kernel check over exhaustive l
  std::set<Vec> images;
  for (Int v = 0; v < 3; ++v) {
    images.insert(M.epsilon({v}));
  }
  CHECK(images.size() == 3);
}

TEST_CASE("conjugate_iso matches its defining formula") {
  auto s3 = S3();
  auto triv = std::make_shared<GModule>(GModule::trivial(s3, 3, 1));
  auto H = C3();
  auto M = std::make_shared<CoinducedModule>(triv, H);

  // identity conjugator gives the identity map
  auto id_map = conjugate_iso(M, Permutation(3));
  Rng rng(29);
  for (int t = 0; t < 20; ++t) {
    Vec mu = random_vec(rng, M->rank(), 3);
    CHECK(id_map.apply(mu) == mu);
  }

  const Permutation g = P("(1,2)", 3);
  auto psi = conjugate_iso(M, g);
  // psi(mu * a) = psi(mu) * a on seeded random pairs
  for (int t = 0; t < 100; ++t) {
    Vec mu = random_vec(rng, M->rank(), 3);
    const Permutation a = s3->random_element(rng);
    CHECK(psi.apply(M->act(mu, a)) == psi.target->act(psi.apply(mu), a));
  }
  // epsilon_H followed by psi equals epsilon_{H^g}
  for (int t = 0; t < 100; ++t) {
    Vec l = random_vec(rng, 1, 3);
    CHECK(psi.apply(M->epsilon(l)) == psi.target->epsilon(l));
  }
  // pointwise formula: (mu psi)(x) = mu(x g^-1) * g
  for (int t = 0; t < 50; ++t) {
    Vec mu = random_vec(rng, M->rank(), 3);
    const Permutation x = s3->random_element(rng);
    CHECK(psi.target->value_at(psi.apply(mu), x) ==
          triv->act(M->value_at(mu, x * g.inverse()), g));
  }
}

TEST_CASE("refine_map re-indexes without changing the function") {
  auto s3 = S3();
  auto sign = std::make_shared<GModule>(GModule::matrices(s3, 3, {{{2}}, {{1}}}));
  auto H = C3();
  auto M = std::make_shared<CoinducedModule>(sign, H);
  auto K = std::make_shared<PermGroup>(PermGroup::trivial(3));

  auto phi = refine_map(M, K);
  CHECK(phi.target->rank() == 6);

  Rng rng(31);
  // the underlying function G -> L is unchanged
  for (int t = 0; t < 100; ++t) {
    Vec mu = random_vec(rng, M->rank(), 3);
    const Permutation x = s3->random_element(rng);
    CHECK(phi.target->value_at(phi.apply(mu), x) == M->value_at(mu, x));
  }
  // injectivity by exhaustive image enumeration (|M| = 9)
  std::set<Vec> image;
  for (Int a = 0; a < 3; ++a) {
    for (Int b = 0; b < 3; ++b) {
      image.insert(phi.apply({a, b}));
    }
  }
  CHECK(image.size() == 9);
  // G-equivariance
  for (int t = 0; t < 100; ++t) {
    Vec mu = random_vec(rng, M->rank(), 3);
    const Permutation a = s3->random_element(rng);
    CHECK(phi.apply(M->act(mu, a)) == phi.target->act(phi.apply(mu), a));
  }
  // K = H is a plain re-indexing (same transversal, same values)
  auto same = refine_map(M, H);
  for (int t = 0; t < 20; ++t) {
    Vec mu = random_vec(rng, M->rank(), 3);
    Vec out = same.apply(mu);
    for (int i = 0; i < M->index(); ++i) {
      CHECK(same.target->value_at(out, same.target->transversal().reps()[i]) ==
            M->value_at(mu, same.target->transversal().reps()[i]));
    }
  }
}

TEST_CASE("materialized coinduced module agrees with the direct action") {
  auto s3 = S3();
  auto sign = std::make_shared<GModule>(GModule::matrices(s3, 3, {{{2}}, {{1}}}));
  auto M = CoinducedModule(sign, C3());
  auto mat = M.materialize();
  Rng rng(37);
  for (int t = 0; t < 50; ++t) {
    Vec mu = random_vec(rng, M.rank(), 3);
    const Permutation g = s3->random_element(rng);
    CHECK(mat.act(mu, g) == M.act(mu, g));
  }
  mat.validate(rng);

  auto triv = std::make_shared<GModule>(GModule::trivial(s3, 2, 1));
  auto Mt = CoinducedModule(triv, C3());
  auto cp = Mt.materialize();
  CHECK(cp.kind() == GModule::Kind::CoordPerm);
  for (int t = 0; t < 50; ++t) {
    Vec mu = random_vec(rng, Mt.rank(), 2);
    const Permutation g = s3->random_element(rng);
    CHECK(cp.act(mu, g) == Mt.act(mu, g));
  }
}
