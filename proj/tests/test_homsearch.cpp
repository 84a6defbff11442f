#include <algorithm>  // for sort
#include <random>     // for mt19937
#include <vector>     // for vector

#include "catch_amalgamated.hpp"

#include "oracles.hpp"

#include "ualg/algebra.hpp"
#include "ualg/errors.hpp"
#include "ualg/homsearch.hpp"

namespace ualg {

  namespace {
    std::vector<std::vector<Element>> maps_of(SearchResult const& r) {
      std::vector<std::vector<Element>> out;
      for (auto const& h : r.homs) {
        out.push_back(h.map);
      }
      std::sort(out.begin(), out.end());
      return out;
    }

    std::vector<std::vector<Element>> injective_only(std::vector<std::vector<Element>> v) {
      std::erase_if(v, [](auto const& m) { return !Homomorphism{m}.injective(); });
      return v;
    }
  }  // namespace

  TEST_CASE("find_homomorphisms on cycles", "[homsearch]") {
    auto const C2 = cyclic_unary(2), C3 = cyclic_unary(3);
    REQUIRE(find_homomorphisms(C2, C3).homs.empty());
    REQUIRE(find_homomorphisms(C2, C2).homs.size() == 2);
    REQUIRE(maps_of(find_homomorphisms(C2, C2)) == oracle::all_homs(C2, C2));
    auto const C6 = cyclic_unary(6);
    auto const r  = find_homomorphisms(C6, C6, PartialMap(6).set(0, 0));
    REQUIRE(r.homs.size() == 1);
    REQUIRE(r.homs[0] == Homomorphism::identity(6));
  }

  TEST_CASE("seeds and budgets", "[homsearch]") {
    auto const C6 = cyclic_unary(6), C3 = cyclic_unary(3);
    auto const seeded = find_homomorphisms(C6, C3, PartialMap(6).set(0, 2));
    REQUIRE(seeded.homs.size() == 1);
    REQUIRE(seeded.homs[0](0) == 2);
    REQUIRE(find_homomorphisms(C6, C3, PartialMap(6).set(0, 0).set(1, 0)).homs.empty());

    auto const limited = find_homomorphisms(C6, C6, SearchBudget{10'000'000, 2});
    REQUIRE(limited.homs.size() == 2);
    REQUIRE(limited.status == SearchStatus::solution_limit);

    auto const starved = find_homomorphisms(C6, C6, SearchBudget{1, {}});
    REQUIRE(starved.exhausted());
    REQUIRE_THROWS_AS(find_homomorphism(C6, cyclic_unary(4), PartialMap(6), 1), BudgetExceeded);
    REQUIRE_THROWS_AS(find_homomorphisms(C6, trivial_algebra(Signature({{"m", 2}}))),
                      SignatureError);
  }

  TEST_CASE("homomorphisms agree with brute force", "[homsearch]") {
    std::mt19937    rng(3);
    Signature const sig({{"m", 2}, {"a", 1}});
    for (int i = 0; i < 40; ++i) {
      auto const A = oracle::random_algebra(unary_signature(), 1 + i % 4, rng);
      auto const B = oracle::random_algebra(unary_signature(), 1 + (i / 4) % 4, rng);
      auto const ref = oracle::all_homs(A, B);
      REQUIRE(maps_of(find_homomorphisms(A, B)) == ref);
      REQUIRE(maps_of(find_embeddings(A, B)) == injective_only(ref));
    }
    for (int i = 0; i < 20; ++i) {
      auto const A = oracle::random_algebra(sig, 1 + i % 3, rng);
      auto const B = i % 2 == 0 ? A : oracle::random_algebra(sig, 1 + (i / 3) % 3, rng);
      REQUIRE(maps_of(find_homomorphisms(A, B)) == oracle::all_homs(A, B));
    }
  }

  TEST_CASE("embeddings and isomorphism", "[homsearch]") {
    auto const C2 = cyclic_unary(2), C3 = cyclic_unary(3);
    REQUIRE(exists_embedding(C2, disjoint_union({C2, C3})));
    REQUIRE_FALSE(exists_embedding(C2, C3));
    REQUIRE(exists_embedding(cyclic_unary(6), direct_product({C2, C3}).algebra));
    REQUIRE(is_isomorphic(cyclic_unary(6), direct_product({C2, C3}).algebra));
    REQUIRE_FALSE(is_isomorphic(cyclic_unary(4), direct_product({C2, C2}).algebra));
  }

  TEST_CASE("membership in SP(Y)", "[homsearch]") {
    auto const C2 = cyclic_unary(2), C3 = cyclic_unary(3);
    REQUIRE(in_SP(cyclic_unary(6), {C2, C3}));
    REQUIRE_FALSE(in_SP(disjoint_union({C2, C3}), {C2, C3}));
    REQUIRE(in_SP(trivial_algebra(unary_signature()), {C3}));
    REQUIRE(in_SP(empty_algebra(unary_signature()), {C3}));

    std::vector<FiniteAlgebra> const Y{C2, C3};
    auto const sep = separate_points(disjoint_union({C2, C3}), Y);
    REQUIRE_FALSE(sep.separated);
    REQUIRE(sep.witness.has_value());

    std::mt19937 rng(17);
    for (int i = 0; i < 40; ++i) {
      std::vector<FiniteAlgebra> Yr{oracle::random_algebra(unary_signature(), 1 + i % 3, rng)};
      auto const A = oracle::random_algebra(unary_signature(), 1 + (i / 3) % 4, rng);
      REQUIRE(in_SP(A, Yr) == oracle::in_SP(A, Yr));
    }
  }

  TEST_CASE("embed_in_product gives an injective homomorphism", "[homsearch]") {
    std::vector<FiniteAlgebra> const Y{cyclic_unary(2), cyclic_unary(3)};
    auto const                       e = embed_in_product(cyclic_unary(6), Y);
    REQUIRE(e.embedding.injective());
    REQUIRE(oracle::commutes(cyclic_unary(6), e.product, e.embedding.map));
    REQUIRE_THROWS_AS(embed_in_product(disjoint_union({Y[0], Y[1]}), Y), MembershipError);
  }

}  // namespace ualg
