#include <random>  // for mt19937
#include <vector>  // for vector

#include "catch_amalgamated.hpp"

#include "oracles.hpp"

#include "ualg/algebra.hpp"
#include "ualg/enumerate.hpp"
#include "ualg/errors.hpp"
#include "ualg/homsearch.hpp"
#include "ualg/prevariety.hpp"

namespace ualg {

  namespace {
    FiniteAlgebra const C2 = cyclic_unary(2);
    FiniteAlgebra const C3 = cyclic_unary(3);

    std::vector<Element> range(Element lo, Element hi) {
      std::vector<Element> v;
      for (Element x = lo; x < hi; ++x) {
        v.push_back(x);
      }
      return v;
    }

    std::vector<std::vector<Element>> raw(std::vector<Homomorphism> const& maps) {
      std::vector<std::vector<Element>> out;
      for (auto const& m : maps) {
        out.push_back(m.map);
      }
      return out;
    }
  }  // namespace

  TEST_CASE("prevariety contexts", "[prevariety]") {
    REQUIRE_THROWS_AS(PrevarietyCtx(std::vector<FiniteAlgebra>{}), SignatureError);
    REQUIRE_THROWS_AS(PrevarietyCtx({C2, trivial_algebra(Signature({{"m", 2}}))}),
                      SignatureError);
    PrevarietyCtx const P{C2, C3};
    REQUIRE(P.contains(cyclic_unary(6)));
    REQUIRE_FALSE(P.contains(cyclic_unary(4)));
    REQUIRE_THROWS_AS(P.require(cyclic_unary(4), "C4"), MembershipError);
  }

  TEST_CASE("free algebras", "[prevariety]") {
    auto const F = free_algebra({C2, C3}, 1);
    REQUIRE(F.algebra.size() == 6);
    REQUIRE(is_isomorphic(F.algebra, cyclic_unary(6)));
    REQUIRE(F.generators.size() == 1);
    REQUIRE(generated_subalgebra(F.algebra, {F.generators[0]}).algebra.size() == 6);

    REQUIRE(free_algebra({C2}, 0).algebra.size() == 0);
    REQUIRE(is_isomorphic(free_algebra({C2}, 1).algebra, C2));

    // Universal property on two generators: every assignment into a
    // generator extends uniquely.
    PrevarietyCtx const P{C2, C3};
    auto const          F2 = free_algebra(P, 2);
    for (auto const& Y : P.generators()) {
      for (Element a = 0; a < Y.size(); ++a) {
        for (Element b = 0; b < Y.size(); ++b) {
          std::size_t extensions = 0;
          for (auto const& h : oracle::all_homs(F2.algebra, Y)) {
            extensions += h[F2.generators[0]] == a && h[F2.generators[1]] == b;
          }
          REQUIRE(extensions == 1);
        }
      }
    }
  }

  TEST_CASE("coproducts", "[prevariety]") {
    PrevarietyCtx const U{disjoint_union({C2, C3})};
    auto const          cp = coproduct(U, {C2, C3});
    REQUIRE(cp.algebra.size() == 5);
    REQUIRE(is_isomorphic(cp.algebra, disjoint_union({C2, C3})));
    REQUIRE(cp.coprojection_injective(0));
    REQUIRE(cp.coprojection_injective(1));
    REQUIRE(cp.index.size() == 6);

    REQUIRE(coproduct({C2, C3}, {C2, C3}).algebra.size() == 1);

    auto const one = coproduct({C3}, {C3});
    REQUIRE(one.algebra == C3);
    REQUIRE(one.coprojections[0] == Homomorphism::identity(3));

    REQUIRE_THROWS_AS(coproduct({C2}, {C3}), MembershipError);
  }

  TEST_CASE("coproduct criterion", "[prevariety]") {
    PrevarietyCtx const        U{disjoint_union({C2, C3})};
    auto const                 B = disjoint_union({C2, C3});
    std::vector<FiniteAlgebra> f{C2, C3};
    std::vector<Homomorphism>  maps{{{0, 1}}, {{2, 3, 4}}};
    REQUIRE(is_coproduct(U, f, B, maps));

    PrevarietyCtx const        P3{C3};
    std::vector<FiniteAlgebra> first{C3};
    std::vector<Homomorphism>  incl{{{0, 1, 2}}};
    auto const                 check = check_coproduct(P3, first, disjoint_union({C3, C3}), incl);
    REQUIRE_FALSE(check);
    REQUIRE_FALSE(check.generated);
    REQUIRE(is_coproduct(P3, first, C3, incl));

    // Canonical coproducts satisfy the universal property literally.
    std::vector<FiniteAlgebra> targets;
    for (auto& T : algebras_up_to_iso(unary_signature(), 4)) {
      targets.push_back(std::move(T));
    }
    std::vector<FiniteAlgebra> const Y{C2, C3};
    for (auto const& fs : std::vector<std::vector<FiniteAlgebra>>{
             {C2}, {C2, C2}, {cyclic_unary(6), C2}, {C3, trivial_algebra(unary_signature())}}) {
      auto const cp = coproduct(PrevarietyCtx(Y), fs);
      REQUIRE(oracle::universal_property(Y, fs, cp.algebra, raw(cp.coprojections), targets));
    }
  }

  TEST_CASE("compatibility and comfort", "[prevariety]") {
    REQUIRE(is_compatible({disjoint_union({C2, C3})}, {C2, C3}));
    REQUIRE_FALSE(is_compatible({C2, C3}, {C2, C3}));
    REQUIRE(is_compatible({C2, C3}, {cyclic_unary(6)}));

    auto const T = trivial_algebra(unary_signature());
    REQUIRE(is_comfortable({C2}, T, C2));
    REQUIRE_FALSE(is_comfortable({C2}, C2, T));
    REQUIRE(is_comfortable({C3}, C3, C3));
    REQUIRE(coproduct({C3}, {C3, C3}).algebra.size() == 6);
  }

  TEST_CASE("relative congruences", "[prevariety]") {
    PrevarietyCtx const P{C2, C3};
    auto const          rel = relative_congruences(P, cyclic_unary(6));
    auto const          mod = [](Element d) {
      std::vector<Element> v;
      for (Element x = 0; x < 6; ++x) {
        v.push_back(x % d);
      }
      return Congruence(v);
    };
    REQUIRE(std::find(rel.begin(), rel.end(), mod(2)) != rel.end());
    REQUIRE(std::find(rel.begin(), rel.end(), mod(3)) != rel.end());
    // Brute force over the full lattice.
    std::size_t qualifying = 0;
    for (auto const& c : all_congruences(cyclic_unary(6))) {
      qualifying += oracle::in_SP(quotient(cyclic_unary(6), c).algebra, P.generators());
    }
    REQUIRE(rel.size() == qualifying);

    REQUIRE(relative_congruences(P, trivial_algebra(unary_signature())).size() == 1);
    REQUIRE(relative_congruences({C2}, C2).size() == 2);

    REQUIRE(is_P_subdirectly_irreducible(P, C2));
    REQUIRE(is_P_subdirectly_irreducible(P, C3));
    REQUIRE_FALSE(is_P_subdirectly_irreducible(P, cyclic_unary(6)));
  }

  TEST_CASE("minimum compatible covers", "[prevariety]") {
    std::vector<FiniteAlgebra> const pair{C2, C3};
    REQUIRE(minimum_compatible_cover({C2, C3}, pair).size() == 2);
    REQUIRE(minimum_compatible_cover({disjoint_union({C2, C3})}, pair).size() == 1);
    REQUIRE(minimum_compatible_cover({C2}, std::vector<FiniteAlgebra>{}).empty());
  }

  TEST_CASE("independent subalgebras", "[prevariety]") {
    auto const U = disjoint_union({C2, C3});
    REQUIRE(is_independent({U}, U, {{0, 1}, {2, 3, 4}}));
    auto const CC = disjoint_union({C3, C3});
    REQUIRE(is_independent({C3}, CC, {range(0, 3), range(3, 6)}));
    REQUIRE(is_independent({C3}, CC, {range(0, 3)}));
    // Both subsets are the same summand: the coproduct of C3 with itself has
    // six elements, so the images cannot generate it.
    REQUIRE_FALSE(is_independent({C3}, CC, {range(0, 3), range(0, 3)}));
    REQUIRE_THROWS_AS(is_independent({C3}, CC, {{0, 1}}), Error);
  }

  TEST_CASE("chain independence", "[prevariety]") {
    auto const CC = disjoint_union({C3, C3});
    auto const r  = chain_independence(CC, {range(0, 3)}, {range(3, 6)});
    REQUIRE(r);
    REQUIRE(r.steps.size() == 2);
    for (auto const& step : r.steps) {
      for (auto const& h : step.retractions) {
        REQUIRE(oracle::commutes(step.domain.algebra, step.codomain.algebra, h.map));
      }
    }
    // The retraction for the family fixing A_1 is the identity on A_1.
    auto const& last = r.steps.back();
    REQUIRE(last.codomain.inclusion.map == range(0, 3));

    auto const CCC = disjoint_union({C3, C3, C3});
    auto const r3  = chain_independence(CCC, {range(0, 6), range(0, 3)}, {range(6, 9), range(3, 6)});
    REQUIRE(r3);

    // With n = 0 there are no B_i; the empty family generates the empty
    // subalgebra, which is the initial algebra.
    auto const r0 = chain_independence(CC, {}, {});
    REQUIRE(r0);
    REQUIRE(r0.steps.size() == 1);
    REQUIRE(generated_subalgebra(CC, {}).algebra.size() == 0);

    REQUIRE_THROWS_AS(chain_independence(CC, {range(0, 3)}, {range(0, 3)}), HypothesisError);
  }

  TEST_CASE("amalgamation check", "[prevariety]") {
    auto const report = check_amalgamation_bounded({C2}, 4);
    REQUIRE(report.status == AmalgamationStatus::refuted);
    REQUIRE(report.counterexample.has_value());
    REQUIRE(report.counterexample->A.size() == 0);

    REQUIRE(check_amalgamation_bounded({C2}, 4, {true}).status == AmalgamationStatus::holds);
    REQUIRE(check_amalgamation_bounded({trivial_algebra(unary_signature())}, 3).status
            == AmalgamationStatus::holds);

    auto const tiny = check_amalgamation_bounded({C2, C3}, 5, {true, 5'000'000, 3});
    REQUIRE(tiny.status == AmalgamationStatus::budget_exhausted);
  }

  TEST_CASE("amalgamation of SP{C2,C3} up to size 5", "[prevariety]") {
    // Regression fixture from the exhaustive search.
    auto const report = check_amalgamation_bounded({C2, C3}, 5);
    REQUIRE(report.status == AmalgamationStatus::refuted);
    REQUIRE(report.members == 5);
    REQUIRE(report.counterexample->A.size() == 0);
    REQUIRE(report.counterexample->B.size() == 1);
    REQUIRE(report.counterexample->C.size() == 2);

    // Without the 1-element algebra the failure is the incompatible pair.
    auto const nt = check_amalgamation_bounded({C2, C3}, 5, {true});
    REQUIRE(nt.status == AmalgamationStatus::refuted);
    REQUIRE(nt.counterexample->A.size() == 0);
    REQUIRE(is_isomorphic(nt.counterexample->B, C2));
    REQUIRE(is_isomorphic(nt.counterexample->C, C3));
  }

  TEST_CASE("induced maps of coproducts", "[prevariety]") {
    auto const      E  = empty_algebra(unary_signature());
    auto const      CC = disjoint_union({C2, C2});
    MonotoneInstance inst{E, {C2, C2}, {{{}}, {{}}}, {CC, C2}, {{{}}, {{}}},
                          {{{0, 1}}, Homomorphism::identity(2)}};
    auto const r = induced_coproduct_map({C2}, inst);
    REQUIRE(r.injective);
    REQUIRE(oracle::commutes(r.source.algebra, r.target.algebra, r.induced.map));

    MonotoneInstance ident{E, {C2, C3}, {{{}}, {{}}}, {C2, C3}, {{{}}, {{}}},
                           {Homomorphism::identity(2), Homomorphism::identity(3)}};
    auto const id = induced_coproduct_map({C2, C3}, ident);
    REQUIRE(id.injective);
    REQUIRE(id.source.algebra == id.target.algebra);
    std::vector<MonotoneInstance> const all{inst};
    REQUIRE(check_coproduct_monotone_bounded({C2}, all));
  }

  TEST_CASE("nested independent families flatten", "[prevariety]") {
    PrevarietyCtx const P{C2};
    auto const          A = disjoint_union({C2, C2, C2, C2});
    REQUIRE(is_independent(P, A, {range(0, 4), range(4, 8)}));
    auto const B1 = generated_subalgebra(A, {0, 2});
    REQUIRE(is_independent(P, B1.algebra, {{0, 1}, {2, 3}}));
    REQUIRE(is_independent(P, A, {range(0, 2), range(2, 4), range(4, 6), range(6, 8)}));
  }

  TEST_CASE("subfamilies of independent families", "[prevariety]") {
    auto const CC  = disjoint_union({C3, C3});
    auto const CCC = disjoint_union({C3, C3, C3});
    REQUIRE(subfamily_independence_check({C3}, CC, {range(0, 3), range(3, 6)}, {0}));
    std::vector<std::vector<Element>> const three{range(0, 3), range(3, 6), range(6, 9)};
    REQUIRE(subfamily_independence_check({C3}, CCC, three, {0, 2}));
    REQUIRE(subfamily_independence_check({C3}, CCC, three, {1, 2}));
    REQUIRE(subfamily_independence_check({C3}, CCC, three, {}));
    REQUIRE_THROWS_AS(subfamily_independence_check({C2, C3}, CC, {range(0, 3)}, {0}),
                      HypothesisError);
  }

  TEST_CASE("constants census", "[prevariety]") {
    auto const one = constants_SI_census(1);
    REQUIRE(one.count() == 1);
    auto const two = constants_SI_census(2);
    REQUIRE(two.count() == 2);
    auto const three = constants_SI_census(3);
    REQUIRE(three.count() == 4);
    for (std::size_t i = 0; i < three.count(); ++i) {
      REQUIRE(three.compatible[i][i]);
      for (std::size_t j = 0; j < three.count(); ++j) {
        if (i != j) {
          REQUIRE_FALSE(three.compatible[i][j]);
        }
      }
    }
  }

}  // namespace ualg
