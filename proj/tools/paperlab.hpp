#ifndef UALG_TOOLS_PAPERLAB_HPP_
#define UALG_TOOLS_PAPERLAB_HPP_

#include <cstddef>     // for size_t
#include <functional>  // for function
#include <initializer_list>  // for initializer_list
#include <random>      // for mt19937, uniform_int_distribution
#include <stdexcept>   // for logic_error
#include <string>      // for string
#include <vector>      // for vector

#include "json.hpp"

#include "ualg/amalgam.hpp"
#include "ualg/enumerate.hpp"
#include "ualg/freeness.hpp"
#include "ualg/prevariety.hpp"
#include "ualg/quasi_identity.hpp"
#include "ualg/srs.hpp"

namespace ualg::lab {

  struct Check {
    std::string anchor;
    std::string claim;
    bool        pass;
    std::string detail;
  };

  class Lab {
   public:
    void check(std::string anchor, std::string claim, bool pass, std::string detail = {}) {
      _checks.push_back({std::move(anchor), std::move(claim), pass, std::move(detail)});
    }

    std::vector<Check> const& checks() const noexcept {
      return _checks;
    }

    bool all_pass() const {
      for (auto const& c : _checks) {
        if (!c.pass) {
          return false;
        }
      }
      return true;
    }

   private:
    std::vector<Check> _checks;
  };

  namespace detail {
    inline std::vector<FiniteAlgebra> cd(std::initializer_list<std::size_t> ds) {
      std::vector<FiniteAlgebra> out;
      for (auto d : ds) {
        out.push_back(cyclic_unary(d));
      }
      return out;
    }

    inline free::MWord random_word(std::mt19937& rng, std::size_t max_len) {
      std::uniform_int_distribution<std::size_t> len(0, max_len);
      std::uniform_int_distribution<int>         bit(0, 1);
      free::MWord                                w;
      for (std::size_t i = len(rng); i > 0; --i) {
        w += bit(rng) ? 'q' : 'p';
      }
      return w;
    }
  }  // namespace detail

  inline void cd_family(Lab& lab) {
    auto const    C = detail::cd({2, 3, 5});
    PrevarietyCtx P{C[0], C[1]};
    auto const    F = free_algebra(P, 1);
    lab.check("cd-family.free-one-generator",
              "free algebra on one generator in SP{C2, C3} is C6",
              F.algebra.size() == 6 && is_isomorphic(F.algebra, cyclic_unary(6)),
              "size " + std::to_string(F.algebra.size()));
    auto const q = parse_quasi_identity("a^6(x) = x", F.algebra.signature());
    lab.check("cd-family.free-one-generator",
              "a^6 x = x holds in the free algebra",
              quasi_identity_holds(F.algebra, q));

    auto const cp = coproduct(P, {C[0], C[1]});
    lab.check("cd-family.pairwise-incompatible",
              "C2 and C3 are incompatible in SP{C2, C3}; their coproduct is trivial",
              !is_compatible(P, {C[0], C[1]}) && cp.algebra.size() == 1,
              "coproduct size " + std::to_string(cp.algebra.size()));

    PrevarietyCtx const U{disjoint_union({C[0], C[1]})};
    auto const          cpu = coproduct(U, {C[0], C[1]});
    lab.check("cd-family.union-compatible",
              "C2 and C3 are compatible in SP{C2 + C3}, coproduct C2 + C3",
              is_compatible(U, {C[0], C[1]}) && cpu.algebra.size() == 5,
              "coproduct size " + std::to_string(cpu.algebra.size()));

    std::vector<std::string> si;
    for (auto const& A : algebras_up_to_iso(unary_signature(), 6)) {
      if (A.size() >= 2 && P.contains(A) && is_P_subdirectly_irreducible(P, A)) {
        si.push_back(std::to_string(A.size()));
      }
    }
    bool const si_ok = si == std::vector<std::string>{"2", "3"};
    lab.check("cd-family.relative-si",
              "the P-subdirectly irreducible members of size <= 6 are C2 and C3",
              si_ok,
              std::to_string(si.size()) + " found");

    std::vector<FiniteAlgebra> const pair{C[0], C[1]};
    auto const cover_P = minimum_compatible_cover(P, pair);
    auto const cover_U = minimum_compatible_cover(U, pair);
    lab.check("cd-family.cover",
              "minimum compatible covers have 2 blocks in SP{C2, C3} and 1 in SP{C2 + C3}",
              cover_P.size() == 2 && cover_U.size() == 1);

    PrevarietyCtx const unions{disjoint_union({C[0], C[1]}),
                               disjoint_union({C[0], C[2]}),
                               disjoint_union({C[1], C[2]})};
    bool pairs_ok = is_compatible(unions, {C[0], C[1]}) && is_compatible(unions, {C[0], C[2]})
                    && is_compatible(unions, {C[1], C[2]});
    lab.check("cd-family.pairwise-unions",
              "with generators C2+C3, C2+C5, C3+C5 every two of C2, C3, C5 are compatible",
              pairs_ok);
    lab.check("cd-family.pairwise-unions",
              "with generators C2+C3, C2+C5, C3+C5 the three together are not",
              !is_compatible(unions, {C[0], C[1], C[2]}));
  }

  inline void no_free_triple(Lab& lab) {
    using namespace free;
    Context const one{Variety::V1, 1};
    std::size_t   tags = 0, zero = 0;
    auto const    words = words_up_to(4);
    for (auto const& a : words) {
      for (auto const& b : words) {
        for (auto const& c : words) {
          ++tags;
          zero += is_zero(apply_t(one.variety, Word{a, 0}, Word{b, 0}, Word{c, 0}));
        }
      }
    }
    lab.check("no-free-triple.two-generated",
              "every t(u, v, w) of words over one generator is 0 in V1 (length <= 4)",
              tags == zero,
              std::to_string(zero) + "/" + std::to_string(tags));
    Context const three{Variety::V1, 3};
    lab.check("no-free-triple.three-generated",
              "t(x, y, z) survives in the free V1-algebra on three generators",
              is_tag(normal_form(three, parse_term("t(x, y, z)", 3))));
    auto const pair = verify_free_pair(Variety::V1, 4);
    lab.check("no-free-triple.free-pair",
              "px, qx are free generators in V1 (depth 4)",
              static_cast<bool>(pair),
              std::to_string(pair.elements) + " normal forms");
    auto const cert = no_free_triple_bounded(4);
    lab.check("no-free-triple.certificate",
              "no triple of one-generator elements is free (length <= 4)",
              static_cast<bool>(cert),
              std::to_string(cert.excluded_nonword) + " excluded, "
                  + std::to_string(cert.word_triples_t_zero) + " with t = 0");
  }

  inline void free_pair(Lab& lab) {
    using namespace free;
    Context const one{Variety::V0, 1};
    lab.check("free-pair.not-free-triple",
              "t(px, pqx, qqx) = 0 in V0",
              is_zero(normal_form(one, parse_term("t(p x, p q x, q q x)", 1))));
    lab.check("free-pair.surviving-tag",
              "t(x, qx, px) survives in V0",
              is_tag(normal_form(one, parse_term("t(x, q x, p x)", 1))));
    auto const pair = verify_free_pair(Variety::V0, 4);
    lab.check("free-pair.free-pair",
              "px, qx are free generators in V0 (depth 4)",
              static_cast<bool>(pair),
              std::to_string(pair.elements) + " normal forms");
  }

  inline void triple_witness(Lab& lab) {
    using namespace free;
    std::mt19937 rng(20240101);
    std::size_t  ok = 0;
    std::size_t const trials = 100;
    for (std::size_t i = 0; i < trials; ++i) {
      auto a = detail::random_word(rng, 8);
      auto b = detail::random_word(rng, 8);
      auto c = detail::random_word(rng, 8);
      try {
        witness_triple_hom(a, b, c);
        ++ok;
      } catch (std::logic_error const&) {
      }
    }
    lab.check("triple-witness.composite",
              "hgf sends (px, pqx, pqqx) to (ax, bx, cx) for 100 random word triples",
              ok == trials,
              std::to_string(ok) + "/" + std::to_string(trials));
    auto w = witness_triple_hom("p", "q", "pq");
    lab.check("triple-witness.example",
              "(p, q, pq) gives images (px, qx, pqx)",
              to_string(w.after_hgf[0], 1) == "px" && to_string(w.after_hgf[1], 1) == "qx"
                  && to_string(w.after_hgf[2], 1) == "pqx");
  }

  inline void monoid_amalgam(Lab& lab) {
    using namespace srs;
    auto const inv = parse_presentation("x y z\nx y = 1\nz x = 1\n");
    auto const kb  = knuth_bendix(inv);
    auto const& al = inv.alphabet;
    bool const y_is_z = kb.system.reduce(al.parse("y")) == kb.system.reduce(al.parse("z"));
    lab.check("monoid-amalgam.inverses",
              "adjoining a right inverse y and a left inverse z to x forces y = z",
              kb.complete && y_is_z,
              std::to_string(kb.system.rules().size()) + " rules");
    lab.check("monoid-amalgam.inverses",
              "xy and zx both reduce to 1",
              kb.system.reduce(al.parse("xy")).empty()
                  && kb.system.reduce(al.parse("zx")).empty());

    auto const b1 = parse_presentation("u1 x y\ny = x u1\n");
    auto const b2 = parse_presentation("u2 x y\ny = x u2\n");
    auto const b3 = parse_presentation("x y w\nx w = 1\nw x = 1\n");
    auto const two = coproduct_presentation({b1, b2}, {"x", "y"});
    auto const kb2 = knuth_bendix(two);
    auto const& a2 = two.alphabet;
    bool const distinct = kb2.system.reduce(a2.parse("u1")) != kb2.system.reduce(a2.parse("u2"));
    bool const equal_x  = kb2.system.reduce(a2.parse("x u1")) == kb2.system.reduce(a2.parse("x u2"));
    lab.check("monoid-amalgam.distinguished",
              "in the coproduct of the two monoids u1 != u2 while x u1 = x u2",
              kb2.complete && distinct && equal_x);
    auto const three = coproduct_presentation({b1, b2, b3}, {"x", "y"});
    auto const kb3   = knuth_bendix(three);
    auto const& a3   = three.alphabet;
    lab.check("monoid-amalgam.inverse-factor",
              "adding a factor in which x is invertible forces u1 = u2",
              kb3.complete
                  && kb3.system.reduce(a3.parse("u1")) == kb3.system.reduce(a3.parse("u2")));
  }

  inline void amalgam_torsion(Lab& lab) {
    auto const  ctx     = symmetric_amalgam(3);
    std::size_t checked = 0, agree = 0;
    for (auto const& s : alternating_strings(ctx, 4)) {
      bool const expect = s.empty() || s.size() % 2 == 1;
      ++checked;
      agree += static_cast<bool>(coset_torsion_scan(ctx, s)) == expect;
    }
    lab.check("amalgam-torsion.cosets",
              "in Sym(3) *_B Sym(3) a coset has torsion iff its string is empty or odd (length <= 4)",
              checked == agree,
              std::to_string(agree) + "/" + std::to_string(checked) + " cosets");
    bool survey_ok = true;
    for (std::size_t n = 2; n <= 5; ++n) {
      auto s    = stabilizer_coset_survey(n);
      survey_ok = survey_ok && static_cast<bool>(s) && s.cosets == n;
    }
    lab.check("amalgam-torsion.stabilizer",
              "every left coset of a point stabilizer in Sym(n) has an element of order <= 2 (n <= 5)",
              survey_ok);
  }

  inline void chain(Lab& lab) {
    auto const A0 = disjoint_union({cyclic_unary(3), cyclic_unary(3), cyclic_unary(3)});
    auto const report = chain_independence(A0,
                                           {{3, 4, 5, 6, 7, 8}, {6, 7, 8}},
                                           {{0, 1, 2}, {3, 4, 5}});
    lab.check("chain.independent",
              "B1, B2 are independent for the chain C3+C3+C3 > C3+C3 > C3",
              static_cast<bool>(report));
  }

  inline void constants_census(Lab& lab) {
    auto const census = constants_SI_census(3);
    bool       pairwise = true;
    for (std::size_t i = 0; i < census.count(); ++i) {
      for (std::size_t j = 0; j < census.count(); ++j) {
        pairwise = pairwise && census.compatible[i][j] == (i == j);
      }
    }
    lab.check("constants.census",
              "three constants: 4 subdirectly irreducible algebras, one per partition class",
              census.count() == 4);
    lab.check("constants.incompatible",
              "algebras with distinct constant partitions are incompatible",
              pairwise);
  }

  inline void amalgamation(Lab& lab) {
    PrevarietyCtx const P{cyclic_unary(2)};
    auto const r = check_amalgamation_bounded(P, 4);
    lab.check("amalgamation.empty-and-trivial",
              "SP{C2} fails amalgamation (members of size <= 4), witnessed by the empty algebra",
              r.status == AmalgamationStatus::refuted && r.counterexample
                  && r.counterexample->A.size() == 0);
    AmalgamationOptions opts;
    opts.nontrivial_only = true;
    auto const r2 = check_amalgamation_bounded(P, 4, opts);
    lab.check("amalgamation.nontrivial",
              "SP{C2} amalgamates among members with at least two elements (size <= 4)",
              r2.status == AmalgamationStatus::holds,
              std::to_string(r2.squares) + " squares");
  }

  struct Suite {
    std::string                name;
    std::string                description;
    std::function<void(Lab&)>  run;
  };

  inline std::vector<Suite> const& suites() {
    static std::vector<Suite> const all{
        {"cd-family", "cyclic unary algebras: free algebras, compatibility, covers", cd_family},
        {"no-free-triple", "V1: two-generated tags vanish, no free triple", no_free_triple},
        {"free-pair", "V0: px, qx free, t(px, pqx, qqx) = 0", free_pair},
        {"triple-witness", "V0: maps sending (px, pqx, pqqx) to any word triple", triple_witness},
        {"monoid-amalgam", "monoid presentations where generators fall together", monoid_amalgam},
        {"amalgam-torsion", "torsion in cosets of amalgamated free products", amalgam_torsion},
        {"chain", "independence along a chain of subalgebras", chain},
        {"constants-census", "algebras of constants", constants_census},
        {"amalgamation", "bounded amalgamation check", amalgamation},
    };
    return all;
  }

}  // namespace ualg::lab

#endif  // UALG_TOOLS_PAPERLAB_HPP_
