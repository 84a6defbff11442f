#include <random>  // for mt19937
#include <set>     // for set
#include <vector>  // for vector

#include "catch_amalgamated.hpp"

#include "oracles.hpp"

#include "ualg/errors.hpp"
#include "ualg/freeness.hpp"

namespace ualg::free {

  namespace {
    Context const V1x{Variety::V1, 1};
    Context const V0x{Variety::V0, 1};

    FreeElement nf(Context const& ctx, char const* text) {
      return normal_form(ctx, parse_term(text, ctx.generators));
    }

    FreeElement word(char const* m, std::size_t g = 0) {
      return Word{m, static_cast<std::uint32_t>(g)};
    }

    // Replaces every generator g by images[g] at the level of terms.
    Term substitute(Term const& t, std::vector<Term> const& images) {
      if (t.is_var()) {
        return images[t.var_index()];
      }
      std::vector<Term> args;
      for (auto const& a : t.args()) {
        args.push_back(substitute(a, images));
      }
      return Term::app(t.symbol(), std::move(args));
    }

    oracle::Schemas schemas(Variety v) {
      return v == Variety::V1 ? oracle::Schemas::V1 : oracle::Schemas::V0;
    }
  }  // namespace

  TEST_CASE("normal forms of the basic examples", "[freeness]") {
    REQUIRE(is_tag(nf({Variety::V1, 3}, "t(x, y, z)")));
    REQUIRE(is_zero(nf(V1x, "t(p x, p q x, q q x)")));
    REQUIRE(is_zero(nf(V0x, "t(x, p(q x), q(q x))")));
    REQUIRE(is_zero(nf(V0x, "t(p p x, p q x, q q x)")));
    REQUIRE(nf(V0x, "t(x, q x, p x)") == FreeElement(Tag{Word{"", 0}, Word{"q", 0}, Word{"p", 0}}));
    REQUIRE(is_zero(nf(V0x, "t(p p x, p x, x)")));
    REQUIRE(nf(V0x, "p q x") == word("pq"));
  }

  TEST_CASE("p and q kill tags and zero", "[freeness]") {
    FreeElement const tag = nf(V0x, "t(x, q x, p x)");
    REQUIRE(is_tag(tag));
    for (auto const& e : {tag, FreeElement(Zero{})}) {
      REQUIRE(is_zero(apply_p(e)));
      REQUIRE(is_zero(apply_q(e)));
    }
    REQUIRE(is_zero(nf(V0x, "p t(x, q x, p x)")));
    REQUIRE(is_zero(nf(V1x, "q 0")));
  }

  TEST_CASE("normal forms are idempotent", "[freeness]") {
    auto const layers = oracle::terms_by_depth(2, 2);
    for (auto v : {Variety::V1, Variety::V0}) {
      Context const ctx{v, 2};
      for (auto const& layer : layers) {
        for (auto const& t : layer) {
          auto const e = normal_form(ctx, t);
          REQUIRE(normal_form(ctx, embed(e)) == e);
        }
      }
    }
  }

  TEST_CASE("normal forms agree with the schema oracle on small terms", "[freeness]") {
    auto const layers = oracle::terms_by_depth(2, 2);
    for (auto v : {Variety::V1, Variety::V0}) {
      Context const ctx{v, 2};
      for (auto const& layer : layers) {
        for (auto const& t : layer) {
          REQUIRE(embed(normal_form(ctx, t)) == oracle::normalise(schemas(v), t));
        }
      }
    }
  }

  TEST_CASE("words over one generator are a free M-set", "[freeness]") {
    std::set<FreeElement> seen;
    auto const            words = words_up_to(6);
    for (auto const& m : words) {
      Term t = Term::var(0);
      for (auto it = m.rbegin(); it != m.rend(); ++it) {
        t = Term::app(std::string(1, *it), {t});
      }
      seen.insert(normal_form(V1x, t));
    }
    REQUIRE(seen.size() == words.size());
  }

  TEST_CASE("substitutions", "[freeness]") {
    Context const two{Variety::V0, 2};
    auto const    id = subst_hom(two, {generator(0), generator(1)});
    for (auto const& e : elements_up_to_depth(two, 3)) {
      REQUIRE(id(e) == e);
    }

    auto const shift = subst_hom(V0x, {word("q")});
    REQUIRE(shift(word("pq")) == word("pqq"));

    auto const push  = subst_hom(V0x, {word("p")});
    auto const image = push(nf(V0x, "t(x, q x, p x)"));
    auto const ref   = oracle::apply_t(oracle::Schemas::V0,
                                     embed(word("p")),
                                     embed(word("qp")),
                                     embed(word("pp")));
    REQUIRE(embed(image) == ref);
    REQUIRE(image == FreeElement(Tag{Word{"p", 0}, Word{"qp", 0}, Word{"pp", 0}}));
    REQUIRE_THROWS_AS(subst_hom(two, {generator(0)})(word("p", 1)), TermError);
  }

  TEST_CASE("substitution commutes with normalisation", "[freeness]") {
    auto const         layers = oracle::terms_by_depth(1, 2);
    std::vector<Term> images{parse_term("p q x", 1), parse_term("t(x, q x, p x)", 1),
                             parse_term("q x", 1), parse_term("x", 1)};
    for (auto v : {Variety::V1, Variety::V0}) {
      Context const ctx{v, 1};
      for (auto const& img : images) {
        auto const sigma = subst_hom(ctx, {normal_form(ctx, img)});
        for (auto const& layer : layers) {
          for (auto const& t : layer) {
            REQUIRE(sigma(normal_form(ctx, t)) == normal_form(ctx, substitute(t, {img})));
          }
        }
      }
    }
  }

  TEST_CASE("free pairs", "[freeness]") {
    for (auto v : {Variety::V0, Variety::V1}) {
      for (std::size_t depth : {3, 4}) {
        auto const cert = verify_free_pair(v, depth);
        REQUIRE(cert);
        REQUIRE(cert.depth == depth);
      }
    }
    // Generators and 0 have depth 0.
    REQUIRE(elements_up_to_depth({Variety::V1, 2}, 0).size() == 3);
  }

  TEST_CASE("no free triple in V1", "[freeness]") {
    for (std::size_t L : {1, 3}) {
      auto const cert = no_free_triple_bounded(L);
      REQUIRE(cert);
      REQUIRE(cert.t_xyz_survives);
      std::size_t const words = (std::size_t(1) << (L + 1)) - 1;
      REQUIRE(cert.word_triples == words * words * words);
      REQUIRE(cert.triples == (words + 1) * (words + 1) * (words + 1));
    }
    REQUIRE(is_zero(apply_t(Variety::V0, word("p"), word("pq"), word("qq"))));
  }

  TEST_CASE("triple witnesses", "[freeness]") {
    auto const e = witness_triple_hom("", "", "");
    REQUIRE(e.after_hgf == std::vector<FreeElement>{word(""), word(""), word("")});
    auto const w = witness_triple_hom("p", "q", "pq");
    REQUIRE(w.after_hgf == std::vector<FreeElement>{word("p"), word("q"), word("pq")});

    std::mt19937                       rng(42);
    std::uniform_int_distribution<int> len(0, 8), bit(0, 1);
    auto random_word = [&] {
      MWord m;
      for (int i = len(rng); i > 0; --i) {
        m += bit(rng) ? 'q' : 'p';
      }
      return m;
    };
    for (int i = 0; i < 100; ++i) {
      auto const a = random_word(), b = random_word(), c = random_word();
      REQUIRE_NOTHROW(witness_triple_hom(a, b, c));
    }
  }

  TEST_CASE("pair homomorphisms reject elements outside the pair", "[freeness]") {
    PairHom const f(Variety::V0, word("p"), word("q"));
    REQUIRE(f(word("pq")) == word("pq"));
    REQUIRE_THROWS_AS(f(word("")), TermError);
  }

  TEST_CASE("term text", "[freeness]") {
    REQUIRE(parse_term("pqx", 1) == parse_term("p (q x)", 1));
    REQUIRE(parse_term("t(x,y,z)", 3) == Term::app("t", {Term::var(0), Term::var(1), Term::var(2)}));
    REQUIRE(to_string(nf(V0x, "t(x, q x, p x)"), 1) == "t(x, qx, px)");
    REQUIRE(generator_name(4, 5) == "x4");
    REQUIRE_THROWS_AS(parse_term("t(x, y)", 2), Error);
    REQUIRE_THROWS_AS(parse_term("w", 1), Error);
    for (auto const& e : elements_up_to_depth({Variety::V0, 3}, 2)) {
      REQUIRE(normal_form({Variety::V0, 3}, parse_term(to_string(e, 3), 3)) == e);
    }
  }

}  // namespace ualg::free
