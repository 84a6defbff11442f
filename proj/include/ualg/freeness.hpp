#ifndef UALG_FREENESS_HPP_
#define UALG_FREENESS_HPP_

#include <algorithm>  // for sort, adjacent_find
#include <cctype>     // for isspace, isalnum
#include <cstddef>    // for size_t
#include <optional>   // for optional
#include <stdexcept>  // for logic_error
#include <string>     // for string
#include <utility>    // for move
#include <variant>    // for variant, get_if, holds_alternative
#include <vector>     // for vector

#include "errors.hpp"
#include "term.hpp"

// Normal forms for the free algebras of two varieties with a constant 0,
// unary p and q, and ternary t, satisfying
//   p0 = q0 = p t(x,y,z) = q t(x,y,z) = 0,
//   t(u,v,w) = 0 whenever an argument is 0 or a value of t,
// and in addition
//   V1: t(a(x,y), b(x,y), c(x,y)) = 0 for all binary derived operations;
//   V0: t(u, pv, qv) = 0 and t(a(u,v), u, v) = 0 for all binary a.
// Every element is 0, a word m applied to a generator, or a surviving tag
// t(u,v,w) of three words.

namespace ualg::free {

  enum class Variety { V1, V0 };

  struct Context {
    Variety     variety;
    std::size_t generators;
  };

  // A word over {p, q}; the leftmost letter is applied last, so "pq"
  // applied to x is p(q(x)).
  using MWord = std::string;

  struct Zero {
    bool operator==(Zero const&) const = default;
    auto operator<=>(Zero const&) const = default;
  };

  struct Word {
    MWord       m;
    std::size_t gen = 0;

    bool operator==(Word const&) const  = default;
    auto operator<=>(Word const&) const = default;
  };

  struct Tag {
    Word u, v, w;

    bool operator==(Tag const&) const  = default;
    auto operator<=>(Tag const&) const = default;
  };

  using FreeElement = std::variant<Zero, Word, Tag>;

  inline bool is_zero(FreeElement const& e) {
    return std::holds_alternative<Zero>(e);
  }

  inline bool is_word(FreeElement const& e) {
    return std::holds_alternative<Word>(e);
  }

  inline bool is_tag(FreeElement const& e) {
    return std::holds_alternative<Tag>(e);
  }

  inline FreeElement generator(std::size_t g) {
    return Word{"", g};
  }

  ////////////////////////////////////////////////////////////////////////
  // Survival of tags
  ////////////////////////////////////////////////////////////////////////

  inline bool has_suffix(MWord const& s, MWord const& suffix) {
    return s.size() >= suffix.size()
           && s.compare(s.size() - suffix.size(), suffix.size(), suffix) == 0;
  }

  // u lies in the subalgebra generated by v: u = m v for a word m.
  inline bool in_orbit(Word const& u, Word const& v) {
    return u.gen == v.gen && has_suffix(u.m, v.m);
  }

  inline bool survives(Variety variety, Word const& u, Word const& v, Word const& w) {
    if (variety == Variety::V1) {
      // Three words lie in a subalgebra generated by two elements iff two
      // of them share a generator.
      return u.gen != v.gen && u.gen != w.gen && v.gen != w.gen;
    }
    bool const pv_qv = v.gen == w.gen && !v.m.empty() && !w.m.empty()
                       && v.m[0] == 'p' && w.m[0] == 'q'
                       && v.m.compare(1, MWord::npos, w.m, 1, MWord::npos) == 0;
    if (pv_qv) {
      return false;
    }
    return !in_orbit(u, v) && !in_orbit(u, w);
  }

  ////////////////////////////////////////////////////////////////////////
  // Operations on normal forms
  ////////////////////////////////////////////////////////////////////////

  inline FreeElement apply_unary(char letter, FreeElement const& e) {
    if (auto const* w = std::get_if<Word>(&e)) {
      return Word{letter + w->m, w->gen};
    }
    return Zero{};
  }

  inline FreeElement apply_p(FreeElement const& e) {
    return apply_unary('p', e);
  }

  inline FreeElement apply_q(FreeElement const& e) {
    return apply_unary('q', e);
  }

  // m applied to e.
  inline FreeElement apply_word(MWord const& m, FreeElement const& e) {
    if (m.empty()) {
      return e;
    }
    if (auto const* w = std::get_if<Word>(&e)) {
      return Word{m + w->m, w->gen};
    }
    return Zero{};
  }

  inline FreeElement apply_t(Variety            variety,
                             FreeElement const& a,
                             FreeElement const& b,
                             FreeElement const& c) {
    auto const* u = std::get_if<Word>(&a);
    auto const* v = std::get_if<Word>(&b);
    auto const* w = std::get_if<Word>(&c);
    if (u == nullptr || v == nullptr || w == nullptr) {
      return Zero{};
    }
    if (survives(variety, *u, *v, *w)) {
      return Tag{*u, *v, *w};
    }
    return Zero{};
  }

  // Terms use the symbols "0", "p", "q", "t"; variable i is generator i.
  inline FreeElement normal_form(Context const& ctx, Term const& t) {
    if (t.is_var()) {
      if (t.var_index() >= ctx.generators) {
        throw TermError("generator index " + std::to_string(t.var_index())
                        + " out of range");
      }
      return generator(t.var_index());
    }
    auto const& s    = t.symbol();
    auto const& args = t.args();
    if (s == "0" && args.empty()) {
      return Zero{};
    }
    if ((s == "p" || s == "q") && args.size() == 1) {
      return apply_unary(s[0], normal_form(ctx, args[0]));
    }
    if (s == "t" && args.size() == 3) {
      return apply_t(ctx.variety,
                     normal_form(ctx, args[0]),
                     normal_form(ctx, args[1]),
                     normal_form(ctx, args[2]));
    }
    throw TermError("malformed term at symbol \"" + s + "\" with "
                    + std::to_string(args.size()) + " arguments");
  }

  inline Term embed(Word const& w) {
    Term t = Term::var(w.gen);
    for (auto it = w.m.rbegin(); it != w.m.rend(); ++it) {
      t = Term::app(std::string(1, *it), {std::move(t)});
    }
    return t;
  }

  inline Term embed(FreeElement const& e) {
    if (auto const* w = std::get_if<Word>(&e)) {
      return embed(*w);
    }
    if (auto const* tag = std::get_if<Tag>(&e)) {
      return Term::app("t", {embed(tag->u), embed(tag->v), embed(tag->w)});
    }
    return Term::app("0");
  }

  // Endomorphism-style substitution: generator g goes to images[g], and
  // the result is renormalised in the target variety.
  class Substitution {
   public:
    Substitution(Variety target, std::vector<FreeElement> images)
        : _variety(target), _images(std::move(images)) {}

    FreeElement operator()(Word const& w) const {
      if (w.gen >= _images.size()) {
        throw TermError("no image for generator " + std::to_string(w.gen));
      }
      return apply_word(w.m, _images[w.gen]);
    }

    FreeElement operator()(FreeElement const& e) const {
      if (auto const* w = std::get_if<Word>(&e)) {
        return (*this)(*w);
      }
      if (auto const* tag = std::get_if<Tag>(&e)) {
        return apply_t(_variety, (*this)(tag->u), (*this)(tag->v), (*this)(tag->w));
      }
      return Zero{};
    }

    std::vector<FreeElement> const& images() const noexcept {
      return _images;
    }

   private:
    Variety                  _variety;
    std::vector<FreeElement> _images;
  };

  inline Substitution subst_hom(Context const& ctx, std::vector<FreeElement> images) {
    return Substitution(ctx.variety, std::move(images));
  }

  ////////////////////////////////////////////////////////////////////////
  // Text
  ////////////////////////////////////////////////////////////////////////

  inline std::string generator_name(std::size_t g, std::size_t count) {
    if (count <= 3) {
      return std::string(1, "xyz"[g]);
    }
    return "x" + std::to_string(g);
  }

  inline std::string to_string(FreeElement const& e, std::size_t count = 3) {
    auto word = [count](Word const& w) {
      return w.m + generator_name(w.gen, count);
    };
    if (auto const* w = std::get_if<Word>(&e)) {
      return word(*w);
    }
    if (auto const* tag = std::get_if<Tag>(&e)) {
      return "t(" + word(tag->u) + ", " + word(tag->v) + ", " + word(tag->w) + ")";
    }
    return "0";
  }

  namespace detail {
    class TermParser {
     public:
      TermParser(std::string const& s, std::size_t generators)
          : _s(s), _count(generators) {}

      Term parse() {
        Term t = expr();
        skip();
        if (_pos != _s.size()) {
          fail("unexpected trailing input");
        }
        return t;
      }

     private:
      [[noreturn]] void fail(std::string const& msg) const {
        throw ParseError(msg + " at position " + std::to_string(_pos));
      }

      void skip() {
        while (_pos < _s.size() && std::isspace(static_cast<unsigned char>(_s[_pos]))) {
          ++_pos;
        }
      }

      void expect(char c) {
        skip();
        if (_pos >= _s.size() || _s[_pos] != c) {
          fail(std::string("expected '") + c + "'");
        }
        ++_pos;
      }

      std::optional<std::size_t> generator_index(std::string const& name) const {
        for (std::size_t g = 0; g < _count; ++g) {
          if (generator_name(g, _count) == name) {
            return g;
          }
        }
        return std::nullopt;
      }

      // An identifier may run letters together: "pqx" is p(q(x)).
      Term word_term(std::string const& id) {
        std::size_t k = 0;
        while (k < id.size() && (id[k] == 'p' || id[k] == 'q')) {
          auto g = generator_index(id.substr(k));
          if (g) {
            break;
          }
          ++k;
        }
        Term inner;
        if (k == id.size()) {
          if (id.empty()) {
            fail("expected a term");
          }
          // Trailing letters apply to the following expression.
          inner = expr();
        } else {
          auto g = generator_index(id.substr(k));
          if (!g) {
            fail("unknown generator \"" + id.substr(k) + "\"");
          }
          inner = Term::var(*g);
        }
        for (std::size_t i = k; i-- > 0;) {
          inner = Term::app(std::string(1, id[i]), {std::move(inner)});
        }
        return inner;
      }

      Term expr() {
        skip();
        if (_pos >= _s.size()) {
          fail("expected a term");
        }
        if (_s[_pos] == '(') {
          ++_pos;
          Term t = expr();
          expect(')');
          return t;
        }
        if (_s[_pos] == '0') {
          ++_pos;
          return Term::app("0");
        }
        std::size_t const start = _pos;
        while (_pos < _s.size()
               && (std::isalnum(static_cast<unsigned char>(_s[_pos])) || _s[_pos] == '_')) {
          ++_pos;
        }
        std::string const id = _s.substr(start, _pos - start);
        if (id == "t") {
          expect('(');
          Term a = expr();
          expect(',');
          Term b = expr();
          expect(',');
          Term c = expr();
          expect(')');
          return Term::app("t", {std::move(a), std::move(b), std::move(c)});
        }
        return word_term(id);
      }

      std::string const& _s;
      std::size_t        _count;
      std::size_t        _pos = 0;
    };
  }  // namespace detail

  // Syntax: `0`, generators x, y, z (x0, x1, ... beyond three), unary
  // application by juxtaposition (`p q x` or `pqx`), and `t(a, b, c)`.
  inline Term parse_term(std::string const& text, std::size_t generators) {
    return detail::TermParser(text, generators).parse();
  }

  ////////////////////////////////////////////////////////////////////////
  // Enumeration of normal forms
  ////////////////////////////////////////////////////////////////////////

  inline std::vector<MWord> words_up_to(std::size_t max_len) {
    std::vector<MWord> result{""};
    for (std::size_t i = 0; i < result.size(); ++i) {
      if (result[i].size() < max_len) {
        result.push_back(result[i] + "p");
        result.push_back(result[i] + "q");
      }
    }
    return result;
  }

  // Elements of the free algebra on ctx.generators generators whose
  // shortest term has depth <= depth (generators and 0 have depth 0).
  inline std::vector<FreeElement> elements_up_to_depth(Context const& ctx,
                                                       std::size_t    depth) {
    std::vector<FreeElement> result{Zero{}};
    std::vector<Word>        short_words;
    for (auto const& m : words_up_to(depth)) {
      for (std::size_t g = 0; g < ctx.generators; ++g) {
        result.push_back(Word{m, g});
        if (m.size() < depth) {
          short_words.push_back(Word{m, g});
        }
      }
    }
    for (auto const& u : short_words) {
      for (auto const& v : short_words) {
        for (auto const& w : short_words) {
          if (survives(ctx.variety, u, v, w)) {
            result.push_back(Tag{u, v, w});
          }
        }
      }
    }
    return result;
  }

  ////////////////////////////////////////////////////////////////////////
  // Free pairs and triples
  ////////////////////////////////////////////////////////////////////////

  struct FreePairCertificate {
    std::size_t depth    = 0;
    std::size_t elements = 0;  // normal forms of F(y,z) checked
    bool        injective = false;

    explicit operator bool() const noexcept {
      return injective;
    }
  };

  // The substitution y -> px, z -> qx from F(y,z) to F(x) is one-to-one on
  // all elements of depth <= depth, i.e. every relation between px and qx
  // of that depth already holds between y and z.
  inline FreePairCertificate verify_free_pair(Variety variety, std::size_t depth) {
    Context const        two{variety, 2};
    Substitution const   sigma(variety, {Word{"p", 0}, Word{"q", 0}});
    auto const           elements = elements_up_to_depth(two, depth);
    std::vector<FreeElement> images;
    images.reserve(elements.size());
    for (auto const& e : elements) {
      images.push_back(sigma(e));
    }
    std::sort(images.begin(), images.end());
    FreePairCertificate cert;
    cert.depth     = depth;
    cert.elements  = elements.size();
    cert.injective = std::adjacent_find(images.begin(), images.end()) == images.end();
    return cert;
  }

  struct NoFreeTripleCertificate {
    std::size_t max_length          = 0;
    std::size_t triples             = 0;
    std::size_t excluded_nonword    = 0;  // some entry is 0 or a tag
    std::size_t word_triples        = 0;
    std::size_t word_triples_t_zero = 0;  // t(u,v,w) = 0 in F(x)
    bool        t_xyz_survives      = false;

    explicit operator bool() const noexcept {
      return word_triples == word_triples_t_zero && t_xyz_survives;
    }
  };

  // In V1 with one generator: a triple containing 0 or a tag cannot be free
  // (p sends it to 0), and a triple of words satisfies t(u,v,w) = 0, which is
  // not an identity since t(x,y,z) survives on three generators.
  inline NoFreeTripleCertificate no_free_triple_bounded(std::size_t max_length) {
    Context const one{Variety::V1, 1};
    std::vector<FreeElement> elements{Zero{}};
    for (auto const& m : words_up_to(max_length)) {
      elements.push_back(Word{m, 0});
    }
    NoFreeTripleCertificate cert;
    cert.max_length = max_length;
    for (auto const& a : elements) {
      for (auto const& b : elements) {
        for (auto const& c : elements) {
          ++cert.triples;
          if (!is_word(a) || !is_word(b) || !is_word(c)) {
            ++cert.excluded_nonword;
            continue;
          }
          ++cert.word_triples;
          if (is_zero(apply_t(one.variety, a, b, c))) {
            ++cert.word_triples_t_zero;
          }
        }
      }
    }
    Context const three{Variety::V1, 3};
    cert.t_xyz_survives = is_tag(
        apply_t(three.variety, generator(0), generator(1), generator(2)));
    return cert;
  }

  // A homomorphism from the subalgebra <px, qx> of F(x) to F(x), given by the
  // images of px and qx.  Since <px, qx> is free on px, qx, it is computed
  // by pulling an element back to F(y,z) and substituting.
  class PairHom {
   public:
    PairHom(Variety variety, FreeElement px_image, FreeElement qx_image)
        : _variety(variety), _sigma(variety, {std::move(px_image), std::move(qx_image)}) {}

    FreeElement operator()(FreeElement const& e) const {
      return _sigma(pull_back(e));
    }

    // The element of F(y,z) mapping to e under y -> px, z -> qx.
    FreeElement pull_back(FreeElement const& e) const {
      if (auto const* w = std::get_if<Word>(&e)) {
        return pull_back(*w);
      }
      if (auto const* tag = std::get_if<Tag>(&e)) {
        return apply_t(_variety, pull_back(tag->u), pull_back(tag->v), pull_back(tag->w));
      }
      return Zero{};
    }

    std::vector<FreeElement> const& images() const noexcept {
      return _sigma.images();
    }

   private:
    FreeElement pull_back(Word const& w) const {
      if (w.gen != 0 || w.m.empty()) {
        throw TermError("element lies outside <px, qx>");
      }
      char const first = w.m.back();
      return Word{w.m.substr(0, w.m.size() - 1), first == 'p' ? 0u : 1u};
    }

    Variety      _variety;
    Substitution _sigma;
  };

  struct TripleWitness {
    PairHom                  f, g, h;
    std::vector<FreeElement> after_f, after_gf, after_hgf;
  };

  // For words a, b, c: f (px -> a qqx, qx -> x), g (px -> b qx, qx -> x) and
  // h (px -> c x, qx -> x) compose to send (px, pqx, pqqx) to (ax, bx, cx).
  // A mismatch throws, since it would mean the normal forms are wrong.
  inline TripleWitness witness_triple_hom(MWord const& a,
                                          MWord const& b,
                                          MWord const& c,
                                          Variety      variety = Variety::V0) {
    FreeElement const x = generator(0);
    TripleWitness     r{PairHom(variety, Word{a + "qq", 0}, x),
                    PairHom(variety, Word{b + "q", 0}, x),
                    PairHom(variety, Word{c, 0}, x),
                    {},
                    {},
                    {}};
    std::vector<FreeElement> const start{Word{"p", 0}, Word{"pq", 0}, Word{"pqq", 0}};
    for (auto const& e : start) {
      r.after_f.push_back(r.f(e));
    }
    for (auto const& e : r.after_f) {
      r.after_gf.push_back(r.g(e));
    }
    for (auto const& e : r.after_gf) {
      r.after_hgf.push_back(r.h(e));
    }
    std::vector<FreeElement> const expected{Word{a, 0}, Word{b, 0}, Word{c, 0}};
    if (r.after_hgf != expected) {
      throw std::logic_error("witness_triple_hom: composite does not reach (ax, bx, cx)");
    }
    return r;
  }

}  // namespace ualg::free

#endif  // UALG_FREENESS_HPP_
