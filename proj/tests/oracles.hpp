#ifndef UALG_TESTS_ORACLES_HPP_
#define UALG_TESTS_ORACLES_HPP_

// Brute-force reference implementations used only by the tests.  They share
// data types with the library but none of its algorithms.

#include <algorithm>  // for find, sort
#include <cstddef>    // for size_t
#include <map>        // for map
#include <numeric>    // for iota
#include <optional>   // for optional
#include <random>     // for mt19937
#include <set>        // for set
#include <string>     // for string
#include <vector>     // for vector

#include "ualg/algebra.hpp"
#include "ualg/amalgam.hpp"
#include "ualg/srs.hpp"
#include "ualg/term.hpp"

namespace oracle {

  using ualg::Element;
  using ualg::FiniteAlgebra;
  using ualg::Term;

  // Odometer over {0..n-1}^k, last position fastest.
  inline bool next_tuple(std::vector<Element>& t, std::size_t n) {
    for (std::size_t i = t.size(); i-- > 0;) {
      if (++t[i] < n) {
        return true;
      }
      t[i] = 0;
    }
    return false;
  }

  inline Element lookup(FiniteAlgebra const& A, std::size_t op, std::vector<Element> const& args) {
    std::size_t idx = 0;
    for (auto a : args) {
      idx = idx * A.size() + a;
    }
    return A.table(op)[idx];
  }

  inline bool commutes(FiniteAlgebra const&        A,
                       FiniteAlgebra const&        B,
                       std::vector<Element> const& h) {
    for (std::size_t op = 0; op < A.signature().size(); ++op) {
      std::size_t const    k = A.signature()[op].arity;
      std::vector<Element> args(k, 0), image(k);
      if (A.size() == 0 && k > 0) {
        continue;
      }
      do {
        for (std::size_t i = 0; i < k; ++i) {
          image[i] = h[args[i]];
        }
        if (h[lookup(A, op, args)] != lookup(B, op, image)) {
          return false;
        }
      } while (k > 0 && next_tuple(args, A.size()));
    }
    return true;
  }

  // Every homomorphism A -> B, by trying all |B|^|A| maps in lexicographic
  // order.
  inline std::vector<std::vector<Element>> all_homs(FiniteAlgebra const& A,
                                                    FiniteAlgebra const& B) {
    std::vector<std::vector<Element>> out;
    if (A.size() == 0) {
      out.emplace_back();
      return out;
    }
    if (B.size() == 0) {
      return out;
    }
    std::vector<Element> h(A.size(), 0);
    do {
      if (commutes(A, B, h)) {
        out.push_back(h);
      }
    } while (next_tuple(h, B.size()));
    return out;
  }

  // A lies in SP(Y) iff homomorphisms into members of Y separate its points;
  // algebras with at most one element embed in the empty product.
  inline bool in_SP(FiniteAlgebra const& A, std::vector<FiniteAlgebra> const& Y) {
    if (A.size() <= 1) {
      return true;
    }
    std::vector<std::vector<Element>> homs;
    for (auto const& B : Y) {
      auto hs = all_homs(A, B);
      homs.insert(homs.end(), hs.begin(), hs.end());
    }
    for (Element a = 0; a < A.size(); ++a) {
      for (Element b = a + 1; b < A.size(); ++b) {
        bool split = false;
        for (auto const& h : homs) {
          split = split || h[a] != h[b];
        }
        if (!split) {
          return false;
        }
      }
    }
    return true;
  }

  // All unary algebras with operation "a" on n elements.
  inline std::vector<FiniteAlgebra> all_unary(std::size_t n) {
    std::vector<FiniteAlgebra> out;
    std::vector<Element>       t(n, 0);
    do {
      out.push_back(ualg::unary_algebra(t));
    } while (n > 0 && next_tuple(t, n));
    return out;
  }

  inline FiniteAlgebra random_algebra(ualg::Signature const& sig,
                                      std::size_t            n,
                                      std::mt19937&          rng) {
    std::uniform_int_distribution<Element> d(0, static_cast<Element>(n - 1));
    std::vector<std::vector<Element>>      tables;
    for (auto const& op : sig.operations()) {
      std::size_t len = 1;
      for (std::size_t i = 0; i < op.arity; ++i) {
        len *= n;
      }
      std::vector<Element> t(len);
      for (auto& x : t) {
        x = d(rng);
      }
      tables.push_back(std::move(t));
    }
    return FiniteAlgebra(sig, n, std::move(tables));
  }

  // Universal property checked literally against the given targets: B is in
  // SP(Y) and for every target T in SP(Y) and every family of homomorphisms
  // g_i : factors[i] -> T there is exactly one homomorphism g : B -> T with
  // g o maps[i] = g_i.
  inline bool universal_property(std::vector<FiniteAlgebra> const&              Y,
                                 std::vector<FiniteAlgebra> const&              factors,
                                 FiniteAlgebra const&                           B,
                                 std::vector<std::vector<Element>> const&       maps,
                                 std::vector<FiniteAlgebra> const&              targets) {
    for (std::size_t i = 0; i < factors.size(); ++i) {
      if (!commutes(factors[i], B, maps[i])) {
        return false;
      }
    }
    if (!in_SP(B, Y)) {
      return false;
    }
    for (auto const& T : targets) {
      if (!in_SP(T, Y)) {
        continue;
      }
      // Count extensions per family.
      std::map<std::vector<std::vector<Element>>, std::size_t> count;
      for (auto const& g : all_homs(B, T)) {
        std::vector<std::vector<Element>> fam;
        for (auto const& m : maps) {
          std::vector<Element> gi;
          for (auto x : m) {
            gi.push_back(g[x]);
          }
          fam.push_back(std::move(gi));
        }
        ++count[fam];
      }
      // Every family of homomorphisms must be hit exactly once.
      std::vector<std::vector<std::vector<Element>>> choices;
      for (auto const& F : factors) {
        choices.push_back(all_homs(F, T));
      }
      std::size_t families = 1;
      for (auto const& c : choices) {
        families *= c.size();
      }
      if (count.size() != families) {
        return false;
      }
      for (auto const& [fam, k] : count) {
        if (k != 1) {
          return false;
        }
      }
    }
    return true;
  }

  ////////////////////////////////////////////////////////////////////////
  // Identity-schema closure for the varieties over 0, p, q, t
  ////////////////////////////////////////////////////////////////////////

  enum class Schemas { V1, V0 };

  inline bool is_zero(Term const& t) {
    return !t.is_var() && t.symbol() == "0";
  }

  inline bool is_t(Term const& t) {
    return !t.is_var() && t.symbol() == "t";
  }

  inline std::size_t term_size(Term const& t) {
    std::size_t s = 1;
    if (!t.is_var()) {
      for (auto const& a : t.args()) {
        s += term_size(a);
      }
    }
    return s;
  }

  // Subterms of a unary chain p(q(...x)), itself included.
  inline std::vector<Term> spine(Term const& t) {
    std::vector<Term> out{t};
    while (!out.back().is_var() && out.back().args().size() == 1) {
      Term next = out.back().args()[0];
      out.push_back(std::move(next));
    }
    return out;
  }

  inline bool contains(std::vector<Term> const& v, Term const& t) {
    return std::find(v.begin(), v.end(), t) != v.end();
  }

  // Applies the schemas to t(a, b, c) for already normalised arguments.
  inline Term apply_t(Schemas s, Term const& a, Term const& b, Term const& c) {
    Term const zero = Term::app("0");
    if (is_zero(a) || is_zero(b) || is_zero(c) || is_t(a) || is_t(b) || is_t(c)) {
      return zero;
    }
    if (s == Schemas::V1) {
      // t(a(X,Y), b(X,Y), c(X,Y)) = 0: look for X, Y with each argument
      // obtained from X or Y by unary operations.
      std::vector<Term> cand;
      for (auto const* w : {&a, &b, &c}) {
        for (auto& u : spine(*w)) {
          cand.push_back(std::move(u));
        }
      }
      for (auto const& X : cand) {
        for (auto const& Y : cand) {
          bool all = true;
          for (auto const* w : {&a, &b, &c}) {
            auto sp = spine(*w);
            all     = all && (contains(sp, X) || contains(sp, Y));
          }
          if (all) {
            return zero;
          }
        }
      }
    } else {
      // t(u, pv, qv) = 0
      if (!b.is_var() && !c.is_var() && b.symbol() == "p" && c.symbol() == "q"
          && b.args()[0] == c.args()[0]) {
        return zero;
      }
      // t(a(u,v), u, v) = 0: a is reachable from b and c by p and q.
      std::size_t const   bound = term_size(a);
      std::vector<Term>   seen{b, c};
      for (std::size_t i = 0; i < seen.size(); ++i) {
        if (seen[i] == a) {
          return zero;
        }
        if (term_size(seen[i]) < bound) {
          for (char const* f : {"p", "q"}) {
            Term next = Term::app(f, {seen[i]});
            if (!contains(seen, next)) {
              seen.push_back(std::move(next));
            }
          }
        }
      }
    }
    return Term::app("t", {a, b, c});
  }

  // Bottom-up rewriting with p0 = q0 = p t(...) = q t(...) = 0 and the
  // t-schemas.
  inline Term normalise(Schemas s, Term const& t) {
    if (t.is_var() || is_zero(t)) {
      return t;
    }
    if (t.symbol() == "p" || t.symbol() == "q") {
      Term inner = normalise(s, t.args()[0]);
      if (is_zero(inner) || is_t(inner)) {
        return Term::app("0");
      }
      return Term::app(t.symbol(), {std::move(inner)});
    }
    return apply_t(s,
                   normalise(s, t.args()[0]),
                   normalise(s, t.args()[1]),
                   normalise(s, t.args()[2]));
  }

  // Every term over 0, p, q, t and `gens` variables of depth <= depth (a
  // variable or 0 has depth 1).
  inline std::vector<std::vector<Term>> terms_by_depth(std::size_t gens, std::size_t depth) {
    // layers[d] = terms of depth exactly d+1
    std::vector<std::vector<Term>> layers;
    std::vector<Term>              first{Term::app("0")};
    for (std::size_t g = 0; g < gens; ++g) {
      first.push_back(Term::var(g));
    }
    layers.push_back(std::move(first));
    for (std::size_t d = 1; d < depth; ++d) {
      std::vector<Term> all, next;
      for (auto const& l : layers) {
        all.insert(all.end(), l.begin(), l.end());
      }
      std::size_t const prev_begin = all.size() - layers.back().size();
      for (auto const& u : layers.back()) {
        next.push_back(Term::app("p", {u}));
        next.push_back(Term::app("q", {u}));
      }
      for (std::size_t i = 0; i < all.size(); ++i) {
        for (std::size_t j = 0; j < all.size(); ++j) {
          for (std::size_t k = 0; k < all.size(); ++k) {
            if (i >= prev_begin || j >= prev_begin || k >= prev_begin) {
              next.push_back(Term::app("t", {all[i], all[j], all[k]}));
            }
          }
        }
      }
      layers.push_back(std::move(next));
    }
    return layers;
  }

  ////////////////////////////////////////////////////////////////////////
  // Bounded congruence closure for monoid presentations
  ////////////////////////////////////////////////////////////////////////

  class WordClosure {
   public:
    WordClosure(ualg::srs::Presentation const& p, std::size_t max_len)
        : _k(p.alphabet.size()), _max(max_len) {
      std::vector<ualg::srs::Word> layer{{}};
      _words.push_back({});
      for (std::size_t len = 1; len <= max_len; ++len) {
        std::vector<ualg::srs::Word> next;
        for (auto const& w : layer) {
          for (ualg::srs::Letter a = 0; a < _k; ++a) {
            auto v = w;
            v.push_back(a);
            next.push_back(v);
          }
        }
        _words.insert(_words.end(), next.begin(), next.end());
        layer = std::move(next);
      }
      for (std::size_t i = 0; i < _words.size(); ++i) {
        _index[_words[i]] = i;
      }
      _parent.resize(_words.size());
      std::iota(_parent.begin(), _parent.end(), std::size_t(0));
      for (std::size_t i = 0; i < _words.size(); ++i) {
        auto const& w = _words[i];
        for (auto const& [l, r] : p.relations) {
          for (auto const* side : {&l, &r}) {
            auto const& other = side == &l ? r : l;
            for (std::size_t pos = 0; pos + side->size() <= w.size(); ++pos) {
              if (!std::equal(side->begin(), side->end(), w.begin() + pos)) {
                continue;
              }
              ualg::srs::Word v(w.begin(), w.begin() + pos);
              v.insert(v.end(), other.begin(), other.end());
              v.insert(v.end(), w.begin() + pos + side->size(), w.end());
              if (v.size() <= _max) {
                unite(i, _index.at(v));
              }
            }
          }
        }
      }
    }

    bool equal(ualg::srs::Word const& u, ualg::srs::Word const& v) {
      return find(_index.at(u)) == find(_index.at(v));
    }

    std::vector<ualg::srs::Word> const& words() const noexcept {
      return _words;
    }

   private:
    std::size_t find(std::size_t x) {
      while (_parent[x] != x) {
        x = _parent[x] = _parent[_parent[x]];
      }
      return x;
    }

    void unite(std::size_t a, std::size_t b) {
      a = find(a);
      b = find(b);
      if (a != b) {
        _parent[std::max(a, b)] = std::min(a, b);
      }
    }

    std::size_t                                   _k, _max;
    std::vector<ualg::srs::Word>                  _words;
    std::map<ualg::srs::Word, std::size_t>        _index;
    std::vector<std::size_t>                      _parent;
  };

  ////////////////////////////////////////////////////////////////////////
  // Amalgams
  ////////////////////////////////////////////////////////////////////////

  // Finite order found by repeated multiplication within max_steps.
  inline std::optional<std::size_t> order_by_powers(ualg::AmalgamCtx const&       ctx,
                                                    ualg::AmalgamElement const& e,
                                                    std::size_t                 max_steps) {
    auto const           id = ctx.identity();
    ualg::AmalgamElement x  = e;
    for (std::size_t k = 1; k <= max_steps; ++k) {
      if (x == id) {
        return k;
      }
      x = ctx.multiply(x, e);
    }
    return std::nullopt;
  }

}  // namespace oracle

#endif  // UALG_TESTS_ORACLES_HPP_
