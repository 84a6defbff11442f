#ifndef UALG_AMALGAM_HPP_
#define UALG_AMALGAM_HPP_

#include <algorithm>  // for next_permutation, find
#include <array>      // for array
#include <cstddef>    // for size_t
#include <numeric>    // for iota
#include <optional>   // for optional
#include <string>     // for string
#include <utility>    // for pair, move
#include <vector>     // for vector

#include "algebra.hpp"
#include "errors.hpp"

namespace ualg {

  inline Signature group_signature() {
    return Signature({{"mul", 2}, {"inv", 1}, {"e", 0}});
  }

  // A finite group given by the tables of an algebra with operations
  // mul (binary), inv (unary) and e (zeroary), in any order.
  class FiniteGroup {
   public:
    FiniteGroup() = default;

    explicit FiniteGroup(FiniteAlgebra alg) : _alg(std::move(alg)) {
      locate_operations();
      std::size_t const n = _alg.size();
      Element const     e = identity();
      for (Element a = 0; a < n; ++a) {
        if (mul(e, a) != a || mul(a, e) != a) {
          throw SignatureError("e is not a two-sided identity");
        }
        if (mul(a, inv(a)) != e || mul(inv(a), a) != e) {
          throw SignatureError("inv(" + std::to_string(a) + ") is not an inverse");
        }
        for (Element b = 0; b < n; ++b) {
          Element const ab = mul(a, b);
          for (Element c = 0; c < n; ++c) {
            if (mul(ab, c) != mul(a, mul(b, c))) {
              throw SignatureError("mul is not associative");
            }
          }
        }
      }
    }

    FiniteAlgebra const& algebra() const noexcept {
      return _alg;
    }

    std::size_t size() const noexcept {
      return _alg.size();
    }

    Element mul(Element a, Element b) const {
      return _mul[a * _alg.size() + b];
    }

    Element inv(Element a) const {
      return _inv[a];
    }

    Element identity() const {
      return _e;
    }

    std::size_t order_of(Element a) const {
      std::size_t k = 1;
      for (Element x = a; x != _e; x = mul(x, a)) {
        ++k;
      }
      return k;
    }

    // For groups whose tables are correct by construction.
    static FiniteGroup trusted(FiniteAlgebra alg) {
      FiniteGroup g;
      g._alg = std::move(alg);
      g.locate_operations();
      return g;
    }

   private:
    void locate_operations() {
      auto const& sig = _alg.signature();
      auto        mul = sig.find("mul");
      auto        inv = sig.find("inv");
      auto        e   = sig.find("e");
      if (!mul || !inv || !e || sig[*mul].arity != 2 || sig[*inv].arity != 1
          || sig[*e].arity != 0 || sig.size() != 3) {
        throw SignatureError("a group needs exactly mul/2, inv/1 and e/0");
      }
      _mul = _alg.table(*mul);
      _inv = _alg.table(*inv);
      _e   = _alg.table(*e).front();
    }

    FiniteAlgebra        _alg;
    std::vector<Element> _mul, _inv;
    Element              _e = 0;
  };

  ////////////////////////////////////////////////////////////////////////
  // Symmetric groups
  ////////////////////////////////////////////////////////////////////////

  // Permutations of {0, ..., n-1} listed lexicographically (the identity is
  // element 0), composed as functions: (gh)(x) = g(h(x)).
  class SymmetricGroup {
   public:
    explicit SymmetricGroup(std::size_t n) : _n(n) {
      if (n == 0 || n > 7) {
        throw Error("symmetric groups are supported for 1 <= n <= 7");
      }
      std::vector<Element> p(n);
      std::iota(p.begin(), p.end(), Element(0));
      do {
        _perms.push_back(p);
      } while (std::next_permutation(p.begin(), p.end()));
      std::size_t const    size = _perms.size();
      std::vector<Element> mul(size * size), inv(size);
      std::vector<Element> composed(n);
      for (Element g = 0; g < size; ++g) {
        for (Element h = 0; h < size; ++h) {
          for (std::size_t x = 0; x < n; ++x) {
            composed[x] = _perms[g][_perms[h][x]];
          }
          Element const gh = index_of(composed);
          mul[g * size + h] = gh;
          if (gh == 0) {
            inv[g] = h;
          }
        }
      }
      _group = FiniteGroup::trusted(
          FiniteAlgebra(group_signature(), size, {std::move(mul), std::move(inv), {0}}));
    }

    std::size_t degree() const noexcept {
      return _n;
    }

    FiniteGroup const& group() const noexcept {
      return _group;
    }

    std::vector<Element> const& permutation(Element g) const {
      return _perms.at(g);
    }

    Element index_of(std::vector<Element> const& perm) const {
      auto it = std::lower_bound(_perms.begin(), _perms.end(), perm);
      if (it == _perms.end() || *it != perm) {
        throw Error("not a permutation of the right degree");
      }
      return static_cast<Element>(it - _perms.begin());
    }

    Element transposition(Element a, Element b) const {
      std::vector<Element> p(_n);
      std::iota(p.begin(), p.end(), Element(0));
      std::swap(p.at(a), p.at(b));
      return index_of(p);
    }

   private:
    std::size_t                       _n;
    std::vector<std::vector<Element>> _perms;
    FiniteGroup                       _group;
  };

  struct Subgroup {
    FiniteGroup  group;
    Homomorphism inclusion;
  };

  inline Subgroup point_stabilizer(SymmetricGroup const& sym, Element point) {
    std::vector<Element> fixing;
    for (Element g = 0; g < sym.group().size(); ++g) {
      if (sym.permutation(g).at(point) == point) {
        fixing.push_back(g);
      }
    }
    auto sub = generated_subalgebra(sym.group().algebra(), fixing);
    if (sub.inclusion.map != fixing) {
      throw std::logic_error("point_stabilizer: stabilizer is not closed");
    }
    return {FiniteGroup::trusted(std::move(sub.algebra)), std::move(sub.inclusion)};
  }

  ////////////////////////////////////////////////////////////////////////
  // Free products with amalgamation
  ////////////////////////////////////////////////////////////////////////

  struct AmalgamLetter {
    std::size_t factor;  // 0 or 1
    Element     element;

    bool operator==(AmalgamLetter const&) const  = default;
    auto operator<=>(AmalgamLetter const&) const = default;
  };

  // r_1 r_2 ... r_k b: transversal representatives from alternating factors,
  // none of them the identity, followed by an element of B.
  struct AmalgamElement {
    std::vector<AmalgamLetter> string;
    Element                    b = 0;

    std::size_t length() const noexcept {
      return string.size();
    }

    bool operator==(AmalgamElement const&) const  = default;
    auto operator<=>(AmalgamElement const&) const = default;
  };

  class AmalgamCtx {
   public:
    AmalgamCtx(FiniteGroup  g1,
               FiniteGroup  g2,
               FiniteGroup  b,
               Homomorphism to_g1,
               Homomorphism to_g2)
        : _factors{std::move(g1), std::move(g2)},
          _b(std::move(b)),
          _emb{std::move(to_g1), std::move(to_g2)} {
      for (std::size_t i = 0; i < 2; ++i) {
        if (!is_homomorphism(_b.algebra(), _factors[i].algebra(), _emb[i])
            || !_emb[i].injective()) {
          throw HypothesisError("embedding of B into factor " + std::to_string(i + 1)
                                    + " is not an injective homomorphism",
                                i);
        }
        build_transversal(i);
      }
    }

    FiniteGroup const& factor(std::size_t i) const {
      return _factors.at(i);
    }

    FiniteGroup const& amalgamated() const noexcept {
      return _b;
    }

    Homomorphism const& embedding(std::size_t i) const {
      return _emb.at(i);
    }

    // Left coset representatives of B in factor i; the identity represents B.
    std::vector<Element> const& transversal(std::size_t i) const {
      return _transversal.at(i);
    }

    // g = rep * embedding(b).
    std::pair<Element, Element> split(std::size_t i, Element g) const {
      return _split[i].at(g);
    }

    bool is_identity_rep(std::size_t i, Element r) const {
      return r == _factors[i].identity();
    }

    AmalgamElement identity() const {
      return {{}, _b.identity()};
    }

    // g * e for g in factor `letter.factor`.
    AmalgamElement left_multiply(AmalgamLetter letter, AmalgamElement e) const {
      std::size_t const i = letter.factor;
      Element           g = letter.element;
      if (!e.string.empty() && e.string.front().factor == i) {
        g = _factors[i].mul(g, e.string.front().element);
        e.string.erase(e.string.begin());
      }
      auto [rep, carry] = split(i, g);
      for (auto& l : e.string) {
        auto const& G = _factors[l.factor];
        auto [r, c]   = split(l.factor, G.mul(_emb[l.factor](carry), l.element));
        l.element     = r;
        carry         = c;
      }
      e.b = _b.mul(carry, e.b);
      if (!is_identity_rep(i, rep)) {
        e.string.insert(e.string.begin(), AmalgamLetter{i, rep});
      }
      return e;
    }

    // Folds the letters into the identity from right to left.
    AmalgamElement normal_form(std::vector<AmalgamLetter> const& word) const {
      AmalgamElement e = identity();
      for (auto it = word.rbegin(); it != word.rend(); ++it) {
        if (it->factor > 1 || it->element >= _factors[it->factor].size()) {
          throw Error("invalid letter in amalgam word");
        }
        e = left_multiply(*it, std::move(e));
      }
      return e;
    }

    // The element as a word; the B-part becomes a letter of factor 0.
    std::vector<AmalgamLetter> to_word(AmalgamElement const& e) const {
      std::vector<AmalgamLetter> w = e.string;
      w.push_back({0, _emb[0](e.b)});
      return w;
    }

    AmalgamElement multiply(AmalgamElement const& x, AmalgamElement const& y) const {
      auto           w = to_word(x);
      AmalgamElement e = y;
      for (auto it = w.rbegin(); it != w.rend(); ++it) {
        e = left_multiply(*it, std::move(e));
      }
      return e;
    }

    AmalgamElement inverse(AmalgamElement const& x) const {
      auto                       w = to_word(x);
      std::vector<AmalgamLetter> inv;
      for (auto it = w.rbegin(); it != w.rend(); ++it) {
        inv.push_back({it->factor, _factors[it->factor].inv(it->element)});
      }
      return normal_form(inv);
    }

    AmalgamElement power(AmalgamElement const& x, std::size_t k) const {
      AmalgamElement r = identity();
      for (std::size_t i = 0; i < k; ++i) {
        r = multiply(r, x);
      }
      return r;
    }

   private:
    void build_transversal(std::size_t i) {
      auto const& G = _factors[i];
      _split[i].assign(G.size(), {UNDEFINED, UNDEFINED});
      // Cosets in order of least element; the identity's coset is B.
      std::vector<Element> order(G.size());
      std::iota(order.begin(), order.end(), Element(0));
      std::swap(order[0], order[G.identity()]);
      for (auto g : order) {
        if (_split[i][g].first != UNDEFINED) {
          continue;
        }
        _transversal[i].push_back(g);
        for (Element b = 0; b < _b.size(); ++b) {
          _split[i][G.mul(g, _emb[i](b))] = {g, b};
        }
      }
    }

    std::array<FiniteGroup, 2>                                  _factors;
    FiniteGroup                                                 _b;
    std::array<Homomorphism, 2>                                 _emb;
    std::array<std::vector<Element>, 2>                         _transversal;
    std::array<std::vector<std::pair<Element, Element>>, 2>     _split;
  };

  // Sym(n) *_B Sym(n) with B the stabilizer of the last point.
  inline AmalgamCtx symmetric_amalgam(std::size_t n) {
    SymmetricGroup const sym(n);
    auto                 stab = point_stabilizer(sym, static_cast<Element>(n - 1));
    return AmalgamCtx(sym.group(), sym.group(), stab.group, stab.inclusion, stab.inclusion);
  }

  // Conjugates away matching first and last letters until the string is
  // cyclically reduced.  An element whose reduced string has length <= 1 is
  // conjugate into a factor, hence of finite order; reduced strings of length
  // >= 2 have infinite order.
  inline AmalgamElement cyclically_reduce(AmalgamCtx const& ctx, AmalgamElement e) {
    while (e.length() >= 2 && e.string.front().factor == e.string.back().factor) {
      AmalgamElement const r{{e.string.front()}, ctx.amalgamated().identity()};
      e = ctx.multiply(ctx.multiply(ctx.inverse(r), e), r);
    }
    return e;
  }

  inline bool is_torsion(AmalgamCtx const& ctx, AmalgamElement const& e) {
    return cyclically_reduce(ctx, e).length() <= 1;
  }

  inline bool is_alternating_string(AmalgamCtx const& ctx,
                                    std::vector<AmalgamLetter> const& s) {
    for (std::size_t k = 0; k < s.size(); ++k) {
      if (s[k].factor > 1) {
        return false;
      }
      auto const& t = ctx.transversal(s[k].factor);
      if (ctx.is_identity_rep(s[k].factor, s[k].element)
          || std::find(t.begin(), t.end(), s[k].element) == t.end()) {
        return false;
      }
      if (k > 0 && s[k].factor == s[k - 1].factor) {
        return false;
      }
    }
    return true;
  }

  // Every alternating string of length <= max_length, shortest first.
  inline std::vector<std::vector<AmalgamLetter>>
  alternating_strings(AmalgamCtx const& ctx, std::size_t max_length) {
    std::vector<std::vector<AmalgamLetter>> result{{}};
    for (std::size_t i = 0; i < result.size(); ++i) {
      if (result[i].size() == max_length) {
        continue;
      }
      for (std::size_t f = 0; f < 2; ++f) {
        if (!result[i].empty() && result[i].back().factor == f) {
          continue;
        }
        for (auto r : ctx.transversal(f)) {
          if (!ctx.is_identity_rep(f, r)) {
            auto s = result[i];
            s.push_back({f, r});
            result.push_back(std::move(s));
          }
        }
      }
    }
    return result;
  }

  struct CosetScan {
    std::size_t                   elements = 0;
    std::optional<AmalgamElement> torsion_witness;

    explicit operator bool() const noexcept {
      return torsion_witness.has_value();
    }
  };

  // Whether the left coset sigma B contains an element of finite order.
  inline CosetScan coset_torsion_scan(AmalgamCtx const&                 ctx,
                                      std::vector<AmalgamLetter> const& sigma) {
    if (!is_alternating_string(ctx, sigma)) {
      throw Error("coset_torsion_scan: not an alternating string of representatives");
    }
    CosetScan scan;
    for (Element b = 0; b < ctx.amalgamated().size(); ++b) {
      AmalgamElement const e{sigma, b};
      ++scan.elements;
      if (is_torsion(ctx, e)) {
        scan.torsion_witness = e;
        break;
      }
    }
    return scan;
  }

  struct CosetWitness {
    Element     image;    // where the coset sends the last point
    Element     witness;  // element of Sym(n) in the coset
    std::size_t order;
    bool        is_transposition_witness;  // the identity or (image, last)
  };

  struct StabilizerSurvey {
    std::size_t               n = 0;
    std::size_t               cosets = 0;
    std::vector<CosetWitness> witnesses;

    explicit operator bool() const noexcept {
      for (auto const& w : witnesses) {
        if (w.order > 2) {
          return false;
        }
      }
      return witnesses.size() == cosets;
    }
  };

  // In Sym(n) with B the stabilizer of the last point x, the left cosets of B
  // are indexed by the image of x; the coset sending x to y contains the
  // transposition (x y), or the identity when y = x.
  inline StabilizerSurvey stabilizer_coset_survey(std::size_t n) {
    if (n < 2 || n > 6) {
      throw Error("stabilizer_coset_survey: n must lie in [2, 6]");
    }
    SymmetricGroup const sym(n);
    auto const&          G = sym.group();
    auto const           stab  = point_stabilizer(sym, static_cast<Element>(n - 1));
    Element const        x     = static_cast<Element>(n - 1);
    // Partition Sym(n) into left cosets g B directly from the tables.
    std::vector<Element> coset_of(G.size(), UNDEFINED);
    std::vector<Element> reps;
    for (Element g = 0; g < G.size(); ++g) {
      if (coset_of[g] != UNDEFINED) {
        continue;
      }
      for (auto b : stab.inclusion.map) {
        coset_of[G.mul(g, b)] = static_cast<Element>(reps.size());
      }
      reps.push_back(g);
    }
    StabilizerSurvey survey;
    survey.n      = n;
    survey.cosets = reps.size();
    for (Element c = 0; c < reps.size(); ++c) {
      Element const y = sym.permutation(reps[c])[x];
      Element const t = y == x ? G.identity() : sym.transposition(x, y);
      if (coset_of[t] == c) {
        survey.witnesses.push_back({y, t, G.order_of(t), true});
        continue;
      }
      // Fall back to the least element of order <= 2 in the coset.
      for (Element g = 0; g < G.size(); ++g) {
        if (coset_of[g] == c && G.order_of(g) <= 2) {
          survey.witnesses.push_back({y, g, G.order_of(g), false});
          break;
        }
      }
    }
    return survey;
  }

  // g1[r] g2[r'] ... b[b], indices into the factor and B carriers.
  inline std::string to_string(AmalgamElement const& e) {
    std::string s;
    for (auto const& l : e.string) {
      s += "g" + std::to_string(l.factor + 1) + "[" + std::to_string(l.element) + "] ";
    }
    return s + "b[" + std::to_string(e.b) + "]";
  }

}  // namespace ualg

#endif  // UALG_AMALGAM_HPP_
