#ifndef UALG_PREVARIETY_HPP_
#define UALG_PREVARIETY_HPP_

#include <algorithm>      // for sort, unique, includes, any_of
#include <cstddef>        // for size_t
#include <cstdint>        // for uint32_t
#include <functional>     // for function
#include <numeric>        // for iota
#include <optional>       // for optional
#include <stdexcept>      // for logic_error
#include <string>         // for string, to_string
#include <unordered_map>  // for unordered_map
#include <utility>        // for move, pair
#include <vector>         // for vector

#include "algebra.hpp"
#include "enumerate.hpp"
#include "errors.hpp"
#include "homsearch.hpp"

namespace ualg {

  struct ConstructionBudget {
    std::size_t max_cells    = 1'000'000;  // carrier size times index size
    std::size_t max_carrier  = 10'000;
    std::size_t max_families = 100'000;
  };

  // The prevariety P = SP(Y) generated by a finite list Y of finite algebras.
  class PrevarietyCtx {
   public:
    explicit PrevarietyCtx(std::vector<FiniteAlgebra> Y,
                           ConstructionBudget         budget = {})
        : _Y(std::move(Y)), _budget(budget) {
      if (_Y.empty()) {
        throw SignatureError("a prevariety needs at least one generator");
      }
      for (auto const& A : _Y) {
        if (A.signature() != _Y.front().signature()) {
          throw SignatureError("generators have different signatures");
        }
      }
    }

    PrevarietyCtx(std::initializer_list<FiniteAlgebra> Y)
        : PrevarietyCtx(std::vector<FiniteAlgebra>(Y)) {}

    std::vector<FiniteAlgebra> const& generators() const noexcept {
      return _Y;
    }

    Signature const& signature() const noexcept {
      return _Y.front().signature();
    }

    ConstructionBudget const& budget() const noexcept {
      return _budget;
    }

    bool contains(FiniteAlgebra const& A) const {
      return in_SP(A, _Y);
    }

    void require(FiniteAlgebra const& A, std::string const& label) const {
      if (A.signature() != signature()) {
        throw SignatureError(label + " has the wrong signature");
      }
      require_in_SP(A, _Y, label);
    }

   private:
    std::vector<FiniteAlgebra> _Y;
    ConstructionBudget         _budget;
  };

  // One index of a canonical product: a generator Y[target] and one
  // homomorphism into it from each factor.
  struct HomFamily {
    std::size_t               target;
    std::vector<Homomorphism> maps;
  };

  struct CoproductResult {
    FiniteAlgebra             algebra;
    std::vector<Homomorphism> coprojections;
    std::vector<HomFamily>    index;

    bool coprojection_injective(std::size_t i) const {
      return coprojections[i].injective();
    }
  };

  struct FreeAlgebra {
    FiniteAlgebra                                     algebra;
    std::vector<Element>                              generators;
    std::vector<std::pair<std::size_t, std::vector<Element>>> index;
  };

  namespace detail {
    struct IndexedProduct {
      FiniteAlgebra                                                algebra;
      std::vector<std::vector<Element>>                            tuples;
      std::unordered_map<std::vector<Element>, Element, VectorHash> position;

      Element at(std::vector<Element> const& tuple) const {
        return position.at(tuple);
      }
    };

    // Subalgebra of the product of Y[coords[c]] over all c generated by the
    // seed tuples.
    inline IndexedProduct
    generate_in_product(PrevarietyCtx const&                     ctx,
                        std::vector<std::size_t> const&          coords,
                        std::vector<std::vector<Element>> const& seeds) {
      auto const& Y      = ctx.generators();
      auto const& budget = ctx.budget();
      std::size_t limit  = budget.max_carrier;
      if (!coords.empty()) {
        limit = std::min(limit, budget.max_cells / coords.size());
      }
      std::vector<Element> args;
      auto apply = [&](std::size_t                               op,
                       std::vector<std::vector<Element> const*> const& a) {
        std::vector<Element> out(coords.size());
        for (std::size_t c = 0; c < coords.size(); ++c) {
          args.clear();
          for (auto p : a) {
            args.push_back((*p)[c]);
          }
          out[c] = Y[coords[c]].apply(op, args);
        }
        return out;
      };
      Closure<std::vector<Element>, VectorHash, decltype(apply)> closure(
          ctx.signature(), limit, apply);
      closure.run(seeds);
      auto tables = closure.tables();
      return {FiniteAlgebra(ctx.signature(),
                            closure.elements().size(),
                            std::move(tables)),
              closure.elements(),
              closure.index()};
    }

    inline std::vector<Homomorphism> all_homs(FiniteAlgebra const& A,
                                              FiniteAlgebra const& B) {
      auto r = find_homomorphisms(A, B);
      if (r.exhausted()) {
        throw BudgetExceeded("homomorphism enumeration exhausted its budget");
      }
      return std::move(r.homs);
    }

    // All families (Y[t], (g_i)) with g_i : factors[i] -> Y[t].  With
    // amalgamation data, only families with g_i o s_i independent of i.
    inline std::vector<HomFamily>
    hom_families(PrevarietyCtx const&                ctx,
                 std::span<FiniteAlgebra const>      factors,
                 FiniteAlgebra const*                S         = nullptr,
                 std::span<Homomorphism const>       from_S    = {}) {
      std::vector<HomFamily> result;
      auto const&            Y = ctx.generators();
      for (std::size_t t = 0; t < Y.size(); ++t) {
        std::vector<std::vector<Homomorphism>> homs;
        for (auto const& B : factors) {
          homs.push_back(all_homs(B, Y[t]));
        }
        std::vector<Homomorphism> chosen;
        std::function<void(std::size_t, std::vector<Element> const*)> rec
            = [&](std::size_t i, std::vector<Element> const* on_S) {
                if (i == factors.size()) {
                  if (result.size() >= ctx.budget().max_families) {
                    throw BudgetExceeded("more than "
                                         + std::to_string(ctx.budget().max_families)
                                         + " homomorphism families");
                  }
                  result.push_back({t, chosen});
                  return;
                }
                for (auto const& g : homs[i]) {
                  std::vector<Element> composite;
                  if (S != nullptr) {
                    composite = g.after(from_S[i]).map;
                    if (on_S != nullptr && composite != *on_S) {
                      continue;
                    }
                  }
                  chosen.push_back(g);
                  rec(i + 1, on_S != nullptr ? on_S : (S != nullptr ? &composite : nullptr));
                  chosen.pop_back();
                }
              };
        rec(0, nullptr);
      }
      return result;
    }

    inline CoproductResult
    coproduct_over(PrevarietyCtx const&           ctx,
                   std::span<FiniteAlgebra const> factors,
                   std::vector<HomFamily>         H) {
      std::vector<std::size_t> coords;
      for (auto const& fam : H) {
        coords.push_back(fam.target);
      }
      auto image = [&H](std::size_t i, Element b) {
        std::vector<Element> tuple;
        tuple.reserve(H.size());
        for (auto const& fam : H) {
          tuple.push_back(fam.maps[i](b));
        }
        return tuple;
      };
      std::vector<std::vector<Element>> seeds;
      for (std::size_t i = 0; i < factors.size(); ++i) {
        for (Element b = 0; b < factors[i].size(); ++b) {
          seeds.push_back(image(i, b));
        }
      }
      auto            prod = generate_in_product(ctx, coords, seeds);
      std::vector<Homomorphism> coprojections;
      for (std::size_t i = 0; i < factors.size(); ++i) {
        Homomorphism iota;
        for (Element b = 0; b < factors[i].size(); ++b) {
          iota.map.push_back(prod.at(image(i, b)));
        }
        coprojections.push_back(std::move(iota));
      }
      return {std::move(prod.algebra), std::move(coprojections), std::move(H)};
    }

    inline void check_signature(PrevarietyCtx const& ctx, FiniteAlgebra const& A) {
      if (A.signature() != ctx.signature()) {
        throw SignatureError("algebra signature differs from the prevariety's");
      }
    }

    inline std::vector<Element> sorted_unique(std::vector<Element> v) {
      std::sort(v.begin(), v.end());
      v.erase(std::unique(v.begin(), v.end()), v.end());
      return v;
    }
  }  // namespace detail

  ////////////////////////////////////////////////////////////////////////
  // Free algebras and coproducts
  ////////////////////////////////////////////////////////////////////////

  // Subalgebra of the product over all (A in Y, v : n -> A) generated by the
  // n projection tuples.
  inline FreeAlgebra free_algebra(PrevarietyCtx const& ctx, std::size_t n) {
    auto const&              Y = ctx.generators();
    std::vector<std::size_t> coords;
    FreeAlgebra              result;
    for (std::size_t t = 0; t < Y.size(); ++t) {
      detail::for_each_tuple(Y[t].size(), n, [&](std::span<Element const> v) {
        coords.push_back(t);
        result.index.emplace_back(t, std::vector<Element>(v.begin(), v.end()));
        if (coords.size() > ctx.budget().max_cells) {
          throw BudgetExceeded("free algebra index exceeds the cell budget");
        }
      });
    }
    std::vector<std::vector<Element>> seeds(n);
    for (std::size_t k = 0; k < n; ++k) {
      for (auto const& [t, v] : result.index) {
        seeds[k].push_back(v[k]);
      }
    }
    auto prod        = detail::generate_in_product(ctx, coords, seeds);
    result.algebra   = std::move(prod.algebra);
    for (auto const& g : seeds) {
      result.generators.push_back(prod.at(g));
    }
    return result;
  }

  // Canonical coproduct: subalgebra of the product over all hom-families
  // generated by the images of the factors.
  inline CoproductResult coproduct(PrevarietyCtx const&           ctx,
                                   std::span<FiniteAlgebra const> factors) {
    for (std::size_t i = 0; i < factors.size(); ++i) {
      ctx.require(factors[i], "factor " + std::to_string(i));
    }
    return detail::coproduct_over(ctx, factors, detail::hom_families(ctx, factors));
  }

  inline CoproductResult coproduct(PrevarietyCtx const&                 ctx,
                                   std::initializer_list<FiniteAlgebra> factors) {
    return coproduct(ctx, std::span<FiniteAlgebra const>(factors.begin(), factors.size()));
  }

  // Coproduct amalgamating S, given maps s_i : S -> factors[i]: the index
  // runs over families whose composites with the s_i all agree.
  inline CoproductResult
  amalgamated_coproduct(PrevarietyCtx const&           ctx,
                        FiniteAlgebra const&           S,
                        std::span<FiniteAlgebra const> factors,
                        std::span<Homomorphism const>  from_S) {
    if (from_S.size() != factors.size()) {
      throw Error("amalgamated_coproduct: one map from S per factor expected");
    }
    for (std::size_t i = 0; i < factors.size(); ++i) {
      ctx.require(factors[i], "factor " + std::to_string(i));
      if (!is_homomorphism(S, factors[i], from_S[i])) {
        throw Error("amalgamated_coproduct: map " + std::to_string(i)
                    + " is not a homomorphism");
      }
    }
    return detail::coproduct_over(
        ctx, factors, detail::hom_families(ctx, factors, &S, from_S));
  }

  struct CoproductCheck {
    bool                     maps_are_homomorphisms = false;
    bool                     in_P                   = false;
    bool                     generated              = false;
    bool                     extends                = false;
    std::optional<HomFamily> failing_family;

    explicit operator bool() const noexcept {
      return maps_are_homomorphisms && in_P && generated && extends;
    }
  };

  // The coproduct criterion: B lies in P, is generated by the images of the
  // maps, and for every A in Y every family g_i : factors[i] -> A extends to
  // some g : B -> A with g o maps[i] = g_i.
  inline CoproductCheck check_coproduct(PrevarietyCtx const&           ctx,
                                        std::span<FiniteAlgebra const> factors,
                                        FiniteAlgebra const&           B,
                                        std::span<Homomorphism const>  maps) {
    CoproductCheck r;
    detail::check_signature(ctx, B);
    if (maps.size() != factors.size()) {
      throw Error("is_coproduct: one map per factor expected");
    }
    for (std::size_t i = 0; i < factors.size(); ++i) {
      if (!is_homomorphism(factors[i], B, maps[i])) {
        return r;
      }
    }
    r.maps_are_homomorphisms = true;
    if (!ctx.contains(B)) {
      return r;
    }
    r.in_P = true;
    std::vector<Element> images;
    for (auto const& m : maps) {
      images.insert(images.end(), m.map.begin(), m.map.end());
    }
    if (generated_subalgebra(B, images).algebra.size() != B.size()) {
      return r;
    }
    r.generated = true;
    for (auto& fam : detail::hom_families(ctx, factors)) {
      PartialMap seed(B.size());
      bool       consistent = true;
      for (std::size_t i = 0; i < factors.size() && consistent; ++i) {
        for (Element b = 0; b < factors[i].size(); ++b) {
          Element& slot = seed.map[maps[i](b)];
          if (slot != UNDEFINED && slot != fam.maps[i](b)) {
            consistent = false;
            break;
          }
          slot = fam.maps[i](b);
        }
      }
      if (!consistent
          || !find_homomorphism(B, ctx.generators()[fam.target], seed)) {
        r.failing_family = std::move(fam);
        return r;
      }
    }
    r.extends = true;
    return r;
  }

  inline bool is_coproduct(PrevarietyCtx const&           ctx,
                           std::span<FiniteAlgebra const> factors,
                           FiniteAlgebra const&           B,
                           std::span<Homomorphism const>  maps) {
    return static_cast<bool>(check_coproduct(ctx, factors, B, maps));
  }

  ////////////////////////////////////////////////////////////////////////
  // Compatibility
  ////////////////////////////////////////////////////////////////////////

  // Every coprojection into the canonical coproduct is one-to-one.  Checked
  // a second way, by asking each pair of distinct elements of each factor to
  // be separated by some hom-family, and on success by finding embeddings of
  // all factors into the coproduct; disagreement is an internal error.
  inline bool is_compatible(PrevarietyCtx const&           ctx,
                            std::span<FiniteAlgebra const> algebras) {
    auto cp       = coproduct(ctx, algebras);
    bool injective = true;
    for (std::size_t i = 0; i < algebras.size(); ++i) {
      injective = injective && cp.coprojection_injective(i);
    }

    bool separated = true;
    for (std::size_t i = 0; i < algebras.size() && separated; ++i) {
      for (Element a = 0; a < algebras[i].size() && separated; ++a) {
        for (Element b = a + 1; b < algebras[i].size() && separated; ++b) {
          separated = std::any_of(cp.index.begin(),
                                  cp.index.end(),
                                  [&](HomFamily const& fam) {
                                    return fam.maps[i](a) != fam.maps[i](b);
                                  });
        }
      }
    }
    if (separated) {
      separated = ctx.contains(cp.algebra);
      for (std::size_t i = 0; i < algebras.size() && separated; ++i) {
        separated = exists_embedding(algebras[i], cp.algebra);
      }
    }
    if (separated != injective) {
      throw std::logic_error("is_compatible: coprojection and common-embedding "
                             "criteria disagree");
    }
    return injective;
  }

  inline bool is_compatible(PrevarietyCtx const&                 ctx,
                            std::initializer_list<FiniteAlgebra> algebras) {
    return is_compatible(
        ctx, std::span<FiniteAlgebra const>(algebras.begin(), algebras.size()));
  }

  // A is comfortable with B when A's coprojection into A + B is one-to-one.
  inline bool is_comfortable(PrevarietyCtx const& ctx,
                             FiniteAlgebra const& A,
                             FiniteAlgebra const& B) {
    std::vector<FiniteAlgebra> pair{A, B};
    return coproduct(ctx, pair).coprojection_injective(0);
  }

  ////////////////////////////////////////////////////////////////////////
  // Relative congruences and P-subdirect irreducibility
  ////////////////////////////////////////////////////////////////////////

  inline std::vector<Congruence>
  relative_congruences(PrevarietyCtx const& ctx,
                       FiniteAlgebra const& A,
                       CongruenceBounds     bounds = {}) {
    ctx.require(A, "algebra");
    std::vector<Congruence> result;
    for (auto& c : all_congruences(A, bounds)) {
      if (ctx.contains(quotient(A, c).algebra)) {
        result.push_back(std::move(c));
      }
    }
    return result;
  }

  inline SubdirectIrreducibility
  P_subdirect_irreducibility(PrevarietyCtx const& ctx,
                             FiniteAlgebra const& A,
                             CongruenceBounds     bounds = {}) {
    if (A.size() < 2) {
      throw Error("relative subdirect irreducibility needs at least 2 elements");
    }
    auto rel = relative_congruences(ctx, A, bounds);
    return monolith_of(A.size(), rel);
  }

  inline bool is_P_subdirectly_irreducible(PrevarietyCtx const& ctx,
                                           FiniteAlgebra const& A,
                                           CongruenceBounds     bounds = {}) {
    return P_subdirect_irreducibility(ctx, A, bounds).irreducible;
  }

  ////////////////////////////////////////////////////////////////////////
  // Minimum compatible cover
  ////////////////////////////////////////////////////////////////////////

  // Partition of the indices 0..n-1 into the fewest compatible blocks; among
  // those, the lexicographically least restricted growth string.
  inline std::vector<std::vector<std::size_t>>
  minimum_compatible_cover(PrevarietyCtx const&           ctx,
                           std::span<FiniteAlgebra const> algebras) {
    std::size_t const n = algebras.size();
    if (n > 20) {
      throw BudgetExceeded("minimum_compatible_cover: at most 20 algebras");
    }
    for (std::size_t i = 0; i < n; ++i) {
      ctx.require(algebras[i], "algebra " + std::to_string(i));
    }
    std::unordered_map<std::uint32_t, bool> memo;
    auto compatible = [&](std::uint32_t mask) {
      auto it = memo.find(mask);
      if (it != memo.end()) {
        return it->second;
      }
      std::vector<FiniteAlgebra> block;
      for (std::size_t i = 0; i < n; ++i) {
        if (mask & (1u << i)) {
          block.push_back(algebras[i]);
        }
      }
      bool ok = is_compatible(ctx, block);
      memo.emplace(mask, ok);
      return ok;
    };

    std::vector<std::size_t>   label(n);
    std::vector<std::uint32_t> masks;
    std::function<bool(std::size_t, std::size_t)> rec = [&](std::size_t i,
                                                            std::size_t k) {
      if (i == n) {
        return true;
      }
      std::size_t const open = masks.size();
      for (std::size_t b = 0; b <= open && b < k; ++b) {
        if (b == open) {
          masks.push_back(0);
        }
        std::uint32_t const before = masks[b];
        masks[b] |= 1u << i;
        label[i] = b;
        // Compatibility passes to subsets, so a failing block is final.
        if (compatible(masks[b]) && rec(i + 1, k)) {
          return true;
        }
        masks[b] = before;
        if (b == open) {
          masks.pop_back();
        }
      }
      return false;
    };
    for (std::size_t k = 0; k <= n; ++k) {
      masks.clear();
      if (rec(0, k)) {
        std::vector<std::vector<std::size_t>> blocks(masks.size());
        for (std::size_t i = 0; i < n; ++i) {
          blocks[label[i]].push_back(i);
        }
        return blocks;
      }
    }
    throw std::logic_error("minimum_compatible_cover: singletons must be compatible");
  }

  ////////////////////////////////////////////////////////////////////////
  // Independence
  ////////////////////////////////////////////////////////////////////////

  struct IndependenceData {
    Subalgebra                 generated;  // subalgebra generated by the union
    std::vector<FiniteAlgebra> factors;
    std::vector<Homomorphism>  inclusions;  // factor -> generated
  };

  inline IndependenceData
  independence_data(FiniteAlgebra const&                     ambient,
                    std::vector<std::vector<Element>> const& subsets) {
    IndependenceData     d;
    std::vector<Element> all;
    for (std::size_t i = 0; i < subsets.size(); ++i) {
      auto s = detail::sorted_unique(subsets[i]);
      if (!is_closed_subset(ambient, s)) {
        throw Error("subset " + std::to_string(i)
                    + " is not closed under the operations");
      }
      all.insert(all.end(), s.begin(), s.end());
    }
    d.generated = generated_subalgebra(ambient, all);
    std::vector<Element> position(ambient.size(), UNDEFINED);
    for (std::size_t j = 0; j < d.generated.inclusion.size(); ++j) {
      position[d.generated.inclusion(j)] = static_cast<Element>(j);
    }
    for (auto const& subset : subsets) {
      auto sub = generated_subalgebra(ambient, subset);
      Homomorphism incl;
      for (auto x : sub.inclusion.map) {
        incl.map.push_back(position[x]);
      }
      d.factors.push_back(std::move(sub.algebra));
      d.inclusions.push_back(std::move(incl));
    }
    return d;
  }

  // The subalgebras generate their coproduct in P via the inclusions.
  inline bool is_independent(PrevarietyCtx const&                     ctx,
                             FiniteAlgebra const&                     ambient,
                             std::vector<std::vector<Element>> const& subsets) {
    ctx.require(ambient, "ambient algebra");
    auto d = independence_data(ambient, subsets);
    return is_coproduct(ctx, d.factors, d.generated.algebra, d.inclusions);
  }

  struct ChainStep {
    Subalgebra                domain;       // generated by B_1..B_i and A_i
    Subalgebra                codomain;     // A_i
    std::vector<Homomorphism> retractions;  // one per family f_1..f_i
  };

  struct ChainReport {
    bool                   independent        = false;
    bool                   almost_independent = false;
    bool                   maps_verified      = false;
    std::vector<ChainStep> steps;  // steps[i] for i = 0..n

    explicit operator bool() const noexcept {
      return independent && almost_independent && maps_verified;
    }
  };

  namespace detail {
    // Maps on A0-indexed carriers: UNDEFINED outside the domain.
    using Partial = std::vector<Element>;

    inline Partial compose(Partial const& h, Partial const& g) {
      Partial f(g.size(), UNDEFINED);
      for (std::size_t x = 0; x < g.size(); ++x) {
        if (g[x] != UNDEFINED) {
          f[x] = h.at(g[x]);
        }
      }
      return f;
    }

    inline Partial to_ambient(Homomorphism const& h,
                              Subalgebra const&   from,
                              Subalgebra const&   to,
                              std::size_t         n) {
      Partial p(n, UNDEFINED);
      for (std::size_t j = 0; j < h.size(); ++j) {
        p[from.inclusion(j)] = to.inclusion(h(j));
      }
      return p;
    }

    inline Homomorphism to_local(Partial const&    p,
                                 Subalgebra const& from,
                                 Subalgebra const& to,
                                 std::size_t       n) {
      std::vector<Element> position(n, UNDEFINED);
      for (std::size_t j = 0; j < to.inclusion.size(); ++j) {
        position[to.inclusion(j)] = static_cast<Element>(j);
      }
      Homomorphism h;
      for (auto x : from.inclusion.map) {
        Element const y = p.at(x);
        if (y == UNDEFINED || position[y] == UNDEFINED) {
          throw std::logic_error("chain_independence: map leaves its codomain");
        }
        h.map.push_back(position[y]);
      }
      return h;
    }

    // All tuples (f_1..f_i) with f_j : B_j -> codomain, as A0-indexed maps.
    inline std::vector<std::vector<Partial>>
    chain_families(std::vector<Subalgebra> const& B,
                   std::size_t                    i,
                   Subalgebra const&              codomain,
                   std::size_t                    n,
                   std::size_t                    max_families) {
      std::vector<std::vector<Partial>> result{{}};
      for (std::size_t j = 0; j < i; ++j) {
        auto homs = all_homs(B[j].algebra, codomain.algebra);
        std::vector<std::vector<Partial>> next;
        for (auto const& prefix : result) {
          for (auto const& h : homs) {
            if (next.size() >= max_families) {
              throw BudgetExceeded("chain_independence: too many families");
            }
            next.push_back(prefix);
            next.back().push_back(to_ambient(h, B[j], codomain, n));
          }
        }
        result = std::move(next);
      }
      return result;
    }
  }  // namespace detail

  // Chain theorem harness.  Given subalgebras A_1 >= ... >= A_n and B_1..B_n
  // of A_0 (subsets of A_0's carrier) with (A_i, B_i) independent and both
  // inside A_{i-1}, with P = SP{A_n}: checks that B_1..B_n are independent,
  // and builds, for every family f_j : B_j -> A_i, the map f = h o g from the
  // subalgebra generated by B_1..B_i and A_i onto A_i that fixes A_i and
  // restricts to f_j on B_j.  Hypothesis failures raise HypothesisError with
  // the failing index i (0 for A_0 itself).
  inline ChainReport
  chain_independence(FiniteAlgebra const&                     A0,
                     std::vector<std::vector<Element>> const& A_sets,
                     std::vector<std::vector<Element>> const& B_sets,
                     ConstructionBudget                       budget = {}) {
    std::size_t const n = A_sets.size();
    if (B_sets.size() != n) {
      throw Error("chain_independence: need as many B_i as A_i");
    }
    std::size_t const                 N = A0.size();
    std::vector<std::vector<Element>> A{std::vector<Element>(N)};
    std::iota(A[0].begin(), A[0].end(), Element(0));
    std::vector<std::vector<Element>> Bs{{}};
    for (std::size_t i = 0; i < n; ++i) {
      A.push_back(detail::sorted_unique(A_sets[i]));
      Bs.push_back(detail::sorted_unique(B_sets[i]));
    }
    for (std::size_t i = 1; i <= n; ++i) {
      for (auto const* s : {&A[i], &Bs[i]}) {
        if (!s->empty() && s->back() >= N) {
          throw HypothesisError("subset out of range", i);
        }
        if (!is_closed_subset(A0, *s)) {
          throw HypothesisError("subset is not a subalgebra", i);
        }
        if (!std::includes(A[i - 1].begin(), A[i - 1].end(), s->begin(), s->end())) {
          throw HypothesisError("A_i and B_i must lie in A_{i-1}", i);
        }
      }
    }
    std::vector<Subalgebra> Asub, Bsub;
    for (std::size_t i = 0; i <= n; ++i) {
      Asub.push_back(generated_subalgebra(A0, A[i]));
      Bsub.push_back(generated_subalgebra(A0, Bs[i]));
    }
    PrevarietyCtx P({Asub[n].algebra}, budget);
    if (!P.contains(A0)) {
      throw HypothesisError("A_0 is not in the prevariety generated by A_n", 0);
    }
    for (std::size_t i = 1; i <= n; ++i) {
      if (!is_independent(P, A0, {A[i], Bs[i]})) {
        throw HypothesisError("A_i and B_i are not independent", i);
      }
    }
    std::vector<Subalgebra> Bonly(Bsub.begin() + 1, Bsub.end());

    ChainReport report;
    report.maps_verified = true;
    std::vector<Subalgebra> D, E;  // D_i = <B_1..B_i, A_i>, E_i = <A_i, B_i>
    for (std::size_t i = 0; i <= n; ++i) {
      std::vector<Element> gens = A[i];
      for (std::size_t j = 1; j <= i; ++j) {
        gens.insert(gens.end(), Bs[j].begin(), Bs[j].end());
      }
      D.push_back(generated_subalgebra(A0, gens));
      std::vector<Element> e = A[i];
      e.insert(e.end(), Bs[i].begin(), Bs[i].end());
      E.push_back(generated_subalgebra(A0, e));
    }

    // build(i, fam) returns f on D_i into A_i, as an A0-indexed map.
    std::function<detail::Partial(std::size_t, std::vector<detail::Partial> const&)>
        build = [&](std::size_t i, std::vector<detail::Partial> const& fam) {
          if (i == 0) {
            detail::Partial id(N);
            std::iota(id.begin(), id.end(), Element(0));
            return id;
          }
          std::vector<detail::Partial> prefix(fam.begin(), fam.begin() + (i - 1));
          detail::Partial g = build(i - 1, prefix);
          // h : E_i -> A_i, identity on A_i and f_i on B_i.
          PartialMap seed(E[i].inclusion.size());
          std::vector<Element> pos(N, UNDEFINED);
          for (std::size_t j = 0; j < E[i].inclusion.size(); ++j) {
            pos[E[i].inclusion(j)] = static_cast<Element>(j);
          }
          std::vector<Element> apos(N, UNDEFINED);
          for (std::size_t j = 0; j < Asub[i].inclusion.size(); ++j) {
            apos[Asub[i].inclusion(j)] = static_cast<Element>(j);
          }
          for (auto x : A[i]) {
            seed.set(pos[x], apos[x]);
          }
          for (auto x : Bs[i]) {
            Element const y = apos[fam[i - 1][x]];
            if (seed.map[pos[x]] != UNDEFINED && seed.map[pos[x]] != y) {
              throw std::logic_error("chain_independence: inconsistent h seed");
            }
            seed.set(pos[x], y);
          }
          auto h = find_homomorphism(E[i].algebra, Asub[i].algebra, seed);
          if (!h) {
            throw std::logic_error(
                "chain_independence: no h despite independence of (A_i, B_i)");
          }
          detail::Partial hp = detail::to_ambient(*h, E[i], Asub[i], N);
          detail::Partial f(N, UNDEFINED);
          for (auto x : D[i].inclusion.map) {
            Element const gx = g.at(x);
            if (gx == UNDEFINED || hp[gx] == UNDEFINED) {
              throw std::logic_error("chain_independence: g leaves E_i");
            }
            f[x] = hp[gx];
          }
          return f;
        };

    for (std::size_t i = 0; i <= n; ++i) {
      ChainStep step{D[i], Asub[i], {}};
      for (auto const& fam :
           detail::chain_families(Bonly, i, Asub[i], N, budget.max_families)) {
        auto         f     = build(i, fam);
        Homomorphism local = detail::to_local(f, D[i], Asub[i], N);
        bool ok = is_homomorphism(D[i].algebra, Asub[i].algebra, local);
        for (auto x : A[i]) {
          ok = ok && f[x] == x;
        }
        for (std::size_t j = 1; j <= i; ++j) {
          for (auto x : Bs[j]) {
            ok = ok && f[x] == fam[j - 1][x];
          }
        }
        report.maps_verified = report.maps_verified && ok;
        step.retractions.push_back(std::move(local));
      }
      report.steps.push_back(std::move(step));
    }

    std::vector<std::vector<Element>> Bfamily(Bs.begin() + 1, Bs.end());
    report.independent = is_independent(P, A0, Bfamily);

    // (A_n, B_1..B_n) with A_n distinguished: every family into A_n that is
    // the identity on A_n extends over D_n, found by direct search.
    report.almost_independent = true;
    std::vector<Element> dpos(N, UNDEFINED), apos(N, UNDEFINED);
    for (std::size_t j = 0; j < D[n].inclusion.size(); ++j) {
      dpos[D[n].inclusion(j)] = static_cast<Element>(j);
    }
    for (std::size_t j = 0; j < Asub[n].inclusion.size(); ++j) {
      apos[Asub[n].inclusion(j)] = static_cast<Element>(j);
    }
    for (auto const& fam :
         detail::chain_families(Bonly, n, Asub[n], N, budget.max_families)) {
      PartialMap seed(D[n].inclusion.size());
      bool       consistent = true;
      for (auto x : A[n]) {
        seed.set(dpos[x], apos[x]);
      }
      for (std::size_t j = 1; j <= n && consistent; ++j) {
        for (auto x : Bs[j]) {
          Element& slot = seed.map[dpos[x]];
          if (slot != UNDEFINED && slot != apos[fam[j - 1][x]]) {
            consistent = false;
            break;
          }
          slot = apos[fam[j - 1][x]];
        }
      }
      if (!consistent || !find_homomorphism(D[n].algebra, Asub[n].algebra, seed)) {
        report.almost_independent = false;
        break;
      }
    }
    return report;
  }

  ////////////////////////////////////////////////////////////////////////
  // Coproduct monotonicity and subfamilies
  ////////////////////////////////////////////////////////////////////////

  // Factors A_i and B_i receive maps from S; f_i : A_i -> B_i commute with
  // them.  The induced map of amalgamated coproducts over S is checked for
  // injectivity.
  struct MonotoneInstance {
    FiniteAlgebra              S;
    std::vector<FiniteAlgebra> A;
    std::vector<Homomorphism>  S_to_A;
    std::vector<FiniteAlgebra> B;
    std::vector<Homomorphism>  S_to_B;
    std::vector<Homomorphism>  f;
  };

  struct MonotoneReport {
    CoproductResult source;
    CoproductResult target;
    Homomorphism    induced;
    bool            injective = false;
  };

  inline MonotoneReport induced_coproduct_map(PrevarietyCtx const&    ctx,
                                              MonotoneInstance const& inst) {
    std::size_t const m = inst.A.size();
    if (inst.B.size() != m || inst.f.size() != m || inst.S_to_A.size() != m
        || inst.S_to_B.size() != m) {
      throw Error("monotone instance: inconsistent factor counts");
    }
    for (std::size_t i = 0; i < m; ++i) {
      if (!is_homomorphism(inst.A[i], inst.B[i], inst.f[i])
          || inst.f[i].after(inst.S_to_A[i]) != inst.S_to_B[i]) {
        throw Error("monotone instance: f_" + std::to_string(i)
                    + " is not a homomorphism commuting with the maps from S");
      }
      if (!inst.f[i].injective()) {
        throw Error("monotone instance: f_" + std::to_string(i)
                    + " is not one-to-one");
      }
    }
    MonotoneReport r{amalgamated_coproduct(ctx, inst.S, inst.A, inst.S_to_A),
                     amalgamated_coproduct(ctx, inst.S, inst.B, inst.S_to_B),
                     {},
                     false};
    PartialMap seed(r.source.algebra.size());
    for (std::size_t i = 0; i < m; ++i) {
      for (Element a = 0; a < inst.A[i].size(); ++a) {
        Element const x = r.source.coprojections[i](a);
        Element const y = r.target.coprojections[i](inst.f[i](a));
        if (seed.map[x] != UNDEFINED && seed.map[x] != y) {
          throw std::logic_error("induced map is not well defined");
        }
        seed.set(x, y);
      }
    }
    auto h = find_homomorphism(r.source.algebra, r.target.algebra, seed);
    if (!h) {
      throw std::logic_error("induced map does not exist");
    }
    r.induced   = std::move(*h);
    r.injective = r.induced.injective();
    return r;
  }

  inline bool
  check_coproduct_monotone_bounded(PrevarietyCtx const&               ctx,
                                   std::span<MonotoneInstance const> instances) {
    for (auto const& inst : instances) {
      if (!induced_coproduct_map(ctx, inst).injective) {
        return false;
      }
    }
    return true;
  }

  struct SubfamilyReport {
    bool natural_map_injective = false;
    bool subfamily_independent = false;

    explicit operator bool() const noexcept {
      return natural_map_injective && subfamily_independent;
    }
  };

  // For P generated by one algebra and an independent family of subalgebras
  // of ambient: the natural map from the coproduct of the subfamily to the
  // coproduct of the family is one-to-one, and the subfamily is independent.
  inline SubfamilyReport
  subfamily_independence_check(PrevarietyCtx const&                     ctx,
                               FiniteAlgebra const&                     ambient,
                               std::vector<std::vector<Element>> const& family,
                               std::vector<std::size_t> const&          subfamily) {
    if (ctx.generators().size() != 1) {
      throw HypothesisError("the prevariety must be generated by one algebra", 0);
    }
    auto const& gen = ctx.generators().front();
    bool const  trivial_in_nontrivial
        = gen.size() >= 2 && has_trivial_subalgebra(gen);
    auto d = independence_data(ambient, family);
    for (std::size_t i = 0; i < family.size(); ++i) {
      if (d.factors[i].size() == 1 && !trivial_in_nontrivial) {
        throw HypothesisError("trivial member in a prevariety without a "
                              "nontrivial algebra having a trivial subalgebra",
                              i);
      }
    }
    if (!is_independent(ctx, ambient, family)) {
      throw HypothesisError("the family is not independent", 0);
    }
    std::vector<FiniteAlgebra>        sub_factors;
    std::vector<std::vector<Element>> sub_sets;
    for (auto j : subfamily) {
      if (j >= family.size()) {
        throw Error("subfamily index out of range");
      }
      sub_factors.push_back(d.factors[j]);
      sub_sets.push_back(family[j]);
    }
    auto            whole = coproduct(ctx, d.factors);
    auto            part  = coproduct(ctx, sub_factors);
    PartialMap      seed(part.algebra.size());
    for (std::size_t k = 0; k < subfamily.size(); ++k) {
      for (Element b = 0; b < sub_factors[k].size(); ++b) {
        seed.set(part.coprojections[k](b), whole.coprojections[subfamily[k]](b));
      }
    }
    auto h = find_homomorphism(part.algebra, whole.algebra, seed);
    if (!h) {
      throw std::logic_error("natural map between coproducts does not exist");
    }
    SubfamilyReport r;
    r.natural_map_injective = h->injective();
    r.subfamily_independent = is_independent(ctx, ambient, sub_sets);
    return r;
  }

  ////////////////////////////////////////////////////////////////////////
  // Bounded amalgamation check
  ////////////////////////////////////////////////////////////////////////

  struct AmalgamationOptions {
    bool        nontrivial_only = false;  // skip 1-element members
    std::size_t max_algebras    = 5'000'000;
    std::size_t max_squares     = 1'000'000;
  };

  enum class AmalgamationStatus { holds, refuted, budget_exhausted };

  struct AmalgamationCounterexample {
    FiniteAlgebra A, B, C;
    Homomorphism  f;  // A -> B
    Homomorphism  g;  // A -> C
  };

  struct AmalgamationReport {
    AmalgamationStatus                        status = AmalgamationStatus::holds;
    std::optional<AmalgamationCounterexample> counterexample;
    std::size_t                               members = 0;
    std::size_t                               squares = 0;
    std::string                               budget_message;
  };

  // Every pair of embeddings A -> B, A -> C of members of P of size <= k
  // completes to a square of embeddings in P.  Each square is decided exactly
  // by the amalgamated coproduct of B and C over A, which lies in P and
  // receives every completion, so a square completes iff both of its
  // coprojections are one-to-one.
  inline AmalgamationReport
  check_amalgamation_bounded(PrevarietyCtx const& ctx,
                             std::size_t          k,
                             AmalgamationOptions  options = {}) {
    AmalgamationReport report;
    try {
      std::vector<FiniteAlgebra> members;
      for (auto& alg : algebras_up_to_iso(ctx.signature(), k, options.max_algebras)) {
        if (options.nontrivial_only && alg.size() == 1) {
          continue;
        }
        if (ctx.contains(alg)) {
          members.push_back(std::move(alg));
        }
      }
      report.members = members.size();
      for (auto const& A : members) {
        for (auto const& B : members) {
          auto fs = find_embeddings(A, B);
          if (fs.exhausted()) {
            throw BudgetExceeded("embedding enumeration exhausted");
          }
          for (auto const& C : members) {
            auto gs = find_embeddings(A, C);
            if (gs.exhausted()) {
              throw BudgetExceeded("embedding enumeration exhausted");
            }
            for (auto const& f : fs.homs) {
              for (auto const& g : gs.homs) {
                if (++report.squares > options.max_squares) {
                  throw BudgetExceeded("more than "
                                       + std::to_string(options.max_squares)
                                       + " squares");
                }
                std::vector<FiniteAlgebra> BC{B, C};
                std::vector<Homomorphism>  fg{f, g};
                auto po = amalgamated_coproduct(ctx, A, BC, fg);
                if (!po.coprojection_injective(0) || !po.coprojection_injective(1)) {
                  report.status         = AmalgamationStatus::refuted;
                  report.counterexample = AmalgamationCounterexample{A, B, C, f, g};
                  return report;
                }
              }
            }
          }
        }
      }
    } catch (BudgetExceeded const& e) {
      report.status         = AmalgamationStatus::budget_exhausted;
      report.budget_message = e.what();
    }
    return report;
  }

  ////////////////////////////////////////////////////////////////////////
  // Algebras of constants
  ////////////////////////////////////////////////////////////////////////

  inline Signature constants_signature(std::size_t kappa) {
    std::vector<Operation> ops;
    for (std::size_t i = 0; i < kappa; ++i) {
      ops.push_back({"c" + std::to_string(i), 0});
    }
    return Signature(std::move(ops));
  }

  struct ConstantsCensus {
    Signature                      signature;
    std::vector<FiniteAlgebra>     algebras;    // 2-element representatives
    std::vector<std::vector<bool>> compatible;  // pairwise, in P

    std::size_t count() const noexcept {
      return algebras.size();
    }
  };

  // With only constants every partition is a congruence, so the subdirectly
  // irreducible algebras are the 2-element ones.  Representatives put c0 at
  // 0; each corresponds to the partition of the constants it induces.
  // Compatibility is computed in P generated by all representatives.
  inline ConstantsCensus constants_SI_census(std::size_t kappa) {
    if (kappa > 4) {
      throw BudgetExceeded("constants_SI_census supports kappa <= 4");
    }
    ConstantsCensus census{constants_signature(kappa), {}, {}};
    std::size_t const free_bits = kappa == 0 ? 0 : kappa - 1;
    for (std::size_t bits = 0; bits < (std::size_t(1) << free_bits); ++bits) {
      std::vector<std::vector<Element>> tables;
      for (std::size_t i = 0; i < kappa; ++i) {
        tables.push_back({i == 0 ? Element(0) : Element((bits >> (i - 1)) & 1)});
      }
      census.algebras.emplace_back(census.signature, 2, std::move(tables));
    }
    PrevarietyCtx P(census.algebras);
    std::size_t const m = census.algebras.size();
    census.compatible.assign(m, std::vector<bool>(m, false));
    for (std::size_t i = 0; i < m; ++i) {
      for (std::size_t j = 0; j < m; ++j) {
        std::vector<FiniteAlgebra> pair{census.algebras[i], census.algebras[j]};
        census.compatible[i][j] = is_compatible(P, pair);
      }
    }
    return census;
  }

}  // namespace ualg

#endif  // UALG_PREVARIETY_HPP_
