#ifndef UALG_HOMSEARCH_HPP_
#define UALG_HOMSEARCH_HPP_

#include <algorithm>  // for sort
#include <cstddef>   // for size_t
#include <optional>  // for optional
#include <span>      // for span
#include <string>    // for string
#include <utility>   // for pair
#include <vector>    // for vector

#include "algebra.hpp"
#include "errors.hpp"

namespace ualg {

  struct SearchBudget {
    std::size_t                max_nodes = 10'000'000;
    std::optional<std::size_t> max_solutions;  // unlimited when empty
  };

  enum class SearchStatus {
    complete,        // every solution was found
    solution_limit,  // stopped after max_solutions solutions
    node_limit       // ran out of nodes; the list may be incomplete
  };

  struct SearchResult {
    std::vector<Homomorphism> homs;
    SearchStatus              status = SearchStatus::complete;
    std::size_t               nodes  = 0;

    bool exhausted() const noexcept {
      return status == SearchStatus::node_limit;
    }
  };

  // Source-indexed partial assignment; UNDEFINED marks unassigned elements.
  struct PartialMap {
    std::vector<Element> map;

    PartialMap() = default;

    explicit PartialMap(std::size_t n) : map(n, UNDEFINED) {}

    PartialMap& set(Element x, Element y) {
      map.at(x) = y;
      return *this;
    }
  };

  namespace detail {
    class HomSearch {
     public:
      HomSearch(FiniteAlgebra const& A,
                FiniteAlgebra const& B,
                bool                 injective,
                SearchBudget         budget)
          : _A(A),
            _B(B),
            _injective(injective),
            _budget(budget),
            _h(A.size(), UNDEFINED),
            _used(B.size(), 0),
            _occurrences(A.size()) {
        auto const& sig = A.signature();
        for (std::size_t op = 0; op < sig.size(); ++op) {
          std::size_t const k = sig[op].arity;
          if (k == 0) {
            continue;
          }
          std::size_t const len = A.table(op).size();
          for (std::size_t idx = 0; idx < len; ++idx) {
            std::size_t rest = idx;
            Element     prev = UNDEFINED;
            std::vector<Element> digits(k);
            for (std::size_t c = k; c-- > 0;) {
              digits[c] = static_cast<Element>(rest % A.size());
              rest /= A.size();
            }
            std::sort(digits.begin(), digits.end());
            for (auto d : digits) {
              if (d != prev) {
                _occurrences[d].push_back({op, idx});
                prev = d;
              }
            }
          }
        }
      }

      SearchResult run(PartialMap const& seed) {
        SearchResult result;
        _result = &result;
        if (seed.map.size() != _A.size()) {
          throw Error("seed size does not match the source algebra");
        }
        if (_A.size() > 0 && _B.size() == 0) {
          return result;
        }
        if (_injective && _A.size() > _B.size()) {
          return result;
        }
        auto const& sig = _A.signature();
        for (std::size_t op = 0; op < sig.size(); ++op) {
          if (sig[op].arity == 0 && _A.size() > 0) {
            if (!assign(_A.table(op)[0], _B.table(op)[0])) {
              return result;
            }
          }
        }
        for (Element x = 0; x < _A.size(); ++x) {
          if (seed.map[x] != UNDEFINED) {
            if (seed.map[x] >= _B.size() || !assign(x, seed.map[x])) {
              return result;
            }
          }
        }
        search();
        return result;
      }

     private:
      struct Occurrence {
        std::size_t op;
        std::size_t idx;
      };

      void decode(std::size_t op, std::size_t idx, std::vector<Element>& args) const {
        std::size_t const k = _A.signature()[op].arity;
        args.resize(k);
        for (std::size_t c = k; c-- > 0;) {
          args[c] = static_cast<Element>(idx % _A.size());
          idx /= _A.size();
        }
      }

      // Assigns h(x) = y and propagates forced values.  False on conflict;
      // the caller undoes the trail either way.
      bool assign(Element x, Element y) {
        if (_h[x] != UNDEFINED) {
          return _h[x] == y;
        }
        if (_injective && _used[y]) {
          return false;
        }
        set(x, y);
        std::vector<Element> queue{x}, args, mapped;
        while (!queue.empty()) {
          Element const z = queue.back();
          queue.pop_back();
          for (auto const& [op, idx] : _occurrences[z]) {
            decode(op, idx, args);
            mapped.clear();
            bool complete = true;
            for (auto a : args) {
              if (_h[a] == UNDEFINED) {
                complete = false;
                break;
              }
              mapped.push_back(_h[a]);
            }
            if (!complete) {
              continue;
            }
            Element const r   = _A.table(op)[idx];
            Element const val = _B.apply(op, mapped);
            if (_h[r] != UNDEFINED) {
              if (_h[r] != val) {
                return false;
              }
            } else {
              if (_injective && _used[val]) {
                return false;
              }
              set(r, val);
              queue.push_back(r);
            }
          }
        }
        return true;
      }

      void set(Element x, Element y) {
        _h[x] = y;
        if (_injective) {
          _used[y] = 1;
        }
        _trail.push_back(x);
      }

      void undo(std::size_t mark) {
        while (_trail.size() > mark) {
          Element const x = _trail.back();
          _trail.pop_back();
          if (_injective) {
            _used[_h[x]] = 0;
          }
          _h[x] = UNDEFINED;
        }
      }

      // Values y for x that violate no operation tuple whose other
      // arguments are already assigned.
      void candidates(Element x, std::vector<Element>& out) {
        out.clear();
        std::vector<Element> args, mapped;
        for (Element y = 0; y < _B.size(); ++y) {
          if (_injective && _used[y]) {
            continue;
          }
          bool ok = true;
          for (auto const& [op, idx] : _occurrences[x]) {
            decode(op, idx, args);
            mapped.clear();
            bool complete = true;
            for (auto a : args) {
              Element const v = a == x ? y : _h[a];
              if (v == UNDEFINED) {
                complete = false;
                break;
              }
              mapped.push_back(v);
            }
            if (!complete) {
              continue;
            }
            Element const r      = _A.table(op)[idx];
            Element const target = r == x ? y : _h[r];
            Element const val    = _B.apply(op, mapped);
            if (target != UNDEFINED) {
              if (target != val) {
                ok = false;
                break;
              }
            } else if (_injective && (_used[val] || val == y)) {
              ok = false;
              break;
            }
          }
          if (ok) {
            out.push_back(y);
          }
        }
      }

      // Returns false when the search must stop.
      bool search() {
        Element              best = UNDEFINED;
        std::vector<Element> best_cands, cands;
        for (Element x = 0; x < _A.size(); ++x) {
          if (_h[x] != UNDEFINED) {
            continue;
          }
          candidates(x, cands);
          if (best == UNDEFINED || cands.size() < best_cands.size()) {
            best = x;
            best_cands.swap(cands);
            if (best_cands.empty()) {
              return true;
            }
          }
        }
        if (best == UNDEFINED) {
          _result->homs.push_back(Homomorphism{_h});
          if (_budget.max_solutions
              && _result->homs.size() >= *_budget.max_solutions) {
            _result->status = SearchStatus::solution_limit;
            return false;
          }
          return true;
        }
        for (auto y : best_cands) {
          if (++_result->nodes > _budget.max_nodes) {
            _result->status = SearchStatus::node_limit;
            return false;
          }
          std::size_t const mark = _trail.size();
          bool              keep = true;
          if (assign(best, y)) {
            keep = search();
          }
          undo(mark);
          if (!keep) {
            return false;
          }
        }
        return true;
      }

      FiniteAlgebra const&                 _A;
      FiniteAlgebra const&                 _B;
      bool                                 _injective;
      SearchBudget                         _budget;
      std::vector<Element>                 _h;
      std::vector<char>                    _used;
      std::vector<Element>                 _trail;
      std::vector<std::vector<Occurrence>> _occurrences;
      SearchResult*                        _result = nullptr;
    };

    inline void check_same_signature(FiniteAlgebra const& A,
                                     FiniteAlgebra const& B) {
      if (A.signature() != B.signature()) {
        throw SignatureError("algebras have different signatures");
      }
    }
  }  // namespace detail

  // All homomorphisms A -> B extending seed, in search order.
  inline SearchResult find_homomorphisms(FiniteAlgebra const& A,
                                         FiniteAlgebra const& B,
                                         PartialMap const&    seed,
                                         SearchBudget         budget = {}) {
    detail::check_same_signature(A, B);
    return detail::HomSearch(A, B, false, budget).run(seed);
  }

  inline SearchResult find_homomorphisms(FiniteAlgebra const& A,
                                         FiniteAlgebra const& B,
                                         SearchBudget         budget = {}) {
    return find_homomorphisms(A, B, PartialMap(A.size()), budget);
  }

  inline SearchResult find_embeddings(FiniteAlgebra const& A,
                                      FiniteAlgebra const& B,
                                      PartialMap const&    seed,
                                      SearchBudget         budget = {}) {
    detail::check_same_signature(A, B);
    return detail::HomSearch(A, B, true, budget).run(seed);
  }

  inline SearchResult find_embeddings(FiniteAlgebra const& A,
                                      FiniteAlgebra const& B,
                                      SearchBudget         budget = {}) {
    return find_embeddings(A, B, PartialMap(A.size()), budget);
  }

  namespace detail {
    inline std::optional<Homomorphism> first_or_throw(SearchResult&& r,
                                                      char const*    what) {
      if (!r.homs.empty()) {
        return std::move(r.homs.front());
      }
      if (r.exhausted()) {
        throw BudgetExceeded(std::string(what) + ": node budget exhausted");
      }
      return std::nullopt;
    }
  }  // namespace detail

  // First homomorphism extending seed; throws BudgetExceeded rather than
  // reporting "none" when the search was cut short.
  inline std::optional<Homomorphism> find_homomorphism(FiniteAlgebra const& A,
                                                       FiniteAlgebra const& B,
                                                       PartialMap const&    seed,
                                                       std::size_t max_nodes
                                                       = 10'000'000) {
    return detail::first_or_throw(
        find_homomorphisms(A, B, seed, {max_nodes, 1}), "find_homomorphism");
  }

  inline std::optional<Homomorphism> find_embedding(FiniteAlgebra const& A,
                                                    FiniteAlgebra const& B,
                                                    std::size_t max_nodes
                                                    = 10'000'000) {
    return detail::first_or_throw(
        find_embeddings(A, B, PartialMap(A.size()), {max_nodes, 1}),
        "find_embedding");
  }

  inline bool exists_embedding(FiniteAlgebra const& A,
                               FiniteAlgebra const& B,
                               std::size_t          max_nodes = 10'000'000) {
    return find_embedding(A, B, max_nodes).has_value();
  }

  inline std::optional<Homomorphism> find_isomorphism(FiniteAlgebra const& A,
                                                      FiniteAlgebra const& B,
                                                      std::size_t max_nodes
                                                      = 10'000'000) {
    if (A.size() != B.size() || A.signature() != B.signature()) {
      return std::nullopt;
    }
    return find_embedding(A, B, max_nodes);
  }

  inline bool is_isomorphic(FiniteAlgebra const& A,
                            FiniteAlgebra const& B,
                            std::size_t          max_nodes = 10'000'000) {
    return find_isomorphism(A, B, max_nodes).has_value();
  }

  ////////////////////////////////////////////////////////////////////////
  // Membership in SP(Y) by separation of points
  ////////////////////////////////////////////////////////////////////////

  struct SeparatingHom {
    std::size_t  target;  // index into Y
    Homomorphism hom;
  };

  struct Separation {
    bool                                        separated = true;
    std::optional<std::pair<Element, Element>>  witness;   // unseparated pair
    std::vector<SeparatingHom>                  homs;      // one per new pair
  };

  // For every pair a < b (lexicographic) not yet separated, search for a
  // homomorphism into some member of Y seeded with h(a) != h(b); every pair
  // split by a found homomorphism is marked.
  inline Separation separate_points(FiniteAlgebra const&           A,
                                    std::span<FiniteAlgebra const> Y,
                                    std::size_t max_nodes = 10'000'000) {
    for (auto const& B : Y) {
      detail::check_same_signature(A, B);
    }
    Separation        result;
    std::size_t const n = A.size();
    if (n <= 1) {
      return result;
    }
    std::vector<char> separated(n * n, 0);
    for (Element a = 0; a < n; ++a) {
      for (Element b = a + 1; b < n; ++b) {
        if (separated[a * n + b]) {
          continue;
        }
        std::optional<SeparatingHom> found;
        for (std::size_t i = 0; i < Y.size() && !found; ++i) {
          auto const& B = Y[i];
          for (Element va = 0; va < B.size() && !found; ++va) {
            for (Element vb = 0; vb < B.size() && !found; ++vb) {
              if (va == vb) {
                continue;
              }
              PartialMap seed(n);
              seed.set(a, va).set(b, vb);
              auto h = find_homomorphism(A, B, seed, max_nodes);
              if (h) {
                found = SeparatingHom{i, std::move(*h)};
              }
            }
          }
        }
        if (!found) {
          result.separated = false;
          result.witness   = {a, b};
          return result;
        }
        auto const& h = found->hom;
        for (Element x = 0; x < n; ++x) {
          for (Element y = x + 1; y < n; ++y) {
            if (h(x) != h(y)) {
              separated[x * n + y] = 1;
            }
          }
        }
        result.homs.push_back(std::move(*found));
      }
    }
    return result;
  }

  inline bool in_SP(FiniteAlgebra const&           A,
                    std::span<FiniteAlgebra const> Y,
                    std::size_t                    max_nodes = 10'000'000) {
    return separate_points(A, Y, max_nodes).separated;
  }

  inline bool in_SP(FiniteAlgebra const&                 A,
                    std::initializer_list<FiniteAlgebra> Y) {
    return in_SP(A, std::span<FiniteAlgebra const>(Y.begin(), Y.size()));
  }

  // Throws MembershipError with an unseparated pair when A is not in SP(Y).
  inline void require_in_SP(FiniteAlgebra const&           A,
                            std::span<FiniteAlgebra const> Y,
                            std::string const&             label) {
    auto sep = separate_points(A, Y);
    if (!sep.separated) {
      auto [a, b] = *sep.witness;
      throw MembershipError(label + " is not in SP(Y): elements "
                                + std::to_string(a) + " and "
                                + std::to_string(b)
                                + " are not separated by any homomorphism",
                            {a, b});
    }
  }

  struct ProductEmbedding {
    FiniteAlgebra product;
    Homomorphism  embedding;
  };

  // An explicit injective homomorphism of A into the product of the targets
  // of its separating homomorphisms.
  inline ProductEmbedding embed_in_product(FiniteAlgebra const&           A,
                                           std::span<FiniteAlgebra const> Y) {
    auto sep = separate_points(A, Y);
    if (!sep.separated) {
      auto [a, b] = *sep.witness;
      throw MembershipError("algebra is not in SP(Y)", {a, b});
    }
    std::vector<FiniteAlgebra> factors;
    for (auto const& s : sep.homs) {
      factors.push_back(Y[s.target]);
    }
    auto         prod = direct_product(A.signature(), factors);
    Homomorphism e;
    for (Element x = 0; x < A.size(); ++x) {
      std::size_t idx = 0;
      for (std::size_t i = 0; i < factors.size(); ++i) {
        idx = idx * factors[i].size() + sep.homs[i].hom(x);
      }
      e.map.push_back(static_cast<Element>(idx));
    }
    return {std::move(prod.algebra), std::move(e)};
  }

}  // namespace ualg

#endif  // UALG_HOMSEARCH_HPP_
