#ifndef UALG_ENUMERATE_HPP_
#define UALG_ENUMERATE_HPP_

#include <algorithm>  // for next_permutation
#include <cstddef>    // for size_t
#include <numeric>    // for iota
#include <set>        // for set
#include <unordered_set>  // for unordered_set
#include <vector>     // for vector

#include "algebra.hpp"
#include "errors.hpp"

namespace ualg {

  // Tables of alg relabelled by pi (element x becomes pi[x]), concatenated
  // in operation order.
  inline std::vector<Element> relabelled_tables(FiniteAlgebra const&        alg,
                                                std::vector<Element> const& pi) {
    auto const&          sig = alg.signature();
    std::vector<Element> out;
    std::vector<Element> moved;
    for (std::size_t op = 0; op < sig.size(); ++op) {
      std::vector<Element> table(alg.table(op).size());
      detail::for_each_tuple(
          alg.size(), sig[op].arity, [&](std::span<Element const> t) {
            moved.assign(t.begin(), t.end());
            for (auto& x : moved) {
              x = pi[x];
            }
            table[alg.index_of(moved)] = pi[alg.apply(op, t)];
          });
      out.insert(out.end(), table.begin(), table.end());
    }
    return out;
  }

  // Lexicographically least relabelled table sequence over all carrier
  // permutations; equal for two algebras iff they are isomorphic.
  inline std::vector<Element> canonical_form(FiniteAlgebra const& alg) {
    std::vector<Element> pi(alg.size());
    std::iota(pi.begin(), pi.end(), Element(0));
    std::vector<Element> best = relabelled_tables(alg, pi);
    while (std::next_permutation(pi.begin(), pi.end())) {
      auto cand = relabelled_tables(alg, pi);
      if (cand < best) {
        best = std::move(cand);
      }
    }
    return best;
  }

  inline FiniteAlgebra from_flat_tables(Signature const&            sig,
                                        std::size_t                 n,
                                        std::vector<Element> const& flat) {
    std::vector<std::vector<Element>> tables;
    std::size_t                       pos = 0;
    for (auto const& op : sig.operations()) {
      std::size_t const len = detail::checked_power(n, op.arity);
      tables.emplace_back(flat.begin() + pos, flat.begin() + pos + len);
      pos += len;
    }
    return FiniteAlgebra(sig, n, std::move(tables));
  }

  // Calls f(alg) for every algebra of the signature on carrier 0..n-1.
  template <typename F>
  void for_each_algebra(Signature const& sig,
                        std::size_t      n,
                        F&&              f,
                        std::size_t      max_algebras = 5'000'000) {
    if (n == 0) {
      if (!sig.has_constants()) {
        f(empty_algebra(sig));
      }
      return;
    }
    std::size_t cells = 0;
    for (auto const& op : sig.operations()) {
      cells += detail::checked_power(n, op.arity);
    }
    std::size_t total = 1;
    for (std::size_t i = 0; i < cells; ++i) {
      total *= n;
      if (total > max_algebras) {
        throw BudgetExceeded("for_each_algebra: more than "
                             + std::to_string(max_algebras)
                             + " algebras of size " + std::to_string(n));
      }
    }
    detail::for_each_tuple(n, cells, [&](std::span<Element const> flat) {
      f(from_flat_tables(sig, n, std::vector<Element>(flat.begin(), flat.end())));
    });
  }

  // One representative per isomorphism class of algebras of size <= max_size
  // (the canonical form), ordered by size and then canonical form.  Each new
  // table's whole relabelling orbit is recorded, so every other member of
  // the class is skipped in constant time.
  inline std::vector<FiniteAlgebra>
  algebras_up_to_iso(Signature const& sig,
                     std::size_t      max_size,
                     std::size_t      max_algebras = 5'000'000) {
    std::vector<FiniteAlgebra> result;
    for (std::size_t n = 0; n <= max_size; ++n) {
      std::unordered_set<std::vector<Element>, detail::VectorHash> covered;
      std::set<std::vector<Element>>                               classes;
      for_each_algebra(
          sig,
          n,
          [&](FiniteAlgebra const& alg) {
            std::vector<Element> flat;
            for (auto const& t : alg.tables()) {
              flat.insert(flat.end(), t.begin(), t.end());
            }
            if (covered.count(flat)) {
              return;
            }
            std::vector<Element> pi(n);
            std::iota(pi.begin(), pi.end(), Element(0));
            std::vector<Element> best = flat;
            do {
              auto image = relabelled_tables(alg, pi);
              best       = std::min(best, image);
              covered.insert(std::move(image));
            } while (std::next_permutation(pi.begin(), pi.end()));
            classes.insert(std::move(best));
          },
          max_algebras);
      for (auto const& flat : classes) {
        result.push_back(from_flat_tables(sig, n, flat));
      }
    }
    return result;
  }

}  // namespace ualg

#endif  // UALG_ENUMERATE_HPP_
