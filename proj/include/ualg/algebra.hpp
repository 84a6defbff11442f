#ifndef UALG_ALGEBRA_HPP_
#define UALG_ALGEBRA_HPP_

#include <algorithm>      // for sort, max, all_of, unique
#include <initializer_list>  // for initializer_list
#include <cstddef>        // for size_t
#include <cstdint>        // for uint32_t
#include <limits>         // for numeric_limits
#include <numeric>        // for iota
#include <optional>       // for optional
#include <span>           // for span
#include <string>         // for string, to_string
#include <unordered_map>  // for unordered_map
#include <unordered_set>  // for unordered_set
#include <utility>        // for move, pair
#include <vector>         // for vector

#include "errors.hpp"

namespace ualg {

  // Carrier elements are indices 0..n-1.
  using Element = std::uint32_t;

  inline constexpr Element UNDEFINED = std::numeric_limits<Element>::max();

  ////////////////////////////////////////////////////////////////////////
  // Signature
  ////////////////////////////////////////////////////////////////////////

  struct Operation {
    std::string name;
    std::size_t arity;

    bool operator==(Operation const&) const = default;
  };

  class Signature {
   public:
    Signature() = default;

    explicit Signature(std::vector<Operation> ops) : _ops(std::move(ops)) {
      for (std::size_t i = 0; i < _ops.size(); ++i) {
        if (_ops[i].name.empty()) {
          throw SignatureError("operation symbols must be non-empty");
        }
        for (std::size_t j = 0; j < i; ++j) {
          if (_ops[i].name == _ops[j].name) {
            throw SignatureError("duplicate operation symbol \"" + _ops[i].name
                                 + "\"");
          }
        }
      }
    }

    std::size_t size() const noexcept {
      return _ops.size();
    }

    Operation const& operator[](std::size_t i) const {
      return _ops[i];
    }

    std::vector<Operation> const& operations() const noexcept {
      return _ops;
    }

    std::optional<std::size_t> find(std::string const& name) const {
      for (std::size_t i = 0; i < _ops.size(); ++i) {
        if (_ops[i].name == name) {
          return i;
        }
      }
      return std::nullopt;
    }

    bool has_constants() const {
      return std::any_of(
          _ops.begin(), _ops.end(), [](auto const& op) { return op.arity == 0; });
    }

    bool all_unary() const {
      return std::all_of(
          _ops.begin(), _ops.end(), [](auto const& op) { return op.arity == 1; });
    }

    bool operator==(Signature const&) const = default;

   private:
    std::vector<Operation> _ops;
  };

  inline Signature unary_signature(std::string const& name = "a") {
    return Signature({{name, 1}});
  }

  namespace detail {
    inline std::size_t checked_power(std::size_t base, std::size_t exp) {
      std::size_t result = 1;
      for (std::size_t i = 0; i < exp; ++i) {
        if (base != 0 && result > std::numeric_limits<std::size_t>::max() / base) {
          throw BudgetExceeded("operation table size overflows");
        }
        result *= base;
      }
      return result;
    }

    // Calls f(span) for every tuple in [0, radix[0]) x ... x [0, radix[k-1]),
    // in lexicographic order with the first coordinate most significant.
    template <typename F>
    void for_each_tuple(std::span<std::size_t const> radix, F&& f) {
      std::size_t const      k = radix.size();
      std::vector<Element> tuple(k, 0);
      for (auto r : radix) {
        if (r == 0) {
          return;
        }
      }
      while (true) {
        f(std::span<Element const>(tuple));
        std::size_t pos = k;
        while (pos > 0) {
          --pos;
          if (++tuple[pos] < radix[pos]) {
            break;
          }
          tuple[pos] = 0;
          if (pos == 0) {
            return;
          }
        }
        if (k == 0) {
          return;
        }
      }
    }

    template <typename F>
    void for_each_tuple(std::size_t n, std::size_t arity, F&& f) {
      std::vector<std::size_t> radix(arity, n);
      for_each_tuple(std::span<std::size_t const>(radix), std::forward<F>(f));
    }

    struct VectorHash {
      std::size_t operator()(std::vector<Element> const& v) const noexcept {
        std::size_t h = 0xcbf29ce484222325ULL;
        for (auto x : v) {
          h ^= x + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
        }
        return h;
      }
    };
  }  // namespace detail

  ////////////////////////////////////////////////////////////////////////
  // FiniteAlgebra
  ////////////////////////////////////////////////////////////////////////

  // A finite algebra with carrier 0..size()-1.  Each operation table is stored
  // row-major over argument tuples, first argument most significant.
  class FiniteAlgebra {
   public:
    FiniteAlgebra() = default;

    FiniteAlgebra(Signature                        sig,
                  std::size_t                      size,
                  std::vector<std::vector<Element>> tables)
        : _sig(std::move(sig)), _size(size), _tables(std::move(tables)) {
      if (_tables.size() != _sig.size()) {
        throw SignatureError("expected " + std::to_string(_sig.size())
                             + " operation tables, found "
                             + std::to_string(_tables.size()));
      }
      if (_size == 0 && _sig.has_constants()) {
        throw SignatureError(
            "the empty algebra is not permitted with zeroary operations");
      }
      for (std::size_t i = 0; i < _sig.size(); ++i) {
        std::size_t const len = detail::checked_power(_size, _sig[i].arity);
        if (_tables[i].size() != len) {
          throw SignatureError("table for \"" + _sig[i].name + "\" has length "
                               + std::to_string(_tables[i].size())
                               + ", expected " + std::to_string(len));
        }
        for (auto v : _tables[i]) {
          if (v >= _size) {
            throw SignatureError("table for \"" + _sig[i].name
                                 + "\" has entry out of range");
          }
        }
      }
    }

    Signature const& signature() const noexcept {
      return _sig;
    }

    std::size_t size() const noexcept {
      return _size;
    }

    bool empty() const noexcept {
      return _size == 0;
    }

    std::vector<Element> const& table(std::size_t op) const {
      return _tables[op];
    }

    std::vector<std::vector<Element>> const& tables() const noexcept {
      return _tables;
    }

    std::size_t index_of(std::span<Element const> args) const {
      std::size_t idx = 0;
      for (auto a : args) {
        idx = idx * _size + a;
      }
      return idx;
    }

    Element apply(std::size_t op, std::span<Element const> args) const {
      return _tables[op][index_of(args)];
    }

    Element apply(std::size_t op, std::initializer_list<Element> args) const {
      return apply(op, std::span<Element const>(args.begin(), args.size()));
    }

    bool operator==(FiniteAlgebra const&) const = default;

   private:
    Signature                         _sig;
    std::size_t                       _size = 0;
    std::vector<std::vector<Element>> _tables;
  };

  inline FiniteAlgebra empty_algebra(Signature const& sig) {
    std::vector<std::vector<Element>> tables;
    for (auto const& op : sig.operations()) {
      tables.emplace_back(op.arity == 0 ? 1 : 0, 0);
    }
    return FiniteAlgebra(sig, 0, std::move(tables));
  }

  inline FiniteAlgebra trivial_algebra(Signature const& sig) {
    std::vector<std::vector<Element>> tables;
    for (std::size_t i = 0; i < sig.size(); ++i) {
      tables.emplace_back(1, 0);
    }
    return FiniteAlgebra(sig, 1, std::move(tables));
  }

  // The cyclic unary algebra C_d: carrier 0..d-1 with a(i) = i+1 mod d.
  inline FiniteAlgebra cyclic_unary(std::size_t d) {
    if (d == 0) {
      throw SignatureError("cyclic_unary requires d >= 1");
    }
    std::vector<Element> a(d);
    for (std::size_t i = 0; i < d; ++i) {
      a[i] = static_cast<Element>((i + 1) % d);
    }
    return FiniteAlgebra(unary_signature(), d, {std::move(a)});
  }

  inline FiniteAlgebra unary_algebra(std::vector<Element> table,
                                     std::string const&   name = "a") {
    auto const n = table.size();
    return FiniteAlgebra(unary_signature(name), n, {std::move(table)});
  }

  ////////////////////////////////////////////////////////////////////////
  // Homomorphisms
  ////////////////////////////////////////////////////////////////////////

  // A carrier map; whether it is a homomorphism depends on the algebras it is
  // checked against (see is_homomorphism).
  struct Homomorphism {
    std::vector<Element> map;

    Element operator()(Element x) const {
      return map[x];
    }

    std::size_t size() const noexcept {
      return map.size();
    }

    bool injective() const {
      std::unordered_set<Element> seen;
      for (auto y : map) {
        if (!seen.insert(y).second) {
          return false;
        }
      }
      return true;
    }

    static Homomorphism identity(std::size_t n) {
      Homomorphism h;
      h.map.resize(n);
      std::iota(h.map.begin(), h.map.end(), Element(0));
      return h;
    }

    // (g.after(f))(x) = g(f(x))
    Homomorphism after(Homomorphism const& f) const {
      Homomorphism h;
      h.map.reserve(f.map.size());
      for (auto x : f.map) {
        h.map.push_back(map[x]);
      }
      return h;
    }

    bool operator==(Homomorphism const&) const  = default;
    auto operator<=>(Homomorphism const&) const = default;
  };

  // Exhaustive table commutation check.
  inline bool is_homomorphism(FiniteAlgebra const& source,
                              FiniteAlgebra const& target,
                              Homomorphism const&  h) {
    if (source.signature() != target.signature() || h.size() != source.size()) {
      return false;
    }
    for (auto y : h.map) {
      if (y >= target.size()) {
        return false;
      }
    }
    auto const& sig = source.signature();
    bool        ok  = true;
    std::vector<Element> image;
    for (std::size_t op = 0; op < sig.size() && ok; ++op) {
      detail::for_each_tuple(
          source.size(), sig[op].arity, [&](std::span<Element const> args) {
            if (!ok) {
              return;
            }
            image.assign(args.begin(), args.end());
            for (auto& x : image) {
              x = h.map[x];
            }
            if (h.map[source.apply(op, args)] != target.apply(op, image)) {
              ok = false;
            }
          });
    }
    return ok;
  }

  ////////////////////////////////////////////////////////////////////////
  // Closure under the operations
  ////////////////////////////////////////////////////////////////////////

  namespace detail {
    // Least set of keys containing the seeds and closed under the operations,
    // where apply(op, args) evaluates an operation on keys.  Keys appear in
    // discovery order: seeds first, then constants, then by worklist.
    template <typename Key, typename Hash, typename Apply>
    class Closure {
     public:
      Closure(Signature const& sig, std::size_t max_size, Apply apply)
          : _sig(sig), _max(max_size), _apply(std::move(apply)) {}

      void run(std::vector<Key> const& seeds) {
        for (auto const& s : seeds) {
          add(s);
        }
        std::vector<Key const*> args;
        for (std::size_t op = 0; op < _sig.size(); ++op) {
          if (_sig[op].arity == 0) {
            args.clear();
            add(_apply(op, args));
          }
        }
        for (std::size_t i = 0; i < _elements.size(); ++i) {
          for (std::size_t op = 0; op < _sig.size(); ++op) {
            std::size_t const k = _sig[op].arity;
            if (k == 0) {
              continue;
            }
            // Tuples over [0, i] whose first occurrence of i is at `first`.
            for (std::size_t first = 0; first < k; ++first) {
              if (i == 0 && first > 0) {
                continue;
              }
              std::vector<std::size_t> radix(k);
              for (std::size_t c = 0; c < k; ++c) {
                radix[c] = c < first ? i : (c == first ? 1 : i + 1);
              }
              std::vector<std::vector<Element>> pending;
              for_each_tuple(std::span<std::size_t const>(radix),
                             [&](std::span<Element const> t) {
                               pending.emplace_back(t.begin(), t.end());
                             });
              for (auto& t : pending) {
                t[first] = static_cast<Element>(i);
                args.clear();
                for (auto x : t) {
                  args.push_back(&_elements[x]);
                }
                add(_apply(op, args));
              }
            }
          }
        }
      }

      std::vector<Key> const& elements() const noexcept {
        return _elements;
      }

      std::unordered_map<Key, Element, Hash> const& index() const noexcept {
        return _index;
      }

      // Operation tables of the closed set in discovery order.
      std::vector<std::vector<Element>> tables() {
        std::vector<std::vector<Element>> result;
        std::size_t const                 n = _elements.size();
        std::vector<Key const*>           args;
        for (std::size_t op = 0; op < _sig.size(); ++op) {
          std::vector<Element> table;
          table.reserve(checked_power(n, _sig[op].arity));
          for_each_tuple(n, _sig[op].arity, [&](std::span<Element const> t) {
            args.clear();
            for (auto x : t) {
              args.push_back(&_elements[x]);
            }
            table.push_back(_index.at(_apply(op, args)));
          });
          result.push_back(std::move(table));
        }
        return result;
      }

     private:
      void add(Key const& k) {
        if (_index.find(k) == _index.end()) {
          if (_elements.size() >= _max) {
            throw BudgetExceeded("closure exceeds the carrier budget of "
                                 + std::to_string(_max) + " elements");
          }
          _index.emplace(k, static_cast<Element>(_elements.size()));
          _elements.push_back(k);
        }
      }

      Signature const&                       _sig;
      std::size_t                            _max;
      Apply                                  _apply;
      std::vector<Key>                       _elements;
      std::unordered_map<Key, Element, Hash> _index;
    };
  }  // namespace detail

  ////////////////////////////////////////////////////////////////////////
  // Subalgebras
  ////////////////////////////////////////////////////////////////////////

  struct Subalgebra {
    FiniteAlgebra        algebra;
    Homomorphism         inclusion;  // subalgebra index -> ambient index
  };

  // Least subset containing seed and closed under all operations, returned
  // in ascending ambient order with its induced tables.
  inline Subalgebra generated_subalgebra(FiniteAlgebra const&     alg,
                                         std::span<Element const> seed) {
    for (auto s : seed) {
      if (s >= alg.size()) {
        throw Error("seed element out of range");
      }
    }
    auto apply = [&alg](std::size_t op, std::vector<Element const*> const& a) {
      std::vector<Element> args;
      for (auto p : a) {
        args.push_back(*p);
      }
      return alg.apply(op, args);
    };
    detail::Closure<Element, std::hash<Element>, decltype(apply)> closure(
        alg.signature(), alg.size(), apply);
    closure.run(std::vector<Element>(seed.begin(), seed.end()));
    std::vector<Element> members = closure.elements();
    std::sort(members.begin(), members.end());

    std::vector<Element> position(alg.size(), UNDEFINED);
    for (std::size_t i = 0; i < members.size(); ++i) {
      position[members[i]] = static_cast<Element>(i);
    }
    auto const&                       sig = alg.signature();
    std::vector<std::vector<Element>> tables;
    std::vector<Element>              args;
    for (std::size_t op = 0; op < sig.size(); ++op) {
      std::vector<Element> table;
      detail::for_each_tuple(
          members.size(), sig[op].arity, [&](std::span<Element const> t) {
            args.clear();
            for (auto x : t) {
              args.push_back(members[x]);
            }
            table.push_back(position[alg.apply(op, args)]);
          });
      tables.push_back(std::move(table));
    }
    return {FiniteAlgebra(sig, members.size(), std::move(tables)),
            Homomorphism{std::move(members)}};
  }

  inline Subalgebra
  generated_subalgebra(FiniteAlgebra const&                alg,
                       std::initializer_list<Element> seed) {
    return generated_subalgebra(alg,
                                std::span<Element const>(seed.begin(), seed.size()));
  }

  inline bool is_closed_subset(FiniteAlgebra const&     alg,
                               std::span<Element const> subset) {
    auto sub = generated_subalgebra(alg, subset);
    std::vector<Element> sorted(subset.begin(), subset.end());
    std::sort(sorted.begin(), sorted.end());
    sorted.erase(std::unique(sorted.begin(), sorted.end()), sorted.end());
    return sub.inclusion.map == sorted;
  }

  ////////////////////////////////////////////////////////////////////////
  // Products and disjoint unions
  ////////////////////////////////////////////////////////////////////////

  struct Product {
    FiniteAlgebra             algebra;
    std::vector<Homomorphism> projections;
  };

  // Tuples are indexed lexicographically with the first factor most
  // significant.  The product of the empty family is the 1-element algebra.
  inline Product direct_product(Signature const&               sig,
                                std::span<FiniteAlgebra const> factors) {
    for (auto const& f : factors) {
      if (f.signature() != sig) {
        throw SignatureError("direct_product: signature mismatch");
      }
    }
    std::vector<std::size_t> radix;
    std::size_t              n = 1;
    for (auto const& f : factors) {
      radix.push_back(f.size());
      n = n * f.size();
    }
    std::vector<std::vector<Element>> tuples;
    tuples.reserve(n);
    detail::for_each_tuple(std::span<std::size_t const>(radix),
                           [&](std::span<Element const> t) {
                             tuples.emplace_back(t.begin(), t.end());
                           });
    auto encode = [&](std::vector<Element> const& t) {
      std::size_t idx = 0;
      for (std::size_t i = 0; i < t.size(); ++i) {
        idx = idx * radix[i] + t[i];
      }
      return static_cast<Element>(idx);
    };
    std::vector<std::vector<Element>> tables;
    std::vector<Element>              args, result(factors.size());
    for (std::size_t op = 0; op < sig.size(); ++op) {
      std::vector<Element> table;
      detail::for_each_tuple(n, sig[op].arity, [&](std::span<Element const> t) {
        for (std::size_t i = 0; i < factors.size(); ++i) {
          args.clear();
          for (auto x : t) {
            args.push_back(tuples[x][i]);
          }
          result[i] = factors[i].apply(op, args);
        }
        table.push_back(encode(result));
      });
      tables.push_back(std::move(table));
    }
    Product p{FiniteAlgebra(sig, n, std::move(tables)), {}};
    for (std::size_t i = 0; i < factors.size(); ++i) {
      Homomorphism pi;
      for (auto const& t : tuples) {
        pi.map.push_back(t[i]);
      }
      p.projections.push_back(std::move(pi));
    }
    return p;
  }

  inline Product direct_product(std::span<FiniteAlgebra const> factors) {
    if (factors.empty()) {
      throw SignatureError(
          "direct_product of an empty list needs an explicit signature");
    }
    return direct_product(factors[0].signature(), factors);
  }

  inline Product direct_product(std::initializer_list<FiniteAlgebra> factors) {
    return direct_product(std::span<FiniteAlgebra const>(factors.begin(), factors.size()));
  }

  // Summands are laid out consecutively.  Only all-unary signatures are
  // accepted: with constants or wider operations the union is not an algebra.
  inline FiniteAlgebra disjoint_union(std::span<FiniteAlgebra const> parts) {
    if (parts.empty()) {
      throw SignatureError("disjoint_union needs at least one summand");
    }
    auto const& sig = parts[0].signature();
    if (!sig.all_unary()) {
      throw SignatureError(
          "disjoint_union requires an all-unary signature");
    }
    std::size_t n = 0;
    for (auto const& p : parts) {
      if (p.signature() != sig) {
        throw SignatureError("disjoint_union: signature mismatch");
      }
      n += p.size();
    }
    std::vector<std::vector<Element>> tables(sig.size());
    std::size_t                       offset = 0;
    for (auto const& p : parts) {
      for (std::size_t op = 0; op < sig.size(); ++op) {
        for (auto v : p.table(op)) {
          tables[op].push_back(static_cast<Element>(v + offset));
        }
      }
      offset += p.size();
    }
    return FiniteAlgebra(sig, n, std::move(tables));
  }

  inline FiniteAlgebra disjoint_union(std::initializer_list<FiniteAlgebra> parts) {
    return disjoint_union(std::span<FiniteAlgebra const>(parts.begin(), parts.size()));
  }

  ////////////////////////////////////////////////////////////////////////
  // Congruences
  ////////////////////////////////////////////////////////////////////////

  namespace detail {
    class UnionFind {
     public:
      explicit UnionFind(std::size_t n) : _parent(n) {
        std::iota(_parent.begin(), _parent.end(), std::size_t(0));
      }

      std::size_t find(std::size_t x) {
        while (_parent[x] != x) {
          _parent[x] = _parent[_parent[x]];
          x          = _parent[x];
        }
        return x;
      }

      // Smaller root wins so that results do not depend on merge order.
      bool unite(std::size_t a, std::size_t b) {
        a = find(a);
        b = find(b);
        if (a == b) {
          return false;
        }
        if (b < a) {
          std::swap(a, b);
        }
        _parent[b] = a;
        return true;
      }

     private:
      std::vector<std::size_t> _parent;
    };
  }  // namespace detail

  // A partition of the carrier, stored as block numbers normalised so that
  // blocks are numbered in order of their least element.
  class Congruence {
   public:
    Congruence() = default;

    explicit Congruence(std::vector<Element> const& labels) {
      std::unordered_map<Element, Element> renumber;
      _block.reserve(labels.size());
      for (auto l : labels) {
        auto it = renumber.find(l);
        if (it == renumber.end()) {
          it = renumber.emplace(l, static_cast<Element>(renumber.size())).first;
        }
        _block.push_back(it->second);
      }
      _num_blocks = renumber.size();
    }

    static Congruence diagonal(std::size_t n) {
      std::vector<Element> b(n);
      std::iota(b.begin(), b.end(), Element(0));
      return Congruence(b);
    }

    static Congruence full(std::size_t n) {
      return Congruence(std::vector<Element>(n, 0));
    }

    std::size_t size() const noexcept {
      return _block.size();
    }

    std::size_t num_blocks() const noexcept {
      return _num_blocks;
    }

    Element block(Element x) const {
      return _block[x];
    }

    std::vector<Element> const& blocks() const noexcept {
      return _block;
    }

    bool related(Element a, Element b) const {
      return _block[a] == _block[b];
    }

    bool is_diagonal() const noexcept {
      return _num_blocks == _block.size();
    }

    // Every pair related here is related in other.
    bool refines(Congruence const& other) const {
      for (std::size_t a = 0; a < _block.size(); ++a) {
        for (std::size_t b = a + 1; b < _block.size(); ++b) {
          if (related(a, b) && !other.related(a, b)) {
            return false;
          }
        }
      }
      return true;
    }

    Congruence meet(Congruence const& other) const {
      std::vector<Element> labels;
      std::size_t const    m = other._num_blocks;
      for (std::size_t x = 0; x < _block.size(); ++x) {
        labels.push_back(static_cast<Element>(_block[x] * m + other._block[x]));
      }
      return Congruence(labels);
    }

    Congruence join(Congruence const& other) const {
      detail::UnionFind uf(_block.size());
      std::vector<Element> first_a(_num_blocks, UNDEFINED),
          first_b(other._num_blocks, UNDEFINED);
      for (std::size_t x = 0; x < _block.size(); ++x) {
        for (auto [first, b] : {std::pair{&first_a, _block[x]},
                                std::pair{&first_b, other._block[x]}}) {
          if ((*first)[b] == UNDEFINED) {
            (*first)[b] = static_cast<Element>(x);
          } else {
            uf.unite((*first)[b], x);
          }
        }
      }
      std::vector<Element> labels;
      for (std::size_t x = 0; x < _block.size(); ++x) {
        labels.push_back(static_cast<Element>(uf.find(x)));
      }
      return Congruence(labels);
    }

    // Related argument tuples yield related values, for every operation.
    bool is_compatible_with(FiniteAlgebra const& alg) const {
      if (alg.size() != _block.size()) {
        return false;
      }
      auto const& sig = alg.signature();
      std::vector<Element> rep(_num_blocks, UNDEFINED);
      for (std::size_t x = 0; x < _block.size(); ++x) {
        if (rep[_block[x]] == UNDEFINED) {
          rep[_block[x]] = static_cast<Element>(x);
        }
      }
      bool                 ok = true;
      std::vector<Element> moved;
      for (std::size_t op = 0; op < sig.size() && ok; ++op) {
        detail::for_each_tuple(
            alg.size(), sig[op].arity, [&](std::span<Element const> t) {
              if (!ok) {
                return;
              }
              moved.assign(t.begin(), t.end());
              for (auto& x : moved) {
                x = rep[_block[x]];
              }
              ok = related(alg.apply(op, t), alg.apply(op, moved));
            });
      }
      return ok;
    }

    bool operator==(Congruence const&) const  = default;
    auto operator<=>(Congruence const&) const = default;

   private:
    std::vector<Element> _block;
    std::size_t          _num_blocks = 0;
  };

  // Least congruence containing the given pairs: union-find merging, then
  // for every operation and slot, merge f(v) with f(v') where v' replaces the
  // slot by its class representative, repeated to a fixpoint.  Operations are
  // visited in declaration order and tuples lexicographically.
  inline Congruence
  congruence_generated(FiniteAlgebra const&                       alg,
                       std::span<std::pair<Element, Element> const> pairs) {
    detail::UnionFind uf(alg.size());
    for (auto [a, b] : pairs) {
      if (a >= alg.size() || b >= alg.size()) {
        throw CongruenceError("pair element out of range");
      }
      uf.unite(a, b);
    }
    auto const&          sig     = alg.signature();
    bool                 changed = true;
    std::vector<Element> moved;
    while (changed) {
      changed = false;
      for (std::size_t op = 0; op < sig.size(); ++op) {
        std::size_t const k = sig[op].arity;
        for (std::size_t slot = 0; slot < k; ++slot) {
          detail::for_each_tuple(
              alg.size(), k, [&](std::span<Element const> t) {
                Element const r = static_cast<Element>(uf.find(t[slot]));
                if (r == t[slot]) {
                  return;
                }
                moved.assign(t.begin(), t.end());
                moved[slot] = r;
                changed |= uf.unite(alg.apply(op, t), alg.apply(op, moved));
              });
        }
      }
    }
    std::vector<Element> labels;
    for (std::size_t x = 0; x < alg.size(); ++x) {
      labels.push_back(static_cast<Element>(uf.find(x)));
    }
    return Congruence(labels);
  }

  inline Congruence
  congruence_generated(FiniteAlgebra const&                               alg,
                       std::initializer_list<std::pair<Element, Element>> pairs) {
    return congruence_generated(
        alg,
        std::span<std::pair<Element, Element> const>(pairs.begin(), pairs.size()));
  }

  struct Quotient {
    FiniteAlgebra algebra;
    Homomorphism  map;  // element -> block
  };

  inline Quotient quotient(FiniteAlgebra const& alg, Congruence const& c) {
    if (c.size() != alg.size()) {
      throw CongruenceError("partition size does not match the algebra");
    }
    if (!c.is_compatible_with(alg)) {
      throw CongruenceError("partition is not compatible with the operations");
    }
    std::size_t const    n = c.num_blocks();
    std::vector<Element> rep(n, UNDEFINED);
    for (std::size_t x = 0; x < alg.size(); ++x) {
      if (rep[c.block(x)] == UNDEFINED) {
        rep[c.block(x)] = static_cast<Element>(x);
      }
    }
    auto const&                       sig = alg.signature();
    std::vector<std::vector<Element>> tables;
    std::vector<Element>              args;
    for (std::size_t op = 0; op < sig.size(); ++op) {
      std::vector<Element> table;
      detail::for_each_tuple(n, sig[op].arity, [&](std::span<Element const> t) {
        args.clear();
        for (auto b : t) {
          args.push_back(rep[b]);
        }
        table.push_back(c.block(alg.apply(op, args)));
      });
      tables.push_back(std::move(table));
    }
    return {FiniteAlgebra(sig, n, std::move(tables)), Homomorphism{c.blocks()}};
  }

  struct CongruenceBounds {
    std::size_t max_size        = 12;
    std::size_t max_congruences = 200000;
  };

  // The whole congruence lattice: diagonal and principal congruences closed
  // under joins.  Sorted by the normalised block vectors.
  inline std::vector<Congruence>
  all_congruences(FiniteAlgebra const& alg, CongruenceBounds bounds = {}) {
    if (alg.size() > bounds.max_size) {
      throw BudgetExceeded("all_congruences: algebra has "
                           + std::to_string(alg.size())
                           + " elements, bound is "
                           + std::to_string(bounds.max_size));
    }
    std::vector<Congruence> result{Congruence::diagonal(alg.size())};
    std::vector<Congruence> principal;
    auto                    seen = [&result](Congruence const& c) {
      return std::find(result.begin(), result.end(), c) != result.end();
    };
    for (Element a = 0; a < alg.size(); ++a) {
      for (Element b = a + 1; b < alg.size(); ++b) {
        auto c = congruence_generated(alg, {{a, b}});
        if (!seen(c)) {
          result.push_back(c);
          principal.push_back(c);
        }
      }
    }
    // Every congruence is a join of principal ones.
    for (std::size_t i = 1; i < result.size(); ++i) {
      for (auto const& p : principal) {
        auto j = result[i].join(p);
        if (!seen(j)) {
          if (result.size() >= bounds.max_congruences) {
            throw BudgetExceeded("all_congruences: too many congruences");
          }
          result.push_back(std::move(j));
        }
      }
    }
    std::sort(result.begin(), result.end());
    return result;
  }

  struct SubdirectIrreducibility {
    bool                      irreducible;
    std::optional<Congruence> monolith;
  };

  // Meet of all non-diagonal members of `congruences`.
  inline SubdirectIrreducibility
  monolith_of(std::size_t n, std::span<Congruence const> congruences) {
    Congruence meet = Congruence::full(n);
    for (auto const& c : congruences) {
      if (!c.is_diagonal()) {
        meet = meet.meet(c);
      }
    }
    if (meet.is_diagonal()) {
      return {false, std::nullopt};
    }
    return {true, meet};
  }

  inline SubdirectIrreducibility
  is_subdirectly_irreducible(FiniteAlgebra const& alg,
                             CongruenceBounds     bounds = {}) {
    if (alg.size() < 2) {
      throw Error("subdirect irreducibility is defined for algebras with at "
                  "least 2 elements");
    }
    auto all = all_congruences(alg, bounds);
    return monolith_of(alg.size(), all);
  }

  // Elements e with f(e,...,e) = e for every operation.
  inline bool has_trivial_subalgebra(FiniteAlgebra const& alg) {
    auto const&          sig = alg.signature();
    std::vector<Element> args;
    for (Element e = 0; e < alg.size(); ++e) {
      bool idempotent = true;
      for (std::size_t op = 0; op < sig.size() && idempotent; ++op) {
        args.assign(sig[op].arity, e);
        idempotent = alg.apply(op, args) == e;
      }
      if (idempotent) {
        return true;
      }
    }
    return false;
  }

}  // namespace ualg

#endif  // UALG_ALGEBRA_HPP_
