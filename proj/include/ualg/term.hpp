#ifndef UALG_TERM_HPP_
#define UALG_TERM_HPP_

#include <cstddef>  // for size_t
#include <string>   // for string
#include <utility>  // for move
#include <vector>   // for vector

#include "algebra.hpp"
#include "errors.hpp"

namespace ualg {

  // Either a variable x_i, or an operation symbol applied to arguments.
  class Term {
   public:
    static Term var(std::size_t index) {
      Term t;
      t._var = index;
      return t;
    }

    static Term app(std::string symbol, std::vector<Term> args = {}) {
      Term t;
      t._symbol = std::move(symbol);
      t._args   = std::move(args);
      return t;
    }

    // symbol applied k times to inner, for a unary symbol.
    static Term power(std::string const& symbol, std::size_t k, Term inner) {
      for (std::size_t i = 0; i < k; ++i) {
        inner = app(symbol, {std::move(inner)});
      }
      return inner;
    }

    bool is_var() const noexcept {
      return _symbol.empty();
    }

    std::size_t var_index() const noexcept {
      return _var;
    }

    std::string const& symbol() const noexcept {
      return _symbol;
    }

    std::vector<Term> const& args() const noexcept {
      return _args;
    }

    // One more than the largest variable index occurring, 0 if none.
    std::size_t num_vars() const {
      if (is_var()) {
        return _var + 1;
      }
      std::size_t n = 0;
      for (auto const& a : _args) {
        n = std::max(n, a.num_vars());
      }
      return n;
    }

    bool operator==(Term const&) const = default;

   private:
    std::size_t       _var = 0;
    std::string       _symbol;
    std::vector<Term> _args;
  };

  // A term flattened to postfix order with symbols resolved against a
  // signature, for repeated evaluation.
  class CompiledTerm {
   public:
    CompiledTerm() = default;

    CompiledTerm(Signature const& sig, Term const& t) {
      compile(sig, t);
    }

    Element eval(FiniteAlgebra const& alg, std::span<Element const> env) const {
      _stack.clear();
      for (auto const& ins : _code) {
        if (ins.is_var) {
          if (ins.index >= env.size() || env[ins.index] >= alg.size()) {
            throw TermError("variable x" + std::to_string(ins.index)
                            + " is unassigned");
          }
          _stack.push_back(env[ins.index]);
        } else {
          std::size_t const k   = alg.signature()[ins.index].arity;
          auto const        top = _stack.size() - k;
          Element const     v   = alg.apply(
              ins.index, std::span<Element const>(_stack.data() + top, k));
          _stack.resize(top);
          _stack.push_back(v);
        }
      }
      return _stack.back();
    }

   private:
    struct Instruction {
      bool        is_var;
      std::size_t index;
    };

    void compile(Signature const& sig, Term const& t) {
      if (t.is_var()) {
        _code.push_back({true, t.var_index()});
        return;
      }
      auto op = sig.find(t.symbol());
      if (!op) {
        throw TermError("unknown operation symbol \"" + t.symbol() + "\"");
      }
      if (sig[*op].arity != t.args().size()) {
        throw TermError("\"" + t.symbol() + "\" has arity "
                        + std::to_string(sig[*op].arity) + ", applied to "
                        + std::to_string(t.args().size()) + " arguments");
      }
      for (auto const& a : t.args()) {
        compile(sig, a);
      }
      _code.push_back({false, *op});
    }

    std::vector<Instruction>     _code;
    mutable std::vector<Element> _stack;
  };

  inline Element eval_term(FiniteAlgebra const&     alg,
                           Term const&              t,
                           std::span<Element const> assignment) {
    return CompiledTerm(alg.signature(), t).eval(alg, assignment);
  }

  inline Element eval_term(FiniteAlgebra const&           alg,
                           Term const&                    t,
                           std::initializer_list<Element> assignment) {
    return eval_term(
        alg, t, std::span<Element const>(assignment.begin(), assignment.size()));
  }

}  // namespace ualg

#endif  // UALG_TERM_HPP_
