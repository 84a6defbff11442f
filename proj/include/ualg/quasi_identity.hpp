#ifndef UALG_QUASI_IDENTITY_HPP_
#define UALG_QUASI_IDENTITY_HPP_

#include <cctype>    // for isalnum, isdigit, isspace
#include <cstddef>   // for size_t
#include <optional>  // for optional
#include <string>    // for string
#include <utility>   // for pair, move
#include <vector>    // for vector

#include "algebra.hpp"
#include "errors.hpp"
#include "term.hpp"

namespace ualg {

  using Equation = std::pair<Term, Term>;

  // premises[0] & ... & premises[k-1] => conclusion, universally quantified
  // over `variables`.  With no premises this is an identity.
  struct QuasiIdentity {
    std::vector<std::string> variables;
    std::vector<Equation>    premises;
    Equation                 conclusion;

    bool operator==(QuasiIdentity const&) const = default;
  };

  // Assignment (indexed like q.variables) violating q, if any.
  inline std::optional<std::vector<Element>>
  find_counterexample(FiniteAlgebra const& alg, QuasiIdentity const& q) {
    auto const& sig = alg.signature();
    std::vector<std::pair<CompiledTerm, CompiledTerm>> premises;
    for (auto const& [l, r] : q.premises) {
      premises.emplace_back(CompiledTerm(sig, l), CompiledTerm(sig, r));
    }
    CompiledTerm const lhs(sig, q.conclusion.first);
    CompiledTerm const rhs(sig, q.conclusion.second);
    std::optional<std::vector<Element>> result;
    detail::for_each_tuple(
        alg.size(), q.variables.size(), [&](std::span<Element const> env) {
          if (result) {
            return;
          }
          for (auto const& [l, r] : premises) {
            if (l.eval(alg, env) != r.eval(alg, env)) {
              return;
            }
          }
          if (lhs.eval(alg, env) != rhs.eval(alg, env)) {
            result.emplace(env.begin(), env.end());
          }
        });
    return result;
  }

  inline bool quasi_identity_holds(FiniteAlgebra const& alg,
                                   QuasiIdentity const& q) {
    return !find_counterexample(alg, q).has_value();
  }

  ////////////////////////////////////////////////////////////////////////
  // Text format: a(a(x)) = x & a(y) = y => u = v
  ////////////////////////////////////////////////////////////////////////

  namespace detail {
    class QuasiIdentityParser {
     public:
      QuasiIdentityParser(std::string const& text, Signature const& sig)
          : _s(text), _sig(sig) {}

      QuasiIdentity parse() {
        QuasiIdentity q;
        std::vector<Equation> eqs;
        skip();
        if (!peek("=>")) {
          eqs.push_back(equation());
          while (accept('&')) {
            eqs.push_back(equation());
          }
        }
        if (accept("=>")) {
          q.premises   = std::move(eqs);
          q.conclusion = equation();
        } else if (eqs.size() == 1) {
          q.conclusion = std::move(eqs.front());
        } else {
          fail("expected \"=>\" after premises");
        }
        if (_pos != _s.size()) {
          fail("unexpected trailing input");
        }
        q.variables = std::move(_vars);
        return q;
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

      bool peek(std::string const& tok) const {
        return _s.compare(_pos, tok.size(), tok) == 0;
      }

      bool accept(std::string const& tok) {
        if (peek(tok)) {
          _pos += tok.size();
          skip();
          return true;
        }
        return false;
      }

      bool accept(char c) {
        return accept(std::string(1, c));
      }

      void expect(char c) {
        if (!accept(c)) {
          fail(std::string("expected '") + c + "'");
        }
      }

      Equation equation() {
        Term lhs = term();
        if (peek("=>") || !accept('=')) {
          fail("expected '='");
        }
        return {std::move(lhs), term()};
      }

      std::string identifier() {
        std::size_t const start = _pos;
        while (_pos < _s.size()
               && (std::isalnum(static_cast<unsigned char>(_s[_pos]))
                   || _s[_pos] == '_')) {
          ++_pos;
        }
        if (start == _pos) {
          fail("expected an identifier");
        }
        return _s.substr(start, _pos - start);
      }

      Term term() {
        std::string name = identifier();
        std::size_t power = 1;
        bool        has_power = false;
        if (_pos < _s.size() && _s[_pos] == '^') {
          ++_pos;
          std::size_t const start = _pos;
          while (_pos < _s.size() && std::isdigit(static_cast<unsigned char>(_s[_pos]))) {
            ++_pos;
          }
          if (start == _pos) {
            fail("expected an exponent");
          }
          power     = std::stoul(_s.substr(start, _pos - start));
          has_power = true;
        }
        skip();
        auto op = _sig.find(name);
        if (accept('(')) {
          if (!op) {
            fail("unknown operation symbol \"" + name + "\"");
          }
          std::vector<Term> args;
          if (!accept(')')) {
            args.push_back(term());
            while (accept(',')) {
              args.push_back(term());
            }
            expect(')');
          }
          if (args.size() != _sig[*op].arity) {
            fail("\"" + name + "\" expects " + std::to_string(_sig[*op].arity)
                 + " arguments");
          }
          if (has_power) {
            if (args.size() != 1) {
              fail("exponent applies to unary symbols only");
            }
            return Term::power(name, power, std::move(args.front()));
          }
          return Term::app(name, std::move(args));
        }
        if (has_power) {
          fail("exponent requires an argument");
        }
        if (op) {
          if (_sig[*op].arity != 0) {
            fail("\"" + name + "\" requires arguments");
          }
          return Term::app(name);
        }
        for (std::size_t i = 0; i < _vars.size(); ++i) {
          if (_vars[i] == name) {
            return Term::var(i);
          }
        }
        _vars.push_back(name);
        return Term::var(_vars.size() - 1);
      }

      std::string const&       _s;
      Signature const&         _sig;
      std::size_t              _pos = 0;
      std::vector<std::string> _vars;
    };

    inline std::string format_term(Term const&                     t,
                                   std::vector<std::string> const& vars) {
      if (t.is_var()) {
        return t.var_index() < vars.size() ? vars[t.var_index()]
                                           : "x" + std::to_string(t.var_index());
      }
      if (t.args().empty()) {
        return t.symbol();
      }
      std::string s = t.symbol() + "(";
      for (std::size_t i = 0; i < t.args().size(); ++i) {
        if (i > 0) {
          s += ", ";
        }
        s += format_term(t.args()[i], vars);
      }
      return s + ")";
    }
  }  // namespace detail

  // Variables are the identifiers that are not zeroary symbols of sig,
  // numbered in order of first appearance.  `a^k(t)` abbreviates k nested
  // applications of a unary symbol.
  inline QuasiIdentity parse_quasi_identity(std::string const& text,
                                            Signature const&   sig) {
    return detail::QuasiIdentityParser(text, sig).parse();
  }

  inline std::string to_string(QuasiIdentity const& q) {
    auto eq = [&q](Equation const& e) {
      return detail::format_term(e.first, q.variables) + " = "
             + detail::format_term(e.second, q.variables);
    };
    std::string s;
    for (std::size_t i = 0; i < q.premises.size(); ++i) {
      s += (i == 0 ? "" : " & ") + eq(q.premises[i]);
    }
    if (!q.premises.empty()) {
      s += " => ";
    }
    return s + eq(q.conclusion);
  }

}  // namespace ualg

#endif  // UALG_QUASI_IDENTITY_HPP_
