#ifndef UALG_SRS_HPP_
#define UALG_SRS_HPP_

#include <algorithm>  // for find, lexicographical_compare
#include <cctype>     // for isspace
#include <cstddef>    // for size_t
#include <cstdint>    // for uint32_t
#include <deque>      // for deque
#include <optional>   // for optional
#include <sstream>    // for istringstream
#include <string>     // for string
#include <utility>    // for pair, move
#include <vector>     // for vector

#include "errors.hpp"

namespace ualg::srs {

  using Letter = std::uint32_t;
  using Word   = std::vector<Letter>;

  // Shortlex: shorter words first, then lexicographic by letter index.
  inline bool shortlex_less(Word const& a, Word const& b) {
    if (a.size() != b.size()) {
      return a.size() < b.size();
    }
    return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end());
  }

  class Alphabet {
   public:
    Alphabet() = default;

    explicit Alphabet(std::vector<std::string> letters) : _letters(std::move(letters)) {
      for (std::size_t i = 0; i < _letters.size(); ++i) {
        if (_letters[i].empty() || _letters[i] == "1") {
          throw ParseError("invalid letter name \"" + _letters[i] + "\"");
        }
        for (std::size_t j = 0; j < i; ++j) {
          if (_letters[i] == _letters[j]) {
            throw ParseError("duplicate letter \"" + _letters[i] + "\"");
          }
        }
      }
    }

    std::size_t size() const noexcept {
      return _letters.size();
    }

    std::string const& operator[](Letter a) const {
      return _letters.at(a);
    }

    std::vector<std::string> const& letters() const noexcept {
      return _letters;
    }

    std::optional<Letter> find(std::string const& name) const {
      auto it = std::find(_letters.begin(), _letters.end(), name);
      if (it == _letters.end()) {
        return std::nullopt;
      }
      return static_cast<Letter>(it - _letters.begin());
    }

    // Whitespace separates letters; within a token the longest matching
    // letter name is taken first, so "xy" reads as x y.  A token "1" is the
    // empty word.
    Word parse(std::string const& text) const {
      Word               w;
      std::istringstream in(text);
      std::string        tok;
      while (in >> tok) {
        if (tok == "1") {
          continue;
        }
        std::size_t pos = 0;
        while (pos < tok.size()) {
          std::size_t best = 0;
          Letter      best_letter = 0;
          for (Letter a = 0; a < _letters.size(); ++a) {
            auto const& name = _letters[a];
            if (name.size() > best && tok.compare(pos, name.size(), name) == 0) {
              best        = name.size();
              best_letter = a;
            }
          }
          if (best == 0) {
            throw ParseError("unknown letter in \"" + tok + "\"");
          }
          w.push_back(best_letter);
          pos += best;
        }
      }
      return w;
    }

    std::string to_string(Word const& w) const {
      if (w.empty()) {
        return "1";
      }
      bool single = true;
      for (auto const& name : _letters) {
        single = single && name.size() == 1;
      }
      std::string s;
      for (std::size_t i = 0; i < w.size(); ++i) {
        if (i > 0 && !single) {
          s += ' ';
        }
        s += (*this)[w[i]];
      }
      return s;
    }

   private:
    std::vector<std::string> _letters;
  };

  using Rule = std::pair<Word, Word>;

  class RewriteSystem {
   public:
    RewriteSystem() = default;

    explicit RewriteSystem(Alphabet alphabet) : _alphabet(std::move(alphabet)) {}

    RewriteSystem(Alphabet alphabet, std::vector<Rule> rules)
        : _alphabet(std::move(alphabet)) {
      for (auto& r : rules) {
        add_rule(std::move(r.first), std::move(r.second));
      }
    }

    Alphabet const& alphabet() const noexcept {
      return _alphabet;
    }

    std::vector<Rule> const& rules() const noexcept {
      return _rules;
    }

    void add_rule(Word lhs, Word rhs) {
      if (lhs.empty()) {
        throw Error("rewrite rule with empty left-hand side");
      }
      if (!shortlex_less(rhs, lhs)) {
        throw Error("rewrite rule " + _alphabet.to_string(lhs) + " -> "
                    + _alphabet.to_string(rhs) + " is not shortlex-decreasing");
      }
      for (auto a : lhs) {
        check_letter(a);
      }
      for (auto a : rhs) {
        check_letter(a);
      }
      _rules.emplace_back(std::move(lhs), std::move(rhs));
    }

    void remove_rule(std::size_t i) {
      _rules.erase(_rules.begin() + i);
    }

    void set_rhs(std::size_t i, Word rhs) {
      _rules[i].second = std::move(rhs);
    }

    // Leftmost-innermost: letters are shifted onto a stack and the first
    // (shortest) left-hand side that becomes a suffix is replaced.
    Word reduce(Word const& w) const {
      Word              out;
      std::deque<Letter> in(w.begin(), w.end());
      while (!in.empty()) {
        out.push_back(in.front());
        in.pop_front();
        Rule const* match = nullptr;
        for (auto const& r : _rules) {
          auto const& lhs = r.first;
          if (lhs.size() <= out.size()
              && std::equal(lhs.begin(), lhs.end(), out.end() - lhs.size())
              && (match == nullptr || lhs.size() < match->first.size())) {
            match = &r;
          }
        }
        if (match != nullptr) {
          out.resize(out.size() - match->first.size());
          in.insert(in.begin(), match->second.begin(), match->second.end());
        }
      }
      return out;
    }

    bool is_reducible(Word const& w) const {
      for (auto const& r : _rules) {
        if (std::search(w.begin(), w.end(), r.first.begin(), r.first.end()) != w.end()) {
          return true;
        }
      }
      return false;
    }

   private:
    void check_letter(Letter a) const {
      if (a >= _alphabet.size()) {
        throw Error("letter index " + std::to_string(a) + " not in the alphabet");
      }
    }

    Alphabet          _alphabet;
    std::vector<Rule> _rules;
  };

  struct CriticalPair {
    Word        overlap;  // the word rewritten in two ways
    Word        first, second;
    std::size_t rule_a, rule_b;
  };

  namespace detail {
    inline Word apply_at(Word const& w, std::size_t pos, Rule const& r) {
      Word out(w.begin(), w.begin() + pos);
      out.insert(out.end(), r.second.begin(), r.second.end());
      out.insert(out.end(), w.begin() + pos + r.first.size(), w.end());
      return out;
    }
  }  // namespace detail

  // Overlaps (a proper suffix of lhs_a equal to a prefix of lhs_b) and
  // containments (lhs_b occurring inside lhs_a), each with its two one-step
  // reducts.
  inline std::vector<CriticalPair> critical_pairs(RewriteSystem const& rs) {
    std::vector<CriticalPair> result;
    auto const&               rules = rs.rules();
    for (std::size_t i = 0; i < rules.size(); ++i) {
      Word const& a = rules[i].first;
      for (std::size_t j = 0; j < rules.size(); ++j) {
        Word const& b = rules[j].first;
        for (std::size_t k = 1; k < a.size() && k < b.size(); ++k) {
          if (std::equal(a.end() - k, a.end(), b.begin())) {
            Word w = a;
            w.insert(w.end(), b.begin() + k, b.end());
            result.push_back({w,
                              detail::apply_at(w, 0, rules[i]),
                              detail::apply_at(w, a.size() - k, rules[j]),
                              i,
                              j});
          }
        }
        if (i != j && b.size() <= a.size()) {
          for (std::size_t pos = 0; pos + b.size() <= a.size(); ++pos) {
            if (std::equal(b.begin(), b.end(), a.begin() + pos)) {
              result.push_back({a,
                                rules[i].second,
                                detail::apply_at(a, pos, rules[j]),
                                i,
                                j});
            }
          }
        }
      }
    }
    return result;
  }

  inline bool is_confluent(RewriteSystem const& rs) {
    for (auto const& cp : critical_pairs(rs)) {
      if (rs.reduce(cp.first) != rs.reduce(cp.second)) {
        return false;
      }
    }
    return true;
  }

  struct Presentation {
    Alphabet                        alphabet;
    std::vector<std::pair<Word, Word>> relations;
  };

  struct KBBudget {
    std::size_t max_rules    = 1000;
    std::size_t max_word_len = 64;
  };

  struct KBResult {
    RewriteSystem system;
    bool          complete = false;
    std::string   message;  // budget report when incomplete

    explicit operator bool() const noexcept {
      return complete;
    }
  };

  // Completion with respect to shortlex in the declared alphabet order.
  inline KBResult knuth_bendix(Presentation const& p, KBBudget budget = {}) {
    KBResult                 res{RewriteSystem(p.alphabet), false, {}};
    RewriteSystem&           rs = res.system;
    std::deque<std::pair<Word, Word>> pending(p.relations.begin(), p.relations.end());

    // Returns false when a budget is exceeded.
    auto drain = [&]() -> bool {
      while (!pending.empty()) {
        auto [l, r] = std::move(pending.front());
        pending.pop_front();
        l = rs.reduce(l);
        r = rs.reduce(r);
        if (l == r) {
          continue;
        }
        if (shortlex_less(l, r)) {
          std::swap(l, r);
        }
        if (l.size() > budget.max_word_len) {
          res.message = "word length bound " + std::to_string(budget.max_word_len)
                        + " exceeded";
          return false;
        }
        Word const new_lhs = l;
        rs.add_rule(std::move(l), std::move(r));
        // Inter-reduce: rules whose left side contains the new one are
        // turned back into equations; right sides are renormalised.
        std::size_t const last = rs.rules().size() - 1;
        for (std::size_t i = last; i-- > 0;) {
          auto const& lhs = rs.rules()[i].first;
          if (std::search(lhs.begin(), lhs.end(), new_lhs.begin(), new_lhs.end())
              != lhs.end()) {
            pending.push_back(rs.rules()[i]);
            rs.remove_rule(i);
          }
        }
        for (std::size_t i = 0; i < rs.rules().size(); ++i) {
          rs.set_rhs(i, rs.reduce(rs.rules()[i].second));
        }
        if (rs.rules().size() > budget.max_rules) {
          res.message = "rule bound " + std::to_string(budget.max_rules) + " exceeded";
          return false;
        }
      }
      return true;
    };

    while (true) {
      if (!drain()) {
        return res;
      }
      for (auto const& cp : critical_pairs(rs)) {
        Word a = rs.reduce(cp.first);
        Word b = rs.reduce(cp.second);
        if (a != b) {
          pending.emplace_back(std::move(a), std::move(b));
        }
      }
      if (pending.empty()) {
        break;
      }
    }
    res.complete = true;
    return res;
  }

  inline KBResult knuth_bendix(Presentation const& p,
                               std::size_t         max_rules,
                               std::size_t         max_word_len) {
    return knuth_bendix(p, KBBudget{max_rules, max_word_len});
  }

  // Free product of monoids with the letters in `shared` identified.  Any
  // other letter name occurring in more than one factor is renamed
  // name_k in factor k (counting from 1).
  inline Presentation coproduct_presentation(std::vector<Presentation> const& factors,
                                             std::vector<std::string> const&  shared) {
    for (std::size_t k = 0; k < factors.size(); ++k) {
      for (auto const& s : shared) {
        if (!factors[k].alphabet.find(s)) {
          throw Error("shared letter \"" + s + "\" missing from factor "
                      + std::to_string(k + 1));
        }
      }
    }
    auto is_shared = [&shared](std::string const& name) {
      return std::find(shared.begin(), shared.end(), name) != shared.end();
    };
    std::vector<std::string>         names;
    std::vector<std::vector<Letter>> maps(factors.size());
    for (std::size_t k = 0; k < factors.size(); ++k) {
      for (auto const& name : factors[k].alphabet.letters()) {
        std::string target = name;
        auto        it     = std::find(names.begin(), names.end(), name);
        if (it != names.end() && !is_shared(name)) {
          target = name + "_" + std::to_string(k + 1);
          it     = std::find(names.begin(), names.end(), target);
        }
        if (it == names.end()) {
          names.push_back(target);
          maps[k].push_back(static_cast<Letter>(names.size() - 1));
        } else {
          maps[k].push_back(static_cast<Letter>(it - names.begin()));
        }
      }
    }
    Presentation result{Alphabet(names), {}};
    for (std::size_t k = 0; k < factors.size(); ++k) {
      auto translate = [&](Word const& w) {
        Word out;
        for (auto a : w) {
          out.push_back(maps[k][a]);
        }
        return out;
      };
      for (auto const& [l, r] : factors[k].relations) {
        result.relations.emplace_back(translate(l), translate(r));
      }
    }
    return result;
  }

  ////////////////////////////////////////////////////////////////////////
  // Text format: alphabet line, then one `lhs = rhs` per line, 1 for the
  // empty word; `#` starts a comment.
  ////////////////////////////////////////////////////////////////////////

  inline Presentation parse_presentation(std::string const& text) {
    std::istringstream       in(text);
    std::string              line;
    std::optional<Alphabet>  alphabet;
    Presentation             p;
    std::size_t              lineno = 0;
    while (std::getline(in, line)) {
      ++lineno;
      if (auto hash = line.find('#'); hash != std::string::npos) {
        line.erase(hash);
      }
      if (line.find_first_not_of(" \t\r") == std::string::npos) {
        continue;
      }
      if (!alphabet) {
        std::istringstream       ls(line);
        std::vector<std::string> letters;
        std::string              tok;
        while (ls >> tok) {
          letters.push_back(tok);
        }
        alphabet.emplace(std::move(letters));
        continue;
      }
      auto eq = line.find('=');
      if (eq == std::string::npos || line.find('=', eq + 1) != std::string::npos) {
        throw ParseError("line " + std::to_string(lineno) + ": expected lhs = rhs");
      }
      for (auto const& side : {line.substr(0, eq), line.substr(eq + 1)}) {
        if (side.find_first_not_of(" \t\r") == std::string::npos) {
          throw ParseError("line " + std::to_string(lineno)
                           + ": empty side, write 1 for the empty word");
        }
      }
      try {
        p.relations.emplace_back(alphabet->parse(line.substr(0, eq)),
                                 alphabet->parse(line.substr(eq + 1)));
      } catch (ParseError const& e) {
        throw ParseError("line " + std::to_string(lineno) + ": " + e.what());
      }
    }
    if (!alphabet) {
      throw ParseError("presentation has no alphabet line");
    }
    p.alphabet = std::move(*alphabet);
    return p;
  }

  inline std::string to_string(Presentation const& p) {
    std::string s;
    for (std::size_t i = 0; i < p.alphabet.size(); ++i) {
      s += (i == 0 ? "" : " ") + p.alphabet[static_cast<Letter>(i)];
    }
    s += '\n';
    for (auto const& [l, r] : p.relations) {
      s += p.alphabet.to_string(l) + " = " + p.alphabet.to_string(r) + "\n";
    }
    return s;
  }

  inline std::string to_string(RewriteSystem const& rs) {
    std::string s;
    for (auto const& [l, r] : rs.rules()) {
      s += rs.alphabet().to_string(l) + " -> " + rs.alphabet().to_string(r) + "\n";
    }
    return s;
  }

}  // namespace ualg::srs

#endif  // UALG_SRS_HPP_
