// Command-line front end.  Exit codes: 0 verified or done, 1 refuted (a
// witness is printed), 2 usage or input error, 3 budget exhausted, 4
// internal error.

#include <cstddef>    // for size_t
#include <exception>  // for exception
#include <functional>  // for function
#include <iostream>   // for cout, cerr
#include <sstream>    // for istringstream
#include <stdexcept>  // for invalid_argument, out_of_range, logic_error
#include <string>     // for string
#include <vector>     // for vector

#include "CLI11.hpp"
#include "json.hpp"

#include "paperlab.hpp"
#include "ualg/algebra.hpp"
#include "ualg/amalgam.hpp"
#include "ualg/freeness.hpp"
#include "ualg/homsearch.hpp"
#include "ualg/io.hpp"
#include "ualg/prevariety.hpp"
#include "ualg/quasi_identity.hpp"
#include "ualg/srs.hpp"

namespace {

  using ualg::Element;
  using ualg::FiniteAlgebra;
  using json = nlohmann::ordered_json;

  enum Exit { ok = 0, refuted = 1, usage = 2, budget = 3, internal = 4 };

  // Key/value report printed as "key: value" lines or as one JSON object.
  class Report {
   public:
    template <typename T>
    void set(std::string const& key, T&& value) {
      _j[key] = std::forward<T>(value);
    }

    void print(bool as_json) const {
      if (as_json) {
        std::cout << _j.dump(2) << "\n";
        return;
      }
      for (auto const& [key, value] : _j.items()) {
        std::cout << key << ": "
                  << (value.is_string() ? value.get<std::string>() : value.dump()) << "\n";
      }
    }

   private:
    json _j = json::object();
  };

  struct Options {
    bool                     as_json = false;
    std::vector<std::string> gens;
    std::size_t              max_nodes    = 10'000'000;
    std::size_t              max_cells    = 1'000'000;
    std::size_t              max_carrier  = 10'000;
    std::size_t              max_families = 100'000;
  };

  std::vector<FiniteAlgebra> load_all(std::vector<std::string> const& paths) {
    std::vector<FiniteAlgebra> out;
    for (auto const& p : paths) {
      out.push_back(ualg::load_algebra(p));
    }
    return out;
  }

  ualg::PrevarietyCtx make_ctx(Options const& o) {
    if (o.gens.empty()) {
      throw CLI::ValidationError("--gen", "at least one generator file is required");
    }
    return ualg::PrevarietyCtx(load_all(o.gens),
                               {o.max_cells, o.max_carrier, o.max_families});
  }

  std::vector<Element> parse_list(std::string const& text) {
    std::vector<Element> out;
    std::string          tok;
    std::istringstream   in(text);
    while (std::getline(in, tok, ',')) {
      if (tok.find_first_not_of(" ") == std::string::npos) {
        continue;
      }
      out.push_back(static_cast<Element>(std::stoul(tok)));
    }
    return out;
  }

  json pair_json(std::pair<Element, Element> p) {
    return json::array({p.first, p.second});
  }

  void add_gen_option(CLI::App* cmd, Options& o) {
    cmd->add_option("--gen", o.gens, "generator algebra file of the prevariety SP(Y)")
        ->allow_extra_args(false)
        ->check(CLI::ExistingFile);
    cmd->add_option("--max-cells", o.max_cells, "product cell budget");
    cmd->add_option("--max-carrier", o.max_carrier, "carrier budget");
    cmd->add_option("--max-families", o.max_families, "hom-family budget");
  }

  int paperlab(std::string const& suite, bool list, bool as_json) {
    auto const& all = ualg::lab::suites();
    if (list) {
      for (auto const& s : all) {
        std::cout << s.name << "  " << s.description << "\n";
      }
      return ok;
    }
    ualg::lab::Lab lab;
    bool           found = false;
    for (auto const& s : all) {
      if (suite == "all" || s.name == suite) {
        s.run(lab);
        found = true;
      }
    }
    if (!found) {
      std::cerr << "unknown suite \"" << suite << "\" (try --list)\n";
      return usage;
    }
    if (as_json) {
      json arr = json::array();
      for (auto const& c : lab.checks()) {
        arr.push_back({{"anchor", c.anchor},
                       {"claim", c.claim},
                       {"pass", c.pass},
                       {"detail", c.detail}});
      }
      std::cout << json{{"suite", suite}, {"checks", arr}, {"pass", lab.all_pass()}}.dump(2)
                << "\n";
    } else {
      for (auto const& c : lab.checks()) {
        std::cout << (c.pass ? "[PASS] " : "[FAIL] ") << c.anchor << "  " << c.claim;
        if (!c.detail.empty()) {
          std::cout << " (" << c.detail << ")";
        }
        std::cout << "\n";
      }
    }
    return lab.all_pass() ? ok : refuted;
  }

  std::vector<ualg::AmalgamLetter> parse_amalgam_word(std::string const& text) {
    // factor:element tokens, factors numbered 1 and 2.
    std::vector<ualg::AmalgamLetter> w;
    std::istringstream               in(text);
    std::string                      tok;
    while (in >> tok) {
      auto colon = tok.find(':');
      if (colon == std::string::npos) {
        throw ualg::ParseError("expected factor:element, got \"" + tok + "\"");
      }
      std::size_t const f = std::stoul(tok.substr(0, colon));
      if (f != 1 && f != 2) {
        throw ualg::ParseError("factor must be 1 or 2 in \"" + tok + "\"");
      }
      w.push_back({f - 1, static_cast<Element>(std::stoul(tok.substr(colon + 1)))});
    }
    return w;
  }

  json amalgam_json(ualg::AmalgamElement const& e) {
    json s = json::array();
    for (auto const& l : e.string) {
      s.push_back(json::array({l.factor + 1, l.element}));
    }
    return {{"string", s}, {"b", e.b}, {"text", ualg::to_string(e)}};
  }

  struct AmalgamOptions {
    std::size_t n = 3;
    std::string g1, g2, b, emb1, emb2;
  };

  ualg::AmalgamCtx make_amalgam(AmalgamOptions const& o) {
    if (o.g1.empty()) {
      return ualg::symmetric_amalgam(o.n);
    }
    if (o.g2.empty() || o.b.empty() || o.emb1.empty() || o.emb2.empty()) {
      throw CLI::ValidationError("--g1", "--g2, --b, --emb1 and --emb2 are also required");
    }
    return ualg::AmalgamCtx(ualg::FiniteGroup(ualg::load_algebra(o.g1)),
                            ualg::FiniteGroup(ualg::load_algebra(o.g2)),
                            ualg::FiniteGroup(ualg::load_algebra(o.b)),
                            {parse_list(o.emb1)},
                            {parse_list(o.emb2)});
  }

  void add_amalgam_options(CLI::App* cmd, AmalgamOptions& o) {
    cmd->add_option("-n", o.n, "use Sym(n) amalgamated over a point stabilizer")
        ->check(CLI::Range(2, 6));
    cmd->add_option("--g1", o.g1, "first factor group file")->check(CLI::ExistingFile);
    cmd->add_option("--g2", o.g2, "second factor group file")->check(CLI::ExistingFile);
    cmd->add_option("--b", o.b, "amalgamated subgroup file")->check(CLI::ExistingFile);
    cmd->add_option("--emb1", o.emb1, "embedding of B into G1, e.g. 0,2");
    cmd->add_option("--emb2", o.emb2, "embedding of B into G2");
  }

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"finite algebras, prevarieties and free constructions"};
  app.require_subcommand(1);
  app.fallthrough();
  Options o;
  app.add_flag("--json", o.as_json, "print a JSON report");
  app.add_option("--max-nodes", o.max_nodes, "homomorphism search node budget");

  Report report;
  int    code = ok;
  std::function<void()> action;

  // free
  std::size_t free_n = 1;
  std::string out_path;
  auto* cmd_free = app.add_subcommand("free", "free algebra of SP(Y) on n generators");
  add_gen_option(cmd_free, o);
  cmd_free->add_option("-n", free_n, "number of free generators")->required();
  cmd_free->add_option("--out", out_path, "write the algebra to this file");
  cmd_free->callback([&] {
    action = [&] {
      auto ctx = make_ctx(o);
      auto F   = ualg::free_algebra(ctx, free_n);
      report.set("size", F.algebra.size());
      report.set("generators", F.generators);
      auto const& sig = F.algebra.signature();
      if (sig == ualg::unary_signature() && F.algebra.size() > 0) {
        report.set("isomorphic_to_cyclic",
                   ualg::is_isomorphic(F.algebra, ualg::cyclic_unary(F.algebra.size())));
      }
      if (!out_path.empty()) {
        ualg::save_algebra(F.algebra, out_path);
      }
    };
  });

  // coproduct
  std::vector<std::string> factor_paths;
  auto* cmd_cp = app.add_subcommand("coproduct", "canonical coproduct in SP(Y)");
  add_gen_option(cmd_cp, o);
  cmd_cp->add_option("factors", factor_paths, "factor algebra files")
      ->required()
      ->check(CLI::ExistingFile);
  cmd_cp->add_option("--out", out_path, "write the coproduct to this file");
  cmd_cp->callback([&] {
    action = [&] {
      auto ctx     = make_ctx(o);
      auto factors = load_all(factor_paths);
      auto cp      = ualg::coproduct(ctx, factors);
      report.set("size", cp.algebra.size());
      std::vector<bool> inj;
      for (std::size_t i = 0; i < factors.size(); ++i) {
        inj.push_back(cp.coprojection_injective(i));
      }
      report.set("coprojections_injective", inj);
      json maps = json::array();
      for (auto const& m : cp.coprojections) {
        maps.push_back(m.map);
      }
      report.set("coprojections", maps);
      if (!out_path.empty()) {
        ualg::save_algebra(cp.algebra, out_path);
      }
    };
  });

  // compatible
  auto* cmd_compat = app.add_subcommand("compatible", "are the algebras compatible in SP(Y)?");
  add_gen_option(cmd_compat, o);
  cmd_compat->add_option("algebras", factor_paths, "algebra files")
      ->required()
      ->check(CLI::ExistingFile);
  cmd_compat->callback([&] {
    action = [&] {
      auto ctx  = make_ctx(o);
      auto algs = load_all(factor_paths);
      bool c    = ualg::is_compatible(ctx, algs);
      report.set("compatible", c);
      if (!c) {
        auto              cp = ualg::coproduct(ctx, algs);
        std::vector<std::size_t> bad;
        for (std::size_t i = 0; i < algs.size(); ++i) {
          if (!cp.coprojection_injective(i)) {
            bad.push_back(i);
          }
        }
        report.set("non_injective_coprojections", bad);
        code = refuted;
      }
    };
  });

  // comfortable
  auto* cmd_comf = app.add_subcommand("comfortable", "is A comfortable with B in SP(Y)?");
  add_gen_option(cmd_comf, o);
  cmd_comf->add_option("algebras", factor_paths, "files A and B")
      ->required()
      ->expected(2)
      ->check(CLI::ExistingFile);
  cmd_comf->callback([&] {
    action = [&] {
      auto ctx  = make_ctx(o);
      auto algs = load_all(factor_paths);
      bool c    = ualg::is_comfortable(ctx, algs[0], algs[1]);
      report.set("comfortable", c);
      code = c ? ok : refuted;
    };
  });

  // independent
  std::string              ambient_path;
  std::vector<std::string> subset_texts;
  auto* cmd_ind = app.add_subcommand("independent",
                                     "do the subalgebras generate their coproduct?");
  add_gen_option(cmd_ind, o);
  cmd_ind->add_option("ambient", ambient_path, "ambient algebra file")
      ->required()
      ->check(CLI::ExistingFile);
  cmd_ind->add_option("--subset", subset_texts, "comma-separated elements of a subalgebra")
      ->allow_extra_args(false)
      ->required();
  cmd_ind->callback([&] {
    action = [&] {
      auto ctx = make_ctx(o);
      auto A   = ualg::load_algebra(ambient_path);
      std::vector<std::vector<Element>> subsets;
      for (auto const& s : subset_texts) {
        subsets.push_back(parse_list(s));
      }
      bool c = ualg::is_independent(ctx, A, subsets);
      report.set("independent", c);
      code = c ? ok : refuted;
    };
  });

  // si
  std::string alg_path;
  auto* cmd_si = app.add_subcommand("si", "is the algebra subdirectly irreducible?");
  cmd_si->add_option("algebra", alg_path, "algebra file")->required()->check(CLI::ExistingFile);
  cmd_si->callback([&] {
    action = [&] {
      auto A = ualg::load_algebra(alg_path);
      auto r = ualg::is_subdirectly_irreducible(A);
      report.set("subdirectly_irreducible", r.irreducible);
      if (r.monolith) {
        report.set("monolith", r.monolith->blocks());
      }
      code = r.irreducible ? ok : refuted;
    };
  });

  // rel-si
  auto* cmd_rsi = app.add_subcommand("rel-si", "is the algebra SP(Y)-subdirectly irreducible?");
  add_gen_option(cmd_rsi, o);
  cmd_rsi->add_option("algebra", alg_path, "algebra file")->required()->check(CLI::ExistingFile);
  cmd_rsi->callback([&] {
    action = [&] {
      auto ctx = make_ctx(o);
      auto A   = ualg::load_algebra(alg_path);
      auto r   = ualg::P_subdirect_irreducibility(ctx, A);
      report.set("relatively_subdirectly_irreducible", r.irreducible);
      report.set("relative_congruences", ualg::relative_congruences(ctx, A).size());
      if (r.monolith) {
        report.set("monolith", r.monolith->blocks());
      }
      code = r.irreducible ? ok : refuted;
    };
  });

  // member
  auto* cmd_mem = app.add_subcommand("member", "does the algebra lie in SP(Y)?");
  add_gen_option(cmd_mem, o);
  cmd_mem->add_option("algebra", alg_path, "algebra file")->required()->check(CLI::ExistingFile);
  cmd_mem->callback([&] {
    action = [&] {
      auto Y   = load_all(o.gens);
      if (Y.empty()) {
        throw CLI::ValidationError("--gen", "at least one generator file is required");
      }
      auto A   = ualg::load_algebra(alg_path);
      auto sep = ualg::separate_points(A, Y, o.max_nodes);
      report.set("member", sep.separated);
      report.set("separating_homomorphisms", sep.homs.size());
      if (sep.witness) {
        report.set("unseparated_pair", pair_json(*sep.witness));
        code = refuted;
      }
    };
  });

  // cover
  auto* cmd_cover = app.add_subcommand("cover", "fewest compatible blocks covering the algebras");
  add_gen_option(cmd_cover, o);
  cmd_cover->add_option("algebras", factor_paths, "algebra files")
      ->required()
      ->check(CLI::ExistingFile);
  cmd_cover->callback([&] {
    action = [&] {
      auto ctx    = make_ctx(o);
      auto algs   = load_all(factor_paths);
      auto blocks = ualg::minimum_compatible_cover(ctx, algs);
      report.set("blocks", blocks.size());
      report.set("cover", blocks);
    };
  });

  // qid
  std::string qid_text;
  auto* cmd_qid = app.add_subcommand("qid", "does a quasi-identity hold in the algebra?");
  cmd_qid->add_option("algebra", alg_path, "algebra file")->required()->check(CLI::ExistingFile);
  cmd_qid->add_option("formula", qid_text, "e.g. \"a(x) = a(y) => x = y\"")->required();
  cmd_qid->callback([&] {
    action = [&] {
      auto A  = ualg::load_algebra(alg_path);
      auto q  = ualg::parse_quasi_identity(qid_text, A.signature());
      auto ce = ualg::find_counterexample(A, q);
      report.set("formula", ualg::to_string(q));
      report.set("holds", !ce.has_value());
      if (ce) {
        json env = json::object();
        for (std::size_t i = 0; i < q.variables.size(); ++i) {
          env[q.variables[i]] = (*ce)[i];
        }
        report.set("counterexample", env);
        code = refuted;
      }
    };
  });

  // amalg-check
  std::size_t              ap_k = 3;
  ualg::AmalgamationOptions ap_opts;
  auto* cmd_ap = app.add_subcommand("amalg-check",
                                    "bounded amalgamation property check in SP(Y)");
  add_gen_option(cmd_ap, o);
  cmd_ap->add_option("-k", ap_k, "largest member size")->check(CLI::Range(0, 8));
  cmd_ap->add_flag("--nontrivial", ap_opts.nontrivial_only, "skip 1-element members");
  cmd_ap->add_option("--max-algebras", ap_opts.max_algebras, "enumeration budget");
  cmd_ap->add_option("--max-squares", ap_opts.max_squares, "square budget");
  cmd_ap->callback([&] {
    action = [&] {
      auto ctx = make_ctx(o);
      auto r   = ualg::check_amalgamation_bounded(ctx, ap_k, ap_opts);
      report.set("members", r.members);
      report.set("squares", r.squares);
      switch (r.status) {
        case ualg::AmalgamationStatus::holds:
          report.set("status", "holds");
          break;
        case ualg::AmalgamationStatus::refuted: {
          report.set("status", "refuted");
          auto const& ce = *r.counterexample;
          report.set("counterexample",
                     json{{"A", ualg::to_json(ce.A)},
                          {"B", ualg::to_json(ce.B)},
                          {"C", ualg::to_json(ce.C)},
                          {"f", ce.f.map},
                          {"g", ce.g.map}});
          code = refuted;
          break;
        }
        case ualg::AmalgamationStatus::budget_exhausted:
          report.set("status", "budget exhausted");
          report.set("message", r.budget_message);
          code = budget;
          break;
      }
    };
  });

  // kb
  std::string              pres_path;
  std::vector<std::string> extra_factors;
  std::string              shared_text;
  ualg::srs::KBBudget      kb_budget;
  auto add_kb_options = [&](CLI::App* cmd) {
    cmd->add_option("presentation", pres_path, "presentation file")
        ->required()
        ->check(CLI::ExistingFile);
    cmd->add_option("--factor", extra_factors, "further factor presentation files")
        ->allow_extra_args(false)
        ->check(CLI::ExistingFile);
    cmd->add_option("--shared", shared_text, "comma-separated letters shared by the factors");
    cmd->add_option("--max-rules", kb_budget.max_rules, "rule budget");
    cmd->add_option("--max-len", kb_budget.max_word_len, "word length budget");
  };
  auto load_presentation = [&] {
    auto p = ualg::srs::parse_presentation(ualg::read_file(pres_path));
    if (extra_factors.empty()) {
      return p;
    }
    std::vector<ualg::srs::Presentation> factors{p};
    for (auto const& f : extra_factors) {
      factors.push_back(ualg::srs::parse_presentation(ualg::read_file(f)));
    }
    std::vector<std::string> shared;
    std::istringstream       in(shared_text);
    std::string              tok;
    while (std::getline(in, tok, ',')) {
      if (!tok.empty()) {
        shared.push_back(tok);
      }
    }
    return ualg::srs::coproduct_presentation(factors, shared);
  };
  auto rules_json = [](ualg::srs::RewriteSystem const& rs) {
    json rules = json::array();
    for (auto const& [l, r] : rs.rules()) {
      rules.push_back(rs.alphabet().to_string(l) + " -> " + rs.alphabet().to_string(r));
    }
    return rules;
  };

  auto* cmd_kb = app.add_subcommand("kb", "Knuth-Bendix completion of a monoid presentation");
  add_kb_options(cmd_kb);
  cmd_kb->callback([&] {
    action = [&] {
      auto p = load_presentation();
      auto r = ualg::srs::knuth_bendix(p, kb_budget);
      report.set("alphabet", p.alphabet.letters());
      report.set("complete", r.complete);
      report.set("rules", rules_json(r.system));
      if (!r.complete) {
        report.set("message", r.message);
        code = budget;
      }
    };
  });

  std::vector<std::string> words;
  auto* cmd_red = app.add_subcommand("reduce", "normal forms of words after completion");
  add_kb_options(cmd_red);
  cmd_red->add_option("--word", words, "word to reduce (1 is the empty word)")
      ->allow_extra_args(false)
      ->required();
  cmd_red->callback([&] {
    action = [&] {
      auto p = load_presentation();
      auto r = ualg::srs::knuth_bendix(p, kb_budget);
      report.set("complete", r.complete);
      json nf = json::object();
      for (auto const& w : words) {
        nf[w] = p.alphabet.to_string(r.system.reduce(p.alphabet.parse(w)));
      }
      report.set("normal_forms", nf);
      if (!r.complete) {
        report.set("message", r.message);
        code = budget;
      }
    };
  });

  // amalgam-nf
  AmalgamOptions am;
  std::string    am_word;
  auto* cmd_anf = app.add_subcommand("amalgam-nf", "normal form in G1 *_B G2");
  add_amalgam_options(cmd_anf, am);
  cmd_anf->add_option("word", am_word, "letters factor:element, e.g. \"1:3 2:4\"")->required();
  cmd_anf->callback([&] {
    action = [&] {
      auto ctx = make_amalgam(am);
      auto e   = ctx.normal_form(parse_amalgam_word(am_word));
      report.set("normal_form", amalgam_json(e));
      report.set("torsion", ualg::is_torsion(ctx, e));
    };
  });

  // amalgam-scan
  std::size_t scan_len = 4;
  std::size_t survey_n = 0;
  auto* cmd_scan = app.add_subcommand("amalgam-scan",
                                      "torsion in left cosets of B in G1 *_B G2");
  add_amalgam_options(cmd_scan, am);
  cmd_scan->add_option("--max-length", scan_len, "longest alternating string")
      ->check(CLI::Range(0, 8));
  cmd_scan->add_option("--survey", survey_n, "instead survey cosets of a stabilizer in Sym(n)")
      ->check(CLI::Range(2, 6));
  cmd_scan->callback([&] {
    action = [&] {
      if (survey_n > 0) {
        auto s = ualg::stabilizer_coset_survey(survey_n);
        json w = json::array();
        for (auto const& c : s.witnesses) {
          w.push_back({{"image", c.image},
                       {"witness", c.witness},
                       {"order", c.order},
                       {"transposition", c.is_transposition_witness}});
        }
        report.set("cosets", s.cosets);
        report.set("witnesses", w);
        report.set("all_cosets_have_torsion", static_cast<bool>(s));
        code = s ? ok : refuted;
        return;
      }
      auto        ctx = make_amalgam(am);
      json        rows = json::array();
      std::size_t free_cosets = 0;
      for (auto const& s : ualg::alternating_strings(ctx, scan_len)) {
        auto scan = ualg::coset_torsion_scan(ctx, s);
        free_cosets += !scan;
        rows.push_back(amalgam_json({s, ctx.amalgamated().identity()})["text"].get<std::string>()
                       + (scan ? "  torsion" : "  torsion-free"));
      }
      report.set("cosets", rows.size());
      report.set("torsion_free_cosets", free_cosets);
      report.set("scan", rows);
    };
  });

  // nf (normal forms in the free algebras of V1 and V0)
  std::string nf_variety = "V0";
  std::size_t nf_gens    = 1;
  std::string nf_term;
  auto* cmd_nf = app.add_subcommand("nf", "normal form of a term over 0, p, q, t");
  cmd_nf->add_option("--variety", nf_variety, "V1 or V0")
      ->check(CLI::IsMember({"V1", "V0"}));
  cmd_nf->add_option("--generators", nf_gens, "number of generators")->check(CLI::Range(1, 26));
  cmd_nf->add_option("term", nf_term, "e.g. \"t(p x, p q x, q q x)\"")->required();
  cmd_nf->callback([&] {
    action = [&] {
      ualg::free::Context ctx{nf_variety == "V1" ? ualg::free::Variety::V1
                                                 : ualg::free::Variety::V0,
                              nf_gens};
      auto e = ualg::free::normal_form(ctx, ualg::free::parse_term(nf_term, nf_gens));
      report.set("normal_form", ualg::free::to_string(e, nf_gens));
      report.set("kind", ualg::free::is_zero(e)  ? "zero"
                         : ualg::free::is_tag(e) ? "tag"
                                                 : "word");
    };
  });

  // paperlab
  std::string suite = "all";
  bool        list  = false;
  auto* cmd_lab = app.add_subcommand("paperlab", "run a fixture suite of known results");
  cmd_lab->add_option("suite", suite, "suite name, or all");
  cmd_lab->add_flag("--list", list, "list suites");

  try {
    app.parse(argc, argv);
  } catch (CLI::ParseError const& e) {
    int r = app.exit(e);
    return r == 0 ? ok : usage;
  }

  if (cmd_lab->parsed()) {
    try {
      return paperlab(suite, list, o.as_json);
    } catch (std::exception const& e) {
      std::cerr << "internal error: " << e.what() << "\n";
      return internal;
    }
  }

  try {
    action();
  } catch (ualg::BudgetExceeded const& e) {
    std::cerr << "budget exhausted: " << e.what() << "\n";
    return budget;
  } catch (CLI::ValidationError const& e) {
    std::cerr << e.what() << "\n";
    return usage;
  } catch (ualg::Error const& e) {
    std::cerr << "error: " << e.what() << "\n";
    return usage;
  } catch (std::invalid_argument const& e) {
    std::cerr << "error: bad number: " << e.what() << "\n";
    return usage;
  } catch (std::out_of_range const& e) {
    std::cerr << "error: value out of range: " << e.what() << "\n";
    return usage;
  } catch (std::logic_error const& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return internal;
  }
  report.print(o.as_json);
  return code;
}
