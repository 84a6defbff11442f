#include <sys/wait.h>  // for WEXITSTATUS

#include <array>   // for array
#include <cstdio>  // for popen
#include <string>  // for string

#include "catch_amalgamated.hpp"

#include "json.hpp"
#include "paperlab.hpp"

namespace {

  struct Run {
    int            code;
    std::string    out;
    nlohmann::json json;
  };

  std::string data(char const* name) {
    return std::string(UALG_DATA_DIR) + "/" + name;
  }

  Run run(std::string const& args, bool as_json = true) {
    std::string const cmd
        = std::string(UALG_CLI_PATH) + (as_json ? " --json " : " ") + args + " 2>/dev/null";
    FILE* pipe = popen(cmd.c_str(), "r");
    REQUIRE(pipe != nullptr);
    std::string           out;
    std::array<char, 512> buf;
    while (std::fgets(buf.data(), buf.size(), pipe) != nullptr) {
      out += buf.data();
    }
    int const status = pclose(pipe);
    Run       r{WEXITSTATUS(status), out, {}};
    if (as_json && r.code != 2) {
      r.json = nlohmann::json::parse(out);
    }
    return r;
  }

}  // namespace

TEST_CASE("free algebra verb", "[cli]") {
  auto const r = run("free --gen " + data("c2.alg") + " --gen " + data("c3.alg") + " -n 1");
  REQUIRE(r.code == 0);
  REQUIRE(r.json["size"] == 6);
  REQUIRE(r.json["isomorphic_to_cyclic"] == true);
}

TEST_CASE("coproduct verb", "[cli]") {
  auto const r = run("coproduct --gen " + data("u23.alg") + " " + data("c2.alg") + " "
                     + data("c3.alg"));
  REQUIRE(r.code == 0);
  REQUIRE(r.json["size"] == 5);
  REQUIRE(r.json["coprojections_injective"] == nlohmann::json::array({true, true}));
}

TEST_CASE("compatibility verbs report refutations with exit 1", "[cli]") {
  auto const pair = " " + data("c2.alg") + " " + data("c3.alg");
  auto const yes  = run("compatible --gen " + data("u23.alg") + pair);
  REQUIRE(yes.code == 0);
  REQUIRE(yes.json["compatible"] == true);
  auto const no = run("compatible --gen " + data("c2.alg") + " --gen " + data("c3.alg") + pair);
  REQUIRE(no.code == 1);
  REQUIRE(no.json["compatible"] == false);

  auto const cover = run("cover --gen " + data("c2.alg") + " --gen " + data("c3.alg") + pair);
  REQUIRE(cover.code == 0);
  REQUIRE(cover.json["blocks"] == 2);
}

TEST_CASE("membership and irreducibility verbs", "[cli]") {
  auto const gens = "--gen " + data("c2.alg") + " --gen " + data("c3.alg") + " ";
  auto const mem  = run("member " + gens + data("u23.alg"));
  REQUIRE(mem.code == 1);
  REQUIRE(mem.json["member"] == false);
  REQUIRE(mem.json.contains("unseparated_pair"));
  REQUIRE(run("rel-si " + gens + data("c3.alg")).json["relatively_subdirectly_irreducible"]
          == true);
  REQUIRE(run("si " + data("c2.alg")).json["subdirectly_irreducible"] == true);
}

TEST_CASE("quasi-identity verb", "[cli]") {
  auto const q = run("qid " + data("u23.alg") + " \"a(a(x)) = x => a(a(y)) = y\"");
  REQUIRE(q.code == 1);
  REQUIRE(q.json["holds"] == false);
  REQUIRE(q.json["counterexample"].size() == 2);
}

TEST_CASE("independence verb", "[cli]") {
  auto const r = run("independent --gen " + data("u23.alg") + " " + data("u23.alg")
                     + " --subset 0,1 --subset 2,3,4");
  REQUIRE(r.code == 0);
  REQUIRE(r.json["independent"] == true);
}

TEST_CASE("rewriting verbs", "[cli]") {
  auto const kb = run("kb " + data("inverses.pres"));
  REQUIRE(kb.code == 0);
  REQUIRE(kb.json["complete"] == true);
  REQUIRE(kb.json["rules"] == nlohmann::json::array({"xy -> 1", "z -> y", "yx -> 1"}));

  auto const red = run("reduce " + data("pair.pres") + " --word \"x u2\" --word u2");
  REQUIRE(red.code == 0);
  REQUIRE(red.json["normal_forms"]["x u2"] == "x u1");
  REQUIRE(red.json["normal_forms"]["u2"] == "u2");

  auto const fall = run("reduce " + data("pair-b1.pres") + " --factor " + data("pair-b2.pres")
                        + " --factor " + data("pair-b3.pres")
                        + " --shared x,y --word u1 --word u2");
  REQUIRE(fall.code == 0);
  REQUIRE(fall.json["normal_forms"]["u1"] == fall.json["normal_forms"]["u2"]);

  REQUIRE(run("kb " + data("inverses.pres") + " --max-rules 1").code == 3);
}

TEST_CASE("amalgam verbs", "[cli]") {
  auto const scan = run("amalgam-scan -n 3 --max-length 2");
  REQUIRE(scan.code == 0);
  REQUIRE(scan.json["cosets"] == 13);
  REQUIRE(scan.json["torsion_free_cosets"] == 8);

  auto const survey = run("amalgam-scan --survey 4");
  REQUIRE(survey.code == 0);
  REQUIRE(survey.json["cosets"] == 4);
  REQUIRE(survey.json["all_cosets_have_torsion"] == true);

  auto const files = run("amalgam-scan --g1 " + data("sym3.alg") + " --g2 " + data("sym3.alg")
                         + " --b " + data("stab3.alg") + " --emb1 0,2 --emb2 0,2 --max-length 2");
  REQUIRE(files.code == 0);
  REQUIRE(files.json["scan"] == scan.json["scan"]);

  auto const nf = run("amalgam-nf -n 3 \"1:1 2:1\"");
  REQUIRE(nf.code == 0);
  REQUIRE(nf.json.contains("normal_form"));
}

TEST_CASE("normal form verb", "[cli]") {
  auto const z = run("nf --variety V1 --generators 1 \"t(p x, p q x, q q x)\"");
  REQUIRE(z.code == 0);
  REQUIRE(z.json["kind"] == "zero");
  auto const t = run("nf --variety V0 --generators 1 \"t(x, q x, p x)\"");
  REQUIRE(t.json["kind"] == "tag");
  REQUIRE(run("nf --variety V2 x").code == 2);
}

TEST_CASE("usage errors exit 2", "[cli]") {
  REQUIRE(run("", false).code == 2);
  REQUIRE(run("coproduct " + data("c2.alg"), false).code == 2);
  REQUIRE(run("coproduct --gen /nonexistent.alg " + data("c2.alg"), false).code == 2);
  REQUIRE(run("coproduct --gen " + data("c2.alg") + " " + data("c3.alg"), false).code == 2);
  REQUIRE(run("si " + data("inverses.pres"), false).code == 2);
  REQUIRE(run("independent --gen " + data("c2.alg") + " " + data("c2.alg") + " --subset 0,x",
              false)
              .code
          == 2);
}

TEST_CASE("human-readable output", "[cli]") {
  auto const r = run("si " + data("c2.alg"), false);
  REQUIRE(r.code == 0);
  REQUIRE(r.out.find("subdirectly_irreducible: true") != std::string::npos);
}

TEST_CASE("fixture suites", "[cli]") {
  for (auto const& s : ualg::lab::suites()) {
    ualg::lab::Lab lab;
    s.run(lab);
    for (auto const& c : lab.checks()) {
      INFO(s.name << ": " << c.claim << " (" << c.detail << ")");
      CHECK(c.pass);
    }
  }
  auto const all = run("paperlab all");
  REQUIRE(all.code == 0);
  REQUIRE(run("paperlab no-such-suite", false).code == 2);
  auto const listed = run("paperlab --list", false);
  REQUIRE(listed.out.find("no-free-triple") != std::string::npos);
}
