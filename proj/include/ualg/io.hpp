#ifndef UALG_IO_HPP_
#define UALG_IO_HPP_

#include <fstream>  // for ifstream, ofstream
#include <sstream>  // for stringstream
#include <string>   // for string

#include "json.hpp"

#include "algebra.hpp"
#include "errors.hpp"

namespace ualg {

  // {"signature":[{"name":"a","arity":1}],"size":3,"ops":{"a":[1,2,0]}}
  inline nlohmann::json to_json(FiniteAlgebra const& alg) {
    nlohmann::json sig = nlohmann::json::array();
    nlohmann::json ops = nlohmann::json::object();
    for (std::size_t i = 0; i < alg.signature().size(); ++i) {
      auto const& op = alg.signature()[i];
      sig.push_back({{"name", op.name}, {"arity", op.arity}});
      ops[op.name] = alg.table(i);
    }
    return {{"signature", sig}, {"size", alg.size()}, {"ops", ops}};
  }

  inline FiniteAlgebra algebra_from_json(nlohmann::json const& j) {
    try {
      std::vector<Operation> ops;
      for (auto const& op : j.at("signature")) {
        ops.push_back({op.at("name").get<std::string>(),
                       op.at("arity").get<std::size_t>()});
      }
      Signature                         sig(std::move(ops));
      std::vector<std::vector<Element>> tables;
      auto const&                       jt = j.at("ops");
      if (jt.size() != sig.size()) {
        throw ParseError("\"ops\" must have one table per signature entry");
      }
      for (auto const& op : sig.operations()) {
        tables.push_back(jt.at(op.name).get<std::vector<Element>>());
      }
      return FiniteAlgebra(sig, j.at("size").get<std::size_t>(), std::move(tables));
    } catch (nlohmann::json::exception const& e) {
      throw ParseError(std::string("malformed algebra: ") + e.what());
    }
  }

  // Canonical text: keys sorted, no whitespace, trailing newline.
  inline std::string write_algebra(FiniteAlgebra const& alg) {
    return to_json(alg).dump() + "\n";
  }

  inline FiniteAlgebra read_algebra(std::string const& text) {
    nlohmann::json j;
    try {
      j = nlohmann::json::parse(text);
    } catch (nlohmann::json::parse_error const& e) {
      throw ParseError(std::string("malformed algebra: ") + e.what());
    }
    return algebra_from_json(j);
  }

  inline std::string read_file(std::string const& path) {
    std::ifstream in(path);
    if (!in) {
      throw ParseError("cannot open \"" + path + "\"");
    }
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
  }

  inline FiniteAlgebra load_algebra(std::string const& path) {
    return read_algebra(read_file(path));
  }

  inline void save_algebra(FiniteAlgebra const& alg, std::string const& path) {
    std::ofstream out(path);
    if (!out) {
      throw Error("cannot write \"" + path + "\"");
    }
    out << write_algebra(alg);
  }

}  // namespace ualg

#endif  // UALG_IO_HPP_
