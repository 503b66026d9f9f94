#ifndef RHODF_TESTING_FIXTURES_H_
#define RHODF_TESTING_FIXTURES_H_

#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>

#include "rhodf/parser.h"

namespace rhodf::testing {

inline std::string TestDataPath(const std::string& name) {
  return std::string(RHODF_TESTDATA_DIR) + "/" + name;
}

inline std::string ReadTestData(const std::string& name) {
  std::ifstream in(TestDataPath(name), std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + TestDataPath(name));
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

// Throws on any parse error.
inline Graph LoadGraph(const std::string& name) {
  ParseResult r = ParseGraph(ReadTestData(name));
  if (!r.ok()) {
    throw std::runtime_error(name + ": " + FormatParseError(r.errors.front()));
  }
  return r.graph;
}

inline Graph ParseOrDie(std::string_view text) {
  ParseResult r = ParseGraph(text);
  if (!r.ok()) throw std::runtime_error(FormatParseError(r.errors.front()));
  return r.graph;
}

}  // namespace rhodf::testing

#endif  // RHODF_TESTING_FIXTURES_H_
