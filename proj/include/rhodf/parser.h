// The ρNT text format.
//
//   statement := term term term '.'        (one statement per line or several
//                                           on one line; never split across
//                                           lines)
//   term      := neg* ( atom | star neg* atom )
//   neg       := '!' | '¬'
//   star      := '*' | '⋆'
//   atom      := bare | '<' iri '>' | '"' literal '"' | '_:' label
//   bare      := [A-Za-z][A-Za-z0-9_-]*
//
// `sp sc type dom range cdisj pdisj` are the ρdf⊥ vocabulary; `<x>` is the
// same term as bare `x`. Literals escape `"` and `\` with a backslash. `#`
// starts a comment. The serializer emits ASCII only, one statement per line,
// sorted by (subject, predicate, object) text.

#ifndef RHODF_PARSER_H_
#define RHODF_PARSER_H_

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "rhodf/graph.h"

namespace rhodf {

// 1-based; columns count bytes.
struct SourceSpan {
  int line = 1;
  int column = 1;
};

enum class ParseErrorKind {
  kLexical,     // bad token
  kStructural,  // not exactly three terms before '.'
  kValidation,  // well-formed tokens, ill-formed triple
};

struct ParseError {
  ParseErrorKind kind;
  SourceSpan span;
  std::string message;
};

std::string FormatParseError(const ParseError& e);

struct ParseResult {
  // Every statement that parsed and validated, even when errors occurred on
  // other lines.
  Graph graph;
  std::vector<ParseError> errors;

  bool ok() const { return errors.empty(); }
};

ParseResult ParseGraph(std::string_view text);

// Parses exactly one term (e.g. "!hasTreatment", "*!c", "_:x").
std::optional<Term> ParseTerm(std::string_view text, std::string* error = nullptr);

std::string SerializeGraph(const Graph& g);
// Canonical order used by SerializeGraph.
std::vector<Triple> SortedTriples(const Graph& g);

}  // namespace rhodf

#endif  // RHODF_PARSER_H_
