#include "rhodf/parser.h"

#include <algorithm>
#include <tuple>

namespace rhodf {

namespace {

constexpr std::string_view kNotSign = "\xC2\xAC";      // ¬ U+00AC
constexpr std::string_view kStarSign = "\xE2\x8B\x86";  // ⋆ U+22C6

bool IsBareStart(char c) {
  return (c >= 'A' && c <= 'Z') || (c >= 'a' && c <= 'z');
}
bool IsBareChar(char c) {
  return IsBareStart(c) || (c >= '0' && c <= '9') || c == '_' || c == '-';
}
bool IsSpace(char c) { return c == ' ' || c == '\t' || c == '\r'; }

struct LexError {
  std::size_t pos;
  std::string message;
};

// Scans one line. Positions are byte offsets into `line`.
class LineScanner {
 public:
  explicit LineScanner(std::string_view line) : line_(line) {}

  void SkipSpace() {
    while (pos_ < line_.size() && IsSpace(line_[pos_])) ++pos_;
  }
  bool AtEnd() const { return pos_ >= line_.size() || line_[pos_] == '#'; }
  std::size_t pos() const { return pos_; }
  char peek() const { return line_[pos_]; }
  void Advance() { ++pos_; }

  bool Consume(std::string_view s) {
    if (line_.substr(pos_, s.size()) == s) {
      pos_ += s.size();
      return true;
    }
    return false;
  }

  // Reads one term starting at the current position. On failure the error
  // position is set and nullopt returned.
  std::optional<Term> ReadTerm(LexError* err) {
    std::size_t start = pos_;
    unsigned outer_negs = CountNegs();
    bool star = Consume("*") || Consume(kStarSign);
    unsigned inner_negs = star ? CountNegs() : 0;
    if (star && (Consume("*") || Consume(kStarSign))) {
      *err = {start, "nested star term"};
      return std::nullopt;
    }
    std::optional<Term> atom = ReadAtom(err);
    if (!atom) return std::nullopt;
    if (pos_ < line_.size() && !IsSpace(line_[pos_]) && line_[pos_] != '.' &&
        line_[pos_] != '#') {
      *err = {pos_, "unexpected character after term"};
      return std::nullopt;
    }
    try {
      Term t = *atom;
      if (star) {
        t = Term::Star(Negate(t, inner_negs));
        if (outer_negs % 2 != 0) {
          *err = {start, "negation cannot apply to a star term"};
          return std::nullopt;
        }
        return t;
      }
      return Negate(t, outer_negs);
    } catch (const TermError& e) {
      *err = {start, e.what()};
      return std::nullopt;
    }
  }

 private:
  unsigned CountNegs() {
    unsigned n = 0;
    while (Consume("!") || Consume(kNotSign)) ++n;
    return n;
  }

  std::optional<Term> ReadAtom(LexError* err) {
    std::size_t start = pos_;
    if (pos_ >= line_.size()) {
      *err = {pos_, "expected a term"};
      return std::nullopt;
    }
    char c = line_[pos_];
    try {
      if (c == '<') {
        std::size_t close = line_.find('>', pos_ + 1);
        if (close == std::string_view::npos) {
          *err = {start, "unterminated <IRI>"};
          return std::nullopt;
        }
        std::string_view name = line_.substr(pos_ + 1, close - pos_ - 1);
        pos_ = close + 1;
        return Term::Iri(name);
      }
      if (c == '"') {
        std::string lexical;
        ++pos_;
        while (true) {
          if (pos_ >= line_.size()) {
            *err = {start, "unterminated literal"};
            return std::nullopt;
          }
          char d = line_[pos_++];
          if (d == '"') break;
          if (d == '\\') {
            if (pos_ >= line_.size() ||
                (line_[pos_] != '"' && line_[pos_] != '\\')) {
              *err = {pos_ - 1, "invalid escape in literal"};
              return std::nullopt;
            }
            d = line_[pos_++];
          }
          lexical += d;
        }
        return Term::Literal(lexical);
      }
      if (line_.substr(pos_, 2) == "_:") {
        pos_ += 2;
        std::size_t b = pos_;
        while (pos_ < line_.size() && IsBareChar(line_[pos_])) ++pos_;
        if (pos_ == b) {
          *err = {start, "empty blank node label"};
          return std::nullopt;
        }
        return Term::Blank(line_.substr(b, pos_ - b));
      }
      if (IsBareStart(c)) {
        std::size_t b = pos_;
        while (pos_ < line_.size() && IsBareChar(line_[pos_])) ++pos_;
        return Term::Iri(line_.substr(b, pos_ - b));
      }
    } catch (const TermError& e) {
      *err = {start, e.what()};
      return std::nullopt;
    }
    *err = {start, std::string("unexpected character '") + c + "'"};
    return std::nullopt;
  }

  std::string_view line_;
  std::size_t pos_ = 0;
};

}  // namespace

std::string FormatParseError(const ParseError& e) {
  const char* kind = e.kind == ParseErrorKind::kLexical      ? "lexical"
                     : e.kind == ParseErrorKind::kStructural ? "structural"
                                                             : "validation";
  return std::to_string(e.span.line) + ":" + std::to_string(e.span.column) +
         ": " + kind + " error: " + e.message;
}

ParseResult ParseGraph(std::string_view text) {
  ParseResult result;
  GraphBuilder builder;
  int line_no = 0;
  std::size_t begin = 0;
  while (begin <= text.size()) {
    std::size_t end = text.find('\n', begin);
    if (end == std::string_view::npos) end = text.size();
    std::string_view line = text.substr(begin, end - begin);
    ++line_no;
    auto span = [&](std::size_t pos) {
      return SourceSpan{line_no, static_cast<int>(pos) + 1};
    };

    LineScanner sc(line);
    std::vector<Term> terms;
    std::size_t stmt_start = 0;
    while (true) {
      sc.SkipSpace();
      if (sc.AtEnd()) {
        if (!terms.empty()) {
          result.errors.push_back({ParseErrorKind::kStructural,
                                   span(stmt_start),
                                   "statement not terminated by '.'"});
        }
        break;
      }
      if (sc.peek() == '.') {
        std::size_t dot = sc.pos();
        sc.Advance();
        if (terms.size() != 3) {
          result.errors.push_back(
              {ParseErrorKind::kStructural, span(terms.empty() ? dot : stmt_start),
               "expected 3 terms before '.', found " +
                   std::to_string(terms.size())});
        } else {
          auto v = ValidateTriple(terms[0], terms[1], terms[2]);
          if (v.empty()) {
            builder.Add(terms[0], terms[1], terms[2]);
          } else {
            std::string msg = "ill-formed triple:";
            for (Violation x : v) msg += std::string(" [") + ViolationName(x) + "]";
            result.errors.push_back(
                {ParseErrorKind::kValidation, span(stmt_start), msg});
          }
        }
        terms.clear();
        continue;
      }
      if (terms.size() == 3) {
        result.errors.push_back({ParseErrorKind::kStructural, span(sc.pos()),
                                 "expected '.' after 3 terms"});
        break;
      }
      if (terms.empty()) stmt_start = sc.pos();
      LexError err;
      std::optional<Term> t = sc.ReadTerm(&err);
      if (!t) {
        result.errors.push_back(
            {ParseErrorKind::kLexical, span(err.pos), err.message});
        break;  // recover at the next line
      }
      terms.push_back(*t);
    }
    if (end == text.size()) break;
    begin = end + 1;
  }
  result.graph = std::move(builder).Build();
  return result;
}

std::optional<Term> ParseTerm(std::string_view text, std::string* error) {
  LineScanner sc(text);
  sc.SkipSpace();
  LexError err;
  std::optional<Term> t = sc.ReadTerm(&err);
  if (t) {
    sc.SkipSpace();
    if (sc.pos() == text.size()) return t;
    err = {sc.pos(), "trailing characters after term"};
  }
  if (error) *error = err.message;
  return std::nullopt;
}

std::vector<Triple> SortedTriples(const Graph& g) {
  std::vector<std::pair<std::tuple<std::string, std::string, std::string>,
                        Triple>>
      keyed;
  keyed.reserve(g.size());
  for (const Triple& t : g) {
    keyed.push_back({{ToString(t.s), ToString(t.p), ToString(t.o)}, t});
  }
  std::sort(keyed.begin(), keyed.end(),
            [](const auto& a, const auto& b) { return a.first < b.first; });
  std::vector<Triple> out;
  out.reserve(keyed.size());
  for (auto& [k, t] : keyed) out.push_back(t);
  return out;
}

std::string SerializeGraph(const Graph& g) {
  std::string out;
  for (const Triple& t : SortedTriples(g)) {
    out += ToString(t);
    out += '\n';
  }
  return out;
}

}  // namespace rhodf
