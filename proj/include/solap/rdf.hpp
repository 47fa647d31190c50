#pragma once

// In-memory RDF graph with Turtle / N-Triples parsing and deterministic
// serialization. Graphs are immutable value types once built; all queries
// return triples in sorted (subject, predicate, object) order.

#include <algorithm>
#include <cctype>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "solap/vocab.hpp"

namespace solap {

enum class RdfFormat { Turtle, NTriples };

struct RdfParseError : std::runtime_error {
  int line;
  int column;
  RdfParseError(const std::string& msg, int l, int c)
      : std::runtime_error(msg + " (line " + std::to_string(l) + ", col " +
                           std::to_string(c) + ")"),
        line(l),
        column(c) {}
};

struct Term {
  enum class Kind { Literal, Iri, Blank };  // order matches N-Triples lexical sort

  Kind kind = Kind::Iri;
  std::string value;     // IRI text, blank label, or literal lexical form
  std::string datatype;  // literals only
  std::string lang;      // literals only

  static Term iri(std::string v) { return Term{Kind::Iri, std::move(v), "", ""}; }
  static Term blank(std::string label) { return Term{Kind::Blank, std::move(label), "", ""}; }
  static Term literal(std::string lex, std::string dt = vocab::kXsdString,
                      std::string language = "") {
    if (dt.empty()) dt = vocab::kXsdString;
    return Term{Kind::Literal, std::move(lex), std::move(dt), std::move(language)};
  }

  bool is_iri() const { return kind == Kind::Iri; }
  bool is_blank() const { return kind == Kind::Blank; }
  bool is_literal() const { return kind == Kind::Literal; }

  std::string nt() const {
    switch (kind) {
      case Kind::Iri:
        return "<" + value + ">";
      case Kind::Blank:
        return "_:" + value;
      case Kind::Literal: {
        std::string out = "\"" + escape(value) + "\"";
        if (!lang.empty()) {
          out += "@" + lang;
        } else if (datatype != vocab::kXsdString) {
          out += "^^<" + datatype + ">";
        }
        return out;
      }
    }
    return {};
  }

  static std::string escape(const std::string& s) {
    std::string out;
    out.reserve(s.size());
    for (char c : s) {
      switch (c) {
        case '"': out += "\\\""; break;
        case '\\': out += "\\\\"; break;
        case '\n': out += "\\n"; break;
        case '\r': out += "\\r"; break;
        case '\t': out += "\\t"; break;
        default: out += c;
      }
    }
    return out;
  }

  friend bool operator==(const Term& a, const Term& b) {
    return a.kind == b.kind && a.value == b.value && a.datatype == b.datatype &&
           a.lang == b.lang;
  }
  friend bool operator!=(const Term& a, const Term& b) { return !(a == b); }
  friend bool operator<(const Term& a, const Term& b) {
    if (a.kind != b.kind) return a.kind < b.kind;
    if (a.value != b.value) return a.value < b.value;
    if (a.datatype != b.datatype) return a.datatype < b.datatype;
    return a.lang < b.lang;
  }
};

struct Triple {
  Term s, p, o;

  friend bool operator==(const Triple& a, const Triple& b) {
    return a.s == b.s && a.p == b.p && a.o == b.o;
  }
  friend bool operator<(const Triple& a, const Triple& b) {
    if (!(a.s == b.s)) return a.s < b.s;
    if (!(a.p == b.p)) return a.p < b.p;
    return a.o < b.o;
  }
};

class Graph {
 public:
  using TripleSet = std::set<Triple>;

  void add_prefix(const std::string& prefix, const std::string& base) {
    prefixes_[prefix] = base;
  }
  const std::map<std::string, std::string>& prefixes() const { return prefixes_; }

  void insert(Triple t) { triples_.insert(std::move(t)); }
  void insert(Term s, Term p, Term o) {
    triples_.insert(Triple{std::move(s), std::move(p), std::move(o)});
  }
  bool contains(const Triple& t) const { return triples_.count(t) > 0; }
  std::size_t size() const { return triples_.size(); }
  bool empty() const { return triples_.empty(); }

  TripleSet::const_iterator begin() const { return triples_.begin(); }
  TripleSet::const_iterator end() const { return triples_.end(); }
  const TripleSet& triples() const { return triples_; }

  void merge(const Graph& other) {
    for (const auto& [pfx, base] : other.prefixes_) prefixes_.emplace(pfx, base);
    triples_.insert(other.triples_.begin(), other.triples_.end());
  }

  std::vector<Triple> match(const std::optional<Term>& s, const std::optional<Term>& p,
                            const std::optional<Term>& o) const {
    std::vector<Triple> out;
    for (const Triple& t : triples_) {
      if (s && !(t.s == *s)) continue;
      if (p && !(t.p == *p)) continue;
      if (o && !(t.o == *o)) continue;
      out.push_back(t);
    }
    return out;
  }

  bool is_subset_of(const Graph& other) const {
    return std::includes(other.triples_.begin(), other.triples_.end(),
                         triples_.begin(), triples_.end());
  }

  friend bool operator==(const Graph& a, const Graph& b) {
    return a.triples_ == b.triples_;
  }

 private:
  std::map<std::string, std::string> prefixes_;
  TripleSet triples_;
};

namespace detail {

class TurtleParser {
 public:
  TurtleParser(std::string_view text, RdfFormat format)
      : text_(text), format_(format) {}

  Graph parse() {
    Graph g;
    skip_ws();
    while (!eof()) {
      if (format_ == RdfFormat::Turtle && (peek() == '@' || looking_at_keyword("PREFIX"))) {
        parse_prefix(g);
      } else {
        parse_statement(g);
      }
      skip_ws();
    }
    return g;
  }

 private:
  std::string_view text_;
  RdfFormat format_;
  std::size_t pos_ = 0;
  int line_ = 1, col_ = 1;
  std::map<std::string, std::string> prefixes_;

  [[noreturn]] void fail(const std::string& msg) const {
    throw RdfParseError(msg, line_, col_);
  }

  bool eof() const { return pos_ >= text_.size(); }
  char peek() const { return text_[pos_]; }
  char peek_at(std::size_t off) const {
    return pos_ + off < text_.size() ? text_[pos_ + off] : '\0';
  }

  char advance() {
    char c = text_[pos_++];
    if (c == '\n') {
      line_++;
      col_ = 1;
    } else {
      col_++;
    }
    return c;
  }

  void skip_ws() {
    while (!eof()) {
      char c = peek();
      if (c == '#') {
        while (!eof() && peek() != '\n') advance();
      } else if (std::isspace(static_cast<unsigned char>(c))) {
        advance();
      } else {
        break;
      }
    }
  }

  bool looking_at_keyword(std::string_view kw) const {
    if (pos_ + kw.size() > text_.size()) return false;
    for (std::size_t i = 0; i < kw.size(); ++i) {
      if (std::toupper(static_cast<unsigned char>(text_[pos_ + i])) != kw[i]) return false;
    }
    return true;
  }

  void expect(char c) {
    if (eof() || peek() != c) fail(std::string("expected '") + c + "'");
    advance();
  }

  void parse_prefix(Graph& g) {
    if (peek() == '@') {
      advance();
      std::string kw = read_bareword();
      if (kw != "prefix") fail("unsupported directive @" + kw);
    } else {
      for (int i = 0; i < 6; ++i) advance();  // PREFIX
    }
    skip_ws();
    std::string prefix;
    while (!eof() && peek() != ':') prefix += advance();
    expect(':');
    skip_ws();
    if (eof() || peek() != '<') fail("expected IRI in prefix declaration");
    Term base = parse_iri_ref();
    prefixes_[prefix] = base.value;
    g.add_prefix(prefix, base.value);
    skip_ws();
    if (!eof() && peek() == '.') advance();
  }

  std::string read_bareword() {
    std::string out;
    while (!eof() && (std::isalnum(static_cast<unsigned char>(peek())) || peek() == '_'))
      out += advance();
    return out;
  }

  void parse_statement(Graph& g) {
    Term subject = parse_subject();
    skip_ws();
    while (true) {
      Term predicate = parse_predicate();
      skip_ws();
      while (true) {
        Term object = parse_object();
        g.insert(subject, predicate, object);
        skip_ws();
        if (!eof() && peek() == ',' && format_ == RdfFormat::Turtle) {
          advance();
          skip_ws();
          continue;
        }
        break;
      }
      if (!eof() && peek() == ';' && format_ == RdfFormat::Turtle) {
        advance();
        skip_ws();
        if (!eof() && peek() == '.') break;  // trailing semicolon
        if (eof()) break;
        continue;
      }
      break;
    }
    skip_ws();
    expect('.');
  }

  Term parse_subject() {
    Term t = parse_term();
    if (t.is_literal()) fail("literal not allowed as subject");
    return t;
  }

  Term parse_predicate() {
    if (format_ == RdfFormat::Turtle && peek() == 'a' &&
        (std::isspace(static_cast<unsigned char>(peek_at(1))) || peek_at(1) == '<')) {
      advance();
      return Term::iri(vocab::kRdfType);
    }
    Term t = parse_term();
    if (!t.is_iri()) fail("predicate must be an IRI");
    return t;
  }

  Term parse_object() { return parse_term(); }

  Term parse_term() {
    if (eof()) fail("unexpected end of input");
    char c = peek();
    if (c == '<') return parse_iri_ref();
    if (c == '_') return parse_blank();
    if (c == '"' || c == '\'') return parse_literal();
    if (c == '+' || c == '-' || std::isdigit(static_cast<unsigned char>(c)))
      return parse_number();
    if (format_ == RdfFormat::Turtle) {
      if (looking_at_keyword("TRUE") || looking_at_keyword("FALSE")) {
        std::string w = read_bareword();
        std::transform(w.begin(), w.end(), w.begin(), ::tolower);
        if (w == "true" || w == "false") return Term::literal(w, vocab::kXsdBoolean);
        fail("unexpected token '" + w + "'");
      }
      return parse_prefixed_name();
    }
    fail("unexpected character");
  }

  Term parse_iri_ref() {
    expect('<');
    std::string iri;
    while (!eof() && peek() != '>') {
      char c = advance();
      if (std::isspace(static_cast<unsigned char>(c))) fail("whitespace inside IRI");
      iri += c;
    }
    expect('>');
    if (iri.empty()) fail("empty IRI");
    return Term::iri(iri);
  }

  Term parse_blank() {
    advance();  // _
    expect(':');
    std::string label;
    while (!eof() && (std::isalnum(static_cast<unsigned char>(peek())) || peek() == '_' ||
                      peek() == '-' || peek() == '.')) {
      if (peek() == '.' && !(std::isalnum(static_cast<unsigned char>(peek_at(1))) ||
                             peek_at(1) == '_' || peek_at(1) == '-'))
        break;  // statement terminator
      label += advance();
    }
    if (label.empty()) fail("empty blank node label");
    return Term::blank(label);
  }

  Term parse_literal() {
    char quote = advance();
    bool long_form = false;
    if (!eof() && peek() == quote && peek_at(1) == quote) {
      advance();
      advance();
      long_form = true;
    }
    std::string lex;
    while (true) {
      if (eof()) fail("unterminated string literal");
      char c = peek();
      if (c == quote) {
        if (!long_form) {
          advance();
          break;
        }
        if (peek_at(1) == quote && peek_at(2) == quote) {
          advance();
          advance();
          advance();
          break;
        }
        lex += advance();
        continue;
      }
      if (c == '\\') {
        advance();
        if (eof()) fail("dangling escape");
        char e = advance();
        switch (e) {
          case 'n': lex += '\n'; break;
          case 't': lex += '\t'; break;
          case 'r': lex += '\r'; break;
          case '"': lex += '"'; break;
          case '\'': lex += '\''; break;
          case '\\': lex += '\\'; break;
          case 'u': lex += parse_unicode(4); break;
          case 'U': lex += parse_unicode(8); break;
          default: fail(std::string("unknown escape \\") + e);
        }
        continue;
      }
      lex += advance();
    }
    // optional language tag or datatype
    if (!eof() && peek() == '@') {
      advance();
      std::string lang;
      while (!eof() && (std::isalnum(static_cast<unsigned char>(peek())) || peek() == '-'))
        lang += advance();
      if (lang.empty()) fail("empty language tag");
      return Term::literal(lex, vocab::kXsdString, lang);
    }
    if (!eof() && peek() == '^') {
      advance();
      expect('^');
      Term dt = (peek() == '<') ? parse_iri_ref() : parse_prefixed_name();
      if (!dt.is_iri()) fail("datatype must be an IRI");
      return Term::literal(lex, dt.value);
    }
    return Term::literal(lex);
  }

  std::string parse_unicode(int digits) {
    unsigned cp = 0;
    for (int i = 0; i < digits; ++i) {
      if (eof()) fail("truncated unicode escape");
      char c = advance();
      cp <<= 4;
      if (c >= '0' && c <= '9') cp |= unsigned(c - '0');
      else if (c >= 'a' && c <= 'f') cp |= unsigned(c - 'a' + 10);
      else if (c >= 'A' && c <= 'F') cp |= unsigned(c - 'A' + 10);
      else fail("bad unicode escape digit");
    }
    // UTF-8 encode
    std::string out;
    if (cp < 0x80) {
      out += char(cp);
    } else if (cp < 0x800) {
      out += char(0xC0 | (cp >> 6));
      out += char(0x80 | (cp & 0x3F));
    } else if (cp < 0x10000) {
      out += char(0xE0 | (cp >> 12));
      out += char(0x80 | ((cp >> 6) & 0x3F));
      out += char(0x80 | (cp & 0x3F));
    } else {
      out += char(0xF0 | (cp >> 18));
      out += char(0x80 | ((cp >> 12) & 0x3F));
      out += char(0x80 | ((cp >> 6) & 0x3F));
      out += char(0x80 | (cp & 0x3F));
    }
    return out;
  }

  Term parse_number() {
    std::string lex;
    if (peek() == '+' || peek() == '-') lex += advance();
    bool has_dot = false, has_exp = false;
    while (!eof()) {
      char c = peek();
      if (std::isdigit(static_cast<unsigned char>(c))) {
        lex += advance();
      } else if (c == '.' && !has_dot && !has_exp &&
                 std::isdigit(static_cast<unsigned char>(peek_at(1)))) {
        has_dot = true;
        lex += advance();
      } else if ((c == 'e' || c == 'E') && !has_exp) {
        has_exp = true;
        lex += advance();
        if (!eof() && (peek() == '+' || peek() == '-')) lex += advance();
      } else {
        break;
      }
    }
    if (lex.empty() || lex == "+" || lex == "-") fail("malformed number");
    const char* dt = has_exp ? vocab::kXsdDouble
                             : (has_dot ? vocab::kXsdDecimal : vocab::kXsdInteger);
    return Term::literal(lex, dt);
  }

  Term parse_prefixed_name() {
    std::string prefix;
    while (!eof() && peek() != ':') {
      char c = peek();
      if (!(std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '-')) break;
      prefix += advance();
    }
    if (eof() || peek() != ':') fail("expected ':' in prefixed name");
    advance();
    std::string local;
    while (!eof()) {
      char c = peek();
      if (std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '-') {
        local += advance();
      } else if (c == '.' && (std::isalnum(static_cast<unsigned char>(peek_at(1))) ||
                              peek_at(1) == '_')) {
        local += advance();
      } else {
        break;
      }
    }
    auto it = prefixes_.find(prefix);
    if (it == prefixes_.end()) fail("unknown prefix '" + prefix + ":'");
    return Term::iri(it->second + local);
  }
};

inline bool valid_local_part(std::string_view local) {
  if (local.empty()) return true;
  for (char c : local) {
    if (!(std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '-'))
      return false;
  }
  return true;
}

// Compacts an IRI with the longest matching prefix, or falls back to <...>.
inline std::string compact_iri(const std::string& iri,
                               const std::map<std::string, std::string>& prefixes) {
  const std::string* best_prefix = nullptr;
  std::size_t best_len = 0;
  for (const auto& [pfx, base] : prefixes) {
    if (base.size() > best_len && iri.size() >= base.size() &&
        iri.compare(0, base.size(), base) == 0 &&
        valid_local_part(std::string_view(iri).substr(base.size()))) {
      best_prefix = &pfx;
      best_len = base.size();
    }
  }
  if (best_prefix) return *best_prefix + ":" + iri.substr(best_len);
  return "<" + iri + ">";
}

inline std::string turtle_term(const Term& t,
                               const std::map<std::string, std::string>& prefixes) {
  switch (t.kind) {
    case Term::Kind::Iri:
      if (t.value == vocab::kRdfType) return "a";
      return compact_iri(t.value, prefixes);
    case Term::Kind::Blank:
      return "_:" + t.value;
    case Term::Kind::Literal: {
      if (t.lang.empty()) {
        if (t.datatype == vocab::kXsdInteger || t.datatype == vocab::kXsdBoolean ||
            t.datatype == vocab::kXsdDecimal) {
          // bare token when the lexical form is unambiguous turtle syntax
          bool ok = !t.value.empty();
          bool dot = false;
          for (std::size_t i = 0; ok && i < t.value.size(); ++i) {
            char c = t.value[i];
            if (c == '+' || c == '-') ok = (i == 0);
            else if (c == '.') { if (dot) ok = false; dot = true; }
            else if (!std::isdigit(static_cast<unsigned char>(c))) ok = false;
          }
          if (t.datatype == vocab::kXsdInteger && dot) ok = false;
          if (t.datatype == vocab::kXsdDecimal && !dot) ok = false;
          if (t.datatype == vocab::kXsdBoolean)
            ok = (t.value == "true" || t.value == "false");
          if (ok) return t.value;
        }
        std::string out = "\"" + Term::escape(t.value) + "\"";
        if (t.datatype != vocab::kXsdString)
          out += "^^" + compact_iri(t.datatype, prefixes);
        return out;
      }
      return "\"" + Term::escape(t.value) + "\"@" + t.lang;
    }
  }
  return {};
}

}  // namespace detail

inline Graph parse_rdf(const std::string& text, RdfFormat format = RdfFormat::Turtle) {
  return detail::TurtleParser(text, format).parse();
}

inline std::string serialize_rdf(const Graph& g, RdfFormat format = RdfFormat::Turtle) {
  std::ostringstream out;
  if (format == RdfFormat::NTriples) {
    for (const Triple& t : g)
      out << t.s.nt() << " " << t.p.nt() << " " << t.o.nt() << " .\n";
    return out.str();
  }
  const auto& prefixes = g.prefixes();
  for (const auto& [pfx, base] : prefixes)
    out << "@prefix " << pfx << ": <" << base << "> .\n";
  if (!prefixes.empty() && !g.empty()) out << "\n";

  const Term* current_subject = nullptr;
  const Term* current_predicate = nullptr;
  for (const Triple& t : g) {
    if (!current_subject || !(*current_subject == t.s)) {
      if (current_subject) out << " .\n";
      out << detail::turtle_term(t.s, prefixes) << " "
          << detail::turtle_term(t.p, prefixes) << " "
          << detail::turtle_term(t.o, prefixes);
    } else if (!(*current_predicate == t.p)) {
      out << " ;\n    " << detail::turtle_term(t.p, prefixes) << " "
          << detail::turtle_term(t.o, prefixes);
    } else {
      out << " , " << detail::turtle_term(t.o, prefixes);
    }
    current_subject = &t.s;
    current_predicate = &t.p;
  }
  if (current_subject) out << " .\n";
  return out.str();
}

inline std::vector<Triple> match(const Graph& g, const std::optional<Term>& s,
                                 const std::optional<Term>& p,
                                 const std::optional<Term>& o) {
  return g.match(s, p, o);
}

namespace detail {

inline void collect_blank_labels(const Graph& g, std::vector<std::string>& out) {
  std::set<std::string> labels;
  for (const Triple& t : g) {
    if (t.s.is_blank()) labels.insert(t.s.value);
    if (t.o.is_blank()) labels.insert(t.o.value);
  }
  out.assign(labels.begin(), labels.end());
}

inline Term rename_blank(const Term& t, const std::map<std::string, std::string>& m) {
  if (!t.is_blank()) return t;
  return Term::blank(m.at(t.value));
}

inline bool try_mapping(const Graph& a, const Graph& b,
                        const std::vector<std::string>& la,
                        const std::vector<std::string>& lb,
                        std::vector<int>& perm) {
  std::map<std::string, std::string> m;
  for (std::size_t i = 0; i < la.size(); ++i) m[la[i]] = lb[std::size_t(perm[i])];
  for (const Triple& t : a) {
    Triple mapped{rename_blank(t.s, m), t.p, rename_blank(t.o, m)};
    if (!b.contains(mapped)) return false;
  }
  return true;
}

}  // namespace detail

// Blank-node-bijection isomorphism. Exhaustive over bijections, suitable for
// test fixtures with a handful of blank nodes.
inline bool graphs_isomorphic(const Graph& a, const Graph& b) {
  if (a.size() != b.size()) return false;
  std::vector<std::string> la, lb;
  detail::collect_blank_labels(a, la);
  detail::collect_blank_labels(b, lb);
  if (la.size() != lb.size()) return false;
  if (la.empty()) return a.triples() == b.triples();
  std::vector<int> perm(la.size());
  for (std::size_t i = 0; i < perm.size(); ++i) perm[i] = int(i);
  do {
    if (detail::try_mapping(a, b, la, lb, perm)) return true;
  } while (std::next_permutation(perm.begin(), perm.end()));
  return false;
}

}  // namespace solap
