#include "scriptdag/dot_codec.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cstdlib>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "scriptdag/errors.hpp"

namespace scriptdag {

namespace {

bool is_ident_start(char c) {
  return std::isalpha(static_cast<unsigned char>(c)) || c == '_';
}

bool is_ident_char(char c) {
  return std::isalnum(static_cast<unsigned char>(c)) || c == '_';
}

std::string trim(std::string_view s) {
  std::size_t b = 0, e = s.size();
  while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
  return std::string(s.substr(b, e - b));
}

std::string escape_label(std::string_view text) {
  std::string out;
  out.reserve(text.size());
  for (char c : text) {
    if (c == '"' || c == '\\') out.push_back('\\');
    out.push_back(c);
  }
  return out;
}

std::string format_double(double value) {
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), value);
  return std::string(buf, ptr);
}

// Node ids may only hold directive-safe characters; labels carry the text.
std::string sanitize_directive_text(std::string_view text) {
  std::string out(text);
  for (char& c : out) {
    if (c == '\n' || c == '\r' || c == '\t') c = ' ';
  }
  return out;
}

enum class TokKind { Ident, String, Number, Arrow, LBrace, RBrace, LBracket, RBracket, Equals, Semi, Comma, End };

struct Token {
  TokKind kind = TokKind::End;
  std::string text;   // decoded for String, raw for others
  int line = 1;
  int column = 1;
  bool bad_escape = false;
  bool unterminated = false;
};

struct Directive {
  enum class Kind { Scenario, Duration, Plain } kind = Kind::Plain;
  std::string body;  // text after the keyword
  int line = 1;
  int column = 1;
};

// Hand-rolled lexer for the DOT subset. Directives arrive through a side
// channel so the parser can treat them positionally like statements.
class Lexer {
public:
  Lexer(std::string_view text, std::vector<Directive>* directives)
      : text_(text), directives_(directives) {}

  bool saw_cr = false;

  Token next() {
    skip_space_and_comments();
    Token t;
    t.line = line_;
    t.column = column_;
    if (pos_ >= text_.size()) {
      t.kind = TokKind::End;
      return t;
    }
    char c = text_[pos_];
    if (is_ident_start(c)) {
      std::size_t start = pos_;
      while (pos_ < text_.size() && is_ident_char(text_[pos_])) advance();
      t.kind = TokKind::Ident;
      t.text = std::string(text_.substr(start, pos_ - start));
      return t;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      std::size_t start = pos_;
      while (pos_ < text_.size() &&
             (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '.')) {
        advance();
      }
      t.kind = TokKind::Number;
      t.text = std::string(text_.substr(start, pos_ - start));
      return t;
    }
    switch (c) {
      case '"': return lex_string(t);
      case '{': advance(); t.kind = TokKind::LBrace; return t;
      case '}': advance(); t.kind = TokKind::RBrace; return t;
      case '[': advance(); t.kind = TokKind::LBracket; return t;
      case ']': advance(); t.kind = TokKind::RBracket; return t;
      case '=': advance(); t.kind = TokKind::Equals; return t;
      case ';': advance(); t.kind = TokKind::Semi; return t;
      case ',': advance(); t.kind = TokKind::Comma; return t;
      case '-':
        if (pos_ + 1 < text_.size() && text_[pos_ + 1] == '>') {
          advance();
          advance();
          t.kind = TokKind::Arrow;
          return t;
        }
        break;
      default: break;
    }
    throw ParseError(std::string("unexpected character '") + c + "'", t.line, t.column);
  }

  // Skips the rest of the current statement after an error: everything up to
  // and including the next ';' or end of line, whichever comes first.
  void skip_statement() {
    while (pos_ < text_.size()) {
      char c = text_[pos_];
      advance();
      if (c == ';' || c == '\n') return;
    }
  }

private:
  void advance() {
    if (text_[pos_] == '\n') {
      ++line_;
      column_ = 1;
    } else {
      ++column_;
    }
    ++pos_;
  }

  void skip_space_and_comments() {
    for (;;) {
      while (pos_ < text_.size()) {
        char c = text_[pos_];
        if (c == '\r') {
          saw_cr = true;
          advance();
        } else if (std::isspace(static_cast<unsigned char>(c))) {
          advance();
        } else {
          break;
        }
      }
      if (pos_ + 1 < text_.size() && text_[pos_] == '/' && text_[pos_ + 1] == '/') {
        Directive d;
        d.line = line_;
        d.column = column_;
        advance();
        advance();
        std::size_t start = pos_;
        while (pos_ < text_.size() && text_[pos_] != '\n') advance();
        std::string body = trim(text_.substr(start, pos_ - start));
        if (body.rfind("scenario ", 0) == 0) {
          d.kind = Directive::Kind::Scenario;
          d.body = trim(std::string_view(body).substr(9));
        } else if (body.rfind("duration ", 0) == 0) {
          d.kind = Directive::Kind::Duration;
          d.body = trim(std::string_view(body).substr(9));
        } else {
          d.kind = Directive::Kind::Plain;
          d.body = body;
        }
        if (directives_) directives_->push_back(std::move(d));
        continue;
      }
      return;
    }
  }

  Token lex_string(Token t) {
    t.kind = TokKind::String;
    advance();  // opening quote
    std::string value;
    while (pos_ < text_.size()) {
      char c = text_[pos_];
      if (c == '"') {
        advance();
        t.text = std::move(value);
        return t;
      }
      if (c == '\n') break;  // strings do not span lines in this subset
      if (c == '\\' && pos_ + 1 < text_.size()) {
        char nxt = text_[pos_ + 1];
        if (nxt == '"' || nxt == '\\') {
          value.push_back(nxt);
          advance();
          advance();
          continue;
        }
        t.bad_escape = true;
        value.push_back(c);
        advance();
        continue;
      }
      value.push_back(c);
      advance();
    }
    t.unterminated = true;
    t.text = std::move(value);
    return t;
  }

  std::string_view text_;
  std::vector<Directive>* directives_;
  std::size_t pos_ = 0;
  int line_ = 1;
  int column_ = 1;
};

struct NodeDecl {
  std::string ident;
  std::string text;
  std::optional<Duration> duration;
};

struct EdgeStmt {
  std::string src;
  std::string dst;
  int line = 1;
  int column = 1;
};

// One parser, two temperaments: strict turns every deviation into a
// ParseError; lenient records a warning and patches around it.
class DotParser {
public:
  DotParser(std::string_view text, std::string scenario, bool strict)
      : lexer_(text, &directives_), scenario_param_(std::move(scenario)), strict_(strict) {}

  std::pair<ScriptGraph, ParseDiagnostics> run() {
    parse_header();
    parse_statements();
    apply_directives();
    auto g = build_graph();
    diagnostics_.recovered = !diagnostics_.warnings.empty();
    if (lexer_.saw_cr) {
      // reported once, at the front, so it is visible among other noise
      deviate("CRLF", "carriage returns in input", 1, 1);
      diagnostics_.recovered = true;
    }
    return {std::move(g), std::move(diagnostics_)};
  }

private:
  [[noreturn]] void fail(const std::string& message, int line, int column) {
    throw ParseError(message, line, column);
  }

  void deviate(const std::string& code, const std::string& message, int line, int column) {
    if (strict_) fail(message, line, column);
    diagnostics_.warnings.push_back({line, column, code, message});
  }

  Token take() {
    if (pending_) {
      Token t = *pending_;
      pending_.reset();
      return t;
    }
    return lexer_.next();
  }

  void put_back(Token t) { pending_ = std::move(t); }

  void parse_header() {
    Token t;
    try {
      t = take();
    } catch (const ParseError&) {
      throw;  // lexical garbage before any header
    }
    if (t.kind != TokKind::Ident || t.text != "digraph") {
      fail("expected 'digraph' header", t.line, t.column);
    }
    t = take();
    if (t.kind == TokKind::Ident) {
      deviate("HEADER_NAME", "graph name is not part of the canonical form", t.line, t.column);
      t = take();
    }
    if (t.kind != TokKind::LBrace) {
      deviate("MISSING_BRACE", "expected '{' after 'digraph'", t.line, t.column);
      put_back(std::move(t));
    }
  }

  void parse_statements() {
    for (;;) {
      Token t;
      try {
        t = take();
      } catch (const ParseError& e) {
        if (strict_) throw;
        diagnostics_.warnings.push_back({e.line(), e.column(), "SKIPPED_STMT", e.what()});
        lexer_.skip_statement();
        continue;
      }
      if (t.kind == TokKind::End) {
        deviate("MISSING_BRACE", "input ended before '}'", t.line, t.column);
        return;
      }
      if (t.kind == TokKind::RBrace) {
        check_trailing();
        return;
      }
      if (t.kind == TokKind::Semi) continue;  // stray separators are harmless
      if (t.kind == TokKind::Ident) {
        parse_node_or_edge(std::move(t));
        continue;
      }
      deviate("SKIPPED_STMT", "statement does not start with an identifier", t.line, t.column);
      lexer_.skip_statement();
    }
  }

  void check_trailing() {
    try {
      Token t = take();
      if (t.kind != TokKind::End) {
        deviate("TRAILING_TEXT", "text after the closing '}'", t.line, t.column);
      }
    } catch (const ParseError& e) {
      if (strict_) throw;
      diagnostics_.warnings.push_back(
          {e.line(), e.column(), "TRAILING_TEXT", "text after the closing '}'"});
    }
  }

  void parse_node_or_edge(Token first) {
    Token t = take();
    if (t.kind == TokKind::Arrow) {
      parse_edge_chain(std::move(first));
      return;
    }
    if (t.kind == TokKind::LBracket) {
      parse_node_decl(std::move(first));
      return;
    }
    if (t.kind == TokKind::Equals) {
      // graph-level attribute assignment (rankdir = LR etc.)
      deviate("SKIPPED_STMT", "graph attribute '" + first.text + "' is not part of the canonical form",
              first.line, first.column);
      lexer_.skip_statement();
      return;
    }
    // bare declaration: the identifier doubles as the label
    deviate("BARE_NODE", "node declared without a label attribute", first.line, first.column);
    declare_node(first, first.text, first.line, first.column);
    expect_semi(std::move(t));
  }

  void parse_edge_chain(Token src) {
    std::vector<Token> nodes;
    nodes.push_back(std::move(src));
    for (;;) {
      Token t = take();
      if (t.kind != TokKind::Ident) {
        deviate("SKIPPED_STMT", "expected an identifier after '->'", t.line, t.column);
        lexer_.skip_statement();
        return;
      }
      nodes.push_back(std::move(t));
      t = take();
      if (t.kind == TokKind::Arrow) continue;
      if (nodes.size() > 2) {
        deviate("EDGE_CHAIN", "chained edges are not part of the canonical form",
                nodes[0].line, nodes[0].column);
      }
      for (std::size_t i = 0; i + 1 < nodes.size(); ++i) {
        record_edge(nodes[i], nodes[i + 1]);
      }
      expect_semi(std::move(t));
      return;
    }
  }

  void parse_node_decl(Token ident) {
    std::string label;
    bool have_label = false;
    for (;;) {
      Token key = take();
      if (key.kind == TokKind::RBracket) break;
      if (key.kind == TokKind::Comma) continue;
      if (key.kind != TokKind::Ident) {
        deviate("SKIPPED_STMT", "expected an attribute name", key.line, key.column);
        lexer_.skip_statement();
        return;
      }
      Token eq = take();
      if (eq.kind != TokKind::Equals) {
        deviate("SKIPPED_STMT", "expected '=' after attribute name", eq.line, eq.column);
        lexer_.skip_statement();
        return;
      }
      Token value = take();
      if (value.kind != TokKind::String && value.kind != TokKind::Ident &&
          value.kind != TokKind::Number) {
        deviate("SKIPPED_STMT", "expected an attribute value", value.line, value.column);
        lexer_.skip_statement();
        return;
      }
      if (key.text != "label") {
        deviate("EXTRA_ATTR", "attribute '" + key.text + "' is not part of the canonical form",
                key.line, key.column);
        continue;
      }
      if (value.kind != TokKind::String) {
        deviate("UNQUOTED_LABEL", "label value must be a quoted string", value.line, value.column);
      } else {
        if (value.bad_escape) {
          deviate("BAD_ESCAPE", "only \\\" and \\\\ escapes are defined", value.line, value.column);
        }
        if (value.unterminated) {
          deviate("UNTERMINATED_STRING", "string runs to the end of the line", value.line,
                  value.column);
        }
      }
      label = value.text;
      have_label = true;
    }
    if (!have_label) {
      deviate("BARE_NODE", "node declared without a label attribute", ident.line, ident.column);
      label = ident.text;
    }
    if (normalize_label(label).empty()) {
      deviate("EMPTY_LABEL", "label is empty after normalization; using the node id",
              ident.line, ident.column);
      label = ident.text;
    }
    declare_node(ident, label, ident.line, ident.column);
    expect_semi(take());
  }

  void expect_semi(Token t) {
    if (t.kind == TokKind::Semi) return;
    deviate("MISSING_SEMI", "statement is not ';'-terminated", t.line, t.column);
    put_back(std::move(t));
  }

  // In strict mode node idents must be step0, step1, ... in declaration order.
  void check_canonical_ident(const Token& ident, std::size_t ordinal) {
    std::string expected = "step" + std::to_string(ordinal);
    if (ident.text != expected) {
      deviate("NONCANONICAL_ID",
              "node id '" + ident.text + "' is not the canonical '" + expected + "'",
              ident.line, ident.column);
    }
  }

  int declare_node(const Token& ident, std::string label, int line, int column) {
    auto it = index_.find(ident.text);
    if (it != index_.end()) {
      if (declared_[static_cast<std::size_t>(it->second)]) {
        deviate("DUP_NODE", "node '" + ident.text + "' declared twice; the last wins", line,
                column);
      }
      declared_[static_cast<std::size_t>(it->second)] = true;
      nodes_[static_cast<std::size_t>(it->second)].text = std::move(label);
      return it->second;
    }
    check_canonical_ident(ident, nodes_.size());
    int id = static_cast<int>(nodes_.size());
    index_.emplace(ident.text, id);
    nodes_.push_back({ident.text, std::move(label), std::nullopt});
    declared_.push_back(true);
    return id;
  }

  int touch_node(const Token& ident) {
    auto it = index_.find(ident.text);
    if (it != index_.end()) return it->second;
    deviate("UNDECLARED_ID", "edge endpoint '" + ident.text + "' was never declared",
            ident.line, ident.column);
    int id = static_cast<int>(nodes_.size());
    index_.emplace(ident.text, id);
    nodes_.push_back({ident.text, ident.text, std::nullopt});
    declared_.push_back(false);
    return id;
  }

  void record_edge(const Token& src, const Token& dst) {
    int u = touch_node(src);
    int v = touch_node(dst);
    if (u == v) {
      deviate("SELF_LOOP", "self loop on '" + src.text + "' dropped", src.line, src.column);
      return;
    }
    for (const auto& e : edges_) {
      if (e.src == src.text && e.dst == dst.text) {
        deviate("DUP_EDGE", "duplicate edge " + src.text + " -> " + dst.text, src.line,
                src.column);
        return;
      }
    }
    edges_.push_back({src.text, dst.text, src.line, src.column});
  }

  void apply_directives() {
    for (const auto& d : directives_) {
      switch (d.kind) {
        case Directive::Kind::Scenario:
          if (d.body.empty()) {
            deviate("BAD_DIRECTIVE", "scenario directive without text", d.line, d.column);
            break;
          }
          scenario_directive_ = d.body;
          break;
        case Directive::Kind::Duration: apply_duration(d); break;
        case Directive::Kind::Plain: break;  // ordinary comment
      }
    }
  }

  void apply_duration(const Directive& d) {
    // form: <ident> <bucket> [<seconds estimate>]
    std::vector<std::string> parts;
    std::size_t i = 0;
    while (i < d.body.size()) {
      while (i < d.body.size() && d.body[i] == ' ') ++i;
      std::size_t start = i;
      while (i < d.body.size() && d.body[i] != ' ') ++i;
      if (i > start) parts.push_back(d.body.substr(start, i - start));
    }
    if (parts.size() < 2 || parts.size() > 3) {
      deviate("BAD_DIRECTIVE", "duration directive needs '<id> <bucket> [<seconds>]'", d.line,
              d.column);
      return;
    }
    auto it = index_.find(parts[0]);
    if (it == index_.end()) {
      deviate("BAD_DIRECTIVE", "duration names unknown node '" + parts[0] + "'", d.line,
              d.column);
      return;
    }
    auto bucket = duration_bucket_from_string(parts[1]);
    if (!bucket) {
      deviate("BAD_DIRECTIVE", "unknown duration bucket '" + parts[1] + "'", d.line, d.column);
      return;
    }
    Duration dur{*bucket, std::nullopt};
    if (parts.size() == 3) {
      const std::string& num = parts[2];
      double value = 0.0;
      auto [ptr, ec] = std::from_chars(num.data(), num.data() + num.size(), value);
      if (ec != std::errc() || ptr != num.data() + num.size()) {
        deviate("BAD_DIRECTIVE", "duration estimate '" + num + "' is not a number", d.line,
                d.column);
        return;
      }
      dur.seconds_estimate = value;
      if (!dur.in_range()) {
        deviate("BAD_DIRECTIVE",
                "duration estimate lies outside the '" + parts[1] + "' bucket", d.line,
                d.column);
        dur.seconds_estimate = std::nullopt;  // keep the bucket, drop the bad number
      }
    }
    nodes_[static_cast<std::size_t>(it->second)].duration = dur;
  }

  ScriptGraph build_graph() {
    std::string scenario = !scenario_param_.empty() ? scenario_param_
                           : !scenario_directive_.empty() ? scenario_directive_
                                                          : std::string(kUnspecifiedScenario);

    std::vector<EventNode> events;
    events.reserve(nodes_.size());
    for (std::size_t i = 0; i < nodes_.size(); ++i) {
      events.push_back({static_cast<int>(i), nodes_[i].text, nodes_[i].duration});
    }
    const int n = static_cast<int>(events.size());

    EdgeSet kept;
    if (strict_) {
      for (const auto& e : edges_) kept.emplace_back(index_.at(e.src), index_.at(e.dst));
      kept = transitive_reduction(n, kept);  // throws CycleError on cycles
    } else {
      // textual order; an edge that closes a cycle against what is already
      // kept gets dropped
      std::vector<std::vector<bool>> reach(n, std::vector<bool>(n, false));
      for (const auto& e : edges_) {
        int u = index_.at(e.src);
        int v = index_.at(e.dst);
        if (reach[static_cast<std::size_t>(v)][static_cast<std::size_t>(u)]) {
          deviate("CYCLE_DROPPED", "edge " + e.src + " -> " + e.dst + " would close a cycle",
                  e.line, e.column);
          continue;
        }
        kept.emplace_back(u, v);
        for (int a = 0; a < n; ++a) {
          if (a != u && !reach[static_cast<std::size_t>(a)][static_cast<std::size_t>(u)]) continue;
          for (int b = 0; b < n; ++b) {
            bool to_b = (b == v) || reach[static_cast<std::size_t>(v)][static_cast<std::size_t>(b)];
            if (to_b && a != b) reach[static_cast<std::size_t>(a)][static_cast<std::size_t>(b)] = true;
          }
        }
      }
      EdgeSet reduced = transitive_reduction(n, kept);
      std::set<Edge> in_reduced(reduced.begin(), reduced.end());
      for (const auto& e : edges_) {
        Edge pair{index_.at(e.src), index_.at(e.dst)};
        bool was_kept = std::find(kept.begin(), kept.end(), pair) != kept.end();
        if (was_kept && !in_reduced.count(pair)) {
          deviate("SHORTCUT_EDGE", "edge " + e.src + " -> " + e.dst + " is implied by a path",
                  e.line, e.column);
        }
      }
      kept = std::move(reduced);
    }

    auto g = ScriptGraph::from_parts(std::move(scenario), std::move(events), std::move(kept));
    auto report = g.validate();
    if (!report.ok) {
      // strict reports the first violation; lenient should never get here
      fail("parsed graph does not validate: " + report.violations.front().message, 1, 1);
    }
    return g;
  }

  Lexer lexer_;
  std::vector<Directive> directives_;
  std::optional<Token> pending_;
  std::string scenario_param_;
  std::string scenario_directive_;
  bool strict_;
  ParseDiagnostics diagnostics_;

  std::map<std::string, int> index_;  // ident -> event id, in first-mention order
  std::vector<NodeDecl> nodes_;
  std::vector<bool> declared_;
  std::vector<EdgeStmt> edges_;
};

}  // namespace

std::string emit_dot(const ScriptGraph& g, const DotEmitOptions& opts) {
  auto report = g.validate();
  if (!report.ok) {
    throw std::invalid_argument("emit_dot: graph does not validate: " +
                                report.violations.front().message);
  }

  std::string out = "digraph {\n";
  if (opts.scenario_comment) {
    out += "// scenario " + sanitize_directive_text(g.scenario()) + "\n";
  }
  for (const EventNode& ev : g.events()) {
    out += "step" + std::to_string(ev.id) + " [label=\"" + escape_label(ev.text) + "\"];\n";
    if (opts.duration_comments && ev.duration) {
      out += "// duration step" + std::to_string(ev.id) + " " +
             std::string(to_string(ev.duration->bucket));
      if (ev.duration->seconds_estimate) {
        out += " " + format_double(*ev.duration->seconds_estimate);
      }
      out += "\n";
    }
  }
  EdgeSet edges = g.edges();
  std::sort(edges.begin(), edges.end());
  for (const auto& [u, v] : edges) {
    out += "step" + std::to_string(u) + " -> step" + std::to_string(v) + ";\n";
  }
  out += "}";
  return out;
}

ScriptGraph parse_dot(std::string_view text, std::string scenario) {
  DotParser parser(text, std::move(scenario), /*strict=*/true);
  return parser.run().first;
}

std::pair<ScriptGraph, ParseDiagnostics> parse_lenient(std::string_view text,
                                                       std::string scenario) {
  DotParser parser(text, std::move(scenario), /*strict=*/false);
  return parser.run();
}

}  // namespace scriptdag
