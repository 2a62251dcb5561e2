#include "eslrv/esl/parser.hpp"

#include <algorithm>
#include <cctype>
#include <set>

#include <nlohmann/json.hpp>

#include "eslrv/esl/normalize.hpp"

namespace eslrv::esl {

std::string_view to_string(SpecErrorKind kind) {
  switch (kind) {
    case SpecErrorKind::Syntax: return "SyntaxError";
    case SpecErrorKind::Schema: return "SchemaError";
    case SpecErrorKind::Arity: return "ArityError";
    case SpecErrorKind::Undeclared: return "UndeclaredSymbol";
    case SpecErrorKind::Duplicate: return "DuplicateDeclaration";
    case SpecErrorKind::NotDeNF: return "NotDeNF";
    case SpecErrorKind::Blowup: return "BlowupLimit";
  }
  return "SpecError";
}

namespace {

std::string format_error(SpecErrorKind kind, const SourcePos& pos, const std::string& detail) {
  std::string where = pos.section.empty() ? "" : pos.section + ":";
  where += std::to_string(pos.line) + ":" + std::to_string(pos.column);
  return where + ": " + std::string(to_string(kind)) + ": " + detail;
}

SourcePos position_in(std::string_view text, std::size_t offset, const std::string& section) {
  SourcePos pos{section, 1, 1};
  offset = std::min(offset, text.size());
  for (std::size_t i = 0; i < offset; ++i) {
    if (text[i] == '\n') {
      ++pos.line;
      pos.column = 1;
    } else {
      ++pos.column;
    }
  }
  return pos;
}

constexpr std::size_t kMaxNesting = 200;

bool is_keyword(std::string_view s) { return s == "not" || s == "and" || s == "or"; }

bool is_identifier(std::string_view s) {
  if (s.empty()) return false;
  auto head = static_cast<unsigned char>(s[0]);
  if (!(std::isalpha(head) || head == '_')) return false;
  return std::all_of(s.begin() + 1, s.end(), [](char c) {
    auto u = static_cast<unsigned char>(c);
    return std::isalnum(u) || u == '_';
  });
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

enum class Tok { Ident, Number, String, LParen, RParen, Comma, Not, And, Or, Implies, Plus, Minus, Star, Slash, End };

struct Token {
  Tok kind;
  std::string text;
  std::size_t offset;
  std::size_t length;
};

std::string describe(const Token& t) {
  switch (t.kind) {
    case Tok::End: return "end of input";
    case Tok::String: return "string " + t.text;
    default: return "'" + t.text + "'";
  }
}

class Lexer {
 public:
  Lexer(std::string_view text, std::string section) : text_(text), section_(std::move(section)) {}

  std::vector<Token> run() {
    std::vector<Token> out;
    while (true) {
      skip_blanks();
      if (i_ >= text_.size()) {
        out.push_back({Tok::End, "", text_.size(), 0});
        return out;
      }
      out.push_back(next());
    }
  }

 private:
  void skip_blanks() {
    while (i_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[i_]))) ++i_;
  }

  Token make(Tok kind, std::size_t start) {
    return {kind, std::string(text_.substr(start, i_ - start)), start, i_ - start};
  }

  bool digit_at(std::size_t k) const { return k < text_.size() && std::isdigit(static_cast<unsigned char>(text_[k])); }

  Token next() {
    std::size_t start = i_;
    char c = text_[i_];
    auto uc = static_cast<unsigned char>(c);
    if (std::isalpha(uc) || c == '_') {
      while (i_ < text_.size() &&
             (std::isalnum(static_cast<unsigned char>(text_[i_])) || text_[i_] == '_')) {
        ++i_;
      }
      Token t = make(Tok::Ident, start);
      if (t.text == "not") t.kind = Tok::Not;
      if (t.text == "and") t.kind = Tok::And;
      if (t.text == "or") t.kind = Tok::Or;
      return t;
    }
    if (std::isdigit(uc)) {
      while (digit_at(i_)) ++i_;
      if (i_ < text_.size() && text_[i_] == '.' && digit_at(i_ + 1)) {
        ++i_;
        while (digit_at(i_)) ++i_;
      }
      if (i_ < text_.size() && (text_[i_] == 'e' || text_[i_] == 'E')) {
        std::size_t k = i_ + 1;
        if (k < text_.size() && (text_[k] == '+' || text_[k] == '-')) ++k;
        if (digit_at(k)) {
          i_ = k;
          while (digit_at(i_)) ++i_;
        }
      }
      return make(Tok::Number, start);
    }
    if (c == '\'' || c == '"') {
      std::size_t close = text_.find(c, i_ + 1);
      if (close == std::string_view::npos) fail(start, "unterminated string literal");
      i_ = close + 1;
      Token t = make(Tok::String, start);
      return t;
    }
    ++i_;
    switch (c) {
      case '(': return make(Tok::LParen, start);
      case ')': return make(Tok::RParen, start);
      case ',': return make(Tok::Comma, start);
      case '+': return make(Tok::Plus, start);
      case '-': return make(Tok::Minus, start);
      case '*': return make(Tok::Star, start);
      case '/': return make(Tok::Slash, start);
      case '!':
      case '~': return make(Tok::Not, start);
      case '&':
        if (i_ < text_.size() && text_[i_] == '&') ++i_;
        return make(Tok::And, start);
      case '|':
        if (i_ < text_.size() && text_[i_] == '|') ++i_;
        return make(Tok::Or, start);
      case '=':
        if (i_ < text_.size() && text_[i_] == '>') {
          ++i_;
          return make(Tok::Implies, start);
        }
        break;
      default: break;
    }
    std::string shown = uc >= 0x20 && uc < 0x7f ? std::string(1, c) : "\\x" + hex(uc);
    fail(start, "unexpected character '" + shown + "'");
  }

  static std::string hex(unsigned char c) {
    const char* digits = "0123456789abcdef";
    return {digits[c >> 4], digits[c & 15]};
  }

  [[noreturn]] void fail(std::size_t offset, const std::string& detail) {
    throw SpecError(SpecErrorKind::Syntax, position_in(text_, offset, section_), detail);
  }

  std::string_view text_;
  std::string section_;
  std::size_t i_ = 0;
};

class RuleParser {
 public:
  RuleParser(std::string_view text, const EslSpec& spec, const FunctionRegistry& registry, std::string section)
      : text_(text), spec_(spec), registry_(registry), section_(std::move(section)) {
    tokens_ = Lexer(text_, section_).run();
  }

  Implication parse_implication() {
    Formula lhs = parse_disjunction();
    if (peek().kind != Tok::Implies) {
      if (peek().kind == Tok::End) {
        fail(SpecErrorKind::NotDeNF, 0, "rule '" + std::string(trim(text_)) + "' is not an implication");
      }
      expected("'=>'");
    }
    take();
    Formula rhs = parse_disjunction();
    if (peek().kind == Tok::Implies) {
      std::string offending(trim(text_.substr(rhs.begin)));
      fail(SpecErrorKind::NotDeNF, rhs.begin, "chained implication '" + offending + "' (exactly one '=>' per rule)");
    }
    if (peek().kind != Tok::End) expected("end of rule");
    return {std::move(lhs), std::move(rhs)};
  }

 private:
  struct DepthGuard {
    explicit DepthGuard(RuleParser& p) : parser(p) {
      if (++parser.depth_ > kMaxNesting) parser.fail(SpecErrorKind::Syntax, parser.peek().offset, "nesting too deep");
    }
    ~DepthGuard() { --parser.depth_; }
    RuleParser& parser;
  };

  const Token& peek() const { return tokens_[pos_]; }
  Token take() { return tokens_[pos_ < tokens_.size() - 1 ? pos_++ : pos_]; }
  std::size_t last_end() const { return pos_ == 0 ? 0 : tokens_[pos_ - 1].offset + tokens_[pos_ - 1].length; }

  Token expect(Tok kind, const char* what) {
    if (peek().kind != kind) expected(what);
    return take();
  }

  [[noreturn]] void expected(const std::string& what) {
    fail(SpecErrorKind::Syntax, peek().offset, "expected " + what + " but found " + describe(peek()));
  }

  [[noreturn]] void fail(SpecErrorKind kind, std::size_t offset, const std::string& detail) {
    throw SpecError(kind, position_in(text_, offset, section_), detail);
  }

  Formula parse_disjunction() {
    DepthGuard guard(*this);
    std::size_t begin = peek().offset;
    std::vector<Formula> parts;
    parts.push_back(parse_conjunction());
    while (peek().kind == Tok::Or) {
      take();
      parts.push_back(parse_conjunction());
    }
    if (parts.size() == 1) return std::move(parts.front());
    Formula f = Formula::make_or(std::move(parts));
    f.begin = begin;
    f.end = last_end();
    return f;
  }

  Formula parse_conjunction() {
    std::size_t begin = peek().offset;
    std::vector<Formula> parts;
    parts.push_back(parse_unary());
    while (peek().kind == Tok::And) {
      take();
      parts.push_back(parse_unary());
    }
    if (parts.size() == 1) return std::move(parts.front());
    Formula f = Formula::make_and(std::move(parts));
    f.begin = begin;
    f.end = last_end();
    return f;
  }

  Formula parse_unary() {
    DepthGuard guard(*this);
    std::size_t begin = peek().offset;
    if (peek().kind == Tok::Not) {
      take();
      Formula f = Formula::make_not(parse_unary());
      f.begin = begin;
      f.end = last_end();
      return f;
    }
    if (peek().kind == Tok::LParen) {
      take();
      Formula f = parse_disjunction();
      expect(Tok::RParen, "')'");
      f.begin = begin;
      f.end = last_end();
      return f;
    }
    Formula f = Formula::make_atom(parse_atom());
    f.begin = begin;
    f.end = last_end();
    return f;
  }

  Atom parse_atom() {
    if (peek().kind != Tok::Ident) expected("predicate");
    Token name = take();
    const PredicateDecl* decl = spec_.find_predicate(name.text);
    if (!decl) fail(SpecErrorKind::Undeclared, name.offset, "undeclared predicate '" + name.text + "'");
    Atom atom{name.text, {}};
    if (peek().kind == Tok::LParen) {
      take();
      if (peek().kind != Tok::RParen) {
        atom.args.push_back(parse_term());
        while (peek().kind == Tok::Comma) {
          take();
          atom.args.push_back(parse_term());
        }
      }
      expect(Tok::RParen, "')' or ','");
    }
    if (atom.args.size() != decl->arity()) {
      fail(SpecErrorKind::Arity, name.offset,
           "predicate '" + name.text + "' expects " + std::to_string(decl->arity()) + " argument(s), got " +
               std::to_string(atom.args.size()));
    }
    return atom;
  }

  Term parse_term() {
    DepthGuard guard(*this);
    Term lhs = parse_product();
    while (peek().kind == Tok::Plus || peek().kind == Tok::Minus) {
      std::string op = take().text;
      Term rhs = parse_product();
      lhs = Term::apply(op, {std::move(lhs), std::move(rhs)});
    }
    return lhs;
  }

  Term parse_product() {
    Term lhs = parse_negation();
    while (peek().kind == Tok::Star || peek().kind == Tok::Slash) {
      std::string op = take().text;
      Term rhs = parse_negation();
      lhs = Term::apply(op, {std::move(lhs), std::move(rhs)});
    }
    return lhs;
  }

  Term parse_negation() {
    DepthGuard guard(*this);
    if (peek().kind == Tok::Minus) {
      take();
      Term operand = parse_negation();
      if (const auto* c = std::get_if<Constant>(&operand.node); c && c->is_number()) {
        return Term::constant(Constant(-c->number()));
      }
      return Term::apply("-", {std::move(operand)});
    }
    return parse_primary();
  }

  Term parse_primary() {
    const Token& t = peek();
    switch (t.kind) {
      case Tok::Number: {
        Token tok = take();
        auto n = Number::parse(tok.text);
        if (!n) fail(SpecErrorKind::Syntax, tok.offset, "numeric literal '" + tok.text + "' out of range");
        return Term::constant(Constant(std::move(*n)));
      }
      case Tok::String: {
        Token tok = take();
        return Term::constant(Constant(tok.text.substr(1, tok.text.size() - 2)));
      }
      case Tok::LParen: {
        take();
        Term inner = parse_term();
        expect(Tok::RParen, "')'");
        return inner;
      }
      case Tok::Ident: {
        Token name = take();
        if (peek().kind == Tok::LParen) {
          take();
          std::vector<Term> args;
          if (peek().kind != Tok::RParen) {
            args.push_back(parse_term());
            while (peek().kind == Tok::Comma) {
              take();
              args.push_back(parse_term());
            }
          }
          expect(Tok::RParen, "')' or ','");
          if (!registry_.find(name.text)) {
            fail(SpecErrorKind::Undeclared, name.offset, "unknown function '" + name.text + "'");
          }
          if (!registry_.accepts_arity(name.text, args.size())) {
            fail(SpecErrorKind::Arity, name.offset,
                 "function '" + name.text + "' does not take " + std::to_string(args.size()) + " argument(s)");
          }
          return Term::apply(name.text, std::move(args));
        }
        if (!spec_.has_variable(name.text)) {
          fail(SpecErrorKind::Undeclared, name.offset, "undeclared variable '" + name.text + "'");
        }
        return Term::var(name.text);
      }
      default: expected("term");
    }
  }

  std::string_view text_;
  const EslSpec& spec_;
  const FunctionRegistry& registry_;
  std::string section_;
  std::vector<Token> tokens_;
  std::size_t pos_ = 0;
  std::size_t depth_ = 0;
};

SpecError schema_error(const std::string& detail, const std::string& section = "") {
  return SpecError(SpecErrorKind::Schema, SourcePos{section, 1, 1}, detail);
}

const nlohmann::json& string_array(const nlohmann::json& doc, const char* key) {
  const auto& value = doc.at(key);
  if (!value.is_array()) throw schema_error(std::string("\"") + key + "\" must be an array of strings", key);
  for (std::size_t i = 0; i < value.size(); ++i) {
    if (!value[i].is_string()) {
      throw schema_error("element must be a string", std::string(key) + "[" + std::to_string(i) + "]");
    }
  }
  return value;
}

}  // namespace

SpecError::SpecError(SpecErrorKind kind, SourcePos pos, std::string detail)
    : std::runtime_error(format_error(kind, pos, detail)), kind_(kind), pos_(std::move(pos)), detail_(std::move(detail)) {}

Implication parse_implication(std::string_view text, const EslSpec& spec, const ParseOptions& options,
                              const std::string& section) {
  return RuleParser(text, spec, *options.registry, section).parse_implication();
}

EslRule parse_rule(std::string_view text, const EslSpec& spec, const ParseOptions& options,
                   const std::string& section) {
  Implication implication = parse_implication(text, spec, options, section);
  if (options.normalize) {
    try {
      return normalize_to_denf(implication, options.clause_bound);
    } catch (const SpecError& e) {
      throw SpecError(e.kind(), SourcePos{section, 1, 1}, e.detail());
    }
  }
  return to_denf_strict(implication, text, section);
}

PredicateDecl parse_predicate_decl(std::string_view text, const std::string& section) {
  std::size_t split = text.find(":=");
  if (split == std::string_view::npos) {
    throw SpecError(SpecErrorKind::Syntax, position_in(text, text.size(), section),
                    "expected ':=' separating the predicate head from its description");
  }
  std::string_view head = text.substr(0, split);
  std::vector<Token> tokens = Lexer(head, section).run();
  std::size_t k = 0;
  auto fail = [&](const std::string& detail) -> void {
    throw SpecError(SpecErrorKind::Syntax, position_in(text, tokens[k].offset, section),
                    detail + " but found " + describe(tokens[k]));
  };
  PredicateDecl decl;
  if (tokens[k].kind != Tok::Ident) fail("expected predicate name");
  decl.name = tokens[k++].text;
  if (tokens[k].kind == Tok::LParen) {
    ++k;
    if (tokens[k].kind != Tok::RParen) {
      while (true) {
        if (tokens[k].kind != Tok::Ident) fail("expected parameter name");
        const std::string& param = tokens[k].text;
        if (std::find(decl.params.begin(), decl.params.end(), param) != decl.params.end()) {
          throw SpecError(SpecErrorKind::Duplicate, position_in(text, tokens[k].offset, section),
                          "parameter '" + param + "' repeated");
        }
        decl.params.push_back(param);
        ++k;
        if (tokens[k].kind == Tok::Comma) {
          ++k;
          continue;
        }
        break;
      }
    }
    if (tokens[k].kind != Tok::RParen) fail("expected ')' or ','");
    ++k;
  }
  if (tokens[k].kind != Tok::End) fail("expected ':='");
  decl.description = std::string(trim(text.substr(split + 2)));
  if (decl.description.empty()) {
    throw SpecError(SpecErrorKind::Schema, position_in(text, text.size(), section),
                    "predicate '" + decl.name + "' needs a natural-language description");
  }
  return decl;
}

EslSpec parse_spec(std::string_view source, const ParseOptions& options) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(source.begin(), source.end());
  } catch (const nlohmann::json::exception& e) {
    std::size_t offset = 0;
    if (const auto* pe = dynamic_cast<const nlohmann::json::parse_error*>(&e); pe && pe->byte > 0) {
      offset = pe->byte - 1;
    }
    std::string detail = e.what();
    if (auto close = detail.find("] "); detail.rfind("[json.exception", 0) == 0 && close != std::string::npos) {
      detail = detail.substr(close + 2);
    }
    throw SpecError(SpecErrorKind::Syntax, position_in(source, offset, ""), detail);
  }
  if (!doc.is_object()) throw schema_error("specification must be a JSON object");

  static const std::set<std::string> kKeys = {"Variables", "Predicates", "Rules"};
  std::string missing;
  for (const char* key : {"Variables", "Predicates", "Rules"}) {
    if (!doc.contains(key)) missing += std::string(missing.empty() ? "" : ", ") + "\"" + key + "\"";
  }
  if (!missing.empty()) throw schema_error("missing key(s) " + missing);
  for (const auto& item : doc.items()) {
    if (!kKeys.count(item.key())) throw schema_error("unknown key \"" + item.key() + "\"");
  }

  EslSpec spec;
  const auto& variables = string_array(doc, "Variables");
  for (std::size_t i = 0; i < variables.size(); ++i) {
    std::string name = variables[i].get<std::string>();
    if (!is_identifier(name) || is_keyword(name)) {
      throw schema_error("\"" + name + "\" is not a valid variable name", "Variables[" + std::to_string(i) + "]");
    }
    spec.variables.push_back(std::move(name));
  }
  std::sort(spec.variables.begin(), spec.variables.end());
  spec.variables.erase(std::unique(spec.variables.begin(), spec.variables.end()), spec.variables.end());

  const auto& predicates = string_array(doc, "Predicates");
  for (std::size_t i = 0; i < predicates.size(); ++i) {
    std::string section = "Predicates[" + std::to_string(i) + "]";
    PredicateDecl decl = parse_predicate_decl(predicates[i].get<std::string>(), section);
    if (spec.find_predicate(decl.name)) {
      throw SpecError(SpecErrorKind::Duplicate, SourcePos{section, 1, 1},
                      "predicate '" + decl.name + "' declared twice");
    }
    spec.predicates.push_back(std::move(decl));
  }

  const auto& rules = string_array(doc, "Rules");
  for (std::size_t i = 0; i < rules.size(); ++i) {
    spec.rules.push_back(parse_rule(rules[i].get<std::string>(), spec, options, "Rules[" + std::to_string(i) + "]"));
  }
  return spec;
}

std::string print_spec(const EslSpec& spec) {
  nlohmann::ordered_json doc;
  doc["Variables"] = spec.variables;
  auto& predicates = doc["Predicates"] = nlohmann::ordered_json::array();
  for (const auto& decl : spec.predicates) predicates.push_back(to_string(decl));
  auto& rules = doc["Rules"] = nlohmann::ordered_json::array();
  for (const auto& rule : spec.rules) rules.push_back(to_string(rule));
  return doc.dump(2) + "\n";
}

}  // namespace eslrv::esl
