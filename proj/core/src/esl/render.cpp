#include "eslrv/esl/render.hpp"

#include <cctype>
#include <stdexcept>

#include "eslrv/esl/parser.hpp"

namespace eslrv::esl {

namespace {

bool word_char(char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_'; }

/// Calls `on_word` for each maximal identifier-like run and `on_other` for
/// the text between runs.
template <typename Word, typename Other>
void scan_words(const std::string& text, Word on_word, Other on_other) {
  std::size_t i = 0;
  while (i < text.size()) {
    std::size_t start = i;
    if (word_char(text[i])) {
      while (i < text.size() && word_char(text[i])) ++i;
      on_word(text.substr(start, i - start));
    } else {
      while (i < text.size() && !word_char(text[i])) ++i;
      on_other(text.substr(start, i - start));
    }
  }
}

std::string plain(const Constant& c) { return c.is_number() ? c.number().to_string() : c.text(); }

}  // namespace

std::string render_description(const PredicateDecl& decl, const std::vector<Constant>& args) {
  if (args.size() != decl.params.size()) {
    throw std::invalid_argument("predicate '" + decl.name + "' expects " + std::to_string(decl.params.size()) +
                                " argument(s)");
  }
  std::string out;
  scan_words(
      decl.description,
      [&](const std::string& word) {
        for (std::size_t i = 0; i < decl.params.size(); ++i) {
          if (decl.params[i] == word) {
            out += plain(args[i]);
            return;
          }
        }
        out += word;
      },
      [&](const std::string& other) { out += other; });
  return out;
}

std::string render_atom_text(const Atom& atom, const PredicateDecl& decl, const FunctionRegistry& registry) {
  if (atom.predicate != decl.name) {
    throw std::invalid_argument("declaration '" + decl.name + "' does not match atom '" + atom.predicate + "'");
  }
  std::vector<Constant> args;
  args.reserve(atom.args.size());
  for (const auto& arg : atom.args) args.push_back(eval_term(arg, registry));
  return render_description(decl, args);
}

std::vector<std::string> lint_spec(const EslSpec& spec) {
  std::vector<std::string> warnings;
  for (const auto& decl : spec.predicates) {
    for (const auto& param : decl.params) {
      bool found = false;
      scan_words(
          decl.description, [&](const std::string& word) { found = found || word == param; },
          [](const std::string&) {});
      if (!found) {
        warnings.push_back("parameter '" + param + "' of predicate '" + decl.name +
                           "' does not occur in its description");
      }
    }
  }
  return warnings;
}

}  // namespace eslrv::esl
