#pragma once

#include <string>
#include <vector>

#include "psi/agent.hpp"

namespace psi {

// Tokens shared by the agent grammar and the instance sub-parsers.
// Punctuation of interest: ( ) (| |) [] | ! ? . \ , : = <-> { }
enum class TokKind { Ident, Number, Punct, End };

struct Token {
  TokKind kind;
  std::string text;
  size_t pos;
};

std::vector<Token> lex(const std::string& text);

class TermCursor {
 public:
  TermCursor(const std::vector<Token>& toks, size_t i = 0) : toks_(&toks), i_(i) {}

  const Token& peek(size_t ahead = 0) const;
  const Token& next();
  bool at(const std::string& punct) const;
  bool at_ident(const std::string& word) const;
  bool eat(const std::string& punct);
  void expect(const std::string& punct);
  bool done() const { return peek().kind == TokKind::End; }
  size_t position() const { return i_; }
  void rewind(size_t i) { i_ = i; }
  [[noreturn]] void fail(const std::string& msg) const;

 private:
  const std::vector<Token>* toks_;
  size_t i_;
};

// Agent concrete syntax:
//   agent  := "0" | term "!" term "." agent
//           | term "?" "(" "\" names ")" term "." agent
//           | "case" branch ("[]" branch)* | "(new" names ")" agent
//           | agent "|" agent | "!" agent | "(|" assertion "|)" | "(" agent ")"
//   branch := condition ":" agent
// Terms, conditions and assertions are delegated to the instance.
AgentPtr parse_agent(const std::string& text, const Instance& inst, Workspace& ws);
Term parse_term_text(const std::string& text, const Instance& inst, Workspace& ws);
Condition parse_condition_text(const std::string& text, const Instance& inst,
                               Workspace& ws);
Assertion parse_assertion_text(const std::string& text, const Instance& inst,
                               Workspace& ws);

// Generic helpers used by instance sub-parsers.
Term parse_term_generic(TermCursor& cur, Workspace& ws, const Instance& inst);
Condition parse_condition_generic(TermCursor& cur, Workspace& ws, const Instance& inst);
Assertion parse_assertion_generic(TermCursor& cur, Workspace& ws, const Instance& inst,
                                  AssertKind kind);

// Pretty printing. `canonical` renumbers binders first so alpha-variants
// print identically.
std::string print_agent(const AgentPtr& p, const Instance& inst,
                        const NameTable& names, bool canonical = false);

}  // namespace psi
