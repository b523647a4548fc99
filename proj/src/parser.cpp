#include "psi/parser.hpp"

#include <cctype>

namespace psi {

std::vector<Token> lex(const std::string& text) {
  std::vector<Token> out;
  size_t i = 0;
  const size_t n = text.size();
  while (i < n) {
    char c = text[i];
    if (std::isspace(static_cast<unsigned char>(c))) {
      ++i;
      continue;
    }
    if (c == '#') {  // line comment
      while (i < n && text[i] != '\n') ++i;
      continue;
    }
    size_t start = i;
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      while (i < n && (std::isalnum(static_cast<unsigned char>(text[i])) ||
                       text[i] == '_' || text[i] == '\''))
        ++i;
      out.push_back({TokKind::Ident, text.substr(start, i - start), start});
      continue;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      while (i < n && std::isdigit(static_cast<unsigned char>(text[i]))) ++i;
      out.push_back({TokKind::Number, text.substr(start, i - start), start});
      continue;
    }
    auto two = [&](const char* s) {
      return i + 1 < n && text[i] == s[0] && text[i + 1] == s[1];
    };
    if (two("(|")) {
      out.push_back({TokKind::Punct, "(|", start});
      i += 2;
      continue;
    }
    if (two("|)")) {
      out.push_back({TokKind::Punct, "|)", start});
      i += 2;
      continue;
    }
    if (two("[]")) {
      out.push_back({TokKind::Punct, "[]", start});
      i += 2;
      continue;
    }
    if (i + 2 < n && text[i] == '<' && text[i + 1] == '-' && text[i + 2] == '>') {
      out.push_back({TokKind::Punct, "<->", start});
      i += 3;
      continue;
    }
    static const std::string singles = "()|!?.\\,:={}";
    if (singles.find(c) != std::string::npos) {
      out.push_back({TokKind::Punct, std::string(1, c), start});
      ++i;
      continue;
    }
    throw ParseError(start, std::string("unexpected character '") + c + "'");
  }
  out.push_back({TokKind::End, "", n});
  return out;
}

const Token& TermCursor::peek(size_t ahead) const {
  size_t j = i_ + ahead;
  if (j >= toks_->size()) j = toks_->size() - 1;
  return (*toks_)[j];
}

const Token& TermCursor::next() {
  const Token& t = peek();
  if (t.kind != TokKind::End) ++i_;
  return t;
}

bool TermCursor::at(const std::string& punct) const {
  const Token& t = peek();
  return t.kind == TokKind::Punct && t.text == punct;
}

bool TermCursor::at_ident(const std::string& word) const {
  const Token& t = peek();
  return t.kind == TokKind::Ident && t.text == word;
}

bool TermCursor::eat(const std::string& punct) {
  if (!at(punct)) return false;
  ++i_;
  return true;
}

void TermCursor::expect(const std::string& punct) {
  if (!eat(punct)) fail("expected '" + punct + "'");
}

void TermCursor::fail(const std::string& msg) const {
  throw ParseError(peek().pos, msg);
}

// ---------------------------------------------------------------------
// Generic term / condition / assertion grammars.

Term parse_term_generic(TermCursor& cur, Workspace& ws, const Instance& inst) {
  const Token& t = cur.peek();
  if (t.kind != TokKind::Ident) cur.fail("expected a term");
  std::string sym = cur.next().text;
  if (cur.at("(")) {
    cur.next();
    std::vector<Term> args;
    if (!cur.at(")")) {
      args.push_back(inst.parse_term(cur, ws));
      while (cur.eat(",")) args.push_back(inst.parse_term(cur, ws));
    }
    cur.expect(")");
    if (!inst.accepts_symbol(sym, args.size()))
      cur.fail("unknown symbol '" + sym + "/" + std::to_string(args.size()) + "'");
    return Term::app(sym, std::move(args));
  }
  if (inst.accepts_symbol(sym, 0)) return Term::app(sym, {});
  return Term::name(ws.names.intern(sym));
}

Condition parse_condition_generic(TermCursor& cur, Workspace& ws, const Instance& inst) {
  if (cur.at_ident("cons")) {
    cur.next();
    bool paren = cur.eat("(");
    Assertion a = inst.parse_assertion(cur, ws);
    if (paren) cur.expect(")");
    return Condition::consistent(std::move(a));
  }
  Term lhs = inst.parse_term(cur, ws);
  if (cur.eat("=")) return Condition::term_eq(std::move(lhs), inst.parse_term(cur, ws));
  if (cur.eat("<->"))
    return Condition::chan_eq(std::move(lhs), inst.parse_term(cur, ws));
  cur.fail("expected '=' or '<->' in condition");
}

Assertion parse_assertion_generic(TermCursor& cur, Workspace& ws,
                                  const Instance& inst, AssertKind kind) {
  if (cur.peek().kind == TokKind::Number && cur.peek().text == "1") {
    cur.next();
    return inst.unit();
  }
  if (cur.at_ident("bot")) {
    cur.next();
    if (kind != AssertKind::Store)
      cur.fail("'bot' only exists in the constraint instance");
    return Assertion::store_bottom();
  }
  cur.expect("{");
  if (kind == AssertKind::Unit) {
    cur.expect("}");
    return inst.unit();
  }
  if (kind == AssertKind::Names) {
    std::vector<Term> ns;
    if (!cur.at("}")) {
      ns.push_back(inst.parse_term(cur, ws));
      while (cur.eat(",")) ns.push_back(inst.parse_term(cur, ws));
    }
    cur.expect("}");
    return Assertion::names(std::move(ns));
  }
  std::vector<std::pair<Term, Term>> eqs;
  if (!cur.at("}")) {
    do {
      Term l = inst.parse_term(cur, ws);
      cur.expect("=");
      Term r = inst.parse_term(cur, ws);
      eqs.push_back({std::move(l), std::move(r)});
    } while (cur.eat(","));
  }
  cur.expect("}");
  return Assertion::equations(std::move(eqs), kind);
}

// ---------------------------------------------------------------------
// Agent grammar.

namespace {

AgentPtr parse_par(TermCursor& cur, const Instance& inst, Workspace& ws);

NameSeq parse_names(TermCursor& cur, Workspace& ws) {
  NameSeq ns;
  while (true) {
    const Token& t = cur.peek();
    if (t.kind != TokKind::Ident) break;
    ns.push_back(ws.names.intern(cur.next().text));
    if (!cur.eat(",")) break;
  }
  return ns;
}

bool starts_agent(const TermCursor& cur) {
  const Token& t = cur.peek();
  if (t.kind == TokKind::Ident) return true;
  if (t.kind == TokKind::Number) return t.text == "0";
  if (t.kind == TokKind::Punct)
    return t.text == "(" || t.text == "(|" || t.text == "!";
  return false;
}

AgentPtr parse_prefix(TermCursor& cur, const Instance& inst, Workspace& ws) {
  const Token& t = cur.peek();
  if (t.kind == TokKind::Number && t.text == "0") {
    cur.next();
    return nil();
  }
  if (cur.at("!")) {
    cur.next();
    AgentPtr body = parse_prefix(cur, inst, ws);
    if (has_unguarded_assertion(body))
      throw IllFormed("unguarded assertion under replication");
    return replication(body);
  }
  if (cur.at("(|")) {
    cur.next();
    Assertion a = inst.parse_assertion(cur, ws);
    cur.expect("|)");
    return assertion_agent(std::move(a));
  }
  if (cur.at("(")) {
    cur.next();
    if (cur.at_ident("new")) {
      cur.next();
      NameSeq ns = parse_names(cur, ws);
      if (ns.empty()) cur.fail("expected names after 'new'");
      cur.expect(")");
      AgentPtr body = parse_prefix(cur, inst, ws);
      for (auto it = ns.rbegin(); it != ns.rend(); ++it)
        body = restriction(*it, body);
      return body;
    }
    AgentPtr p = parse_par(cur, inst, ws);
    cur.expect(")");
    return p;
  }
  if (cur.at_ident("case")) {
    cur.next();
    std::vector<CaseBranch> branches;
    if (!cur.done() && !cur.at(")") && !cur.at("|")) {
      while (true) {
        Condition c = inst.parse_condition(cur, ws);
        cur.expect(":");
        AgentPtr body = parse_prefix(cur, inst, ws);
        if (has_unguarded_assertion(body))
          throw IllFormed("unguarded assertion in case branch");
        branches.push_back({std::move(c), std::move(body)});
        if (!cur.eat("[]")) break;
      }
    }
    return case_agent(std::move(branches));
  }
  if (t.kind == TokKind::Ident) {
    Term subj = inst.parse_term(cur, ws);
    if (cur.eat("!")) {
      Term obj = inst.parse_term(cur, ws);
      cur.expect(".");
      return output(std::move(subj), std::move(obj), parse_prefix(cur, inst, ws));
    }
    if (cur.eat("?")) {
      cur.expect("(");
      cur.expect("\\");
      NameSeq vars = parse_names(cur, ws);
      cur.expect(")");
      Term obj = inst.parse_term(cur, ws);
      cur.expect(".");
      AgentPtr body = parse_prefix(cur, inst, ws);
      return input(std::move(subj), std::move(vars), std::move(obj), std::move(body));
    }
    cur.fail("expected '!' or '?' after term");
  }
  cur.fail("expected an agent");
}

AgentPtr parse_par(TermCursor& cur, const Instance& inst, Workspace& ws) {
  AgentPtr p = parse_prefix(cur, inst, ws);
  while (cur.at("|")) {
    cur.next();
    p = parallel(p, parse_prefix(cur, inst, ws));
  }
  return p;
}

}  // namespace

AgentPtr parse_agent(const std::string& text, const Instance& inst, Workspace& ws) {
  std::vector<Token> toks = lex(text);
  TermCursor cur(toks);
  AgentPtr p = parse_par(cur, inst, ws);
  if (!cur.done()) cur.fail("trailing input after agent");
  return p;
}

Term parse_term_text(const std::string& text, const Instance& inst, Workspace& ws) {
  std::vector<Token> toks = lex(text);
  TermCursor cur(toks);
  Term t = inst.parse_term(cur, ws);
  if (!cur.done()) cur.fail("trailing input after term");
  return t;
}

Condition parse_condition_text(const std::string& text, const Instance& inst,
                               Workspace& ws) {
  std::vector<Token> toks = lex(text);
  TermCursor cur(toks);
  Condition c = inst.parse_condition(cur, ws);
  if (!cur.done()) cur.fail("trailing input after condition");
  return c;
}

Assertion parse_assertion_text(const std::string& text, const Instance& inst,
                               Workspace& ws) {
  std::vector<Token> toks = lex(text);
  TermCursor cur(toks);
  Assertion a = inst.parse_assertion(cur, ws);
  if (!cur.done()) cur.fail("trailing input after assertion");
  return a;
}

}  // namespace psi
