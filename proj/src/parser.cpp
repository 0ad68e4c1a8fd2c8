// Recursive-descent parser for the ATL and SX concrete syntax.
//
// Precedence (tightest first): prefix operators, &, |, ->, <->.
// & and | associate to the left, -> to the right.

#include <cctype>
#include <type_traits>

#include "atlstit/formula.hpp"

namespace atlstit {
namespace {

enum class Tok {
  Ident,
  LParen,
  RParen,
  Not,
  And,
  Or,
  Implies,
  Iff,
  CoalOpen,   // <<
  CoalClose,  // >>
  StratMark,  // ^s
  Comma,
  KwX,
  KwG,
  KwU,
  KwTrue,
  KwFalse,
  Box,      // []
  Diamond,  // <>
  LBracket,
  RBracket,
  End,
};

struct Token {
  Tok kind;
  std::size_t offset;
  std::string text;
};

std::string describe(const Token& t) {
  switch (t.kind) {
    case Tok::End: return "end of input";
    case Tok::Ident: return "identifier '" + t.text + "'";
    default: return "'" + t.text + "'";
  }
}

std::vector<Token> lex(std::string_view src) {
  std::vector<Token> out;
  std::size_t i = 0;
  auto at = [&](std::size_t k) -> char { return k < src.size() ? src[k] : '\0'; };
  while (i < src.size()) {
    const char c = src[i];
    if (std::isspace(static_cast<unsigned char>(c))) {
      ++i;
      continue;
    }
    const std::size_t start = i;
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      while (i < src.size() &&
             (std::isalnum(static_cast<unsigned char>(src[i])) || src[i] == '_'))
        ++i;
      std::string word(src.substr(start, i - start));
      Tok k = Tok::Ident;
      if (word == "X") k = Tok::KwX;
      else if (word == "G") k = Tok::KwG;
      else if (word == "U") k = Tok::KwU;
      else if (word == "true") k = Tok::KwTrue;
      else if (word == "false") k = Tok::KwFalse;
      out.push_back({k, start, std::move(word)});
      continue;
    }
    auto emit = [&](Tok k, std::size_t len) {
      out.push_back({k, start, std::string(src.substr(start, len))});
      i += len;
    };
    switch (c) {
      case '(': emit(Tok::LParen, 1); continue;
      case ')': emit(Tok::RParen, 1); continue;
      case '!': emit(Tok::Not, 1); continue;
      case '&': emit(Tok::And, 1); continue;
      case '|': emit(Tok::Or, 1); continue;
      case ',': emit(Tok::Comma, 1); continue;
      case ']': emit(Tok::RBracket, 1); continue;
      case '[':
        if (at(i + 1) == ']') emit(Tok::Box, 2);
        else emit(Tok::LBracket, 1);
        continue;
      case '-':
        if (at(i + 1) == '>') {
          emit(Tok::Implies, 2);
          continue;
        }
        break;
      case '<':
        if (at(i + 1) == '<') {
          emit(Tok::CoalOpen, 2);
          continue;
        }
        if (at(i + 1) == '-' && at(i + 2) == '>') {
          emit(Tok::Iff, 3);
          continue;
        }
        if (at(i + 1) == '>') {
          emit(Tok::Diamond, 2);
          continue;
        }
        break;
      case '>':
        if (at(i + 1) == '>') {
          emit(Tok::CoalClose, 2);
          continue;
        }
        throw ParseError(start, "unbalanced coalition brackets: lone '>'");
      case '^':
        if (at(i + 1) == 's') {
          emit(Tok::StratMark, 2);
          continue;
        }
        break;
      default:
        break;
    }
    throw ParseError(start, std::string("unknown operator '") + c + "'");
  }
  out.push_back({Tok::End, src.size(), ""});
  return out;
}

template <class F>
class Parser {
 public:
  static constexpr bool kSx = std::is_same_v<F, SxFormula>;

  explicit Parser(std::string_view src) : toks_(lex(src)) {}

  F parse() {
    F f = parse_iff();
    if (peek().kind != Tok::End) fail("unexpected " + describe(peek()));
    return f;
  }

 private:
  const Token& peek() const { return toks_[pos_]; }
  const Token& take() { return toks_[pos_++]; }
  bool accept(Tok k) {
    if (peek().kind != k) return false;
    ++pos_;
    return true;
  }
  [[noreturn]] void fail(const std::string& msg) const {
    throw ParseError(peek().offset, "syntax error: " + msg);
  }
  void expect(Tok k, const char* what) {
    if (!accept(k)) fail(std::string("expected ") + what + ", found " + describe(peek()));
  }

  F parse_iff() {
    F lhs = parse_implies();
    while (accept(Tok::Iff)) lhs = make_iff(lhs, parse_implies());
    return lhs;
  }

  F parse_implies() {
    F lhs = parse_or();
    if (accept(Tok::Implies)) return make_implies(lhs, parse_implies());
    return lhs;
  }

  F parse_or() {
    F lhs = parse_and();
    while (accept(Tok::Or)) lhs = make_or(lhs, parse_and());
    return lhs;
  }

  F parse_and() {
    F lhs = parse_unary();
    while (accept(Tok::And)) lhs = F::conjunction(lhs, parse_unary());
    return lhs;
  }

  Coalition parse_agent_list(Tok close) {
    Coalition c;
    const std::size_t open_at = toks_[pos_ - 1].offset;
    if (accept(close)) return c;
    while (true) {
      if (peek().kind != Tok::Ident) {
        if (peek().kind == Tok::End)
          throw ParseError(open_at, "unbalanced coalition brackets");
        throw ParseError(peek().offset,
                         "unbalanced coalition brackets: unexpected " + describe(peek()));
      }
      c.insert(take().text);
      if (accept(close)) return c;
      if (!accept(Tok::Comma)) {
        if (peek().kind == Tok::End)
          throw ParseError(open_at, "unbalanced coalition brackets");
        throw ParseError(peek().offset,
                         "unbalanced coalition brackets: unexpected " + describe(peek()));
      }
    }
  }

  F parse_unary() {
    const Token& t = peek();
    switch (t.kind) {
      case Tok::Not:
        take();
        return F::negation(parse_unary());
      case Tok::Ident:
        return F::atom(take().text);
      case Tok::KwTrue:
        take();
        return make_top<F>();
      case Tok::KwFalse:
        take();
        return make_bottom<F>();
      case Tok::LParen: {
        take();
        F inner = parse_iff();
        if (peek().kind == Tok::KwU) {
          if constexpr (kSx) {
            take();
            F rhs = parse_iff();
            expect(Tok::RParen, "')'");
            return F::until(inner, rhs);
          } else {
            fail("'U' must follow a coalition, as in <<C>> (phi U psi)");
          }
        }
        expect(Tok::RParen, "')'");
        return inner;
      }
      case Tok::CoalOpen: {
        take();
        Coalition c = parse_agent_list(Tok::CoalClose);
        if constexpr (kSx) {
          expect(Tok::StratMark, "'^s' after coalition");
          return F::strat(std::move(c), parse_unary());
        } else {
          if (accept(Tok::KwX)) return F::coal_next(std::move(c), parse_unary());
          if (accept(Tok::KwG)) return F::coal_globally(std::move(c), parse_unary());
          if (accept(Tok::LParen)) {
            F lhs = parse_iff();
            expect(Tok::KwU, "'U'");
            F rhs = parse_iff();
            expect(Tok::RParen, "')'");
            return F::coal_until(std::move(c), lhs, rhs);
          }
          fail("expected X, G or '(' after coalition, found " + describe(peek()));
        }
      }
      default:
        break;
    }
    if constexpr (kSx) {
      switch (t.kind) {
        case Tok::Box:
          take();
          return F::box(parse_unary());
        case Tok::Diamond:
          take();
          return F::negation(F::box(F::negation(parse_unary())));
        case Tok::LBracket: {
          take();
          Coalition c = parse_agent_list(Tok::RBracket);
          return F::stit(std::move(c), parse_unary());
        }
        case Tok::KwX:
          take();
          return F::next(parse_unary());
        case Tok::KwG:
          take();
          return F::globally(parse_unary());
        default:
          break;
      }
    }
    if (t.kind == Tok::StratMark) fail("'^s' is not part of the ATL syntax");
    fail("unexpected " + describe(t));
  }

  std::vector<Token> toks_;
  std::size_t pos_ = 0;
};

}  // namespace

AtlFormula parse_atl(std::string_view text) { return Parser<AtlFormula>(text).parse(); }

SxFormula parse_sx(std::string_view text) { return Parser<SxFormula>(text).parse(); }

}  // namespace atlstit
