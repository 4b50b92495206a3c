#include "hyperlim/expr.hpp"

#include <cctype>
#include <charconv>
#include <cmath>
#include <numbers>
#include <utility>
#include <vector>

#include "hyperlim/detail/format.hpp"

namespace hyperlim {

namespace {

enum class TokKind { number, ident, plus, minus, star, slash, caret, lparen, rparen, comma, bar, end };

struct Token {
  TokKind kind = TokKind::end;
  double value = 0.0;
  std::string text;
  SourceSpan span{};
};

Error parse_err(const std::string& message, SourceSpan span) {
  return Error(ErrorCode::parse_error, message).with_span(span);
}

std::vector<Token> lex(const std::string& src) {
  std::vector<Token> out;
  std::size_t i = 0;
  auto single = [&](TokKind k) {
    out.push_back({k, 0.0, src.substr(i, 1), {i, i + 1}});
    ++i;
  };
  while (i < src.size()) {
    char c = src[i];
    if (std::isspace(static_cast<unsigned char>(c))) {
      ++i;
      continue;
    }
    switch (c) {
      case '+': single(TokKind::plus); continue;
      case '-': single(TokKind::minus); continue;
      case '*': single(TokKind::star); continue;
      case '/': single(TokKind::slash); continue;
      case '^': single(TokKind::caret); continue;
      case '(': single(TokKind::lparen); continue;
      case ')': single(TokKind::rparen); continue;
      case ',': single(TokKind::comma); continue;
      case '|': single(TokKind::bar); continue;
      default: break;
    }
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') {
      std::size_t j = i;
      while (j < src.size() && std::isdigit(static_cast<unsigned char>(src[j]))) ++j;
      if (j < src.size() && src[j] == '.') {
        ++j;
        while (j < src.size() && std::isdigit(static_cast<unsigned char>(src[j]))) ++j;
      }
      if (j > i && j < src.size() && (src[j] == 'e' || src[j] == 'E')) {
        std::size_t k = j + 1;
        if (k < src.size() && (src[k] == '+' || src[k] == '-')) ++k;
        if (k < src.size() && std::isdigit(static_cast<unsigned char>(src[k]))) {
          ++k;
          while (k < src.size() && std::isdigit(static_cast<unsigned char>(src[k]))) ++k;
          j = k;
        }
      }
      double v = 0.0;
      auto [ptr, ec] = std::from_chars(src.data() + i, src.data() + j, v);
      if (ec != std::errc() || ptr != src.data() + j) {
        throw parse_err("malformed number", {i, j});
      }
      out.push_back({TokKind::number, v, src.substr(i, j - i), {i, j}});
      i = j;
      continue;
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      std::size_t j = i;
      while (j < src.size() &&
             (std::isalnum(static_cast<unsigned char>(src[j])) || src[j] == '_')) {
        ++j;
      }
      out.push_back({TokKind::ident, 0.0, src.substr(i, j - i), {i, j}});
      i = j;
      continue;
    }
    throw parse_err(std::string("unexpected character '") + c + "'", {i, i + 1});
  }
  out.push_back({TokKind::end, 0.0, "", {src.size(), src.size()}});
  return out;
}

std::shared_ptr<Expr> node(NodeKind kind, SourceSpan span) {
  auto e = std::make_shared<Expr>();
  e->kind = kind;
  e->span = span;
  return e;
}

class Parser {
 public:
  Parser(const std::string& src, const std::string& variable)
      : variable_(variable), tokens_(lex(src)) {}

  ExprPtr run() {
    ExprPtr e = expression(0);
    if (peek().kind != TokKind::end) {
      throw parse_err("unexpected trailing input", peek().span);
    }
    return e;
  }

 private:
  const Token& peek() const { return tokens_[pos_]; }
  Token take() { return tokens_[pos_++]; }

  Token expect(TokKind kind, const char* what) {
    if (peek().kind != kind) {
      throw parse_err(std::string("expected ") + what, peek().span);
    }
    return take();
  }

  // Binding powers: add/sub 1, mul/div 2, unary minus 3, pow 4.
  ExprPtr expression(int min_bp) {
    ExprPtr lhs = prefix();
    for (;;) {
      NodeKind op;
      int bp;
      switch (peek().kind) {
        case TokKind::plus: op = NodeKind::add; bp = 1; break;
        case TokKind::minus: op = NodeKind::sub; bp = 1; break;
        case TokKind::star: op = NodeKind::mul; bp = 2; break;
        case TokKind::slash: op = NodeKind::div; bp = 2; break;
        case TokKind::caret: op = NodeKind::pow; bp = 4; break;
        default: return lhs;
      }
      if (bp < min_bp) return lhs;
      Token tok = take();
      ExprPtr rhs = expression(op == NodeKind::pow ? bp : bp + 1);
      if (op == NodeKind::pow && depends_on_variable(lhs) && depends_on_variable(rhs)) {
        throw parse_err("power needs a constant base or a constant exponent", tok.span);
      }
      auto e = node(op, {lhs->span.begin, rhs->span.end});
      e->a = lhs;
      e->b = rhs;
      lhs = e;
    }
  }

  ExprPtr prefix() {
    Token tok = take();
    switch (tok.kind) {
      case TokKind::minus: {
        ExprPtr child = expression(4);
        auto e = node(NodeKind::unary_minus, {tok.span.begin, child->span.end});
        e->a = child;
        return e;
      }
      case TokKind::number: {
        auto e = node(NodeKind::number, tok.span);
        e->number = tok.value;
        return e;
      }
      case TokKind::lparen: {
        ExprPtr inner = expression(0);
        Token close = expect(TokKind::rparen, "')'");
        auto e = std::make_shared<Expr>(*inner);
        e->span = {tok.span.begin, close.span.end};
        return e;
      }
      case TokKind::bar: {
        ExprPtr inner = expression(0);
        Token close = expect(TokKind::bar, "closing '|'");
        auto e = node(NodeKind::call, {tok.span.begin, close.span.end});
        e->fn = Elementary::abs_fn;
        e->a = inner;
        return e;
      }
      case TokKind::ident: return identifier(tok);
      default: throw parse_err("expected an expression", tok.span);
    }
  }

  ExprPtr identifier(const Token& tok) {
    if (tok.text == variable_) return node(NodeKind::variable, tok.span);
    if (tok.text == "pi" || tok.text == "e") {
      auto e = node(NodeKind::number, tok.span);
      e->number = tok.text == "pi" ? std::numbers::pi : std::numbers::e;
      return e;
    }
    if (tok.text == "root") {
      expect(TokKind::lparen, "'(' after root");
      Token deg = expect(TokKind::number, "the root degree");
      if (deg.value < 1.0 || deg.value != std::floor(deg.value) || deg.value > 64.0) {
        throw parse_err("root degree must be a positive integer literal", deg.span);
      }
      expect(TokKind::comma, "',' between root degree and argument");
      ExprPtr arg = expression(0);
      Token close = expect(TokKind::rparen, "')'");
      auto e = node(NodeKind::root, {tok.span.begin, close.span.end});
      e->degree = static_cast<long>(deg.value);
      e->a = arg;
      return e;
    }
    if (auto fn = elementary_by_name(tok.text)) {
      expect(TokKind::lparen, "'(' after function name");
      ExprPtr arg = expression(0);
      Token close = expect(TokKind::rparen, "')'");
      auto e = node(NodeKind::call, {tok.span.begin, close.span.end});
      e->fn = *fn;
      e->a = arg;
      return e;
    }
    throw parse_err("unknown identifier '" + tok.text + "'", tok.span);
  }

  std::string variable_;
  std::vector<Token> tokens_;
  std::size_t pos_ = 0;
};

int precedence(const Expr& e) {
  switch (e.kind) {
    case NodeKind::add:
    case NodeKind::sub: return 1;
    case NodeKind::mul:
    case NodeKind::div: return 2;
    case NodeKind::unary_minus: return 3;
    case NodeKind::pow: return 4;
    case NodeKind::number: return e.number < 0.0 ? 3 : 5;
    default: return 5;
  }
}

std::string render(const ExprPtr& e, const std::string& variable);

std::string wrap(const ExprPtr& e, int need, const std::string& variable) {
  std::string s = render(e, variable);
  if (precedence(*e) < need) return "(" + s + ")";
  return s;
}

std::string render(const ExprPtr& e, const std::string& variable) {
  switch (e->kind) {
    case NodeKind::number: return detail::format_double(e->number);
    case NodeKind::variable: return variable;
    case NodeKind::unary_minus: return "-" + wrap(e->a, 4, variable);
    case NodeKind::add: return wrap(e->a, 1, variable) + "+" + wrap(e->b, 2, variable);
    case NodeKind::sub: return wrap(e->a, 1, variable) + "-" + wrap(e->b, 2, variable);
    case NodeKind::mul: return wrap(e->a, 2, variable) + "*" + wrap(e->b, 3, variable);
    case NodeKind::div: return wrap(e->a, 2, variable) + "/" + wrap(e->b, 3, variable);
    case NodeKind::pow: return wrap(e->a, 5, variable) + "^" + wrap(e->b, 4, variable);
    case NodeKind::call:
      return std::string(name_of(e->fn)) + "(" + render(e->a, variable) + ")";
    case NodeKind::root:
      return "root(" + std::to_string(e->degree) + "," + render(e->a, variable) + ")";
  }
  return "?";
}

bool is_integral(double v) {
  return std::isfinite(v) && v == std::floor(v) && std::abs(v) < 1e6;
}

double checked(double v, ErrorCode code, const char* message) {
  if (std::isnan(v)) throw Error(code, message);
  return v;
}

}  // namespace

ExprPtr parse_expression(const std::string& text, const std::string& variable) {
  return Parser(text, variable).run();
}

std::string to_text(const ExprPtr& e, const std::string& variable) {
  return render(e, variable);
}

bool depends_on_variable(const ExprPtr& e) {
  if (!e) return false;
  if (e->kind == NodeKind::variable) return true;
  return depends_on_variable(e->a) || depends_on_variable(e->b);
}

Hyper eval_hyper(const ExprPtr& e, const Hyper& x) {
  try {
    switch (e->kind) {
      case NodeKind::number: return from_real(e->number, x.window());
      case NodeKind::variable: return x;
      case NodeKind::unary_minus: return neg(eval_hyper(e->a, x));
      case NodeKind::add: return add(eval_hyper(e->a, x), eval_hyper(e->b, x));
      case NodeKind::sub: return sub(eval_hyper(e->a, x), eval_hyper(e->b, x));
      case NodeKind::mul: return mul(eval_hyper(e->a, x), eval_hyper(e->b, x));
      case NodeKind::div: return div(eval_hyper(e->a, x), eval_hyper(e->b, x));
      case NodeKind::pow: {
        if (!depends_on_variable(e->b)) {
          double q = eval_real(e->b, 0.0);
          if (is_integral(q)) return int_pow(eval_hyper(e->a, x), static_cast<long>(q));
          Hyper lnbase = apply(Elementary::ln_fn, eval_hyper(e->a, x));
          return apply(Elementary::exp_fn, mul(from_real(q, x.window()), lnbase));
        }
        double c = eval_real(e->a, 0.0);
        if (!(c > 0.0)) {
          throw Error(ErrorCode::domain_error,
                      "power with a variable exponent needs a positive base");
        }
        return apply(Elementary::exp_fn,
                     mul(eval_hyper(e->b, x), from_real(std::log(c), x.window())));
      }
      case NodeKind::call: return apply(e->fn, eval_hyper(e->a, x));
      case NodeKind::root: return nth_root(eval_hyper(e->a, x), e->degree);
    }
    throw Error(ErrorCode::invalid_input, "malformed expression node");
  } catch (const Error& err) {
    if (!err.span()) throw err.with_span(e->span);
    throw;
  }
}

double eval_real(const ExprPtr& e, double x) {
  switch (e->kind) {
    case NodeKind::number: return e->number;
    case NodeKind::variable: return x;
    case NodeKind::unary_minus: return -eval_real(e->a, x);
    case NodeKind::add:
      return checked(eval_real(e->a, x) + eval_real(e->b, x),
                     ErrorCode::numerical_failure, "inf - inf in evaluation");
    case NodeKind::sub:
      return checked(eval_real(e->a, x) - eval_real(e->b, x),
                     ErrorCode::numerical_failure, "inf - inf in evaluation");
    case NodeKind::mul:
      return checked(eval_real(e->a, x) * eval_real(e->b, x),
                     ErrorCode::numerical_failure, "0 * inf in evaluation");
    case NodeKind::div: {
      double num = eval_real(e->a, x);
      double den = eval_real(e->b, x);
      if (den == 0.0) throw Error(ErrorCode::division_by_zero, "division by zero");
      return checked(num / den, ErrorCode::numerical_failure, "inf/inf in evaluation");
    }
    case NodeKind::pow: {
      double b = eval_real(e->a, x);
      double q = eval_real(e->b, x);
      if (b > 0.0) {
        return checked(std::pow(b, q), ErrorCode::numerical_failure, "pow failed");
      }
      if (b == 0.0) {
        if (q > 0.0) return 0.0;
        if (q == 0.0) throw Error::illegal("0^0");
        throw Error(ErrorCode::division_by_zero, "zero base with negative exponent");
      }
      if (std::isfinite(q) && q == std::floor(q)) {
        return checked(std::pow(b, q), ErrorCode::numerical_failure, "pow failed");
      }
      throw Error(ErrorCode::domain_error, "negative base with non-integer exponent");
    }
    case NodeKind::call: return apply_real(e->fn, eval_real(e->a, x));
    case NodeKind::root: {
      double v = eval_real(e->a, x);
      double n = static_cast<double>(e->degree);
      if (v < 0.0) {
        if (e->degree % 2 == 0) {
          throw Error(ErrorCode::domain_error, "even root of a negative value");
        }
        return -std::pow(-v, 1.0 / n);
      }
      return std::pow(v, 1.0 / n);
    }
  }
  throw Error(ErrorCode::invalid_input, "malformed expression node");
}

ExprPtr make_number(double value) {
  auto e = std::make_shared<Expr>();
  e->kind = NodeKind::number;
  e->number = value;
  return e;
}

ExprPtr make_variable() {
  auto e = std::make_shared<Expr>();
  e->kind = NodeKind::variable;
  return e;
}

ExprPtr make_unary_minus(ExprPtr a) {
  auto e = std::make_shared<Expr>();
  e->kind = NodeKind::unary_minus;
  e->a = std::move(a);
  return e;
}

ExprPtr make_binary(NodeKind op, ExprPtr a, ExprPtr b) {
  auto e = std::make_shared<Expr>();
  e->kind = op;
  e->a = std::move(a);
  e->b = std::move(b);
  return e;
}

ExprPtr make_call(Elementary fn, ExprPtr a) {
  auto e = std::make_shared<Expr>();
  e->kind = NodeKind::call;
  e->fn = fn;
  e->a = std::move(a);
  return e;
}

ExprPtr make_root(long degree, ExprPtr a) {
  auto e = std::make_shared<Expr>();
  e->kind = NodeKind::root;
  e->degree = degree;
  e->a = std::move(a);
  return e;
}

}  // namespace hyperlim
