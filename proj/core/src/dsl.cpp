#include "residuum/dsl.hpp"

#include "residuum/errors.hpp"

#include <algorithm>
#include <cctype>
#include <map>
#include <set>

namespace residuum {

bool operator==(const Expr& a, const Expr& b) {
  return a.kind == b.kind && a.number == b.number && a.name == b.name && a.args == b.args;
}

namespace {

const std::set<std::string, std::less<>> kKeywords{"vars", "cone", "param", "num", "den", "i", "pi", "exp", "log"};

struct Token {
  enum class Kind { Identifier, Number, Punct, End };
  Kind kind = Kind::End;
  std::string text;
  Rational value;
  SourceLocation where;
};

std::string describe(const Token& t) {
  switch (t.kind) {
    case Token::Kind::End: return "end of input";
    case Token::Kind::Number: return "number " + t.text;
    default: return "'" + t.text + "'";
  }
}

std::vector<Token> lex(std::string_view src) {
  std::vector<Token> out;
  std::size_t line = 1, col = 1, pos = 0;
  auto advance = [&](std::size_t n) {
    for (std::size_t k = 0; k < n; ++k, ++pos) {
      if (src[pos] == '\n') {
        ++line;
        col = 1;
      } else if ((static_cast<unsigned char>(src[pos]) & 0xC0) != 0x80) {
        ++col;
      }
    }
  };
  while (pos < src.size()) {
    const char c = src[pos];
    if (std::isspace(static_cast<unsigned char>(c))) {
      advance(1);
      continue;
    }
    if (c == '#') {
      while (pos < src.size() && src[pos] != '\n') advance(1);
      continue;
    }
    Token t;
    t.where = {line, col};
    std::size_t end = pos;
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      while (end < src.size() && (std::isalnum(static_cast<unsigned char>(src[end])) || src[end] == '_')) ++end;
      t.kind = Token::Kind::Identifier;
    } else if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') {
      Integer digits = 0;
      Integer scale = 1;
      bool point = false, any = false;
      while (end < src.size() && (std::isdigit(static_cast<unsigned char>(src[end])) || (src[end] == '.' && !point))) {
        if (src[end] == '.') {
          point = true;
        } else {
          any = true;
          digits = digits * 10 + (src[end] - '0');
          if (point) scale *= 10;
        }
        ++end;
      }
      if (!any) throw ParseError(ErrorKind::Syntax, "malformed number", line, col, {"digit"});
      t.kind = Token::Kind::Number;
      t.value = Rational(digits, scale);
    } else if (std::string_view("();,=+-*/^").find(c) != std::string_view::npos) {
      end = pos + 1;
      t.kind = Token::Kind::Punct;
    } else {
      throw ParseError(ErrorKind::Syntax, std::string("unexpected character '") + c + "'", line, col);
    }
    t.text = std::string(src.substr(pos, end - pos));
    advance(end - pos);
    out.push_back(std::move(t));
  }
  Token e;
  e.where = {line, col};
  out.push_back(e);
  return out;
}

class Parser {
 public:
  explicit Parser(std::vector<Token> tokens) : toks_(std::move(tokens)) {}

  ProblemSpec problem() {
    ProblemSpec spec;
    bool have_vars = false, have_cone = false;
    while (peek().kind != Token::Kind::End) {
      const Token& t = peek();
      if (is_word("vars")) {
        if (have_vars) fail_at(t, "duplicate vars statement", {});
        have_vars = true;
        next();
        do spec.variables.push_back(identifier().text);
        while (peek().kind == Token::Kind::Identifier);
      } else if (is_word("cone")) {
        if (have_cone) fail_at(t, "duplicate cone statement", {});
        have_cone = true;
        next();
        do spec.cone.push_back(vector());
        while (is_punct("("));
      } else if (is_word("param")) {
        next();
        do {
          const Token name = identifier();
          expect("=");
          spec.parameters.emplace_back(name.text, expr());
          if (is_punct(",")) next();
        } while (peek().kind == Token::Kind::Identifier);
      } else if (is_word("num")) {
        if (spec.numerator) fail_at(t, "duplicate num statement", {});
        next();
        spec.numerator = expr();
      } else if (is_word("den")) {
        next();
        do {
          DenominatorSpec d;
          expect("(");
          d.factor = expr();
          expect(")");
          if (is_punct("^")) {
            next();
            const Token& n = peek();
            if (n.kind != Token::Kind::Number || denominator(n.value) != 1 || n.value < 1)
              fail_at(n, "factor power must be a positive integer", {"positive integer"});
            d.power = numerator(n.value).convert_to<unsigned>();
            next();
          }
          spec.denominators.push_back(std::move(d));
        } while (is_punct("("));
      } else {
        fail_at(t, "expected a statement, found " + describe(t),
                {"vars", "cone", "param", "num", "den", "end of input"});
      }
      expect(";");
    }
    return spec;
  }

 private:
  const Token& peek() const { return toks_[pos_]; }
  const Token& next() { return toks_[pos_++]; }
  bool is_punct(std::string_view p) const { return peek().kind == Token::Kind::Punct && peek().text == p; }
  bool is_word(std::string_view w) const { return peek().kind == Token::Kind::Identifier && peek().text == w; }

  [[noreturn]] void fail_at(const Token& t, const std::string& msg, std::vector<std::string> expected,
                            ErrorKind kind = ErrorKind::Syntax) const {
    throw ParseError(kind, msg, t.where.line, t.where.column, std::move(expected));
  }

  void expect(std::string_view p) {
    if (!is_punct(p)) fail_at(peek(), "expected '" + std::string(p) + "', found " + describe(peek()), {std::string(p)});
    next();
  }

  Token identifier() {
    const Token& t = peek();
    if (t.kind != Token::Kind::Identifier || kKeywords.contains(t.text))
      fail_at(t, "expected a name, found " + describe(t), {"identifier"});
    return next();
  }

  Rational signed_rational() {
    bool negative = false;
    if (is_punct("-")) {
      negative = true;
      next();
    }
    if (peek().kind != Token::Kind::Number) fail_at(peek(), "expected a number, found " + describe(peek()), {"number"});
    Rational q = next().value;
    if (is_punct("/")) {
      next();
      const Token& d = peek();
      if (d.kind != Token::Kind::Number || d.value == 0) fail_at(d, "expected a nonzero number", {"number"});
      q /= next().value;
    }
    return negative ? Rational(-q) : q;
  }

  std::vector<Rational> vector() {
    expect("(");
    std::vector<Rational> v{signed_rational()};
    while (is_punct(",")) {
      next();
      v.push_back(signed_rational());
    }
    expect(")");
    return v;
  }

  static Expr node(Expr::Kind k, SourceLocation at, std::vector<Expr> args = {}) {
    Expr e;
    e.kind = k;
    e.where = at;
    e.args = std::move(args);
    return e;
  }

  Expr expr() {
    Expr lhs = term();
    while (is_punct("+") || is_punct("-")) {
      const Token& op = next();
      Expr rhs = term();
      lhs = node(op.text == "+" ? Expr::Kind::Add : Expr::Kind::Subtract, op.where, {std::move(lhs), std::move(rhs)});
    }
    return lhs;
  }

  Expr term() {
    Expr lhs = unary();
    while (is_punct("*") || is_punct("/")) {
      const Token& op = next();
      Expr rhs = unary();
      lhs = node(op.text == "*" ? Expr::Kind::Multiply : Expr::Kind::Divide, op.where, {std::move(lhs), std::move(rhs)});
    }
    return lhs;
  }

  Expr unary() {
    if (is_punct("-")) {
      const Token& op = next();
      return node(Expr::Kind::Negate, op.where, {unary()});
    }
    if (is_punct("+")) {
      next();
      return unary();
    }
    Expr base = primary();
    if (is_punct("^")) {
      const Token& op = next();
      return node(Expr::Kind::Power, op.where, {std::move(base), unary()});
    }
    return base;
  }

  Expr primary() {
    const Token& t = peek();
    static const std::vector<std::string> kStart{"number", "identifier", "i", "pi", "exp", "log", "("};
    if (t.kind == Token::Kind::Number) {
      Expr e = node(Expr::Kind::Number, t.where);
      e.number = next().value;
      return e;
    }
    if (is_punct("(")) {
      next();
      Expr e = expr();
      expect(")");
      return e;
    }
    if (t.kind == Token::Kind::Identifier) {
      if (t.text == "i") return next(), node(Expr::Kind::ImaginaryUnit, t.where);
      if (t.text == "pi") return next(), node(Expr::Kind::Pi, t.where);
      if (t.text == "exp" || t.text == "log") {
        const Token& f = next();
        expect("(");
        Expr e = node(Expr::Kind::Call, f.where, {expr()});
        e.name = f.text;
        expect(")");
        return e;
      }
      if (!kKeywords.contains(t.text)) {
        Expr e = node(Expr::Kind::Name, t.where);
        e.name = next().text;
        return e;
      }
    }
    fail_at(t, "expected an expression, found " + describe(t), kStart);
  }

  std::vector<Token> toks_;
  std::size_t pos_ = 0;
};

// ---- printing ----

int precedence(const Expr& e) {
  switch (e.kind) {
    case Expr::Kind::Add:
    case Expr::Kind::Subtract: return 1;
    case Expr::Kind::Multiply:
    case Expr::Kind::Divide: return 2;
    case Expr::Kind::Negate: return 3;
    case Expr::Kind::Power: return 4;
    default: return 5;
  }
}

std::string decimal(const Rational& q) {
  Integer num = numerator(q), den = denominator(q);
  unsigned places = 0;
  while (den != 1 && places < 1000) {
    if (den % 10 == 0) {
      den /= 10;
    } else if (den % 2 == 0) {
      den /= 2;
      num *= 5;
    } else if (den % 5 == 0) {
      den /= 5;
      num *= 2;
    } else {
      break;
    }
    ++places;
  }
  if (den != 1) return "(" + numerator(q).str() + "/" + denominator(q).str() + ")";
  std::string digits = num.str();
  if (places == 0) return digits;
  if (digits.size() <= places) digits.insert(0, places - digits.size() + 1, '0');
  digits.insert(digits.size() - places, ".");
  return digits;
}

void print(const Expr& e, int min_prec, std::string& out) {
  const bool wrap = precedence(e) < min_prec;
  if (wrap) out += "(";
  switch (e.kind) {
    case Expr::Kind::Number: out += decimal(e.number); break;
    case Expr::Kind::ImaginaryUnit: out += "i"; break;
    case Expr::Kind::Pi: out += "pi"; break;
    case Expr::Kind::Name: out += e.name; break;
    case Expr::Kind::Negate:
      out += "-";
      print(e.args[0], 3, out);
      break;
    case Expr::Kind::Add:
    case Expr::Kind::Subtract:
      print(e.args[0], 1, out);
      out += e.kind == Expr::Kind::Add ? " + " : " - ";
      print(e.args[1], 2, out);
      break;
    case Expr::Kind::Multiply:
    case Expr::Kind::Divide:
      print(e.args[0], 2, out);
      out += e.kind == Expr::Kind::Multiply ? "*" : "/";
      print(e.args[1], 3, out);
      break;
    case Expr::Kind::Power:
      print(e.args[0], 5, out);
      out += "^";
      print(e.args[1], 3, out);
      break;
    case Expr::Kind::Call:
      out += e.name + "(";
      print(e.args[0], 0, out);
      out += ")";
      break;
  }
  if (wrap) out += ")";
}

// ---- evaluation ----

struct Scalar {
  std::optional<GaussianRational> exact;
  Complex value;

  static Scalar of(GaussianRational q) { return {q, q.to_complex()}; }
  static Scalar approx(Complex c) { return {std::nullopt, std::move(c)}; }
};

[[noreturn]] void fail(const Expr& at, ErrorKind kind, const std::string& msg) {
  throw ParseError(kind, msg, at.where.line, at.where.column);
}

class Evaluator {
 public:
  Evaluator(const std::vector<std::string>& vars) : vars_(vars) {}

  void bind(const std::string& name, const Expr& e) {
    if (index_of(name)) fail(e, ErrorKind::InvalidProblem, "parameter " + name + " shadows a variable");
    params_.insert_or_assign(name, scalar(e));
  }

  Scalar scalar(const Expr& e) const {
    using K = Expr::Kind;
    switch (e.kind) {
      case K::Number: return Scalar::of({e.number, 0});
      case K::ImaginaryUnit: return Scalar::of({0, 1});
      case K::Pi: return Scalar::approx(real_pi());
      case K::Name: {
        if (auto it = params_.find(e.name); it != params_.end()) return it->second;
        if (index_of(e.name)) fail(e, ErrorKind::InvalidProblem, "variable " + e.name + " in a constant expression");
        fail(e, ErrorKind::UnboundParameter, "unbound parameter " + e.name);
      }
      case K::Negate: {
        Scalar a = scalar(e.args[0]);
        return {a.exact ? std::optional(-*a.exact) : std::nullopt, -a.value};
      }
      case K::Add:
      case K::Subtract:
      case K::Multiply:
      case K::Divide: {
        const Scalar a = scalar(e.args[0]);
        const Scalar b = scalar(e.args[1]);
        if (e.kind == K::Divide && b.value.is_zero()) fail(e, ErrorKind::InvalidProblem, "division by zero");
        if (a.exact && b.exact) {
          switch (e.kind) {
            case K::Add: return Scalar::of(*a.exact + *b.exact);
            case K::Subtract: return Scalar::of(*a.exact - *b.exact);
            case K::Multiply: return Scalar::of(*a.exact * *b.exact);
            default: return Scalar::of(*a.exact / *b.exact);
          }
        }
        switch (e.kind) {
          case K::Add: return Scalar::approx(a.value + b.value);
          case K::Subtract: return Scalar::approx(a.value - b.value);
          case K::Multiply: return Scalar::approx(a.value * b.value);
          default: return Scalar::approx(a.value / b.value);
        }
      }
      case K::Power: {
        const Scalar a = scalar(e.args[0]);
        const Scalar b = scalar(e.args[1]);
        if (auto n = small_integer(b)) {
          if (*n < 0 && a.value.is_zero()) fail(e, ErrorKind::InvalidProblem, "zero to a negative power");
          if (a.exact) {
            GaussianRational p{1, 0};
            for (long k = 0; k < std::abs(*n); ++k) p = p * *a.exact;
            return Scalar::of(*n < 0 ? GaussianRational{1, 0} / p : p);
          }
          return Scalar::approx(pow(a.value, static_cast<int>(*n)));
        }
        if (a.value.is_zero()) fail(e, ErrorKind::InvalidProblem, "zero to a non-integer power");
        return Scalar::approx(exp(b.value * log(a.value)));
      }
      case K::Call: {
        const Scalar a = scalar(e.args[0]);
        if (e.name == "exp") return Scalar::approx(exp(a.value));
        if (a.value.is_zero()) fail(e, ErrorKind::InvalidProblem, "log of zero");
        return Scalar::approx(log(a.value));
      }
    }
    fail(e, ErrorKind::Syntax, "unknown expression");
  }

  struct Linear {
    std::vector<GaussianRational> lin;
    Scalar c;
    bool is_constant() const {
      return std::all_of(lin.begin(), lin.end(), [](const GaussianRational& q) { return q.is_zero(); });
    }
  };

  Linear affine(const Expr& e) const {
    using K = Expr::Kind;
    const std::size_t r = vars_.size();
    if (!mentions_variable(e)) return {std::vector<GaussianRational>(r), scalar(e)};
    switch (e.kind) {
      case K::Name: {
        Linear out{std::vector<GaussianRational>(r), Scalar::of({0, 0})};
        out.lin[*index_of(e.name)] = {1, 0};
        return out;
      }
      case K::Negate: return scale(affine(e.args[0]), Scalar::of({-1, 0}), e);
      case K::Add:
      case K::Subtract: {
        Linear a = affine(e.args[0]);
        const Linear b = affine(e.args[1]);
        const bool add = e.kind == K::Add;
        for (std::size_t j = 0; j < r; ++j) a.lin[j] = add ? a.lin[j] + b.lin[j] : a.lin[j] - b.lin[j];
        if (a.c.exact && b.c.exact)
          a.c = Scalar::of(add ? *a.c.exact + *b.c.exact : *a.c.exact - *b.c.exact);
        else
          a.c = Scalar::approx(add ? a.c.value + b.c.value : a.c.value - b.c.value);
        return a;
      }
      case K::Multiply: {
        const Linear a = affine(e.args[0]);
        const Linear b = affine(e.args[1]);
        if (!a.is_constant() && !b.is_constant())
          fail(e, ErrorKind::NonAffineDenominator, "denominator factor is not affine");
        return a.is_constant() ? scale(b, a.c, e) : scale(a, b.c, e);
      }
      case K::Divide: {
        const Linear b = affine(e.args[1]);
        if (!b.is_constant()) fail(e, ErrorKind::NonAffineDenominator, "denominator factor is not affine");
        if (b.c.value.is_zero()) fail(e, ErrorKind::InvalidProblem, "division by zero");
        const Scalar inv = b.c.exact ? Scalar::of(GaussianRational{1, 0} / *b.c.exact)
                                     : Scalar::approx(Complex(1) / b.c.value);
        return scale(affine(e.args[0]), inv, e);
      }
      case K::Power: {
        if (mentions_variable(e.args[1]))
          fail(e, ErrorKind::NonAffineDenominator, "variable exponent in a denominator factor");
        const auto n = small_integer(scalar(e.args[1]));
        if (n == 1) return affine(e.args[0]);
        fail(e, ErrorKind::NonAffineDenominator, "denominator factor is not affine; write powers as (factor)^k");
      }
      default: fail(e, ErrorKind::NonAffineDenominator, "denominator factor is not affine");
    }
  }

  ExpRationalFunction function(const Expr& e) const {
    using K = Expr::Kind;
    const std::size_t r = vars_.size();
    if (!mentions_variable(e)) return ExpRationalFunction::constant(r, scalar(e).value);
    switch (e.kind) {
      case K::Name:
        return ExpRationalFunction::from_term({Polynomial::variable(r, *index_of(e.name)), ExpForm::zero(r), {}});
      case K::Negate: return function(e.args[0]) * Complex(-1);
      case K::Add: return function(e.args[0]) + function(e.args[1]);
      case K::Subtract: return function(e.args[0]) + function(e.args[1]) * Complex(-1);
      case K::Multiply: return function(e.args[0]) * function(e.args[1]);
      case K::Divide: {
        if (mentions_variable(e.args[1]))
          fail(e, ErrorKind::InvalidProblem, "the numerator must be a sum of polynomial times exponential terms");
        const Scalar d = scalar(e.args[1]);
        if (d.value.is_zero()) fail(e, ErrorKind::InvalidProblem, "division by zero");
        return function(e.args[0]) * (Complex(1) / d.value);
      }
      case K::Power: {
        if (!mentions_variable(e.args[1])) {
          const auto n = small_integer(scalar(e.args[1]));
          if (!n || *n < 0)
            fail(e, ErrorKind::InvalidProblem, "only non-negative integer powers of expressions in the variables");
          ExpRationalFunction out = ExpRationalFunction::constant(r, 1);
          const ExpRationalFunction base = function(e.args[0]);
          for (long k = 0; k < *n; ++k) out = out * base;
          return out;
        }
        if (mentions_variable(e.args[0]))
          fail(e, ErrorKind::InvalidProblem, "variable base with a variable exponent");
        const Scalar base = scalar(e.args[0]);
        if (base.value.is_zero()) fail(e, ErrorKind::InvalidProblem, "zero to a variable power");
        ExpForm f = exponent(e.args[1]);
        const Complex l = log(base.value);
        for (auto& c : f.lin) c *= l;
        f.c *= l;
        return ExpRationalFunction::from_term({Polynomial::constant(r, 1), f, {}});
      }
      case K::Call: {
        if (e.name == "log") fail(e, ErrorKind::InvalidProblem, "log of an expression in the variables");
        return ExpRationalFunction::from_term({Polynomial::constant(r, 1), exponent(e.args[0]), {}});
      }
      default: fail(e, ErrorKind::InvalidProblem, "unsupported expression");
    }
  }

  std::optional<std::size_t> index_of(const std::string& name) const {
    for (std::size_t j = 0; j < vars_.size(); ++j)
      if (vars_[j] == name) return j;
    return std::nullopt;
  }

 private:
  bool mentions_variable(const Expr& e) const {
    if (e.kind == Expr::Kind::Name && index_of(e.name)) return true;
    return std::any_of(e.args.begin(), e.args.end(), [&](const Expr& a) { return mentions_variable(a); });
  }

  static std::optional<long> small_integer(const Scalar& s) {
    if (!s.exact || s.exact->im != 0 || denominator(s.exact->re) != 1) return std::nullopt;
    const Integer n = numerator(s.exact->re);
    if (abs(n) > 64) return std::nullopt;
    return n.convert_to<long>();
  }

  static Linear scale(Linear a, const Scalar& k, const Expr& at) {
    if (!k.exact && !a.is_constant())
      fail(at, ErrorKind::NonAffineDenominator, "linear coefficients of a denominator factor must be exact");
    for (auto& q : a.lin) q = *k.exact * q;
    a.c = a.c.exact && k.exact ? Scalar::of(*a.c.exact * *k.exact) : Scalar::approx(a.c.value * k.value);
    return a;
  }

  // Affine exponent with complex slopes.
  ExpForm exponent(const Expr& e) const {
    const std::size_t r = vars_.size();
    ExpForm out{std::vector<Complex>(r), Complex()};
    const ExpRationalFunction f = function(e);
    for (const auto& t : f.terms()) {
      bool plain = t.denominator.empty() && t.poly.total_degree() <= 1;
      for (const auto& l : t.exponent.lin) plain = plain && l.is_zero();
      if (!plain) fail(e, ErrorKind::InvalidProblem, "exponent must be affine in the variables");
      const Complex factor = exp(t.exponent.c);
      for (const auto& [ex, coeff] : t.poly.coefficients()) {
        std::size_t deg = 0, var = 0;
        for (std::size_t j = 0; j < r; ++j)
          if (ex[j]) deg += ex[j], var = j;
        if (deg == 0)
          out.c += coeff * factor;
        else
          out.lin[var] += coeff * factor;
      }
    }
    return out;
  }

  const std::vector<std::string>& vars_;
  std::map<std::string, Scalar, std::less<>> params_;
};

}  // namespace

ProblemSpec parse_problem(std::string_view source) { return Parser(lex(source)).problem(); }

std::string to_source(const Expr& e) {
  std::string out;
  print(e, 0, out);
  return out;
}

std::string to_source(const ProblemSpec& spec) {
  std::string out = "vars";
  for (const auto& v : spec.variables) out += " " + v;
  out += ";\n";
  if (!spec.cone.empty()) {
    out += "cone";
    for (const auto& g : spec.cone) {
      out += " (";
      for (std::size_t j = 0; j < g.size(); ++j) out += (j ? ", " : "") + to_string(g[j]);
      out += ")";
    }
    out += ";\n";
  }
  for (const auto& [name, e] : spec.parameters) out += "param " + name + " = " + to_source(e) + ";\n";
  if (spec.numerator) out += "num " + to_source(*spec.numerator) + ";\n";
  if (!spec.denominators.empty()) {
    out += "den";
    for (const auto& d : spec.denominators) {
      out += " (" + to_source(d.factor) + ")";
      if (d.power != 1) out += "^" + std::to_string(d.power);
    }
    out += ";\n";
  }
  return out;
}

Problem build_problem(const ProblemSpec& spec) {
  const std::size_t r = spec.variables.size();
  if (r == 0) throw ParseError(ErrorKind::InvalidProblem, "no variables declared", 1, 1, {"vars"});
  for (std::size_t j = 0; j < r; ++j)
    for (std::size_t k = 0; k < j; ++k)
      if (spec.variables[j] == spec.variables[k])
        throw Error(ErrorKind::InvalidProblem, "variable " + spec.variables[j] + " declared twice");
  if (spec.denominators.empty()) throw Error(ErrorKind::InvalidProblem, "no denominator factors");

  Problem p;
  p.variables = spec.variables;
  if (spec.cone.empty()) {
    p.cone = Polyhedron::standard(r);
  } else {
    if (spec.cone.size() != r) throw Error(ErrorKind::InvalidProblem, "cone needs exactly one generator per variable");
    for (const auto& g : spec.cone)
      if (g.size() != r) throw Error(ErrorKind::InvalidProblem, "cone generator has the wrong length");
    p.cone = Polyhedron::from_generators(spec.cone);
  }

  Evaluator ev(spec.variables);
  for (const auto& [name, e] : spec.parameters) ev.bind(name, e);
  p.arrangement = Arrangement(r, spec.numerator ? ev.function(*spec.numerator) : ExpRationalFunction::constant(r, 1));
  for (const auto& d : spec.denominators) {
    const auto lin = ev.affine(d.factor);
    if (lin.is_constant())
      fail(d.factor, ErrorKind::NonAffineDenominator, "denominator factor does not involve the variables");
    try {
      p.arrangement.add_factor(lin.lin, lin.c.value, d.power);
    } catch (const ParseError&) {
      throw;
    } catch (const Error& err) {
      fail(d.factor, err.kind(), err.what());
    }
  }
  return p;
}

Problem load_problem(std::string_view source) { return build_problem(parse_problem(source)); }

}  // namespace residuum
