#include "tauber/funcspec.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <numbers>

#include <json.hpp>

#include "tauber/error.hpp"

namespace tauber {

Value Body::evaluate(double x, double n) const {
  const double r = re.evaluate(x, n);
  return im ? Value(r, im->evaluate(x, n)) : Value(r, 0.0);
}

Value Body::evaluate_log(double log_x, double n) const {
  const double r = re.evaluate_ext(log_x, n).finite_value();
  return im ? Value(r, im->evaluate_ext(log_x, n).finite_value()) : Value(r, 0.0);
}

std::string Body::to_string() const {
  if (!im) return re.to_string();
  return "complex(" + re.to_string() + ", " + im->to_string() + ")";
}

namespace {

struct Position {
  int line = 0;
  int column = 0;
};

// ---------------------------------------------------------------------------
// Layout validation shared by the parser and programmatic construction.

void check_body(const Body& body, double x, double n, Position pos, const std::string& where) {
  try {
    (void)body.evaluate(x, n);
  } catch (const DomainError& e) {
    throw ParseError(ParseError::Kind::domain, pos.line, pos.column,
                     std::string(e.what()) + " at x=" + format_number(x) + " in " + where);
  }
}

// Evaluates every piece at its left end and at log-spaced interior points.
void check_piece_domain(const Piece& p, Position pos) {
  const std::string where = "piece [" + format_number(p.lo) + ", " + format_number(p.hi) + ")";
  check_body(p.body, p.lo, 0.0, pos, where);
  const double top = std::isinf(p.hi) ? std::max(p.lo * 1e300, 1e300) : p.hi;
  const double la = std::log(p.lo);
  const double lb = std::log(std::min(top, 1e300));
  constexpr int kSamples = 33;
  for (int i = 1; i < kSamples; ++i) {
    const double x = std::exp(la + (lb - la) * i / kSamples);
    if (x > p.lo && x < p.hi) check_body(p.body, x, 0.0, pos, where);
  }
  if (!std::isinf(p.hi)) {
    const double below = std::nextafter(p.hi, p.lo);
    if (below > p.lo) check_body(p.body, below, 0.0, pos, where);
  }
}

void validate_layout(const std::vector<Piece>& pieces, const std::optional<Family>& family,
                     const std::vector<Position>& positions) {
  auto pos = [&](std::size_t i) { return i < positions.size() ? positions[i] : Position{}; };
  if (pieces.empty() && !family)
    throw ParseError(ParseError::Kind::gap, 0, 0, "specification has no pieces");
  double expected_lo = 1.0;
  for (std::size_t i = 0; i < pieces.size(); ++i) {
    const Piece& p = pieces[i];
    if (!(p.lo < p.hi))
      throw ParseError(ParseError::Kind::overlap, pos(i).line, pos(i).column,
                       "empty interval [" + format_number(p.lo) + ", " + format_number(p.hi) + ")");
    if (p.lo < expected_lo)
      throw ParseError(ParseError::Kind::overlap, pos(i).line, pos(i).column,
                       "piece starting at " + format_number(p.lo) + " overlaps the previous piece ending at " +
                           format_number(expected_lo));
    if (p.lo > expected_lo)
      throw ParseError(ParseError::Kind::gap, pos(i).line, pos(i).column,
                       "gap [" + format_number(expected_lo) + ", " + format_number(p.lo) + ") is not covered");
    expected_lo = p.hi;
  }
  if (family) {
    if (std::isinf(expected_lo))
      throw ParseError(ParseError::Kind::overlap, pos(pieces.size()).line, pos(pieces.size()).column,
                       "family follows an unbounded piece");
    const double start = family->start.evaluate(0.0, static_cast<double>(family->first));
    if (start != expected_lo) {
      const auto kind = start < expected_lo ? ParseError::Kind::overlap : ParseError::Kind::gap;
      throw ParseError(kind, pos(pieces.size()).line, pos(pieces.size()).column,
                       "family starts at " + format_number(start) + " but the previous piece ends at " +
                           format_number(expected_lo));
    }
  } else if (!std::isinf(expected_lo)) {
    throw ParseError(ParseError::Kind::gap, pos(pieces.size() - 1).line, pos(pieces.size() - 1).column,
                     "pieces end at " + format_number(expected_lo) + " instead of inf");
  }
  for (std::size_t i = 0; i < pieces.size(); ++i) check_piece_domain(pieces[i], pos(i));
}

}  // namespace

// ---------------------------------------------------------------------------
// FunctionSpec

FunctionSpec::FunctionSpec(std::string name, std::vector<Piece> pieces, std::optional<Family> family)
    : name_(std::move(name)), pieces_(std::move(pieces)), family_(std::move(family)) {
  validate_layout(pieces_, family_, {});
  auto complex_body = [](const Body& b) { return b.im.has_value(); };
  bool cplx = std::any_of(pieces_.begin(), pieces_.end(), [&](const Piece& p) { return complex_body(p.body); });
  if (family_) cplx = cplx || complex_body(family_->inside) || complex_body(family_->outside);
  codomain_ = cplx ? Codomain::complex : Codomain::real;
  if (family_) expand_family();
}

void FunctionSpec::expand_family() {
  const Family& fam = *family_;
  double prev_end = pieces_.empty() ? 1.0 : pieces_.back().hi;
  for (long long k = 0; k <= fam.limit; ++k) {
    const double n = static_cast<double>(fam.first + k);
    double s = 0.0, e = 0.0;
    try {
      s = fam.start.evaluate(0.0, n);
      e = fam.end.evaluate(0.0, n);
    } catch (const DomainError& err) {
      throw ParseError(ParseError::Kind::domain, 0, 0,
                       "family bound at n=" + format_number(n) + ": " + err.what());
    }
    if (s < prev_end)
      throw ParseError(ParseError::Kind::overlap, 0, 0, "family member n=" + format_number(n) + " overlaps its predecessor");
    const bool resolvable = (e - s) >= Family::kMinRelativeWidth * s;
    if (k == fam.limit || !resolvable) {
      availability_ = s;
      break;
    }
    if (!(s < e))
      throw ParseError(ParseError::Kind::overlap, 0, 0, "family member n=" + format_number(n) + " is empty");
    if (k < 3) {
      const std::string where = "family member n=" + format_number(n);
      check_body(fam.inside, s, n, {}, where);
      check_body(fam.inside, s + 0.5 * (e - s), n, {}, where);
    }
    starts_.push_back(s);
    ends_.push_back(e);
    prev_end = e;
  }
  if (starts_.empty())
    throw ParseError(ParseError::Kind::gap, 0, 0, "family expands to no members");
  check_body(fam.outside, ends_.front(), static_cast<double>(fam.first), {}, "family gap");
  log_availability_ = std::log(availability_);
}

FunctionSpec::Located FunctionSpec::locate(double x) const {
  if (!(x >= 1.0)) throw PreconditionError(name_ + ": evaluation at x=" + format_number(x) + " < 1");
  if (!pieces_.empty() && x < pieces_.back().hi) {
    auto it = std::upper_bound(pieces_.begin(), pieces_.end(), x,
                               [](double v, const Piece& p) { return v < p.lo; });
    return {&std::prev(it)->body, 0.0};
  }
  if (!family_) return {&pieces_.back().body, 0.0};
  if (x >= availability_)
    throw HorizonError(name_ + ": x=" + format_number(x) + " is beyond the expanded family horizon " +
                       format_number(availability_));
  auto it = std::upper_bound(starts_.begin(), starts_.end(), x);
  const auto idx = static_cast<std::size_t>(it - starts_.begin()) - 1;
  const double n = static_cast<double>(family_->first) + static_cast<double>(idx);
  if (x < ends_[idx]) return {&family_->inside, n};
  return {&family_->outside, n};
}

Value FunctionSpec::eval(double x) const {
  const Located loc = locate(x);
  return loc.body->evaluate(x, loc.n);
}

Value FunctionSpec::eval_log(double log_x) const {
  if (log_x < ExtReal::kLogThreshold) return eval(std::exp(log_x));
  if (log_x >= log_availability_)
    throw HorizonError(name_ + ": e^" + format_number(log_x) + " is beyond the representable horizon");
  return pieces_.back().body.evaluate_log(log_x);
}

std::vector<double> FunctionSpec::breakpoints(double lo, double hi) const {
  std::vector<double> out;
  for (std::size_t i = 1; i < pieces_.size(); ++i)
    if (pieces_[i].lo > lo && pieces_[i].lo < hi) out.push_back(pieces_[i].lo);
  if (family_) {
    auto first = std::upper_bound(starts_.begin(), starts_.end(), lo);
    if (first != starts_.begin()) --first;
    for (auto it = first; it != starts_.end() && *it < hi; ++it) {
      const std::size_t i = static_cast<std::size_t>(it - starts_.begin());
      if (starts_[i] > lo) out.push_back(starts_[i]);
      if (ends_[i] > lo && ends_[i] < hi) out.push_back(ends_[i]);
    }
    if (availability_ > lo && availability_ < hi) out.push_back(availability_);
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

std::optional<Value> FunctionSpec::constant_near(double x) const {
  const Located loc = locate(x);
  if (loc.body->depends_on_x()) return std::nullopt;
  return loc.body->evaluate(x, loc.n);
}

// ---------------------------------------------------------------------------
// Lexer and parser

namespace {

enum class Tok { number, ident, punct, end };

struct Token {
  Tok kind = Tok::end;
  std::string text;
  double number = 0.0;
  Position pos;
};

class Lexer {
 public:
  explicit Lexer(std::string_view src) : src_(src) { advance(); }

  const Token& peek() const { return current_; }

  Token next() {
    Token t = current_;
    advance();
    return t;
  }

 private:
  void advance() {
    skip_space();
    current_ = Token{};
    current_.pos = {line_, col_};
    if (i_ >= src_.size()) {
      current_.kind = Tok::end;
      return;
    }
    const char c = src_[i_];
    if (std::isdigit(static_cast<unsigned char>(c)) || (c == '.' && i_ + 1 < src_.size() && std::isdigit(static_cast<unsigned char>(src_[i_ + 1])))) {
      std::size_t j = i_;
      while (j < src_.size() && (std::isdigit(static_cast<unsigned char>(src_[j])) || src_[j] == '.')) ++j;
      if (j < src_.size() && (src_[j] == 'e' || src_[j] == 'E')) {
        std::size_t k = j + 1;
        if (k < src_.size() && (src_[k] == '+' || src_[k] == '-')) ++k;
        if (k < src_.size() && std::isdigit(static_cast<unsigned char>(src_[k]))) {
          while (k < src_.size() && std::isdigit(static_cast<unsigned char>(src_[k]))) ++k;
          j = k;
        }
      }
      const std::string text(src_.substr(i_, j - i_));
      double v = 0.0;
      auto res = std::from_chars(text.data(), text.data() + text.size(), v);
      if (res.ec != std::errc() || res.ptr != text.data() + text.size())
        throw ParseError(ParseError::Kind::syntax, line_, col_, "malformed number '" + text + "'");
      current_.kind = Tok::number;
      current_.text = text;
      current_.number = v;
      consume(j - i_);
      return;
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      std::size_t j = i_;
      while (j < src_.size() && (std::isalnum(static_cast<unsigned char>(src_[j])) || src_[j] == '_')) ++j;
      current_.kind = Tok::ident;
      current_.text = std::string(src_.substr(i_, j - i_));
      consume(j - i_);
      return;
    }
    if (std::string_view("+-*/^()[],:;").find(c) != std::string_view::npos) {
      current_.kind = Tok::punct;
      current_.text = std::string(1, c);
      consume(1);
      return;
    }
    throw ParseError(ParseError::Kind::syntax, line_, col_, std::string("unexpected character '") + c + "'");
  }

  void skip_space() {
    while (i_ < src_.size()) {
      const char c = src_[i_];
      if (c == '#') {
        while (i_ < src_.size() && src_[i_] != '\n') consume(1);
      } else if (std::isspace(static_cast<unsigned char>(c))) {
        consume(1);
      } else {
        break;
      }
    }
  }

  void consume(std::size_t count) {
    for (std::size_t k = 0; k < count; ++k) {
      if (src_[i_] == '\n') {
        ++line_;
        col_ = 1;
      } else {
        ++col_;
      }
      ++i_;
    }
  }

  std::string_view src_;
  std::size_t i_ = 0;
  int line_ = 1;
  int col_ = 1;
  Token current_;
};

class Parser {
 public:
  explicit Parser(std::string_view src) : lex_(src) {}

  SpecPtr parse_spec(std::string name) {
    std::vector<Piece> pieces;
    std::vector<Position> positions;
    std::optional<Family> family;
    if (is_ident("piece") || is_ident("family")) {
      while (is_ident("piece") || is_ident("family")) {
        if (family) fail(lex_.peek(), "no piece may follow a family");
        positions.push_back(lex_.peek().pos);
        if (is_ident("piece")) {
          lex_.next();
          Piece p;
          std::tie(p.lo, p.hi) = parse_interval();
          expect(":");
          p.body = parse_body();
          expect(";");
          pieces.push_back(std::move(p));
        } else {
          family = parse_family();
        }
      }
    } else {
      positions.push_back(lex_.peek().pos);
      Piece p;
      p.hi = std::numeric_limits<double>::infinity();
      p.body = parse_body();
      if (is_ident("on")) {
        lex_.next();
        std::tie(p.lo, p.hi) = parse_interval();
      }
      if (is_punct(";")) lex_.next();
      pieces.push_back(std::move(p));
    }
    if (lex_.peek().kind != Tok::end) fail(lex_.peek(), "unexpected trailing input '" + lex_.peek().text + "'");
    validate_layout(pieces, family, positions);
    return std::make_shared<FunctionSpec>(std::move(name), std::move(pieces), std::move(family));
  }

  Expression parse_standalone() {
    Expression e(parse_expr());
    if (lex_.peek().kind != Tok::end) fail(lex_.peek(), "unexpected trailing input '" + lex_.peek().text + "'");
    return e;
  }

 private:
  [[noreturn]] void fail(const Token& t, const std::string& msg) {
    throw ParseError(ParseError::Kind::syntax, t.pos.line, t.pos.column, msg);
  }

  bool is_ident(std::string_view s) const { return lex_.peek().kind == Tok::ident && lex_.peek().text == s; }
  bool is_punct(std::string_view s) const { return lex_.peek().kind == Tok::punct && lex_.peek().text == s; }

  void expect(std::string_view s) {
    if (!is_punct(s)) {
      const Token& t = lex_.peek();
      fail(t, "expected '" + std::string(s) + "' but found '" + (t.kind == Tok::end ? std::string("end of input") : t.text) + "'");
    }
    lex_.next();
  }

  Family parse_family() {
    lex_.next();  // family
    Family fam;
    const Token var = lex_.next();
    if (var.kind != Tok::ident) fail(var, "expected family index name");
    fam.var = var.text;
    if (!is_ident("from")) fail(lex_.peek(), "expected 'from'");
    lex_.next();
    fam.first = parse_integer();
    if (is_ident("limit")) {
      lex_.next();
      fam.limit = parse_integer();
      if (fam.limit < 1) fail(lex_.peek(), "family limit must be positive");
    }
    expect(":");
    family_var_ = fam.var;
    const Token open = lex_.peek();
    expect("[");
    fam.start = Expression(parse_expr());
    expect(",");
    fam.end = Expression(parse_expr());
    expect(")");
    if (fam.start.depends_on_x() || fam.end.depends_on_x()) fail(open, "family bounds may not depend on x");
    expect(":");
    fam.inside = parse_body();
    if (!is_ident("else")) fail(lex_.peek(), "expected 'else'");
    lex_.next();
    fam.outside = parse_body();
    family_var_.clear();
    if (is_punct(";")) lex_.next();
    return fam;
  }

  long long parse_integer() {
    const Token t = lex_.next();
    if (t.kind != Tok::number || t.number != std::floor(t.number)) fail(t, "expected an integer");
    return static_cast<long long>(t.number);
  }

  std::pair<double, double> parse_interval() {
    expect("[");
    const double lo = parse_bound();
    expect(",");
    const double hi = parse_bound();
    expect(")");
    return {lo, hi};
  }

  double parse_bound() {
    if (is_ident("inf")) {
      lex_.next();
      return std::numeric_limits<double>::infinity();
    }
    const Token at = lex_.peek();
    Expression e(parse_expr());
    if (e.depends_on_x() || e.depends_on_n()) fail(at, "interval bounds must be constant");
    try {
      return e.evaluate(0.0);
    } catch (const DomainError& err) {
      throw ParseError(ParseError::Kind::domain, at.pos.line, at.pos.column, err.what());
    }
  }

  Body parse_body() {
    Body b;
    if (is_ident("complex")) {
      lex_.next();
      expect("(");
      b.re = Expression(parse_expr());
      expect(",");
      b.im = Expression(parse_expr());
      expect(")");
      return b;
    }
    b.re = Expression(parse_expr());
    return b;
  }

  NodePtr parse_expr() {
    NodePtr lhs = parse_term();
    while (is_punct("+") || is_punct("-")) {
      const Op op = lex_.next().text == "+" ? Op::add : Op::sub;
      lhs = Expression::make_binary(op, lhs, parse_term());
    }
    return lhs;
  }

  NodePtr parse_term() {
    NodePtr lhs = parse_unary();
    while (is_punct("*") || is_punct("/")) {
      const Op op = lex_.next().text == "*" ? Op::mul : Op::div;
      lhs = Expression::make_binary(op, lhs, parse_unary());
    }
    return lhs;
  }

  NodePtr parse_unary() {
    if (is_punct("-")) {
      lex_.next();
      return Expression::make_unary(Op::neg, parse_unary());
    }
    if (is_punct("+")) {
      lex_.next();
      return parse_unary();
    }
    return parse_power();
  }

  NodePtr parse_power() {
    NodePtr base = parse_primary();
    if (is_punct("^")) {
      lex_.next();
      return Expression::make_binary(Op::pow, base, parse_unary());
    }
    return base;
  }

  NodePtr parse_primary() {
    const Token t = lex_.next();
    if (t.kind == Tok::number) return Expression::make_constant(t.number);
    if (t.kind == Tok::punct && t.text == "(") {
      NodePtr e = parse_expr();
      expect(")");
      return e;
    }
    if (t.kind != Tok::ident) fail(t, t.kind == Tok::end ? "unexpected end of input" : "unexpected '" + t.text + "'");
    if (t.text == "x") return Expression::make_var_x();
    if (!family_var_.empty() && t.text == family_var_) return Expression::make_var_n();
    if (t.text == "pi") return Expression::make_constant(std::numbers::pi);
    if (t.text == "e") return Expression::make_constant(std::numbers::e);
    if (t.text == "inf") return Expression::make_constant(std::numeric_limits<double>::infinity());
    static const std::pair<const char*, Op> unary[] = {
        {"sin", Op::sin}, {"cos", Op::cos}, {"exp", Op::exp}, {"log", Op::log}, {"loglog", Op::loglog}, {"abs", Op::abs}};
    for (const auto& [fname, op] : unary) {
      if (t.text == fname) {
        expect("(");
        NodePtr a = parse_expr();
        expect(")");
        return Expression::make_unary(op, a);
      }
    }
    if (t.text == "pow") {
      expect("(");
      NodePtr a = parse_expr();
      expect(",");
      NodePtr b = parse_expr();
      expect(")");
      return Expression::make_binary(Op::pow, a, b);
    }
    if (t.text == "indicator") {
      expect("(");
      const double lo = parse_bound();
      expect(",");
      const double hi = parse_bound();
      expect(")");
      return Expression::make_indicator(lo, hi);
    }
    fail(t, "unknown identifier '" + t.text + "'");
  }

  Lexer lex_;
  std::string family_var_;
};

}  // namespace

SpecPtr parse_spec(std::string_view source, std::string name) { return Parser(source).parse_spec(std::move(name)); }

Expression parse_expression(std::string_view source) { return Parser(source).parse_standalone(); }

namespace {

std::string rename_family_var(std::string text, const std::string& var) {
  if (var == "n") return text;
  // the printer emits the index as a standalone "n" token
  std::string out;
  for (std::size_t i = 0; i < text.size(); ++i) {
    const bool word_start = i == 0 || !(std::isalnum(static_cast<unsigned char>(text[i - 1])) || text[i - 1] == '_');
    const bool word_end = i + 1 == text.size() || !(std::isalnum(static_cast<unsigned char>(text[i + 1])) || text[i + 1] == '_');
    if (text[i] == 'n' && word_start && word_end) out += var;
    else out += text[i];
  }
  return out;
}

}  // namespace

std::string print_spec(const FunctionSpec& spec) {
  std::string out;
  for (const Piece& p : spec.pieces()) {
    out += "piece [" + format_number(p.lo) + ", " + format_number(p.hi) + "): " + p.body.to_string() + ";\n";
  }
  if (const auto& fam = spec.family()) {
    const auto r = [&](const std::string& s) { return rename_family_var(s, fam->var); };
    out += "family " + fam->var + " from " + std::to_string(fam->first) + " limit " + std::to_string(fam->limit) +
           ": [" + r(fam->start.to_string()) + ", " + r(fam->end.to_string()) + "): " + r(fam->inside.to_string()) +
           " else " + r(fam->outside.to_string()) + ";\n";
  }
  return out;
}

std::string spec_to_json(const FunctionSpec& spec) {
  using nlohmann::json;
  auto bound = [](double v) { return std::isinf(v) ? json("inf") : json(v); };
  json j;
  j["name"] = spec.name();
  j["codomain"] = spec.is_complex() ? "complex" : "real";
  json pieces = json::array();
  for (const Piece& p : spec.pieces())
    pieces.push_back({{"lo", bound(p.lo)}, {"hi", bound(p.hi)}, {"expr_text", p.body.to_string()}});
  if (const auto& fam = spec.family()) {
    const double lo = spec.pieces().empty() ? 1.0 : spec.pieces().back().hi;
    const auto r = [&](const std::string& s) { return rename_family_var(s, fam->var); };
    pieces.push_back({{"lo", bound(lo)},
                      {"hi", "inf"},
                      {"family",
                       {{"var", fam->var},
                        {"from", fam->first},
                        {"limit", fam->limit},
                        {"start", r(fam->start.to_string())},
                        {"end", r(fam->end.to_string())},
                        {"inside", r(fam->inside.to_string())},
                        {"outside", r(fam->outside.to_string())}}}});
  }
  j["pieces"] = pieces;
  return j.dump(2);
}

SpecPtr spec_from_json(std::string_view json_text) {
  using nlohmann::json;
  json j;
  try {
    j = json::parse(json_text);
  } catch (const json::exception& e) {
    throw ParseError(ParseError::Kind::syntax, 0, 0, std::string("invalid JSON: ") + e.what());
  }
  auto bound = [](const json& v) -> std::string {
    if (v.is_string()) return v.get<std::string>();
    return format_number(v.get<double>());
  };
  try {
    std::string dsl;
    for (const json& p : j.at("pieces")) {
      if (p.contains("family")) {
        const json& f = p.at("family");
        dsl += "family " + f.at("var").get<std::string>() + " from " + std::to_string(f.at("from").get<long long>()) +
               " limit " + std::to_string(f.value("limit", Family::kDefaultLimit)) + ": [" +
               f.at("start").get<std::string>() + ", " + f.at("end").get<std::string>() +
               "): " + f.at("inside").get<std::string>() + " else " + f.at("outside").get<std::string>() + ";\n";
      } else {
        dsl += "piece [" + bound(p.at("lo")) + ", " + bound(p.at("hi")) + "): " + p.at("expr_text").get<std::string>() + ";\n";
      }
    }
    return parse_spec(dsl, j.value("name", std::string("fn")));
  } catch (const json::exception& e) {
    throw ParseError(ParseError::Kind::syntax, 0, 0, std::string("malformed spec JSON: ") + e.what());
  }
}

}  // namespace tauber
