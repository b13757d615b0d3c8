#include "hopfgroup/dsl.hpp"

#include <cctype>
#include <optional>

namespace hopfgroup {

namespace {

struct Value {
  enum class Kind { Scalar, Function, Dual };
  Kind kind = Kind::Scalar;
  CycScalar scalar;
  std::optional<BSFunction> fn;
  std::optional<ConvElement> dual;

  static Value of(CycScalar s) { return Value{Kind::Scalar, std::move(s), std::nullopt, std::nullopt}; }
  static Value of(BSFunction f) { return Value{Kind::Function, {}, std::move(f), std::nullopt}; }
  static Value of(ConvElement a) { return Value{Kind::Dual, {}, std::nullopt, std::move(a)}; }
};

const char* kind_name(Value::Kind k) {
  switch (k) {
    case Value::Kind::Scalar: return "a scalar";
    case Value::Kind::Function: return "a function";
    case Value::Kind::Dual: return "a dual element";
  }
  return "?";
}

class Parser {
 public:
  Parser(std::string_view src, GroupPtr g) : src_(src), group_(std::move(g)) {}

  Value parse_all() {
    Value v = expr();
    skip_ws();
    if (pos_ != src_.size()) fail(ErrorCode::Parse, std::string("unexpected '") + src_[pos_] + "'");
    return v;
  }

  [[noreturn]] void fail(ErrorCode code, const std::string& message) const { fail_at(code, message, pos_); }

  [[noreturn]] void fail_at(ErrorCode code, const std::string& message, std::size_t at) const {
    throw Error(code, message + " at column " + std::to_string(at + 1));
  }

 private:
  void skip_ws() {
    while (pos_ < src_.size() && std::isspace(static_cast<unsigned char>(src_[pos_]))) ++pos_;
  }

  bool accept(char c) {
    skip_ws();
    if (pos_ < src_.size() && src_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  void expect(char c) {
    if (!accept(c)) fail(ErrorCode::Parse, std::string("expected '") + c + "'");
  }

  bool accept_word(std::string_view w) {
    skip_ws();
    if (src_.substr(pos_, w.size()) != w) return false;
    const std::size_t end = pos_ + w.size();
    if (end < src_.size() && (std::isalnum(static_cast<unsigned char>(src_[end])) || src_[end] == '_')) return false;
    pos_ = end;
    return true;
  }

  long long integer() {
    skip_ws();
    const std::size_t start = pos_;
    while (pos_ < src_.size() && std::isdigit(static_cast<unsigned char>(src_[pos_]))) ++pos_;
    if (start == pos_) fail(ErrorCode::Parse, "expected an integer");
    if (pos_ - start > 18) fail_at(ErrorCode::Range, "integer too long", start);
    return std::stoll(std::string(src_.substr(start, pos_ - start)));
  }

  Value expr() {
    Value acc = term();
    for (;;) {
      skip_ws();
      const std::size_t at = pos_;
      if (accept('+')) acc = combine(acc, term(), '+', at);
      else if (accept('-')) acc = combine(acc, term(), '-', at);
      else return acc;
    }
  }

  Value term() {
    Value acc = unary();
    for (;;) {
      skip_ws();
      const std::size_t at = pos_;
      if (accept('*')) acc = combine(acc, unary(), '*', at);
      else if (accept('/')) acc = combine(acc, unary(), '/', at);
      else return acc;
    }
  }

  Value unary() {
    if (accept('-')) return negate(unary());
    return power();
  }

  Value power() {
    skip_ws();
    const std::size_t at = pos_;
    Value base = primary();
    if (!accept('^')) return base;
    const bool negative = accept('-');
    const long long e = integer();
    if (base.kind != Value::Kind::Scalar) fail_at(ErrorCode::Parse, "only scalars can be raised to a power", at);
    if (e > 4096) fail_at(ErrorCode::Range, "exponent too large", at);
    CycScalar r(1L);
    for (long long i = 0; i < e; ++i) r *= base.scalar;
    if (negative) {
      if (r.is_zero()) fail_at(ErrorCode::DivisionByZero, "zero raised to a negative power", at);
      r = r.inverse();
    }
    return Value::of(std::move(r));
  }

  Value primary() {
    skip_ws();
    const std::size_t at = pos_;
    if (pos_ >= src_.size()) fail(ErrorCode::Parse, "unexpected end of input");
    const char c = src_[pos_];
    if (std::isdigit(static_cast<unsigned char>(c))) {
      const std::size_t start = pos_;
      while (pos_ < src_.size() && std::isdigit(static_cast<unsigned char>(src_[pos_]))) ++pos_;
      return Value::of(CycScalar(mpq_class(mpz_class(std::string(src_.substr(start, pos_ - start))))));
    }
    if (accept('(')) {
      Value v = expr();
      expect(')');
      return v;
    }
    if (accept_word("chi")) return chi(at);
    if (accept_word("conj")) {
      expect('(');
      Value v = expr();
      expect(')');
      switch (v.kind) {
        case Value::Kind::Scalar: return Value::of(v.scalar.conjugate());
        case Value::Kind::Function: return Value::of(star(*v.fn));
        case Value::Kind::Dual: fail_at(ErrorCode::Parse, "conj applies to scalars and functions", at);
      }
    }
    if (accept_word("L")) {
      expect('[');
      Value v = expr();
      expect(']');
      if (v.kind == Value::Kind::Scalar && v.scalar.is_zero() && group_) return Value::of(ConvElement(BSFunction(group_)));
      if (v.kind != Value::Kind::Function) fail_at(ErrorCode::Parse, "L[...] needs a function inside", at);
      return Value::of(ConvElement(*v.fn));
    }
    if (c == 'z') {
      ++pos_;
      const std::size_t digits = pos_;
      while (pos_ < src_.size() && std::isdigit(static_cast<unsigned char>(src_[pos_]))) ++pos_;
      if (digits == pos_ || pos_ - digits > 6) fail_at(ErrorCode::Parse, "expected z<N> root of unity", at);
      const unsigned long n = std::stoul(std::string(src_.substr(digits, pos_ - digits)));
      if (n == 0) fail_at(ErrorCode::Parse, "z0 is not a root of unity", at);
      return Value::of(CycScalar::root_of_unity(static_cast<unsigned>(n), 1));
    }
    fail(ErrorCode::Parse, std::string("unexpected '") + c + "'");
  }

  Value chi(std::size_t at) {
    if (!group_) fail_at(ErrorCode::Parse, "chi(...) needs a group", at);
    expect('(');
    skip_ws();
    const std::size_t start = pos_;
    int depth = 0;
    while (pos_ < src_.size() && !(depth == 0 && src_[pos_] == ',')) {
      const char c = src_[pos_];
      if (c == '(' || c == '[' || c == '{') ++depth;
      if (c == ')' || c == ']' || c == '}') {
        if (depth == 0) break;
        --depth;
      }
      ++pos_;
    }
    if (pos_ >= src_.size() || src_[pos_] != ',') fail(ErrorCode::Parse, "expected ', level=<n>' in chi(...)");
    const std::string_view literal = src_.substr(start, pos_ - start);
    ++pos_;
    GElem x;
    try {
      x = group_->parse_element(literal);
      group_->validate(x);
    } catch (const Error& e) {
      fail_at(e.code(), e.what(), start);
    }
    if (!accept_word("level")) fail(ErrorCode::Parse, "expected 'level='");
    expect('=');
    skip_ws();
    const std::size_t level_at = pos_;
    const bool negative = accept('-');
    long long n = integer();
    if (negative) n = -n;
    expect(')');
    if (n < group_->min_level() || n > group_->max_level())
      fail_at(ErrorCode::Level,
              "level " + std::to_string(n) + " outside " + std::to_string(group_->min_level()) + ".." +
                  std::to_string(group_->max_level()),
              level_at);
    return Value::of(indicator(group_, x, static_cast<int>(n)));
  }

  Value negate(Value v) {
    switch (v.kind) {
      case Value::Kind::Scalar: return Value::of(-v.scalar);
      case Value::Kind::Function: return Value::of(-*v.fn);
      case Value::Kind::Dual: return Value::of(CycScalar(-1L) * *v.dual);
    }
    return v;
  }

  Value combine(const Value& a, const Value& b, char op, std::size_t at) {
    using K = Value::Kind;
    if (op == '/') {
      if (b.kind != K::Scalar) fail_at(ErrorCode::Parse, "can only divide by a scalar", at);
      if (b.scalar.is_zero()) fail_at(ErrorCode::DivisionByZero, "division by zero", at);
      return combine(a, Value::of(b.scalar.inverse()), '*', at);
    }
    if (op == '+' || op == '-') {
      if (a.kind != b.kind)
        fail_at(ErrorCode::Parse, std::string("cannot add ") + kind_name(a.kind) + " and " + kind_name(b.kind), at);
      switch (a.kind) {
        case K::Scalar: return Value::of(op == '+' ? a.scalar + b.scalar : a.scalar - b.scalar);
        case K::Function: return Value::of(op == '+' ? *a.fn + *b.fn : *a.fn - *b.fn);
        case K::Dual: return Value::of(op == '+' ? *a.dual + *b.dual : *a.dual - *b.dual);
      }
    }
    if (a.kind == K::Scalar && b.kind == K::Scalar) return Value::of(a.scalar * b.scalar);
    if (a.kind == K::Scalar && b.kind == K::Function) return Value::of(a.scalar * *b.fn);
    if (a.kind == K::Function && b.kind == K::Scalar) return Value::of(b.scalar * *a.fn);
    if (a.kind == K::Function && b.kind == K::Function) return Value::of(*a.fn * *b.fn);
    if (a.kind == K::Scalar && b.kind == K::Dual) return Value::of(a.scalar * *b.dual);
    if (a.kind == K::Dual && b.kind == K::Scalar) return Value::of(b.scalar * *a.dual);
    if (a.kind == K::Dual && b.kind == K::Dual) return Value::of(conv_mul(*a.dual, *b.dual));
    fail_at(ErrorCode::Parse, std::string("cannot multiply ") + kind_name(a.kind) + " and " + kind_name(b.kind), at);
  }

  std::string_view src_;
  GroupPtr group_;
  std::size_t pos_ = 0;
};

std::string coefficient_prefix(const CycScalar& c, bool first) {
  std::string s = c.to_string();
  bool negative = false;
  if (c.is_monomial() && s.front() == '-') {
    negative = true;
    s.erase(0, 1);
  }
  std::string body;
  if (s == "1") body = "";
  else if (c.is_monomial()) body = s + "*";
  else body = "(" + s + ")*";
  if (first) return (negative ? "-" : "") + body;
  return (negative ? " - " : " + ") + body;
}

}  // namespace

CycScalar parse_scalar(std::string_view text) {
  Parser p(text, nullptr);
  Value v = p.parse_all();
  if (v.kind != Value::Kind::Scalar) p.fail_at(ErrorCode::Parse, "expected a scalar", 0);
  return v.scalar;
}

BSFunction parse_function(std::string_view text, const GroupPtr& g) {
  Parser p(text, g);
  Value v = p.parse_all();
  if (v.kind == Value::Kind::Function) return *v.fn;
  if (v.kind == Value::Kind::Scalar && v.scalar.is_zero()) return BSFunction(g);
  p.fail_at(ErrorCode::Parse, std::string("expected a function, got ") + kind_name(v.kind), 0);
}

ConvElement parse_dual(std::string_view text, const GroupPtr& g) {
  Parser p(text, g);
  Value v = p.parse_all();
  if (v.kind == Value::Kind::Dual) return *v.dual;
  if (v.kind == Value::Kind::Function) return ConvElement(*v.fn);
  if (v.kind == Value::Kind::Scalar && v.scalar.is_zero()) return ConvElement(BSFunction(g));
  p.fail_at(ErrorCode::Parse, "expected a dual element", 0);
}

std::string format_function(const BSFunction& f) {
  if (f.is_zero()) return "0";
  std::string out;
  bool first = true;
  for (const auto& [rep, c] : f.terms()) {
    out += coefficient_prefix(c, first);
    out += "chi(" + f.group()->format_element(rep) + ", level=" + std::to_string(f.level()) + ")";
    first = false;
  }
  return out;
}

std::string format_dual(const ConvElement& a) { return "L[" + format_function(a.symbol()) + "]"; }

nlohmann::json function_to_json(const BSFunction& f) {
  nlohmann::json terms = nlohmann::json::array();
  for (const auto& [rep, c] : f.terms())
    terms.push_back({{"rep", f.group()->format_element(rep)}, {"coeff", c.to_string()}});
  return {{"group", f.group()->descriptor()}, {"level", f.level()}, {"terms", terms}};
}

BSFunction function_from_json(const nlohmann::json& j, const GroupPtr& expected) {
  try {
    GroupPtr g = make_group(j.at("group").get<std::string>());
    if (expected) {
      require_same_group(*expected, *g);
      g = expected;
    }
    const int level = j.at("level").get<int>();
    g->require_level(level);
    CosetMap table;
    for (const auto& t : j.at("terms")) {
      GElem rep = g->parse_element(t.at("rep").get<std::string>());
      CycScalar c = parse_scalar(t.at("coeff").get<std::string>());
      if (!table.emplace(rep, c).second) throw Error(ErrorCode::Validation, "duplicate term in function JSON");
    }
    return from_quotient_table(g, level, table);
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::Parse, std::string("malformed function JSON: ") + e.what());
  }
}

nlohmann::json dual_to_json(const ConvElement& a) { return {{"dual", true}, {"symbol", function_to_json(a.symbol())}}; }

ConvElement dual_from_json(const nlohmann::json& j, const GroupPtr& expected) {
  try {
    if (!j.at("dual").get<bool>()) throw Error(ErrorCode::Parse, "dual JSON must have \"dual\": true");
    return ConvElement(function_from_json(j.at("symbol"), expected));
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::Parse, std::string("malformed dual JSON: ") + e.what());
  }
}

}  // namespace hopfgroup
