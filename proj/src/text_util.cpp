#include "text_util.hpp"

#include <cctype>

namespace hopfgroup::detail {

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

std::vector<std::string_view> split_top_level(std::string_view s, char sep) {
  std::vector<std::string_view> parts;
  int depth = 0;
  std::size_t start = 0;
  for (std::size_t i = 0; i < s.size(); ++i) {
    char c = s[i];
    if (c == '(' || c == '[' || c == '{') ++depth;
    if (c == ')' || c == ']' || c == '}') --depth;
    if (c == sep && depth == 0) {
      parts.push_back(trim(s.substr(start, i - start)));
      start = i + 1;
    }
  }
  parts.push_back(trim(s.substr(start)));
  return parts;
}

bool parse_int(std::string_view s, long long& out) {
  s = trim(s);
  if (s.empty()) return false;
  bool negative = false;
  if (s.front() == '-' || s.front() == '+') {
    negative = s.front() == '-';
    s.remove_prefix(1);
  }
  if (s.empty() || s.size() > 18) return false;
  long long v = 0;
  for (char c : s) {
    if (!std::isdigit(static_cast<unsigned char>(c))) return false;
    v = v * 10 + (c - '0');
  }
  out = negative ? -v : v;
  return true;
}

namespace {

bool parse_integer_mpz(std::string_view s, mpz_class& out) {
  s = trim(s);
  if (s.empty()) return false;
  bool negative = false;
  if (s.front() == '-' || s.front() == '+') {
    negative = s.front() == '-';
    s.remove_prefix(1);
    s = trim(s);
  }
  if (s.empty()) return false;
  for (char c : s)
    if (!std::isdigit(static_cast<unsigned char>(c))) return false;
  out = mpz_class(std::string(s), 10);
  if (negative) out = -out;
  return true;
}

}  // namespace

bool parse_rational(std::string_view s, mpq_class& out) {
  s = trim(s);
  auto slash = s.find('/');
  mpz_class num;
  if (slash == std::string_view::npos) {
    if (!parse_integer_mpz(s, num)) return false;
    out = mpq_class(num);
    return true;
  }
  if (!parse_integer_mpz(s.substr(0, slash), num)) return false;
  std::string_view den_text = trim(s.substr(slash + 1));
  mpz_class den;
  auto caret = den_text.find('^');
  if (caret == std::string_view::npos) {
    if (!parse_integer_mpz(den_text, den)) return false;
  } else {
    mpz_class base;
    long long exponent = 0;
    if (!parse_integer_mpz(den_text.substr(0, caret), base)) return false;
    if (!parse_int(den_text.substr(caret + 1), exponent) || exponent < 0 || exponent > 4096) return false;
    mpz_pow_ui(den.get_mpz_t(), base.get_mpz_t(), static_cast<unsigned long>(exponent));
  }
  if (den <= 0) return false;
  out = mpq_class(num, den);
  out.canonicalize();
  return true;
}

}  // namespace hopfgroup::detail
