#include "hopfgroup/group.hpp"

#include <set>

#include "text_util.hpp"

namespace hopfgroup {

GroupPtr Group::dual() const {
  throw Error(ErrorCode::Unsupported, "group " + descriptor() + " has no supported Pontryagin dual");
}

CycScalar Group::pairing(const GElem&, const GElem&) const {
  throw Error(ErrorCode::Unsupported, "group " + descriptor() + " is not abelian with a supported dual");
}

int Group::annihilator_level(int) const {
  throw Error(ErrorCode::Unsupported, "group " + descriptor() + " has no supported Pontryagin dual");
}

std::vector<GElem> Group::annihilator_reps(int, int) const {
  throw Error(ErrorCode::Unsupported, "group " + descriptor() + " has no supported Pontryagin dual");
}

int Group::pairing_level(const GElem&) const {
  throw Error(ErrorCode::Unsupported, "group " + descriptor() + " has no supported Pontryagin dual");
}

void Group::require_level(int n) const {
  if (!in_level_range(n))
    throw Error(ErrorCode::Level, "level " + std::to_string(n) + " outside [" + std::to_string(min_level()) + ", " +
                                      std::to_string(max_level()) + "] for " + descriptor());
}

bool Group::eq_at_level(const GElem& x, const GElem& y, int n) const {
  return canonical_rep(x, n) == canonical_rep(y, n);
}

bool Group::in_subgroup(const GElem& x, int n) const {
  return canonical_rep(x, n) == canonical_rep(identity(), n);
}

mpq_class Group::measure(int n) const {
  require_level(n);
  if (n >= 0) return mpq_class(mpz_class(1), index(0, n));
  return mpq_class(index(n, 0));
}

mpq_class Group::measure_coset(const GElem& x, int n, Side side) const {
  mpq_class m = measure(n);
  if (side == Side::Right) m *= modular(x);
  return m;
}

std::vector<GElem> Group::cover_right(const GElem& r, int n, const GElem& x, int m) const {
  const int finer = std::max(n, conj_level(inv(x), m));
  std::set<GElem> seen;
  for (const GElem& s : coset_reps(n, finer)) seen.insert(canonical_rep(mul(mul(r, s), x), m));
  return {seen.begin(), seen.end()};
}

void require_same_group(const Group& a, const Group& b) {
  if (!a.same_as(b))
    throw Error(ErrorCode::Usage, "mixed groups: " + a.descriptor() + " and " + b.descriptor());
}

bool is_prime(unsigned long p) {
  if (p < 2) return false;
  for (unsigned long q = 2; q * q <= p; ++q)
    if (p % q == 0) return false;
  return true;
}

namespace {

unsigned parse_prime(std::string_view text, std::string_view descriptor) {
  long long p = 0;
  if (!detail::parse_int(text, p) || p < 2 || p > 1000 || !is_prime(static_cast<unsigned long>(p)))
    throw Error(ErrorCode::Parse, "expected a prime in group descriptor '" + std::string(descriptor) + "'");
  return static_cast<unsigned>(p);
}

bool strip_call(std::string_view text, std::string_view head, std::string_view& inner) {
  if (text.size() < head.size() + 2 || text.substr(0, head.size()) != head) return false;
  std::string_view rest = detail::trim(text.substr(head.size()));
  if (rest.size() < 2 || rest.front() != '(' || rest.back() != ')') return false;
  inner = rest.substr(1, rest.size() - 2);
  return true;
}

}  // namespace

GroupPtr make_group(std::string_view descriptor) {
  std::string_view d = detail::trim(descriptor);
  std::string_view inner;
  if (d == "z") return make_integers();
  if (d.substr(0, 3) == "zp:") return make_zp(parse_prime(d.substr(3), d));
  if (d.substr(0, 3) == "qp:") return make_qp(parse_prime(d.substr(3), d));
  if (d.substr(0, 6) == "shift:") return make_shift(parse_prime(d.substr(6), d));
  if (d.substr(0, 8) == "qpmodzp:") return make_qp_mod_zp(parse_prime(d.substr(8), d));
  if (d.substr(0, 7) == "cayley@") return load_cayley_file(std::string(d.substr(7)));
  if (d.substr(0, 7) == "finite:") {
    std::string_view name = detail::trim(d.substr(7));
    if (name.substr(0, 7) == "cayley@") return load_cayley_file(std::string(name.substr(7)));
    return make_named_finite(name);
  }
  if (strip_call(d, "dual", inner)) return make_group(inner)->dual();
  if (strip_call(d, "prod", inner)) {
    std::vector<GroupPtr> factors;
    for (std::string_view part : detail::split_top_level(inner)) factors.push_back(make_group(part));
    return make_product(std::move(factors));
  }
  throw Error(ErrorCode::Parse, "unknown group descriptor '" + std::string(d) + "'");
}

}  // namespace hopfgroup
