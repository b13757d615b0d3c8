// p-adic instances: Z_p, Q_p, Q_p/Z_p, the discrete integers, and Q_p x| Z.

#include <limits>

#include "hopfgroup/group.hpp"
#include "text_util.hpp"

namespace hopfgroup {
namespace {

constexpr int kPadicLevelBound = 60;
// Largest coset enumeration we are willing to materialize.
const mpz_class kMaxEnumeration = mpz_class(1) << 22;

mpq_class power(unsigned p, long n) {
  mpz_class base;
  mpz_ui_pow_ui(base.get_mpz_t(), p, static_cast<unsigned long>(n < 0 ? -n : n));
  if (n >= 0) return mpq_class(base);
  return mpq_class(mpz_class(1), base);
}

mpz_class floor_of(const mpq_class& x) {
  mpz_class q;
  mpz_fdiv_q(q.get_mpz_t(), x.get_num_mpz_t(), x.get_den_mpz_t());
  return q;
}

/// Representative of x + p^n Z_p in [0, p^n) for x in Z[1/p].
mpq_class mod_level(const mpq_class& x, unsigned p, long n) {
  mpq_class step = power(p, n);
  mpq_class r = x - step * mpq_class(floor_of(x / step));
  r.canonicalize();
  return r;
}

mpq_class fractional(const mpq_class& x) {
  mpq_class r = x - mpq_class(floor_of(x));
  r.canonicalize();
  return r;
}

bool is_p_power(mpz_class d, unsigned p) {
  while (d % p == 0) d /= p;
  return d == 1;
}

/// v_p(x) for nonzero x in Z[1/p].
long valuation(const mpq_class& x, unsigned p) {
  long v = 0;
  mpz_class num = x.get_num();
  mpz_class den = x.get_den();
  while (num % p == 0) {
    num /= p;
    ++v;
  }
  while (den % p == 0) {
    den /= p;
    --v;
  }
  return v;
}

/// e(2 pi i {x}) as a root of unity for x in Z[1/p].
CycScalar fractional_character(const mpq_class& x) {
  mpq_class f = fractional(x);
  if (sgn(f) == 0) return CycScalar(1L);
  if (!f.get_den().fits_ulong_p() || f.get_den() > std::numeric_limits<unsigned>::max())
    throw Error(ErrorCode::Conductor, "character value needs conductor " + f.get_den().get_str());
  return CycScalar::root_of_unity(static_cast<unsigned>(f.get_den().get_ui()), f.get_num().get_si());
}

void check_enumeration(const mpz_class& count) {
  if (count > kMaxEnumeration)
    throw Error(ErrorCode::Range, "coset enumeration of size " + count.get_str() + " is beyond desk scale");
}

mpq_class parse_padic(std::string_view text, unsigned p, bool integral) {
  mpq_class x;
  if (!detail::parse_rational(text, x))
    throw Error(ErrorCode::Parse, "malformed p-adic literal '" + std::string(detail::trim(text)) + "'");
  if (!is_p_power(x.get_den(), p) || (integral && x.get_den() != 1))
    throw Error(ErrorCode::Elem, "'" + std::string(detail::trim(text)) + "' is not an element of " +
                                     (integral ? "Z_" : "Q_") + std::to_string(p) + " with a finite expansion");
  return x;
}

void require_arity(const GElem& x, std::size_t n, const std::string& who) {
  if (x.coords.size() != n) throw Error(ErrorCode::Elem, "element of wrong shape for " + who);
}

class PadicGroup final : public Group {
 public:
  PadicGroup(unsigned p, bool integral) : p_(p), integral_(integral) {}

  std::string descriptor() const override { return (integral_ ? "zp:" : "qp:") + std::to_string(p_); }
  int min_level() const override { return integral_ ? 0 : -kPadicLevelBound; }
  int max_level() const override { return kPadicLevelBound; }
  bool is_abelian() const override { return true; }
  std::size_t arity() const override { return 1; }

  GElem identity() const override { return GElem{mpq_class(0)}; }
  GElem mul(const GElem& x, const GElem& y) const override { return GElem{mpq_class(x.coords[0] + y.coords[0])}; }
  GElem inv(const GElem& x) const override { return GElem{mpq_class(-x.coords[0])}; }

  GElem canonical_rep(const GElem& x, int n) const override {
    require_level(n);
    return GElem{mod_level(x.coords[0], p_, n)};
  }

  std::vector<GElem> coset_reps(int m, int n) const override {
    require_level(m);
    require_level(n);
    if (m > n) throw Error(ErrorCode::Usage, "coset_reps needs m <= n");
    mpz_class count = index(m, n);
    check_enumeration(count);
    std::vector<GElem> out;
    mpq_class step = power(p_, m);
    for (unsigned long j = 0; j < count.get_ui(); ++j) out.push_back(GElem{mpq_class(step * j)});
    return out;
  }

  mpz_class index(int m, int n) const override {
    mpz_class out;
    mpz_ui_pow_ui(out.get_mpz_t(), p_, static_cast<unsigned long>(n - m));
    return out;
  }

  int conj_level(const GElem&, int n) const override {
    require_level(n);
    return n;
  }

  mpq_class modular(const GElem&) const override { return 1; }

  std::vector<GElem> window(int n, int radius) const override {
    int base = integral_ ? 0 : std::min(n, -radius);
    return coset_reps(base, n);
  }

  void validate(const GElem& x) const override {
    require_arity(x, 1, descriptor());
    if (!is_p_power(x.coords[0].get_den(), p_) || (integral_ && x.coords[0].get_den() != 1))
      throw Error(ErrorCode::Elem, x.coords[0].get_str() + " is not an element of " + descriptor());
  }

  std::string format_element(const GElem& x) const override { return x.coords[0].get_str(); }

  GElem parse_element(std::string_view text) const override { return GElem{parse_padic(text, p_, integral_)}; }

  GroupPtr dual() const override;

  CycScalar pairing(const GElem& xi, const GElem& x) const override {
    return fractional_character(xi.coords[0] * x.coords[0]);
  }

  int annihilator_level(int n) const override {
    require_level(n);
    return integral_ ? 0 : -n;
  }

  std::vector<GElem> annihilator_reps(int n, int level) const override {
    if (!integral_) return coset_reps(-n, level);
    // The annihilator of p^n Z_p in Q_p/Z_p is p^{-n} Z_p / Z_p.
    mpz_class count = index(0, n);
    check_enumeration(count);
    std::vector<GElem> out;
    mpq_class step = power(p_, -n);
    for (unsigned long j = 0; j < count.get_ui(); ++j) out.push_back(GElem{mpq_class(step * j)});
    return out;
  }

  int pairing_level(const GElem& x) const override {
    if (integral_) return 0;
    if (sgn(x.coords[0]) == 0) return min_level();
    long level = -valuation(x.coords[0], p_);
    return static_cast<int>(std::clamp<long>(level, min_level(), max_level()));
  }

 private:
  unsigned p_;
  bool integral_;
};

/// Q_p / Z_p: discrete, H_0 = {0}, counting measure.
class PadicTorusGroup final : public Group {
 public:
  explicit PadicTorusGroup(unsigned p) : p_(p) {}

  std::string descriptor() const override { return "qpmodzp:" + std::to_string(p_); }
  int min_level() const override { return 0; }
  int max_level() const override { return 0; }
  bool is_abelian() const override { return true; }
  std::size_t arity() const override { return 1; }

  GElem identity() const override { return GElem{mpq_class(0)}; }
  GElem mul(const GElem& x, const GElem& y) const override { return GElem{fractional(x.coords[0] + y.coords[0])}; }
  GElem inv(const GElem& x) const override { return GElem{fractional(-x.coords[0])}; }

  GElem canonical_rep(const GElem& x, int n) const override {
    require_level(n);
    return GElem{fractional(x.coords[0])};
  }

  std::vector<GElem> coset_reps(int m, int n) const override {
    require_level(m);
    require_level(n);
    return {identity()};
  }

  mpz_class index(int, int) const override { return 1; }
  int conj_level(const GElem&, int n) const override { return n; }
  mpq_class modular(const GElem&) const override { return 1; }

  std::vector<GElem> window(int, int radius) const override {
    mpz_class count;
    mpz_ui_pow_ui(count.get_mpz_t(), p_, static_cast<unsigned long>(std::max(radius, 0)));
    check_enumeration(count);
    std::vector<GElem> out;
    mpq_class step = power(p_, -std::max(radius, 0));
    for (unsigned long j = 0; j < count.get_ui(); ++j) out.push_back(GElem{mpq_class(step * j)});
    return out;
  }

  void validate(const GElem& x) const override {
    require_arity(x, 1, descriptor());
    if (!is_p_power(x.coords[0].get_den(), p_))
      throw Error(ErrorCode::Elem, x.coords[0].get_str() + " is not an element of " + descriptor());
  }

  std::string format_element(const GElem& x) const override { return x.coords[0].get_str(); }
  GElem parse_element(std::string_view text) const override {
    return GElem{fractional(parse_padic(text, p_, false))};
  }

  GroupPtr dual() const override { return make_zp(p_); }
  CycScalar pairing(const GElem& xi, const GElem& x) const override {
    return fractional_character(xi.coords[0] * x.coords[0]);
  }
  int annihilator_level(int) const override { return 0; }
  std::vector<GElem> annihilator_reps(int, int level) const override { return make_zp(p_)->coset_reps(0, level); }
  int pairing_level(const GElem& x) const override {
    mpq_class f = fractional(x.coords[0]);
    if (sgn(f) == 0) return 0;
    return static_cast<int>(std::min<long>(-valuation(f, p_), kPadicLevelBound));
  }

 private:
  unsigned p_;
};

GroupPtr PadicGroup::dual() const {
  if (integral_) return std::make_shared<PadicTorusGroup>(p_);
  return shared_from_this();
}

/// The discrete group Z with H_0 = {0}.
class IntegerGroup final : public Group {
 public:
  std::string descriptor() const override { return "z"; }
  int min_level() const override { return 0; }
  int max_level() const override { return 0; }
  bool is_abelian() const override { return true; }
  std::size_t arity() const override { return 1; }

  GElem identity() const override { return GElem{mpq_class(0)}; }
  GElem mul(const GElem& x, const GElem& y) const override { return GElem{mpq_class(x.coords[0] + y.coords[0])}; }
  GElem inv(const GElem& x) const override { return GElem{mpq_class(-x.coords[0])}; }
  GElem canonical_rep(const GElem& x, int n) const override {
    require_level(n);
    return x;
  }
  std::vector<GElem> coset_reps(int m, int n) const override {
    require_level(m);
    require_level(n);
    return {identity()};
  }
  mpz_class index(int, int) const override { return 1; }
  int conj_level(const GElem&, int n) const override { return n; }
  mpq_class modular(const GElem&) const override { return 1; }
  std::vector<GElem> window(int, int radius) const override {
    std::vector<GElem> out;
    for (long j = -radius; j <= radius; ++j) out.push_back(GElem{mpq_class(j)});
    return out;
  }
  void validate(const GElem& x) const override {
    require_arity(x, 1, descriptor());
    if (x.coords[0].get_den() != 1) throw Error(ErrorCode::Elem, x.coords[0].get_str() + " is not an integer");
  }
  std::string format_element(const GElem& x) const override { return x.coords[0].get_str(); }
  GElem parse_element(std::string_view text) const override {
    mpq_class x;
    if (!detail::parse_rational(text, x))
      throw Error(ErrorCode::Parse, "malformed integer literal '" + std::string(detail::trim(text)) + "'");
    GElem out{x};
    validate(out);
    return out;
  }
  GroupPtr dual() const override {
    throw Error(ErrorCode::Unsupported, "the dual of z is the circle group, which is not totally disconnected");
  }
};

/// Q_p x| Z with (k, b)(k', b') = (k + k', b + p^k b') and H_n = {0} x p^n Z_p.
class ShiftGroup final : public Group {
 public:
  explicit ShiftGroup(unsigned p) : p_(p) {}

  std::string descriptor() const override { return "shift:" + std::to_string(p_); }
  int min_level() const override { return -kPadicLevelBound; }
  int max_level() const override { return kPadicLevelBound; }
  bool is_abelian() const override { return false; }
  std::size_t arity() const override { return 2; }

  GElem identity() const override { return GElem{mpq_class(0), mpq_class(0)}; }

  GElem mul(const GElem& x, const GElem& y) const override {
    long k = x.coords[0].get_num().get_si();
    return GElem{mpq_class(x.coords[0] + y.coords[0]), mpq_class(x.coords[1] + power(p_, k) * y.coords[1])};
  }

  GElem inv(const GElem& x) const override {
    long k = x.coords[0].get_num().get_si();
    return GElem{mpq_class(-x.coords[0]), mpq_class(-power(p_, -k) * x.coords[1])};
  }

  GElem canonical_rep(const GElem& x, int n) const override {
    require_level(n);
    long k = x.coords[0].get_num().get_si();
    return GElem{x.coords[0], mod_level(x.coords[1], p_, n + k)};
  }

  std::vector<GElem> coset_reps(int m, int n) const override {
    require_level(m);
    require_level(n);
    if (m > n) throw Error(ErrorCode::Usage, "coset_reps needs m <= n");
    mpz_class count = index(m, n);
    check_enumeration(count);
    std::vector<GElem> out;
    mpq_class step = power(p_, m);
    for (unsigned long j = 0; j < count.get_ui(); ++j) out.push_back(GElem{mpq_class(0), mpq_class(step * j)});
    return out;
  }

  mpz_class index(int m, int n) const override {
    mpz_class out;
    mpz_ui_pow_ui(out.get_mpz_t(), p_, static_cast<unsigned long>(n - m));
    return out;
  }

  // (k, b) H_m (k, b)^{-1} = {0} x p^{m+k} Z_p.
  int conj_level(const GElem& x, int n) const override {
    require_level(n);
    long m = n - x.coords[0].get_num().get_si();
    if (m < min_level() || m > max_level())
      throw Error(ErrorCode::Range, "conjugation-stable level " + std::to_string(m) + " outside the level range");
    return static_cast<int>(m);
  }

  // mu({k} x B) = p^k mu_p(B) is left invariant; right translation by (k, b)
  // multiplies it by p^k.
  mpq_class modular(const GElem& x) const override { return power(p_, x.coords[0].get_num().get_si()); }

  std::vector<GElem> window(int n, int radius) const override {
    std::vector<GElem> out;
    for (long k = -radius; k <= radius; ++k) {
      long level = n + k;
      long base = std::min<long>(level, -radius);
      mpz_class count;
      mpz_ui_pow_ui(count.get_mpz_t(), p_, static_cast<unsigned long>(level - base));
      check_enumeration(count);
      mpq_class step = power(p_, base);
      for (unsigned long j = 0; j < count.get_ui(); ++j) out.push_back(GElem{mpq_class(k), mpq_class(step * j)});
    }
    return out;
  }

  void validate(const GElem& x) const override {
    require_arity(x, 2, descriptor());
    if (x.coords[0].get_den() != 1 || abs(x.coords[0]) > kPadicLevelBound)
      throw Error(ErrorCode::Elem, "shift exponent must be a small integer");
    if (!is_p_power(x.coords[1].get_den(), p_))
      throw Error(ErrorCode::Elem, x.coords[1].get_str() + " is not an element of Q_" + std::to_string(p_));
  }

  std::string format_element(const GElem& x) const override {
    return "(" + x.coords[0].get_str() + ", " + x.coords[1].get_str() + ")";
  }

  GElem parse_element(std::string_view text) const override {
    std::string_view t = detail::trim(text);
    if (t.size() < 2 || t.front() != '(' || t.back() != ')')
      throw Error(ErrorCode::Parse, "shift element must look like (k, b), got '" + std::string(t) + "'");
    auto parts = detail::split_top_level(t.substr(1, t.size() - 2));
    if (parts.size() != 2) throw Error(ErrorCode::Parse, "shift element must have two coordinates");
    long long k = 0;
    if (!detail::parse_int(parts[0], k)) throw Error(ErrorCode::Parse, "shift exponent must be an integer");
    GElem out{mpq_class(static_cast<long>(k)), parse_padic(parts[1], p_, false)};
    validate(out);
    return out;
  }

 private:
  unsigned p_;
};

}  // namespace

GroupPtr make_zp(unsigned p) { return std::make_shared<PadicGroup>(p, true); }
GroupPtr make_qp(unsigned p) { return std::make_shared<PadicGroup>(p, false); }
GroupPtr make_qp_mod_zp(unsigned p) { return std::make_shared<PadicTorusGroup>(p); }
GroupPtr make_integers() { return std::make_shared<IntegerGroup>(); }
GroupPtr make_shift(unsigned p) { return std::make_shared<ShiftGroup>(p); }

}  // namespace hopfgroup
