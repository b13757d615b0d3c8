#include "hopfgroup/scalar.hpp"

#include <algorithm>
#include <atomic>
#include <cstdlib>
#include <map>
#include <memory>
#include <mutex>
#include <numeric>

namespace hopfgroup {

std::string_view error_code_name(ErrorCode code) {
  switch (code) {
    case ErrorCode::Usage: return "USAGE";
    case ErrorCode::Parse: return "PARSE";
    case ErrorCode::Elem: return "ELEM";
    case ErrorCode::Level: return "LEVEL";
    case ErrorCode::Unsupported: return "UNSUPPORTED";
    case ErrorCode::DivisionByZero: return "DIVZERO";
    case ErrorCode::Validation: return "VALIDATION";
    case ErrorCode::Leakage: return "LEAKAGE";
    case ErrorCode::Conductor: return "CONDUCTOR";
    case ErrorCode::Range: return "RANGE";
    case ErrorCode::Io: return "IO";
  }
  return "UNKNOWN";
}

namespace {

std::atomic<unsigned> g_max_conductor{0};
std::once_flag g_max_conductor_once;

void init_max_conductor() {
  unsigned limit = 256;
  if (const char* env = std::getenv("HOPFGROUP_MAX_CONDUCTOR")) {
    char* end = nullptr;
    unsigned long v = std::strtoul(env, &end, 10);
    if (end != env && *end == '\0' && v > 0 && v < (1UL << 20)) limit = static_cast<unsigned>(v);
  }
  unsigned expected = 0;
  g_max_conductor.compare_exchange_strong(expected, limit);
}

std::vector<unsigned> prime_factors(unsigned n) {
  std::vector<unsigned> out;
  for (unsigned q = 2; q * q <= n; ++q) {
    if (n % q == 0) {
      out.push_back(q);
      while (n % q == 0) n /= q;
    }
  }
  if (n > 1) out.push_back(n);
  return out;
}

int moebius(unsigned n) {
  int sign = 1;
  for (unsigned q = 2; q * q <= n; ++q) {
    if (n % q == 0) {
      n /= q;
      if (n % q == 0) return 0;
      sign = -sign;
    }
  }
  if (n > 1) sign = -sign;
  return sign;
}

long long mod_floor(long long a, long long n) {
  long long r = a % n;
  return r < 0 ? r + n : r;
}

long long inverse_mod(long long a, long long n) {
  // n >= 1, gcd(a, n) = 1
  long long t = 0, new_t = 1, r = n, new_r = mod_floor(a, n);
  while (new_r != 0) {
    long long q = r / new_r;
    std::tie(t, new_t) = std::make_pair(new_t, t - q * new_t);
    std::tie(r, new_r) = std::make_pair(new_r, r - q * new_r);
  }
  return mod_floor(t, n);
}

// Per-conductor data: Phi_n and the reduction of every x^j, j < n, into the
// power basis of Q[x]/Phi_n.
struct CycloData {
  unsigned n = 1;
  unsigned phi = 1;
  std::vector<long long> poly;
  std::vector<std::vector<std::pair<unsigned, long long>>> reduction;
  std::vector<unsigned> primes;
};

std::mutex g_cyclo_mutex;
std::map<unsigned, std::unique_ptr<const CycloData>> g_cyclo;

const CycloData& cyclo(unsigned n);

std::vector<long long> compute_cyclotomic(unsigned n) {
  // x^n - 1 divided by Phi_d for every proper divisor d.
  std::vector<long long> num(n + 1, 0);
  num[0] = -1;
  num[n] = 1;
  for (unsigned d = 1; d < n; ++d) {
    if (n % d != 0) continue;
    const auto& den = cyclo(d).poly;
    std::size_t deg_den = den.size() - 1;
    std::size_t deg_num = num.size() - 1;
    std::vector<long long> quot(deg_num - deg_den + 1, 0);
    for (std::size_t i = deg_num + 1; i-- > deg_den;) {
      long long c = num[i];  // den is monic
      quot[i - deg_den] = c;
      if (c == 0) continue;
      for (std::size_t j = 0; j <= deg_den; ++j) num[i - deg_den + j] -= c * den[j];
    }
    num = std::move(quot);
  }
  return num;
}

std::unique_ptr<CycloData> build_cyclo(unsigned n) {
  auto data = std::make_unique<CycloData>();
  data->n = n;
  data->poly = compute_cyclotomic(n);
  data->phi = static_cast<unsigned>(data->poly.size() - 1);
  data->primes = prime_factors(n);
  const unsigned phi = data->phi;
  data->reduction.resize(n);
  std::vector<long long> cur(phi, 0);
  for (unsigned j = 0; j < n; ++j) {
    if (j < phi) {
      std::fill(cur.begin(), cur.end(), 0);
      cur[j] = 1;
    } else {
      long long top = cur[phi - 1];
      for (unsigned i = phi - 1; i > 0; --i) cur[i] = cur[i - 1] - top * data->poly[i];
      cur[0] = -top * data->poly[0];
    }
    auto& row = data->reduction[j];
    for (unsigned i = 0; i < phi; ++i)
      if (cur[i] != 0) row.emplace_back(i, cur[i]);
  }
  return data;
}

const CycloData& cyclo(unsigned n) {
  {
    std::lock_guard<std::mutex> lock(g_cyclo_mutex);
    auto it = g_cyclo.find(n);
    if (it != g_cyclo.end()) return *it->second;
  }
  auto fresh = build_cyclo(n);
  std::lock_guard<std::mutex> lock(g_cyclo_mutex);
  auto [it, inserted] = g_cyclo.emplace(n, std::move(fresh));
  return *it->second;
}

void check_conductor(unsigned n) {
  if (n > max_conductor())
    throw Error(ErrorCode::Conductor, "cyclotomic conductor " + std::to_string(n) + " exceeds limit " +
                                          std::to_string(max_conductor()));
}

// Reduce a dense vector indexed by exponent mod n (length n) into the power
// basis (length phi(n)).
std::vector<mpq_class> reduce_exponents(const CycloData& data, const std::vector<mpq_class>& acc) {
  std::vector<mpq_class> out(data.phi);
  for (unsigned j = 0; j < acc.size(); ++j) {
    if (sgn(acc[j]) == 0) continue;
    if (j < data.phi) {
      out[j] += acc[j];
      continue;
    }
    for (const auto& [i, c] : data.reduction[j]) out[i] += acc[j] * mpz_class(static_cast<long>(c));
  }
  return out;
}

// For m = 2 * odd, rewrite a power-basis vector of Q(zeta_m) over Q(zeta_{m/2})
// using zeta_m = -zeta_{m/2}^{(m/2 + 1) / 2}.
std::vector<mpq_class> halve_conductor(unsigned m, const std::vector<mpq_class>& d) {
  const unsigned half = m / 2;
  const CycloData& target = cyclo(half);
  std::vector<mpq_class> acc(half);
  const unsigned step = (half + 1) / 2;
  for (unsigned k = 0; k < d.size(); ++k) {
    if (sgn(d[k]) == 0) continue;
    unsigned e = static_cast<unsigned>((static_cast<unsigned long long>(k) * step) % half);
    if (k % 2 == 0)
      acc[e] += d[k];
    else
      acc[e] -= d[k];
  }
  return reduce_exponents(target, acc);
}

}  // namespace

unsigned max_conductor() {
  std::call_once(g_max_conductor_once, init_max_conductor);
  return g_max_conductor.load();
}

void set_max_conductor(unsigned limit) {
  std::call_once(g_max_conductor_once, init_max_conductor);
  g_max_conductor.store(limit == 0 ? 1 : limit);
}

unsigned euler_phi(unsigned n) {
  unsigned result = n;
  for (unsigned q : prime_factors(n)) result = result / q * (q - 1);
  return result;
}

const std::vector<long long>& cyclotomic_polynomial(unsigned n) {
  if (n == 0) throw Error(ErrorCode::Usage, "cyclotomic polynomial of order 0");
  return cyclo(n).poly;
}

CycScalar::CycScalar(long value) {
  if (value != 0) terms_.emplace_back(0, mpq_class(value));
}

CycScalar::CycScalar(const mpq_class& value) {
  if (sgn(value) != 0) terms_.emplace_back(0, value);
}

mpq_class CycScalar::rational() const {
  if (conductor_ != 1) throw Error(ErrorCode::Usage, "scalar " + to_string() + " is not rational");
  return terms_.empty() ? mpq_class(0) : terms_.front().second;
}

CycScalar CycScalar::from_dense(unsigned n, std::vector<mpq_class> d) {
  for (;;) {
    bool changed = false;
    if (n > 1) {
      const CycloData& data = cyclo(n);
      for (unsigned q : data.primes) {
        if (n % (q * q) == 0) {
          bool only_multiples = true;
          for (unsigned k = 0; k < d.size() && only_multiples; ++k)
            if (k % q != 0 && sgn(d[k]) != 0) only_multiples = false;
          if (!only_multiples) continue;
          unsigned m = n / q;
          std::vector<mpq_class> nd(euler_phi(m));
          for (unsigned k = 0; k < d.size(); k += q) nd[k / q] = d[k];
          if (m % 4 == 2) {
            nd = halve_conductor(m, nd);
            m /= 2;
          }
          n = m;
          d = std::move(nd);
          changed = true;
          break;
        }
        // q exactly divides n, q odd: project with the relative trace and
        // test whether the projection reproduces d.
        const unsigned m = n / q;
        const CycloData& sub = cyclo(m);
        const long long u = m == 1 ? 0 : inverse_mod(q, m);
        std::vector<mpq_class> acc(m);
        const mpq_class scale(-1, q - 1);
        for (unsigned k = 0; k < d.size(); ++k) {
          if (sgn(d[k]) == 0) continue;
          unsigned e = m == 1 ? 0 : static_cast<unsigned>((static_cast<long long>(k) * u) % m);
          if (k % q == 0)
            acc[e] += d[k];
          else
            acc[e] += d[k] * scale;
        }
        std::vector<mpq_class> y = reduce_exponents(sub, acc);
        std::vector<mpq_class> back(n);
        for (unsigned j = 0; j < y.size(); ++j)
          if (sgn(y[j]) != 0) back[(static_cast<unsigned long long>(j) * q) % n] += y[j];
        if (reduce_exponents(data, back) == d) {
          n = m;
          d = std::move(y);
          changed = true;
          break;
        }
      }
    }
    if (!changed) break;
  }
  std::vector<Term> terms;
  for (unsigned k = 0; k < d.size(); ++k)
    if (sgn(d[k]) != 0) terms.emplace_back(k, std::move(d[k]));
  if (terms.empty()) return CycScalar();
  if (n == 1 || (terms.size() == 1 && terms.front().first == 0)) return CycScalar(1, std::move(terms));
  return CycScalar(n, std::move(terms));
}

std::vector<mpq_class> CycScalar::dense(unsigned n) const {
  const CycloData& data = cyclo(n);
  if (n == conductor_) {
    std::vector<mpq_class> out(data.phi);
    for (const auto& [k, c] : terms_) out[k] = c;
    return out;
  }
  const unsigned factor = n / conductor_;
  std::vector<mpq_class> acc(n);
  for (const auto& [k, c] : terms_) acc[(static_cast<unsigned long long>(k) * factor) % n] += c;
  return reduce_exponents(data, acc);
}

CycScalar CycScalar::root_of_unity(unsigned n, long long k) {
  if (n == 0) throw Error(ErrorCode::Usage, "root of unity of order 0");
  return from_exponents(n, {{k, mpq_class(1)}});
}

CycScalar CycScalar::from_exponents(unsigned n, const std::vector<std::pair<long long, mpq_class>>& terms) {
  if (n == 0) throw Error(ErrorCode::Usage, "conductor 0");
  std::vector<std::pair<long long, mpq_class>> local;
  const std::vector<std::pair<long long, mpq_class>>* src = &terms;
  if (n % 4 == 2) {
    const unsigned half = n / 2;
    const long long step = (half + 1) / 2;
    local.reserve(terms.size());
    for (const auto& [e, c] : terms) {
      long long r = mod_floor(e, n);
      local.emplace_back((r * step) % half, r % 2 == 0 ? mpq_class(c) : mpq_class(-c));
    }
    n = half;
    src = &local;
  }
  check_conductor(n);
  const CycloData& data = cyclo(n);
  std::vector<mpq_class> acc(n);
  for (const auto& [e, c] : *src) acc[mod_floor(e, n)] += c;
  return from_dense(n, reduce_exponents(data, acc));
}


CycScalar& CycScalar::operator+=(const CycScalar& other) {
  if (other.is_zero()) return *this;
  if (is_zero()) return *this = other;
  if (conductor_ == 1 && other.conductor_ == 1) {
    mpq_class s = terms_.front().second + other.terms_.front().second;
    terms_.clear();
    if (sgn(s) != 0) terms_.emplace_back(0, std::move(s));
    return *this;
  }
  const unsigned n = std::lcm(conductor_, other.conductor_);
  check_conductor(n);
  std::vector<mpq_class> a = dense(n);
  std::vector<mpq_class> b = other.dense(n);
  for (std::size_t i = 0; i < a.size(); ++i) a[i] += b[i];
  return *this = from_dense(n, std::move(a));
}

CycScalar& CycScalar::operator-=(const CycScalar& other) { return *this += -other; }

CycScalar CycScalar::operator-() const {
  CycScalar out = *this;
  for (auto& term : out.terms_) term.second = -term.second;
  return out;
}

CycScalar& CycScalar::operator*=(const CycScalar& other) {
  if (is_zero() || other.is_zero()) return *this = CycScalar();
  if (other.conductor_ == 1) {
    const mpq_class& s = other.terms_.front().second;
    for (auto& term : terms_) term.second *= s;
    return *this;
  }
  if (conductor_ == 1) {
    mpq_class s = terms_.front().second;
    *this = other;
    for (auto& term : terms_) term.second *= s;
    return *this;
  }
  const unsigned n = std::lcm(conductor_, other.conductor_);
  check_conductor(n);
  const CycloData& data = cyclo(n);
  const unsigned fa = n / conductor_;
  const unsigned fb = n / other.conductor_;
  std::vector<mpq_class> acc(n);
  for (const auto& [ka, ca] : terms_)
    for (const auto& [kb, cb] : other.terms_)
      acc[(static_cast<unsigned long long>(ka) * fa + static_cast<unsigned long long>(kb) * fb) % n] += ca * cb;
  return *this = from_dense(n, reduce_exponents(data, acc));
}

CycScalar& CycScalar::operator/=(const CycScalar& other) { return *this *= other.inverse(); }

CycScalar CycScalar::galois(long long a) const {
  if (conductor_ == 1) return *this;
  const unsigned n = conductor_;
  if (std::gcd(mod_floor(a, n), static_cast<long long>(n)) != 1)
    throw Error(ErrorCode::Usage, "Galois exponent not coprime to conductor");
  const CycloData& data = cyclo(n);
  std::vector<mpq_class> acc(n);
  for (const auto& [k, c] : terms_) acc[mod_floor(static_cast<long long>(k) * mod_floor(a, n), n)] += c;
  std::vector<mpq_class> d = reduce_exponents(data, acc);
  std::vector<Term> terms;
  for (unsigned k = 0; k < d.size(); ++k)
    if (sgn(d[k]) != 0) terms.emplace_back(k, std::move(d[k]));
  return CycScalar(n, std::move(terms));
}

CycScalar CycScalar::conjugate() const { return galois(-1); }

mpq_class CycScalar::trace() const {
  // Tr(zeta_n^k) is the Ramanujan sum mu(n/g) phi(n)/phi(n/g), g = gcd(n, k).
  const unsigned n = conductor_;
  mpq_class total = 0;
  for (const auto& [k, c] : terms_) {
    unsigned g = std::gcd(n, k == 0 ? n : k);
    unsigned r = n / g;
    total += c * mpq_class(moebius(r) * static_cast<long>(euler_phi(n) / euler_phi(r)));
  }
  return total;
}

CycScalar CycScalar::inverse() const {
  if (is_zero()) throw Error(ErrorCode::DivisionByZero, "division by zero");
  if (conductor_ == 1) return CycScalar(mpq_class(1) / terms_.front().second);
  const long long n = conductor_;
  CycScalar others(1L);
  for (long long a = 2; a < n; ++a)
    if (std::gcd(a, n) == 1) others *= galois(a);
  CycScalar norm = *this * others;
  return others * CycScalar(mpq_class(1) / norm.rational());
}

bool operator==(const CycScalar& a, const CycScalar& b) {
  if (a.conductor_ != b.conductor_ || a.terms_.size() != b.terms_.size()) return false;
  for (std::size_t i = 0; i < a.terms_.size(); ++i)
    if (a.terms_[i].first != b.terms_[i].first || a.terms_[i].second != b.terms_[i].second) return false;
  return true;
}

std::string CycScalar::to_string() const {
  if (terms_.empty()) return "0";
  std::string out;
  bool first = true;
  for (const auto& [k, c] : terms_) {
    mpq_class mag = abs(c);
    bool negative = sgn(c) < 0;
    std::string body;
    if (k == 0) {
      body = mag.get_str();
    } else {
      std::string root = "z" + std::to_string(conductor_);
      if (k != 1) root += "^" + std::to_string(k);
      body = mag == 1 ? root : mag.get_str() + "*" + root;
    }
    if (first) {
      out = negative ? "-" + body : body;
      first = false;
    } else {
      out += negative ? " - " : " + ";
      out += body;
    }
  }
  return out;
}

}  // namespace hopfgroup
