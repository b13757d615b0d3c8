#include "hopfgroup/schwartz.hpp"

#include <algorithm>
#include <set>

#include "hopfgroup/tensor.hpp"

namespace hopfgroup {

namespace {

bool same_group(const GroupPtr& a, const GroupPtr& b) { return a == b || a->same_as(*b); }

void add_term(CosetMap& terms, const GElem& key, const CycScalar& c) {
  if (c.is_zero()) return;
  auto [it, inserted] = terms.emplace(key, c);
  if (!inserted) {
    it->second += c;
    if (it->second.is_zero()) terms.erase(it);
  }
}

// One coarsening step; false when some parent coset is not uniformly filled.
bool coarsen_once(const Group& g, int n, CosetMap& terms) {
  if (n <= g.min_level()) return false;
  const mpz_class children = g.index(n - 1, n);
  struct Parent {
    mpz_class count = 0;
    CycScalar value;
    bool uniform = true;
  };
  std::map<GElem, Parent> parents;
  for (const auto& [rep, c] : terms) {
    Parent& p = parents[g.canonical_rep(rep, n - 1)];
    if (p.count == 0) p.value = c;
    else if (p.value != c) return false;
    ++p.count;
  }
  CosetMap coarse;
  for (auto& [rep, p] : parents) {
    if (p.count != children) return false;
    coarse.emplace(rep, std::move(p.value));
  }
  terms = std::move(coarse);
  return true;
}

void check_level(const Group& g, int n) { g.require_level(n); }

}  // namespace

int base_level(const Group& g) { return std::clamp(0, g.min_level(), g.max_level()); }

void require_same_group(const BSFunction& a, const BSFunction& b) {
  if (!same_group(a.group(), b.group())) require_same_group(*a.group(), *b.group());
}

BSFunction::BSFunction(GroupPtr g) : group_(std::move(g)), level_(base_level(*group_)) {}

BSFunction BSFunction::from_terms(GroupPtr g, int level, const CosetMap& terms) {
  check_level(*g, level);
  CosetMap reduced;
  for (const auto& [rep, c] : terms) add_term(reduced, g->canonical_rep(rep, level), c);
  if (reduced.empty()) return BSFunction(std::move(g));
  int n = level;
  while (coarsen_once(*g, n, reduced)) --n;
  return BSFunction(std::move(g), n, std::move(reduced));
}

CosetMap BSFunction::at_level(int n) const {
  if (n == level_) return terms_;
  if (terms_.empty()) {
    group_->require_level(n);
    return {};
  }
  if (n < level_) {
    throw Error(ErrorCode::Level, "cannot coarsen a level-" + std::to_string(level_) + " function to level " +
                                      std::to_string(n));
  }
  group_->require_level(n);
  const std::vector<GElem> sub = group_->coset_reps(level_, n);
  CosetMap out;
  for (const auto& [rep, c] : terms_)
    for (const GElem& s : sub) out.emplace(group_->canonical_rep(group_->mul(rep, s), n), c);
  return out;
}

CycScalar BSFunction::operator()(const GElem& x) const {
  auto it = terms_.find(group_->canonical_rep(x, level_));
  return it == terms_.end() ? CycScalar() : it->second;
}

bool operator==(const BSFunction& a, const BSFunction& b) {
  if (!same_group(a.group_, b.group_)) return false;
  if (a.is_zero() || b.is_zero()) return a.is_zero() && b.is_zero();
  return a.level_ == b.level_ && a.terms_ == b.terms_;
}

BSFunction indicator(GroupPtr g, const GElem& x, int n) {
  g->validate(x);
  return BSFunction::from_terms(g, n, {{x, CycScalar(1L)}});
}

BSFunction subgroup_indicator(GroupPtr g, int n) {
  GElem e = g->identity();
  return indicator(std::move(g), e, n);
}

BSFunction from_quotient_table(GroupPtr g, int n, const CosetMap& table) {
  for (const auto& [rep, c] : table) g->validate(rep);
  std::set<GElem> seen;
  for (const auto& [rep, c] : table)
    if (!seen.insert(g->canonical_rep(rep, n)).second)
      throw Error(ErrorCode::Validation, "quotient table lists coset " + g->format_element(rep) + " twice");
  return BSFunction::from_terms(std::move(g), n, table);
}

void validate_rep(const Group& g, const FiniteRep& rep) {
  g.require_level(rep.outer_level);
  g.require_level(rep.level);
  if (rep.outer_level > rep.level) throw Error(ErrorCode::Validation, "representation levels are reversed");
  const std::vector<GElem> reps = g.coset_reps(rep.outer_level, rep.level);
  if (rep.images.size() != reps.size())
    throw Error(ErrorCode::Validation, "representation must list exactly one matrix per coset of the quotient");
  std::size_t dim = 0;
  for (const GElem& r : reps) {
    auto it = rep.images.find(r);
    if (it == rep.images.end())
      throw Error(ErrorCode::Validation, "representation has no matrix for coset " + g.format_element(r));
    if (g.conj_level(r, rep.level) > rep.level)
      throw Error(ErrorCode::Validation, "level " + std::to_string(rep.level) + " is not normal in level " +
                                             std::to_string(rep.outer_level));
    const Matrix& m = it->second;
    if (dim == 0) dim = m.rows();
    if (m.rows() != dim || m.cols() != dim || dim == 0)
      throw Error(ErrorCode::Validation, "representation matrices must be square of one size");
    if (!(m * m.conjugate_transpose() == Matrix::identity(dim)))
      throw Error(ErrorCode::Validation, "representation matrix at " + g.format_element(r) + " is not unitary");
  }
  for (const GElem& a : reps)
    for (const GElem& b : reps) {
      const GElem ab = g.canonical_rep(g.mul(a, b), rep.level);
      if (!(rep.images.at(ab) == rep.images.at(a) * rep.images.at(b)))
        throw Error(ErrorCode::Validation, "representation is not a homomorphism at (" + g.format_element(a) + ", " +
                                               g.format_element(b) + ")");
    }
}

BSFunction matrix_coefficient(GroupPtr g, const FiniteRep& rep, std::size_t i, std::size_t j) {
  validate_rep(*g, rep);
  CosetMap table;
  for (const auto& [r, m] : rep.images) {
    if (i >= m.rows() || j >= m.cols()) throw Error(ErrorCode::Range, "matrix coefficient index out of range");
    table.emplace(r, m(i, j));
  }
  return BSFunction::from_terms(std::move(g), rep.level, table);
}

namespace {

template <typename Combine>
BSFunction combine(const BSFunction& a, const BSFunction& b, Combine op) {
  require_same_group(a, b);
  const int n = std::max(a.level(), b.level());
  const CosetMap ta = a.at_level(n), tb = b.at_level(n);
  CosetMap out;
  auto ia = ta.begin(), ib = tb.begin();
  const CycScalar zero;
  while (ia != ta.end() || ib != tb.end()) {
    if (ib == tb.end() || (ia != ta.end() && ia->first < ib->first)) {
      add_term(out, ia->first, op(ia->second, zero));
      ++ia;
    } else if (ia == ta.end() || ib->first < ia->first) {
      add_term(out, ib->first, op(zero, ib->second));
      ++ib;
    } else {
      add_term(out, ia->first, op(ia->second, ib->second));
      ++ia;
      ++ib;
    }
  }
  return BSFunction::from_terms(a.group(), n, out);
}

template <typename Map>
BSFunction map_coefficients(const BSFunction& f, Map op) {
  CosetMap out;
  for (const auto& [rep, c] : f.terms()) add_term(out, rep, op(c));
  return BSFunction::from_terms(f.group(), f.level(), out);
}

}  // namespace

BSFunction operator+(const BSFunction& a, const BSFunction& b) {
  return combine(a, b, [](const CycScalar& x, const CycScalar& y) { return x + y; });
}

BSFunction operator-(const BSFunction& a, const BSFunction& b) {
  return combine(a, b, [](const CycScalar& x, const CycScalar& y) { return x - y; });
}

BSFunction operator-(const BSFunction& a) {
  return map_coefficients(a, [](const CycScalar& c) { return -c; });
}

BSFunction operator*(const BSFunction& a, const BSFunction& b) {
  return combine(a, b, [](const CycScalar& x, const CycScalar& y) {
    return (x.is_zero() || y.is_zero()) ? CycScalar() : x * y;
  });
}

BSFunction operator*(const CycScalar& c, const BSFunction& f) {
  return map_coefficients(f, [&c](const CycScalar& v) { return c * v; });
}

BSFunction star(const BSFunction& f) {
  return map_coefficients(f, [](const CycScalar& c) { return c.conjugate(); });
}

BSFunction left_translate(const BSFunction& f, const GElem& x) {
  const Group& g = *f.group();
  g.validate(x);
  CosetMap out;
  for (const auto& [rep, c] : f.terms()) add_term(out, g.mul(x, rep), c);
  return BSFunction::from_terms(f.group(), f.level(), out);
}

BSFunction right_translate(const BSFunction& f, const GElem& x) {
  const Group& g = *f.group();
  g.validate(x);
  if (f.is_zero()) return f;
  // supp f_x = (supp f) x^{-1}; each r H_n x^{-1} is a union of level-m cosets.
  const GElem xi = g.inv(x);
  const int n = f.level();
  const int m = g.conj_level(xi, n);
  CosetMap out;
  for (const auto& [rep, c] : f.terms())
    for (const GElem& y : g.cover_right(rep, n, xi, m)) add_term(out, y, c);
  return BSFunction::from_terms(f.group(), m, out);
}

BSFunction translate(const BSFunction& f, const GElem& x, Side side) {
  return side == Side::Left ? left_translate(f, x) : right_translate(f, x);
}

BSFunction antipode(const BSFunction& f) {
  if (f.is_zero()) return f;
  const Group& g = *f.group();
  const int n = f.level();
  // (r H_n)^{-1} = H_n r^{-1}, a union of level-m cosets once r H_m r^{-1} ⊆ H_n.
  int m = g.min_level();
  for (const auto& [rep, c] : f.terms()) m = std::max(m, g.conj_level(g.inv(rep), n));
  const GElem e = g.identity();
  CosetMap out;
  for (const auto& [rep, c] : f.terms())
    for (const GElem& y : g.cover_right(e, n, g.inv(rep), m)) add_term(out, y, c);
  return BSFunction::from_terms(f.group(), m, out);
}

CycScalar counit(const BSFunction& f) { return f(f.group()->identity()); }

CycScalar integral(const BSFunction& f, Side side) {
  const Group& g = *f.group();
  CycScalar total;
  for (const auto& [rep, c] : f.terms()) {
    mpq_class weight = g.measure(f.level());
    if (side == Side::Right) weight /= g.modular(rep);
    total += c * CycScalar(weight);
  }
  return total;
}

int left_invariance_level(const BSFunction& f) {
  const Group& g = *f.group();
  const int n = f.level();
  int level = n;
  for (const auto& [rep, c] : f.terms()) level = std::max(level, g.conj_level(g.inv(rep), n));
  return level;
}

namespace {

void push_pair(TensorDecomposition& out, BSFunction a, BSFunction b) {
  if (a.is_zero() || b.is_zero()) return;
  out.emplace_back(std::move(a), std::move(b));
}

// Smallest m >= start such that conj_level(x_j, target) <= m for every
// level-m support rep x_j of f (the reps change with m, hence the loop).
int stable_decomposition_level(const BSFunction& f, int start, int target) {
  const Group& g = *f.group();
  int m = start;
  for (;;) {
    int need = m;
    for (const auto& [rep, c] : f.at_level(m)) need = std::max(need, g.conj_level(rep, target));
    if (need == m) return m;
    m = need;
  }
}

}  // namespace

TensorDecomposition coproduct_right(const BSFunction& f, const BSFunction& g) {
  require_same_group(f, g);
  TensorDecomposition out;
  if (f.is_zero() || g.is_zero()) return out;
  // f is right-H_m-invariant for m >= level(f).
  const int m = std::max(f.level(), g.level());
  for (const auto& [y, d] : g.at_level(m))
    push_pair(out, right_translate(f, y), d * indicator(g.group(), y, m));
  return out;
}

TensorDecomposition coproduct_left(const BSFunction& f, const BSFunction& g) {
  require_same_group(f, g);
  TensorDecomposition out;
  if (f.is_zero() || g.is_zero()) return out;
  // Need g(x_j h y) = g(x_j y) for h in H_m: x_j H_m x_j^{-1} ⊆ H_L.
  const int target = left_invariance_level(g);
  const int m = stable_decomposition_level(f, std::max(f.level(), target), target);
  const Group& grp = *f.group();
  for (const auto& [x, c] : f.at_level(m))
    push_pair(out, c * indicator(f.group(), x, m), left_translate(g, grp.inv(x)));
  return out;
}

TensorDecomposition galois_inverse(const TensorDecomposition& t, GaloisMap which) {
  TensorDecomposition out;
  for (const auto& [a, b] : t) {
    require_same_group(a, b);
    if (a.is_zero() || b.is_zero()) continue;
    const Group& grp = *a.group();
    if (which == GaloisMap::T1) {
      // a(x y^{-1}) b(y): for y = y_k h need y_k H_m y_k^{-1} ⊆ H_{level(a)}.
      const int m = stable_decomposition_level(b, std::max(a.level(), b.level()), a.level());
      for (const auto& [y, d] : b.at_level(m))
        push_pair(out, right_translate(a, grp.inv(y)), d * indicator(b.group(), y, m));
    } else {
      // a(x) b(x^{-1} y): b must be left-H_m-invariant.
      const int m = std::max(a.level(), left_invariance_level(b));
      for (const auto& [x, c] : a.at_level(m))
        push_pair(out, c * indicator(a.group(), x, m), left_translate(b, x));
    }
  }
  return out;
}

GroupLikeVerdict is_group_like(const BSFunction& p) {
  GroupLikeVerdict v;
  v.level = p.level();
  for (const auto& [rep, c] : p.terms()) v.support.push_back(rep);
  if (p.is_zero()) {
    v.reason = "zero function";
    return v;
  }
  if (p * p != p) {
    v.reason = "not idempotent";
    return v;
  }
  if (star(p) != p) {
    v.reason = "not self-adjoint";
    return v;
  }
  const TensorDecomposition pp{{p, p}};
  if (!tensor_equal(p.group(), coproduct_right(p, p), pp) || !tensor_equal(p.group(), coproduct_left(p, p), pp)) {
    v.reason = "support not closed";
    return v;
  }
  v.yes = true;
  if (p == subgroup_indicator(p.group(), p.level())) v.subgroup_level = p.level();
  return v;
}

std::size_t translate_span_dim(const BSFunction& f, int n) {
  const Group& g = *f.group();
  g.require_level(n);
  if (f.is_zero()) return 0;
  const int fine = left_invariance_level(f);
  if (fine <= n) return 1;
  std::vector<BSFunction> translates;
  int level = f.level();
  for (const GElem& x : g.coset_reps(n, fine)) {
    translates.push_back(left_translate(f, x));
    level = std::max(level, translates.back().level());
  }
  std::vector<CosetMap> rows;
  std::map<GElem, std::size_t> columns;
  for (const BSFunction& t : translates) {
    rows.push_back(t.at_level(level));
    for (const auto& [rep, c] : rows.back()) columns.emplace(rep, 0);
  }
  std::size_t col = 0;
  for (auto& [rep, idx] : columns) idx = col++;
  Matrix m(rows.size(), columns.size());
  for (std::size_t r = 0; r < rows.size(); ++r)
    for (const auto& [rep, c] : rows[r]) m(r, columns.at(rep)) = c;
  return exact_rank(std::move(m));
}

std::vector<GElem> support_cosets(const BSFunction& f, int n) {
  const Group& g = *f.group();
  g.require_level(n);
  std::set<GElem> reps;
  for (const auto& [rep, c] : f.at_level(std::max(n, f.level()))) reps.insert(g.canonical_rep(rep, n));
  return {reps.begin(), reps.end()};
}

MembershipCertificate membership_certificate(const BSFunction& f, int n) {
  const BSFunction chi = subgroup_indicator(f.group(), n);
  MembershipCertificate cert;
  cert.right = coproduct_right(f, chi);
  cert.left = coproduct_right(chi, f);
  cert.support = support_cosets(f, n);
  return cert;
}

BSFunction local_unit(const std::vector<BSFunction>& fs) {
  if (fs.empty()) throw Error(ErrorCode::Usage, "local_unit needs at least one function");
  int level = fs.front().level();
  for (const BSFunction& f : fs) {
    require_same_group(fs.front(), f);
    level = std::max(level, f.level());
  }
  CosetMap out;
  for (const BSFunction& f : fs)
    for (const auto& [rep, c] : f.at_level(level)) out[rep] = CycScalar(1L);
  return BSFunction::from_terms(fs.front().group(), level, out);
}

}  // namespace hopfgroup
