#include "hopfgroup/harness.hpp"

#include <algorithm>
#include <chrono>
#include <functional>
#include <set>

#include "hopfgroup/convalg.hpp"
#include "hopfgroup/dsl.hpp"
#include "hopfgroup/fourier.hpp"
#include "hopfgroup/operator.hpp"
#include "hopfgroup/tensor.hpp"

namespace hopfgroup {

namespace {

std::uint64_t fnv1a(std::string_view s) {
  std::uint64_t h = 1469598103934665603ULL;
  for (unsigned char c : s) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  return h;
}

int clamp_level(const Group& g, int n) { return std::clamp(n, g.min_level(), g.max_level()); }

}  // namespace

Generator::Generator(std::uint64_t seed, std::string_view stream, GroupPtr g, std::pair<int, int> levels,
                     std::size_t max_support)
    : group_(std::move(g)), levels_(levels), max_support_(std::max<std::size_t>(1, max_support)) {
  const std::uint64_t s = fnv1a(stream);
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(s), static_cast<std::uint32_t>(s >> 32)};
  rng_.seed(seq);
}

std::uint64_t Generator::below(std::uint64_t n) {
  if (n <= 1) return 0;
  const std::uint64_t threshold = (0 - n) % n;
  for (;;) {
    const std::uint64_t r = rng_();
    if (r >= threshold) return r % n;
  }
}

int Generator::level_in(int lo, int hi) {
  if (hi <= lo) return lo;
  return lo + static_cast<int>(below(static_cast<std::uint64_t>(hi - lo + 1)));
}

int Generator::level() { return level_in(levels_.first, levels_.second); }

CycScalar Generator::coefficient() {
  // Conductors divide 24, so products of pool values stay in Q(zeta_24).
  static const mpq_class rationals[] = {1, -1, 2, mpq_class(1, 2), mpq_class(-1, 3), mpq_class(3, 4), 5, -2};
  static const unsigned conductors[] = {3, 4, 6, 8, 12, 24};
  auto rational = [&] { return CycScalar(rationals[below(std::size(rationals))]); };
  auto root = [&] {
    const unsigned n = conductors[below(std::size(conductors))];
    return CycScalar::root_of_unity(n, static_cast<long long>(below(n)));
  };
  switch (below(4)) {
    case 0:
    case 1: return rational();
    case 2: return root();
    default: return rational() * root() + rational();
  }
}

const std::vector<GElem>& Generator::window(int n) {
  for (const auto& [level, pts] : windows_)
    if (level == n) return pts;
  std::vector<GElem> pts = group_->window(n, 1);
  if (pts.size() < 2) pts = group_->window(n, 2);
  windows_.emplace_back(n, std::move(pts));
  return windows_.back().second;
}

GElem Generator::point(int n) {
  const auto& pts = window(n);
  return pts[below(pts.size())];
}

BSFunction Generator::function(int lo, int hi, bool unit_coefficients) {
  const int n = level_in(lo, hi);
  const auto& pts = window(n);
  const std::size_t k = 1 + below(std::min(max_support_, pts.size()));
  CosetMap terms;
  while (terms.size() < k) {
    const GElem& x = pts[below(pts.size())];
    if (terms.count(x)) continue;
    terms.emplace(x, unit_coefficients ? CycScalar(1L) : coefficient());
  }
  return BSFunction::from_terms(group_, n, terms);
}

BSFunction Generator::function() { return function(levels_.first, levels_.second); }

const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names = {"hopf-axioms", "dual-axioms",     "integrals", "galois",
                                                 "grouplike",   "expectation",     "reconstruction",
                                                 "fourier",     "operator",        "membership"};
  return names;
}

std::pair<int, int> default_levels(const Group& g) {
  const std::string d = g.descriptor();
  std::pair<int, int> span{-1, 2};
  if (d == "zp:2") span = {0, 4};
  else if (d == "zp:3") span = {0, 3};
  else if (d == "qp:2") span = {-2, 2};
  else if (d == "qp:3") span = {-1, 2};
  else if (d.rfind("shift:", 0) == 0) span = {-1, 1};
  span.first = clamp_level(g, span.first);
  span.second = clamp_level(g, span.second);
  return span;
}

namespace {

using Detail = std::optional<std::string>;

struct Trial {
  std::vector<BSFunction> inputs;
  int level = 0;
  int outer = 0;  ///< window level for the operator suite
};

struct Check {
  std::string name;
  std::function<Detail(const Trial&)> pred;
  int limit = -1;  ///< trials that run this check; -1 means all
};

constexpr std::size_t kFailuresPerCheck = 3;
constexpr int kShrinkBudget = 400;

std::string clip(std::string s) {
  if (s.size() > 240) s = s.substr(0, 237) + "...";
  return s;
}

Detail expect_eq(const BSFunction& got, const BSFunction& want, const char* what) {
  if (got == want) return std::nullopt;
  return std::string(what) + ": got " + clip(format_function(got)) + ", expected " + clip(format_function(want));
}

Detail expect_eq(const CycScalar& got, const CycScalar& want, const char* what) {
  if (got == want) return std::nullopt;
  return std::string(what) + ": got " + got.to_string() + ", expected " + want.to_string();
}

Detail expect(bool ok, const std::string& what) {
  if (ok) return std::nullopt;
  return what;
}

Detail first_of(std::initializer_list<Detail> ds) {
  for (const Detail& d : ds)
    if (d) return d;
  return std::nullopt;
}

bool positive(const CycScalar& c) { return c == c.conjugate() && c.trace() > 0; }

template <class F>
BSFunction sum_pairs(const GroupPtr& g, const TensorDecomposition& t, F&& f) {
  BSFunction acc(g);
  for (const auto& [a, b] : t) acc = acc + f(a, b);
  return acc;
}

template <class F>
ConvElement sum_pairs(const GroupPtr& g, const ConvDecomposition& t, F&& f) {
  ConvElement acc{BSFunction(g)};
  for (const auto& [a, b] : t) acc = acc + f(a, b);
  return acc;
}

/// Deterministic evaluation points: e, some support reps, a small window.
std::vector<GElem> sample_points(const Trial& t, std::size_t cap) {
  const GroupPtr& g = t.inputs.front().group();
  std::set<GElem> pts{g->identity()};
  int level = t.level;
  for (const BSFunction& f : t.inputs) {
    if (!f.is_zero()) level = std::max(level, f.level());
    std::size_t taken = 0;
    for (const auto& term : f.terms()) {
      if (taken++ == 2) break;
      pts.insert(term.first);
    }
  }
  for (const GElem& x : g->window(clamp_level(*g, level), 1)) {
    if (pts.size() >= cap) break;
    pts.insert(x);
  }
  std::vector<GElem> out(pts.begin(), pts.end());
  if (out.size() > cap) out.resize(cap);
  return out;
}

Detail tensor_matches(const TensorDecomposition& t, const std::vector<GElem>& pts,
                      const std::function<CycScalar(const GElem&, const GElem&)>& want, const char* what) {
  for (const GElem& x : pts)
    for (const GElem& y : pts) {
      const CycScalar got = evaluate(t, x, y);
      const CycScalar expected = want(x, y);
      if (got != expected) return std::string(what) + ": mismatch " + got.to_string() + " vs " + expected.to_string();
    }
  return std::nullopt;
}

/// Compact open subgroup test on the support, by closure at a level where
/// every support coset is conjugation-stable.
bool closure_oracle(const BSFunction& f) {
  if (f.is_zero()) return false;
  const Group& g = *f.group();
  const int n = f.level();
  for (const auto& term : f.terms())
    if (term.second != CycScalar(1L)) return false;
  int m = n;
  for (int round = 0; round < 8; ++round) {
    int next = m;
    for (const auto& term : f.at_level(m)) {
      next = std::max({next, g.conj_level(term.first, n), g.conj_level(g.inv(term.first), n)});
    }
    next = clamp_level(g, next);
    if (next == m) break;
    m = next;
  }
  if (f(g.identity()) != CycScalar(1L)) return false;
  const CosetMap reps = f.at_level(m);
  for (const auto& x : reps) {
    if (f(g.inv(x.first)).is_zero()) return false;
    for (const auto& y : reps)
      if (f(g.mul(x.first, y.first)).is_zero()) return false;
  }
  return true;
}

Detail guarded(const Check& c, const Trial& t) {
  try {
    return c.pred(t);
  } catch (const Error& e) {
    return "error " + std::string(error_code_name(e.code())) + ": " + e.what();
  }
}

std::vector<BSFunction> shrink_candidates(const BSFunction& f) {
  std::vector<BSFunction> out;
  if (f.is_zero()) return out;
  out.emplace_back(f.group());
  if (f.terms().size() > 1)
    for (const auto& term : f.terms()) {
      CosetMap rest = f.terms();
      rest.erase(term.first);
      out.push_back(BSFunction::from_terms(f.group(), f.level(), rest));
    }
  const Group& g = *f.group();
  if (f.level() > g.min_level()) {
    CosetMap coarse;
    for (const auto& [rep, c] : f.terms()) coarse.emplace(g.canonical_rep(rep, f.level() - 1), c);
    out.push_back(BSFunction::from_terms(f.group(), f.level() - 1, coarse));
  }
  return out;
}

std::size_t weight(const std::vector<BSFunction>& inputs) {
  std::size_t w = 0;
  for (const BSFunction& f : inputs) w += f.terms().size() * 256 + static_cast<std::size_t>(f.level() + 128);
  return w;
}

std::pair<Trial, std::string> shrink(const Check& c, const Trial& t, std::string detail) {
  auto [inputs, why] = shrink_counterexample(
      t.inputs,
      [&](const std::vector<BSFunction>& xs) {
        Trial next = t;
        next.inputs = xs;
        return guarded(c, next);
      },
      std::move(detail));
  Trial out = t;
  out.inputs = std::move(inputs);
  return {std::move(out), std::move(why)};
}

struct Suite {
  std::size_t arity = 2;
  std::vector<Check> checks;
  /// Checks without random inputs, run once before the trials.
  std::vector<std::pair<Check, Trial>> fixed;
  /// Custom trial drawing; default draws `arity` random functions.
  std::function<Trial(Generator&, int)> draw;
  std::string skip_reason;
};

Trial default_draw(Generator& gen, std::size_t arity, int t) {
  Trial trial;
  trial.level = gen.level();
  for (std::size_t i = 0; i < arity; ++i) trial.inputs.push_back(gen.function());
  const GroupPtr& g = gen.group();
  const int h0 = clamp_level(*g, 0);
  // The degenerate inputs come first: 0, chi_{H_0}, one coset.
  if (t == 0) trial.inputs[0] = BSFunction(g);
  if (t == 1) trial.inputs[0] = subgroup_indicator(g, h0);
  if (t == 2) trial.inputs[0] = indicator(g, gen.point(trial.level), trial.level);
  return trial;
}

// ---------------------------------------------------------------------------
// Suites

Suite hopf_suite(const GroupPtr& g) {
  Suite s;
  s.arity = 3;
  s.checks.push_back({"counit1", [g](const Trial& t) {
                        const BSFunction &f = t.inputs[0], &h = t.inputs[1];
                        const BSFunction lhs = sum_pairs(g, coproduct_right(f, h),
                                                         [](const BSFunction& a, const BSFunction& b) { return counit(a) * b; });
                        return expect_eq(lhs, f * h, "(eps x id)(D(f)(1 x g)) = fg");
                      }});
  s.checks.push_back({"counit2", [g](const Trial& t) {
                        const BSFunction &f = t.inputs[0], &h = t.inputs[1];
                        const BSFunction lhs = sum_pairs(g, coproduct_left(f, h),
                                                         [](const BSFunction& a, const BSFunction& b) { return counit(b) * a; });
                        return expect_eq(lhs, f * h, "(id x eps)((f x 1)D(g)) = fg");
                      }});
  s.checks.push_back({"antipode1", [g](const Trial& t) {
                        const BSFunction &f = t.inputs[0], &h = t.inputs[1];
                        const BSFunction lhs = sum_pairs(g, coproduct_right(f, h),
                                                         [](const BSFunction& a, const BSFunction& b) { return antipode(a) * b; });
                        return expect_eq(lhs, counit(f) * h, "m(S x id)(D(f)(1 x g)) = eps(f)g");
                      }});
  s.checks.push_back({"antipode2", [g](const Trial& t) {
                        const BSFunction &f = t.inputs[0], &h = t.inputs[1];
                        const BSFunction lhs = sum_pairs(g, coproduct_left(f, h),
                                                         [](const BSFunction& a, const BSFunction& b) { return a * antipode(b); });
                        return expect_eq(lhs, counit(h) * f, "m(id x S)((f x 1)D(g)) = eps(g)f");
                      }});
  s.checks.push_back(
      {"coassociativity",
       [g](const Trial& t) -> Detail {
         const BSFunction &f = t.inputs[0], &h1 = t.inputs[1], &h2 = t.inputs[2];
         const TensorDecomposition outer = coproduct_right(f, h1);
         // (D x id): sum c(x) d(y) b(z) = f(xyz) h1(z) h2(y).
         // (id x D): sum a(x) c(y) d(z) = f(xyz) h1(yz) h2(z).
         struct Triple {
           BSFunction x, y, z;
         };
         std::vector<Triple> left, right;
         for (const auto& [a, b] : outer) {
           for (const auto& [c, d] : coproduct_right(a, h2)) left.push_back({c, d, b});
           for (const auto& [c, d] : coproduct_right(b, h2)) right.push_back({a, c, d});
         }
         const auto pts = sample_points(t, 7);
         for (const GElem& x : pts)
           for (const GElem& y : pts)
             for (const GElem& z : pts) {
               const GElem xyz = g->mul(g->mul(x, y), z);
               CycScalar l, r;
               for (const Triple& tr : left) l += tr.x(x) * tr.y(y) * tr.z(z);
               for (const Triple& tr : right) r += tr.x(x) * tr.y(y) * tr.z(z);
               if (l != f(xyz) * h1(z) * h2(y)) return "(D x id)D(f) disagrees with f(xyz) at a window point";
               if (r != f(xyz) * h1(g->mul(y, z)) * h2(z)) return "(id x D)D(f) disagrees with f(xyz) at a window point";
             }
         return std::nullopt;
       },
       25});
  return s;
}

Suite integral_suite(const GroupPtr& g, nlohmann::json& obs) {
  Suite s;
  obs["left_right_differ"] = 0;
  obs["wrong_side_violations"] = 0;
  s.checks.push_back({"right_invariance", [g](const Trial& t) {
                        const BSFunction &f = t.inputs[0], &h = t.inputs[1];
                        const BSFunction lhs = sum_pairs(g, coproduct_right(f, h), [](const BSFunction& a, const BSFunction& b) {
                          return integral(a, Side::Right) * b;
                        });
                        return expect_eq(lhs, integral(f, Side::Right) * h, "(mu_R x id)(D(f)(1 x g)) = mu_R(f)g");
                      }});
  s.checks.push_back({"left_invariance", [g](const Trial& t) {
                        const BSFunction &f = t.inputs[0], &h = t.inputs[1];
                        const BSFunction lhs = sum_pairs(g, coproduct_left(f, h), [](const BSFunction& a, const BSFunction& b) {
                          return integral(b, Side::Left) * a;
                        });
                        return expect_eq(lhs, integral(h, Side::Left) * f, "(id x mu_L)((f x 1)D(g)) = mu_L(g)f");
                      }});
  s.checks.push_back({"positivity", [](const Trial& t) -> Detail {
                        const BSFunction& f = t.inputs[0];
                        if (f.is_zero()) return std::nullopt;
                        for (Side side : {Side::Left, Side::Right})
                          if (!positive(integral(star(f) * f, side))) return "integral of |f|^2 is not positive";
                        return std::nullopt;
                      }});
  s.checks.push_back({"observe_sides", [g, &obs](const Trial& t) -> Detail {
                        const BSFunction &f = t.inputs[0], &h = t.inputs[1];
                        if (integral(f, Side::Left) != integral(f, Side::Right))
                          obs["left_right_differ"] = obs["left_right_differ"].get<int>() + 1;
                        const BSFunction wrong = sum_pairs(g, coproduct_right(f, h), [](const BSFunction& a, const BSFunction& b) {
                          return integral(a, Side::Left) * b;
                        });
                        if (wrong != integral(f, Side::Left) * h)
                          obs["wrong_side_violations"] = obs["wrong_side_violations"].get<int>() + 1;
                        return std::nullopt;
                      }});
  return s;
}

Suite galois_suite(const GroupPtr& g) {
  Suite s;
  auto round_trip = [g](GaloisMap which) {
    return [g, which](const Trial& t) -> Detail {
      const BSFunction &f = t.inputs[0], &h = t.inputs[1];
      const TensorDecomposition forward = which == GaloisMap::T1 ? coproduct_right(f, h) : coproduct_left(f, h);
      const TensorDecomposition back = galois_inverse(forward, which);
      if (!tensor_equal(g, back, {{f, h}})) return "inverse image differs from f x g";
      return tensor_matches(back, sample_points(t, 10), [&](const GElem& x, const GElem& y) { return f(x) * h(y); },
                            "inverse image at window points");
    };
  };
  s.checks.push_back({"T1_round_trip", round_trip(GaloisMap::T1)});
  s.checks.push_back({"T2_round_trip", round_trip(GaloisMap::T2)});
  return s;
}

Suite dual_suite(const GroupPtr& g, std::pair<int, int> levels) {
  Suite s;
  s.arity = 3;
  using CE = ConvElement;
  s.checks.push_back({"associativity",
                      [](const Trial& t) {
                        const CE a(t.inputs[0]), b(t.inputs[1]), c(t.inputs[2]);
                        return expect_eq(conv_mul(conv_mul(a, b), c).symbol(), conv_mul(a, conv_mul(b, c)).symbol(),
                                         "(ab)c = a(bc)");
                      },
                      50});
  s.checks.push_back({"counit1", [g](const Trial& t) {
                        const CE a(t.inputs[0]), b(t.inputs[1]);
                        const CE lhs = sum_pairs(g, dual_coproduct(a, b, Side::Right),
                                                 [](const CE& x, const CE& y) { return dual_counit(x) * y; });
                        return expect_eq(lhs.symbol(), conv_mul(a, b).symbol(), "(eps x id)(D(a)(1 x b)) = ab");
                      }});
  s.checks.push_back({"counit2", [g](const Trial& t) {
                        const CE a(t.inputs[0]), b(t.inputs[1]);
                        const CE lhs = sum_pairs(g, dual_coproduct(a, b, Side::Left),
                                                 [](const CE& x, const CE& y) { return dual_counit(y) * x; });
                        return expect_eq(lhs.symbol(), conv_mul(a, b).symbol(), "(id x eps)((a x 1)D(b)) = ab");
                      }});
  s.checks.push_back({"antipode1", [g](const Trial& t) {
                        const CE a(t.inputs[0]), b(t.inputs[1]);
                        const CE lhs = sum_pairs(g, dual_coproduct(a, b, Side::Right),
                                                 [](const CE& x, const CE& y) { return conv_mul(dual_antipode(x), y); });
                        return expect_eq(lhs.symbol(), (dual_counit(a) * b).symbol(), "m(S x id)(D(a)(1 x b)) = eps(a)b");
                      }});
  s.checks.push_back({"antipode2", [g](const Trial& t) {
                        const CE a(t.inputs[0]), b(t.inputs[1]);
                        const CE lhs = sum_pairs(g, dual_coproduct(a, b, Side::Left),
                                                 [](const CE& x, const CE& y) { return conv_mul(x, dual_antipode(y)); });
                        return expect_eq(lhs.symbol(), (dual_counit(b) * a).symbol(), "m(id x S)((a x 1)D(b)) = eps(b)a");
                      }});
  s.checks.push_back({"weight_invariance", [g](const Trial& t) {
                        const CE a(t.inputs[0]), b(t.inputs[1]);
                        const CE lhs = sum_pairs(g, dual_coproduct(a, b, Side::Right),
                                                 [](const CE& x, const CE& y) { return haar_weight(x) * y; });
                        return expect_eq(lhs.symbol(), (haar_weight(a) * b).symbol(), "(w x id)(D(a)(1 x b)) = w(a)b");
                      }});
  s.checks.push_back({"star_antimultiplicative", [](const Trial& t) {
                        const CE a(t.inputs[0]), b(t.inputs[1]);
                        return expect_eq(conv_star(conv_mul(a, b)).symbol(), conv_mul(conv_star(b), conv_star(a)).symbol(),
                                         "(ab)* = b* a*");
                      }});
  for (int n = levels.first; n <= levels.second; ++n) {
    Check c{"pH_level_" + std::to_string(n), [g, n](const Trial&) -> Detail {
              const CE p = projection_pH(g, n);
              const TensorDecomposition pp{{p.symbol(), p.symbol()}};
              return first_of({expect_eq(conv_mul(p, p).symbol(), p.symbol(), "p_H p_H = p_H"),
                               expect_eq(conv_star(p).symbol(), p.symbol(), "p_H* = p_H"),
                               expect(tensor_equal(g, symbols(dual_coproduct(p, p, Side::Right)), pp),
                                      "D(p)(1 x p) != p x p"),
                               expect(tensor_equal(g, symbols(dual_coproduct(p, p, Side::Left)), pp),
                                      "(p x 1)D(p) != p x p")});
            }};
    s.fixed.push_back({c, Trial{{projection_pH(g, n).symbol()}, n}});
  }
  return s;
}

Suite expectation_suite(const GroupPtr& g) {
  Suite s;
  s.arity = 3;
  s.checks.push_back({"expectation_laws", [g](const Trial& t) -> Detail {
                        const int n = t.level;
                        const BSFunction h = subgroup_indicator(g, n);
                        const ConvElement a(t.inputs[0]), b(t.inputs[1] * h), c(t.inputs[2] * h);
                        const ConvElement e = cond_expectation(a, n);
                        return first_of({expect_eq(cond_expectation(e, n).symbol(), e.symbol(), "E(E(a)) = E(a)"),
                                         expect_eq(e.symbol() * h, e.symbol(), "E(a) is supported in H"),
                                         expect_eq(cond_expectation(conv_mul(conv_mul(b, a), c), n).symbol(),
                                                   conv_mul(conv_mul(b, e), c).symbol(), "E(b a c) = b E(a) c"),
                                         expect_eq(vector_state_tau(e, n), vector_state_tau(a, n), "tau(E(a)) = tau(a)")});
                      }});
  return s;
}

Suite reconstruction_suite(const GroupPtr& g) {
  Suite s;
  s.arity = 1;
  s.checks.push_back({"reconstruction", [g](const Trial& t) -> Detail {
                        const BSFunction& f = t.inputs[0];
                        const int n = t.level;
                        const Reconstruction r = coset_reconstruction(ConvElement(f), n);
                        if (!r.equal) return "sum_x x E(x^-1 a) != a";
                        // Oracle: restrictions to the support cosets add back up to f.
                        std::set<GElem> cosets;
                        if (!f.is_zero())
                          for (const auto& term : f.at_level(std::max(n, f.level())))
                            cosets.insert(g->canonical_rep(term.first, n));
                        if (std::set<GElem>(r.cosets.begin(), r.cosets.end()) != cosets) return "coset set differs from the support";
                        BSFunction acc(g);
                        for (const GElem& x : cosets) acc = acc + f * indicator(g, x, n);
                        return expect_eq(acc, f, "sum of coset restrictions");
                      }});
  return s;
}

Suite fourier_suite(const GroupPtr& g) {
  Suite s;
  try {
    (void)fourier(subgroup_indicator(g, clamp_level(*g, 0)));
  } catch (const Error& e) {
    if (e.code() != ErrorCode::Unsupported) throw;
    s.skip_reason = e.what();
    return s;
  }
  s.checks.push_back({"round_trip", [](const Trial& t) {
                        return expect_eq(inverse_fourier(fourier(t.inputs[0])), t.inputs[0], "inverse(fourier(f)) = f");
                      }});
  s.checks.push_back({"reflection", [](const Trial& t) {
                        return expect_eq(fourier(fourier(t.inputs[0])), antipode(t.inputs[0]), "fourier(fourier(f)) = f(-x)");
                      }});
  s.checks.push_back({"plancherel", [](const Trial& t) {
                        const PlancherelResult r = plancherel_check(t.inputs[0]);
                        return expect_eq(r.dual_norm, r.norm, "Plancherel");
                      }});
  s.checks.push_back({"convolution_theorem",
                      [](const Trial& t) {
                        const BSFunction &f = t.inputs[0], &h = t.inputs[1];
                        return expect_eq(fourier(convolve(f, h)), fourier(f) * fourier(h), "fourier(f*g) = fourier(f)fourier(g)");
                      },
                      50});
  if (g->descriptor().rfind("qp:", 0) == 0) {
    const GroupPtr d = g->dual();
    s.fixed.push_back({Check{"fourier_chi_Zp",
                             [g, d](const Trial&) {
                               return expect_eq(fourier(subgroup_indicator(g, 0)), subgroup_indicator(d, 0),
                                                "fourier(chi_Zp) = chi_Zp");
                             }},
                       Trial{{subgroup_indicator(g, 0)}, 0}});
    for (int n = 1; n <= 2; ++n)
      s.fixed.push_back({Check{"fourier_chi_p" + std::to_string(n) + "Zp",
                               [g, d, n](const Trial&) {
                                 const CycScalar scale(mpq_class(1) / mpq_class(g->index(0, n)));
                                 return expect_eq(fourier(subgroup_indicator(g, n)), scale * subgroup_indicator(d, -n),
                                                  "fourier(chi_{p^n Zp}) = p^-n chi_{p^-n Zp}");
                               }},
                         Trial{{subgroup_indicator(g, n)}, n}});
  }
  return s;
}

Suite operator_suite(const GroupPtr& g, nlohmann::json& obs) {
  Suite s;
  obs["noncommuting_witnesses"] = 0;
  // Inputs f, h are supported in the window H_outer and no finer than level n.
  s.draw = [g](Generator& gen, int t) {
    Trial trial;
    const auto [lo, hi] = gen.levels();
    trial.level = gen.level();
    const int outer = clamp_level(*g, trial.level - 1 - static_cast<int>(gen.below(3)));
    trial.outer = outer;
    const BSFunction window = subgroup_indicator(g, outer);
    for (int i = 0; i < 2; ++i) trial.inputs.push_back(gen.function(lo, std::max(lo, trial.level)) * window);
    if (t == 0) trial.inputs[0] = BSFunction(g);
    if (t == 1) trial.inputs[0] = subgroup_indicator(g, trial.level);
    return trial;
  };
  auto window_of = [g](const Trial& t) { return subgroup_window(g, t.outer, t.level); };
  s.checks.push_back({"rank_one_and_commute", [g, window_of, &obs](const Trial& t) -> Detail {
                        const int n = t.level;
                        const Truncation tr = window_of(t);
                        const BSFunction h = subgroup_indicator(g, n);
                        const TruncMatrix conv = matrix_of_conv(h, tr), mult = matrix_of_mult(h, tr);
                        if (exact_rank(mult * conv) != 1) return "rank(M(chi_H) L(chi_H)) != 1";
                        if (!commutator_is_zero(conv, mult)) return "L(chi_H) and M(chi_H) do not commute";
                        for (const GElem& x : tr.reps) {
                          if (g->in_subgroup(x, n)) continue;
                          const CommutatorResult r = commutator(matrix_of_conv(indicator(g, x, n), tr), mult);
                          if (r.zero || !r.witness) return "translated symbol commutes with M(chi_H)";
                          obs["noncommuting_witnesses"] = obs["noncommuting_witnesses"].get<int>() + 1;
                          break;
                        }
                        return std::nullopt;
                      }});
  s.checks.push_back({"representation", [g, window_of](const Trial& t) -> Detail {
                        const Truncation tr = window_of(t);
                        const BSFunction &f = t.inputs[0], &h = t.inputs[1];
                        const TruncMatrix mf = matrix_of_conv(f, tr), mh = matrix_of_conv(h, tr);
                        if ((mf * mh).entries != matrix_of_conv(convolve(f, h), tr).entries)
                          return "M(f) M(g) != M(f * g)";
                        if (mf.entries.conjugate_transpose() != matrix_of_conv(conv_star(ConvElement(f)).symbol(), tr).entries)
                          return "M(f)^* != M(f#)";
                        return std::nullopt;
                      }});
  return s;
}

Suite membership_suite(const GroupPtr& g) {
  Suite s;
  s.arity = 1;
  s.checks.push_back({"membership_certificate", [g](const Trial& t) -> Detail {
                        const BSFunction& f = t.inputs[0];
                        const int n = t.level;
                        const MembershipCertificate cert = membership_certificate(f, n);
                        const BSFunction chi = subgroup_indicator(g, n);
                        const auto pts = sample_points(t, 10);
                        const int m = f.is_zero() ? n : std::max(n, f.level());
                        const std::size_t support_count = f.is_zero() ? 0 : f.at_level(m).size();
                        return first_of(
                            {tensor_matches(cert.right, pts,
                                            [&](const GElem& x, const GElem& y) { return f(g->mul(x, y)) * chi(y); },
                                            "f(xy) chi_H(y)"),
                             tensor_matches(cert.left, pts,
                                            [&](const GElem& x, const GElem& y) { return f(y) * chi(g->mul(x, y)); },
                                            "f(y) chi_H(xy)"),
                             expect(cert.right.size() <= g->index(n, m), "f(xy) chi_H(y) certificate longer than [H_n:H_m]"),
                             expect(cert.left.size() <= support_count, "f(y) chi_H(xy) certificate longer than the support")});
                      }});
  s.checks.push_back({"dual_membership_certificate", [g](const Trial& t) -> Detail {
                        const BSFunction& f = t.inputs[0];
                        const int n = t.level;
                        const DualCertificate cert = dual_membership_certificate(ConvElement(f), n);
                        const BSFunction p = projection_pH(g, n).symbol();
                        const auto pts = sample_points(t, 10);
                        const int m = f.is_zero() ? n : std::max(n, f.level());
                        const std::size_t support_count = f.is_zero() ? 0 : f.at_level(m).size();
                        int stable = m;
                        for (const GElem& y : g->coset_reps(n, m)) stable = std::max(stable, g->conj_level(y, m));
                        stable = clamp_level(*g, stable);
                        return first_of(
                            {tensor_matches(symbols(cert.right), pts,
                                            [&](const GElem& x, const GElem& z) { return f(x) * p(g->mul(g->inv(x), z)); },
                                            "f(x) p(x^-1 z)"),
                             tensor_matches(symbols(cert.left), pts,
                                            [&](const GElem& w, const GElem& y) {
                                              return f(g->mul(w, g->inv(y))) * CycScalar(mpq_class(1) / g->modular(y)) * p(y);
                                            },
                                            "f(w y^-1) D(y^-1) p(y)"),
                             expect(cert.right.size() <= support_count, "dual right certificate longer than the support"),
                             expect(cert.left.size() <= g->index(n, stable), "dual left certificate longer than [H_n:H_m]")});
                      }});
  return s;
}

Suite grouplike_suite(const GroupPtr& g, nlohmann::json& obs) {
  Suite s;
  s.arity = 1;
  obs["fixed_negative_rejected"] = 0;
  s.draw = [](Generator& gen, int t) {
    Trial trial = default_draw(gen, 1, t);
    if (gen.below(2) == 0) {
      const auto [lo, hi] = gen.levels();
      trial.inputs[0] = gen.function(lo, hi, true);
    }
    return trial;
  };
  s.checks.push_back({"subgroup_indicator", [g](const Trial& t) -> Detail {
                        const GroupLikeVerdict v = is_group_like(subgroup_indicator(g, t.level));
                        if (!v.yes) return "chi_{H_n} rejected: " + v.reason;
                        return expect(v.subgroup_level == t.level, "subgroup level not recovered");
                      }});
  s.checks.push_back({"assembled_union", [g](const Trial& t) -> Detail {
                        const int n = t.level;
                        if (n - 1 < g->min_level()) return std::nullopt;
                        BSFunction u(g);
                        for (const GElem& r : g->coset_reps(n - 1, n)) u = u + indicator(g, r, n);
                        const GroupLikeVerdict v = is_group_like(u);
                        if (!v.yes) return "union of the cosets of H_n in H_{n-1} rejected: " + v.reason;
                        return expect(v.subgroup_level == n - 1, "assembled subgroup level not recovered");
                      }});
  s.checks.push_back({"closure_oracle", [](const Trial& t) -> Detail {
                        const GroupLikeVerdict v = is_group_like(t.inputs[0]);
                        const bool oracle = closure_oracle(t.inputs[0]);
                        if (v.yes != oracle)
                          return std::string("verdict ") + (v.yes ? "yes" : "no") + " but closure check says " +
                                 (oracle ? "yes" : "no");
                        return std::nullopt;
                      }});
  s.checks.push_back({"translated_coset", [g](const Trial& t) -> Detail {
                        for (const GElem& x : g->window(t.level, 1)) {
                          if (g->in_subgroup(x, t.level)) continue;
                          if (is_group_like(indicator(g, x, t.level)).yes) return "chi_{xH} with x outside H accepted";
                          break;
                        }
                        return std::nullopt;
                      }});
  auto negative = [g, &obs](const char* name, BSFunction f) {
    return std::pair<Check, Trial>{
        Check{name,
              [&obs](const Trial& t) -> Detail {
                const GroupLikeVerdict v = is_group_like(t.inputs[0]);
                if (v.yes) return "non-closed union accepted";
                obs["fixed_negative_rejected"] = obs["fixed_negative_rejected"].get<int>() + 1;
                return expect(v.reason == "support not closed", "rejected for reason '" + v.reason + "'");
              }},
        Trial{{std::move(f)}, 0}};
  };
  const std::string d = g->descriptor();
  if (d == "qp:2") {
    s.fixed.push_back(negative("fixed_negative_qp2", indicator(g, g->parse_element("0"), 0) +
                                                         indicator(g, g->parse_element("1/2"), 1)));
    BSFunction assembled(g);
    for (const char* x : {"0", "1/2", "1", "3/2"}) assembled = assembled + indicator(g, g->parse_element(x), 1);
    s.fixed.push_back({Check{"fixed_union_of_cosets",
                             [](const Trial& t) -> Detail {
                               const GroupLikeVerdict v = is_group_like(t.inputs[0]);
                               if (!v.yes) return "2^-1 Z_2 rejected: " + v.reason;
                               return expect(v.subgroup_level == -1, "2^-1 Z_2 not recognised as H_-1");
                             }},
                       Trial{{assembled}, 1}});
  }
  if (d == "finite:S3") {
    BSFunction triple(g);
    for (const char* x : {"123", "213", "132"}) triple = triple + indicator(g, g->parse_element(x), 0);
    s.fixed.push_back(negative("fixed_negative_S3", triple));
  }
  return s;
}

}  // namespace

std::pair<std::vector<BSFunction>, std::string> shrink_counterexample(std::vector<BSFunction> inputs,
                                                                      const FailurePredicate& fails,
                                                                      std::string detail) {
  int budget = kShrinkBudget;
  bool progress = true;
  while (progress && budget > 0) {
    progress = false;
    for (std::size_t i = 0; i < inputs.size() && !progress; ++i)
      for (BSFunction& cand : shrink_candidates(inputs[i])) {
        if (--budget < 0) break;
        std::vector<BSFunction> next = inputs;
        next[i] = std::move(cand);
        if (weight(next) >= weight(inputs)) continue;
        std::optional<std::string> d;
        try {
          d = fails(next);
        } catch (const Error& e) {
          d = "error " + std::string(error_code_name(e.code())) + ": " + e.what();
        }
        if (d) {
          inputs = std::move(next);
          detail = *d;
          progress = true;
          break;
        }
      }
  }
  return {std::move(inputs), std::move(detail)};
}

SuiteReport run_suite(std::string_view suite, const GenConfig& cfg, const std::string& group) {
  const auto& names = suite_names();
  if (std::find(names.begin(), names.end(), suite) == names.end())
    throw Error(ErrorCode::Usage, "unknown suite '" + std::string(suite) + "'");
  const auto start = std::chrono::steady_clock::now();
  SuiteReport report;
  report.suite = std::string(suite);
  report.seed = cfg.seed;
  report.trials = cfg.trials;
  GroupPtr g = make_group(group);
  report.group = g->descriptor();
  std::pair<int, int> levels = default_levels(*g);
  if (cfg.levels) levels = {clamp_level(*g, cfg.levels->first), clamp_level(*g, cfg.levels->second)};
  if (levels.second < levels.first) std::swap(levels.first, levels.second);

  Suite s;
  if (suite == "hopf-axioms") s = hopf_suite(g);
  else if (suite == "integrals") s = integral_suite(g, report.observations);
  else if (suite == "galois") s = galois_suite(g);
  else if (suite == "dual-axioms") s = dual_suite(g, levels);
  else if (suite == "expectation") s = expectation_suite(g);
  else if (suite == "reconstruction") s = reconstruction_suite(g);
  else if (suite == "fourier") s = fourier_suite(g);
  else if (suite == "operator") s = operator_suite(g, report.observations);
  else if (suite == "membership") s = membership_suite(g);
  else s = grouplike_suite(g, report.observations);

  if (!s.skip_reason.empty()) {
    report.status = "skipped";
    report.reason = s.skip_reason;
    report.observations = nlohmann::json::object();
    report.wall_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
    return report;
  }

  std::vector<std::size_t> counts(s.checks.size(), 0);
  auto record = [&](const Check& c, const Trial& t, const std::string& detail, bool do_shrink) {
    auto [small, why] = do_shrink ? shrink(c, t, detail) : std::pair<Trial, std::string>{t, detail};
    report.failures.push_back({c.name, small.level, std::move(small.inputs), std::move(why)});
  };
  for (const auto& [check, trial] : s.fixed)
    if (Detail d = guarded(check, trial)) record(check, trial, *d, false);

  Generator gen(cfg.seed, report.suite + "|" + report.group, g, levels, cfg.max_support);
  for (int t = 0; t < cfg.trials; ++t) {
    const Trial trial = s.draw ? s.draw(gen, t) : default_draw(gen, s.arity, t);
    for (std::size_t i = 0; i < s.checks.size(); ++i) {
      const Check& c = s.checks[i];
      if (c.limit >= 0 && t >= c.limit) continue;
      if (Detail d = guarded(c, trial)) {
        if (counts[i]++ < kFailuresPerCheck) record(c, trial, *d, true);
      }
    }
  }
  report.status = report.failures.empty() ? "pass" : "fail";
  report.wall_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
  return report;
}

std::vector<SuiteReport> run_suite(std::string_view suite, const GenConfig& cfg) {
  std::vector<SuiteReport> out;
  for (const std::string& g : cfg.groups) out.push_back(run_suite(suite, cfg, g));
  return out;
}

nlohmann::json to_json(const SuiteReport& r, bool timing) {
  nlohmann::json failures = nlohmann::json::array();
  for (const Failure& f : r.failures) {
    nlohmann::json inputs = nlohmann::json::array();
    for (const BSFunction& x : f.inputs) inputs.push_back(function_to_json(x));
    failures.push_back({{"check", f.check}, {"level", f.level}, {"inputs", inputs}, {"detail", f.detail}});
  }
  nlohmann::json j = {{"suite", r.suite},   {"group", r.group},       {"seed", r.seed},
                      {"trials", r.trials}, {"failures", failures}, {"status", r.status}};
  if (!r.reason.empty()) j["reason"] = r.reason;
  if (!r.observations.empty()) j["observations"] = r.observations;
  if (timing) j["wall_ms"] = r.wall_ms;
  return j;
}

}  // namespace hopfgroup
