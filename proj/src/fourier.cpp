#include "hopfgroup/fourier.hpp"

#include <algorithm>

namespace hopfgroup {

namespace {

void require_abelian(const Group& g) {
  if (!g.is_abelian()) throw Error(ErrorCode::Unsupported, "group not abelian: " + g.descriptor());
}

// integral f(x) w(<xi, x>) dx with w the identity or complex conjugation.
BSFunction transform(const BSFunction& f, bool conjugate) {
  const Group& g = *f.group();
  require_abelian(g);
  GroupPtr dual = g.dual();
  if (f.is_zero()) return BSFunction(dual);
  // Support lies in the annihilator of H_n; xi -> <xi, r> is constant on
  // level pairing_level(r) cosets.
  const int n = f.level();
  int level = g.annihilator_level(n);
  for (const auto& [r, c] : f.terms()) level = std::max(level, g.pairing_level(r));
  const CycScalar mu(g.measure(n));
  CosetMap out;
  for (const GElem& xi : g.annihilator_reps(n, level)) {
    CycScalar value;
    for (const auto& [r, c] : f.terms()) {
      const CycScalar chi = g.pairing(xi, r);
      value += c * (conjugate ? chi.conjugate() : chi);
    }
    if (!value.is_zero()) out.emplace(xi, value * mu);
  }
  return BSFunction::from_terms(dual, level, out);
}

}  // namespace

CycScalar character_value(const GroupPtr& g, const GElem& xi, const GElem& x) {
  require_abelian(*g);
  g->validate(x);
  g->dual()->validate(xi);
  return g->pairing(xi, x);
}

BSFunction fourier(const BSFunction& f) { return transform(f, true); }

BSFunction inverse_fourier(const BSFunction& g) { return transform(g, false); }

PlancherelResult plancherel_check(const BSFunction& f) {
  const BSFunction hat = fourier(f);
  PlancherelResult r;
  r.norm = integral(star(f) * f, Side::Left);
  r.dual_norm = integral(star(hat) * hat, Side::Left);
  r.equal = (r.norm == r.dual_norm);
  return r;
}

}  // namespace hopfgroup
