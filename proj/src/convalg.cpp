#include "hopfgroup/convalg.hpp"

#include <algorithm>

namespace hopfgroup {

namespace {

// f(x) * Delta(x)^power, power = +-1; Delta is constant on left cosets.
BSFunction modular_twist(const BSFunction& f, int power) {
  const Group& g = *f.group();
  CosetMap out;
  for (const auto& [rep, c] : f.terms()) {
    mpq_class d = g.modular(rep);
    if (power < 0) d = 1 / d;
    out.emplace(rep, c * CycScalar(d));
  }
  return BSFunction::from_terms(f.group(), f.level(), out);
}

ConvDecomposition wrap(const TensorDecomposition& t) {
  ConvDecomposition out;
  for (const auto& [a, b] : t) out.emplace_back(ConvElement(a), ConvElement(b));
  return out;
}

}  // namespace

BSFunction convolve(const BSFunction& f, const BSFunction& g) {
  require_same_group(f, g);
  if (f.is_zero() || g.is_zero()) return BSFunction(f.group());
  const Group& grp = *f.group();
  // g(h^{-1} x_j^{-1} z) = g(x_j^{-1} z) for h in H_m once m >= left_invariance_level(g).
  const int m = std::max(f.level(), left_invariance_level(g));
  const CycScalar mu(grp.measure(m));
  // Left translation maps level-n cosets to level-n cosets, so accumulate at level(g).
  CosetMap out;
  for (const auto& [x, c] : f.at_level(m)) {
    const CycScalar weight = c * mu;
    for (const auto& [r, d] : g.terms()) {
      const GElem key = grp.canonical_rep(grp.mul(x, r), g.level());
      auto [it, inserted] = out.emplace(key, weight * d);
      if (!inserted) it->second += weight * d;
    }
  }
  return BSFunction::from_terms(f.group(), g.level(), out);
}

ConvElement conv_mul(const ConvElement& a, const ConvElement& b) {
  return ConvElement(convolve(a.symbol(), b.symbol()));
}

ConvElement conv_star(const ConvElement& a) { return ConvElement(modular_twist(antipode(star(a.symbol())), -1)); }

ConvDecomposition dual_coproduct(const ConvElement& a, const ConvElement& b, Side side) {
  require_same_group(a.symbol(), b.symbol());
  if (side == Side::Right) return wrap(galois_inverse({{a.symbol(), b.symbol()}}, GaloisMap::T2));
  return wrap(galois_inverse({{a.symbol(), modular_twist(b.symbol(), -1)}}, GaloisMap::T1));
}

ConvElement dual_antipode(const ConvElement& a) { return ConvElement(modular_twist(antipode(a.symbol()), -1)); }

CycScalar dual_counit(const ConvElement& a) { return integral(a.symbol(), Side::Left); }

CycScalar haar_weight(const ConvElement& a) { return counit(a.symbol()); }

ConvElement projection_pH(const GroupPtr& g, int n) {
  return ConvElement(CycScalar(mpq_class(1) / g->measure(n)) * subgroup_indicator(g, n));
}

CycScalar vector_state_tau(const ConvElement& a, int n) {
  return integral(a.symbol() * subgroup_indicator(a.group(), n), Side::Left);
}

ConvElement cond_expectation(const ConvElement& a, int n) {
  return ConvElement(a.symbol() * subgroup_indicator(a.group(), n));
}

ConvElement left_shift(const ConvElement& a, const GElem& x) { return ConvElement(left_translate(a.symbol(), x)); }

Reconstruction coset_reconstruction(const ConvElement& a, int n) {
  Reconstruction r;
  r.cosets = support_cosets(a.symbol(), n);
  const Group& g = *a.group();
  BSFunction sum(a.group());
  for (const GElem& x : r.cosets)
    sum = sum + left_shift(cond_expectation(left_shift(a, g.inv(x)), n), x).symbol();
  r.equal = (sum == a.symbol());
  return r;
}

DualCertificate dual_membership_certificate(const ConvElement& a, int n) {
  const ConvElement p = projection_pH(a.group(), n);
  return {dual_coproduct(a, p, Side::Right), dual_coproduct(a, p, Side::Left)};
}

TensorDecomposition symbols(const ConvDecomposition& d) {
  TensorDecomposition out;
  for (const auto& [a, b] : d) out.emplace_back(a.symbol(), b.symbol());
  return out;
}

}  // namespace hopfgroup
