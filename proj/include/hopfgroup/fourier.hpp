#pragma once

#include "hopfgroup/schwartz.hpp"

namespace hopfgroup {

/// <xi, x> for xi in dual(G). Throws Unsupported for non-abelian groups and
/// for abelian groups without a supported dual.
CycScalar character_value(const GroupPtr& g, const GElem& xi, const GElem& x);

/// f^(xi) = integral f(x) conj(<xi, x>) dx, a function on dual(G).
BSFunction fourier(const BSFunction& f);
/// g^v(x) = integral g(xi) <xi, x> dxi, a function on dual(dual(G)) = G.
BSFunction inverse_fourier(const BSFunction& g);

struct PlancherelResult {
  CycScalar norm;       ///< integral |f|^2 over G
  CycScalar dual_norm;  ///< integral |f^|^2 over the dual
  bool equal = false;
};

PlancherelResult plancherel_check(const BSFunction& f);

}  // namespace hopfgroup
