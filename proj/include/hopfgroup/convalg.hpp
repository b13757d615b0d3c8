#pragma once

#include <utility>
#include <vector>

#include "hopfgroup/schwartz.hpp"

namespace hopfgroup {

/// The convolution operator L_f, held through its symbol f. A separate type
/// so that pointwise and convolution products cannot be mixed up.
class ConvElement {
 public:
  explicit ConvElement(BSFunction symbol) : symbol_(std::move(symbol)) {}

  const BSFunction& symbol() const noexcept { return symbol_; }
  const GroupPtr& group() const noexcept { return symbol_.group(); }
  bool is_zero() const noexcept { return symbol_.is_zero(); }

  friend bool operator==(const ConvElement& a, const ConvElement& b) { return a.symbol_ == b.symbol_; }
  friend bool operator!=(const ConvElement& a, const ConvElement& b) { return !(a == b); }
  friend ConvElement operator+(const ConvElement& a, const ConvElement& b) {
    return ConvElement(a.symbol_ + b.symbol_);
  }
  friend ConvElement operator-(const ConvElement& a, const ConvElement& b) {
    return ConvElement(a.symbol_ - b.symbol_);
  }
  friend ConvElement operator*(const CycScalar& c, const ConvElement& a) { return ConvElement(c * a.symbol_); }

 private:
  BSFunction symbol_;
};

using ConvDecomposition = std::vector<std::pair<ConvElement, ConvElement>>;

/// (f * g)(z) = integral f(y) g(y^{-1} z) dy.
BSFunction convolve(const BSFunction& f, const BSFunction& g);
ConvElement conv_mul(const ConvElement& a, const ConvElement& b);
/// Symbol conj(f(x^{-1})) Delta(x^{-1}), the adjoint of L_f.
ConvElement conv_star(const ConvElement& a);

/// Right: Delta(L_f)(1 (x) L_g), two-variable symbol f(x) g(x^{-1} z).
/// Left: (L_f (x) 1)Delta(L_g), two-variable symbol f(w y^{-1}) Delta(y^{-1}) g(y).
ConvDecomposition dual_coproduct(const ConvElement& a, const ConvElement& b, Side side);
/// Symbol Delta(x^{-1}) f(x^{-1}).
ConvElement dual_antipode(const ConvElement& a);
/// Left Haar integral of the symbol.
CycScalar dual_counit(const ConvElement& a);
/// f(e).
CycScalar haar_weight(const ConvElement& a);

/// Symbol mu(H_n)^{-1} chi_{H_n}.
ConvElement projection_pH(const GroupPtr& g, int n);
/// Vector state of the unit vector mu(H_n)^{-1/2} chi_{H_n}: the integral of f over H_n.
CycScalar vector_state_tau(const ConvElement& a, int n);
/// Symbol restricted to H_n.
ConvElement cond_expectation(const ConvElement& a, int n);

/// x . L_f = L_{left_translate(f, x)}.
ConvElement left_shift(const ConvElement& a, const GElem& x);

struct Reconstruction {
  std::vector<GElem> cosets;  ///< F: canonical level-n reps of the support cosets
  bool equal = false;         ///< a == sum_{x in F} x E(x^{-1} a)
};

Reconstruction coset_reconstruction(const ConvElement& a, int n);

struct DualCertificate {
  ConvDecomposition right;  ///< Delta(a)(1 (x) p_H)
  ConvDecomposition left;   ///< (a (x) 1)Delta(p_H)
};

DualCertificate dual_membership_certificate(const ConvElement& a, int n);

/// Two-variable symbol of a decomposition, as a tensor of symbols.
TensorDecomposition symbols(const ConvDecomposition& d);

}  // namespace hopfgroup
