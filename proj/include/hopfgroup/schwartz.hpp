#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "hopfgroup/group.hpp"
#include "hopfgroup/linalg.hpp"
#include "hopfgroup/scalar.hpp"

namespace hopfgroup {

using CosetMap = std::map<GElem, CycScalar>;

/// Locally constant, compactly supported function f = sum c_r chi_{r H_n}.
///
/// Always held in canonical form: keys are canonical level-n representatives,
/// no zero coefficients, and n is the coarsest level at which f is constant
/// on left cosets. The zero function sits at the base level clamp(0).
/// Equality is therefore a plain comparison.
class BSFunction {
 public:
  /// The zero function on g.
  explicit BSFunction(GroupPtr g);

  /// Canonicalizes: representatives are reduced, duplicates summed, zeros
  /// dropped, and the level coarsened as far as possible.
  static BSFunction from_terms(GroupPtr g, int level, const CosetMap& terms);

  const GroupPtr& group() const noexcept { return group_; }
  int level() const noexcept { return level_; }
  const CosetMap& terms() const noexcept { return terms_; }
  bool is_zero() const noexcept { return terms_.empty(); }

  /// Term table refined to level n >= level(); any valid n for the zero function.
  CosetMap at_level(int n) const;
  CycScalar operator()(const GElem& x) const;

  friend bool operator==(const BSFunction& a, const BSFunction& b);
  friend bool operator!=(const BSFunction& a, const BSFunction& b) { return !(a == b); }

 private:
  BSFunction(GroupPtr g, int level, CosetMap terms)
      : group_(std::move(g)), level_(level), terms_(std::move(terms)) {}

  GroupPtr group_;
  int level_ = 0;
  CosetMap terms_;
};

/// Sum f_i (x) g_i; an empty list is 0.
using TensorDecomposition = std::vector<std::pair<BSFunction, BSFunction>>;

/// clamp(0) into the level range of g.
int base_level(const Group& g);
/// Throws Usage unless both functions live on the same group.
void require_same_group(const BSFunction& a, const BSFunction& b);

// Constructors.

BSFunction indicator(GroupPtr g, const GElem& x, int n);
BSFunction subgroup_indicator(GroupPtr g, int n);
/// Pullback of a function on G/H_n given by a finite table.
BSFunction from_quotient_table(GroupPtr g, int n, const CosetMap& table);

/// Finite-dimensional unitary representation of the quotient H_outer / H_level,
/// one matrix per canonical level-`level` coset representative of H_outer.
struct FiniteRep {
  int outer_level = 0;
  int level = 0;
  std::map<GElem, Matrix> images;
};

/// Throws Validation unless rep is a unitary homomorphism on a normal quotient.
void validate_rep(const Group& g, const FiniteRep& rep);
/// h -> rep(h H_level)_{ij} on H_outer, zero elsewhere.
BSFunction matrix_coefficient(GroupPtr g, const FiniteRep& rep, std::size_t i, std::size_t j);

// Pointwise *-algebra.

BSFunction operator+(const BSFunction& a, const BSFunction& b);
BSFunction operator-(const BSFunction& a, const BSFunction& b);
BSFunction operator-(const BSFunction& a);
BSFunction operator*(const BSFunction& a, const BSFunction& b);
BSFunction operator*(const CycScalar& c, const BSFunction& f);
BSFunction star(const BSFunction& f);

// Hopf structure.

/// Left: y -> f(x^{-1} y). Right: y -> f(y x).
BSFunction translate(const BSFunction& f, const GElem& x, Side side);
BSFunction left_translate(const BSFunction& f, const GElem& x);
BSFunction right_translate(const BSFunction& f, const GElem& x);
/// x -> f(x^{-1}).
BSFunction antipode(const BSFunction& f);
/// f(e).
CycScalar counit(const BSFunction& f);
/// Left or right Haar integral.
CycScalar integral(const BSFunction& f, Side side);

/// A level L with f(k y) = f(y) for every k in H_L.
int left_invariance_level(const BSFunction& f);

/// sum f_i(x) g_i(y) = f(xy) g(y).
TensorDecomposition coproduct_right(const BSFunction& f, const BSFunction& g);
/// sum f_i(x) g_i(y) = f(x) g(xy).
TensorDecomposition coproduct_left(const BSFunction& f, const BSFunction& g);

enum class GaloisMap {
  T1,  ///< a (x) b -> Delta(a)(1 (x) b), i.e. F(x, y) = a(xy) b(y)
  T2,  ///< a (x) b -> (a (x) 1)Delta(b), i.e. F(x, y) = a(x) b(xy)
};

/// Inverse of the chosen Galois map: F(x, y) -> F(x y^{-1}, y) for T1 and
/// F(x, y) -> F(x, x^{-1} y) for T2.
TensorDecomposition galois_inverse(const TensorDecomposition& t, GaloisMap which);

// Diagnostics.

struct GroupLikeVerdict {
  bool yes = false;
  std::string reason;         ///< empty on success
  int level = 0;              ///< level of the support cosets
  std::vector<GElem> support; ///< canonical reps at `level`
  /// n with p = chi_{H_n}, when the subgroup belongs to the filtration.
  std::optional<int> subgroup_level;
};

GroupLikeVerdict is_group_like(const BSFunction& p);

/// dim span{ left_translate(f, x) : x in H_n }.
std::size_t translate_span_dim(const BSFunction& f, int n);

/// Canonical level-n reps F of the cosets meeting supp f; f vanishes off F H_n.
std::vector<GElem> support_cosets(const BSFunction& f, int n);

struct MembershipCertificate {
  TensorDecomposition right;  ///< f(xy) chi_{H_n}(y)
  TensorDecomposition left;   ///< chi_{H_n}(xy) f(y)
  std::vector<GElem> support; ///< F at level n
};

MembershipCertificate membership_certificate(const BSFunction& f, int n);

/// chi_K with K the union of all support cosets.
BSFunction local_unit(const std::vector<BSFunction>& fs);

}  // namespace hopfgroup
