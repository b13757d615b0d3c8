#pragma once

#include <gmpxx.h>

#include <memory>
#include <string>
#include <string_view>
#include <vector>

#include "hopfgroup/error.hpp"
#include "hopfgroup/scalar.hpp"

namespace hopfgroup {

/// Group element as a flat coordinate vector. The meaning of the coordinates
/// is owned by the group model: p-adic values m/p^k for zp/qp, an integer for
/// z, an element index for finite groups, (k, b) for Q_p x| Z, and the
/// concatenation of factor coordinates for products.
struct GElem {
  std::vector<mpq_class> coords;

  GElem() = default;
  explicit GElem(std::vector<mpq_class> c) : coords(std::move(c)) {}
  GElem(std::initializer_list<mpq_class> c) : coords(c) {}

  friend bool operator==(const GElem& a, const GElem& b) { return a.coords == b.coords; }
  friend bool operator!=(const GElem& a, const GElem& b) { return !(a == b); }
  friend bool operator<(const GElem& a, const GElem& b) {
    const std::size_t n = std::min(a.coords.size(), b.coords.size());
    for (std::size_t i = 0; i < n; ++i) {
      int c = cmp(a.coords[i], b.coords[i]);
      if (c != 0) return c < 0;
    }
    return a.coords.size() < b.coords.size();
  }
};

class Group;
using GroupPtr = std::shared_ptr<const Group>;

enum class Side { Left, Right };

/// A locally profinite group presented by a decreasing filtration
/// H_lo ⊇ ... ⊇ H_n ⊇ H_{n+1} ⊇ ... of compact open subgroups with
/// mu(H_0) = 1. Instances are immutable.
///
/// The modular function follows mu(E x) = modular(x) mu(E) for the left Haar
/// measure mu.
class Group : public std::enable_shared_from_this<Group> {
 public:
  virtual ~Group() = default;

  /// Descriptor in the CLI grammar; two models are the same group iff their
  /// descriptors agree.
  virtual std::string descriptor() const = 0;
  virtual int min_level() const = 0;
  virtual int max_level() const = 0;
  virtual bool is_abelian() const = 0;
  virtual std::size_t arity() const = 0;

  virtual GElem identity() const = 0;
  virtual GElem mul(const GElem& x, const GElem& y) const = 0;
  virtual GElem inv(const GElem& x) const = 0;

  /// Canonical representative of the left coset x H_n.
  virtual GElem canonical_rep(const GElem& x, int n) const = 0;
  /// Representatives of the H_n-cosets inside H_m (m <= n), canonical at n.
  virtual std::vector<GElem> coset_reps(int m, int n) const = 0;
  /// [H_m : H_n] for m <= n.
  virtual mpz_class index(int m, int n) const = 0;
  /// A level m with x H_m x^{-1} ⊆ H_n; deterministic, not always minimal.
  virtual int conj_level(const GElem& x, int n) const = 0;
  virtual mpq_class modular(const GElem& x) const = 0;

  /// Canonical level-n representatives of a finite neighbourhood of the
  /// identity whose size grows with radius. Used for sampling and windows.
  virtual std::vector<GElem> window(int n, int radius) const = 0;

  /// Throws ErrorCode::Elem when the coordinates do not denote an element.
  virtual void validate(const GElem& x) const = 0;
  virtual std::string format_element(const GElem& x) const = 0;
  virtual GElem parse_element(std::string_view text) const = 0;

  // Pontryagin duality; only abelian models with a totally disconnected dual
  // implement these. The defaults throw ErrorCode::Unsupported.

  virtual GroupPtr dual() const;
  /// <xi, x> for xi in dual(), x in this group; symmetric under swapping the
  /// roles of the group and its dual.
  virtual CycScalar pairing(const GElem& xi, const GElem& x) const;
  /// Coarsest dual level at which the annihilator of H_n is a union of cosets.
  virtual int annihilator_level(int n) const;
  /// Level-L dual representatives covering the annihilator of H_n.
  virtual std::vector<GElem> annihilator_reps(int n, int level) const;
  /// A dual level on whose cosets xi -> <xi, x> is constant.
  virtual int pairing_level(const GElem& x) const;

  // Derived helpers.

  bool in_level_range(int n) const { return n >= min_level() && n <= max_level(); }
  /// Throws ErrorCode::Level unless n is a valid level.
  void require_level(int n) const;
  bool eq_at_level(const GElem& x, const GElem& y, int n) const;
  /// x ∈ H_n.
  bool in_subgroup(const GElem& x, int n) const;
  /// mu(H_n).
  mpq_class measure(int n) const;
  /// mu(x H_n) for Side::Left, mu(H_n x) for Side::Right.
  mpq_class measure_coset(const GElem& x, int n, Side side) const;
  bool same_as(const Group& other) const { return descriptor() == other.descriptor(); }

  /// Level-m cosets covering the set r H_n x. Requires H_m ⊆ x^{-1} H_n x.
  std::vector<GElem> cover_right(const GElem& r, int n, const GElem& x, int m) const;
};

/// Parse a descriptor: finite:<name>, finite:cayley@<file>, cayley@<file>,
/// zp:<p>, qp:<p>, z, shift:<p>, qpmodzp:<p>, dual(<g>), prod(<g1>,...).
GroupPtr make_group(std::string_view descriptor);

GroupPtr make_zp(unsigned p);
GroupPtr make_qp(unsigned p);
GroupPtr make_qp_mod_zp(unsigned p);
GroupPtr make_integers();
GroupPtr make_shift(unsigned p);
GroupPtr make_product(std::vector<GroupPtr> factors);

/// Finite group from a Cayley table: table[a][b] = index of a*b. Element 0
/// need not be the identity. Validated for the group axioms.
/// `cyclic_orders` (optional) gives an isomorphism with a product of cyclic
/// groups: element i has coordinates i in mixed radix over the orders; it
/// enables duality.
GroupPtr make_finite(std::string name, std::vector<std::string> element_names,
                     std::vector<std::vector<unsigned>> table, std::vector<unsigned> cyclic_orders = {});
/// Named finite groups: Z<n>, products like Z2xZ4, S<n> (n <= 5), D<n>.
GroupPtr make_named_finite(std::string_view name);
GroupPtr load_cayley_file(const std::string& path);

/// Throws ErrorCode::Usage when the groups differ.
void require_same_group(const Group& a, const Group& b);

bool is_prime(unsigned long p);

}  // namespace hopfgroup
