#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "hopfgroup/linalg.hpp"
#include "hopfgroup/schwartz.hpp"

namespace hopfgroup {

/// Finite window K = union of level-n cosets, with basis chi_{r H_n}. The
/// Gram matrix is mu(H_n) times the identity, so adjoints are conjugate
/// transposes in these coordinates.
struct Truncation {
  GroupPtr group;
  int level = 0;
  std::vector<GElem> reps;  ///< canonical, sorted, distinct

  std::size_t dim() const noexcept { return reps.size(); }
  /// Index of the basis coset containing x, if any.
  std::optional<std::size_t> locate(const GElem& x) const;
};

/// Window from explicit reps (canonicalized and deduplicated).
Truncation make_truncation(GroupPtr g, int level, const std::vector<GElem>& reps);
/// The window H_outer cut into level-`level` cosets.
Truncation subgroup_window(GroupPtr g, int outer, int level);
/// Same window at a finer level.
Truncation refine(const Truncation& t, int level);

enum class TruncMode {
  Exact,       ///< throw Leakage when an image leaves the window
  Compressed,  ///< P_K a P_K: out-of-window mass is dropped
};

struct TruncMatrix {
  Truncation domain;
  Matrix entries;
  bool compressed = false;  ///< true when built in Compressed mode
};

/// diag(g(r)). Throws Level when g is finer than the truncation.
TruncMatrix matrix_of_mult(const BSFunction& g, const Truncation& t);
/// Column y = coordinates of f * chi_{y H_n}.
TruncMatrix matrix_of_conv(const BSFunction& f, const Truncation& t, TruncMode mode = TruncMode::Exact);
/// Cosets hit by some image f * chi_{y H_n} that lie outside the window.
std::vector<GElem> leakage(const BSFunction& f, const Truncation& t);

TruncMatrix operator*(const TruncMatrix& a, const TruncMatrix& b);

std::size_t exact_rank(const TruncMatrix& m);

struct CommutatorResult {
  bool zero = true;
  /// First nonzero entry (row, column, value) of ab - ba.
  std::optional<std::pair<std::pair<std::size_t, std::size_t>, CycScalar>> witness;
};

CommutatorResult commutator(const TruncMatrix& a, const TruncMatrix& b);
bool commutator_is_zero(const TruncMatrix& a, const TruncMatrix& b);

/// Coordinates of a window-supported function (Level/Leakage errors otherwise).
std::vector<CycScalar> coordinates(const BSFunction& f, const Truncation& t);

}  // namespace hopfgroup
