#include "hopfgroup/operator.hpp"

#include <algorithm>
#include <set>

#include "hopfgroup/convalg.hpp"

namespace hopfgroup {

std::optional<std::size_t> Truncation::locate(const GElem& x) const {
  const GElem key = group->canonical_rep(x, level);
  auto it = std::lower_bound(reps.begin(), reps.end(), key);
  if (it == reps.end() || *it != key) return std::nullopt;
  return static_cast<std::size_t>(it - reps.begin());
}

Truncation make_truncation(GroupPtr g, int level, const std::vector<GElem>& reps) {
  g->require_level(level);
  std::set<GElem> canon;
  for (const GElem& r : reps) {
    g->validate(r);
    canon.insert(g->canonical_rep(r, level));
  }
  return Truncation{std::move(g), level, {canon.begin(), canon.end()}};
}

Truncation subgroup_window(GroupPtr g, int outer, int level) {
  auto reps = g->coset_reps(outer, level);
  return make_truncation(std::move(g), level, reps);
}

Truncation refine(const Truncation& t, int level) {
  if (level < t.level) throw Error(ErrorCode::Level, "refine needs a finer level");
  std::vector<GElem> reps;
  for (const GElem& r : t.reps)
    for (const GElem& s : t.group->coset_reps(t.level, level)) reps.push_back(t.group->mul(r, s));
  return make_truncation(t.group, level, reps);
}

namespace {

void require_fits(const BSFunction& f, const Truncation& t) {
  require_same_group(*f.group(), *t.group);
  if (!f.is_zero() && f.level() > t.level)
    throw Error(ErrorCode::Level, "function of level " + std::to_string(f.level()) +
                                      " is not constant on the level-" + std::to_string(t.level) +
                                      " truncation; refine the window first");
}

std::string describe(const Group& g, const std::vector<GElem>& cosets) {
  std::string out;
  for (std::size_t i = 0; i < cosets.size(); ++i) out += (i ? ", " : "") + g.format_element(cosets[i]);
  return out;
}

}  // namespace

std::vector<CycScalar> coordinates(const BSFunction& f, const Truncation& t) {
  require_fits(f, t);
  std::vector<CycScalar> out(t.dim());
  std::vector<GElem> missing;
  for (const auto& [rep, c] : f.at_level(t.level)) {
    if (auto i = t.locate(rep)) out[*i] = c;
    else missing.push_back(rep);
  }
  if (!missing.empty())
    throw Error(ErrorCode::Leakage, "function leaves the window at cosets " + describe(*t.group, missing));
  return out;
}

TruncMatrix matrix_of_mult(const BSFunction& g, const Truncation& t) {
  require_fits(g, t);
  TruncMatrix m{t, Matrix(t.dim(), t.dim()), false};
  for (std::size_t i = 0; i < t.dim(); ++i) m.entries(i, i) = g(t.reps[i]);
  return m;
}

namespace {

std::vector<BSFunction> column_images(const BSFunction& f, const Truncation& t) {
  require_same_group(*f.group(), *t.group);
  std::vector<BSFunction> images;
  for (const GElem& y : t.reps) images.push_back(convolve(f, indicator(t.group, y, t.level)));
  return images;
}

}  // namespace

std::vector<GElem> leakage(const BSFunction& f, const Truncation& t) {
  std::set<GElem> missing;
  for (const BSFunction& image : column_images(f, t))
    for (const auto& [rep, c] : image.at_level(t.level))
      if (!t.locate(rep)) missing.insert(rep);
  return {missing.begin(), missing.end()};
}

TruncMatrix matrix_of_conv(const BSFunction& f, const Truncation& t, TruncMode mode) {
  TruncMatrix m{t, Matrix(t.dim(), t.dim()), mode == TruncMode::Compressed};
  const std::vector<BSFunction> images = column_images(f, t);
  std::set<GElem> missing;
  for (std::size_t col = 0; col < images.size(); ++col)
    for (const auto& [rep, c] : images[col].at_level(t.level)) {
      if (auto row = t.locate(rep)) m.entries(*row, col) = c;
      else missing.insert(rep);
    }
  if (mode == TruncMode::Exact && !missing.empty())
    throw Error(ErrorCode::Leakage, "convolution image leaves the window at cosets " +
                                        describe(*t.group, {missing.begin(), missing.end()}));
  return m;
}

TruncMatrix operator*(const TruncMatrix& a, const TruncMatrix& b) {
  if (a.domain.level != b.domain.level || a.domain.reps != b.domain.reps)
    throw Error(ErrorCode::Usage, "truncation matrices live on different windows");
  return TruncMatrix{a.domain, a.entries * b.entries, a.compressed || b.compressed};
}

std::size_t exact_rank(const TruncMatrix& m) { return exact_rank(m.entries); }

CommutatorResult commutator(const TruncMatrix& a, const TruncMatrix& b) {
  if (a.entries.rows() != b.entries.rows() || a.entries.cols() != b.entries.cols() ||
      a.entries.rows() != a.entries.cols())
    throw Error(ErrorCode::Usage, "commutator needs square matrices of one shape");
  const Matrix diff = a.entries * b.entries - b.entries * a.entries;
  CommutatorResult r;
  for (std::size_t i = 0; i < diff.rows() && r.zero; ++i)
    for (std::size_t j = 0; j < diff.cols(); ++j)
      if (!diff(i, j).is_zero()) {
        r.zero = false;
        r.witness = std::make_pair(std::make_pair(i, j), diff(i, j));
        break;
      }
  return r;
}

bool commutator_is_zero(const TruncMatrix& a, const TruncMatrix& b) { return commutator(a, b).zero; }

}  // namespace hopfgroup
