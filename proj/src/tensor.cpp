#include "hopfgroup/tensor.hpp"

#include <algorithm>

namespace hopfgroup {

std::pair<int, int> tensor_levels(const GroupPtr& g, const TensorDecomposition& t) {
  const int base = base_level(*g);
  int left = base, right = base;
  bool first = true;
  for (const auto& [a, b] : t) {
    if (first) {
      left = a.level();
      right = b.level();
      first = false;
    }
    left = std::max(left, a.level());
    right = std::max(right, b.level());
  }
  return {left, right};
}

TensorTable expand(const GroupPtr& g, const TensorDecomposition& t, int left_level, int right_level) {
  TensorTable table{left_level, right_level, {}};
  for (const auto& [a, b] : t) {
    require_same_group(a, b);
    if (!a.group()->same_as(*g)) require_same_group(*a.group(), *g);
    const CosetMap ta = a.at_level(left_level), tb = b.at_level(right_level);
    for (const auto& [x, cx] : ta)
      for (const auto& [y, cy] : tb) {
        auto [it, inserted] = table.values.emplace(std::make_pair(x, y), cx * cy);
        if (!inserted) {
          it->second += cx * cy;
          if (it->second.is_zero()) table.values.erase(it);
        }
      }
  }
  return table;
}

bool tensor_equal(const GroupPtr& g, const TensorDecomposition& a, const TensorDecomposition& b) {
  auto [la, ra] = tensor_levels(g, a);
  auto [lb, rb] = tensor_levels(g, b);
  const int left = std::max(la, lb), right = std::max(ra, rb);
  return expand(g, a, left, right).values == expand(g, b, left, right).values;
}

CycScalar evaluate(const TensorDecomposition& t, const GElem& x, const GElem& y) {
  CycScalar total;
  for (const auto& [a, b] : t) {
    const CycScalar ax = a(x);
    if (ax.is_zero()) continue;
    total += ax * b(y);
  }
  return total;
}

std::size_t tensor_rank(const GroupPtr& g, const TensorDecomposition& t) {
  auto [left, right] = tensor_levels(g, t);
  const TensorTable table = expand(g, t, left, right);
  std::map<GElem, std::size_t> rows, cols;
  for (const auto& [key, v] : table.values) {
    rows.emplace(key.first, 0);
    cols.emplace(key.second, 0);
  }
  std::size_t i = 0;
  for (auto& [k, idx] : rows) idx = i++;
  i = 0;
  for (auto& [k, idx] : cols) idx = i++;
  Matrix m(rows.size(), cols.size());
  for (const auto& [key, v] : table.values) m(rows.at(key.first), cols.at(key.second)) = v;
  return exact_rank(std::move(m));
}

}  // namespace hopfgroup
