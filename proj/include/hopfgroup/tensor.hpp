#pragma once

#include <cstddef>
#include <map>
#include <utility>

#include "hopfgroup/schwartz.hpp"

namespace hopfgroup {

/// Values of a tensor on pairs of cosets (x H_left, y H_right); zeros dropped.
struct TensorTable {
  int left_level = 0;
  int right_level = 0;
  std::map<std::pair<GElem, GElem>, CycScalar> values;
};

/// Finest left and right levels occurring in t (base level when empty).
std::pair<int, int> tensor_levels(const GroupPtr& g, const TensorDecomposition& t);
TensorTable expand(const GroupPtr& g, const TensorDecomposition& t, int left_level, int right_level);

/// Exact equality as functions on G x G.
bool tensor_equal(const GroupPtr& g, const TensorDecomposition& a, const TensorDecomposition& b);

CycScalar evaluate(const TensorDecomposition& t, const GElem& x, const GElem& y);

/// Minimal number of simple tensors needed to express t.
std::size_t tensor_rank(const GroupPtr& g, const TensorDecomposition& t);

}  // namespace hopfgroup
