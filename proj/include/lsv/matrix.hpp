#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include <Eigen/Core>

#include "lsv/exact.hpp"

namespace lsv {

enum class ModelTag { IidRademacher, RowRegular, BaseAssembled, External };

std::string model_tag_name(ModelTag tag);
ModelTag model_tag_from_name(const std::string& name);

// Dense square integer matrix, row-major. Invariants by tag:
// IidRademacher entries are +-1; RowRegular/BaseAssembled entries are
// {0,1} with every row summing to exactly n/2 (n even). External
// carries anything integer.
struct IntMatrix {
  int n = 0;
  ModelTag tag = ModelTag::External;
  std::vector<i64> entries;  // n*n, row-major

  i64& at(int i, int j) { return entries[static_cast<size_t>(i) * n + j]; }
  i64 at(int i, int j) const { return entries[static_cast<size_t>(i) * n + j]; }

  static IntMatrix zero(int n, ModelTag tag);

  // Throws PreconditionError if the tag's invariants do not hold.
  void check_invariants() const;

  Eigen::MatrixXd to_real() const;
};

// Plain-text format: first line "n model_tag", then n rows of
// space-separated integers.
std::string matrix_to_text(const IntMatrix& m);
IntMatrix matrix_from_text(const std::string& text);

}  // namespace lsv
