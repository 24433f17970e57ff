#include "lsv/matrix.hpp"

#include <sstream>

#include "lsv/errors.hpp"

namespace lsv {

std::string model_tag_name(ModelTag tag) {
  switch (tag) {
    case ModelTag::IidRademacher: return "iid_rademacher";
    case ModelTag::RowRegular: return "row_regular";
    case ModelTag::BaseAssembled: return "base_assembled";
    case ModelTag::External: return "external";
  }
  return "external";
}

ModelTag model_tag_from_name(const std::string& name) {
  if (name == "iid_rademacher") return ModelTag::IidRademacher;
  if (name == "row_regular") return ModelTag::RowRegular;
  if (name == "base_assembled") return ModelTag::BaseAssembled;
  if (name == "external") return ModelTag::External;
  throw PreconditionError("model_tag", "unknown tag '" + name + "'");
}

IntMatrix IntMatrix::zero(int n, ModelTag tag) {
  if (n < 1) throw PreconditionError("n >= 1", "matrix side must be positive");
  IntMatrix m;
  m.n = n;
  m.tag = tag;
  m.entries.assign(static_cast<size_t>(n) * n, 0);
  return m;
}

void IntMatrix::check_invariants() const {
  if (n < 1 || entries.size() != static_cast<size_t>(n) * n)
    throw PreconditionError("shape", "entry count does not match n*n");
  switch (tag) {
    case ModelTag::IidRademacher:
      for (i64 e : entries)
        if (e != 1 && e != -1)
          throw PreconditionError("entries in {-1,+1}",
                                  "iid_rademacher entry " + std::to_string(e));
      break;
    case ModelTag::RowRegular:
    case ModelTag::BaseAssembled: {
      if (n % 2 != 0)
        throw PreconditionError("n even", "row-regular matrix with odd n");
      for (int i = 0; i < n; ++i) {
        i64 sum = 0;
        for (int j = 0; j < n; ++j) {
          i64 e = at(i, j);
          if (e != 0 && e != 1)
            throw PreconditionError("entries in {0,1}",
                                    "row-regular entry " + std::to_string(e));
          sum += e;
        }
        if (sum != n / 2)
          throw PreconditionError(
              "row sum n/2", "row " + std::to_string(i) + " sums to " +
                                 std::to_string(sum));
      }
      break;
    }
    case ModelTag::External:
      break;
  }
}

Eigen::MatrixXd IntMatrix::to_real() const {
  Eigen::MatrixXd r(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) r(i, j) = static_cast<double>(at(i, j));
  return r;
}

std::string matrix_to_text(const IntMatrix& m) {
  std::ostringstream out;
  out << m.n << ' ' << model_tag_name(m.tag) << '\n';
  for (int i = 0; i < m.n; ++i) {
    for (int j = 0; j < m.n; ++j) {
      if (j) out << ' ';
      out << m.at(i, j);
    }
    out << '\n';
  }
  return out.str();
}

IntMatrix matrix_from_text(const std::string& text) {
  std::istringstream in(text);
  int n = 0;
  std::string tag;
  if (!(in >> n >> tag))
    throw PreconditionError("matrix header", "expected 'n model_tag'");
  IntMatrix m = IntMatrix::zero(n, model_tag_from_name(tag));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      if (!(in >> m.at(i, j)))
        throw PreconditionError("matrix body",
                                "short read at row " + std::to_string(i));
  m.check_invariants();
  return m;
}

}  // namespace lsv
