#pragma once

#include <cstdint>
#include <string>

#include "lsv/errors.hpp"

namespace lsv {

// Every parallel kernel in the lab takes an ExecPolicy. Serial is the
// reference implementation; OpenMP must produce the identical result
// (tests assert equality), which the kernels arrange by writing
// per-iteration results into preassigned slots or by reducing with
// order-free integer sums. Serial is therefore not a fast path twin
// that can drift: it IS the semantics.
enum class ExecPolicy { Serial, OpenMP };

inline ExecPolicy exec_policy_from_name(const std::string& name) {
  if (name == "serial") return ExecPolicy::Serial;
  if (name == "openmp") return ExecPolicy::OpenMP;
  throw PreconditionError("exec policy", "expected serial|openmp, got '" +
                                             name + "'");
}

// Chunked index loop: body(i) for i in [0, count). The OpenMP branch
// uses a plain parallel-for; bodies must only write to disjoint
// locations or accumulate into thread-local state merged by the
// caller.
template <class Body>
void for_each_index(std::int64_t count, ExecPolicy policy, Body&& body) {
  if (policy == ExecPolicy::OpenMP) {
#pragma omp parallel for schedule(static)
    for (std::int64_t i = 0; i < count; ++i) body(i);
  } else {
    for (std::int64_t i = 0; i < count; ++i) body(i);
  }
}

}  // namespace lsv
