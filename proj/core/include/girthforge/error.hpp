#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace girthforge {

enum class Errc {
  invalid_graph,
  bad_size,
  not_regular,
  not_bipartite,
  vertex_out_of_range,
  size_limit,
  size_mismatch,
  level_mismatch,
  too_few_copies,
  not_bijection,
  retries_exhausted,
  infeasible_at_budget,
  structure_unknown,
  missing_subset,
  witness_failure,
  field_too_small,
  budget_exceeded,
  isolated_vertex,
  nonuniform_share,
  precondition,
  parse,
};

/// Upper-case wire name of an error code, e.g. "NOT_REGULAR".
std::string_view errc_name(Errc code) noexcept;

/// Library exception. `witness` carries vertex ids that explain the failure
/// (an odd cycle, the offending vertex and its degree, ...).
class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& message,
        std::vector<std::uint64_t> witness = {});

  Errc code() const noexcept { return code_; }
  const std::vector<std::uint64_t>& witness() const noexcept { return witness_; }

 private:
  Errc code_;
  std::vector<std::uint64_t> witness_;
};

}  // namespace girthforge
