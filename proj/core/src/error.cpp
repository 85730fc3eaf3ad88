#include "girthforge/error.hpp"

namespace girthforge {

std::string_view errc_name(Errc code) noexcept {
  switch (code) {
    case Errc::invalid_graph: return "INVALID_GRAPH";
    case Errc::bad_size: return "BAD_SIZE";
    case Errc::not_regular: return "NOT_REGULAR";
    case Errc::not_bipartite: return "NOT_BIPARTITE";
    case Errc::vertex_out_of_range: return "VERTEX_OUT_OF_RANGE";
    case Errc::size_limit: return "SIZE_LIMIT";
    case Errc::size_mismatch: return "SIZE_MISMATCH";
    case Errc::level_mismatch: return "LEVEL_MISMATCH";
    case Errc::too_few_copies: return "TOO_FEW_COPIES";
    case Errc::not_bijection: return "NOT_BIJECTION";
    case Errc::retries_exhausted: return "RETRIES_EXHAUSTED";
    case Errc::infeasible_at_budget: return "INFEASIBLE_AT_BUDGET";
    case Errc::structure_unknown: return "STRUCTURE_UNKNOWN";
    case Errc::missing_subset: return "MISSING_SUBSET";
    case Errc::witness_failure: return "WITNESS_FAILURE";
    case Errc::field_too_small: return "FIELD_TOO_SMALL";
    case Errc::budget_exceeded: return "BUDGET_EXCEEDED";
    case Errc::isolated_vertex: return "ISOLATED_VERTEX";
    case Errc::nonuniform_share: return "NONUNIFORM_SHARE";
    case Errc::precondition: return "PRECONDITION";
    case Errc::parse: return "PARSE";
  }
  return "UNKNOWN";
}

Error::Error(Errc code, const std::string& message,
             std::vector<std::uint64_t> witness)
    : std::runtime_error(std::string(errc_name(code)) + ": " + message),
      code_(code),
      witness_(std::move(witness)) {}

}  // namespace girthforge
