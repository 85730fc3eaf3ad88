#pragma once

#include <optional>
#include <string>
#include <string_view>

#include "girthforge/certificate.hpp"
#include "girthforge/cover.hpp"
#include "girthforge/family.hpp"
#include "girthforge/lp.hpp"
#include "girthforge/pi_graph.hpp"
#include "girthforge/scheme.hpp"

namespace girthforge {

// JSON text in and out; rationals are "p/q" strings. Readers throw
// Error(parse) on malformed input.

/// {"d", "part_sizes", "bipartition": {"A", "B"}, "copies": [[lo, hi], ...],
///  "factors": [[[b, a], ...], ...], "cycle_order", "in_family", "children"}.
/// Children carry the same fields in local labels.
std::string gd_to_json(const GdGraph& g);
/// Attaches sidecar metadata to a graph read from an edge list. Child graphs
/// are the subgraphs induced by the copy ranges.
GdGraph gd_from_json(const Graph& g, std::string_view text);

/// {"n", "pi"}.
std::string pi_graph_to_json(const PiGraph& p);
PiGraph pi_graph_from_json(std::string_view text);

/// {"total", "sum": node, "gap": node} with nodes
/// {"claim", "level", "vertices", "blocks", "terms": [{"kind", "A", "B", "C",
///  "B_prime", "factor", "bound"}], "subtotal", "children"}.
std::string certificate_to_json(const Certificate& c);
Certificate certificate_from_json(std::string_view text);

/// {"variables", "constraints", "objective"} and, when given, "solution".
std::string lp_to_json(const LPProblem& p, const LPSolution* s = nullptr);

/// {"max_load", "pieces": [{"parts", "weight"}]}.
std::string cover_to_json(const CoverSolution& c);

/// {"q", "lambda", "stars": [{"center", "leaves", "x", "mask"}]}.
std::string scheme_to_json(const DecompositionScheme& s);
DecompositionScheme scheme_from_json(const Graph& g, std::string_view text);

/// Verdicts, supports and the ratio.
std::string perfectness_to_json(const PerfectnessReport& r);

}  // namespace girthforge
