#include "girthforge/json_io.hpp"

#include "json.hpp"

#include "girthforge/error.hpp"

namespace girthforge {

using nlohmann::json;

namespace {

json rat(const Rational& r) { return to_string(r); }

Rational read_rat(const json& j) {
  if (j.is_number_integer()) return Rational(j.get<long>());
  return parse_rational(j.get<std::string>());
}

json factor_json(const OneFactor& f) {
  json out = json::array();
  for (auto [b, a] : f.pairs) out.push_back({b, a});
  return out;
}

OneFactor read_factor(const json& j) {
  OneFactor f;
  for (const auto& p : j) f.pairs.emplace_back(p.at(0).get<Vertex>(), p.at(1).get<Vertex>());
  return f;
}

template <class F>
auto parsing(std::string_view what, F body) {
  try {
    return body();
  } catch (const json::exception& e) {
    throw Error(Errc::parse, std::string(what) + ": " + e.what());
  }
}

Graph range_subgraph(const Graph& g, Vertex lo, Vertex hi) {
  std::vector<Edge> edges;
  for (const auto& e : g.edges())
    if (e.u >= lo && e.v < hi) edges.push_back({e.u - lo, e.v - lo});
  return Graph(hi - lo, std::move(edges));
}

json gd_json(const GdGraph& g) {
  json out{{"d", g.level},
           {"part_sizes", g.part_sizes},
           {"bipartition", {{"A", g.sides.a}, {"B", g.sides.b}}},
           {"in_family", g.in_family}};
  if (!g.cycle_order.empty()) out["cycle_order"] = g.cycle_order;
  json copies = json::array(), factors = json::array(), children = json::array();
  for (auto [lo, hi] : g.copies) copies.push_back({lo, hi});
  for (const auto& f : g.junctions) factors.push_back(factor_json(f));
  for (const auto& c : g.children) children.push_back(gd_json(c));
  out["copies"] = copies;
  out["factors"] = factors;
  out["children"] = children;
  return out;
}

GdGraph read_gd(const Graph& graph, const json& j) {
  GdGraph g;
  g.graph = graph;
  g.level = j.at("d").get<std::size_t>();
  g.part_sizes = j.at("part_sizes").get<std::vector<std::size_t>>();
  g.sides.a = j.at("bipartition").at("A").get<VertexSet>();
  g.sides.b = j.at("bipartition").at("B").get<VertexSet>();
  g.in_family = j.value("in_family", true);
  if (j.contains("cycle_order")) g.cycle_order = j.at("cycle_order").get<std::vector<Vertex>>();
  for (const auto& c : j.value("copies", json::array())) g.copies.emplace_back(c.at(0).get<Vertex>(), c.at(1).get<Vertex>());
  for (const auto& f : j.value("factors", json::array())) g.junctions.push_back(read_factor(f));
  const auto children = j.value("children", json::array());
  if (children.size() != g.copies.size()) throw Error(Errc::parse, "children and copies differ in number");
  for (std::size_t i = 0; i < g.copies.size(); ++i) {
    auto [lo, hi] = g.copies[i];
    if (lo > hi || hi > graph.vertex_count()) throw Error(Errc::parse, "copy range outside the graph");
    g.children.push_back(read_gd(range_subgraph(graph, lo, hi), children[i]));
  }
  return g;
}

json term_json(const TermBound& t) {
  return {{"kind", kind_name(t.kind)}, {"A", t.a}, {"B", t.b}, {"C", t.c}, {"B_prime", t.b_prime},
          {"factor", factor_json(t.factor)}, {"bound", rat(t.bound)}};
}

TermBound read_term(const json& j) {
  TermBound t;
  auto kind = parse_kind(j.at("kind").get<std::string>());
  if (!kind) throw Error(Errc::parse, "unknown term kind " + j.at("kind").get<std::string>());
  t.kind = *kind;
  t.a = j.at("A").get<VertexSet>();
  t.b = j.at("B").get<VertexSet>();
  t.c = j.value("C", VertexSet{});
  t.b_prime = j.value("B_prime", VertexSet{});
  t.factor = read_factor(j.value("factor", json::array()));
  t.bound = read_rat(j.at("bound"));
  return t;
}

json node_json(const CertificateNode& n) {
  json terms = json::array(), children = json::array();
  for (const auto& t : n.terms) terms.push_back(term_json(t));
  for (const auto& c : n.children) children.push_back(node_json(c));
  return {{"claim", n.claim == Claim::sum ? "sum" : "gap"},
          {"level", n.level},
          {"vertices", n.vertices},
          {"blocks", n.blocks},
          {"terms", terms},
          {"subtotal", rat(n.subtotal)},
          {"children", children}};
}

CertificateNode read_node(const json& j) {
  CertificateNode n;
  const auto claim = j.at("claim").get<std::string>();
  if (claim != "sum" && claim != "gap") throw Error(Errc::parse, "unknown claim " + claim);
  n.claim = claim == "sum" ? Claim::sum : Claim::gap;
  n.level = j.at("level").get<std::size_t>();
  n.vertices = j.at("vertices").get<VertexSet>();
  n.blocks = j.at("blocks").get<std::vector<VertexSet>>();
  for (const auto& t : j.at("terms")) n.terms.push_back(read_term(t));
  for (const auto& c : j.at("children")) n.children.push_back(read_node(c));
  n.subtotal = read_rat(j.at("subtotal"));
  return n;
}

json expr_json(const LPProblem& p, const LinearExpr& e) {
  json out = json::object();
  for (const auto& [k, c] : e) out[p.variables()[k].name] = rat(c);
  return out;
}

const char* sense_name(Sense s) {
  switch (s) {
    case Sense::le: return "<=";
    case Sense::ge: return ">=";
    case Sense::eq: return "=";
  }
  return "?";
}

}  // namespace

std::string gd_to_json(const GdGraph& g) { return gd_json(g).dump(); }

GdGraph gd_from_json(const Graph& g, std::string_view text) {
  return parsing("family sidecar", [&] { return read_gd(g, json::parse(text)); });
}

std::string pi_graph_to_json(const PiGraph& p) { return json{{"n", p.n}, {"pi", p.pi}}.dump(); }

PiGraph pi_graph_from_json(std::string_view text) {
  return parsing("π-graph sidecar", [&] {
    const auto j = json::parse(text);
    auto p = make_pi_graph(j.at("pi").get<std::vector<std::uint32_t>>());
    if (j.contains("n") && j.at("n").get<std::size_t>() != p.n) throw Error(Errc::parse, "n disagrees with pi");
    return p;
  });
}

std::string certificate_to_json(const Certificate& c) {
  return json{{"total", rat(c.total())}, {"sum", node_json(c.sum)}, {"gap", node_json(c.gap)}}.dump();
}

Certificate certificate_from_json(std::string_view text) {
  return parsing("certificate", [&] {
    const auto j = json::parse(text);
    Certificate c;
    c.sum = read_node(j.at("sum"));
    c.gap = read_node(j.at("gap"));
    return c;
  });
}

std::string lp_to_json(const LPProblem& p, const LPSolution* s) {
  json vars = json::array(), rows = json::array();
  for (const auto& v : p.variables())
    vars.push_back({{"name", v.name},
                    {"lower", v.lower ? json(rat(*v.lower)) : json(nullptr)},
                    {"upper", v.upper ? json(rat(*v.upper)) : json(nullptr)}});
  for (const auto& c : p.constraints())
    rows.push_back({{"name", c.name}, {"coefs", expr_json(p, c.coefs)}, {"sense", sense_name(c.sense)}, {"rhs", rat(c.rhs)}});
  json out{{"variables", vars}, {"constraints", rows}, {"objective", expr_json(p, p.objective())}};
  if (s) {
    json sol{{"status", status_name(s->status)}};
    if (s->status == LPStatus::optimal) {
      sol["objective"] = rat(s->objective);
      json primal = json::object();
      for (std::size_t k = 0; k < s->primal.size(); ++k) primal[p.variables()[k].name] = rat(s->primal[k]);
      json dual = json::array();
      for (const auto& y : s->dual) dual.push_back(rat(y));
      sol["primal"] = primal;
      sol["dual"] = dual;
    }
    out["solution"] = sol;
  }
  return out.dump();
}

std::string cover_to_json(const CoverSolution& c) {
  json pieces = json::array();
  for (const auto& p : c.pieces) pieces.push_back({{"parts", p.parts}, {"weight", rat(p.weight)}});
  return json{{"max_load", rat(c.max_load)}, {"pieces", pieces}}.dump();
}

std::string scheme_to_json(const DecompositionScheme& s) {
  json stars = json::array();
  for (std::size_t i = 0; i < s.stars.size(); ++i) {
    const auto& st = s.stars[i];
    json star{{"center", st.center}, {"leaves", st.leaves}, {"x", st.x}};
    if (st.multiplicity != 1) star["multiplicity"] = st.multiplicity;
    if (i < s.randomness.size()) star["mask"] = s.randomness[i];
    stars.push_back(star);
  }
  return json{{"q", s.q}, {"lambda", s.lambda}, {"stars", stars}}.dump();
}

DecompositionScheme scheme_from_json(const Graph& g, std::string_view text) {
  return parsing("scheme", [&] {
    const auto j = json::parse(text);
    DecompositionScheme s;
    s.graph = g;
    s.q = j.at("q").get<std::uint64_t>();
    s.lambda = j.at("lambda").get<std::size_t>();
    for (const auto& st : j.at("stars")) {
      Star star{st.at("center").get<Vertex>(), st.at("leaves").get<VertexSet>(), st.value("multiplicity", std::size_t{1}),
                st.value("x", std::uint64_t{0})};
      if (!g.contains(star.center)) throw Error(Errc::parse, "star center outside the graph");
      for (Vertex leaf : star.leaves)
        if (!g.adjacent(star.center, leaf)) throw Error(Errc::parse, "star leaf is not a neighbor of its center");
      s.stars.push_back(std::move(star));
      if (st.contains("mask")) s.randomness.push_back(st.at("mask").get<std::size_t>());
    }
    if (!s.randomness.empty() && s.randomness.size() != s.stars.size())
      throw Error(Errc::parse, "masks given for some stars only");
    for (auto m : s.randomness)
      if (m >= s.stars.size()) throw Error(Errc::parse, "mask index out of range");
    return s;
  });
}

std::string perfectness_to_json(const PerfectnessReport& r) {
  json edges = json::array(), sets = json::array();
  for (const auto& e : r.edges) edges.push_back({{"edge", {e.u, e.v}}, {"determines", e.determines}});
  for (const auto& s : r.independent_sets) sets.push_back({{"set", s.set}, {"independent", s.independent}});
  json out{{"perfect", r.perfect()}, {"uniform", r.uniform}, {"edges", edges},
           {"independent_sets", sets}, {"support", r.support}};
  out["ratio"] = r.ratio ? json(rat(*r.ratio)) : json(nullptr);
  if (!r.perfect()) out["failure"] = r.first_failure();
  return out.dump();
}

}  // namespace girthforge
