// girthforge: build family members and π-graphs, bound their information
// ratio, certify and audit the sum bound, and check star schemes.

#include <cstdlib>
#include <fstream>
#include <functional>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "girthforge/certificate.hpp"
#include "girthforge/cover.hpp"
#include "girthforge/entropy_lp.hpp"
#include "girthforge/error.hpp"
#include "girthforge/family.hpp"
#include "girthforge/json_io.hpp"
#include "girthforge/large_girth.hpp"
#include "girthforge/pi_graph.hpp"
#include "girthforge/rng.hpp"
#include "girthforge/scheme.hpp"

namespace gf = girthforge;
using nlohmann::json;

namespace {

enum Exit { kOk = 0, kFailed = 1, kUsage = 2, kBudget = 3 };

struct Run {
  std::uint64_t seed = 0;
  unsigned jobs = 1;
  bool decimal = false;
  std::string graph = "-";
  std::string meta;
  std::string out;
};

// A verification failure reported with exit code 1.
struct Failure {
  std::string code;
  std::string message;
};

Exit exit_for(gf::Errc code) {
  switch (code) {
    case gf::Errc::retries_exhausted:
    case gf::Errc::infeasible_at_budget:
    case gf::Errc::budget_exceeded:
    case gf::Errc::size_limit:
      return kBudget;
    case gf::Errc::not_regular:
    case gf::Errc::not_bipartite:
    case gf::Errc::witness_failure:
    case gf::Errc::nonuniform_share:
      return kFailed;
    default:
      return kUsage;
  }
}

void report_error(const std::string& code, const std::string& message, const Run& run,
                  const std::vector<std::uint64_t>& witness = {}) {
  json err{{"error", code}, {"message", message}, {"seed", run.seed}};
  if (!witness.empty()) err["witness"] = witness;
  std::cerr << err.dump() << "\n";
}

std::string slurp(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw gf::Error(gf::Errc::parse, "cannot open " + path);
  std::ostringstream text;
  text << in.rdbuf();
  return text.str();
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path);
  if (!out) throw gf::Error(gf::Errc::parse, "cannot write " + path);
  out << text;
}

gf::Graph load_graph(const Run& run) {
  if (run.graph == "-") return gf::read_edge_list(std::cin);
  return gf::load_edge_list(run.graph);
}

// --meta, or the .json next to a .edges file.
std::string sidecar_path(const Run& run) {
  if (!run.meta.empty()) return run.meta;
  const std::string suffix = ".edges";
  if (run.graph.size() > suffix.size() && run.graph.ends_with(suffix)) {
    auto path = run.graph.substr(0, run.graph.size() - suffix.size()) + ".json";
    if (std::ifstream(path)) return path;
  }
  throw gf::Error(gf::Errc::structure_unknown, "no family sidecar: pass --meta");
}

gf::GdGraph load_family(const Run& run) {
  auto g = load_graph(run);
  return gf::gd_from_json(g, json::parse(slurp(sidecar_path(run))).at("family").dump());
}

std::string rational_text(const gf::Rational& r, const Run& run) {
  return run.decimal ? gf::to_string(r) + " " + gf::to_decimal(r) : gf::to_string(r);
}

gf::VertexSet parse_vertices(const std::string& text) {
  gf::VertexSet out;
  std::stringstream in(text);
  std::string item;
  while (std::getline(in, item, ',')) {
    if (!item.empty() && (item[0] == 'v' || item[0] == 'V')) item.erase(0, 1);
    if (item.empty() || item.find_first_not_of("0123456789") != std::string::npos)
      throw gf::Error(gf::Errc::parse, "bad vertex '" + item + "'");
    out.push_back(static_cast<gf::Vertex>(std::stoul(item)));
  }
  return gf::make_set(std::move(out));
}

std::vector<std::uint32_t> parse_list(const std::string& text) {
  std::vector<std::uint32_t> out;
  std::stringstream in(text);
  std::string item;
  while (std::getline(in, item, ',')) {
    if (item.empty() || item.find_first_not_of("0123456789") != std::string::npos)
      throw gf::Error(gf::Errc::parse, "bad list entry '" + item + "'");
    out.push_back(static_cast<std::uint32_t>(std::stoul(item)));
  }
  return out;
}

// Edge list to <out>.edges and the sidecar to <out>.json, or the edge list
// alone to stdout.
void emit_graph(const Run& run, const gf::Graph& g, json sidecar) {
  sidecar["seed"] = run.seed;
  if (run.out.empty()) {
    gf::write_edge_list(std::cout, g);
    return;
  }
  gf::save_edge_list(run.out + ".edges", g);
  write_file(run.out + ".json", sidecar.dump(2) + "\n");
}

json family_sidecar(const gf::GdGraph& g) { return json{{"family", json::parse(gf::gd_to_json(g))}}; }

json build_json(const gf::PiGraphBuild& b) {
  json sites = json::array();
  for (const auto& s : b.sites)
    sites.push_back({{"u", s.u}, {"l", s.l}, {"unmatched_a", s.unmatched_a}, {"unmatched_b", s.unmatched_b}});
  return {{"target", b.target},
          {"girth", b.girth ? json(*b.girth) : json(nullptr)},
          {"attempts", b.attempts},
          {"attempt_seed", b.attempt_seed},
          {"leftover", b.leftover},
          {"surgery", b.surgery},
          {"sites", sites},
          {"guarantee_met", b.guarantee_met}};
}

// ---- gen ----

void gen_cycle(const Run& run, std::size_t n) {
  auto g = gf::build_cycle(n);
  emit_graph(run, g.graph, family_sidecar(g));
}

gf::GdGraph build_parts(const std::vector<std::size_t>& parts, std::uint64_t seed) {
  if (parts.empty()) throw gf::Error(gf::Errc::precondition, "--parts needs at least the cycle length");
  auto g = gf::build_cycle(parts[0]);
  for (std::size_t k = 1; k < parts.size(); ++k) {
    std::vector<gf::GdGraph> copies(parts[k], g);
    g = gf::extend_family(copies, gf::RandomFactors{gf::Rng::derive(seed, k)});
  }
  return g;
}

void gen_gd(const Run& run, const std::vector<std::size_t>& parts) {
  auto g = build_parts(parts, run.seed);
  emit_graph(run, g.graph, family_sidecar(g));
}

void gen_pigraph(const Run& run, std::size_t girth, std::size_t n, std::size_t retries, bool no_surgery,
                 std::optional<std::size_t> stop_below) {
  auto b = gf::build_pi_graph(girth, n, run.seed, {retries, !no_surgery, stop_below});
  json sidecar{{"pigraph", json::parse(gf::pi_graph_to_json(b.result))}, {"build", build_json(b)}};
  emit_graph(run, b.result.graph, sidecar);
  std::cerr << "girth " << (b.girth ? std::to_string(*b.girth) : "INFINITE") << "\n";
}

void gen_h(const Run& run, std::size_t m, const std::string& pigraph, const std::string& pi_text) {
  gf::GdGraph base;
  std::vector<std::uint32_t> pi;
  if (!pigraph.empty()) {
    auto p = gf::pi_graph_from_json(json::parse(slurp(pigraph)).at("pigraph").dump());
    base = gf::pi_base_cycle(p);
    pi = gf::pi_side_permutation(p);
  } else {
    base = load_family(run);
    pi = parse_list(pi_text);
  }
  auto h = gf::build_h(m, base, pi);
  bool projection = gf::check_homomorphism(h.graph, gf::pi_union(base, pi), gf::copy_projection(h));
  auto sidecar = family_sidecar(h);
  sidecar["projection_ok"] = projection;
  emit_graph(run, h.graph, sidecar);
}

void gen_large_girth(const Run& run, std::size_t d, std::size_t target, const std::string& policy,
                     std::size_t max_vertices, const std::string& source, std::size_t retries) {
  if (policy == "guaranteed") {
    json levels = json::array();
    for (const auto& e : gf::guaranteed_sizes(d, target))
      levels.push_back({{"level", e.level},
                        {"formula", e.formula},
                        {"value", e.value ? json(gf::to_string(*e.value)) : json(nullptr)},
                        {"log2", e.log2 ? json(gf::to_string(*e.log2)) : json(nullptr)}});
    json out{{"d", d}, {"girth_target", target}, {"levels", levels}, {"seed", run.seed}};
    std::cout << out.dump(2) << "\n";
    return;
  }
  gf::PracticalPolicy p;
  p.seed = run.seed;
  p.retries = retries;
  p.max_vertices = max_vertices;
  p.jobs = run.jobs;
  p.factor_source = source == "relabeled" ? gf::FactorSource::relabeled_pi_graph : gf::FactorSource::host_greedy;
  auto r = gf::build_large_girth(d, target, p);
  json levels = json::array();
  for (const auto& l : r.levels)
    levels.push_back({{"level", l.level},
                      {"vertices", l.vertices},
                      {"copies", l.copies},
                      {"girth", l.girth ? json(*l.girth) : json(nullptr)},
                      {"union_girth", l.union_girth ? json(*l.union_girth) : json(nullptr)}});
  auto sidecar = family_sidecar(r.graph);
  sidecar["girth"] = r.girth ? json(*r.girth) : json(nullptr);
  sidecar["girth_target"] = target;
  sidecar["projection_ok"] = r.projection_ok;
  sidecar["levels"] = levels;
  if (r.base) sidecar["base"] = build_json(*r.base);
  emit_graph(run, r.graph.graph, sidecar);
  std::cerr << "girth " << (r.girth ? std::to_string(*r.girth) : "INFINITE") << " on "
            << r.graph.graph.vertex_count() << " vertices\n";
}

// ---- check ----

std::optional<Failure> check_girth(const Run& run, std::optional<std::size_t> above) {
  auto g = load_graph(run);
  auto girth = gf::girth(g, run.jobs);
  std::cout << (girth ? std::to_string(*girth) : "INFINITE") << "\n";
  if (above && girth && *girth <= *above)
    return Failure{"GIRTH_TOO_SMALL", "girth " + std::to_string(*girth) + " <= " + std::to_string(*above)};
  return std::nullopt;
}

void check_regular(const Run& run, std::size_t d) {
  auto g = load_graph(run);
  auto sides = gf::check_regular_bipartite(g, d);
  std::cout << json{{"regular", d}, {"A", sides.a}, {"B", sides.b}}.dump() << "\n";
}

void check_bipartite(const Run& run) {
  auto g = load_graph(run);
  auto sides = gf::bipartition(g);
  std::cout << json{{"A", sides.a}, {"B", sides.b}}.dump() << "\n";
}

// ---- bound ----

void bound_cover(const Run& run, bool multipartite, const std::string& cover_out) {
  auto g = load_graph(run);
  auto c = multipartite ? gf::multipartite_cover_minmax(g) : gf::star_cover_minmax(g);
  if (!gf::verify_cover(g, c)) throw gf::Error(gf::Errc::witness_failure, "cover does not re-verify");
  std::cout << rational_text(c.max_load, run) << "\n";
  if (!cover_out.empty()) write_file(cover_out, gf::cover_to_json(c) + "\n");
}

void bound_entropy(const Run& run, const std::string& objective, const std::string& set, const std::string& lp_out,
                   bool full) {
  auto g = load_graph(run);
  gf::EntropyLPConfig config;
  config.families = full ? gf::StrictFamilies::full : gf::StrictFamilies::reduced;
  if (!set.empty()) {
    config.objective = gf::EntropyObjective::set_query;
    config.query = parse_vertices(set);
  } else if (objective == "sum") {
    config.objective = gf::EntropyObjective::sum;
  } else if (objective != "minmax") {
    throw gf::Error(gf::Errc::parse, "objective must be minmax or sum");
  }
  auto bound = gf::solve_entropy_lp(g, config);
  std::cout << rational_text(bound.value, run) << "\n";
  if (!lp_out.empty()) write_file(lp_out, gf::lp_to_json(gf::build_entropy_lp(g, config), &bound.solution) + "\n");
}

// ---- certify / audit ----

void certify(const Run& run) {
  auto g = load_family(run);
  auto c = gf::certify_sum_bound(g);
  auto text = json::parse(gf::certificate_to_json(c));
  text["seed"] = run.seed;
  if (run.out.empty()) {
    std::cout << text.dump() << "\n";
  } else {
    write_file(run.out, text.dump() + "\n");
    std::cout << rational_text(c.total(), run) << "\n";
  }
}

std::optional<Failure> audit(const Run& run, const std::string& cert, std::size_t trials) {
  auto g = load_graph(run);
  auto c = gf::certificate_from_json(slurp(cert));
  auto r = gf::audit_certificate(g, c, trials, run.seed, run.jobs);
  if (!r) return Failure{"AUDIT_FAILED", r.failure};
  std::cout << json{{"ok", true}, {"total", gf::to_string(r.sum_total)}, {"gap_total", gf::to_string(r.gap_total)},
                    {"nodes", r.nodes}, {"terms", r.terms}, {"trials", trials}, {"seed", run.seed}}
                   .dump()
            << "\n";
  return std::nullopt;
}

// ---- scheme ----

void scheme_realize(const Run& run, std::uint64_t q, const std::string& shared) {
  auto g = load_graph(run);
  auto s = gf::realize_scheme(gf::make_star_decomposition(g), q);
  if (!shared.empty()) {
    auto pair = parse_list(shared);
    if (pair.size() != 2) throw gf::Error(gf::Errc::parse, "--share-mask takes two star indices");
    s = gf::share_randomness(std::move(s), pair[0], pair[1]);
  }
  auto text = gf::scheme_to_json(s);
  if (run.out.empty()) std::cout << text << "\n";
  else write_file(run.out, text + "\n");
}

std::optional<Failure> scheme_verify(const Run& run, const std::string& scheme, std::uint64_t budget,
                                     bool structural) {
  auto g = load_graph(run);
  auto s = gf::scheme_from_json(g, slurp(scheme));
  if (s.randomness.empty())
    for (std::size_t i = 0; i < s.stars.size(); ++i) s.randomness.push_back(i);
  if (structural) {
    std::cout << json{{"ratio", gf::to_string(gf::structural_ratio(s))}, {"perfect", nullptr},
                      {"flag", "STRUCTURAL_ONLY"}}
                     .dump()
              << "\n";
    return std::nullopt;
  }
  auto jd = gf::enumerate_joint(s, budget);
  auto report = gf::verify_perfect(g, jd, run.jobs);
  auto text = json::parse(gf::perfectness_to_json(report));
  text["states"] = jd.states();
  std::cout << text.dump() << "\n";
  if (!report.perfect()) return Failure{"NOT_PERFECT", report.first_failure()};
  if (!report.uniform) return Failure{"NONUNIFORM_SHARE", "some share is not uniform on its coordinates"};
  return std::nullopt;
}

std::uint64_t env_seed() {
  const char* text = std::getenv("GIRTHFORGE_SEED");
  if (!text || !*text) return 0;
  try {
    return std::stoull(text);
  } catch (const std::exception&) {
    throw gf::Error(gf::Errc::parse, "GIRTHFORGE_SEED is not an unsigned integer");
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Graph family construction, information-ratio bounds, certificates and star schemes"};
  app.require_subcommand(1);
  app.fallthrough();
  Run run;
  std::optional<std::uint64_t> seed_flag;
  app.add_option("--seed", seed_flag, "Seed for every randomized step (default $GIRTHFORGE_SEED, else 0)");
  app.add_option("--jobs", run.jobs, "Threads for parallel inner loops")->check(CLI::PositiveNumber);
  app.add_flag("--decimal", run.decimal, "Also print a 6-place decimal after each exact value");

  auto graph_opts = [&](CLI::App* cmd) {
    cmd->add_option("--graph", run.graph, "Edge-list file ('-' reads stdin)");
  };
  auto family_opts = [&](CLI::App* cmd) {
    graph_opts(cmd);
    cmd->add_option("--meta", run.meta, "Family sidecar JSON (default: <graph>.json for <graph>.edges)");
  };
  auto out_opt = [&](CLI::App* cmd, const std::string& help) { cmd->add_option("--out", run.out, help); };
  std::function<std::optional<Failure>()> action;

  // gen
  auto* gen = app.add_subcommand("gen", "Construct graphs");
  gen->require_subcommand(1);
  const std::string gen_out = "Write <out>.edges and <out>.json instead of the edge list on stdout";

  std::size_t cycle_n = 0;
  auto* cycle = gen->add_subcommand("cycle", "Even cycle, the level-2 member");
  cycle->add_option("--n", cycle_n, "Vertex count (even, >= 6)")->required();
  out_opt(cycle, gen_out);
  cycle->callback([&] { action = [&] { gen_cycle(run, cycle_n); return std::optional<Failure>{}; }; });

  std::vector<std::size_t> parts;
  auto* gd = gen->add_subcommand("gd", "Family member from part sizes n_2,n_3,... with seeded junctions");
  gd->add_option("--parts", parts, "Cycle length then copy counts, e.g. 6,5,5")->required()->delimiter(',');
  out_opt(gd, gen_out);
  gd->callback([&] { action = [&] { gen_gd(run, parts); return std::optional<Failure>{}; }; });

  std::size_t pi_girth = 0, pi_n = 0, pi_retries = 10;
  bool no_surgery = false;
  std::optional<std::size_t> stop_below;
  auto* pig = gen->add_subcommand("pigraph", "3-regular π-graph with girth above a target");
  pig->add_option("--girth", pi_girth, "Girth target g (> 3)")->required();
  pig->add_option("--n", pi_n, "Half the vertex count")->required();
  pig->add_option("--retries", pi_retries, "Seeded restarts");
  pig->add_flag("--no-surgery", no_surgery, "Fail instead of repairing stalled attempts");
  pig->add_option("--stop-below", stop_below, "End the greedy phase below this many unmatched vertices");
  out_opt(pig, gen_out);
  pig->callback([&] {
    action = [&] {
      gen_pigraph(run, pi_girth, pi_n, pi_retries, no_surgery, stop_below);
      return std::optional<Failure>{};
    };
  });

  std::size_t h_m = 0;
  std::string h_pigraph, h_pi;
  auto* h = gen->add_subcommand("h", "H(m, G, pi): m copies of G joined by pi");
  h->add_option("--m", h_m, "Copy count (>= 2; family member from 5)")->required();
  h->add_option("--pigraph", h_pigraph, "π-graph sidecar: G is its cycle, pi its factor");
  family_opts(h);
  h->add_option("--pi", h_pi, "A-index to B-index permutation, comma separated");
  out_opt(h, gen_out);
  h->callback([&] { action = [&] { gen_h(run, h_m, h_pigraph, h_pi); return std::optional<Failure>{}; }; });

  std::size_t lg_d = 0, lg_girth = 0, lg_max = 2'000'000, lg_retries = 10;
  std::string lg_policy = "practical", lg_source = "host";
  auto* lg = gen->add_subcommand("large-girth", "Level-d member with girth above a target");
  lg->add_option("--d", lg_d, "Level")->required();
  lg->add_option("--girth", lg_girth, "Girth target (> 3)")->required();
  lg->add_option("--policy", lg_policy, "practical | guaranteed")->check(CLI::IsMember({"practical", "guaranteed"}));
  lg->add_option("--max-vertices", lg_max, "Vertex budget for the practical search");
  lg->add_option("--factor-source", lg_source, "host | relabeled")->check(CLI::IsMember({"host", "relabeled"}));
  lg->add_option("--retries", lg_retries, "Seeded restarts per factor");
  out_opt(lg, gen_out);
  lg->callback([&] {
    action = [&] {
      gen_large_girth(run, lg_d, lg_girth, lg_policy, lg_max, lg_source, lg_retries);
      return std::optional<Failure>{};
    };
  });

  // check
  auto* check = app.add_subcommand("check", "Graph predicates");
  check->require_subcommand(1);
  std::optional<std::size_t> girth_above;
  auto* cg = check->add_subcommand("girth", "Shortest cycle length");
  graph_opts(cg);
  cg->add_option("--above", girth_above, "Fail unless the girth exceeds this");
  cg->callback([&] { action = [&] { return check_girth(run, girth_above); }; });
  std::size_t reg_d = 0;
  auto* cr = check->add_subcommand("regular", "d-regular and bipartite");
  graph_opts(cr);
  cr->add_option("--d", reg_d, "Degree")->required();
  cr->callback([&] { action = [&] { check_regular(run, reg_d); return std::optional<Failure>{}; }; });
  auto* cb = check->add_subcommand("bipartite", "2-coloring");
  graph_opts(cb);
  cb->callback([&] { action = [&] { check_bipartite(run); return std::optional<Failure>{}; }; });

  // bound
  auto* bound = app.add_subcommand("bound", "Exact information-ratio bounds");
  bound->require_subcommand(1);
  std::string cover_out, lp_out, objective = "minmax", query;
  bool full_families = false;
  auto* sc = bound->add_subcommand("star-cover", "Fractional star cover, minimum max load");
  graph_opts(sc);
  sc->add_option("--cover-json", cover_out, "Write the weighted cover");
  sc->callback([&] { action = [&] { bound_cover(run, false, cover_out); return std::optional<Failure>{}; }; });
  auto* mc = bound->add_subcommand("multipartite-cover", "Fractional complete-multipartite cover (<= 10 vertices)");
  graph_opts(mc);
  mc->add_option("--cover-json", cover_out, "Write the weighted cover");
  mc->callback([&] { action = [&] { bound_cover(run, true, cover_out); return std::optional<Failure>{}; }; });
  auto* en = bound->add_subcommand("entropy", "Entropy-method LP lower bound (<= 10 vertices)");
  graph_opts(en);
  en->add_option("--objective", objective, "minmax | sum")->check(CLI::IsMember({"minmax", "sum"}));
  en->add_option("--set", query, "Minimize f of this vertex set instead, e.g. v2,v3");
  en->add_option("--lp-json", lp_out, "Write the LP and its solution");
  en->add_flag("--full-families", full_families, "Generate every strict constraint instead of the reduced families");
  en->callback([&] {
    action = [&] {
      bound_entropy(run, objective, query, lp_out, full_families);
      return std::optional<Failure>{};
    };
  });

  // certify / audit
  auto* cert = app.add_subcommand("certify", "Certificate for sum f(v) >= (d+1)/2 |V|");
  family_opts(cert);
  out_opt(cert, "Write the certificate here and print the total");
  cert->callback([&] { action = [&] { certify(run); return std::optional<Failure>{}; }; });
  std::string cert_in;
  std::size_t trials = 100;
  auto* aud = app.add_subcommand("audit", "Re-verify a certificate against a graph");
  graph_opts(aud);
  aud->add_option("--cert", cert_in, "Certificate JSON")->required();
  aud->add_option("--trials", trials, "Random set functions per identity check");
  aud->callback([&] { action = [&] { return audit(run, cert_in, trials); }; });

  // scheme
  auto* scheme = app.add_subcommand("scheme", "Star-decomposition secret sharing");
  scheme->require_subcommand(1);
  std::uint64_t q = 0, budget = gf::kEnumerationBudget;
  std::string shared, scheme_in;
  bool structural = false;
  auto* sr = scheme->add_subcommand("realize", "Star scheme over GF(q)");
  graph_opts(sr);
  sr->add_option("--q", q, "Prime field order, larger than the star count")->required();
  sr->add_option("--share-mask", shared, "Fault injection: star j reuses the mask of star i (i,j)");
  out_opt(sr, "Write the scheme JSON here");
  sr->callback([&] { action = [&] { scheme_realize(run, q, shared); return std::optional<Failure>{}; }; });
  auto* sv = scheme->add_subcommand("verify", "Exhaustive perfectness check and measured ratio");
  graph_opts(sv);
  sv->add_option("--scheme", scheme_in, "Scheme JSON")->required();
  sv->add_option("--budget", budget, "Maximum number of enumerated states");
  sv->add_flag("--structural-only", structural, "Report the ratio from the star structure without enumerating");
  sv->callback([&] { action = [&] { return scheme_verify(run, scheme_in, budget, structural); }; });

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    report_error("USAGE", e.what(), run);
    return kUsage;
  }

  try {
    run.seed = seed_flag ? *seed_flag : env_seed();
    if (!action) {
      report_error("USAGE", "no command", run);
      return kUsage;
    }
    if (auto failure = action()) {
      report_error(failure->code, failure->message, run);
      return kFailed;
    }
    return kOk;
  } catch (const gf::Error& e) {
    report_error(std::string(gf::errc_name(e.code())), e.what(), run, e.witness());
    return exit_for(e.code());
  } catch (const json::exception& e) {
    report_error("PARSE", e.what(), run);
    return kUsage;
  } catch (const std::exception& e) {
    report_error("INTERNAL", e.what(), run);
    return kUsage;
  }
}
