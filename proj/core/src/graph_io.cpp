#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

#include "girthforge/error.hpp"
#include "girthforge/graph.hpp"

namespace girthforge {

namespace {

bool next_data_line(std::istream& in, std::string& line, std::size_t& lineno) {
  while (std::getline(in, line)) {
    ++lineno;
    auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos || line[first] == '#') continue;
    return true;
  }
  return false;
}

}  // namespace

Graph read_edge_list(std::istream& in) {
  std::string line;
  std::size_t lineno = 0;
  if (!next_data_line(in, line, lineno)) throw Error(Errc::parse, "missing '<n> <m>' header");
  std::istringstream header(line);
  long long n = -1, m = -1;
  if (!(header >> n >> m) || n < 0 || m < 0)
    throw Error(Errc::parse, "line " + std::to_string(lineno) + ": bad header");
  std::vector<Edge> edges;
  edges.reserve(static_cast<std::size_t>(m));
  for (long long i = 0; i < m; ++i) {
    if (!next_data_line(in, line, lineno))
      throw Error(Errc::parse, "expected " + std::to_string(m) + " edges, found " + std::to_string(i));
    std::istringstream row(line);
    long long u = -1, v = -1;
    if (!(row >> u >> v) || u < 0 || v < 0)
      throw Error(Errc::parse, "line " + std::to_string(lineno) + ": bad edge");
    edges.push_back({static_cast<Vertex>(u), static_cast<Vertex>(v)});
  }
  return Graph(static_cast<std::size_t>(n), std::move(edges));
}

void write_edge_list(std::ostream& out, const Graph& g) {
  out << g.vertex_count() << ' ' << g.edge_count() << '\n';
  for (const auto& e : g.edges()) out << e.u << ' ' << e.v << '\n';
}

Graph load_edge_list(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(Errc::parse, "cannot open " + path);
  return read_edge_list(in);
}

void save_edge_list(const std::string& path, const Graph& g) {
  std::ofstream out(path);
  if (!out) throw Error(Errc::parse, "cannot write " + path);
  write_edge_list(out, g);
}

}  // namespace girthforge
