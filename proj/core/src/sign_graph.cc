#include "paritylab/sign_graph.h"

#include <algorithm>
#include <bit>
#include <charconv>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>

#include "paritylab/errors.h"
#include "paritylab/rng.h"

namespace paritylab {

namespace {

void CheckVertex(const SignGraph& g, Vertex v, const char* who) {
  if (v < 0 || v >= g.size()) {
    throw std::invalid_argument(std::string(who) + ": vertex " +
                                std::to_string(v) + " outside [0, " +
                                std::to_string(g.size()) + ")");
  }
}

void CheckVertices(const SignGraph& g, std::span<const Vertex> s, const char* who) {
  for (Vertex v : s) CheckVertex(g, v, who);
}

}  // namespace

int SignGraph::degree(Vertex v) const {
  int count = 0;
  for (std::uint64_t w : row(v)) count += std::popcount(w);
  return count - 1;  // diagonal bit
}

SignGraph::Builder::Builder(int n) {
  if (n <= 0) throw std::invalid_argument("SignGraph: n must be positive");
  graph_.n_ = n;
  graph_.words_ = (static_cast<std::size_t>(n) + 63) / 64;
  graph_.bits_.assign(graph_.words_ * static_cast<std::size_t>(n), 0);
  for (Vertex i = 0; i < n; ++i) {
    graph_.bits_[static_cast<std::size_t>(i) * graph_.words_ + (i >> 6)] |=
        std::uint64_t{1} << (i & 63);
  }
}

SignGraph::Builder::Builder(const SignGraph& g) : graph_(g) {}

SignGraph::Builder& SignGraph::Builder::set_edge(Vertex i, Vertex j, bool present) {
  CheckVertex(graph_, i, "set_edge");
  CheckVertex(graph_, j, "set_edge");
  if (i == j) return *this;
  auto set = [&](Vertex a, Vertex b) {
    std::uint64_t& w = graph_.bits_[static_cast<std::size_t>(a) * graph_.words_ + (b >> 6)];
    const std::uint64_t mask = std::uint64_t{1} << (b & 63);
    w = present ? (w | mask) : (w & ~mask);
  };
  set(i, j);
  set(j, i);
  return *this;
}

SignGraph SignGraph::Builder::build() && { return std::move(graph_); }

SignGraph SampleGnpHalf(int n, std::uint64_t seed) {
  if (n <= 0) throw std::invalid_argument("SampleGnpHalf: n must be positive");
  SignGraph::Builder b(n);
  Rng rng(seed);
  // Strict lower triangle, row by row, 64 coin flips per draw.
  for (Vertex i = 1; i < n; ++i) {
    std::uint64_t word = 0;
    int left = 0;
    for (Vertex j = 0; j < i; ++j) {
      if (left == 0) {
        word = rng();
        left = 64;
      }
      b.set_edge(i, j, word & 1U);
      word >>= 1;
      --left;
    }
  }
  return std::move(b).build();
}

PlantedInstance PlantClique(const SignGraph& g, int p, std::uint64_t seed) {
  if (p <= 0 || p > g.size()) {
    throw std::invalid_argument("PlantClique: p must lie in [1, n]");
  }
  Rng rng(seed);
  VertexSet clique = SampleSubset(g.size(), p, rng);
  SignGraph::Builder b(g);
  for (std::size_t a = 0; a < clique.size(); ++a) {
    for (std::size_t c = a + 1; c < clique.size(); ++c) {
      b.set_edge(clique[a], clique[c], true);
    }
  }
  return {std::move(b).build(), std::move(clique)};
}

SignGraph CompleteGraph(int n) {
  SignGraph::Builder b(n);
  for (Vertex i = 0; i < n; ++i)
    for (Vertex j = 0; j < i; ++j) b.set_edge(i, j, true);
  return std::move(b).build();
}

SignGraph GraphFromEdges(int n, std::span<const std::pair<Vertex, Vertex>> edges) {
  SignGraph::Builder b(n);
  for (auto [i, j] : edges) b.set_edge(i, j, true);
  return std::move(b).build();
}

int EdgeSign(const SignGraph& g, Vertex i, Vertex j) {
  CheckVertex(g, i, "EdgeSign");
  CheckVertex(g, j, "EdgeSign");
  return g.sign(i, j);
}

VertexSet CommonNeighbors(const SignGraph& g, std::span<const Vertex> q) {
  CheckVertices(g, q, "CommonNeighbors");
  const std::size_t words = g.words_per_row();
  std::vector<std::uint64_t> acc(words, ~std::uint64_t{0});
  if (g.size() % 64 != 0) acc.back() = (std::uint64_t{1} << (g.size() % 64)) - 1;
  for (Vertex v : q) {
    auto r = g.row(v);
    for (std::size_t w = 0; w < words; ++w) acc[w] &= r[w];
  }
  VertexSet out;
  for (std::size_t w = 0; w < words; ++w) {
    std::uint64_t bits = acc[w];
    while (bits) {
      out.push_back(static_cast<Vertex>(w * 64 + std::countr_zero(bits)));
      bits &= bits - 1;
    }
  }
  return out;
}

int DegreeWithin(const SignGraph& g, Vertex v, std::span<const Vertex> s) {
  CheckVertex(g, v, "DegreeWithin");
  CheckVertices(g, s, "DegreeWithin");
  int count = 0;
  for (Vertex u : s) count += (u != v && g.adjacent(v, u)) ? 1 : 0;
  return count;
}

bool IsClique(const SignGraph& g, std::span<const Vertex> s) {
  CheckVertices(g, s, "IsClique");
  for (std::size_t a = 0; a < s.size(); ++a)
    for (std::size_t b = a + 1; b < s.size(); ++b)
      if (s[a] != s[b] && !g.adjacent(s[a], s[b])) return false;
  return true;
}

void WriteInstance(std::ostream& out, const SignGraph& g, const VertexSet* clique) {
  out << "n=" << g.size() << '\n';
  std::string line;
  for (Vertex k = 1; k < g.size(); ++k) {
    line.assign(static_cast<std::size_t>(k), '0');
    for (Vertex j = 0; j < k; ++j)
      if (g.adjacent(k, j)) line[static_cast<std::size_t>(j)] = '1';
    out << line << '\n';
  }
  if (clique != nullptr && !clique->empty()) {
    out << "P=";
    for (std::size_t i = 0; i < clique->size(); ++i) {
      if (i) out << ',';
      out << (*clique)[i];
    }
    out << '\n';
  }
}

namespace {

void WriteToFile(const std::filesystem::path& path, const SignGraph& g,
                 const VertexSet* clique) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open " + path.string() + " for writing");
  WriteInstance(out, g, clique);
  if (!out) throw std::runtime_error("write failed: " + path.string());
}

int ParseInt(std::string_view text, std::size_t line_no, const char* what) {
  int value = 0;
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc() || ptr != text.data() + text.size()) {
    throw ParseError(line_no, std::string("expected integer for ") + what +
                                  ", got '" + std::string(text) + "'");
  }
  return value;
}

}  // namespace

void WriteInstance(const std::filesystem::path& path, const PlantedInstance& inst) {
  WriteToFile(path, inst.graph, &inst.clique);
}

void WriteInstance(const std::filesystem::path& path, const SignGraph& g) {
  WriteToFile(path, g, nullptr);
}

PlantedInstance ReadInstance(std::istream& in) {
  std::string line;
  std::size_t line_no = 0;
  auto next = [&]() -> bool {
    if (!std::getline(in, line)) return false;
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    return true;
  };

  if (!next()) throw ParseError(1, "missing header 'n=<int>'");
  if (line.rfind("n=", 0) != 0) throw ParseError(line_no, "expected header 'n=<int>'");
  const int n = ParseInt(std::string_view(line).substr(2), line_no, "n");
  if (n <= 0) throw ParseError(line_no, "n must be positive");

  SignGraph::Builder b(n);
  for (Vertex k = 1; k < n; ++k) {
    if (!next()) {
      throw ParseError(line_no + 1, "missing row for vertex " + std::to_string(k) +
                                        " (size mismatch: header says n=" +
                                        std::to_string(n) + ")");
    }
    if (line.size() != static_cast<std::size_t>(k)) {
      throw ParseError(line_no, "row for vertex " + std::to_string(k) + " must have " +
                                    std::to_string(k) + " characters, found " +
                                    std::to_string(line.size()));
    }
    for (Vertex j = 0; j < k; ++j) {
      const char c = line[static_cast<std::size_t>(j)];
      if (c != '0' && c != '1') throw ParseError(line_no, "row characters must be 0 or 1");
      if (c == '1') b.set_edge(k, j, true);
    }
  }

  PlantedInstance inst{std::move(b).build(), {}};
  while (next()) {
    if (line.empty()) continue;
    if (line.rfind("P=", 0) != 0 || !inst.clique.empty()) {
      throw ParseError(line_no, "unexpected content after adjacency rows (size mismatch?)");
    }
    std::string_view rest = std::string_view(line).substr(2);
    while (!rest.empty()) {
      const auto comma = rest.find(',');
      const int v = ParseInt(rest.substr(0, comma), line_no, "clique vertex");
      if (v < 0 || v >= n) throw ParseError(line_no, "clique vertex out of range");
      if (!inst.clique.empty() && v <= inst.clique.back()) {
        throw ParseError(line_no, "clique vertices must be sorted and distinct");
      }
      inst.clique.push_back(v);
      if (comma == std::string_view::npos) break;
      rest.remove_prefix(comma + 1);
      if (rest.empty()) throw ParseError(line_no, "trailing comma in clique list");
    }
  }
  if (!IsClique(inst.graph, inst.clique)) {
    throw ParseError(line_no, "P= vertices do not form a clique in the graph");
  }
  return inst;
}

PlantedInstance ReadInstance(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path.string());
  return ReadInstance(in);
}

}  // namespace paritylab
