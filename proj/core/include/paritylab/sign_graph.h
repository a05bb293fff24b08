#ifndef PARITYLAB_SIGN_GRAPH_H_
#define PARITYLAB_SIGN_GRAPH_H_

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <span>
#include <vector>

namespace paritylab {

using Vertex = int;
// Vertex sets are sorted, duplicate-free vectors of 0-based vertex ids.
using VertexSet = std::vector<Vertex>;

// Symmetric +-1 edge-sign matrix of a simple graph on n vertices: +1 for an
// edge, -1 for a non-edge and +1 on the diagonal. Rows are stored as packed
// 64-bit words (bit set <=> sign +1) so neighbourhood intersections are a
// word-wise AND. A SignGraph is immutable once built; use Builder to make
// one.
class SignGraph {
 public:
  class Builder;

  SignGraph() = default;

  int size() const { return n_; }
  std::size_t words_per_row() const { return words_; }

  // Unchecked; i and j must lie in [0, n).
  bool adjacent(Vertex i, Vertex j) const {
    return (bits_[static_cast<std::size_t>(i) * words_ + (j >> 6)] >>
            (j & 63)) & 1U;
  }
  int sign(Vertex i, Vertex j) const { return adjacent(i, j) ? 1 : -1; }

  // Packed row i; bit j of the row is set iff sign(i, j) == +1. Bits past n
  // in the last word are zero.
  std::span<const std::uint64_t> row(Vertex i) const {
    return {bits_.data() + static_cast<std::size_t>(i) * words_, words_};
  }

  // Number of u != v with sign(v, u) == +1.
  int degree(Vertex v) const;

  friend bool operator==(const SignGraph&, const SignGraph&) = default;

 private:
  int n_ = 0;
  std::size_t words_ = 0;
  std::vector<std::uint64_t> bits_;
};

class SignGraph::Builder {
 public:
  // Starts from the empty graph (all off-diagonal signs -1).
  explicit Builder(int n);
  // Starts from a copy of `g`.
  explicit Builder(const SignGraph& g);

  int size() const { return graph_.n_; }
  // Sets both (i, j) and (j, i). Setting a diagonal entry is a no-op.
  Builder& set_edge(Vertex i, Vertex j, bool present);
  SignGraph build() &&;

 private:
  SignGraph graph_;
};

struct PlantedInstance {
  SignGraph graph;
  VertexSet clique;  // sorted; empty when no clique is planted

  int p() const { return static_cast<int>(clique.size()); }
};

// G(n, 1/2) as a sign matrix. Deterministic in (n, seed).
SignGraph SampleGnpHalf(int n, std::uint64_t seed);

// Copy of `g` with a uniformly random p-subset (drawn from `seed`) turned
// into a clique. Signs outside clique x clique are untouched.
PlantedInstance PlantClique(const SignGraph& g, int p, std::uint64_t seed);

// The complete graph K_n (every sign +1).
SignGraph CompleteGraph(int n);

// Graph with exactly the listed undirected edges.
SignGraph GraphFromEdges(int n, std::span<const std::pair<Vertex, Vertex>> edges);

// Checked accessor: throws std::invalid_argument for out-of-range indices.
int EdgeSign(const SignGraph& g, Vertex i, Vertex j);

// {v : sign(v, q) == +1 for every q in Q}. The +1 diagonal makes a vertex its
// own neighbour, so members of Q adjacent to the rest of Q are included.
// Q empty yields every vertex.
VertexSet CommonNeighbors(const SignGraph& g, std::span<const Vertex> q);

// |{u in S : u != v, sign(v, u) == +1}|.
int DegreeWithin(const SignGraph& g, Vertex v, std::span<const Vertex> s);

// True iff every pair of distinct vertices in S is an edge.
bool IsClique(const SignGraph& g, std::span<const Vertex> s);

// Instance file format (LF newlines):
//   n=<int>
//   <n-1 rows; row k (1-based, k = 1..n-1) has k characters over {0,1};
//    character j is the bit for pair (k, j), 1 <=> sign +1>
//   [P=<comma separated, sorted 0-based vertex ids>]
// A file without the P= line reads back with an empty clique.
void WriteInstance(std::ostream& out, const SignGraph& g,
                   const VertexSet* clique = nullptr);
void WriteInstance(const std::filesystem::path& path, const PlantedInstance& inst);
void WriteInstance(const std::filesystem::path& path, const SignGraph& g);

// Throws ParseError naming the offending line.
PlantedInstance ReadInstance(std::istream& in);
PlantedInstance ReadInstance(const std::filesystem::path& path);

}  // namespace paritylab

#endif  // PARITYLAB_SIGN_GRAPH_H_
