#pragma once

#include <array>
#include <utility>
#include <vector>

#include "kusuoka/spectral.hpp"

namespace kusuoka {

/// Level-1 graph of SG_n: lattice points (i, j) with i + j <= n of the subdivided triangle.
struct GasketGraph {
  using Point = std::pair<int, int>;  // (i, j)

  int n = 0;
  std::vector<Point> vertices;                              // j outer, i inner
  std::vector<std::pair<std::size_t, std::size_t>> edges;   // (a, b) with a < b
  std::array<std::size_t, 3> boundary{};                    // (0,0), (n,0), (0,n)
  /// Upward cells, corners in the order (i,j), (i+1,j), (i,j+1). The cells at the three
  /// boundary corners come first, the rest follow by (j, i).
  std::vector<std::array<std::size_t, 3>> cells;

  std::size_t index_of(Point p) const;
  std::vector<std::size_t> interior() const;
  bool connected() const;
};

GasketGraph build_graph(int n);

/// Exact Dirichlet solve with unit conductances: row r gives the harmonic value at interior
/// vertex r (in the order of GasketGraph::interior) as weights on the 3 boundary values.
Matrix<Surd> harmonic_extension(const GasketGraph& g);

/// Full 3-column extension: boundary rows are unit vectors, interior rows come from
/// harmonic_extension. Indexed by vertex.
Matrix<Surd> full_extension(const GasketGraph& g);

/// Two boundary-value vectors on the corners, orthogonal to constants and orthonormal for
/// the energy sum_{i<j} (u_i - u_j)^2 of the 3-point graph.
struct HarmonicBasis {
  std::array<Surd, 3> h1;
  std::array<Surd, 3> h2;

  /// h1 = (sqrt 2 / 3)(1, -1/2, -1/2), h2 = (0, 1, -1) / sqrt 6.
  static HarmonicBasis canonical();

  Matrix<Surd> as_columns() const;  // 3 x 2
  bool orthonormal() const;
};

/// 2 x 2 raw restriction of each cell: coefficients of the restricted harmonic function on
/// the cell corners in the same basis, modulo constants. Not renormalized.
std::vector<Matrix<Surd>> cell_restrictions(const GasketGraph& g, const HarmonicBasis& basis);

/// The 120 degree rotation relating consecutive corner cells in the canonical basis.
Matrix<Surd> corner_rotation();

/// build_graph, harmonic_extension, cell_restrictions and renormalize, for n in 2..6.
Renormalization<Surd> generate_renormalization(int n);
MatrixSystem<Surd> generate_system(int n);

}  // namespace kusuoka
