#include "kusuoka/gasket.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <stdexcept>

#include "kusuoka/linalg.hpp"

namespace kusuoka {

std::size_t GasketGraph::index_of(Point p) const {
  // j outer, i inner: rows of length n+1, n, ..., so row j starts at sum_{r<j} (n + 1 - r).
  const auto [i, j] = p;
  if (i < 0 || j < 0 || i + j > n) throw std::out_of_range("point outside the triangle");
  return static_cast<std::size_t>(j * (n + 1) - j * (j - 1) / 2 + i);
}

std::vector<std::size_t> GasketGraph::interior() const {
  std::vector<std::size_t> out;
  for (std::size_t v = 0; v < vertices.size(); ++v)
    if (std::find(boundary.begin(), boundary.end(), v) == boundary.end()) out.push_back(v);
  return out;
}

bool GasketGraph::connected() const {
  if (vertices.empty()) return false;
  std::vector<std::vector<std::size_t>> adj(vertices.size());
  for (auto [a, b] : edges) {
    adj[a].push_back(b);
    adj[b].push_back(a);
  }
  std::vector<bool> seen(vertices.size(), false);
  std::vector<std::size_t> stack{0};
  seen[0] = true;
  std::size_t count = 1;
  while (!stack.empty()) {
    auto v = stack.back();
    stack.pop_back();
    for (auto w : adj[v])
      if (!seen[w]) {
        seen[w] = true;
        ++count;
        stack.push_back(w);
      }
  }
  return count == vertices.size();
}

GasketGraph build_graph(int n) {
  if (n < 2) throw std::invalid_argument("SG_n needs n >= 2");
  GasketGraph g;
  g.n = n;
  for (int j = 0; j <= n; ++j)
    for (int i = 0; i + j <= n; ++i) g.vertices.emplace_back(i, j);
  g.boundary = {g.index_of({0, 0}), g.index_of({n, 0}), g.index_of({0, n})};

  std::vector<std::array<std::size_t, 3>> corner(3), rest;
  for (int j = 0; j < n; ++j)
    for (int i = 0; i + j < n; ++i) {
      std::array<std::size_t, 3> c{g.index_of({i, j}), g.index_of({i + 1, j}),
                                   g.index_of({i, j + 1})};
      if (i == 0 && j == 0) corner[0] = c;
      else if (i == n - 1 && j == 0) corner[1] = c;
      else if (i == 0 && j == n - 1) corner[2] = c;
      else rest.push_back(c);
    }
  g.cells = corner;
  g.cells.insert(g.cells.end(), rest.begin(), rest.end());

  std::set<std::pair<std::size_t, std::size_t>> edges;
  for (const auto& c : g.cells)
    for (int a = 0; a < 3; ++a)
      for (int b = a + 1; b < 3; ++b) edges.insert(std::minmax(c[a], c[b]));
  g.edges.assign(edges.begin(), edges.end());
  return g;
}

Matrix<Surd> harmonic_extension(const GasketGraph& g) {
  if (!g.connected()) throw MathError("gasket graph is not connected");
  const std::size_t nv = g.vertices.size();
  Matrix<Surd> lap(nv, nv);
  for (auto [a, b] : g.edges) {
    lap(a, a) += Surd(1);
    lap(b, b) += Surd(1);
    lap(a, b) -= Surd(1);
    lap(b, a) -= Surd(1);
  }
  const auto inner = g.interior();
  Matrix<Surd> lii(inner.size(), inner.size()), lib(inner.size(), 3);
  for (std::size_t r = 0; r < inner.size(); ++r) {
    for (std::size_t c = 0; c < inner.size(); ++c) lii(r, c) = lap(inner[r], inner[c]);
    for (std::size_t c = 0; c < 3; ++c) lib(r, c) = -lap(inner[r], g.boundary[c]);
  }
  try {
    return solve(lii, lib);
  } catch (const MathError&) {
    throw MathError("singular interior Laplacian");
  }
}

Matrix<Surd> full_extension(const GasketGraph& g) {
  const auto ext = harmonic_extension(g);
  const auto inner = g.interior();
  Matrix<Surd> full(g.vertices.size(), 3);
  for (std::size_t c = 0; c < 3; ++c) full(g.boundary[c], c) = Surd(1);
  for (std::size_t r = 0; r < inner.size(); ++r)
    for (std::size_t c = 0; c < 3; ++c) full(inner[r], c) = ext(r, c);
  return full;
}

HarmonicBasis HarmonicBasis::canonical() {
  const Surd a = Surd::sqrt_of(mpq_class(2)) * Surd(mpq_class(1, 3));
  const Surd half(mpq_class(1, 2));
  const Surd b = Surd::sqrt_of(mpq_class(1, 6));
  return HarmonicBasis{{a, -(a * half), -(a * half)}, {Surd(0), b, -b}};
}

Matrix<Surd> HarmonicBasis::as_columns() const {
  Matrix<Surd> h(3, 2);
  for (std::size_t i = 0; i < 3; ++i) {
    h(i, 0) = h1[i];
    h(i, 1) = h2[i];
  }
  return h;
}

bool HarmonicBasis::orthonormal() const {
  auto energy = [](const std::array<Surd, 3>& u, const std::array<Surd, 3>& v) {
    Surd e(0);
    for (int i = 0; i < 3; ++i)
      for (int j = i + 1; j < 3; ++j) e += (u[i] - u[j]) * (v[i] - v[j]);
    return e;
  };
  auto sum = [](const std::array<Surd, 3>& u) { return u[0] + u[1] + u[2]; };
  return sum(h1).is_zero() && sum(h2).is_zero() && energy(h1, h1) == Surd(1) &&
         energy(h2, h2) == Surd(1) && energy(h1, h2).is_zero();
}

std::vector<Matrix<Surd>> cell_restrictions(const GasketGraph& g, const HarmonicBasis& basis) {
  if (!basis.orthonormal()) throw MathError("degenerate harmonic basis");
  const Matrix<Surd> h = basis.as_columns();
  // For a zero-sum orthonormal pair, H^T H = I/3 and H^T 1 = 0, so 3 H^T both reads off
  // coefficients and discards constants.
  const Matrix<Surd> read = Surd(3) * h.transpose();
  const auto full = full_extension(g);
  std::vector<Matrix<Surd>> out;
  for (const auto& cell : g.cells) {
    Matrix<Surd> rows(3, 3);
    for (std::size_t r = 0; r < 3; ++r)
      for (std::size_t c = 0; c < 3; ++c) rows(r, c) = full(cell[r], c);
    out.push_back(read * rows * h);
  }
  return out;
}

Matrix<Surd> corner_rotation() {
  const Surd half(mpq_class(1, 2));
  const Surd s = Surd::sqrt_of(mpq_class(3, 4));
  return Matrix<Surd>{{-half, s}, {-s, -half}};
}

Renormalization<Surd> generate_renormalization(int n) {
  if (n < 2 || n > 6) throw std::invalid_argument("generate_system supports n in 2..6");
  const auto g = build_graph(n);
  auto raw = cell_restrictions(g, HarmonicBasis::canonical());
  return renormalize<Surd>(Alphabet::numbered(raw.size()), raw);
}

MatrixSystem<Surd> generate_system(int n) { return generate_renormalization(n).system; }

}  // namespace kusuoka
