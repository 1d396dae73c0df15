#include <gtest/gtest.h>

#include "kusuoka/gasket.hpp"
#include "kusuoka/linalg.hpp"
#include "kusuoka/measure.hpp"
#include "support.hpp"

using namespace kusuoka;
using test::q;

TEST(GasketGraph, Counts) {
  struct Case {
    int n;
    std::size_t vertices, cells;
  };
  for (auto c : {Case{2, 6, 3}, Case{3, 10, 6}, Case{5, 21, 15}}) {
    auto g = build_graph(c.n);
    EXPECT_EQ(g.vertices.size(), c.vertices);
    EXPECT_EQ(g.cells.size(), c.cells);
    EXPECT_TRUE(g.connected());
    EXPECT_EQ(g.edges.size(), 3 * c.cells);  // upward cells share vertices, never edges
  }
  EXPECT_EQ(build_graph(2).edges.size(), 9u);
  EXPECT_THROW(build_graph(1), std::invalid_argument);
}

TEST(GasketGraph, BoundaryAndCornerCells) {
  auto g = build_graph(4);
  EXPECT_EQ(g.vertices[g.boundary[0]], (GasketGraph::Point{0, 0}));
  EXPECT_EQ(g.vertices[g.boundary[1]], (GasketGraph::Point{4, 0}));
  EXPECT_EQ(g.vertices[g.boundary[2]], (GasketGraph::Point{0, 4}));
  for (int s = 0; s < 3; ++s) EXPECT_EQ(g.cells[s][s], g.boundary[s]);
  for (std::size_t v = 0; v < g.vertices.size(); ++v) EXPECT_EQ(g.index_of(g.vertices[v]), v);
}

TEST(HarmonicExtension, ClassicOneFifthTwoFifths) {
  auto g = build_graph(2);
  auto ext = harmonic_extension(g);
  auto inner = g.interior();
  ASSERT_EQ(inner.size(), 3u);
  for (std::size_t r = 0; r < inner.size(); ++r) {
    auto [i, j] = g.vertices[inner[r]];
    // The midpoint opposite corner c gets weight 1/5 from c and 2/5 from the others.
    std::size_t opposite = (i == 1 && j == 1) ? 0 : (i == 0 ? 1 : 2);
    for (std::size_t c = 0; c < 3; ++c) EXPECT_EQ(ext(r, c), q(c == opposite ? 1 : 2, 5));
  }
}

TEST(HarmonicExtension, RowSumsAndDenominators) {
  for (int n = 2; n <= 6; ++n) {
    auto ext = harmonic_extension(build_graph(n));
    for (std::size_t r = 0; r < ext.rows(); ++r) {
      Surd sum(0);
      for (std::size_t c = 0; c < 3; ++c) {
        sum += ext(r, c);
        ASSERT_TRUE(ext(r, c).is_rational());
        if (n == 3) EXPECT_EQ(mpz_class(15) % ext(r, c).rational().get_den(), 0);
      }
      EXPECT_EQ(sum, q(1));
    }
  }
}

TEST(HarmonicBasis, CanonicalIsOrthonormal) {
  auto b = HarmonicBasis::canonical();
  EXPECT_TRUE(b.orthonormal());
  HarmonicBasis bad = b;
  bad.h2 = b.h1;
  EXPECT_FALSE(bad.orthonormal());
  EXPECT_THROW(cell_restrictions(build_graph(2), bad), MathError);
}

TEST(CellRestrictions, CornerCellsAreRotationConjugates) {
  const auto r = corner_rotation();
  const auto r_inv = inverse(r);
  EXPECT_EQ(r * r * r, Matrix<Surd>::identity(2));
  for (int n = 2; n <= 5; ++n) {
    auto raw = cell_restrictions(build_graph(n), HarmonicBasis::canonical());
    for (int s = 0; s < 2; ++s) EXPECT_EQ(raw[s + 1], r_inv * raw[s] * r) << "n = " << n;
  }
}

TEST(CellRestrictions, CornerCellOfSG2IsDiagonal) {
  auto raw = cell_restrictions(build_graph(2), HarmonicBasis::canonical());
  // Proportional to D = diag(3, 1) / sqrt 15.
  EXPECT_EQ(raw[0], (Matrix<Surd>{{q(3, 5), q(0)}, {q(0), q(1, 5)}}));
}

TEST(CellRestrictions, ConstantsVanish) {
  auto g = build_graph(3);
  auto full = full_extension(g);
  for (const auto& cell : g.cells) {
    Surd sum(0);
    auto h = HarmonicBasis::canonical();
    for (std::size_t r = 0; r < 3; ++r) {
      Surd value = full(cell[r], 0) + full(cell[r], 1) + full(cell[r], 2);
      EXPECT_EQ(value, q(1));
      sum += h.h1[r] * value;
    }
    EXPECT_TRUE(sum.is_zero());
  }
}

TEST(GenerateSystem, Sg2MatchesBuiltin) {
  auto r = generate_renormalization(2);
  EXPECT_EQ(r.mu, q(3, 5));
  const auto& sys = r.system;
  EXPECT_TRUE(validate(sys).passed());
  EXPECT_EQ(sys.energy(), Matrix<Surd>::identity(2) * q(1, 2));
  EXPECT_EQ(sys.maps(), test::sg_exact()->maps());
  KusuokaMeasure<Surd> m(sys);
  for (Symbol s = 0; s < 3; ++s) EXPECT_EQ(m.nu({s}), q(1, 3));
  for (std::size_t k = 0; k <= 3; ++k)
    for (const auto& w : enumerate(3, k)) EXPECT_EQ(m.nu(w), test::naive_nu(*test::sg_exact(), w));
}

TEST(GenerateSystem, Theta1AndPerronRoots) {
  struct Case {
    int n;
    mpq_class mu, theta1;
  };
  for (const auto& c : {Case{2, {3, 5}, {4, 5}}, Case{3, {7, 15}, {5, 7}},
                        Case{4, {41, 103}, {2822, 4223}}, Case{5, {591, 1663}, {209527, 327611}}}) {
    auto r = generate_renormalization(c.n);
    EXPECT_EQ(r.mu, Surd(c.mu)) << c.n;
    auto v = validate(r.system);
    EXPECT_TRUE(v.passed()) << c.n;
    EXPECT_EQ(v.energy_residual, 0.0);
    EXPECT_EQ(v.identity_residual, 0.0);
    auto t = theta1(r.system);
    ASSERT_TRUE(t.theta1.is_exact()) << c.n;
    EXPECT_EQ(*t.theta1.exact, Surd(c.theta1)) << c.n;
    const auto rot = corner_rotation();
    for (int s = 0; s < 2; ++s)
      EXPECT_EQ(r.system.map(s + 1), inverse(rot) * r.system.map(s) * rot) << c.n;
  }
  EXPECT_THROW(generate_system(7), std::invalid_argument);
}

TEST(GenerateSystem, Sg6Validates) {
  auto sys = generate_system(6);
  EXPECT_EQ(sys.size(), 21u);
  EXPECT_TRUE(validate(sys).passed());
}
