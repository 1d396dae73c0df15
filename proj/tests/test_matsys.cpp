#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "kusuoka/linalg.hpp"
#include "kusuoka/matsys.hpp"
#include "support.hpp"

using namespace kusuoka;
using test::q;

namespace {

const Matrix<Surd> kSigmaZ{{q(1), q(0)}, {q(0), q(-1)}};
const Matrix<Surd> kSigmaX{{q(0), q(1)}, {q(1), q(0)}};

}  // namespace

TEST(Validate, SierpinskiSystemIsExact) {
  auto r = validate(*test::sg_exact());
  EXPECT_TRUE(r.passed());
  EXPECT_EQ(r.energy_residual, 0.0);
  EXPECT_EQ(r.identity_residual, 0.0);
  EXPECT_EQ(r.trace_residual, 0.0);
  EXPECT_TRUE(test::sg_exact()->symmetric());
}

TEST(Validate, FloatSystemWithinTolerance) {
  auto r = validate(*test::sg_float());
  EXPECT_TRUE(r.passed());
  EXPECT_LT(r.identity_residual, 1e-14);
}

TEST(Validate, BernoulliFairCoin) {
  auto sys = builtin_bernoulli<Surd>({mpq_class(1, 2), mpq_class(1, 2)});
  EXPECT_EQ(sys.map(0)(0, 0), Surd::sqrt_of(mpq_class(1, 2)));
  EXPECT_TRUE(validate(sys).passed());
  EXPECT_FALSE(validate(builtin_bernoulli<Surd>({mpq_class(1, 2), mpq_class(1, 3)})).passed());
}

TEST(Validate, UnscaledIdentityMapsFailSecondEquation) {
  auto maps = std::vector<Matrix<Surd>>(3, Matrix<Surd>::identity(2));
  MatrixSystem<Surd> sys(Alphabet::numbered(3), maps, Matrix<Surd>::identity(2) * q(1, 2));
  auto r = validate(sys);
  EXPECT_FALSE(r.identity_ok);
  EXPECT_NEAR(r.identity_residual, 2.0 * std::sqrt(2.0), 1e-15);  // ||3I - I||_F with d = 2
  EXPECT_FALSE(r.passed());
}

TEST(Validate, SingularMapsAreFlagged) {
  std::vector<Matrix<Surd>> maps{{{q(1), q(0)}, {q(0), q(0)}}, {{q(0), q(0)}, {q(0), q(1)}}};
  MatrixSystem<Surd> sys(Alphabet::numbered(2), maps, Matrix<Surd>::identity(2) * q(1, 2));
  auto r = validate(sys);
  EXPECT_TRUE(r.energy_ok);
  EXPECT_TRUE(r.identity_ok);
  EXPECT_FALSE(r.injective);
  EXPECT_EQ(r.singular_maps, (std::vector<Symbol>{0, 1}));
  EXPECT_FALSE(r.passed());
}

TEST(Validate, IndefiniteEnergyThrows) {
  MatrixSystem<Surd> sys(Alphabet::numbered(1), {Matrix<Surd>::identity(2)},
                         Matrix<Surd>{{q(1), q(0)}, {q(0), q(-1)}});
  EXPECT_THROW(validate(sys), NotPositiveDefinite);
  try {
    validate(sys);
  } catch (const NotPositiveDefinite& e) {
    EXPECT_LT(e.eigenvalue(), 0.0);
  }
}

TEST(Validate, ShapeMismatchThrows) {
  EXPECT_THROW(MatrixSystem<Surd>(Alphabet::numbered(1), {Matrix<Surd>::identity(3)},
                                  Matrix<Surd>::identity(2)),
               DimensionError);
  EXPECT_THROW(MatrixSystem<Surd>(Alphabet::numbered(2), {Matrix<Surd>::identity(2)},
                                  Matrix<Surd>::identity(2)),
               DimensionError);
}

TEST(InnerE, Examples) {
  const auto& sys = *test::sg_exact();
  const auto id = Matrix<Surd>::identity(2);
  EXPECT_EQ(inner_e(sys, id, id), q(1));
  EXPECT_EQ(inner_e(sys, sys.map(0), sys.map(0)), q(1, 3));
  EXPECT_EQ(inner_e(sys, kSigmaZ, id), q(0));
  EXPECT_THROW(inner_e(sys, Matrix<Surd>::identity(3), id), DimensionError);
}

TEST(OperatorM, ScalarOnTraceFreeSymmetric) {
  const auto& sys = *test::sg_exact();
  EXPECT_EQ(apply_M(sys, kSigmaZ), kSigmaZ * q(4, 5));
  EXPECT_EQ(apply_M(sys, kSigmaX), kSigmaX * q(4, 5));
  EXPECT_EQ(apply_M(sys, Matrix<Surd>::identity(2)), Matrix<Surd>::identity(2));
  EXPECT_EQ(apply_M_star(sys, sys.energy()), sys.energy());
}

TEST(OperatorM, AdjointUnderHilbertSchmidt) {
  const auto& sys = *test::sg_exact();
  std::mt19937_64 rng(17);
  for (int t = 0; t < 25; ++t) {
    auto a = test::random_matrix<Surd>(rng, 2), b = test::random_matrix<Surd>(rng, 2);
    EXPECT_EQ(trace_product(apply_M(sys, a), b.transpose()),
              trace_product(a, apply_M_star(sys, b).transpose()));
  }
}

TEST(OperatorM, PreservesTraceAgainstEnergyWhenEnergyIsScalar) {
  const auto& sys = *test::sg_exact();
  std::mt19937_64 rng(19);
  for (int t = 0; t < 25; ++t) {
    auto b = test::random_symmetric<Surd>(rng, 2);
    EXPECT_EQ(trace_product(sys.energy(), apply_M(sys, b)), trace_product(sys.energy(), b));
  }
}

TEST(OperatorM, PreservesPositiveSemidefinite) {
  const auto& sys = *test::sg_float();
  std::mt19937_64 rng(23);
  for (int t = 0; t < 100; ++t) {
    auto x = test::random_matrix<double>(rng, 2);
    auto b = x * x.transpose();
    for (double ev : symmetric_eigenvalues(apply_M(sys, b))) EXPECT_GE(ev, -1e-12);
  }
}

TEST(OperatorM, EnergyInnerProductIsBiInvariant) {
  const auto& sys = *test::sg_exact();
  std::mt19937_64 rng(29);
  for (std::size_t k = 0; k <= 3; ++k) {
    auto x = test::random_matrix<Surd>(rng, 2), y = test::random_matrix<Surd>(rng, 2);
    Surd sum(0);
    for (const auto& w : enumerate(3, k)) {
      auto a = sys.word_matrix(w);
      sum += inner_e(sys, a * x, a * y);
    }
    EXPECT_EQ(sum, inner_e(sys, x, y)) << "k = " << k;
  }
}

TEST(MatrixRep, TraceFreeSymmetricIsFourFifthsIdentity) {
  auto rep = matrix_rep_M(*test::sg_exact(), Subspace::traceless_symmetric);
  EXPECT_EQ(rep.basis.size(), 2u);
  EXPECT_EQ(rep.matrix, Matrix<Surd>::identity(2) * q(4, 5));
  for (std::size_t i = 0; i < rep.basis.size(); ++i)
    for (std::size_t j = 0; j < rep.basis.size(); ++j)
      EXPECT_EQ(inner_e(*test::sg_exact(), rep.basis[i], rep.basis[j]), q(i == j ? 1 : 0));
}

TEST(MatrixRep, BernoulliHasNoTraceFreeDirections) {
  auto sys = builtin_bernoulli<Surd>({mpq_class(1, 3), mpq_class(2, 3)});
  auto rep = matrix_rep_M(sys, Subspace::traceless_symmetric);
  EXPECT_TRUE(rep.basis.empty());
  EXPECT_EQ(rep.matrix.rows(), 0u);
}

TEST(MatrixRep, FullSpectrum) {
  // Antisymmetric direction: M(J) = sum_s det(A_s) J = 3/5 J.
  auto rep = matrix_rep_M(*test::sg_exact(), Subspace::full);
  ASSERT_EQ(rep.matrix.rows(), 4u);
  auto ev = eigenvalues(rep.matrix);
  std::vector<double> re;
  for (auto z : ev) {
    EXPECT_NEAR(z.imag(), 0.0, 1e-12);
    re.push_back(z.real());
  }
  std::sort(re.begin(), re.end());
  std::vector<double> expected{0.6, 0.8, 0.8, 1.0};
  for (int i = 0; i < 4; ++i) EXPECT_NEAR(re[i], expected[i], 1e-9);
  auto anti = matrix_rep_M(*test::sg_exact(), Subspace::antisymmetric);
  EXPECT_EQ(anti.matrix, (Matrix<Surd>{{q(3, 5)}}));
  EXPECT_EQ(parse_subspace("traceless-symmetric"), Subspace::traceless_symmetric);
  EXPECT_THROW(parse_subspace("nonsense"), ConfigError);
}

TEST(Schatten, Examples) {
  EXPECT_DOUBLE_EQ(schatten_norm(Matrix<double>{{3, 0}, {0, -4}}, 1), 7.0);
  EXPECT_DOUBLE_EQ(schatten_norm(Matrix<double>{{3, 0}, {0, -4}}, 2), 5.0);
  EXPECT_DOUBLE_EQ(schatten_norm(Matrix<double>::identity(3), INFINITY), 1.0);
  EXPECT_NEAR(schatten_norm(apply_M(*test::sg_exact(), kSigmaZ), 1), 1.6, 1e-15);
  EXPECT_THROW(schatten_norm(Matrix<double>::identity(2), 0.5), std::invalid_argument);
}
