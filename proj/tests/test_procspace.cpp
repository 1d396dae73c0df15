#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "kusuoka/procspace.hpp"
#include "support.hpp"

using namespace kusuoka;
using test::q;

namespace {

const Matrix<Surd> kSigmaZ{{q(1), q(0)}, {q(0), q(-1)}};
const Matrix<Surd> kAnti{{q(0), q(1)}, {q(-1), q(0)}};

const KusuokaMeasure<Surd>& sg() {
  static const KusuokaMeasure<Surd> m(test::sg_exact());
  return m;
}

FiniteProcess<Surd> random_process(std::mt19937_64& rng, std::size_t degree) {
  FiniteProcess<Surd> f{test::sg_exact(), degree, {}};
  for (std::size_t i = 0; i < word_count(3, degree); ++i)
    f.values.push_back(test::random_matrix<Surd>(rng, 2));
  return f;
}

CylinderFunction<Surd> random_function(std::mt19937_64& rng, std::size_t depth) {
  CylinderFunction<Surd> f{depth, {}};
  for (std::size_t i = 0; i < word_count(3, depth); ++i)
    f.values.push_back(Surd(test::random_rational(rng)));
  return f;
}

// L^2(nu) norm by direct integration over the cylinders of f's depth.
Surd l2_norm2(const CylinderFunction<Surd>& f) {
  Surd s(0);
  auto words = enumerate(3, f.depth);
  for (std::size_t i = 0; i < words.size(); ++i)
    s += sg().nu(words[i]) * f.values[i] * f.values[i];
  return s;
}

bool same_process(const FiniteProcess<Surd>& a, const FiniteProcess<Surd>& b) {
  const std::size_t n = std::max(a.degree, b.degree);
  return a.at_level(n) == b.at_level(n);
}

}  // namespace

TEST(ProcessInner, IdentityHasUnitNorm) {
  auto a = FiniteProcess<Surd>::identity(test::sg_exact());
  EXPECT_EQ(process_inner(a, a), q(1));
  EXPECT_EQ(process_inner(a.extend(3), a.extend(3)), q(1));
  auto z = FiniteProcess<Surd>::constant(test::sg_exact(), kSigmaZ);
  EXPECT_EQ(process_inner(z, a), q(0));
}

TEST(ProcessInner, LevelIndependentAndSymmetric) {
  std::mt19937_64 rng(51);
  for (int t = 0; t < 10; ++t) {
    auto f = random_process(rng, 1), g = random_process(rng, 2);
    EXPECT_EQ(process_inner(f, g), process_inner(g, f));
    EXPECT_EQ(process_inner(f, g), process_inner(f.extend(3), g.extend(3)));
  }
}

TEST(ProcessInner, SystemMismatchThrows) {
  auto other = std::make_shared<const MatrixSystem<Surd>>(builtin_sg<Surd>());
  auto f = FiniteProcess<Surd>::identity(test::sg_exact());
  auto g = FiniteProcess<Surd>::identity(other);
  EXPECT_NO_THROW(process_inner(f, g));  // equal content is accepted
  auto bern = std::make_shared<const MatrixSystem<Surd>>(
      builtin_bernoulli<Surd>({mpq_class(1, 2), mpq_class(1, 2)}));
  EXPECT_THROW(process_inner(f, FiniteProcess<Surd>::identity(bern)), DimensionError);
}

TEST(ShiftT, FormulaAndIsometry) {
  auto a = FiniteProcess<Surd>::identity(test::sg_exact());
  auto ta = shift_T(a);
  EXPECT_EQ(ta.degree, 1u);
  for (Symbol s = 0; s < 3; ++s) EXPECT_EQ(ta.values[s], test::sg_exact()->map(s));
  EXPECT_EQ(process_inner(ta, ta), q(1));
  // (TA)(s alpha) = A(alpha) A_s at level 2.
  auto t2 = shift_T(a.extend(1));
  for (const auto& w : enumerate(3, 2))
    EXPECT_EQ(t2.values[word_index(w, 3)],
              sg().system().word_matrix({w[1]}) * sg().system().map(w[0]));
  std::mt19937_64 rng(53);
  for (int t = 0; t < 20; ++t) {
    auto f = random_process(rng, 2), g = random_process(rng, 2);
    EXPECT_EQ(shift_T(f).degree, 3u);
    EXPECT_EQ(process_inner(shift_T(f), shift_T(g)), process_inner(f, g));
  }
}

TEST(TransferL, EigenvectorsAndDegree) {
  auto a = FiniteProcess<Surd>::identity(test::sg_exact());
  auto la = transfer_L(a);
  EXPECT_EQ(la.degree, 0u);
  EXPECT_TRUE(same_process(la, a));
  auto lz = transfer_L(FiniteProcess<Surd>::constant(test::sg_exact(), kSigmaZ));
  EXPECT_TRUE(same_process(lz, FiniteProcess<Surd>::constant(test::sg_exact(), kSigmaZ * q(4, 5))));
}

TEST(TransferL, DualToShiftAndContracting) {
  std::mt19937_64 rng(57);
  for (int t = 0; t < 50; ++t) {
    auto f = random_process(rng, 2), g = random_process(rng, 1);
    EXPECT_EQ(process_inner(transfer_L(f), g), process_inner(f, shift_T(g)));
    auto lf = transfer_L(f);
    EXPECT_LE(process_inner(lf, lf), process_inner(f, f));
  }
}

TEST(TransferL, MapsOrthogonalComponentsDown) {
  std::mt19937_64 rng(59);
  for (std::size_t k = 2; k <= 3; ++k) {
    auto x = project_orthogonal_component(random_process(rng, k));
    for (const auto& r : orthogonality_residual(x)) EXPECT_TRUE(r.is_zero());
    auto lx = transfer_L(x);
    EXPECT_EQ(lx.degree, k - 1);
    for (const auto& r : orthogonality_residual(lx)) EXPECT_TRUE(r.is_zero());
  }
}

TEST(TransferL, DecayOnTraceFreeDegreeZero) {
  // X in V^(0) with (X|A) = 0: ||L^k X|| <= theta1^k ||X||.
  std::mt19937_64 rng(61);
  for (int t = 0; t < 10; ++t) {
    auto g0 = test::random_matrix<Surd>(rng, 2);
    g0 -= Matrix<Surd>::identity(2) * inner_e(sg().system(), g0, Matrix<Surd>::identity(2));
    auto x = FiniteProcess<Surd>::constant(test::sg_exact(), g0);
    Surd bound = process_inner(x, x);
    for (int k = 1; k <= 5; ++k) {
      x = transfer_L(x);
      bound *= q(16, 25);
      EXPECT_LE(process_inner(x, x), bound);
    }
  }
}

TEST(EmbedPhi, ExamplesAndIsometry) {
  auto one = CylinderFunction<Surd>::constant(3, 0, q(1));
  EXPECT_TRUE(same_process(embed_phi(test::sg_exact(), one),
                           FiniteProcess<Surd>::identity(test::sg_exact())));
  auto ind = CylinderFunction<Surd>::indicator(3, {0});
  auto p = embed_phi(test::sg_exact(), ind);
  EXPECT_EQ(process_inner(p, p), q(1, 3));
  std::mt19937_64 rng(67);
  for (int t = 0; t < 20; ++t) {
    auto f = random_function(rng, 3);
    auto pf = embed_phi(test::sg_exact(), f);
    EXPECT_EQ(process_inner(pf, pf), l2_norm2(f));
  }
}

TEST(EmbedPhi, CommutesWithShift) {
  // (f o T)(s alpha) = f(alpha).
  auto f = CylinderFunction<Surd>::indicator(3, {0});
  CylinderFunction<Surd> ft{2, std::vector<Surd>(9)};
  for (const auto& w : enumerate(3, 2)) ft.values[word_index(w, 3)] = f.at({w[1]}, 3);
  EXPECT_EQ(embed_phi(test::sg_exact(), ft).values,
            shift_T(embed_phi(test::sg_exact(), f)).values);
}

TEST(Martingale, IndicatorOfFirstSymbol) {
  auto rep = martingale_decompose(sg(), CylinderFunction<Surd>::indicator(3, {0}));
  ASSERT_EQ(rep.depth(), 1u);
  EXPECT_EQ(rep.components[0].values[0], q(1, 3));
  EXPECT_EQ(rep.norms2[1], q(2, 9));
  auto g = gamma_norm(rep, q(1, 2));
  ASSERT_TRUE(g.is_exact());
  EXPECT_EQ(*g.exact, q(1, 3) + q(2, 3) * Surd::sqrt_of(2));
}

TEST(Martingale, ConstantsAndParseval) {
  auto rep = martingale_decompose(sg(), CylinderFunction<Surd>::constant(3, 2, q(1)));
  EXPECT_EQ(rep.norms2, (std::vector<Surd>{q(1), q(0), q(0)}));
  EXPECT_EQ(*gamma_norm(rep, q(1, 7)).exact, q(1));
  EXPECT_THROW(gamma_norm(rep, q(1)), std::invalid_argument);
  std::mt19937_64 rng(71);
  for (int t = 0; t < 20; ++t) {
    auto f = random_function(rng, 3);
    auto r = martingale_decompose(sg(), f);
    EXPECT_EQ(r.total_norm2(), l2_norm2(f));
    // Each component integrates to zero against every cylinder of the previous level.
    for (std::size_t j = 1; j <= 3; ++j)
      for (const auto& w : enumerate(3, j - 1)) {
        Surd s(0);
        for (Symbol c = 0; c < 3; ++c)
          s += sg().nu(concat(w, {c})) * r.components[j].at(concat(w, {c}), 3);
        EXPECT_TRUE(s.is_zero());
      }
  }
}

TEST(GammaNorm, MonotoneInGamma) {
  std::mt19937_64 rng(73);
  auto rep = martingale_decompose(sg(), random_function(rng, 3));
  double prev = INFINITY;
  for (int i = 1; i < 10; ++i) {
    double v = gamma_norm(rep, q(i, 10)).value;
    EXPECT_LT(v, prev);
    prev = v;
  }
  double plain = 0;
  for (const auto& x : rep.norms2) plain += std::sqrt(x.to_double());
  EXPECT_NEAR(gamma_norm(rep, q(999999, 1000000)).value, plain, 1e-4);
}

TEST(ProjectQ, Examples) {
  auto a = project_Q(sg(), FiniteProcess<Surd>::identity(test::sg_exact()), 3);
  for (const auto& v : a.q().values) EXPECT_EQ(v, q(1));
  EXPECT_EQ(a.rep.norms2, (std::vector<Surd>{q(1), q(0), q(0), q(0)}));

  auto anti = project_Q(sg(), FiniteProcess<Surd>::constant(test::sg_exact(), kAnti), 2);
  for (const auto& v : anti.q().values) EXPECT_TRUE(v.is_zero());

  auto z = project_Q(sg(), FiniteProcess<Surd>::constant(test::sg_exact(), kSigmaZ), 1);
  EXPECT_TRUE(z.rep.components[0].values[0].is_zero());
  EXPECT_EQ(z.rep.norms2[1], q(8, 25));
}

TEST(ProjectQ, InvertsEmbedding) {
  std::mt19937_64 rng(79);
  for (int t = 0; t < 10; ++t) {
    auto f = random_function(rng, 3);
    auto p = project_Q(sg(), embed_phi(test::sg_exact(), f), 3);
    auto r = martingale_decompose(sg(), f);
    EXPECT_EQ(p.q().values, f.values);
    EXPECT_EQ(p.rep.norms2, r.norms2);
    for (std::size_t j = 0; j <= 3; ++j) EXPECT_EQ(p.rep.components[j].values, r.components[j].values);
  }
}

TEST(Orthogonal, ProjectionIsIdempotentAndOrthogonal) {
  std::mt19937_64 rng(83);
  auto f = random_process(rng, 2);
  auto p = project_orthogonal_component(f);
  EXPECT_EQ(project_orthogonal_component(p).values, p.values);
  // The removed part lies in the image of degree-1 processes extended to level 2.
  FiniteProcess<Surd> removed{f.system, 2, {}};
  for (std::size_t i = 0; i < f.values.size(); ++i) removed.values.push_back(f.values[i] - p.values[i]);
  auto g = random_process(rng, 1);
  EXPECT_TRUE(process_inner(p, g).is_zero());
  EXPECT_EQ(process_inner(removed, p), q(0));
}

TEST(GammaContraction, TransferShrinksOrthogonalComponents) {
  // On V^(k) the process gamma-norm is gamma^{-k} ||X||, and L X lies in V^(k-1), so
  // ||L X||_gamma <= gamma ||X||_gamma reduces to ||L X|| <= ||X|| plus the membership check.
  std::mt19937_64 rng(89);
  const Surd gamma = q(1, 2);
  for (std::size_t k = 1; k <= 3; ++k) {
    auto x = project_orthogonal_component(random_process(rng, k));
    auto lx = transfer_L(x);
    for (const auto& r : orthogonality_residual(lx)) EXPECT_TRUE(r.is_zero());
    Surd lhs = process_inner(lx, lx), rhs = process_inner(x, x) * gamma * gamma;
    for (std::size_t i = 0; i + 1 < k; ++i) lhs /= gamma * gamma;
    for (std::size_t i = 0; i < k; ++i) rhs /= gamma * gamma;
    EXPECT_LE(lhs, rhs);
  }
}

TEST(Dilation, ResidualIsExactlyZero) {
  auto one = CylinderFunction<Surd>::constant(3, 1, q(1));
  EXPECT_TRUE(dilation_check(sg(), one, 2, 2).exact_zero);
  auto ind = CylinderFunction<Surd>::indicator(3, {0});
  auto r = dilation_check(sg(), ind, 1, 3);
  EXPECT_TRUE(r.exact_zero);
  EXPECT_EQ(r.max_abs_diff, 0.0);
  KusuokaMeasure<Surd> coin(builtin_bernoulli<Surd>({mpq_class(1, 3), mpq_class(2, 3)}));
  CylinderFunction<Surd> f{2, {q(1), q(-2), q(3, 7), q(5)}};
  for (std::size_t k = 0; k <= 3; ++k) EXPECT_TRUE(dilation_check(coin, f, k, 3).exact_zero);
}

TEST(QDecay, Examples) {
  // G = A sigma_z in V^(0).
  auto z = FiniteProcess<Surd>::constant(test::sg_exact(), kSigmaZ);
  auto p = project_Q(sg(), z, 1);
  EXPECT_EQ(p.rep.norms2[1] / process_inner(z, z), q(8, 25));
  auto rows = q_decay_check(sg(), 1, 4, 10, 5, q(8, 75));
  ASSERT_EQ(rows.size(), 4u);
  EXPECT_EQ(rows.front().j, 1u);
  for (const auto& r : rows) EXPECT_TRUE(r.ok) << r.j;
  EXPECT_LE(rows.front().max_ratio, 1.0);
  EXPECT_THROW(q_decay_check(sg(), 1, 4, 10, 5, q(0)), MathError);
}
