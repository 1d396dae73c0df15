#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "kusuoka/linalg.hpp"
#include "kusuoka/measure.hpp"
#include "support.hpp"

using namespace kusuoka;
using test::q;

namespace {

const KusuokaMeasure<Surd>& sg() {
  static const KusuokaMeasure<Surd> m(test::sg_exact());
  return m;
}

KusuokaMeasure<Surd> coin(long a, long b) {
  return KusuokaMeasure<Surd>(
      builtin_bernoulli<Surd>({mpq_class(a, a + b), mpq_class(b, a + b)}));
}

}  // namespace

TEST(Measure, NuExamples) {
  EXPECT_EQ(sg().nu({}), q(1));
  EXPECT_EQ(sg().nu({0}), q(1, 3));
  EXPECT_EQ(sg().nu({0, 0}), q(41, 225));
  EXPECT_EQ(sg().nu({0, 1}), q(17, 225));
  EXPECT_EQ(sg().nu({0, 0, 0}), q(73, 675));
  EXPECT_EQ(sg().nu({2, 1}), test::naive_nu(sg().system(), {2, 1}));
}

TEST(Measure, RejectsInvalidSystems) {
  auto maps = std::vector<Matrix<Surd>>(3, Matrix<Surd>::identity(2));
  MatrixSystem<Surd> bad(Alphabet::numbered(3), maps, Matrix<Surd>::identity(2) * q(1, 2));
  EXPECT_THROW(KusuokaMeasure<Surd>{bad}, ValidationError);
}

TEST(Measure, AdditivityOnBothSides) {
  for (std::size_t n = 0; n <= 4; ++n) {
    for (const auto& w : enumerate(3, n)) {
      Surd right(0), left(0);
      for (Symbol s = 0; s < 3; ++s) {
        right += sg().nu(concat(w, {s}));
        left += sg().nu(concat({s}, w));
      }
      EXPECT_EQ(right, sg().nu(w));
      EXPECT_EQ(left, sg().nu(w));
    }
  }
}

TEST(Measure, ConditionalExamples) {
  EXPECT_EQ(sg().conditional({0}, 0), q(41, 75));
  for (Symbol s = 0; s < 3; ++s) EXPECT_EQ(sg().conditional({}, s), q(1, 3));
  auto m = coin(1, 3);
  EXPECT_EQ(m.conditional({1, 0, 1}, 0), q(1, 4));
  EXPECT_EQ(m.conditional({0}, 1), q(3, 4));
}

TEST(Measure, ConditionalsSumToOne) {
  std::mt19937_64 rng(31);
  std::uniform_int_distribution<int> len(0, 6), sym(0, 2);
  for (int t = 0; t < 100; ++t) {
    Word w;
    for (int i = len(rng); i > 0; --i) w.push_back(sym(rng));
    Surd total(0);
    for (Symbol s = 0; s < 3; ++s) total += sg().conditional(w, s);
    EXPECT_EQ(total, q(1));
  }
}

TEST(Measure, GFunctionApproximants) {
  EXPECT_EQ(sg().g_approx({0, 0}), q(41, 75));
  EXPECT_EQ(sg().g_approx({0, 0, 0}), q(73, 123));
  auto m = coin(2, 3);
  EXPECT_EQ(m.g_approx({1, 0, 0, 1}), q(3, 5));
  EXPECT_THROW(sg().g_approx({}), std::invalid_argument);
}

TEST(Measure, CorrelationGapExamples) {
  EXPECT_EQ(sg().correlation_gap({0}, {0}, 0), q(16, 225));
  EXPECT_EQ(sg().correlation_gap({0}, {0}, 1), q(64, 1125));
  auto m = coin(1, 2);
  EXPECT_EQ(m.correlation_gap({0, 1}, {1, 1, 0}, 3), q(0));
  EXPECT_THROW(sg().correlation_gap({0}, {0}, -1), std::invalid_argument);
}

TEST(Measure, CorrelationGapMatchesBruteForce) {
  for (const auto& a : enumerate(3, 2)) {
    for (const auto& b : enumerate(3, 1)) {
      for (long n = 0; n <= 4; ++n) {
        Surd joint(0);
        for (const auto& g : enumerate(3, static_cast<std::size_t>(n)))
          joint += test::naive_nu(sg().system(), concat(concat(a, g), b));
        EXPECT_EQ(sg().correlation_gap(a, b, n), joint - sg().nu(a) * sg().nu(b));
      }
    }
  }
}

TEST(Measure, HStateExamplesAndInvariants) {
  EXPECT_EQ(sg().h_state({}), sg().system().energy());
  EXPECT_EQ(sg().h_state({0}), (Matrix<Surd>{{q(9, 10), q(0)}, {q(0), q(1, 10)}}));
  EXPECT_EQ(sg().h_state({0, 0}), (Matrix<Surd>{{q(81, 82), q(0)}, {q(0), q(1, 82)}}));
  for (std::size_t n = 0; n <= 6; ++n) {
    for (const auto& w : enumerate(3, n)) {
      auto h = sg().h_state(w);
      EXPECT_EQ(h.trace(), q(1));
      EXPECT_TRUE(principal_minors_nonnegative(h));
    }
  }
}

TEST(Measure, TransferApply) {
  auto one = CylinderFunction<Surd>::constant(3, 2, q(1));
  EXPECT_EQ(sg().transfer_apply(one, 3, {1, 2}), q(1));
  auto f = CylinderFunction<Surd>::indicator(3, {0});
  EXPECT_EQ(sg().transfer_apply(f, 0, {}), q(1, 3));
  Surd bound = q(2, 3);
  for (std::size_t n = 0; n <= 10; ++n) {
    Surd diff = sg().transfer_apply(f, n, {0}) - q(1, 3);
    EXPECT_LE(kusuoka::abs(diff), bound) << n;
    bound *= q(4, 5);
  }
}

TEST(Measure, IntegrateBothRegimes) {
  auto f = CylinderFunction<Surd>::indicator(3, {0, 1});
  EXPECT_EQ(sg().integrate(f, {}), q(17, 225));
  EXPECT_EQ(sg().integrate(f, {0}), q(17, 225));
  EXPECT_EQ(sg().integrate(f, {1}), q(0));
  EXPECT_EQ(sg().integrate(f, {0, 1, 2}), sg().nu({0, 1, 2}));
}

TEST(Measure, MixingBoundExamples) {
  auto rows = mixing_bound_check(sg(), 1, 5, q(4, 5));
  ASSERT_EQ(rows.size(), 6u);
  EXPECT_EQ(rows[0].max_gap, q(16, 225));
  for (const auto& r : rows) {
    EXPECT_TRUE(r.gap_ok);
    EXPECT_TRUE(r.pointwise_ok);
  }
  EXPECT_EQ(rows[5].gap_bound, q(2) * q(1024, 3125));
  auto m = coin(1, 1);
  for (const auto& r : mixing_bound_check(m, 2, 4, q(1, 2))) EXPECT_EQ(r.max_gap, q(0));
}

TEST(Sampler, DeterministicPerSeed) {
  EXPECT_EQ(sample(sg(), 0, 1), Word{});
  EXPECT_EQ(sample(sg(), 40, 99), sample(sg(), 40, 99));
  EXPECT_NE(sample(sg(), 40, 99), sample(sg(), 40, 100));
  KusuokaMeasure<double> mf(test::sg_float());
  EXPECT_EQ(sample(mf, 40, 99), sample(sg(), 40, 99));
}

TEST(Sampler, FairCoinFrequency) {
  auto m = coin(1, 1);
  Sampler<Surd> s(m, 2024);
  const int n = 100000;
  int zeros = 0;
  for (int i = 0; i < n; ++i) zeros += s.draw(1)[0] == 0;
  EXPECT_LE(std::fabs(zeros / double(n) - 0.5), 3 * std::sqrt(0.25 / n));
}

TEST(SplitMix64, KnownSequence) {
  // Reference values of the standard SplitMix64 stream seeded with 0.
  SplitMix64 g(0);
  EXPECT_EQ(g.next(), 0xe220a8397b1dcdafULL);
  EXPECT_EQ(g.next(), 0x6e789e6aa1b965f4ULL);
  EXPECT_EQ(g.next(), 0x06c45d188009454fULL);
}
