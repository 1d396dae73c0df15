#include <gtest/gtest.h>

#include <random>

#include "kusuoka/errors.hpp"
#include "kusuoka/symbolic.hpp"
#include "support.hpp"

using namespace kusuoka;
using test::q;

TEST(Symbolic, EnumerateIsLexicographic) {
  EXPECT_EQ(enumerate(3, 0), std::vector<Word>{Word{}});
  EXPECT_EQ(enumerate(3, 1), (std::vector<Word>{{0}, {1}, {2}}));
  auto w2 = enumerate(3, 2);
  ASSERT_EQ(w2.size(), 9u);
  EXPECT_EQ(w2.front(), (Word{0, 0}));
  EXPECT_EQ(w2.back(), (Word{2, 2}));
  for (std::size_t i = 0; i < w2.size(); ++i) {
    EXPECT_EQ(word_index(w2[i], 3), i);
    EXPECT_EQ(word_at(i, 2, 3), w2[i]);
  }
}

TEST(Symbolic, BudgetIsEnforced) {
  EXPECT_THROW(word_count(3, 20, 1000), BudgetExceeded);
  EXPECT_THROW(enumerate(6, 9, 1000000), BudgetExceeded);
  EXPECT_EQ(word_count(6, 2, 36), 36u);
}

TEST(Symbolic, AlphabetFormatting) {
  Alphabet single({"a", "b"});
  EXPECT_EQ(single.format({0, 1, 1}), "abb");
  EXPECT_EQ(single.parse("ba"), (Word{1, 0}));
  Alphabet multi({"left", "right"});
  EXPECT_EQ(multi.format({0, 1}), "left.right");
  EXPECT_EQ(multi.parse("right.left"), (Word{1, 0}));
  EXPECT_EQ(multi.parse(""), Word{});
  EXPECT_THROW(single.parse("abc"), UnknownSymbol);
  EXPECT_THROW(Alphabet({"a", "a"}), ConfigError);
  EXPECT_EQ(Alphabet::numbered(12).format({11, 3}), "11.3");
}

TEST(Symbolic, ConcatExamples) {
  EXPECT_EQ(concat({0}, {1}), (Word{0, 1}));
  EXPECT_EQ(concat({}, {2, 1}), (Word{2, 1}));
}

TEST(Symbolic, WordMatrixOrderAppendsOnTheLeft) {
  const auto& sys = *test::sg_exact();
  EXPECT_EQ(sys.word_matrix({}), Matrix<Surd>::identity(2));
  const Surd r15 = Surd::sqrt_of(mpq_class(1, 15));
  EXPECT_EQ(sys.word_matrix({0}), (Matrix<Surd>{{q(3) * r15, q(0)}, {q(0), r15}}));
  EXPECT_EQ(sys.word_matrix({0, 1}), sys.map(1) * sys.map(0));
  EXPECT_EQ(sys.word_matrix({0, 1, 2}), sys.map(2) * sys.map(1) * sys.map(0));
  EXPECT_THROW(sys.word_matrix({3}), UnknownSymbol);
}

TEST(Symbolic, WordMatrixIsAntiHomomorphism) {
  const auto& sys = *test::sg_exact();
  std::mt19937_64 rng(5);
  std::uniform_int_distribution<int> len(0, 4), sym(0, 2);
  for (int t = 0; t < 50; ++t) {
    Word a, b;
    for (int i = len(rng); i > 0; --i) a.push_back(sym(rng));
    for (int i = len(rng); i > 0; --i) b.push_back(sym(rng));
    EXPECT_EQ(sys.word_matrix(concat(a, b)), sys.word_matrix(b) * sys.word_matrix(a));
  }
}

TEST(Symbolic, CylinderFunctionHelpers) {
  auto f = CylinderFunction<Surd>::indicator(3, {1, 2});
  EXPECT_EQ(f.depth, 2u);
  EXPECT_EQ(f.at({1, 2}, 3), q(1));
  EXPECT_EQ(f.at({2, 1}, 3), q(0));
  auto c = CylinderFunction<double>::constant(2, 3, 0.5);
  EXPECT_EQ(c.values.size(), 8u);
}
