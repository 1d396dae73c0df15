#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "kusuoka/errors.hpp"
#include "kusuoka/matrix.hpp"

namespace kusuoka {

using Symbol = std::uint32_t;
/// A finite word over the alphabet; the empty word addresses the whole space.
using Word = std::vector<Symbol>;

inline constexpr std::size_t kDefaultWordBudget = 10'000'000;

/// Ordered symbol names. Symbols are indices into this list.
class Alphabet {
 public:
  Alphabet() = default;
  explicit Alphabet(std::vector<std::string> names);
  /// Names "0", "1", ..., "size-1".
  static Alphabet numbered(std::size_t size);

  std::size_t size() const { return names_.size(); }
  const std::vector<std::string>& names() const { return names_; }
  const std::string& name(Symbol s) const;
  Symbol symbol(std::string_view name) const;

  /// Words are written with no separator when every name is one character, else with ".".
  std::string format(const Word& w) const;
  Word parse(std::string_view text) const;

  friend bool operator==(const Alphabet&, const Alphabet&) = default;

 private:
  bool single_char_ = true;
  std::vector<std::string> names_;
};

Word concat(const Word& a, const Word& b);

/// |S|^k, or throws BudgetExceeded above `budget`.
std::size_t word_count(std::size_t alphabet_size, std::size_t k,
                       std::size_t budget = kDefaultWordBudget);

/// Position of w in the lexicographic order of S^len(w).
std::size_t word_index(const Word& w, std::size_t alphabet_size);
Word word_at(std::size_t index, std::size_t k, std::size_t alphabet_size);

/// All words of length k in lexicographic order.
std::vector<Word> enumerate(std::size_t alphabet_size, std::size_t k,
                            std::size_t budget = kDefaultWordBudget);

/// A(w) with A(ws) = A_s A(w); the empty word maps to the identity.
template <class T>
Matrix<T> word_matrix(const std::vector<Matrix<T>>& maps, const Word& w, std::size_t dim) {
  Matrix<T> m = Matrix<T>::identity(dim);
  for (Symbol s : w) {
    if (s >= maps.size()) throw UnknownSymbol("symbol " + std::to_string(s) + " out of range");
    m = maps[s] * m;
  }
  return m;
}

/// A function of the first k symbols, stored in lexicographic word order.
template <class T>
struct CylinderFunction {
  std::size_t depth = 0;
  std::vector<T> values;

  const T& at(const Word& w, std::size_t alphabet_size) const {
    return values.at(word_index(w, alphabet_size));
  }
  static CylinderFunction constant(std::size_t alphabet_size, std::size_t depth, const T& v) {
    return {depth, std::vector<T>(word_count(alphabet_size, depth), v)};
  }
  static CylinderFunction indicator(std::size_t alphabet_size, const Word& w) {
    CylinderFunction f = constant(alphabet_size, w.size(), T(0));
    f.values[word_index(w, alphabet_size)] = T(1);
    return f;
  }
};

}  // namespace kusuoka
