#include "kusuoka/symbolic.hpp"

#include <algorithm>

namespace kusuoka {

Alphabet::Alphabet(std::vector<std::string> names) : names_(std::move(names)) {
  for (std::size_t i = 0; i < names_.size(); ++i) {
    if (names_[i].empty()) throw ConfigError("empty symbol name");
    if (names_[i].find('.') != std::string::npos)
      throw ConfigError("symbol names may not contain '.'");
    if (names_[i].size() != 1) single_char_ = false;
    for (std::size_t j = 0; j < i; ++j)
      if (names_[j] == names_[i]) throw ConfigError("duplicate symbol name " + names_[i]);
  }
}

Alphabet Alphabet::numbered(std::size_t size) {
  std::vector<std::string> names;
  for (std::size_t i = 0; i < size; ++i) names.push_back(std::to_string(i));
  return Alphabet(std::move(names));
}

const std::string& Alphabet::name(Symbol s) const {
  if (s >= names_.size()) throw UnknownSymbol("symbol index " + std::to_string(s));
  return names_[s];
}

Symbol Alphabet::symbol(std::string_view name) const {
  auto it = std::find(names_.begin(), names_.end(), name);
  if (it == names_.end()) throw UnknownSymbol("unknown symbol '" + std::string(name) + "'");
  return static_cast<Symbol>(it - names_.begin());
}

std::string Alphabet::format(const Word& w) const {
  std::string out;
  for (std::size_t i = 0; i < w.size(); ++i) {
    if (i && !single_char_) out += '.';
    out += name(w[i]);
  }
  return out;
}

Word Alphabet::parse(std::string_view text) const {
  Word w;
  if (text.empty()) return w;
  if (single_char_) {
    for (char c : text) w.push_back(symbol(std::string_view(&c, 1)));
    return w;
  }
  std::size_t start = 0;
  while (true) {
    std::size_t dot = text.find('.', start);
    w.push_back(symbol(text.substr(start, dot - start)));
    if (dot == std::string_view::npos) break;
    start = dot + 1;
  }
  return w;
}

Word concat(const Word& a, const Word& b) {
  Word w = a;
  w.insert(w.end(), b.begin(), b.end());
  return w;
}

std::size_t word_count(std::size_t alphabet_size, std::size_t k, std::size_t budget) {
  std::size_t n = 1;
  for (std::size_t i = 0; i < k; ++i) {
    if (alphabet_size != 0 && n > budget / alphabet_size)
      throw BudgetExceeded(std::to_string(alphabet_size) + "^" + std::to_string(k) +
                           " words exceed the budget of " + std::to_string(budget));
    n *= alphabet_size;
  }
  if (n > budget) throw BudgetExceeded("word count exceeds the budget");
  return n;
}

std::size_t word_index(const Word& w, std::size_t alphabet_size) {
  std::size_t idx = 0;
  for (Symbol s : w) {
    if (s >= alphabet_size) throw UnknownSymbol("symbol " + std::to_string(s) + " out of range");
    idx = idx * alphabet_size + s;
  }
  return idx;
}

Word word_at(std::size_t index, std::size_t k, std::size_t alphabet_size) {
  Word w(k);
  for (std::size_t i = k; i-- > 0;) {
    w[i] = static_cast<Symbol>(index % alphabet_size);
    index /= alphabet_size;
  }
  return w;
}

std::vector<Word> enumerate(std::size_t alphabet_size, std::size_t k, std::size_t budget) {
  const std::size_t n = word_count(alphabet_size, k, budget);
  std::vector<Word> out;
  out.reserve(n);
  for (std::size_t i = 0; i < n; ++i) out.push_back(word_at(i, k, alphabet_size));
  return out;
}

}  // namespace kusuoka
