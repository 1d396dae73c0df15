#include "kusuoka/surd.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>

#include "kusuoka/errors.hpp"

namespace kusuoka {
namespace {

constexpr unsigned long kSieveLimit = 1'000'000;

const std::vector<unsigned long>& small_primes() {
  static const std::vector<unsigned long> primes = [] {
    std::vector<bool> composite(kSieveLimit + 1, false);
    std::vector<unsigned long> out;
    for (unsigned long i = 2; i <= kSieveLimit; ++i) {
      if (composite[i]) continue;
      out.push_back(i);
      for (unsigned long j = i * i; j <= kSieveLimit; j += i) composite[j] = true;
    }
    return out;
  }();
  return primes;
}

// Smallest prime factor of a squarefree radicand r > 1. A cofactor with no factor below the
// sieve limit is returned whole and treated as atomic.
mpz_class split_prime(const mpz_class& r) {
  for (unsigned long p : small_primes()) {
    mpz_class pp = p;
    if (pp * pp > r) break;
    if (mpz_divisible_ui_p(r.get_mpz_t(), p)) return pp;
  }
  return r;
}

Surd::Term multiply_terms(const Surd::Term& a, const Surd::Term& b) {
  if (a.radicand == 1) return {b.radicand, a.coef * b.coef};
  if (b.radicand == 1) return {a.radicand, a.coef * b.coef};
  mpz_class g;
  mpz_gcd(g.get_mpz_t(), a.radicand.get_mpz_t(), b.radicand.get_mpz_t());
  mpz_class rad = (a.radicand / g) * (b.radicand / g);
  mpq_class coef = a.coef * b.coef * mpq_class(g);
  return {rad, coef};
}

struct Cursor {
  std::string_view text;
  std::size_t pos = 0;

  void skip_ws() {
    while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) ++pos;
  }
  bool eat(char c) {
    skip_ws();
    if (pos < text.size() && text[pos] == c) {
      ++pos;
      return true;
    }
    return false;
  }
  bool eat_word(std::string_view w) {
    skip_ws();
    if (text.substr(pos, w.size()) == w) {
      pos += w.size();
      return true;
    }
    return false;
  }
  bool at_end() {
    skip_ws();
    return pos >= text.size();
  }
  [[noreturn]] void fail(const std::string& why) const {
    throw ConfigError("cannot parse exact scalar '" + std::string(text) + "': " + why);
  }
  std::string digits() {
    skip_ws();
    std::size_t start = pos;
    while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) ++pos;
    return std::string(text.substr(start, pos - start));
  }
  mpq_class number() {
    std::string whole = digits();
    std::string frac;
    if (pos < text.size() && text[pos] == '.') {
      ++pos;
      std::size_t start = pos;
      while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) ++pos;
      frac = std::string(text.substr(start, pos - start));
    }
    if (whole.empty() && frac.empty()) fail("expected a number");
    mpz_class mant(whole.empty() ? "0" : whole);
    mpz_class scale = 1;
    for (char c : frac) {
      mant = mant * 10 + (c - '0');
      scale *= 10;
    }
    long exponent = 0;
    if (pos < text.size() && (text[pos] == 'e' || text[pos] == 'E')) {
      ++pos;
      bool neg = false;
      if (pos < text.size() && (text[pos] == '+' || text[pos] == '-')) neg = text[pos++] == '-';
      std::string e = digits();
      if (e.empty()) fail("bad exponent");
      exponent = std::stol(e) * (neg ? -1 : 1);
    }
    mpq_class value(mant, scale);
    mpz_class ten_pow;
    mpz_ui_pow_ui(ten_pow.get_mpz_t(), 10, static_cast<unsigned long>(std::labs(exponent)));
    if (exponent > 0) value *= mpq_class(ten_pow);
    if (exponent < 0) value /= mpq_class(ten_pow);
    if (frac.empty() && exponent == 0 && eat('/')) {
      std::string den = digits();
      if (den.empty()) fail("expected denominator");
      mpz_class d(den);
      if (d == 0) fail("zero denominator");
      value /= mpq_class(d);
    }
    value.canonicalize();
    return value;
  }
  Surd sqrt_call() {
    if (!eat('(')) fail("expected '(' after sqrt");
    std::string arg = digits();
    if (arg.empty()) fail("sqrt argument must be a nonnegative integer");
    if (!eat(')')) fail("expected ')'");
    return Surd::sqrt_of(mpq_class(mpz_class(arg)));
  }
  Surd term() {
    if (eat_word("sqrt")) {
      Surd s = sqrt_call();
      if (eat('*')) return s * Surd(number());
      return s;
    }
    Surd value(number());
    if (eat('*')) {
      if (!eat_word("sqrt")) fail("expected sqrt after '*'");
      value *= sqrt_call();
    }
    return value;
  }
};

}  // namespace

std::pair<mpz_class, mpz_class> squarefree_split(const mpz_class& n) {
  if (n <= 0) throw MathError("squarefree_split needs a positive integer");
  mpz_class rest = n;
  mpz_class square = 1;
  mpz_class free = 1;
  bool exhausted = true;
  for (unsigned long p : small_primes()) {
    mpz_class pp = p;
    if (pp * pp > rest) {
      exhausted = false;
      break;
    }
    int e = 0;
    while (mpz_divisible_ui_p(rest.get_mpz_t(), p)) {
      mpz_divexact_ui(rest.get_mpz_t(), rest.get_mpz_t(), p);
      ++e;
    }
    for (int i = 0; i < e / 2; ++i) square *= pp;
    if (e % 2 == 1) free *= pp;
  }
  if (rest > 1) {
    if (!exhausted) {
      free *= rest;  // rest is prime
    } else if (mpz_perfect_square_p(rest.get_mpz_t())) {
      mpz_class root;
      mpz_sqrt(root.get_mpz_t(), rest.get_mpz_t());
      square *= root;
    } else {
      // No factor below 1e6 and rest < 1e18 leaves p or p*q with distinct large primes.
      mpz_class cap("1000000000000000000");
      if (rest >= cap) throw MathError("radicand too large to certify squarefree: " + n.get_str());
      free *= rest;
    }
  }
  return {square, free};
}

Surd::Surd(long value) {
  if (value != 0) terms_.push_back({1, mpq_class(value)});
}

Surd::Surd(const mpq_class& value) {
  // mpq_class(num, den) does not reduce; equality compares coefficients field by field.
  mpq_class v = value;
  v.canonicalize();
  if (v != 0) terms_.push_back({1, std::move(v)});
}

Surd Surd::from_terms(std::vector<Term> terms) {
  std::sort(terms.begin(), terms.end(),
            [](const Term& a, const Term& b) { return a.radicand < b.radicand; });
  std::vector<Term> out;
  out.reserve(terms.size());
  for (auto& t : terms) {
    if (!out.empty() && out.back().radicand == t.radicand) {
      out.back().coef += t.coef;
    } else {
      out.push_back(std::move(t));
    }
  }
  std::erase_if(out, [](const Term& t) { return t.coef == 0; });
  return Surd(std::move(out));
}

Surd Surd::sqrt_of(const mpq_class& q) {
  if (q < 0) throw MathError("square root of a negative rational");
  if (q == 0) return Surd();
  // sqrt(a/b) = sqrt(a*b)/b
  mpz_class prod = q.get_num() * q.get_den();
  auto [square, free] = squarefree_split(prod);
  mpq_class coef(square, q.get_den());
  coef.canonicalize();
  return Surd(std::vector<Term>{{free, coef}});
}

Surd Surd::parse(std::string_view text) {
  Cursor cur{text};
  if (cur.at_end()) cur.fail("empty");
  Surd total;
  bool first = true;
  while (!cur.at_end()) {
    bool negative = false;
    if (cur.eat('-')) {
      negative = true;
    } else if (cur.eat('+')) {
    } else if (!first) {
      cur.fail("expected '+' or '-'");
    }
    Surd t = cur.term();
    total += negative ? -t : t;
    first = false;
  }
  return total;
}

bool Surd::is_rational() const {
  return terms_.empty() || (terms_.size() == 1 && terms_[0].radicand == 1);
}

mpq_class Surd::rational() const {
  if (!is_rational()) throw MathError("value is irrational: " + str());
  return terms_.empty() ? mpq_class(0) : terms_[0].coef;
}

double Surd::to_double() const {
  double sum = 0.0;
  for (const auto& t : terms_) {
    double root = t.radicand == 1 ? 1.0 : std::sqrt(t.radicand.get_d());
    sum += t.coef.get_d() * root;
  }
  return sum;
}

int Surd::sign() const {
  if (terms_.empty()) return 0;
  if (is_rational()) return sgn(terms_[0].coef);
  for (mp_bitcnt_t prec = 128; prec <= (1u << 20); prec *= 2) {
    mpf_class sum(0, prec);
    mpf_class magnitude(0, prec);
    for (const auto& t : terms_) {
      mpf_class root(t.radicand, prec);
      root = sqrt(root);
      mpf_class c(t.coef, prec);
      mpf_class v(c * root, prec);
      sum += v;
      magnitude += abs(v);
    }
    mpf_class err(magnitude, prec);
    mpf_div_2exp(err.get_mpf_t(), err.get_mpf_t(), prec - 8);
    if (abs(sum) > err) return sgn(sum);
  }
  throw MathError("could not resolve sign of " + str());
}

Surd Surd::inverse() const {
  if (terms_.empty()) throw MathError("division by zero");
  if (is_rational()) return Surd(mpq_class(1) / terms_[0].coef);
  // Pick a prime p from some radicand and write x = a + b*sqrt(p) with a, b free of sqrt(p);
  // then 1/x = (a - b*sqrt(p)) / (a^2 - p*b^2) and the denominator has one generator fewer.
  mpz_class p;
  for (const auto& t : terms_) {
    if (t.radicand != 1) {
      p = split_prime(t.radicand);
      break;
    }
  }
  std::vector<Term> a_terms, b_terms;
  for (const auto& t : terms_) {
    if (mpz_divisible_p(t.radicand.get_mpz_t(), p.get_mpz_t())) {
      b_terms.push_back({t.radicand / p, t.coef});
    } else {
      a_terms.push_back(t);
    }
  }
  Surd a = from_terms(std::move(a_terms));
  Surd b = from_terms(std::move(b_terms));
  Surd root_p(std::vector<Term>{{p, mpq_class(1)}});
  Surd conj = a - b * root_p;
  Surd denom = a * a - Surd(mpq_class(p)) * b * b;
  return conj * denom.inverse();
}

std::string Surd::str() const {
  if (terms_.empty()) return "0";
  std::string out;
  for (std::size_t i = 0; i < terms_.size(); ++i) {
    const auto& t = terms_[i];
    bool negative = t.coef < 0;
    mpq_class mag = abs(t.coef);
    if (i == 0) {
      if (negative) out += "-";
    } else {
      out += negative ? " - " : " + ";
    }
    if (t.radicand == 1) {
      out += mag.get_str();
    } else if (mag == 1) {
      out += "sqrt(" + t.radicand.get_str() + ")";
    } else {
      out += mag.get_str() + "*sqrt(" + t.radicand.get_str() + ")";
    }
  }
  return out;
}

Surd Surd::operator-() const {
  Surd out = *this;
  for (auto& t : out.terms_) t.coef = -t.coef;
  return out;
}

Surd& Surd::operator+=(const Surd& other) {
  if (other.terms_.empty()) return *this;
  if (terms_.size() == 1 && other.terms_.size() == 1 &&
      terms_[0].radicand == other.terms_[0].radicand) {
    terms_[0].coef += other.terms_[0].coef;
    if (terms_[0].coef == 0) terms_.clear();
    return *this;
  }
  std::vector<Term> merged;
  merged.reserve(terms_.size() + other.terms_.size());
  auto i = terms_.begin();
  auto j = other.terms_.begin();
  while (i != terms_.end() || j != other.terms_.end()) {
    if (j == other.terms_.end() || (i != terms_.end() && i->radicand < j->radicand)) {
      merged.push_back(std::move(*i++));
    } else if (i == terms_.end() || j->radicand < i->radicand) {
      merged.push_back(*j++);
    } else {
      mpq_class c = i->coef + j->coef;
      if (c != 0) merged.push_back({i->radicand, c});
      ++i;
      ++j;
    }
  }
  terms_ = std::move(merged);
  return *this;
}

Surd& Surd::operator-=(const Surd& other) { return *this += -other; }

Surd operator*(const Surd& a, const Surd& b) {
  if (a.terms_.empty() || b.terms_.empty()) return Surd();
  if (a.terms_.size() == 1 && b.terms_.size() == 1) {
    auto t = multiply_terms(a.terms_[0], b.terms_[0]);
    return Surd(std::vector<Surd::Term>{std::move(t)});
  }
  std::vector<Surd::Term> out;
  out.reserve(a.terms_.size() * b.terms_.size());
  for (const auto& x : a.terms_) {
    for (const auto& y : b.terms_) out.push_back(multiply_terms(x, y));
  }
  return Surd::from_terms(std::move(out));
}

Surd& Surd::operator*=(const Surd& other) { return *this = *this * other; }
Surd& Surd::operator/=(const Surd& other) { return *this = *this * other.inverse(); }

bool operator==(const Surd& a, const Surd& b) {
  if (a.terms_.size() != b.terms_.size()) return false;
  for (std::size_t i = 0; i < a.terms_.size(); ++i) {
    if (a.terms_[i].radicand != b.terms_[i].radicand || a.terms_[i].coef != b.terms_[i].coef)
      return false;
  }
  return true;
}

std::strong_ordering operator<=>(const Surd& a, const Surd& b) {
  int s = (a - b).sign();
  if (s < 0) return std::strong_ordering::less;
  if (s > 0) return std::strong_ordering::greater;
  return std::strong_ordering::equal;
}

Surd abs(const Surd& x) { return x.sign() < 0 ? -x : x; }

}  // namespace kusuoka
