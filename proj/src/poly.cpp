#include "kusuoka/poly.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>

#include "kusuoka/errors.hpp"

namespace kusuoka {
namespace {

mpq_class eval_integer(const std::vector<mpz_class>& f, const mpq_class& x) {
  mpq_class acc = 0;
  for (auto it = f.rbegin(); it != f.rend(); ++it) acc = acc * x + mpq_class(*it);
  return acc;
}

std::vector<mpz_class> derivative_integer(const std::vector<mpz_class>& f) {
  std::vector<mpz_class> d;
  for (std::size_t i = 1; i < f.size(); ++i) d.push_back(f[i] * static_cast<unsigned long>(i));
  return d;
}

mpq_class truncate_dyadic(const mpq_class& x, unsigned long bits) {
  mpz_class scaled = x.get_num();
  mpz_mul_2exp(scaled.get_mpz_t(), scaled.get_mpz_t(), bits);
  mpz_fdiv_q(scaled.get_mpz_t(), scaled.get_mpz_t(), x.get_den_mpz_t());
  mpz_class den = 1;
  mpz_mul_2exp(den.get_mpz_t(), den.get_mpz_t(), bits);
  mpq_class out(scaled, den);
  out.canonicalize();
  return out;
}

// Continued-fraction convergents of x with denominator at most max_den.
std::vector<mpq_class> convergents(const mpq_class& x, const mpz_class& max_den) {
  std::vector<mpq_class> out;
  mpz_class h_prev = 1, h_prev2 = 0, k_prev = 0, k_prev2 = 1;
  mpz_class num = x.get_num(), den = x.get_den();
  while (den != 0) {
    mpz_class a;
    mpz_fdiv_q(a.get_mpz_t(), num.get_mpz_t(), den.get_mpz_t());
    mpz_class h = a * h_prev + h_prev2;
    mpz_class k = a * k_prev + k_prev2;
    if (k > max_den) break;
    mpq_class c(h, k);
    c.canonicalize();
    out.push_back(c);
    h_prev2 = h_prev;
    h_prev = h;
    k_prev2 = k_prev;
    k_prev = k;
    mpz_class rem = num - a * den;
    num = den;
    den = rem;
  }
  return out;
}

}  // namespace

RationalPoly::RationalPoly(std::vector<mpq_class> coefs) : coefs_(std::move(coefs)) {
  for (auto& c : coefs_) c.canonicalize();
  trim();
}

void RationalPoly::trim() {
  while (!coefs_.empty() && coefs_.back() == 0) coefs_.pop_back();
}

mpq_class RationalPoly::eval(const mpq_class& x) const {
  mpq_class acc = 0;
  for (auto it = coefs_.rbegin(); it != coefs_.rend(); ++it) acc = acc * x + *it;
  return acc;
}

std::complex<double> RationalPoly::eval(std::complex<double> x) const {
  std::complex<double> acc = 0;
  for (auto it = coefs_.rbegin(); it != coefs_.rend(); ++it) acc = acc * x + it->get_d();
  return acc;
}

RationalPoly RationalPoly::derivative() const {
  std::vector<mpq_class> d;
  for (std::size_t i = 1; i < coefs_.size(); ++i) d.push_back(coefs_[i] * static_cast<long>(i));
  return RationalPoly(std::move(d));
}

RationalPoly RationalPoly::monic() const {
  if (is_zero()) return *this;
  std::vector<mpq_class> c = coefs_;
  mpq_class lead = c.back();
  for (auto& x : c) x /= lead;
  return RationalPoly(std::move(c));
}

RationalPoly operator*(const RationalPoly& a, const RationalPoly& b) {
  if (a.is_zero() || b.is_zero()) return {};
  std::vector<mpq_class> c(a.coefs_.size() + b.coefs_.size() - 1, 0);
  for (std::size_t i = 0; i < a.coefs_.size(); ++i)
    for (std::size_t j = 0; j < b.coefs_.size(); ++j) c[i + j] += a.coefs_[i] * b.coefs_[j];
  return RationalPoly(std::move(c));
}

RationalPoly operator-(const RationalPoly& a, const RationalPoly& b) {
  std::vector<mpq_class> c(std::max(a.coefs_.size(), b.coefs_.size()), 0);
  for (std::size_t i = 0; i < a.coefs_.size(); ++i) c[i] += a.coefs_[i];
  for (std::size_t i = 0; i < b.coefs_.size(); ++i) c[i] -= b.coefs_[i];
  return RationalPoly(std::move(c));
}

std::pair<RationalPoly, RationalPoly> RationalPoly::divmod(const RationalPoly& a,
                                                           const RationalPoly& b) {
  if (b.is_zero()) throw MathError("polynomial division by zero");
  std::vector<mpq_class> rem = a.coefs_;
  if (a.degree() < b.degree()) return {RationalPoly(), a};
  std::vector<mpq_class> quot(a.degree() - b.degree() + 1, 0);
  for (int k = a.degree() - b.degree(); k >= 0; --k) {
    mpq_class f = rem[k + b.degree()] / b.leading();
    quot[k] = f;
    if (f == 0) continue;
    for (int j = 0; j <= b.degree(); ++j) rem[k + j] -= f * b.coefs_[j];
  }
  rem.resize(b.degree());
  return {RationalPoly(std::move(quot)), RationalPoly(std::move(rem))};
}

RationalPoly RationalPoly::gcd(RationalPoly a, RationalPoly b) {
  while (!b.is_zero()) {
    auto r = divmod(a, b).second;
    a = std::move(b);
    b = std::move(r);
  }
  return a.monic();
}

RationalPoly RationalPoly::squarefree_part() const {
  if (degree() <= 0) return monic();
  RationalPoly g = gcd(*this, derivative());
  return divmod(*this, g).first.monic();
}

std::vector<mpz_class> RationalPoly::primitive_integer() const {
  mpz_class lcm = 1;
  for (const auto& c : coefs_) mpz_lcm(lcm.get_mpz_t(), lcm.get_mpz_t(), c.get_den_mpz_t());
  std::vector<mpz_class> out;
  mpz_class content = 0;
  for (const auto& c : coefs_) {
    mpz_class v = c.get_num() * (lcm / c.get_den());
    mpz_gcd(content.get_mpz_t(), content.get_mpz_t(), v.get_mpz_t());
    out.push_back(v);
  }
  if (content == 0) return out;
  if (out.back() < 0) content = -content;
  for (auto& v : out) v /= content;
  return out;
}

std::vector<std::complex<double>> RationalPoly::numeric_roots() const {
  if (degree() <= 0) return {};
  RationalPoly m = monic();
  const int n = degree();
  Eigen::MatrixXd comp = Eigen::MatrixXd::Zero(n, n);
  for (int i = 1; i < n; ++i) comp(i, i - 1) = 1.0;
  for (int i = 0; i < n; ++i) comp(i, n - 1) = -m.coefs()[i].get_d();
  Eigen::EigenSolver<Eigen::MatrixXd> es(comp, false);
  std::vector<std::complex<double>> out;
  for (int i = 0; i < n; ++i) out.push_back(es.eigenvalues()(i));
  return out;
}

std::vector<mpq_class> RationalPoly::rational_roots() const {
  std::vector<mpq_class> roots;
  RationalPoly p = squarefree_part();
  if (p.degree() <= 0) return roots;
  if (p.coefs()[0] == 0) {
    roots.push_back(0);
    std::vector<mpq_class> shifted(p.coefs().begin() + 1, p.coefs().end());
    p = RationalPoly(std::move(shifted));
  }
  std::vector<mpz_class> f = p.primitive_integer();
  std::vector<mpz_class> df = derivative_integer(f);
  mpz_class lead = abs(f.back());
  const unsigned long lead_bits = mpz_sizeinbase(lead.get_mpz_t(), 2);

  auto try_candidates = [&](const mpq_class& x) {
    for (const auto& c : convergents(x, lead)) {
      if (std::find(roots.begin(), roots.end(), c) != roots.end()) continue;
      if (eval_integer(f, c) == 0) roots.push_back(c);
    }
  };

  for (const auto& z : p.numeric_roots()) {
    if (std::fabs(z.imag()) > 1e-6 * std::max(1.0, std::abs(z))) continue;
    mpq_class x(z.real());
    try_candidates(x);
    // Refine well past 1/(2 lead^2) so that any nearby rational root is a convergent.
    unsigned long mag_bits = static_cast<unsigned long>(std::max(0.0, std::log2(std::abs(z) + 1)));
    unsigned long bits = 2 * lead_bits + 64 + mag_bits;
    mpq_class eps(mpz_class(1), mpz_class(1) << static_cast<mp_bitcnt_t>(bits));
    for (int iter = 0; iter < 200; ++iter) {
      mpq_class fx = eval_integer(f, x);
      if (fx == 0) break;
      mpq_class dfx = eval_integer(df, x);
      if (dfx == 0) break;
      mpq_class next = truncate_dyadic(x - fx / dfx, bits);
      mpq_class step = abs(next - x);
      x = next;
      if (step < eps) break;
    }
    try_candidates(x);
  }
  std::sort(roots.begin(), roots.end());
  return roots;
}

}  // namespace kusuoka
