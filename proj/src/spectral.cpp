#include "kusuoka/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <numbers>

#include "kusuoka/kernels.hpp"
#include "kusuoka/linalg.hpp"
#include "kusuoka/measure.hpp"
#include "kusuoka/poly.hpp"

namespace kusuoka {
namespace {

// Coordinates on symmetric matrices: E_ii, then E_ij + E_ji for i < j. On antisymmetric
// matrices: E_ij - E_ji for i < j. These bases are not orthonormal; they are used only where
// the answer is basis independent (characteristic polynomials, eigenvectors).
template <class T>
std::vector<Matrix<T>> coordinate_basis(std::size_t d, bool symmetric) {
  std::vector<Matrix<T>> basis;
  if (symmetric) {
    for (std::size_t i = 0; i < d; ++i) {
      Matrix<T> m(d, d);
      m(i, i) = T(1);
      basis.push_back(std::move(m));
    }
  }
  for (std::size_t i = 0; i < d; ++i) {
    for (std::size_t j = i + 1; j < d; ++j) {
      Matrix<T> m(d, d);
      m(i, j) = T(1);
      m(j, i) = symmetric ? T(1) : T(-1);
      basis.push_back(std::move(m));
    }
  }
  return basis;
}

template <class T>
std::vector<T> coordinates(const Matrix<T>& x, bool symmetric) {
  const std::size_t d = x.rows();
  std::vector<T> c;
  if (symmetric)
    for (std::size_t i = 0; i < d; ++i) c.push_back(x(i, i));
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = i + 1; j < d; ++j) c.push_back(x(i, j));
  return c;
}

template <class T>
Matrix<T> from_coordinates(const std::vector<T>& c, std::size_t d, bool symmetric) {
  auto basis = coordinate_basis<T>(d, symmetric);
  Matrix<T> x(d, d);
  for (std::size_t i = 0; i < basis.size(); ++i) x += basis[i] * c[i];
  return x;
}

template <class T>
using LinearMap = std::function<Matrix<T>(const Matrix<T>&)>;

template <class T>
Matrix<T> coordinate_rep(const LinearMap<T>& op, std::size_t d, bool symmetric) {
  auto basis = coordinate_basis<T>(d, symmetric);
  Matrix<T> rep(basis.size(), basis.size());
  for (std::size_t j = 0; j < basis.size(); ++j) {
    auto c = coordinates(op(basis[j]), symmetric);
    for (std::size_t i = 0; i < basis.size(); ++i) rep(i, j) = c[i];
  }
  return rep;
}

template <class T>
LinearMap<T> raw_M(const std::vector<Matrix<T>>& maps, bool dual) {
  return [&maps, dual](const Matrix<T>& b) {
    Matrix<T> out(b.rows(), b.cols());
    for (const auto& a : maps) out += dual ? a * b * a.transpose() : a.transpose() * b * a;
    return out;
  };
}

// Rational coefficients of an exact characteristic polynomial, if it has them.
std::optional<RationalPoly> rational_charpoly(const Matrix<Surd>& m) {
  std::vector<mpq_class> q;
  for (const auto& c : charpoly(m)) {
    if (!c.is_rational()) return std::nullopt;
    q.push_back(c.rational());
  }
  return RationalPoly(std::move(q));
}

std::vector<std::complex<double>> roots_of(const Matrix<double>& m) { return eigenvalues(m); }

double max_modulus(const std::vector<std::complex<double>>& v) {
  double r = 0.0;
  for (const auto& z : v) r = std::max(r, std::abs(z));
  return r;
}

bool close(double a, double b) { return std::fabs(a - b) <= 1e-9 * std::max(1.0, std::fabs(b)); }

template <class T>
Theta1Result theta1_float(const MatrixSystem<T>& sys) {
  Theta1Result out;
  auto ts = matrix_rep_M(sys, Subspace::traceless_symmetric);
  auto as = matrix_rep_M(sys, Subspace::antisymmetric);
  out.symmetric_eigenvalues = roots_of(to_double(ts.matrix));
  out.antisymmetric_eigenvalues = roots_of(to_double(as.matrix));
  double rho = std::max(max_modulus(out.symmetric_eigenvalues),
                        max_modulus(out.antisymmetric_eigenvalues));
  out.theta1 = Certified::of(rho);
  out.irreducible = rho < 1.0 - 1e-12;
  return out;
}

}  // namespace

template <class T>
Theta1Result theta1(const MatrixSystem<T>& sys) {
  if constexpr (!Field<T>::exact) {
    return theta1_float(sys);
  } else {
    const std::size_t d = sys.dim();
    auto m_op = raw_M(sys.maps(), true);
    auto sym = rational_charpoly(coordinate_rep<Surd>(m_op, d, true));
    auto anti = rational_charpoly(coordinate_rep<Surd>(m_op, d, false));
    if (!sym || !anti) return theta1_float(to_float(sys));

    // The identity spans an invariant line with eigenvalue 1; its E-complement is invariant.
    auto [sym_rest, rem] = RationalPoly::divmod(*sym, RationalPoly({mpq_class(-1), mpq_class(1)}));
    if (!rem.is_zero()) throw MathError("M does not fix the identity; system is not normalized");

    Theta1Result out;
    out.symmetric_eigenvalues = sym_rest.numeric_roots();
    out.antisymmetric_eigenvalues = anti->numeric_roots();
    for (const auto* p : {&sym_rest, &*anti})
      for (const auto& r : p->rational_roots())
        if (std::find(out.rational_eigenvalues.begin(), out.rational_eigenvalues.end(), r) ==
            out.rational_eigenvalues.end())
          out.rational_eigenvalues.push_back(r);
    std::sort(out.rational_eigenvalues.begin(), out.rational_eigenvalues.end());

    // Repeated roots lose half the digits numerically; the squarefree part keeps them simple.
    double rho = std::max(max_modulus(sym_rest.squarefree_part().numeric_roots()),
                          max_modulus(anti->squarefree_part().numeric_roots()));
    out.theta1 = Certified::of(rho);
    if (sym_rest.degree() <= 0 && anti->degree() <= 0) {
      out.theta1 = Certified::of(Surd(0));
    } else {
      for (const auto& r : out.rational_eigenvalues) {
        mpq_class mag = abs(r);
        if (close(mag.get_d(), rho)) {
          out.theta1 = Certified::of(Surd(mag));
          break;
        }
      }
    }
    out.irreducible = out.theta1.exact ? (*out.theta1.exact - Surd(1)).sign() < 0
                                       : rho < 1.0 - 1e-12;
    return out;
  }
}

template <class T>
Certified theta1_schatten(const MatrixSystem<T>& sys, double p) {
  if (!(p >= 1.0)) throw std::invalid_argument("Schatten norm needs p >= 1");
  if (!sys.symmetric()) throw MathError("theta1_schatten requires symmetric restriction maps");
  OperatorRep<T> rep;
  try {
    rep = matrix_rep_M(sys, Subspace::traceless_symmetric);
  } catch (const MathError&) {
    if constexpr (Field<T>::exact) return theta1_schatten(to_float(sys), p);
    throw;
  }
  const std::size_t n = rep.basis.size();
  if (n == 0) return Field<T>::exact ? Certified::of(Surd(0)) : Certified::of(0.0);

  bool scalar = true;
  for (std::size_t i = 0; i < n && scalar; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      T expect = i == j ? rep.matrix(0, 0) : T(0);
      if constexpr (Field<T>::exact) {
        scalar = scalar && rep.matrix(i, j) == expect;
      } else {
        scalar = scalar && std::fabs(rep.matrix(i, j) - expect) <= 1e-13;
      }
    }
  }
  if (scalar) {
    if constexpr (Field<T>::exact) return Certified::of(abs(rep.matrix(0, 0)));
    else return Certified::of(std::fabs(rep.matrix(0, 0)));
  }

  std::vector<Matrix<double>> basis;
  for (const auto& b : rep.basis) basis.push_back(to_double(b));
  const Matrix<double> mrep = to_double(rep.matrix);
  // Ratio ||M(B)||_p / ||B||_p for B = sum x_i basis_i; M acts on coordinates through mrep.
  auto ratio = [&](const std::vector<double>& x) {
    Matrix<double> b(sys.dim(), sys.dim()), mb(sys.dim(), sys.dim());
    for (std::size_t j = 0; j < n; ++j) {
      b += basis[j] * x[j];
      double y = 0.0;
      for (std::size_t k = 0; k < n; ++k) y += mrep(j, k) * x[k];
      mb += basis[j] * y;
    }
    double den = schatten_norm(b, p);
    return den > 0 ? schatten_norm(mb, p) / den : 0.0;
  };

  double best = 0.0;
  if (n == 2) {
    const int grid = 3600;
    const double pi = std::numbers::pi;
    auto at = [&](double t) { return ratio({std::cos(t), std::sin(t)}); };
    double best_t = 0.0;
    for (int i = 0; i < grid; ++i) {
      double t = pi * i / grid;
      double v = at(t);
      if (v > best) {
        best = v;
        best_t = t;
      }
    }
    const double phi = (std::sqrt(5.0) - 1) / 2;
    double lo = best_t - pi / grid, hi = best_t + pi / grid;
    double x1 = hi - phi * (hi - lo), x2 = lo + phi * (hi - lo);
    double f1 = at(x1), f2 = at(x2);
    for (int it = 0; it < 100; ++it) {
      if (f1 < f2) {
        lo = x1;
        x1 = x2;
        f1 = f2;
        x2 = lo + phi * (hi - lo);
        f2 = at(x2);
      } else {
        hi = x2;
        x2 = x1;
        f2 = f1;
        x1 = hi - phi * (hi - lo);
        f1 = at(x1);
      }
    }
    best = std::max({best, f1, f2});
  } else {
    SplitMix64 rng(0x5eedu);
    auto gauss = [&rng] {
      double u1 = std::max(rng.uniform(), 1e-300), u2 = rng.uniform();
      return std::sqrt(-2 * std::log(u1)) * std::cos(2 * std::numbers::pi * u2);
    };
    std::vector<double> best_x(n);
    for (int trial = 0; trial < 20000; ++trial) {
      std::vector<double> x(n);
      for (auto& v : x) v = gauss();
      double v = ratio(x);
      if (v > best) {
        best = v;
        best_x = x;
      }
    }
    for (double step = 0.1; step > 1e-10; step /= 2) {
      bool improved = true;
      while (improved) {
        improved = false;
        for (std::size_t i = 0; i < n; ++i) {
          for (double sgn : {1.0, -1.0}) {
            auto x = best_x;
            x[i] += sgn * step;
            double v = ratio(x);
            if (v > best) {
              best = v;
              best_x = x;
              improved = true;
            }
          }
        }
      }
    }
  }
  return Certified::of(best);
}

template <class T>
CkResult c_k(const MatrixSystem<T>& sys, std::size_t k, std::size_t budget) {
  if (k == 0) throw std::invalid_argument("c_k needs k >= 1");
  const std::size_t d = sys.dim();
  CkResult out;
  if (d == 1) return out;

  // Traceless-symmetric basis: symmetric coordinate basis without E_dd, projected off I.
  auto sym = coordinate_basis<T>(d, true);
  sym.erase(sym.begin() + static_cast<long>(d) - 1);
  const Matrix<T> id = Matrix<T>::identity(d);
  std::vector<Matrix<T>> basis;
  for (const auto& s : sym) basis.push_back(s - id * inner_e(sys, s, id));
  Matrix<T> n(basis.size(), basis.size());
  for (std::size_t i = 0; i < basis.size(); ++i)
    for (std::size_t j = 0; j < basis.size(); ++j) n(i, j) = inner_e(sys, basis[i], basis[j]);

  auto table = kernels::word_matrix_table(sys, k, budget);
  Matrix<T> g = kernels::gram_form(sys, table, basis);
  out.applicable = true;

  auto float_value = [&] {
    Eigen::GeneralizedSelfAdjointEigenSolver<Eigen::MatrixXd> es(to_eigen(to_double(g)),
                                                                 to_eigen(to_double(n)),
                                                                 Eigen::EigenvaluesOnly);
    return es.eigenvalues()(0);
  };

  if constexpr (Field<T>::exact) {
    auto poly = rational_charpoly(solve(n, g));
    if (!poly) {
      out.value = Certified::of(float_value());
      return out;
    }
    double least = std::numeric_limits<double>::infinity();
    for (const auto& z : poly->numeric_roots()) least = std::min(least, z.real());
    out.value = Certified::of(least);
    for (const auto& r : poly->rational_roots()) {
      if (close(r.get_d(), least)) {
        out.value = Certified::of(Surd(r));
        break;
      }
    }
  } else {
    out.value = Certified::of(float_value());
  }
  return out;
}

template <class T>
Theta2Result theta2(const MatrixSystem<T>& sys, std::size_t k_max, std::size_t budget) {
  if (k_max == 0) throw std::invalid_argument("theta2 needs k_max >= 1");
  Theta2Result out;
  for (std::size_t k = 1; k <= k_max; ++k) out.c.push_back(c_k(sys, k, budget));
  if (!out.c[0].applicable) {
    out.theta2_thm = out.theta2_lemma = Certified::of(0.0);
    out.note = "no traceless-symmetric directions";
    return out;
  }

  auto positive = [](const Certified& c) {
    return c.exact ? c.exact->sign() > 0 : c.value > 0.0;
  };
  double best = std::numeric_limits<double>::infinity();
  std::size_t best_k = 0;
  for (std::size_t k = 1; k <= k_max; ++k) {
    const Certified& c = out.c[k - 1].value;
    double v = 1.0;
    if (!positive(c)) {
      out.irreducible = false;
    } else {
      v = std::pow(1.0 - c.value, 1.0 / static_cast<double>(k));
    }
    if (v < best) {
      best = v;
      best_k = k;
    }
  }
  out.theta2_thm = Certified::of(best);
  const Certified& cb = out.c[best_k - 1].value;
  if (cb.exact && positive(cb)) {
    Surd base = Surd(1) - *cb.exact;
    if (best_k == 1) out.theta2_thm = Certified::of(base);
    else if (best_k == 2 && base.is_rational()) out.theta2_thm = Certified::of(Surd::sqrt_of(base.rational()));
  }

  const Certified& c1 = out.c[0].value;
  if (!positive(c1)) {
    out.theta2_lemma = Field<T>::exact ? Certified::of(Surd(1)) : Certified::of(1.0);
  } else if (c1.exact && (Surd(1) - *c1.exact).is_rational()) {
    out.theta2_lemma = Certified::of(Surd::sqrt_of((Surd(1) - *c1.exact).rational()));
  } else {
    out.theta2_lemma = Certified::of(std::sqrt(1.0 - c1.value));
  }
  if (!out.irreducible) {
    out.theta2_thm = Field<T>::exact ? Certified::of(Surd(1)) : Certified::of(1.0);
    out.note = "irreducibility condition fails";
  }
  return out;
}

std::pair<double, Matrix<double>> perron_power_iteration(const std::vector<Matrix<double>>& maps,
                                                         bool dual, double tol, long max_iter) {
  if (maps.empty()) throw DimensionError("no maps");
  const std::size_t d = maps[0].rows();
  auto op = raw_M(maps, dual);
  Matrix<double> b = Matrix<double>::identity(d) * (1.0 / std::sqrt(static_cast<double>(d)));
  for (long it = 0; it < max_iter; ++it) {
    Matrix<double> c = op(b);
    double lambda = frobenius_norm(c);
    if (lambda == 0.0) throw MathError("power iteration collapsed to zero");
    c *= 1.0 / lambda;
    double diff = frobenius_norm(c - b);
    b = std::move(c);
    if (diff < tol) return {lambda, b};
  }
  throw MathError("power iteration did not converge");
}

template <class T>
Renormalization<T> renormalize(const Alphabet& alphabet, const std::vector<Matrix<T>>& raw_maps) {
  if (raw_maps.empty()) throw DimensionError("no raw maps");
  const std::size_t d = raw_maps[0].rows();
  for (const auto& a : raw_maps) {
    if (a.rows() != d || a.cols() != d) throw DimensionError("raw maps must be square, same size");
    if (Field<T>::is_zero(determinant(a))) throw MathError("raw restriction map is singular");
  }
  std::vector<Matrix<double>> float_maps;
  for (const auto& a : raw_maps) float_maps.push_back(to_double(a));
  auto [mu_e, e_float] = perron_power_iteration(float_maps, false);
  auto [mu_r, r_float] = perron_power_iteration(float_maps, true);
  if (std::fabs(mu_e - mu_r) > 1e-8 * mu_e)
    throw MathError("Perron eigenvalues of the two maps disagree: " + Field<double>::str(mu_e) +
                    " vs " + Field<double>::str(mu_r));

  T mu;
  Matrix<T> e0, r0;
  if constexpr (Field<T>::exact) {
    auto exact_form = [&](bool dual, mpq_class& root) {
      Matrix<Surd> rep = coordinate_rep<Surd>(raw_M(raw_maps, dual), d, true);
      auto poly = rational_charpoly(rep);
      if (!poly) throw MathError("characteristic polynomial is not rational; use the float backend");
      bool found = false;
      for (const auto& r : poly->rational_roots()) {
        if (std::fabs(r.get_d() - mu_e) <= 1e-8 * mu_e) {
          root = r;
          found = true;
        }
      }
      if (!found) throw MathError("Perron root is not rational; use the float backend");
      auto ns = nullspace(rep - Matrix<Surd>::identity(rep.rows()) * Surd(root));
      if (ns.size() != 1) throw MathError("Perron eigenspace is not one-dimensional");
      return from_coordinates(ns[0], d, true);
    };
    mpq_class root_e, root_r;
    e0 = exact_form(false, root_e);
    r0 = exact_form(true, root_r);
    if (root_e != root_r) throw MathError("Perron eigenvalues of the two maps disagree");
    mu = Surd(root_e);
  } else {
    mu = 0.5 * (mu_e + mu_r);
    e0 = e_float;
    r0 = r_float;
    e0 = (e0 + e0.transpose()) * 0.5;
    r0 = (r0 + r0.transpose()) * 0.5;
  }
  if (Field<T>::sign(e0.trace()) < 0) e0 = -e0;
  if (Field<T>::sign(r0.trace()) < 0) r0 = -r0;
  auto check_pd = [](const Matrix<T>& m, const char* what) {
    bool pd;
    if constexpr (Field<T>::exact) pd = leading_minors_positive(m);
    else pd = symmetric_eigenvalues(m).front() > 0.0;
    if (!pd) {
      double ev = symmetric_eigenvalues(m).front();
      throw NotPositiveDefinite(std::string(what) + " Perron form is not positive definite", ev);
    }
  };
  check_pd(e0, "energy");
  check_pd(r0, "dual");

  r0 *= T(static_cast<long>(d)) / r0.trace();
  Matrix<T> l = cholesky(r0);
  Matrix<T> l_inv = inverse(l);
  T scale = T(1) / Field<T>::sqrt(mu);
  std::vector<Matrix<T>> maps;
  for (const auto& a : raw_maps) maps.push_back(l_inv * a * l * scale);
  Matrix<T> energy = l.transpose() * e0 * l;
  energy *= T(1) / energy.trace();
  return Renormalization<T>{mu, e0, r0, l,
                            MatrixSystem<T>(alphabet, std::move(maps), std::move(energy))};
}

#define KUSUOKA_INSTANTIATE(T)                                                                \
  template Theta1Result theta1(const MatrixSystem<T>&);                                       \
  template Certified theta1_schatten(const MatrixSystem<T>&, double);                         \
  template CkResult c_k(const MatrixSystem<T>&, std::size_t, std::size_t);                    \
  template Theta2Result theta2(const MatrixSystem<T>&, std::size_t, std::size_t);             \
  template Renormalization<T> renormalize(const Alphabet&, const std::vector<Matrix<T>>&);

KUSUOKA_INSTANTIATE(double)
KUSUOKA_INSTANTIATE(Surd)

}  // namespace kusuoka
