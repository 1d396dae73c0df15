#include "kusuoka/matsys.hpp"

#include <cmath>
#include <limits>

#include "kusuoka/linalg.hpp"

namespace kusuoka {

template <class T>
MatrixSystem<T>::MatrixSystem(Alphabet alphabet, std::vector<Matrix<T>> maps, Matrix<T> energy)
    : alphabet_(std::move(alphabet)), maps_(std::move(maps)), energy_(std::move(energy)) {
  if (maps_.empty()) throw DimensionError("a system needs at least one map");
  if (alphabet_.size() != maps_.size())
    throw DimensionError("alphabet has " + std::to_string(alphabet_.size()) + " symbols but " +
                         std::to_string(maps_.size()) + " maps were given");
  dim_ = energy_.rows();
  if (!energy_.is_square() || dim_ == 0) throw DimensionError("energy form must be square");
  symmetric_ = true;
  for (const auto& a : maps_) {
    if (a.rows() != dim_ || a.cols() != dim_)
      throw DimensionError("restriction map shape does not match the energy form");
    if constexpr (Field<T>::exact) {
      symmetric_ = symmetric_ && a.is_symmetric();
    } else {
      for (std::size_t i = 0; i < dim_; ++i)
        for (std::size_t j = i + 1; j < dim_; ++j)
          if (std::fabs(a(i, j) - a(j, i)) > kDefaultTolerance) symmetric_ = false;
    }
  }
}

template <class T>
void MatrixSystem<T>::check_word(const Word& w) const {
  for (Symbol s : w)
    if (s >= maps_.size()) throw UnknownSymbol("symbol " + std::to_string(s) + " out of range");
}

namespace {

template <class T>
void require_dim(const MatrixSystem<T>& sys, const Matrix<T>& m) {
  if (m.rows() != sys.dim() || m.cols() != sys.dim())
    throw DimensionError("matrix is " + std::to_string(m.rows()) + "x" + std::to_string(m.cols()) +
                         ", system dimension is " + std::to_string(sys.dim()));
}

template <class T>
bool residual_ok(const Matrix<T>& r, double tol) {
  if constexpr (Field<T>::exact) {
    return r.is_zero();
  } else {
    return frobenius_norm(r) <= tol;
  }
}

template <class T>
double min_eigenvalue(const Matrix<T>& m) {
  auto ev = symmetric_eigenvalues(m);
  return ev.empty() ? 0.0 : ev.front();
}

}  // namespace

template <class T>
ValidationReport validate(const MatrixSystem<T>& sys, double tol) {
  ValidationReport rep;
  const auto& e = sys.energy();
  rep.energy_symmetric = Field<T>::exact ? e.is_symmetric()
                                         : frobenius_norm(e - e.transpose()) <= tol;
  rep.min_energy_eigenvalue = min_eigenvalue(e);
  bool pd = false;
  if constexpr (Field<T>::exact) {
    pd = rep.energy_symmetric && leading_minors_positive(e);
  } else {
    pd = rep.min_energy_eigenvalue > 0.0;
  }
  if (!pd)
    throw NotPositiveDefinite("energy form is not positive definite (min eigenvalue " +
                                  Field<double>::str(rep.min_energy_eigenvalue) + ")",
                              rep.min_energy_eigenvalue);

  Matrix<T> r1 = apply_M_star(sys, e) - e;
  Matrix<T> r2 = apply_M(sys, Matrix<T>::identity(sys.dim())) - Matrix<T>::identity(sys.dim());
  T tr = e.trace() - T(1);
  rep.energy_residual = frobenius_norm(r1);
  rep.identity_residual = frobenius_norm(r2);
  rep.trace_residual = std::fabs(Field<T>::to_double(tr));
  rep.energy_ok = residual_ok(r1, tol);
  rep.identity_ok = residual_ok(r2, tol);
  rep.trace_ok = Field<T>::exact ? Field<T>::is_zero(tr) : rep.trace_residual <= tol;

  for (Symbol s = 0; s < sys.size(); ++s) {
    T det = determinant(sys.map(s));
    bool singular = Field<T>::exact ? Field<T>::is_zero(det)
                                    : std::fabs(Field<T>::to_double(det)) <= tol;
    if (singular) rep.singular_maps.push_back(s);
  }
  rep.injective = rep.singular_maps.empty();
  return rep;
}

template <class T>
T inner_e(const MatrixSystem<T>& sys, const Matrix<T>& a, const Matrix<T>& b) {
  require_dim(sys, a);
  require_dim(sys, b);
  return trace_product(b.transpose(), sys.energy() * a);
}

template <class T>
Matrix<T> apply_M(const MatrixSystem<T>& sys, const Matrix<T>& b) {
  require_dim(sys, b);
  Matrix<T> out(sys.dim(), sys.dim());
  for (const auto& a : sys.maps()) out += a * b * a.transpose();
  return out;
}

template <class T>
Matrix<T> apply_M_star(const MatrixSystem<T>& sys, const Matrix<T>& b) {
  require_dim(sys, b);
  Matrix<T> out(sys.dim(), sys.dim());
  for (const auto& a : sys.maps()) out += a.transpose() * b * a;
  return out;
}

Subspace parse_subspace(const std::string& name) {
  if (name == "full") return Subspace::full;
  if (name == "symmetric") return Subspace::symmetric;
  if (name == "antisymmetric") return Subspace::antisymmetric;
  if (name == "traceless-symmetric") return Subspace::traceless_symmetric;
  throw ConfigError("unknown subspace '" + name + "'");
}

template <class T>
OperatorRep<T> matrix_rep_M(const MatrixSystem<T>& sys, Subspace part) {
  const std::size_t d = sys.dim();
  auto unit = [d](std::size_t i, std::size_t j) {
    Matrix<T> m(d, d);
    m(i, j) = T(1);
    return m;
  };
  std::vector<Matrix<T>> candidates;
  switch (part) {
    case Subspace::full:
      for (std::size_t i = 0; i < d; ++i)
        for (std::size_t j = 0; j < d; ++j) candidates.push_back(unit(i, j));
      break;
    case Subspace::traceless_symmetric:
      candidates.push_back(Matrix<T>::identity(d));
      [[fallthrough]];
    case Subspace::symmetric:
      for (std::size_t i = 0; i < d; ++i) candidates.push_back(unit(i, i));
      for (std::size_t i = 0; i < d; ++i)
        for (std::size_t j = i + 1; j < d; ++j) candidates.push_back(unit(i, j) + unit(j, i));
      break;
    case Subspace::antisymmetric:
      for (std::size_t i = 0; i < d; ++i)
        for (std::size_t j = i + 1; j < d; ++j) candidates.push_back(unit(i, j) - unit(j, i));
      break;
  }

  std::vector<Matrix<T>> basis;
  for (auto& v : candidates) {
    Matrix<T> w = v;
    for (const auto& e : basis) w -= e * inner_e(sys, v, e);
    T n2 = inner_e(sys, w, w);
    bool dependent = Field<T>::exact ? Field<T>::is_zero(n2)
                                     : Field<T>::to_double(n2) < 1e-24;
    if (dependent) continue;
    w *= T(1) / Field<T>::sqrt(n2);
    basis.push_back(std::move(w));
  }
  if (part == Subspace::traceless_symmetric && !basis.empty()) basis.erase(basis.begin());

  OperatorRep<T> rep{basis, Matrix<T>(basis.size(), basis.size())};
  for (std::size_t j = 0; j < basis.size(); ++j) {
    Matrix<T> image = apply_M(sys, basis[j]);
    for (std::size_t i = 0; i < basis.size(); ++i) rep.matrix(i, j) = inner_e(sys, image, basis[i]);
  }
  return rep;
}

template <class T>
double schatten_norm(const Matrix<T>& b, double p) {
  if (!(p >= 1.0)) throw std::invalid_argument("Schatten norm needs p >= 1");
  auto sv = singular_values(b);
  if (std::isinf(p)) {
    double m = 0.0;
    for (double s : sv) m = std::max(m, s);
    return m;
  }
  double sum = 0.0;
  for (double s : sv) sum += std::pow(s, p);
  return std::pow(sum, 1.0 / p);
}

template <class T>
MatrixSystem<T> builtin_sg() {
  const T half = Field<T>::from_rational(mpq_class(1, 2));
  const T root3_half = Field<T>::sqrt(Field<T>::from_rational(3)) * half;
  const T inv_root15 = T(1) / Field<T>::sqrt(Field<T>::from_rational(15));
  Matrix<T> d = Matrix<T>::diagonal({T(3) * inv_root15, inv_root15});
  Matrix<T> r = {{-half, root3_half}, {-root3_half, -half}};
  Matrix<T> r_inv = r.transpose();
  std::vector<Matrix<T>> maps;
  Matrix<T> fwd = Matrix<T>::identity(2);  // R^s
  Matrix<T> back = Matrix<T>::identity(2);  // R^{-s}
  for (int s = 0; s < 3; ++s) {
    maps.push_back(back * d * fwd);
    fwd = fwd * r;
    back = back * r_inv;
  }
  return MatrixSystem<T>(Alphabet::numbered(3), std::move(maps),
                         Matrix<T>::identity(2) * half);
}

template <class T>
MatrixSystem<T> builtin_bernoulli(const std::vector<mpq_class>& probabilities) {
  if (probabilities.empty()) throw ConfigError("bernoulli needs at least one probability");
  std::vector<Matrix<T>> maps;
  for (const auto& p : probabilities) {
    if (p <= 0) throw ConfigError("bernoulli probabilities must be positive");
    maps.push_back(Matrix<T>{{Field<T>::sqrt(Field<T>::from_rational(p))}});
  }
  return MatrixSystem<T>(Alphabet::numbered(probabilities.size()), std::move(maps),
                         Matrix<T>::identity(1));
}

MatrixSystem<double> to_float(const MatrixSystem<Surd>& sys) {
  std::vector<Matrix<double>> maps;
  for (const auto& a : sys.maps()) maps.push_back(to_double(a));
  return MatrixSystem<double>(sys.alphabet(), std::move(maps), to_double(sys.energy()));
}

#define KUSUOKA_INSTANTIATE(T)                                                        \
  template class MatrixSystem<T>;                                                     \
  template ValidationReport validate(const MatrixSystem<T>&, double);                 \
  template T inner_e(const MatrixSystem<T>&, const Matrix<T>&, const Matrix<T>&);     \
  template Matrix<T> apply_M(const MatrixSystem<T>&, const Matrix<T>&);               \
  template Matrix<T> apply_M_star(const MatrixSystem<T>&, const Matrix<T>&);          \
  template OperatorRep<T> matrix_rep_M(const MatrixSystem<T>&, Subspace);             \
  template double schatten_norm(const Matrix<T>&, double);                            \
  template MatrixSystem<T> builtin_sg<T>();                                           \
  template MatrixSystem<T> builtin_bernoulli<T>(const std::vector<mpq_class>&);

KUSUOKA_INSTANTIATE(double)
KUSUOKA_INSTANTIATE(Surd)

}  // namespace kusuoka
