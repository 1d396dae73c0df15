#include "kusuoka/measure.hpp"

#include <cmath>
#include <stdexcept>

#include "kusuoka/kernels.hpp"
#include "kusuoka/linalg.hpp"

namespace kusuoka {

namespace {

template <class T>
SystemPtr<T> validated(SystemPtr<T> sys, double tol) {
  if (!sys) throw std::invalid_argument("null system");
  ValidationReport rep = validate(*sys, tol);
  if (!rep.passed()) {
    std::string why;
    if (!rep.energy_ok) why += " energy residual " + Field<double>::str(rep.energy_residual) + ";";
    if (!rep.identity_ok)
      why += " identity residual " + Field<double>::str(rep.identity_residual) + ";";
    if (!rep.trace_ok) why += " Tr(E) != 1;";
    if (!rep.energy_symmetric) why += " E not symmetric;";
    if (!rep.injective) why += " singular restriction map;";
    throw ValidationError("system failed validation:" + why);
  }
  return sys;
}

template <class T>
T energy_trace(const MatrixSystem<T>& sys, const Matrix<T>& a) {
  return trace_product(a.transpose(), sys.energy() * a);
}

template <class T>
bool leq(const T& a, const T& b) {
  return Field<T>::sign(b - a) >= 0;
}

template <class T>
double operator_norm_symmetric(const Matrix<T>& y) {
  double m = 0.0;
  for (double ev : symmetric_eigenvalues(y)) m = std::max(m, std::fabs(ev));
  return m;
}

}  // namespace

template <class T>
KusuokaMeasure<T>::KusuokaMeasure(MatrixSystem<T> sys, double tol)
    : sys_(validated(std::make_shared<const MatrixSystem<T>>(std::move(sys)), tol)) {}

template <class T>
KusuokaMeasure<T>::KusuokaMeasure(SystemPtr<T> sys, double tol) : sys_(validated(sys, tol)) {}

template <class T>
T KusuokaMeasure<T>::nu(const Word& w) const {
  return energy_trace(*sys_, sys_->word_matrix(w));
}

template <class T>
T KusuokaMeasure<T>::conditional(const Word& w, Symbol s) const {
  sys_->check_word({s});
  Matrix<T> a = sys_->word_matrix(w);
  T base = energy_trace(*sys_, a);
  if (Field<T>::is_zero(base)) throw MathError("conditional on a null cylinder");
  return energy_trace(*sys_, sys_->map(s) * a) / base;
}

template <class T>
T KusuokaMeasure<T>::g_approx(const Word& prefix) const {
  if (prefix.empty()) throw std::invalid_argument("g_approx needs a prefix of length >= 1");
  Word tail(prefix.begin() + 1, prefix.end());
  return nu(prefix) / nu(tail);
}

template <class T>
T KusuokaMeasure<T>::correlation_gap(const Word& alpha, const Word& beta, long n) const {
  if (n < 0) throw std::invalid_argument("correlation_gap needs n >= 0");
  Matrix<T> a = sys_->word_matrix(alpha);
  Matrix<T> b = sys_->word_matrix(beta);
  Matrix<T> x = b.transpose() * sys_->energy() * b;
  T nu_beta = x.trace();
  for (long i = 0; i < n; ++i) x = apply_M_star(*sys_, x);
  T joint = trace_product(a.transpose(), x * a);
  return joint - energy_trace(*sys_, a) * nu_beta;
}

template <class T>
Matrix<T> KusuokaMeasure<T>::h_state(const Word& prefix) const {
  Matrix<T> a = sys_->word_matrix(prefix);
  Matrix<T> h = a.transpose() * sys_->energy() * a;
  T mass = h.trace();
  if (Field<T>::is_zero(mass)) throw MathError("h_state on a null cylinder");
  return h * (T(1) / mass);
}

template <class T>
T KusuokaMeasure<T>::transfer_apply(const CylinderFunction<T>& f, std::size_t m,
                                    const Word& prefix, std::size_t budget) const {
  const std::size_t count = word_count(sys_->size(), f.depth, budget);
  if (f.values.size() != count) throw DimensionError("cylinder function table size mismatch");
  // Tr(H M^m(X)) = Tr(M*^m(H) X)
  Matrix<T> k = h_state(prefix);
  for (std::size_t i = 0; i < m; ++i) k = apply_M_star(*sys_, k);
  auto table = kernels::word_matrix_table(*sys_, f.depth, budget);
  std::vector<Matrix<T>> mid{k};
  auto weights = kernels::sandwich_traces(table, mid);  // Tr(A^T K A) = Tr(K A A^T)
  T sum(0);
  for (std::size_t i = 0; i < count; ++i) sum += weights[i] * f.values[i];
  return sum;
}

template <class T>
T KusuokaMeasure<T>::integrate(const CylinderFunction<T>& f, const Word& w,
                               std::size_t budget) const {
  const std::size_t s = sys_->size();
  if (f.values.size() != word_count(s, f.depth, budget))
    throw DimensionError("cylinder function table size mismatch");
  Matrix<T> a = sys_->word_matrix(w);
  if (w.size() >= f.depth) {
    Word head(w.begin(), w.begin() + static_cast<long>(f.depth));
    return f.at(head, s) * energy_trace(*sys_, a);
  }
  const std::size_t rest = f.depth - w.size();
  auto ext = kernels::word_matrix_table(*sys_, rest, budget);
  const std::size_t base = word_index(w, s) * ext.size();
  T sum(0);
  for (std::size_t i = 0; i < ext.size(); ++i)
    sum += f.values[base + i] * energy_trace(*sys_, ext[i] * a);
  return sum;
}

template <class T>
std::vector<MixingRow<T>> mixing_bound_check(const KusuokaMeasure<T>& m, std::size_t k,
                                             long n_max, const T& rate, std::size_t budget) {
  if (k == 0) throw std::invalid_argument("mixing_bound_check needs k >= 1");
  if (n_max < 0) throw std::invalid_argument("mixing_bound_check needs n_max >= 0");
  const auto& sys = m.system();
  const T d = T(static_cast<long>(sys.dim()));
  auto alphas = kernels::word_matrix_table(sys, k, budget);
  auto nu_alpha = kernels::nu_table(sys, alphas);

  std::vector<Matrix<T>> beta_forms;
  std::vector<T> nu_beta;
  for (std::size_t j = 1; j <= k; ++j) {
    for (const auto& b : kernels::word_matrix_table(sys, j, budget)) {
      beta_forms.push_back(b.transpose() * sys.energy() * b);
      nu_beta.push_back(beta_forms.back().trace());
    }
  }
  std::vector<Matrix<T>> spread;  // M^n(A A^T - nu I)
  for (std::size_t i = 0; i < alphas.size(); ++i)
    spread.push_back(alphas[i] * alphas[i].transpose() -
                     Matrix<T>::identity(sys.dim()) * nu_alpha[i]);

  std::vector<MixingRow<T>> rows;
  T power(1);
  for (long n = 0; n <= n_max; ++n) {
    MixingRow<T> row;
    row.n = n;
    row.gap_bound = d * power;
    auto joint = kernels::sandwich_traces(alphas, beta_forms);
    T worst(0);
    for (std::size_t i = 0; i < alphas.size(); ++i) {
      for (std::size_t j = 0; j < beta_forms.size(); ++j) {
        T gap = Field<T>::abs(joint[i * beta_forms.size() + j] - nu_alpha[i] * nu_beta[j]);
        if (Field<T>::sign(gap - worst) > 0) worst = gap;
      }
    }
    row.max_gap = worst;
    row.gap_ok = leq(worst, row.gap_bound);

    row.pointwise_ok = true;
    for (std::size_t i = 0; i < alphas.size(); ++i) {
      const Matrix<T>& y = spread[i];
      double opn = operator_norm_symmetric(y);
      row.max_pointwise = std::max(row.max_pointwise, opn / Field<T>::to_double(nu_alpha[i]));
      T c = row.gap_bound * nu_alpha[i];
      bool ok;
      if constexpr (Field<T>::exact) {
        Matrix<T> ci = Matrix<T>::identity(sys.dim()) * c;
        ok = principal_minors_nonnegative(ci - y) && principal_minors_nonnegative(ci + y);
      } else {
        ok = opn <= c + 1e-12;
      }
      row.pointwise_ok = row.pointwise_ok && ok;
    }
    rows.push_back(std::move(row));

    for (auto& b : beta_forms) b = apply_M_star(sys, b);
    for (auto& y : spread) y = apply_M(sys, y);
    power *= rate;
  }
  return rows;
}

std::uint64_t SplitMix64::next() {
  std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ull);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
  return z ^ (z >> 31);
}

namespace {
constexpr std::size_t kCachedPrefixLength = 8;
}

template <class T>
const std::vector<double>& Sampler<T>::cdf(const Word& prefix) {
  auto it = cache_.find(prefix);
  if (it != cache_.end()) return it->second;
  const auto& sys = m_.system();
  Matrix<T> a = sys.word_matrix(prefix);
  T base = energy_trace(sys, a);
  std::vector<double> c;
  T cum(0);
  for (Symbol s = 0; s < sys.size(); ++s) {
    cum += energy_trace(sys, sys.map(s) * a) / base;
    c.push_back(Field<T>::to_double(cum));
  }
  if (prefix.size() > kCachedPrefixLength) {
    scratch_ = std::move(c);
    return scratch_;
  }
  return cache_.emplace(prefix, std::move(c)).first->second;
}

template <class T>
Word Sampler<T>::draw(std::size_t length) {
  Word w;
  w.reserve(length);
  for (std::size_t i = 0; i < length; ++i) {
    const auto& c = cdf(w);
    double u = rng_.uniform();
    Symbol s = 0;
    while (s + 1 < c.size() && u >= c[s]) ++s;
    w.push_back(s);
  }
  return w;
}

#define KUSUOKA_INSTANTIATE(T)                                                              \
  template class KusuokaMeasure<T>;                                                         \
  template class Sampler<T>;                                                                \
  template std::vector<MixingRow<T>> mixing_bound_check(const KusuokaMeasure<T>&,           \
                                                        std::size_t, long, const T&,        \
                                                        std::size_t);

KUSUOKA_INSTANTIATE(double)
KUSUOKA_INSTANTIATE(Surd)

}  // namespace kusuoka
