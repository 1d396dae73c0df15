#include "kusuoka/procspace.hpp"

#include <cmath>
#include <stdexcept>

#include "kusuoka/kernels.hpp"
#include "kusuoka/linalg.hpp"

namespace kusuoka {
namespace {

template <class T>
void require_same_system(const FiniteProcess<T>& f, const FiniteProcess<T>& g) {
  if (!f.system || !g.system) throw std::invalid_argument("process without a system");
  if (f.system != g.system && !(f.system->maps() == g.system->maps() &&
                                f.system->energy() == g.system->energy()))
    throw DimensionError("processes belong to different systems");
}

template <class T>
void require_table(const FiniteProcess<T>& f) {
  if (!f.system) throw std::invalid_argument("process without a system");
  if (f.values.size() != word_count(f.system->size(), f.degree))
    throw DimensionError("process table does not cover S^degree");
}

template <class T>
struct Levels {
  std::vector<CylinderFunction<T>> expectations;
  MartingaleRep<T> rep;
};

// Given the mass w(alpha) = integral over [alpha] of a function at level n and nu on S^n,
// builds E[. | F_j] for j <= n by summing children, then the martingale differences.
template <class T>
Levels<T> from_masses(std::vector<T> mass, std::vector<T> nu, std::size_t n, std::size_t s) {
  std::vector<std::vector<T>> masses(n + 1), nus(n + 1);
  masses[n] = std::move(mass);
  nus[n] = std::move(nu);
  for (std::size_t j = n; j-- > 0;) {
    const std::size_t count = masses[j + 1].size() / s;
    masses[j].assign(count, T(0));
    nus[j].assign(count, T(0));
    for (std::size_t i = 0; i < count; ++i) {
      for (std::size_t c = 0; c < s; ++c) {
        masses[j][i] += masses[j + 1][i * s + c];
        nus[j][i] += nus[j + 1][i * s + c];
      }
    }
  }
  Levels<T> out;
  for (std::size_t j = 0; j <= n; ++j) {
    CylinderFunction<T> e{j, std::vector<T>(masses[j].size())};
    for (std::size_t i = 0; i < masses[j].size(); ++i) {
      if (Field<T>::is_zero(nus[j][i])) throw MathError("null cylinder");
      e.values[i] = masses[j][i] / nus[j][i];
    }
    out.expectations.push_back(std::move(e));
  }
  for (std::size_t j = 0; j <= n; ++j) {
    CylinderFunction<T> c = out.expectations[j];
    if (j > 0)
      for (std::size_t i = 0; i < c.values.size(); ++i)
        c.values[i] -= out.expectations[j - 1].values[i / s];
    T norm2(0);
    for (std::size_t i = 0; i < c.values.size(); ++i) norm2 += nus[j][i] * c.values[i] * c.values[i];
    out.rep.components.push_back(std::move(c));
    out.rep.norms2.push_back(norm2);
  }
  return out;
}

}  // namespace

template <class T>
FiniteProcess<T> FiniteProcess<T>::identity(SystemPtr<T> sys) {
  const std::size_t d = sys->dim();
  return FiniteProcess{std::move(sys), 0, {Matrix<T>::identity(d)}};
}

template <class T>
FiniteProcess<T> FiniteProcess<T>::constant(SystemPtr<T> sys, const Matrix<T>& g0) {
  if (g0.rows() != sys->dim() || g0.cols() != sys->dim()) throw DimensionError("g0 shape");
  return FiniteProcess{std::move(sys), 0, {g0}};
}

template <class T>
std::vector<Matrix<T>> FiniteProcess<T>::at_level(std::size_t level, std::size_t budget) const {
  require_table(*this);
  if (level < degree) throw std::invalid_argument("cannot evaluate a process below its degree");
  word_count(system->size(), level, budget);
  std::vector<Matrix<T>> v = values;
  for (std::size_t j = degree; j < level; ++j) v = kernels::extend_level(*system, v);
  return v;
}

template <class T>
FiniteProcess<T> FiniteProcess<T>::extend(std::size_t level, std::size_t budget) const {
  return FiniteProcess{system, level, at_level(level, budget)};
}

template <class T>
T MartingaleRep<T>::total_norm2() const {
  T s(0);
  for (const auto& x : norms2) s += x;
  return s;
}

template <class T>
T process_inner(const FiniteProcess<T>& f, const FiniteProcess<T>& g) {
  require_same_system(f, g);
  const std::size_t n = std::max(f.degree, g.degree);
  auto fv = f.at_level(n);
  auto gv = g.at_level(n);
  T sum(0);
  for (std::size_t i = 0; i < fv.size(); ++i) sum += inner_e(*f.system, fv[i], gv[i]);
  return sum;
}

template <class T>
FiniteProcess<T> shift_T(const FiniteProcess<T>& f) {
  require_table(f);
  const auto& sys = *f.system;
  const std::size_t block = f.values.size();
  std::vector<Matrix<T>> out(block * sys.size());
  for (Symbol s = 0; s < sys.size(); ++s)
    for (std::size_t i = 0; i < block; ++i) out[s * block + i] = f.values[i] * sys.map(s);
  return FiniteProcess<T>{f.system, f.degree + 1, std::move(out)};
}

template <class T>
FiniteProcess<T> transfer_L(const FiniteProcess<T>& f) {
  require_table(f);
  const FiniteProcess<T> g = f.degree == 0 ? f.extend(1) : f;
  const auto& sys = *g.system;
  const std::size_t block = g.values.size() / sys.size();
  std::vector<Matrix<T>> out(block, Matrix<T>(sys.dim(), sys.dim()));
  for (std::size_t i = 0; i < block; ++i)
    for (Symbol s = 0; s < sys.size(); ++s)
      out[i] += g.values[s * block + i] * sys.map(s).transpose();
  return FiniteProcess<T>{g.system, g.degree - 1, std::move(out)};
}

template <class T>
FiniteProcess<T> embed_phi(SystemPtr<T> sys, const CylinderFunction<T>& f) {
  auto table = kernels::word_matrix_table(*sys, f.depth);
  if (table.size() != f.values.size()) throw DimensionError("cylinder function table size");
  for (std::size_t i = 0; i < table.size(); ++i) table[i] *= f.values[i];
  return FiniteProcess<T>{std::move(sys), f.depth, std::move(table)};
}

template <class T>
MartingaleRep<T> martingale_decompose(const KusuokaMeasure<T>& m, const CylinderFunction<T>& f,
                                      std::size_t budget) {
  const auto& sys = m.system();
  if (f.values.size() != word_count(sys.size(), f.depth, budget))
    throw DimensionError("cylinder function table size");
  auto nu = kernels::nu_table(sys, kernels::word_matrix_table(sys, f.depth, budget));
  std::vector<T> mass(nu.size());
  for (std::size_t i = 0; i < nu.size(); ++i) mass[i] = nu[i] * f.values[i];
  return from_masses(std::move(mass), std::move(nu), f.depth, sys.size()).rep;
}

template <class T>
ProjectionQ<T> project_Q(const KusuokaMeasure<T>& m, const FiniteProcess<T>& f,
                         std::size_t level, std::size_t budget) {
  const auto& sys = m.system();
  const std::size_t n = std::max(level, f.degree);
  auto fv = f.at_level(n, budget);
  auto words = kernels::word_matrix_table(sys, n, budget);
  auto nu = kernels::nu_table(sys, words);
  std::vector<T> mass(fv.size());
  for (std::size_t i = 0; i < fv.size(); ++i) mass[i] = inner_e(sys, fv[i], words[i]);
  auto levels = from_masses(std::move(mass), std::move(nu), n, sys.size());
  levels.expectations.resize(level + 1);
  levels.rep.components.resize(level + 1);
  levels.rep.norms2.resize(level + 1);
  return ProjectionQ<T>{std::move(levels.expectations), std::move(levels.rep)};
}

template <class T>
Certified gamma_norm(const MartingaleRep<T>& rep, const T& gamma) {
  if (Field<T>::sign(gamma) <= 0 || Field<T>::sign(gamma - T(1)) >= 0)
    throw std::invalid_argument("gamma must lie in (0, 1)");
  if constexpr (Field<T>::exact) {
    bool rational = gamma.is_rational();
    for (const auto& x : rep.norms2) rational = rational && x.is_rational();
    if (rational) {
      Surd sum(0), weight(1);
      Surd inv = gamma.inverse();
      for (const auto& x : rep.norms2) {
        sum += weight * Surd::sqrt_of(x.rational());
        weight *= inv;
      }
      return Certified::of(sum);
    }
  }
  double sum = 0.0, weight = 1.0;
  const double g = Field<T>::to_double(gamma);
  for (const auto& x : rep.norms2) {
    sum += weight * std::sqrt(std::max(0.0, Field<T>::to_double(x)));
    weight /= g;
  }
  return Certified::of(sum);
}

template <class T>
std::vector<Matrix<T>> orthogonality_residual(const FiniteProcess<T>& f) {
  require_table(f);
  if (f.degree == 0) return {};
  const auto& sys = *f.system;
  const std::size_t s = sys.size();
  std::vector<Matrix<T>> out(f.values.size() / s, Matrix<T>(sys.dim(), sys.dim()));
  for (std::size_t i = 0; i < out.size(); ++i)
    for (Symbol t = 0; t < s; ++t)
      out[i] += sys.map(t).transpose() * sys.energy() * f.values[i * s + t];
  return out;
}

template <class T>
FiniteProcess<T> project_orthogonal_component(const FiniteProcess<T>& f) {
  if (f.degree == 0) return f;
  const auto& sys = *f.system;
  const std::size_t s = sys.size();
  const Matrix<T> e_inv = inverse(sys.energy());
  auto residual = orthogonality_residual(f);
  FiniteProcess<T> out = f;
  for (std::size_t i = 0; i < residual.size(); ++i) {
    Matrix<T> z = e_inv * residual[i];
    for (Symbol t = 0; t < s; ++t) out.values[i * s + t] -= sys.map(t) * z;
  }
  return out;
}

template <class T>
DilationResult dilation_check(const KusuokaMeasure<T>& m, const CylinderFunction<T>& f,
                              std::size_t k, std::size_t level, std::size_t budget) {
  const auto& sys = m.system();
  FiniteProcess<T> p = embed_phi(m.system_ptr(), f);
  for (std::size_t i = 0; i < k; ++i) p = transfer_L(p);
  auto proj = project_Q(m, p, level, budget);

  DilationResult out;
  out.exact_zero = Field<T>::exact;
  for (std::size_t j = 0; j <= level; ++j) {
    const auto words = enumerate(sys.size(), j, budget);
    for (std::size_t i = 0; i < words.size(); ++i) {
      const Word& beta = words[i];
      T direct(0);
      if (k >= f.depth) {
        direct = m.transfer_apply(f, k - f.depth, beta, budget);
      } else {
        for (const auto& gamma : enumerate(sys.size(), k, budget))
          direct += m.integrate(f, concat(gamma, beta), budget);
        direct /= m.nu(beta);
      }
      T diff = proj.expectations[j].values[i] - direct;
      if (!Field<T>::is_zero(diff)) out.exact_zero = false;
      out.max_abs_diff = std::max(out.max_abs_diff, std::fabs(Field<T>::to_double(diff)));
    }
  }
  return out;
}

template <class T>
std::vector<DecayRow> q_decay_check(const KusuokaMeasure<T>& m, std::size_t k,
                                    std::size_t j_max, std::size_t trials, std::uint64_t seed,
                                    const T& c1, std::size_t budget) {
  if (j_max < k) throw std::invalid_argument("q_decay_check needs j_max >= k");
  if (Field<T>::sign(c1) <= 0) throw MathError("irreducibility constant c1 is zero");
  const auto& sys = m.system();
  const T theta2_sq = T(1) - c1;
  const double theta2 = std::sqrt(Field<T>::to_double(theta2_sq));
  const std::size_t count = word_count(sys.size(), k, budget);
  word_count(sys.size(), j_max, budget);

  std::vector<DecayRow> rows;
  for (std::size_t j = k; j <= j_max; ++j) {
    DecayRow r;
    r.j = j;
    r.bound = std::pow(theta2, static_cast<double>(j - k));
    r.ok = true;
    rows.push_back(r);
  }

  SplitMix64 rng(seed);
  auto draw = [&rng]() -> T {
    if constexpr (Field<T>::exact) {
      long v = static_cast<long>(rng.next() % 19) - 9;
      return Surd(mpq_class(v, 10));
    } else {
      return 2.0 * rng.uniform() - 1.0;
    }
  };
  for (std::size_t t = 0; t < trials; ++t) {
    FiniteProcess<T> g{m.system_ptr(), k, {}};
    for (std::size_t i = 0; i < count; ++i) {
      Matrix<T> x(sys.dim(), sys.dim());
      for (std::size_t a = 0; a < sys.dim(); ++a)
        for (std::size_t b = 0; b < sys.dim(); ++b) x(a, b) = draw();
      g.values.push_back(std::move(x));
    }
    g = project_orthogonal_component(g);
    T norm2 = process_inner(g, g);
    if (Field<T>::sign(norm2) <= 0) continue;
    auto proj = project_Q(m, g, j_max, budget);
    T bound2(1);
    for (auto& row : rows) {
      const T& q2 = proj.rep.norms2[row.j];
      double ratio = std::sqrt(std::max(0.0, Field<T>::to_double(q2 / norm2)));
      row.max_ratio = std::max(row.max_ratio, ratio);
      bool ok;
      if constexpr (Field<T>::exact) ok = Field<T>::sign(bound2 * norm2 - q2) >= 0;
      else ok = ratio <= row.bound + 1e-12;
      row.ok = row.ok && ok;
      bound2 *= theta2_sq;
    }
  }
  return rows;
}

#define KUSUOKA_INSTANTIATE(T)                                                                  \
  template struct FiniteProcess<T>;                                                             \
  template struct MartingaleRep<T>;                                                             \
  template T process_inner(const FiniteProcess<T>&, const FiniteProcess<T>&);                   \
  template FiniteProcess<T> shift_T(const FiniteProcess<T>&);                                   \
  template FiniteProcess<T> transfer_L(const FiniteProcess<T>&);                                \
  template FiniteProcess<T> embed_phi(SystemPtr<T>, const CylinderFunction<T>&);                \
  template MartingaleRep<T> martingale_decompose(const KusuokaMeasure<T>&,                      \
                                                 const CylinderFunction<T>&, std::size_t);      \
  template ProjectionQ<T> project_Q(const KusuokaMeasure<T>&, const FiniteProcess<T>&,          \
                                    std::size_t, std::size_t);                                  \
  template Certified gamma_norm(const MartingaleRep<T>&, const T&);                             \
  template std::vector<Matrix<T>> orthogonality_residual(const FiniteProcess<T>&);              \
  template FiniteProcess<T> project_orthogonal_component(const FiniteProcess<T>&);              \
  template DilationResult dilation_check(const KusuokaMeasure<T>&, const CylinderFunction<T>&,  \
                                         std::size_t, std::size_t, std::size_t);                \
  template std::vector<DecayRow> q_decay_check(const KusuokaMeasure<T>&, std::size_t,           \
                                               std::size_t, std::size_t, std::uint64_t,         \
                                               const T&, std::size_t);

KUSUOKA_INSTANTIATE(double)
KUSUOKA_INSTANTIATE(Surd)

}  // namespace kusuoka
