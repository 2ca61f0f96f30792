#include "spinscat/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "spinscat/errors.hpp"

namespace spinscat {

ComplexMatrix::ComplexMatrix(std::size_t n, std::initializer_list<cplx> row_major)
    : n_(n), data_(row_major) {
  if (data_.size() != n * n) throw InvalidParameter("ComplexMatrix: initializer size mismatch");
}

ComplexMatrix ComplexMatrix::identity(std::size_t n) {
  ComplexMatrix m(n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
  return m;
}

ComplexMatrix ComplexMatrix::diagonal(std::span<const cplx> d) {
  ComplexMatrix m(d.size());
  for (std::size_t i = 0; i < d.size(); ++i) m(i, i) = d[i];
  return m;
}

ComplexMatrix ComplexMatrix::adjoint() const {
  ComplexMatrix m(n_);
  for (std::size_t i = 0; i < n_; ++i)
    for (std::size_t j = 0; j < n_; ++j) m(i, j) = std::conj((*this)(j, i));
  return m;
}

ComplexMatrix ComplexMatrix::conjugate() const {
  ComplexMatrix m(n_);
  std::transform(data_.begin(), data_.end(), m.data_.begin(),
                 [](cplx z) { return std::conj(z); });
  return m;
}

cplx ComplexMatrix::trace() const {
  cplx t = 0.0;
  for (std::size_t i = 0; i < n_; ++i) t += (*this)(i, i);
  return t;
}

double ComplexMatrix::norm_inf() const {
  double best = 0.0;
  for (std::size_t i = 0; i < n_; ++i) {
    double s = 0.0;
    for (std::size_t j = 0; j < n_; ++j) s += std::abs((*this)(i, j));
    best = std::max(best, s);
  }
  return best;
}

double ComplexMatrix::hermiticity_defect() const {
  double d = 0.0;
  for (std::size_t i = 0; i < n_; ++i)
    for (std::size_t j = 0; j < n_; ++j)
      d = std::max(d, std::abs((*this)(i, j) - std::conj((*this)(j, i))));
  return d;
}

ComplexMatrix operator*(const ComplexMatrix& a, const ComplexMatrix& b) {
  const std::size_t n = a.size();
  ComplexMatrix c(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t k = 0; k < n; ++k) {
      const cplx aik = a(i, k);
      if (aik == cplx{}) continue;
      for (std::size_t j = 0; j < n; ++j) c(i, j) += aik * b(k, j);
    }
  return c;
}

ComplexVector operator*(const ComplexMatrix& a, std::span<const cplx> x) {
  ComplexVector y(a.size());
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < a.size(); ++j) y[i] += a(i, j) * x[j];
  return y;
}

ComplexMatrix operator+(ComplexMatrix a, const ComplexMatrix& b) {
  for (std::size_t i = 0; i < a.data_.size(); ++i) a.data_[i] += b.data_[i];
  return a;
}

ComplexMatrix operator-(ComplexMatrix a, const ComplexMatrix& b) {
  for (std::size_t i = 0; i < a.data_.size(); ++i) a.data_[i] -= b.data_[i];
  return a;
}

ComplexMatrix operator*(cplx s, ComplexMatrix a) {
  for (auto& z : a.data_) z *= s;
  return a;
}

double norm_inf(std::span<const cplx> v) {
  double m = 0.0;
  for (const auto& z : v) m = std::max(m, std::abs(z));
  return m;
}

LuFactorization::LuFactorization(const ComplexMatrix& a)
    : lu_(a), perm_(a.size()), row_scale_(a.size(), 1.0) {
  const std::size_t n = a.size();
  std::iota(perm_.begin(), perm_.end(), std::size_t{0});

  for (std::size_t i = 0; i < n; ++i) {
    double s = 0.0;
    for (std::size_t j = 0; j < n; ++j) s = std::max(s, std::abs(lu_(i, j)));
    if (!std::isfinite(s)) throw SingularMatrix("LU: non-finite matrix entry", INFINITY);
    if (s == 0.0) throw SingularMatrix("LU: zero row " + std::to_string(i), INFINITY);
    row_scale_[i] = 1.0 / s;
    for (std::size_t j = 0; j < n; ++j) lu_(i, j) *= row_scale_[i];
  }

  double max_pivot = 0.0;
  for (std::size_t k = 0; k < n; ++k) {
    std::size_t p = k;
    double best = std::abs(lu_(k, k));
    for (std::size_t i = k + 1; i < n; ++i)
      if (std::abs(lu_(i, k)) > best) {
        best = std::abs(lu_(i, k));
        p = i;
      }
    max_pivot = std::max(max_pivot, best);
    if (best < 1e-300)
      throw SingularMatrix("LU: pivot " + std::to_string(k) + " below 1e-300",
                           best > 0.0 ? max_pivot / best : INFINITY);
    if (p != k) {
      for (std::size_t j = 0; j < n; ++j) std::swap(lu_(k, j), lu_(p, j));
      std::swap(perm_[k], perm_[p]);
    }
    const cplx pivot = lu_(k, k);
    for (std::size_t i = k + 1; i < n; ++i) {
      const cplx l = lu_(i, k) / pivot;
      lu_(i, k) = l;
      if (l == cplx{}) continue;
      for (std::size_t j = k + 1; j < n; ++j) lu_(i, j) -= l * lu_(k, j);
    }
  }
}

ComplexVector LuFactorization::solve(std::span<const cplx> b) const {
  const std::size_t n = lu_.size();
  if (b.size() != n) throw InvalidParameter("LU solve: right-hand side size mismatch");
  ComplexVector x(n);
  for (std::size_t i = 0; i < n; ++i) x[i] = b[perm_[i]] * row_scale_[perm_[i]];
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < i; ++j) x[i] -= lu_(i, j) * x[j];
  for (std::size_t i = n; i-- > 0;) {
    for (std::size_t j = i + 1; j < n; ++j) x[i] -= lu_(i, j) * x[j];
    x[i] /= lu_(i, i);
  }
  return x;
}

double LuFactorization::inverse_norm_inf() const {
  const std::size_t n = lu_.size();
  std::vector<double> row_sums(n, 0.0);
  ComplexVector e(n);
  for (std::size_t j = 0; j < n; ++j) {
    std::fill(e.begin(), e.end(), cplx{});
    e[j] = 1.0;
    const ComplexVector col = solve(e);
    for (std::size_t i = 0; i < n; ++i) row_sums[i] += std::abs(col[i]);
  }
  return *std::max_element(row_sums.begin(), row_sums.end());
}

ComplexVector lu_solve(const ComplexMatrix& a, std::span<const cplx> b) {
  return LuFactorization(a).solve(b);
}

double condition_estimate(const ComplexMatrix& a) {
  return a.norm_inf() * LuFactorization(a).inverse_norm_inf();
}

HermitianEigen hermitian_eigen(const ComplexMatrix& h) {
  const std::size_t n = h.size();
  ComplexMatrix a(n);
  for (std::size_t i = 0; i < n; ++i) {
    a(i, i) = h(i, i).real();
    for (std::size_t j = i + 1; j < n; ++j) {
      a(i, j) = 0.5 * (h(i, j) + std::conj(h(j, i)));
      a(j, i) = std::conj(a(i, j));
    }
  }
  ComplexMatrix v = ComplexMatrix::identity(n);

  auto off_norm = [&] {
    double s = 0.0;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i + 1; j < n; ++j) s += std::norm(a(i, j));
    return s;
  };
  double scale = 0.0;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) scale += std::norm(a(i, j));

  for (int sweep = 0; sweep < 100; ++sweep) {
    if (off_norm() <= 1e-36 * scale) break;
    for (std::size_t p = 0; p + 1 < n; ++p)
      for (std::size_t q = p + 1; q < n; ++q) {
        const cplx apq = a(p, q);
        const double mag = std::abs(apq);
        if (mag == 0.0) continue;
        // Rotation J acting on (p, q) with a phase that makes the pivot real:
        //   J_pp = c, J_pq = s e^{i phi}, J_qp = -s e^{-i phi}, J_qq = c.
        const cplx phase = apq / mag;
        const double app = a(p, p).real();
        const double aqq = a(q, q).real();
        const double theta = 0.5 * (aqq - app) / mag;
        const double t = (theta >= 0 ? 1.0 : -1.0) /
                         (std::abs(theta) + std::sqrt(theta * theta + 1.0));
        const double c = 1.0 / std::sqrt(t * t + 1.0);
        const double s = t * c;
        const cplx sp = s * phase;          // s e^{i phi}
        const cplx sm = s * std::conj(phase); // s e^{-i phi}
        for (std::size_t k = 0; k < n; ++k) {
          // A <- A J on columns p, q.
          const cplx akp = a(k, p), akq = a(k, q);
          a(k, p) = c * akp - sm * akq;
          a(k, q) = sp * akp + c * akq;
        }
        for (std::size_t k = 0; k < n; ++k) {
          // A <- J^H A on rows p, q.
          const cplx apk = a(p, k), aqk = a(q, k);
          a(p, k) = c * apk - sp * aqk;
          a(q, k) = sm * apk + c * aqk;
        }
        a(p, q) = 0.0;
        a(q, p) = 0.0;
        a(p, p) = a(p, p).real();
        a(q, q) = a(q, q).real();
        for (std::size_t k = 0; k < n; ++k) {
          const cplx vkp = v(k, p), vkq = v(k, q);
          v(k, p) = c * vkp - sm * vkq;
          v(k, q) = sp * vkp + c * vkq;
        }
      }
  }

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(), [&](std::size_t x, std::size_t y) {
    return a(x, x).real() > a(y, y).real();
  });
  HermitianEigen out{std::vector<double>(n), ComplexMatrix(n)};
  for (std::size_t k = 0; k < n; ++k) {
    out.values[k] = a(order[k], order[k]).real();
    for (std::size_t i = 0; i < n; ++i) out.vectors(i, k) = v(i, order[k]);
  }
  return out;
}

std::vector<double> hermitian_eigenvalues(const ComplexMatrix& h) {
  return hermitian_eigen(h).values;
}

ComplexMatrix psd_sqrt(const ComplexMatrix& h) {
  const HermitianEigen eig = hermitian_eigen(h);
  const std::size_t n = h.size();
  std::vector<double> root(n);
  for (std::size_t k = 0; k < n; ++k) {
    const double lambda = eig.values[k];
    if (lambda < -1e-8)
      throw NotPositiveSemidefinite("psd_sqrt: eigenvalue " + std::to_string(lambda) +
                                    " is materially negative");
    root[k] = lambda > 0.0 ? std::sqrt(lambda) : 0.0;
  }
  ComplexMatrix s(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      cplx acc = 0.0;
      for (std::size_t k = 0; k < n; ++k) {
        if (root[k] == 0.0) continue;
        acc += eig.vectors(i, k) * root[k] * std::conj(eig.vectors(j, k));
      }
      s(i, j) = acc;
    }
  return s;
}

} // namespace spinscat
