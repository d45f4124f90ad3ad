#include "latticode/exact_linalg.hpp"

#include <algorithm>
#include <cstdlib>
#include <stdexcept>

namespace latticode {

DyadicMatrix::DyadicMatrix(std::size_t rows, std::size_t cols, IntVector numerators, int log2_den)
    : rows_(rows), cols_(cols), num_(std::move(numerators)), log2_den_(log2_den) {
  if (num_.size() != rows_ * cols_) throw std::invalid_argument("matrix data size does not match shape");
  if (log2_den_ < 0) {
    for (auto& v : num_) v = checked::shl(v, -log2_den_);
    log2_den_ = 0;
  }
  canonicalize();
}

DyadicMatrix::DyadicMatrix(std::initializer_list<std::initializer_list<std::int64_t>> rows, int log2_den) {
  rows_ = rows.size();
  cols_ = rows_ ? rows.begin()->size() : 0;
  for (const auto& r : rows) {
    if (r.size() != cols_) throw std::invalid_argument("ragged matrix rows");
    num_.insert(num_.end(), r.begin(), r.end());
  }
  log2_den_ = log2_den;
  canonicalize();
}

DyadicMatrix DyadicMatrix::identity(std::size_t n) {
  IntVector v(n * n, 0);
  for (std::size_t i = 0; i < n; ++i) v[i * n + i] = 1;
  return DyadicMatrix(n, n, std::move(v));
}

DyadicMatrix DyadicMatrix::zeros(std::size_t rows, std::size_t cols) {
  return DyadicMatrix(rows, cols, IntVector(rows * cols, 0));
}

DyadicMatrix DyadicMatrix::diagonal(std::span<const Dyadic> diag) {
  const std::size_t n = diag.size();
  DyadicVector d = DyadicVector::from_dyadics(diag);
  IntVector v(n * n, 0);
  for (std::size_t i = 0; i < n; ++i) v[i * n + i] = d.numerators()[i];
  return DyadicMatrix(n, n, std::move(v), d.log2_den());
}

DyadicMatrix DyadicMatrix::from_columns(std::span<const DyadicVector> columns) {
  if (columns.empty()) return {};
  const std::size_t rows = columns.front().size();
  int s = 0;
  for (const auto& c : columns) {
    if (c.size() != rows) throw std::invalid_argument("columns of differing length");
    s = std::max(s, c.log2_den());
  }
  IntVector v(rows * columns.size());
  for (std::size_t j = 0; j < columns.size(); ++j) {
    IntVector col = columns[j].at_scale(s);
    for (std::size_t i = 0; i < rows; ++i) v[i * columns.size() + j] = col[i];
  }
  return DyadicMatrix(rows, columns.size(), std::move(v), s);
}

DyadicMatrix DyadicMatrix::block_diagonal(const DyadicMatrix& block, std::size_t copies) {
  const std::size_t r = block.rows_ * copies, c = block.cols_ * copies;
  IntVector v(r * c, 0);
  for (std::size_t b = 0; b < copies; ++b)
    for (std::size_t i = 0; i < block.rows_; ++i)
      for (std::size_t j = 0; j < block.cols_; ++j)
        v[(b * block.rows_ + i) * c + b * block.cols_ + j] = block.numerator(i, j);
  return DyadicMatrix(r, c, std::move(v), block.log2_den_);
}

void DyadicMatrix::canonicalize() {
  while (log2_den_ > 0 && std::all_of(num_.begin(), num_.end(), [](std::int64_t v) { return (v & 1) == 0; })) {
    for (auto& v : num_) v /= 2;
    --log2_den_;
  }
}

DyadicVector DyadicMatrix::column(std::size_t c) const {
  IntVector v(rows_);
  for (std::size_t i = 0; i < rows_; ++i) v[i] = numerator(i, c);
  return DyadicVector(std::move(v), log2_den_);
}

DyadicMatrix DyadicMatrix::transpose() const {
  IntVector v(num_.size());
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) v[j * rows_ + i] = numerator(i, j);
  return DyadicMatrix(cols_, rows_, std::move(v), log2_den_);
}

DyadicMatrix DyadicMatrix::scale_columns(std::span<const Dyadic> d) const {
  if (d.size() != cols_) throw std::invalid_argument("diagonal length does not match column count");
  return *this * diagonal(d);
}

DyadicMatrix operator*(const DyadicMatrix& a, const DyadicMatrix& b) {
  if (a.cols_ != b.rows_) throw std::invalid_argument("matrix product dimension mismatch");
  IntVector v(a.rows_ * b.cols_, 0);
  for (std::size_t i = 0; i < a.rows_; ++i)
    for (std::size_t k = 0; k < a.cols_; ++k) {
      const std::int64_t aik = a.numerator(i, k);
      if (aik == 0) continue;
      for (std::size_t j = 0; j < b.cols_; ++j) {
        auto& dst = v[i * b.cols_ + j];
        dst = checked::add(dst, checked::mul(aik, b.numerator(k, j)));
      }
    }
  return DyadicMatrix(a.rows_, b.cols_, std::move(v), a.log2_den_ + b.log2_den_);
}

Dyadic det_exact(const DyadicMatrix& m) {
  if (!m.is_square()) throw std::invalid_argument("determinant of a non-square matrix");
  const std::size_t n = m.rows();
  if (n == 0) return Dyadic(1);
  // Integer elimination by Euclidean row steps; entries stay small for the
  // structured bases used here, and every step is overflow-checked.
  IntVector a = m.numerators();
  auto at = [&](std::size_t r, std::size_t c) -> std::int64_t& { return a[r * n + c]; };
  auto swap_rows = [&](std::size_t r, std::size_t s) {
    for (std::size_t j = 0; j < n; ++j) std::swap(at(r, j), at(s, j));
  };
  std::int64_t det = 1;
  for (std::size_t k = 0; k < n; ++k) {
    for (;;) {
      std::size_t p = n;
      for (std::size_t i = k; i < n; ++i)
        if (at(i, k) != 0 && (p == n || std::llabs(at(i, k)) < std::llabs(at(p, k)))) p = i;
      if (p == n) return Dyadic(0);
      if (p != k) {
        swap_rows(p, k);
        det = -det;
      }
      bool done = true;
      for (std::size_t i = k + 1; i < n; ++i) {
        if (at(i, k) == 0) continue;
        const std::int64_t q = at(i, k) / at(k, k);
        for (std::size_t j = k; j < n; ++j) at(i, j) = checked::sub(at(i, j), checked::mul(q, at(k, j)));
        if (at(i, k) != 0) done = false;
      }
      if (done) break;
    }
    det = checked::mul(det, at(k, k));
  }
  return Dyadic(det, static_cast<int>(n) * m.log2_den());
}

DyadicMatrix inverse_exact(const DyadicMatrix& m) {
  if (!m.is_square()) throw std::invalid_argument("inverse of a non-square matrix");
  const std::size_t n = m.rows();
  std::vector<Rational> a(n * n), inv(n * n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      a[i * n + j] = Rational(m.numerator(i, j));
      inv[i * n + j] = Rational(i == j ? 1 : 0);
    }
  for (std::size_t k = 0; k < n; ++k) {
    std::size_t p = k;
    while (p < n && a[p * n + k].is_zero()) ++p;
    if (p == n) throw std::domain_error("matrix is singular");
    if (p != k)
      for (std::size_t j = 0; j < n; ++j) {
        std::swap(a[k * n + j], a[p * n + j]);
        std::swap(inv[k * n + j], inv[p * n + j]);
      }
    const Rational pivot = a[k * n + k];
    for (std::size_t j = 0; j < n; ++j) {
      a[k * n + j] = a[k * n + j] / pivot;
      inv[k * n + j] = inv[k * n + j] / pivot;
    }
    for (std::size_t i = 0; i < n; ++i) {
      if (i == k || a[i * n + k].is_zero()) continue;
      const Rational f = a[i * n + k];
      for (std::size_t j = 0; j < n; ++j) {
        a[i * n + j] = a[i * n + j] - f * a[k * n + j];
        inv[i * n + j] = inv[i * n + j] - f * inv[k * n + j];
      }
    }
  }
  // inverse(N / 2^s) = 2^s * inverse(N)
  int s = 0;
  for (const auto& r : inv) {
    if (!is_power_of_two(r.den())) throw std::domain_error("inverse has a non-dyadic entry " + r.to_string());
    s = std::max(s, exact_log2(r.den()));
  }
  IntVector v(n * n);
  for (std::size_t i = 0; i < n * n; ++i) v[i] = checked::mul(inv[i].num(), (std::int64_t{1} << s) / inv[i].den());
  return DyadicMatrix(n, n, std::move(v), s - m.log2_den());
}

bool is_unimodular(const DyadicMatrix& m) {
  if (!m.is_square()) throw std::invalid_argument("unimodularity of a non-square matrix");
  if (!m.is_integral()) return false;
  const Dyadic d = det_exact(m);
  return d == Dyadic(1) || d == Dyadic(-1);
}

DyadicVector matvec(const DyadicMatrix& m, const DyadicVector& v) {
  if (m.cols() != v.size()) throw std::invalid_argument("matrix-vector dimension mismatch");
  IntVector out(m.rows(), 0);
  const IntVector& x = v.numerators();
  for (std::size_t i = 0; i < m.rows(); ++i) {
    std::int64_t acc = 0;
    for (std::size_t j = 0; j < m.cols(); ++j)
      if (const std::int64_t e = m.numerator(i, j); e != 0) acc = checked::add(acc, checked::mul(e, x[j]));
    out[i] = acc;
  }
  return DyadicVector(std::move(out), m.log2_den() + v.log2_den());
}

DyadicVector matvec(const DyadicMatrix& m, const IntVector& v) { return matvec(m, DyadicVector(v)); }

IntVector mod_per_coordinate(const DyadicVector& v, std::span<const std::int64_t> moduli) {
  if (moduli.size() != v.size()) throw std::invalid_argument("modulus vector length mismatch");
  for (auto m : moduli)
    if (m < 1) throw std::invalid_argument("moduli must be positive");
  if (!v.is_integral()) throw std::domain_error("vector is not integral (point is outside the fine lattice)");
  IntVector out(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) out[i] = floor_mod(v.numerators()[i], moduli[i]);
  return out;
}

}  // namespace latticode
