#pragma once

#include <cstddef>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "gsv/errors.hpp"
#include "gsv/localized.hpp"
#include "gsv/polynomial.hpp"
#include "gsv/rational.hpp"

namespace gsv {

// Dense row-major matrix over an exact ring. Indices are 0-based.
template <class T>
class Matrix {
public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols, const T& fill = T{})
      : rows_(rows), cols_(cols), data_(rows * cols, fill) {}
  Matrix(std::initializer_list<std::initializer_list<T>> init) {
    rows_ = init.size();
    cols_ = rows_ ? init.begin()->size() : 0;
    for (const auto& row : init) {
      if (row.size() != cols_) throw ShapeMismatch("ragged matrix initializer");
      data_.insert(data_.end(), row.begin(), row.end());
    }
  }

  static Matrix identity(std::size_t n) {
    Matrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = T(1);
    return m;
  }

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  bool isSquare() const noexcept { return rows_ == cols_; }

  T& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const T& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  bool operator==(const Matrix&) const = default;

  Matrix transpose() const {
    Matrix t(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
    return t;
  }

  Matrix operator*(const Matrix& o) const {
    if (cols_ != o.rows_) throw ShapeMismatch("matrix product: inner dimensions differ");
    Matrix out(rows_, o.cols_);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t k = 0; k < cols_; ++k) {
        const T& a = (*this)(i, k);
        if (a == T{}) continue;
        for (std::size_t j = 0; j < o.cols_; ++j) out(i, j) += a * o(k, j);
      }
    return out;
  }

  Matrix operator+(const Matrix& o) const { return zipWith(o, [](const T& a, const T& b) { return a + b; }); }
  Matrix operator-(const Matrix& o) const { return zipWith(o, [](const T& a, const T& b) { return a - b; }); }

  Matrix submatrix(const std::vector<std::size_t>& rowIdx, const std::vector<std::size_t>& colIdx) const {
    Matrix out(rowIdx.size(), colIdx.size());
    for (std::size_t i = 0; i < rowIdx.size(); ++i)
      for (std::size_t j = 0; j < colIdx.size(); ++j) out(i, j) = (*this)(rowIdx[i], colIdx[j]);
    return out;
  }

  bool isZero() const {
    for (const auto& x : data_)
      if (!(x == T{})) return false;
    return true;
  }

  void swapRows(std::size_t a, std::size_t b) {
    for (std::size_t j = 0; j < cols_; ++j) std::swap((*this)(a, j), (*this)(b, j));
  }

  template <class F>
  auto map(F f) const -> Matrix<decltype(f(std::declval<const T&>()))> {
    Matrix<decltype(f(std::declval<const T&>()))> out(rows_, cols_);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j) out(i, j) = f((*this)(i, j));
    return out;
  }

private:
  template <class F>
  Matrix zipWith(const Matrix& o, F f) const {
    if (rows_ != o.rows_ || cols_ != o.cols_) throw ShapeMismatch("matrix shapes differ");
    Matrix out(rows_, cols_);
    for (std::size_t k = 0; k < data_.size(); ++k) out.data_[k] = f(data_[k], o.data_[k]);
    return out;
  }

  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<T> data_;
};

using RationalMatrix = Matrix<Rational>;
using PolyMatrix = Matrix<Polynomial>;
using SymMatrix = Matrix<LocalizedElement>;

// Exact division in an integral domain, used by Bareiss.
inline Rational exactDivide(const Rational& a, const Rational& b) { return a / b; }
inline Polynomial exactDivide(const Polynomial& a, const Polynomial& b) {
  if (b == Polynomial(1)) return a;
  return a.exactDiv(b);
}

inline bool isZeroEntry(const Rational& a) { return a == 0; }
inline bool isZeroEntry(const Polynomial& a) { return a.isZero(); }
inline bool isZeroEntry(const LocalizedElement& a) { return a.isZero(); }

// Laplace expansion along the first row, skipping zero entries.
template <class T>
T detCofactor(const Matrix<T>& m) {
  if (!m.isSquare()) throw ShapeMismatch("determinant of a non-square matrix");
  const std::size_t n = m.rows();
  if (n == 0) return T(1);
  if (n == 1) return m(0, 0);
  if (n == 2) return m(0, 0) * m(1, 1) - m(0, 1) * m(1, 0);
  T sum{};
  std::vector<std::size_t> rowIdx, colIdx;
  for (std::size_t i = 1; i < n; ++i) rowIdx.push_back(i);
  for (std::size_t j = 0; j < n; ++j) {
    if (isZeroEntry(m(0, j))) continue;
    colIdx.clear();
    for (std::size_t k = 0; k < n; ++k)
      if (k != j) colIdx.push_back(k);
    T term = m(0, j) * detCofactor(m.submatrix(rowIdx, colIdx));
    if (j % 2 == 0) sum += term;
    else sum -= term;
  }
  return sum;
}

// Fraction-free Gaussian elimination. Pivot: first nonzero entry at or below
// the diagonal in the current column; every division is exact.
template <class T>
T detBareiss(Matrix<T> m) {
  if (!m.isSquare()) throw ShapeMismatch("determinant of a non-square matrix");
  const std::size_t n = m.rows();
  if (n == 0) return T(1);
  T prev(1);
  int sign = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    std::size_t p = k;
    while (p < n && isZeroEntry(m(p, k))) ++p;
    if (p == n) return T{};
    if (p != k) {
      m.swapRows(p, k);
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      const bool eliminate = !isZeroEntry(m(i, k));
      for (std::size_t j = k + 1; j < n; ++j) {
        T v = m(k, k) * m(i, j);
        if (eliminate && !isZeroEntry(m(k, j))) v -= m(i, k) * m(k, j);
        m(i, j) = exactDivide(v, prev);
      }
      m(i, k) = T{};
    }
    prev = m(k, k);
  }
  T d = m(n - 1, n - 1);
  return sign < 0 ? T(-d) : d;
}

inline Rational det(const RationalMatrix& m) { return detBareiss(m); }

// Cofactor expansion for n <= 4, Bareiss above.
inline Polynomial det(const PolyMatrix& m) {
  if (!m.isSquare()) throw ShapeMismatch("determinant of a non-square matrix");
  return m.rows() <= 4 ? detCofactor(m) : detBareiss(m);
}

// Repeatedly expands along rows holding a single nonzero entry. Returns the
// accumulated factor and leaves the remaining square block in m.
template <class T>
T deflateSingletonRows(Matrix<T>& m) {
  T factor(1);
  bool progress = true;
  while (progress && m.rows() > 0) {
    progress = false;
    for (std::size_t i = 0; i < m.rows(); ++i) {
      std::size_t nonzero = 0, col = 0;
      for (std::size_t j = 0; j < m.cols() && nonzero < 2; ++j)
        if (!isZeroEntry(m(i, j))) {
          ++nonzero;
          col = j;
        }
      if (nonzero == 0) {
        m = Matrix<T>();
        return T{};
      }
      if (nonzero > 1) continue;
      factor *= (i + col) % 2 == 0 ? m(i, col) : T(-m(i, col));
      std::vector<std::size_t> rowIdx, colIdx;
      for (std::size_t k = 0; k < m.rows(); ++k) {
        if (k != i) rowIdx.push_back(k);
        if (k != col) colIdx.push_back(k);
      }
      m = m.submatrix(rowIdx, colIdx);
      progress = true;
      break;
    }
  }
  return factor;
}

namespace detail {

inline int inversionSign(const std::vector<std::size_t>& order) {
  std::size_t inv = 0;
  for (std::size_t a = 0; a < order.size(); ++a)
    for (std::size_t b = a + 1; b < order.size(); ++b)
      if (order[a] > order[b]) ++inv;
  return inv % 2 == 0 ? 1 : -1;
}

// Clears each row's formal denominator, takes the polynomial determinant and
// divides the product of the row denominators back out.
inline LocalizedElement detByClearing(const SymMatrix& m) {
  const std::size_t n = m.rows();
  PolyMatrix cleared(n, n);
  MinorExponents total;
  for (std::size_t i = 0; i < n; ++i) {
    MinorExponents rowDen;
    for (std::size_t j = 0; j < n; ++j)
      for (const auto& [I, k] : m(i, j).denominatorFactors()) rowDen[I] = std::max(rowDen[I], k);
    for (std::size_t j = 0; j < n; ++j) {
      const auto& e = m(i, j);
      if (e.isZero()) continue;
      MinorExponents lift;
      for (const auto& [I, k] : rowDen) {
        auto it = e.denominatorFactors().find(I);
        unsigned have = it == e.denominatorFactors().end() ? 0 : it->second;
        if (k > have) lift[I] = k - have;
      }
      cleared(i, j) = e.numerator() * expandMinorProduct(lift);
    }
    for (const auto& [I, k] : rowDen) total[I] += k;
  }
  return LocalizedElement(det(cleared), std::move(total)).reduced();
}

} // namespace detail

// Deflates singleton rows, splits the rest into connected row/column blocks
// and multiplies the block determinants.
inline LocalizedElement det(const SymMatrix& input) {
  if (!input.isSquare()) throw ShapeMismatch("determinant of a non-square matrix");
  SymMatrix m = input;
  LocalizedElement factor = deflateSingletonRows(m);
  if (factor.isZero()) return {};
  const std::size_t n = m.rows();
  if (n == 0) return factor.reduced();

  // Union-find on rows 0..n-1 and columns n..2n-1.
  std::vector<std::size_t> parent(2 * n);
  for (std::size_t k = 0; k < 2 * n; ++k) parent[k] = k;
  auto find = [&](std::size_t k) {
    while (parent[k] != k) k = parent[k] = parent[parent[k]];
    return k;
  };
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      if (!m(i, j).isZero()) parent[find(i)] = find(n + j);

  std::map<std::size_t, std::pair<std::vector<std::size_t>, std::vector<std::size_t>>> blocks;
  for (std::size_t i = 0; i < n; ++i) blocks[find(i)].first.push_back(i);
  for (std::size_t j = 0; j < n; ++j) blocks[find(n + j)].second.push_back(j);

  std::vector<std::size_t> rowOrder, colOrder;
  LocalizedElement result = factor;
  for (const auto& [root, rc] : blocks) {
    if (rc.first.size() != rc.second.size()) return {};
    rowOrder.insert(rowOrder.end(), rc.first.begin(), rc.first.end());
    colOrder.insert(colOrder.end(), rc.second.begin(), rc.second.end());
    result = (result * detail::detByClearing(m.submatrix(rc.first, rc.second))).reduced();
  }
  return detail::inversionSign(rowOrder) * detail::inversionSign(colOrder) == 1 ? result : -result;
}

// Determinant of the square submatrix of X on rows 0..|I|-1 and columns I.
template <class T>
T minor(const Matrix<T>& X, const IndexSet& I) {
  std::vector<std::size_t> rowIdx, colIdx;
  for (std::size_t i = 0; i < I.size(); ++i) rowIdx.push_back(i);
  for (int c : I) {
    if (c < 1 || static_cast<std::size_t>(c) > X.cols()) throw ShapeMismatch("minor column out of range");
    colIdx.push_back(static_cast<std::size_t>(c - 1));
  }
  if (rowIdx.size() > X.rows()) throw ShapeMismatch("minor larger than the matrix");
  auto sub = X.submatrix(rowIdx, colIdx);
  if constexpr (std::is_same_v<T, Polynomial>) return det(sub);
  else return detBareiss(sub);
}

template <class T>
Matrix<T> adjugate(const Matrix<T>& m) {
  if (!m.isSquare()) throw ShapeMismatch("adjugate of a non-square matrix");
  const std::size_t n = m.rows();
  Matrix<T> adj(n, n);
  if (n == 1) {
    adj(0, 0) = T(1);
    return adj;
  }
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      std::vector<std::size_t> rowIdx, colIdx;
      for (std::size_t k = 0; k < n; ++k) {
        if (k != j) rowIdx.push_back(k);
        if (k != i) colIdx.push_back(k);
      }
      T c = det(m.submatrix(rowIdx, colIdx));
      adj(i, j) = (i + j) % 2 == 0 ? c : T(-c);
    }
  return adj;
}

// M^{-1} B written as numerators / denominator with denominator = det(M).
struct AdjugateSolution {
  PolyMatrix numerators; // adj(M) * B
  Polynomial denominator;

  // M * numerators == denominator * B, as an exact polynomial identity.
  bool verify(const PolyMatrix& M, const PolyMatrix& B) const {
    PolyMatrix lhs = M * numerators;
    for (std::size_t i = 0; i < B.rows(); ++i)
      for (std::size_t j = 0; j < B.cols(); ++j)
        if (!(lhs(i, j) == denominator * B(i, j))) return false;
    return true;
  }
};

inline AdjugateSolution adjugateSolve(const PolyMatrix& M, const PolyMatrix& B) {
  if (!M.isSquare() || M.rows() != B.rows()) throw ShapeMismatch("adjugateSolve: shapes do not conform");
  Polynomial d = det(M);
  if (d.isZero()) throw SingularSpecialization("adjugateSolve: determinant is the zero polynomial");
  return {adjugate(M) * B, std::move(d)};
}

namespace detail {

// Scales every row by the lcm of its denominators so entries are integers.
inline RationalMatrix integerRows(RationalMatrix m) {
  for (std::size_t i = 0; i < m.rows(); ++i) {
    Integer l = 1;
    for (std::size_t j = 0; j < m.cols(); ++j) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), m(i, j).get_den_mpz_t());
    for (std::size_t j = 0; j < m.cols(); ++j) m(i, j) *= l;
  }
  return m;
}

} // namespace detail

// Fraction-free row echelon on the integer-scaled matrix; every intermediate
// entry is a minor of the input, so all divisions are exact integer ones.
inline std::size_t rank(const RationalMatrix& input) {
  RationalMatrix m = detail::integerRows(input);
  std::size_t r = 0;
  Rational prev = 1;
  for (std::size_t c = 0; c < m.cols() && r < m.rows(); ++c) {
    std::size_t p = r;
    while (p < m.rows() && m(p, c) == 0) ++p;
    if (p == m.rows()) continue;
    m.swapRows(p, r);
    for (std::size_t i = r + 1; i < m.rows(); ++i) {
      for (std::size_t j = c + 1; j < m.cols(); ++j) m(i, j) = (m(r, c) * m(i, j) - m(i, c) * m(r, j)) / prev;
      m(i, c) = 0;
    }
    prev = m(r, c);
    ++r;
  }
  return r;
}

// Reduced row echelon form over Q; returns pivot columns.
inline std::vector<std::size_t> rref(RationalMatrix& m) {
  std::vector<std::size_t> pivots;
  std::size_t r = 0;
  for (std::size_t c = 0; c < m.cols() && r < m.rows(); ++c) {
    std::size_t p = r;
    while (p < m.rows() && m(p, c) == 0) ++p;
    if (p == m.rows()) continue;
    m.swapRows(p, r);
    Rational inv = 1 / m(r, c);
    for (std::size_t j = c; j < m.cols(); ++j) m(r, j) *= inv;
    for (std::size_t i = 0; i < m.rows(); ++i) {
      if (i == r || m(i, c) == 0) continue;
      Rational f = m(i, c);
      for (std::size_t j = c; j < m.cols(); ++j) m(i, j) -= f * m(r, j);
    }
    pivots.push_back(c);
    ++r;
  }
  return pivots;
}

// Basis of the right null space. Each vector is a primitive integer vector
// whose first nonzero entry is positive.
inline std::vector<std::vector<Rational>> kernelBasis(const RationalMatrix& input) {
  RationalMatrix m = input;
  auto pivots = rref(m);
  std::vector<bool> isPivot(m.cols(), false);
  for (auto c : pivots) isPivot[c] = true;
  std::vector<std::vector<Rational>> basis;
  for (std::size_t f = 0; f < m.cols(); ++f) {
    if (isPivot[f]) continue;
    std::vector<Rational> v(m.cols(), Rational(0));
    v[f] = 1;
    for (std::size_t k = 0; k < pivots.size(); ++k) v[pivots[k]] = -m(k, f);
    Integer l = 1, g = 0;
    for (const auto& x : v) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), x.get_den_mpz_t());
    for (auto& x : v) {
      x *= l;
      mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), x.get_num_mpz_t());
    }
    for (auto& x : v) x /= g;
    for (const auto& x : v) {
      if (x == 0) continue;
      if (x < 0)
        for (auto& y : v) y = -y;
      break;
    }
    basis.push_back(std::move(v));
  }
  return basis;
}

inline RationalMatrix inverse(const RationalMatrix& m) {
  if (!m.isSquare()) throw ShapeMismatch("inverse of a non-square matrix");
  const std::size_t n = m.rows();
  RationalMatrix aug(n, 2 * n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) aug(i, j) = m(i, j);
    aug(i, n + i) = 1;
  }
  auto pivots = rref(aug);
  if (pivots.size() < n || pivots[n - 1] != n - 1) throw SingularSpecialization("matrix is singular");
  RationalMatrix inv(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) inv(i, j) = aug(i, n + j);
  return inv;
}

// Specialises a polynomial matrix at a point.
inline RationalMatrix evaluate(const PolyMatrix& m, const Assignment& at) {
  return m.map([&](const Polynomial& p) { return p.evaluate(at); });
}

inline RationalMatrix evaluate(const SymMatrix& m, const Assignment& at) {
  std::map<IndexSet, Rational> minors;
  return m.map([&](const LocalizedElement& e) { return e.evaluate(at, minors); });
}

} // namespace gsv
