#pragma once

#include <optional>
#include <vector>

#include "rbu3/rational.hpp"

namespace rbu3 {

/// Dense rational matrix, row-major.
class QDense {
 public:
  QDense() = default;
  QDense(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), a_(rows * cols) {}
  static QDense identity(std::size_t n);

  [[nodiscard]] std::size_t rows() const { return rows_; }
  [[nodiscard]] std::size_t cols() const { return cols_; }
  Rational& operator()(std::size_t r, std::size_t c) { return a_[r * cols_ + c]; }
  const Rational& operator()(std::size_t r, std::size_t c) const { return a_[r * cols_ + c]; }

  friend QDense operator*(const QDense& a, const QDense& b);
  friend bool operator==(const QDense&, const QDense&) = default;
  [[nodiscard]] QDense transpose() const;

 private:
  std::size_t rows_ = 0, cols_ = 0;
  std::vector<Rational> a_;
};

/// Row-reduces in place to reduced row echelon form; returns pivot columns.
std::vector<std::size_t> rref(QDense& m);
std::size_t rank(QDense m);
Rational determinant(QDense m);
/// nullopt if singular.
std::optional<QDense> inverse(const QDense& m);
/// Some x with A x = b, or nullopt.
std::optional<std::vector<Rational>> solve(const QDense& a, const std::vector<Rational>& b);

}  // namespace rbu3
