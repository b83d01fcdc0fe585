#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <cstddef>
#include <string>
#include <vector>

#include "contractible/graph.hpp"

namespace contractible {

using BigInt = boost::multiprecision::cpp_int;

class IntMatrix {
 public:
  IntMatrix() = default;
  IntMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}
  static IntMatrix identity(std::size_t n);

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  BigInt& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const BigInt& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  IntMatrix transpose() const;
  friend IntMatrix operator*(const IntMatrix& a, const IntMatrix& b);
  friend bool operator==(const IntMatrix&, const IntMatrix&) = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<BigInt> data_;
};

// Fraction-free (Bareiss) determinant of a square matrix.
BigInt determinant(const IntMatrix& m);

struct SmithForm {
  IntMatrix u;
  IntMatrix d;
  IntMatrix v;
  // Nonnegative diagonal of d, each entry dividing the next.
  std::vector<BigInt> diagonal() const;
};

// U·m·V = D with U, V unimodular and D diagonal in divisibility order. The
// result is checked before it is returned; a failed check throws
// std::logic_error.
SmithForm smith_normal_form(const IntMatrix& m);

// K_0 = coker(Aᵗ − I) = Z^rank ⊕ ⊕ Z/d_i,  K_1 = ker(Aᵗ − I) = Z^rank.
struct KInvariants {
  std::size_t k0_rank = 0;
  std::vector<BigInt> k0_torsion;  // each > 1, divisibility order
  std::size_t k1_rank = 0;

  friend bool operator==(const KInvariants&, const KInvariants&) = default;
};

std::string format_k0(const KInvariants& k);
std::string format_k1(const KInvariants& k);

// Vertex adjacency matrix, rows and columns in core order.
IntMatrix adjacency_matrix(const Graph& g);

// Errors: HAS_RAYS, NOT_ROW_FINITE, HAS_SINKS.
KInvariants k_theory(const Graph& g);

}  // namespace contractible
