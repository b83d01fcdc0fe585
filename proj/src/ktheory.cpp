#include "contractible/ktheory.hpp"

#include <stdexcept>
#include <utility>

#include "contractible/error.hpp"

namespace contractible {

IntMatrix IntMatrix::identity(std::size_t n) {
  IntMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
  return m;
}

IntMatrix IntMatrix::transpose() const {
  IntMatrix t(cols_, rows_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
  return t;
}

IntMatrix operator*(const IntMatrix& a, const IntMatrix& b) {
  if (a.cols() != b.rows()) throw std::invalid_argument("matrix shapes do not match");
  IntMatrix c(a.rows(), b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t k = 0; k < a.cols(); ++k) {
      if (a(i, k) == 0) continue;
      for (std::size_t j = 0; j < b.cols(); ++j) c(i, j) += a(i, k) * b(k, j);
    }
  return c;
}

BigInt determinant(const IntMatrix& input) {
  if (input.rows() != input.cols()) throw std::invalid_argument("determinant of a non-square matrix");
  const std::size_t n = input.rows();
  if (n == 0) return 1;
  IntMatrix m = input;
  BigInt sign = 1;
  BigInt prev = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (m(k, k) == 0) {
      std::size_t p = k + 1;
      while (p < n && m(p, k) == 0) ++p;
      if (p == n) return 0;
      for (std::size_t j = 0; j < n; ++j) std::swap(m(k, j), m(p, j));
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i)
      for (std::size_t j = k + 1; j < n; ++j) m(i, j) = (m(i, j) * m(k, k) - m(i, k) * m(k, j)) / prev;
    prev = m(k, k);
  }
  return sign * m(n - 1, n - 1);
}

namespace {

void swap_rows(IntMatrix& m, std::size_t a, std::size_t b) {
  for (std::size_t j = 0; j < m.cols(); ++j) std::swap(m(a, j), m(b, j));
}
void swap_cols(IntMatrix& m, std::size_t a, std::size_t b) {
  for (std::size_t i = 0; i < m.rows(); ++i) std::swap(m(i, a), m(i, b));
}
// row a -= q * row b
void sub_row(IntMatrix& m, std::size_t a, std::size_t b, const BigInt& q) {
  for (std::size_t j = 0; j < m.cols(); ++j) m(a, j) -= q * m(b, j);
}
void sub_col(IntMatrix& m, std::size_t a, std::size_t b, const BigInt& q) {
  for (std::size_t i = 0; i < m.rows(); ++i) m(i, a) -= q * m(i, b);
}

bool is_unit(const BigInt& x) { return x == 1 || x == -1; }

void verify(const IntMatrix& m, const SmithForm& s) {
  if (s.u * m * s.v != s.d) throw std::logic_error("Smith form check failed: U*M*V != D");
  if (!is_unit(determinant(s.u)) || !is_unit(determinant(s.v)))
    throw std::logic_error("Smith form check failed: transform not unimodular");
  for (std::size_t i = 0; i < s.d.rows(); ++i)
    for (std::size_t j = 0; j < s.d.cols(); ++j)
      if (i != j && s.d(i, j) != 0) throw std::logic_error("Smith form check failed: D not diagonal");
  auto diag = s.diagonal();
  for (std::size_t i = 0; i < diag.size(); ++i) {
    if (diag[i] < 0) throw std::logic_error("Smith form check failed: negative invariant factor");
    if (i + 1 < diag.size() && diag[i] == 0 && diag[i + 1] != 0)
      throw std::logic_error("Smith form check failed: zero before nonzero");
    if (i + 1 < diag.size() && diag[i] != 0 && diag[i + 1] % diag[i] != 0)
      throw std::logic_error("Smith form check failed: divisibility chain broken");
  }
}

}  // namespace

std::vector<BigInt> SmithForm::diagonal() const {
  std::vector<BigInt> out;
  for (std::size_t i = 0; i < std::min(d.rows(), d.cols()); ++i) out.push_back(d(i, i));
  return out;
}

SmithForm smith_normal_form(const IntMatrix& m) {
  SmithForm s{IntMatrix::identity(m.rows()), m, IntMatrix::identity(m.cols())};
  IntMatrix& d = s.d;
  const std::size_t r = m.rows(), c = m.cols();

  for (std::size_t t = 0; t < std::min(r, c); ++t) {
    // smallest nonzero entry of the remaining block becomes the pivot
    auto place_pivot = [&]() {
      std::optional<std::pair<std::size_t, std::size_t>> best;
      for (std::size_t i = t; i < r; ++i)
        for (std::size_t j = t; j < c; ++j)
          if (d(i, j) != 0 && (!best || abs(d(i, j)) < abs(d(best->first, best->second)))) best = {i, j};
      if (!best) return false;
      swap_rows(d, t, best->first);
      swap_rows(s.u, t, best->first);
      swap_cols(d, t, best->second);
      swap_cols(s.v, t, best->second);
      return true;
    };
    if (!place_pivot()) break;

    for (;;) {
      bool clean = true;
      for (std::size_t i = t + 1; i < r; ++i) {
        if (d(i, t) == 0) continue;
        BigInt q = d(i, t) / d(t, t);
        sub_row(d, i, t, q);
        sub_row(s.u, i, t, q);
        if (d(i, t) != 0) clean = false;
      }
      for (std::size_t j = t + 1; j < c; ++j) {
        if (d(t, j) == 0) continue;
        BigInt q = d(t, j) / d(t, t);
        sub_col(d, j, t, q);
        sub_col(s.v, j, t, q);
        if (d(t, j) != 0) clean = false;
      }
      if (!clean) {
        // a remainder is smaller than the pivot: bring it in and repeat
        std::size_t bi = t, bj = t;
        for (std::size_t i = t + 1; i < r; ++i)
          if (d(i, t) != 0 && abs(d(i, t)) < abs(d(bi, bj))) bi = i, bj = t;
        for (std::size_t j = t + 1; j < c; ++j)
          if (d(t, j) != 0 && abs(d(t, j)) < abs(d(bi, bj))) bi = t, bj = j;
        swap_rows(d, t, bi);
        swap_rows(s.u, t, bi);
        swap_cols(d, t, bj);
        swap_cols(s.v, t, bj);
        continue;
      }
      std::optional<std::size_t> bad;
      for (std::size_t i = t + 1; i < r && !bad; ++i)
        for (std::size_t j = t + 1; j < c; ++j)
          if (d(i, j) % d(t, t) != 0) {
            bad = i;
            break;
          }
      if (!bad) break;
      sub_row(d, t, *bad, BigInt(-1));
      sub_row(s.u, t, *bad, BigInt(-1));
    }
    if (d(t, t) < 0) {
      for (std::size_t j = 0; j < c; ++j) d(t, j) = -d(t, j);
      for (std::size_t j = 0; j < r; ++j) s.u(t, j) = -s.u(t, j);
    }
  }
  verify(m, s);
  return s;
}

IntMatrix adjacency_matrix(const Graph& g) {
  const std::size_t n = g.core_size();
  IntMatrix a(n, n);
  for (const auto& e : g.edges()) {
    if (e.mult.is_infinite()) throw Error(ErrorCode::NotRowFinite, "'" + g.vertices()[e.source] + "' emits ω edges");
    a(e.source, e.target) = BigInt(e.mult.count());
  }
  return a;
}

KInvariants k_theory(const Graph& g) {
  if (g.has_rays()) throw Error(ErrorCode::HasRays, "K-theory needs a finite graph; ray '" + g.rays().front().id + "' present");
  if (!g.is_row_finite()) throw Error(ErrorCode::NotRowFinite, "K-theory needs a row-finite graph");
  for (std::uint32_t u = 0; u < g.core_size(); ++u)
    if (g.out_degree(VertexRef::core(u)).is_zero())
      throw Error(ErrorCode::HasSinks, "K-theory needs a graph without sinks; '" + g.vertices()[u] + "' is a sink");

  IntMatrix m = adjacency_matrix(g).transpose();
  for (std::size_t i = 0; i < m.rows(); ++i) m(i, i) -= 1;
  KInvariants k;
  auto diag = smith_normal_form(m).diagonal();
  for (const auto& x : diag) {
    if (x == 0)
      ++k.k0_rank;
    else if (x > 1)
      k.k0_torsion.push_back(x);
  }
  k.k0_rank += m.rows() - diag.size();
  k.k1_rank = k.k0_rank;
  return k;
}

std::string format_k0(const KInvariants& k) {
  std::vector<std::string> parts;
  if (k.k0_rank == 1) parts.push_back("Z");
  if (k.k0_rank > 1) parts.push_back("Z^" + std::to_string(k.k0_rank));
  for (const auto& t : k.k0_torsion) parts.push_back("Z/" + t.str());
  if (parts.empty()) return "0";
  std::string out = parts.front();
  for (std::size_t i = 1; i < parts.size(); ++i) out += " (+) " + parts[i];
  return out;
}

std::string format_k1(const KInvariants& k) {
  if (k.k1_rank == 0) return "0";
  return k.k1_rank == 1 ? "Z" : "Z^" + std::to_string(k.k1_rank);
}

}  // namespace contractible
