#include "emk/linalg.hpp"

#include <algorithm>

namespace emk {

QMat qmat_identity(int n) {
  QMat m(static_cast<std::size_t>(n), QVec(static_cast<std::size_t>(n), Rational(0)));
  for (int i = 0; i < n; ++i) m[i][i] = 1;
  return m;
}

ZMat to_zmat_identity(int n) {
  ZMat m(static_cast<std::size_t>(n), ZVec(static_cast<std::size_t>(n), Int(0)));
  for (int i = 0; i < n; ++i) m[i][i] = 1;
  return m;
}

QMat to_qmat(const ZMat& a) {
  QMat r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = to_qvec(a[i]);
  return r;
}

QVec to_qvec(const ZVec& v) {
  QVec r(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) r[i] = Rational(v[i]);
  return r;
}

QMat transpose(const QMat& a) {
  if (a.empty()) return {};
  QMat r(a[0].size(), QVec(a.size()));
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < a[i].size(); ++j) r[j][i] = a[i][j];
  return r;
}

ZMat transpose_z(const ZMat& a) {
  if (a.empty()) return {};
  ZMat r(a[0].size(), ZVec(a.size()));
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < a[i].size(); ++j) r[j][i] = a[i][j];
  return r;
}

QMat mat_mul(const QMat& a, const QMat& b) {
  if (a.empty() || b.empty()) return {};
  std::size_t n = a.size(), k = b.size(), m = b[0].size();
  QMat r(n, QVec(m, Rational(0)));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t l = 0; l < k; ++l) {
      if (a[i][l] == 0) continue;
      for (std::size_t j = 0; j < m; ++j) r[i][j] += a[i][l] * b[l][j];
    }
  return r;
}

QVec mat_vec(const QMat& a, const QVec& x) {
  QVec r(a.size(), Rational(0));
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = dot(a[i], x);
  return r;
}

ZVec mat_vec_z(const ZMat& a, const ZVec& x) {
  ZVec r(a.size(), Int(0));
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = dot_z(a[i], x);
  return r;
}

Rational dot(const QVec& a, const QVec& b) {
  Rational s(0);
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

Rational dot_zq(const ZVec& a, const QVec& b) {
  Rational s(0);
  for (std::size_t i = 0; i < a.size(); ++i) s += Rational(a[i]) * b[i];
  return s;
}

Int dot_z(const ZVec& a, const ZVec& b) {
  Int s(0);
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

QVec qvec_add(const QVec& a, const QVec& b) {
  QVec r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] + b[i];
  return r;
}

QVec qvec_sub(const QVec& a, const QVec& b) {
  QVec r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] - b[i];
  return r;
}

QVec qvec_scale(const Rational& c, const QVec& a) {
  QVec r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = c * a[i];
  return r;
}

bool qvec_is_zero(const QVec& a) {
  for (const auto& x : a)
    if (x != 0) return false;
  return true;
}

bool zvec_is_zero(const ZVec& a) {
  for (const auto& x : a)
    if (x != 0) return false;
  return true;
}

// Row echelon reduction in place; returns pivot columns.
static std::vector<int> row_echelon(QMat& m) {
  std::vector<int> pivots;
  if (m.empty()) return pivots;
  std::size_t rows = m.size(), cols = m[0].size();
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols && r < rows; ++c) {
    std::size_t p = r;
    while (p < rows && m[p][c] == 0) ++p;
    if (p == rows) continue;
    std::swap(m[p], m[r]);
    Rational inv = Rational(1) / m[r][c];
    for (std::size_t j = c; j < cols; ++j) m[r][j] *= inv;
    for (std::size_t i = 0; i < rows; ++i) {
      if (i == r || m[i][c] == 0) continue;
      Rational f = m[i][c];
      for (std::size_t j = c; j < cols; ++j) m[i][j] -= f * m[r][j];
    }
    pivots.push_back(static_cast<int>(c));
    ++r;
  }
  return pivots;
}

int rank(const QMat& a) {
  QMat m = a;
  return static_cast<int>(row_echelon(m).size());
}

Rational det(const QMat& a) {
  std::size_t n = a.size();
  if (n == 0) return Rational(1);
  if (a[0].size() != n) throw Error("det: matrix not square");
  QMat m = a;
  Rational d(1);
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t p = c;
    while (p < n && m[p][c] == 0) ++p;
    if (p == n) return Rational(0);
    if (p != c) {
      std::swap(m[p], m[c]);
      d = -d;
    }
    d *= m[c][c];
    Rational inv = Rational(1) / m[c][c];
    for (std::size_t i = c + 1; i < n; ++i) {
      if (m[i][c] == 0) continue;
      Rational f = m[i][c] * inv;
      for (std::size_t j = c; j < n; ++j) m[i][j] -= f * m[c][j];
    }
  }
  return d;
}

std::optional<QVec> solve(const QMat& a, const QVec& b) {
  std::size_t rows = a.size();
  std::size_t cols = rows ? a[0].size() : 0;
  if (b.size() != rows) throw Error("solve: dimension mismatch");
  QMat m(rows, QVec(cols + 1));
  for (std::size_t i = 0; i < rows; ++i) {
    for (std::size_t j = 0; j < cols; ++j) m[i][j] = a[i][j];
    m[i][cols] = b[i];
  }
  std::vector<int> pivots = row_echelon(m);
  // Inconsistent when the augmented column carries a pivot.
  for (int p : pivots)
    if (p == static_cast<int>(cols)) return std::nullopt;
  QVec x(cols, Rational(0));
  for (std::size_t k = 0; k < pivots.size(); ++k) x[pivots[k]] = m[k][cols];
  return x;
}

QMat inverse(const QMat& a) {
  std::size_t n = a.size();
  if (n == 0) return {};
  if (a[0].size() != n) throw Error("inverse: matrix not square");
  QMat m(n, QVec(2 * n, Rational(0)));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) m[i][j] = a[i][j];
    m[i][n + i] = 1;
  }
  std::vector<int> pivots = row_echelon(m);
  if (pivots.size() != n || pivots.back() != static_cast<int>(n) - 1)
    throw Error("inverse: singular matrix");
  QMat r(n, QVec(n));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) r[i][j] = m[i][n + j];
  return r;
}

QMat kernel_basis(const QMat& a) {
  if (a.empty()) return {};
  std::size_t cols = a[0].size();
  QMat m = a;
  std::vector<int> pivots = row_echelon(m);
  std::vector<bool> is_pivot(cols, false);
  for (int p : pivots) is_pivot[p] = true;
  QMat basis;
  for (std::size_t f = 0; f < cols; ++f) {
    if (is_pivot[f]) continue;
    QVec v(cols, Rational(0));
    v[f] = 1;
    for (std::size_t k = 0; k < pivots.size(); ++k) v[pivots[k]] = -m[k][f];
    basis.push_back(std::move(v));
  }
  return basis;
}

Int floor_div(const Int& a, const Int& b) {
  Int q = a / b;
  if (q * b != a && ((a < 0) != (b < 0))) --q;
  return q;
}

Int gcd_vec(const ZVec& v) {
  Int g(0);
  for (const auto& x : v) g = boost::multiprecision::gcd(g, x);
  return g;
}

Int make_primitive(ZVec& v) {
  Int g = gcd_vec(v);
  if (g == 0) return g;
  for (auto& x : v) x /= g;
  return g;
}

std::pair<ZVec, Rational> canonical_direction(const QVec& v) {
  // Clear denominators, then divide out the content and fix the sign.
  Int den(1);
  for (const auto& x : v)
    den = boost::multiprecision::lcm(den, boost::multiprecision::denominator(x));
  ZVec w(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) {
    Rational scaled = v[i] * Rational(den);
    w[i] = boost::multiprecision::numerator(scaled);
  }
  Int g = make_primitive(w);
  if (g == 0) throw Error("canonical_direction: zero vector");
  Rational mult(g, den);
  for (const auto& x : w) {
    if (x == 0) continue;
    if (x < 0) {
      for (auto& y : w) y = -y;
      mult = -mult;
    }
    break;
  }
  return {w, mult};
}

std::pair<ZVec, Rational> canonical_direction_z(const ZVec& v) {
  return canonical_direction(to_qvec(v));
}

ColumnHNF hnf_columns(const ZMat& a) {
  ColumnHNF out;
  std::size_t m = a.size();
  std::size_t n = m ? a[0].size() : 0;
  out.h = a;
  out.u.assign(n, ZVec(n, Int(0)));
  for (std::size_t i = 0; i < n; ++i) out.u[i][i] = 1;

  auto col_sub = [&](std::size_t dst, std::size_t src, const Int& q) {
    if (q == 0) return;
    for (std::size_t i = 0; i < m; ++i) out.h[i][dst] -= q * out.h[i][src];
    for (std::size_t i = 0; i < n; ++i) out.u[i][dst] -= q * out.u[i][src];
  };
  auto col_swap = [&](std::size_t x, std::size_t y) {
    if (x == y) return;
    for (std::size_t i = 0; i < m; ++i) std::swap(out.h[i][x], out.h[i][y]);
    for (std::size_t i = 0; i < n; ++i) std::swap(out.u[i][x], out.u[i][y]);
  };
  auto col_negate = [&](std::size_t x) {
    for (std::size_t i = 0; i < m; ++i) out.h[i][x] = -out.h[i][x];
    for (std::size_t i = 0; i < n; ++i) out.u[i][x] = -out.u[i][x];
  };

  std::size_t c = 0;
  for (std::size_t r = 0; r < m && c < n; ++r) {
    // Euclidean reduction across columns c..n-1 in row r.
    for (;;) {
      std::size_t best = n;
      for (std::size_t j = c; j < n; ++j) {
        if (out.h[r][j] == 0) continue;
        if (best == n ||
            boost::multiprecision::abs(out.h[r][j]) < boost::multiprecision::abs(out.h[r][best]))
          best = j;
      }
      if (best == n) break;  // row has no pivot among the remaining columns
      col_swap(c, best);
      bool clean = true;
      for (std::size_t j = c + 1; j < n; ++j) {
        if (out.h[r][j] == 0) continue;
        Int q = out.h[r][j] / out.h[r][c];  // truncated; iterate until clean
        col_sub(j, c, q);
        if (out.h[r][j] != 0) clean = false;
      }
      if (clean) {
        if (out.h[r][c] < 0) col_negate(c);
        for (std::size_t j = 0; j < c; ++j) col_sub(j, c, floor_div(out.h[r][j], out.h[r][c]));
        out.pivot_rows.push_back(static_cast<int>(r));
        ++c;
        break;
      }
    }
  }
  out.rank = static_cast<int>(c);
  return out;
}

ZMat hnf_rows(const ZMat& a) {
  ZMat h = a;
  std::size_t m = h.size();
  std::size_t n = m ? h[0].size() : 0;
  std::size_t r = 0;
  for (std::size_t c = 0; c < n && r < m; ++c) {
    for (;;) {
      std::size_t best = m;
      for (std::size_t i = r; i < m; ++i) {
        if (h[i][c] == 0) continue;
        if (best == m ||
            boost::multiprecision::abs(h[i][c]) < boost::multiprecision::abs(h[best][c]))
          best = i;
      }
      if (best == m) break;
      std::swap(h[r], h[best]);
      bool clean = true;
      for (std::size_t i = r + 1; i < m; ++i) {
        if (h[i][c] == 0) continue;
        Int q = h[i][c] / h[r][c];
        for (std::size_t j = 0; j < n; ++j) h[i][j] -= q * h[r][j];
        if (h[i][c] != 0) clean = false;
      }
      if (clean) {
        if (h[r][c] < 0)
          for (auto& x : h[r]) x = -x;
        for (std::size_t i = 0; i < r; ++i) {
          Int q = floor_div(h[i][c], h[r][c]);
          if (q == 0) continue;
          for (std::size_t j = 0; j < n; ++j) h[i][j] -= q * h[r][j];
        }
        ++r;
        break;
      }
    }
  }
  h.resize(r);
  return h;
}

ZMat integer_kernel(const ZMat& a) {
  if (a.empty()) return {};
  std::size_t n = a[0].size();
  ColumnHNF f = hnf_columns(a);
  ZMat basis;
  for (std::size_t j = static_cast<std::size_t>(f.rank); j < n; ++j) {
    ZVec v(n);
    for (std::size_t i = 0; i < n; ++i) v[i] = f.u[i][j];
    basis.push_back(std::move(v));
  }
  return hnf_rows(basis);
}

ZMat integer_kernel_q(const QMat& a) { return integer_kernel(scale_rows_to_int(a)); }

ZMat saturate_span(const ZMat& rows, int dim) {
  if (rows.empty()) return {};
  ZMat ortho = integer_kernel(rows);
  if (ortho.empty()) {
    // Full span: the saturation is the whole standard lattice.
    ZMat id(static_cast<std::size_t>(dim), ZVec(static_cast<std::size_t>(dim), Int(0)));
    for (int i = 0; i < dim; ++i) id[i][i] = 1;
    return id;
  }
  return integer_kernel(ortho);
}

std::optional<ZVec> solve_integer(const ZMat& a, const ZVec& b) {
  std::size_t m = a.size();
  std::size_t n = m ? a[0].size() : 0;
  if (b.size() != m) throw Error("solve_integer: dimension mismatch");
  if (n == 0) return zvec_is_zero(b) ? std::optional<ZVec>(ZVec{}) : std::nullopt;
  ColumnHNF f = hnf_columns(a);
  // Forward substitution through the pivot structure of h.
  ZVec y(n, Int(0));
  ZVec res = b;
  for (int k = 0; k < f.rank; ++k) {
    int r = f.pivot_rows[static_cast<std::size_t>(k)];
    Int p = f.h[static_cast<std::size_t>(r)][static_cast<std::size_t>(k)];
    if (res[static_cast<std::size_t>(r)] % p != 0) return std::nullopt;
    Int q = res[static_cast<std::size_t>(r)] / p;
    y[static_cast<std::size_t>(k)] = q;
    for (std::size_t i = 0; i < m; ++i) res[i] -= q * f.h[i][static_cast<std::size_t>(k)];
  }
  if (!zvec_is_zero(res)) return std::nullopt;
  ZVec x(n, Int(0));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) x[i] += f.u[i][j] * y[j];
  return x;
}

Int lattice_index(const ZMat& a) {
  Rational d = det(to_qmat(a));
  Int num = boost::multiprecision::numerator(d);
  return boost::multiprecision::abs(num);
}

ZMat scale_rows_to_int(const QMat& a) {
  ZMat r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    Int den(1);
    for (const auto& x : a[i])
      den = boost::multiprecision::lcm(den, boost::multiprecision::denominator(x));
    ZVec row(a[i].size());
    for (std::size_t j = 0; j < a[i].size(); ++j)
      row[j] = boost::multiprecision::numerator(a[i][j] * Rational(den));
    r[i] = std::move(row);
  }
  return r;
}

bool zmat_equal(const ZMat& a, const ZMat& b) {
  if (a.size() != b.size()) return false;
  for (std::size_t i = 0; i < a.size(); ++i)
    if (a[i] != b[i]) return false;
  return true;
}

}  // namespace emk
