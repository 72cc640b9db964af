#include "lsq/linalg.hpp"

#include <algorithm>

namespace lsq {

QMat q_from_z(const ZMat& a) {
  QMat out(a.size());
  for (size_t i = 0; i < a.size(); ++i)
    out[i].assign(a[i].begin(), a[i].end());
  return out;
}

QMat q_identity(size_t n) {
  QMat out(n, QVec(n, 0));
  for (size_t i = 0; i < n; ++i) out[i][i] = 1;
  return out;
}

ZMat z_identity(size_t n) {
  ZMat out(n, ZVec(n, 0));
  for (size_t i = 0; i < n; ++i) out[i][i] = 1;
  return out;
}

QMat q_mul(const QMat& a, const QMat& b) {
  size_t m = a.size(), k = b.size(), n = b.empty() ? 0 : b[0].size();
  QMat out(m, QVec(n, 0));
  for (size_t i = 0; i < m; ++i)
    for (size_t j = 0; j < k; ++j) {
      if (a[i][j] == 0) continue;
      for (size_t l = 0; l < n; ++l) out[i][l] += a[i][j] * b[j][l];
    }
  return out;
}

QVec q_apply(const QMat& a, const QVec& x) {
  QVec out(a.size(), 0);
  for (size_t i = 0; i < a.size(); ++i)
    for (size_t j = 0; j < x.size(); ++j)
      if (a[i][j] != 0) out[i] += a[i][j] * x[j];
  return out;
}

ZVec z_apply(const ZMat& a, const ZVec& x) {
  ZVec out(a.size(), 0);
  for (size_t i = 0; i < a.size(); ++i)
    for (size_t j = 0; j < x.size(); ++j)
      if (a[i][j] != 0) out[i] += a[i][j] * x[j];
  return out;
}

std::vector<size_t> q_rref(QMat& a) {
  std::vector<size_t> pivots;
  if (a.empty()) return pivots;
  size_t rows = a.size(), cols = a[0].size(), r = 0;
  for (size_t c = 0; c < cols && r < rows; ++c) {
    size_t sel = r;
    while (sel < rows && a[sel][c] == 0) ++sel;
    if (sel == rows) continue;
    std::swap(a[sel], a[r]);
    mpq_class inv = 1 / a[r][c];
    for (size_t j = c; j < cols; ++j) a[r][j] *= inv;
    for (size_t i = 0; i < rows; ++i) {
      if (i == r || a[i][c] == 0) continue;
      mpq_class f = a[i][c];
      for (size_t j = c; j < cols; ++j) a[i][j] -= f * a[r][j];
    }
    pivots.push_back(c);
    ++r;
  }
  return pivots;
}

size_t q_rank(QMat a) { return q_rref(a).size(); }

std::vector<QVec> q_kernel(const QMat& a) {
  if (a.empty()) return {};
  QMat m = a;
  auto pivots = q_rref(m);
  size_t cols = a[0].size();
  std::vector<bool> is_pivot(cols, false);
  for (size_t c : pivots) is_pivot[c] = true;
  std::vector<QVec> basis;
  for (size_t c = 0; c < cols; ++c) {
    if (is_pivot[c]) continue;
    QVec v(cols, 0);
    v[c] = 1;
    for (size_t r = 0; r < pivots.size(); ++r) v[pivots[r]] = -m[r][c];
    basis.push_back(std::move(v));
  }
  return basis;
}

std::optional<QVec> q_solve(const QMat& a, const QVec& b) {
  size_t rows = a.size(), cols = a.empty() ? 0 : a[0].size();
  QMat m = a;
  for (size_t i = 0; i < rows; ++i) m[i].push_back(b[i]);
  auto pivots = q_rref(m);
  if (!pivots.empty() && pivots.back() == cols) return std::nullopt;
  QVec x(cols, 0);
  for (size_t r = 0; r < pivots.size(); ++r) x[pivots[r]] = m[r][cols];
  return x;
}

ZMat z_hnf(ZMat a) {
  if (a.empty()) return a;
  size_t rows = a.size(), cols = a[0].size(), r = 0;
  for (size_t c = 0; c < cols && r < rows; ++c) {
    // Euclidean elimination below row r in column c.
    while (true) {
      size_t nz = rows;
      mpz_class best;
      for (size_t i = r; i < rows; ++i) {
        if (a[i][c] == 0) continue;
        if (nz == rows || abs(a[i][c]) < best) {
          nz = i;
          best = abs(a[i][c]);
        }
      }
      if (nz == rows) break;
      std::swap(a[nz], a[r]);
      bool clean = true;
      for (size_t i = r + 1; i < rows; ++i) {
        if (a[i][c] == 0) continue;
        mpz_class q = a[i][c] / a[r][c];  // truncated division is fine here
        if (q != 0)
          for (size_t j = 0; j < cols; ++j) a[i][j] -= q * a[r][j];
        if (a[i][c] != 0) clean = false;
      }
      if (clean) break;
    }
    if (a[r][c] == 0) continue;
    if (a[r][c] < 0)
      for (size_t j = 0; j < cols; ++j) a[r][j] = -a[r][j];
    for (size_t i = 0; i < r; ++i) {
      mpz_class q;
      mpz_fdiv_q(q.get_mpz_t(), a[i][c].get_mpz_t(), a[r][c].get_mpz_t());
      if (q != 0)
        for (size_t j = 0; j < cols; ++j) a[i][j] -= q * a[r][j];
    }
    ++r;
  }
  a.resize(r);
  return a;
}

std::vector<ZVec> z_kernel(const ZMat& a) {
  // Column HNF with transform: find unimodular U with A * U lower-staircase;
  // columns of U mapping to zero give a saturated kernel basis. Implemented
  // as row HNF on the transpose, tracking the transform.
  size_t rows = a.size(), cols = a.empty() ? 0 : a[0].size();
  ZMat t(cols, ZVec(rows));
  for (size_t i = 0; i < rows; ++i)
    for (size_t j = 0; j < cols; ++j) t[j][i] = a[i][j];
  ZMat u = z_identity(cols);
  size_t r = 0;
  for (size_t c = 0; c < rows && r < cols; ++c) {
    while (true) {
      size_t nz = cols;
      mpz_class best;
      for (size_t i = r; i < cols; ++i) {
        if (t[i][c] == 0) continue;
        if (nz == cols || abs(t[i][c]) < best) {
          nz = i;
          best = abs(t[i][c]);
        }
      }
      if (nz == cols) break;
      std::swap(t[nz], t[r]);
      std::swap(u[nz], u[r]);
      bool clean = true;
      for (size_t i = r + 1; i < cols; ++i) {
        if (t[i][c] == 0) continue;
        mpz_class q = t[i][c] / t[r][c];
        if (q != 0) {
          for (size_t j = 0; j < rows; ++j) t[i][j] -= q * t[r][j];
          for (size_t j = 0; j < cols; ++j) u[i][j] -= q * u[r][j];
        }
        if (t[i][c] != 0) clean = false;
      }
      if (clean) break;
    }
    if (t[r][c] != 0) ++r;
  }
  std::vector<ZVec> out(u.begin() + r, u.end());
  return out;
}

SmithCokernel smith_cokernel(size_t n, const ZMat& relation_cols) {
  // Diagonalize R (n x m, columns are relations) as U R V = D. Only U and
  // its inverse are tracked; V never matters for the cokernel.
  size_t m = relation_cols.empty() ? 0 : relation_cols[0].size();
  ZMat r = relation_cols;
  if (r.empty()) r.assign(n, ZVec(0));
  ZMat u = z_identity(n), uinv = z_identity(n);

  auto row_swap = [&](size_t i, size_t j) {
    std::swap(r[i], r[j]);
    std::swap(u[i], u[j]);
    for (size_t k = 0; k < n; ++k) std::swap(uinv[k][i], uinv[k][j]);
  };
  auto row_add = [&](size_t dst, size_t src, const mpz_class& f) {
    // row_dst += f * row_src; inverse acts on uinv columns.
    for (size_t k = 0; k < m; ++k) r[dst][k] += f * r[src][k];
    for (size_t k = 0; k < n; ++k) u[dst][k] += f * u[src][k];
    for (size_t k = 0; k < n; ++k) uinv[k][src] -= f * uinv[k][dst];
  };
  auto row_neg = [&](size_t i) {
    for (size_t k = 0; k < m; ++k) r[i][k] = -r[i][k];
    for (size_t k = 0; k < n; ++k) u[i][k] = -u[i][k];
    for (size_t k = 0; k < n; ++k) uinv[k][i] = -uinv[k][i];
  };
  auto col_swap = [&](size_t i, size_t j) {
    for (size_t k = 0; k < n; ++k) std::swap(r[k][i], r[k][j]);
  };
  auto col_add = [&](size_t dst, size_t src, const mpz_class& f) {
    for (size_t k = 0; k < n; ++k) r[k][dst] += f * r[k][src];
  };

  size_t t = std::min(n, m), rank = 0;
  for (size_t d = 0; d < t; ++d) {
    // Find a pivot of minimal absolute value in the remaining block.
    size_t pi = n, pj = m;
    mpz_class best;
    for (size_t i = d; i < n; ++i)
      for (size_t j = d; j < m; ++j) {
        if (r[i][j] == 0) continue;
        if (pi == n || abs(r[i][j]) < best) {
          pi = i;
          pj = j;
          best = abs(r[i][j]);
        }
      }
    if (pi == n) break;
    if (pi != d) row_swap(pi, d);
    if (pj != d) col_swap(pj, d);
    bool dirty = true;
    while (dirty) {
      dirty = false;
      for (size_t i = d + 1; i < n; ++i) {
        if (r[i][d] == 0) continue;
        mpz_class q = r[i][d] / r[d][d];
        row_add(i, d, -q);
        if (r[i][d] != 0) {
          row_swap(i, d);
          dirty = true;
        }
      }
      for (size_t j = d + 1; j < m; ++j) {
        if (r[d][j] == 0) continue;
        mpz_class q = r[d][j] / r[d][d];
        col_add(j, d, -q);
        if (r[d][j] != 0) {
          col_swap(j, d);
          dirty = true;
        }
      }
    }
    if (r[d][d] < 0) row_neg(d);
    ++rank;
  }

  SmithCokernel out;
  out.u = std::move(u);
  out.uinv = std::move(uinv);
  for (size_t i = 0; i < n; ++i) {
    if (i < rank) {
      if (r[i][i] != 1 && r[i][i] != -1) out.torsion.push_back(abs(r[i][i]));
    } else {
      out.free_rows.push_back(i);
    }
  }
  return out;
}

mpz_class lattice_index(const ZMat& big, const ZMat& small) {
  return lattice_index_q(q_from_z(big), q_from_z(small));
}

mpz_class lattice_index_q(const QMat& big, const QMat& small) {
  if (big.size() != small.size())
    fail(ErrorCode::internal, "lattice_index: rank mismatch");
  size_t k = big.size();
  // Solve small = C * big row-wise, then index = |det C|.
  QMat bt(big[0].size(), QVec(k));
  for (size_t i = 0; i < k; ++i)
    for (size_t j = 0; j < big[0].size(); ++j) bt[j][i] = big[i][j];
  QMat c(k, QVec(k));
  for (size_t i = 0; i < k; ++i) {
    auto sol = q_solve(bt, small[i]);
    if (!sol) fail(ErrorCode::internal, "lattice_index: not contained");
    c[i] = *sol;
  }
  // det by fraction-free-ish Gaussian elimination over Q.
  mpq_class det = 1;
  for (size_t col = 0; col < k; ++col) {
    size_t sel = col;
    while (sel < k && c[sel][col] == 0) ++sel;
    if (sel == k) return 0;
    if (sel != col) {
      std::swap(c[sel], c[col]);
      det = -det;
    }
    det *= c[col][col];
    mpq_class inv = 1 / c[col][col];
    for (size_t i = col + 1; i < k; ++i) {
      if (c[i][col] == 0) continue;
      mpq_class f = c[i][col] * inv;
      for (size_t j = col; j < k; ++j) c[i][j] -= f * c[col][j];
    }
  }
  det = abs(det);
  if (den(det) != 1)
    fail(ErrorCode::internal, "lattice_index: containment violated");
  return num(det);
}

ZVec primitive_scale(const QVec& v) {
  mpz_class l = 1;
  for (const auto& x : v) l = lcm(l, den(x));
  ZVec w(v.size());
  mpz_class g = 0;
  for (size_t i = 0; i < v.size(); ++i) {
    mpq_class s = v[i] * l;
    w[i] = num(s);
    g = gcd(g, w[i]);
  }
  if (g == 0) fail(ErrorCode::internal, "primitive_scale(0)");
  for (auto& x : w) x /= g;
  return w;
}

ZMat lll_reduce_gram(const QMat& gram0) {
  // Textbook LLL on a Gram matrix with exact rationals, delta = 3/4.
  size_t n = gram0.size();
  QMat g = gram0;
  ZMat h = z_identity(n);

  auto dot = [&](size_t i, size_t j) { return g[i][j]; };
  // Gram-Schmidt data recomputed on demand; n <= 4 so brute recompute is fine.
  QMat mu(n, QVec(n, 0));
  QVec bstar(n, 0);
  auto gs = [&]() {
    for (size_t i = 0; i < n; ++i) {
      bstar[i] = dot(i, i);
      for (size_t j = 0; j < i; ++j) {
        mpq_class t = dot(i, j);
        for (size_t k = 0; k < j; ++k) t -= mu[i][k] * mu[j][k] * bstar[k];
        mu[i][j] = (bstar[j] == 0) ? mpq_class(0) : t / bstar[j];
        bstar[i] -= mu[i][j] * mu[i][j] * bstar[j];
      }
    }
  };
  auto row_sub = [&](size_t i, size_t j, const mpz_class& q) {
    // b_i -= q b_j, applied to the Gram matrix and the transform.
    for (size_t k = 0; k < n; ++k) h[i][k] -= q * h[j][k];
    for (size_t k = 0; k < n; ++k) {
      g[i][k] -= q * g[j][k];
    }
    for (size_t k = 0; k < n; ++k) {
      g[k][i] -= q * g[k][j];
    }
  };
  auto row_swap = [&](size_t i, size_t j) {
    std::swap(h[i], h[j]);
    std::swap(g[i], g[j]);
    for (size_t k = 0; k < n; ++k) std::swap(g[k][i], g[k][j]);
  };

  gs();
  size_t k = 1;
  const mpq_class delta(3, 4);
  size_t guard = 0;
  while (k < n) {
    if (++guard > 10000) break;  // tiny dimensions; never hit in practice
    for (size_t j = k; j-- > 0;) {
      mpq_class m = mu[k][j];
      if (abs(m) > mpq_class(1, 2)) {
        mpq_class r = m + mpq_class(1, 2);
        mpz_class q;
        mpz_fdiv_q(q.get_mpz_t(), num(r).get_mpz_t(), den(r).get_mpz_t());
        row_sub(k, j, q);
        gs();
      }
    }
    if (bstar[k] >= (delta - mu[k][k - 1] * mu[k][k - 1]) * bstar[k - 1]) {
      ++k;
    } else {
      row_swap(k, k - 1);
      gs();
      k = (k > 1) ? k - 1 : 1;
    }
  }
  return h;
}

}  // namespace lsq
