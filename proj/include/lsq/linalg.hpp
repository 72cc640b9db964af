#pragma once

// Exact dense linear algebra over Z and Q: reduced row echelon form,
// integer kernels, Hermite/Smith normal forms with transforms, and lattice
// indices. Everything is small and dense at this scale; no sparsity tricks.

#include <vector>

#include "lsq/util.hpp"

namespace lsq {

using QMat = std::vector<std::vector<mpq_class>>;
using ZMat = std::vector<std::vector<mpz_class>>;
using QVec = std::vector<mpq_class>;
using ZVec = std::vector<mpz_class>;

QMat q_from_z(const ZMat& a);
QMat q_identity(size_t n);
ZMat z_identity(size_t n);
QMat q_mul(const QMat& a, const QMat& b);
QVec q_apply(const QMat& a, const QVec& x);
ZVec z_apply(const ZMat& a, const ZVec& x);

// In-place Gauss-Jordan; returns pivot columns. a becomes RREF.
std::vector<size_t> q_rref(QMat& a);

size_t q_rank(QMat a);

// Basis of the right kernel {x : a x = 0} over Q.
std::vector<QVec> q_kernel(const QMat& a);

// Solve a x = b; nullopt if inconsistent. Free variables set to 0.
std::optional<QVec> q_solve(const QMat& a, const QVec& b);

// Row-style Hermite normal form of the lattice spanned by the rows.
// Zero rows dropped; pivots positive, entries above pivots reduced.
ZMat z_hnf(ZMat a);

// Saturated basis of the integer kernel {x in Z^n : a x = 0}.
std::vector<ZVec> z_kernel(const ZMat& a);

// Smith data for the cokernel of the column span: returns U (rows transform)
// with U*span-basis diagonalized; free_rows lists the row indices of U whose
// quotient coordinate is infinite cyclic, torsion lists the nontrivial
// invariant factors. uinv is the inverse transform (columns are lifts).
struct SmithCokernel {
  ZMat u;        // n x n unimodular
  ZMat uinv;     // n x n, u * uinv = identity
  std::vector<size_t> free_rows;
  std::vector<mpz_class> torsion;
};

// cols: generators of the relation sublattice of Z^n, given as columns.
SmithCokernel smith_cokernel(size_t n, const ZMat& relation_cols);

// Index [big : small] of full-rank lattices given by basis rows, small
// contained in big. Throws if containment fails or ranks differ.
mpz_class lattice_index(const ZMat& big, const ZMat& small);
mpz_class lattice_index_q(const QMat& big, const QMat& small);

// Primitive integer vector spanning the same line as the rational input.
ZVec primitive_scale(const QVec& v);

// Gram-based LLL reduction (delta = 3/4) returning the change of basis:
// rows of the result express the reduced basis in the input basis.
ZMat lll_reduce_gram(const QMat& gram);

}  // namespace lsq
