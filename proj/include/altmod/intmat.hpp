#pragma once
#include <gmpxx.h>
#include <vector>

namespace altmod {

using Int = mpz_class;
using Rat = mpq_class;
using IntVec = std::vector<Int>;
using IntMat = std::vector<IntVec>; // row-major, rectangular

IntMat identity_mat(int n);
IntMat zero_mat(int rows, int cols);
IntMat mat_mul(const IntMat& a, const IntMat& b);
IntVec mat_vec(const IntMat& a, const IntVec& x);
IntMat mat_transpose(const IntMat& a);

// Fraction-free (Bareiss) determinant of a square matrix.
Int mat_det(IntMat a);

// Exact inverse of a unimodular integer matrix (det = ±1); throws
// certificate_error otherwise.
IntMat mat_inverse_unimodular(const IntMat& u);

// representative of a mod m in [0, m), m > 0
Int mod_floor(const Int& a, const Int& m);

struct SmithResult {
	IntMat left;     // unimodular
	IntMat diagonal; // same shape as input, diagonal, nonnegative,
	                 // each diagonal entry divides the next
	IntMat right;    // unimodular
};

// left * a * right = diagonal (classical row/column reduction).
SmithResult smith_normal_form(const IntMat& a);

// Columns of `a` (r x k) span a finite-index sublattice of Z^r.  Returns the
// unique upper-triangular column basis: pivots positive on the diagonal,
// entries to the right of each pivot reduced modulo it.  Throws
// certificate_error if the columns do not have full rank r.
IntMat hnf_column_basis(const IntMat& a);

// Solve b*y = x for upper-triangular b by back substitution; returns true and
// fills y (if given) iff the solution is integral, i.e. x lies in the column
// lattice of b.
bool hnf_solve(const IntMat& b, const IntVec& x, IntVec* y = nullptr);

} // namespace altmod
