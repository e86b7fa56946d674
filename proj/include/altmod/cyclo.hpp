#pragma once
#include "altmod/intmat.hpp"
#include <optional>
#include <vector>

namespace altmod {

// Element of Q[x]/Phi_m(x) on the power basis x^0 .. x^{phi(m)-1}, i.e. of
// the cyclotomic field Q(zeta_m), with exact rational coefficients.
struct Cyclotomic {
	long m = 1;
	std::vector<Rat> c; // size phi(m), reduction by Phi_m already applied
};

long euler_phi(long m);

// Exact coefficients of Phi_m, ascending degree (size phi(m)+1, monic).
std::vector<Int> cyclotomic_polynomial(long m);

Cyclotomic cyc_rational(long m, const Rat& q);
Cyclotomic root_power(long m, long k); // class of x^(k mod m)

// Binary operations promote both operands to Q(zeta_lcm(m1,m2)) by
// index-scaling; lcm is capped (scale_limit_error beyond the cap).
Cyclotomic cyc_add(const Cyclotomic& a, const Cyclotomic& b);
Cyclotomic cyc_sub(const Cyclotomic& a, const Cyclotomic& b);
Cyclotomic cyc_mul(const Cyclotomic& a, const Cyclotomic& b);
Cyclotomic cyc_neg(const Cyclotomic& a);
bool cyc_is_zero(const Cyclotomic& a);
bool cyc_equal(const Cyclotomic& a, const Cyclotomic& b);

// complex conjugation: x -> x^{m-1} (= x^{-1} on roots of unity)
Cyclotomic conjugate(const Cyclotomic& a);

// embed Q(zeta_m) into Q(zeta_M) for m | M
Cyclotomic promote(const Cyclotomic& a, long M);

std::optional<Rat> as_rational(const Cyclotomic& a);
std::optional<Int> as_rational_integer(const Cyclotomic& a);

using RatVec = std::vector<Rat>;
using RatMat = std::vector<RatVec>;

struct LinearSolution {
	bool consistent = false;
	RatVec particular;  // one exact solution (free variables set to 0)
	RatMat nullspace;   // basis rows of the homogeneous solution space
};

// Exact Gaussian elimination (sparse rows, shortest-row pivoting).
LinearSolution solve_linear(const RatMat& a, const RatVec& b);

// Sparse variant: each row is a list of (column, coefficient) pairs.
using SparseRow = std::vector<std::pair<int, Rat>>;
LinearSolution solve_linear_sparse(std::vector<SparseRow> rows, RatVec rhs, int ncols);

} // namespace altmod
