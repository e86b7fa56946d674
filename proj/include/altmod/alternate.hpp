#pragma once
#include "altmod/abelian.hpp"
#include <optional>
#include <string>
#include <utility>

namespace altmod {

// Finite abelian group A with an alternating bilinear form phi: A x A -> Q/Z,
// stored as integer numerators over denom N = exponent(A):
// phi(e_i, e_j) = gram[i][j] / N.
struct AlternateModule {
	AbelianType group;
	Int denom = 1;
	IntMat gram;
};

bool operator==(const AlternateModule& a, const AlternateModule& b);

// A form-preserving group isomorphism (or monomorphism, for embeddings):
// matrix row i = target coordinates of the image of source generator i.
struct Isometry {
	AlternateModule source;
	AlternateModule target;
	IntMat matrix;
};

struct ValidationReport {
	bool ok = true;
	std::string message; // names the failing entry (i, j), 1-based
};

ValidationReport validate(const AlternateModule& m);

// Validating constructor: normalizes gram entries into [0, N) with
// N = exponent(group); throws invalid_argument if the form is not alternating
// or not well defined on the generators.
AlternateModule make_module(AbelianType group, IntMat gram);

Int module_order(const AlternateModule& m);

// numerator of phi(a, b) over m.denom
Int form_value(const AlternateModule& m, const GroupElement& a, const GroupElement& b);

// K_phi = {a : phi(a, b) = 0 for all b}
Subgroup radical(const AlternateModule& m);

// S^perp = {a : phi(a, s) = 0 for all s in S}
Subgroup orthogonal_complement(const AlternateModule& m, const Subgroup& s);

// A maximal isotropic subgroup L = L^perp, found by greedy isotropic
// extension seeded with the radical; second component is |L| = n_{A,phi}
// = sqrt(|A| * |K_phi|) (the identity is asserted).
std::pair<Subgroup, Int> lagrangian(const AlternateModule& m);

bool is_n_subsymplectic(const AlternateModule& m, const Int& n);

std::optional<Isometry> find_isometry(const AlternateModule& m1, const AlternateModule& m2);
std::optional<Isometry> find_embedding(const AlternateModule& m1, const AlternateModule& m2);

// orthogonal sum, with the underlying group renormalized to invariant factors
AlternateModule direct_sum(const AlternateModule& a, const AlternateModule& b);

// standard forms: C_k (trivial form), S(B) (canonical symplectic on B x B*),
// M(e', e, d) (rank-2 form of value 1/e' on Z/e x Z/d, e' | e | d)
AlternateModule standard_C(const Int& k);
AlternateModule standard_S(const AbelianType& b);
AlternateModule standard_M(const Int& eprime, const Int& e, const Int& d);

// the form restricted to a subgroup, in the subgroup's invariant-factor basis
AlternateModule restrict_module(const AlternateModule& m, const Subgroup& s);

// Rank <= 2 module of squarefree exponent with n_M | n (n squarefree):
// returns the standard form it is isometric to (M(e,e,d), or the module
// itself when the pairing vanishes) plus an isometry witness onto it.
std::pair<AlternateModule, Isometry> rank2_squarefree_canonical(const AlternateModule& m,
                                                                const Int& n);

// check a witness exactly: group hom (orders), injectivity, form preservation
bool isometry_witness_ok(const Isometry& w, bool require_surjective);

} // namespace altmod
