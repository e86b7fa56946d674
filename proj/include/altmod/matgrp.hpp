#pragma once
#include "altmod/alternate.hpp"
#include "altmod/cyclo.hpp"
#include <map>
#include <optional>
#include <vector>

namespace altmod {

// Monomial matrix over mu_{2n}: column j carries zeta_{2n}^{exps[j]} in row
// perm[j], every other entry zero.
struct MonomialMatrix {
	int n = 0;
	std::vector<int> perm;
	std::vector<int> exps; // reduced mod 2n
};

using MonomialKey = std::pair<std::vector<int>, std::vector<int>>;

MonomialMatrix monomial_identity(int n);
MonomialMatrix make_monomial(int n, std::vector<int> perm, std::vector<int> exps);
MonomialMatrix scalar_monomial(int n, int exp); // zeta_{2n}^exp I
bool operator==(const MonomialMatrix& a, const MonomialMatrix& b);
bool operator!=(const MonomialMatrix& a, const MonomialMatrix& b);
bool monomial_less(const MonomialMatrix& a, const MonomialMatrix& b);
MonomialKey monomial_key(const MonomialMatrix& a);
MonomialMatrix monomial_mul(const MonomialMatrix& a, const MonomialMatrix& b);
MonomialMatrix monomial_inverse(const MonomialMatrix& a);
MonomialMatrix monomial_power(const MonomialMatrix& a, const Int& k);
std::optional<int> scalar_exponent(const MonomialMatrix& a); // a = zeta_{2n}^t I
int monomial_order(const MonomialMatrix& a);
int det_exponent(const MonomialMatrix& a); // det(a) = zeta_{2n}^{result}
Cyclotomic monomial_trace(const MonomialMatrix& a);

struct MonomialGroup {
	int n = 0;
	std::vector<MonomialMatrix> elements; // sorted by monomial_less
	std::vector<MonomialMatrix> generators;
};

int element_index(const MonomialGroup& g, const MonomialMatrix& x); // -1 if absent

// multiplicative closure of gens (breadth-first, deterministic order)
MonomialGroup closure(int n, const std::vector<MonomialMatrix>& gens, long limit = 100000);

struct ClockShiftPair {
	MonomialMatrix u, m;
};

// determinant-one clock and shift of block size n/d in dimension n
ClockShiftPair clock_shift(const Int& n, const Int& d);

// the finite monomial group in dimension |b| realizing the full pairing on b
MonomialGroup build_model(const AbelianType& b, long limit = 100000);

// dimension over Q(zeta_{2n}) of {x : xg = gx for all g}
long commutant_dimension(const MonomialGroup& h);

// (1/|H|) sum_g tr(g) tr(g^{-1}), certified to be a rational integer
Int character_norm_sq(const MonomialGroup& h);

// U_d(h) = all determinant-one monomial matrices commuting with h modulo the
// order-d scalar subgroup; pre: h irreducible with scalar commutators
MonomialGroup extended_centralizer(const MonomialGroup& h, const Int& d);

struct PairingData {
	AlternateModule module;                      // commutator pairing on U/<xi I>
	std::vector<MonomialMatrix> generator_lifts; // lift of coordinate generator i
	std::map<MonomialKey, IntVec> coset_coords;  // canonical coset key -> coordinates
};

// the alternate module carried by a scalar-commutator group containing xi I
PairingData commutator_pairing(const MonomialGroup& u);

struct ConjugacyShape {
	Int d;                                 // least power landing in <xi I>
	Int root_order;                        // eigenvalues are powers of zeta_{root_order}
	std::vector<Int> eigenvalue_exponents; // sorted, one per dimension
	bool lambda_in_xi;                     // coset representative already lies in <xi>
};

// eigenvalue data of a monomial matrix, certified to be one uniform
// lambda-coset of the order-d scalars
ConjugacyShape conjugacy_shape(const MonomialMatrix& g);

struct CentralizerReport {
	Int d;
	Int z_order;            // |U_d| / d
	Int z_exponent;         // exponent of U_d modulo the order-d scalars
	AbelianType torsion_type;
	AlternateModule m_d;    // pairing restricted to the d-torsion
	Int m_d_lagrangian;
	bool torsion_identity_ok; // image of U_d equals the d-torsion of the pairing group
	bool exponent_bound_ok;   // z_exponent | lcm(n/d, d)
	bool order_bound_ok;      // z_order | n^3/d
	bool coprime_bound_ok;    // gcd(n/d,d) = 1 implies z_order | n*d
	bool m_d_exponent_ok;     // exponent of the d-torsion divides d
	bool m_d_lagrangian_ok;   // m_d_lagrangian | n
};

CentralizerReport d_centralizer_report(const MonomialGroup& h, const Int& d);

struct ExtensionIsomorphism {
	std::vector<int> image; // index into u2.elements for each element of u1
};

// lift an isometry of commutator pairings to a scalar-fixing group
// isomorphism u1 -> u2, verified on every pair
ExtensionIsomorphism extension_isomorphism(const MonomialGroup& u1, const MonomialGroup& u2,
					    const Isometry& iso);

} // namespace altmod
