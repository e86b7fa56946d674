#pragma once
#include "altmod/intmat.hpp"
#include <vector>

namespace altmod {

// Finite abelian group by invariant factors d_1 | d_2 | ... | d_r, ascending,
// every d_i >= 2.  The empty list is the trivial group.
struct AbelianType {
	std::vector<Int> invariants;

	Int order() const;
	Int exponent() const; // 1 for the trivial group
	int rank() const { return (int)invariants.size(); }
};

bool operator==(const AbelianType& a, const AbelianType& b);
bool operator!=(const AbelianType& a, const AbelianType& b);
bool operator<(const AbelianType& a, const AbelianType& b); // lexicographic

// Validates the divisibility chain.
AbelianType make_abelian_type(std::vector<Int> invariants);

// Normalizes an arbitrary list of cyclic factor orders (>= 1, any order)
// into invariant factors, e.g. (2,3) -> (6), (2,2,1) -> (2,2).
AbelianType abelian_type_from_factors(const std::vector<Int>& factors);

// Elements are coordinate vectors, coordinate i modulo d_i.
using GroupElement = IntVec;

GroupElement normalize_coords(const AbelianType& t, GroupElement x);
GroupElement add_coords(const AbelianType& t, const GroupElement& a, const GroupElement& b);
GroupElement scale_coords(const AbelianType& t, const Int& k, const GroupElement& a);
Int element_order(const AbelianType& t, const GroupElement& x);
// All |T| elements in mixed-radix order (last coordinate fastest).
std::vector<GroupElement> all_elements(const AbelianType& t);

// Subgroup of T as a lattice L with D*Z^r <= L <= Z^r, D = diag(invariants),
// stored by its unique upper-triangular column-HNF basis.
struct Subgroup {
	AbelianType parent;
	IntMat basis;

	Int order() const; // det(D)/det(basis)
};

bool operator==(const Subgroup& a, const Subgroup& b);
bool operator!=(const Subgroup& a, const Subgroup& b);
bool operator<(const Subgroup& a, const Subgroup& b);

Subgroup trivial_subgroup(const AbelianType& t);
Subgroup full_subgroup(const AbelianType& t);
Subgroup subgroup_from_generators(const AbelianType& t, const std::vector<GroupElement>& gens);
bool subgroup_contains(const Subgroup& s, const GroupElement& x);
bool subgroup_leq(const Subgroup& a, const Subgroup& b); // a <= b as subgroups

// Invariant-factor presentation of a subgroup: generator i (parent
// coordinates) has order type.invariants[i] and the generators are
// independent, so S = <gens[0]> x ... x <gens[k-1]>.
struct SubgroupBasis {
	AbelianType type;
	std::vector<GroupElement> gens;
};
SubgroupBasis subgroup_smith_basis(const Subgroup& s);

// All elements of S (exactly |S|, deterministic order).
std::vector<GroupElement> subgroup_elements(const Subgroup& s);

// --- global operations ------------------------------------------------------

// One representative per isomorphism class of abelian groups of order n,
// deterministic order; per prime, partitions are walked in decreasing
// lexicographic order, so (4) precedes (2,2).
std::vector<AbelianType> abelian_types_of_order(const Int& n);

// Exhaustive subgroup enumeration via HNF candidates; |T| capped.
std::vector<Subgroup> enumerate_subgroups(const AbelianType& t, const Int& order_cap = Int(10000));

// Finite abelian duality: B* is (non-canonically) isomorphic to B.
AbelianType dual_type(const AbelianType& b);

} // namespace altmod
