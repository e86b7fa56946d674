#pragma once
#include "altmod/alternate.hpp"
#include <string>
#include <vector>

namespace altmod {

// One isometry class of n-subsymplectic modules.
struct ModuliClass {
	AlternateModule representative;
	std::string label;        // standard-form vocabulary, e.g. "S(Z/2)+C_2"
	Int order;                // |representative|
	AbelianType radical_type; // isomorphism type of the radical
	Int lagrangian_order;     // n_{A,phi}
};

struct ModuliEdge {
	int from = 0, to = 0; // node indices; |node_to| / |node_from| is prime
	IntMat witness;       // embedding matrix (row i = image of generator i)
};

struct ModuliGraph {
	Int n;
	std::vector<ModuliClass> nodes;
	std::vector<ModuliEdge> edges;
	std::vector<std::vector<int>> layers; // node ids grouped by order, descending
};

struct ModuliOptions {
	Int n_cap = 16;           // desk-scale bound on n
	Int subgroup_cap = 10000; // bound on |S(B)| for subgroup enumeration
};

// All isometry classes of n-subsymplectic alternate modules, one
// representative each, sorted by (order, group type, radical type,
// Lagrangian order, label).
std::vector<ModuliClass> enumerate_classes(const Int& n, const ModuliOptions& opt = {});

// |M_n|; squarefree n answered by the 3^r formula (cross-checked against the
// enumeration when n is within desk scale).
Int count_classes(const Int& n, const ModuliOptions& opt = {});

// Inclusion graph: edge (i,j) iff |M_j|/|M_i| is prime and M_i embeds in M_j.
ModuliGraph build_graph(const Int& n, const ModuliOptions& opt = {});

// First standard-form name isometric to M (catalog ordered by summand count,
// then lexicographic); raw descriptor fallback.
std::string label_class(const AlternateModule& m);

std::string emit_dot(const ModuliGraph& g);

} // namespace altmod
