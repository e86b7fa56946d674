#include "altmod/moduli.hpp"
#include "altmod/errors.hpp"
#include <algorithm>
#include <cassert>
#include <map>
#include <sstream>
#include <tuple>

namespace altmod {

static bool int_is_prime(const Int& v) {
	if (v < 2)
		return false;
	for (Int p = 2; p * p <= v; ++p)
		if (v % p == 0)
			return false;
	return true;
}

// prime factorization by trial division; returns (omega, squarefree)
static std::pair<int, bool> factor_shape(const Int& n) {
	Int m = n;
	int omega = 0;
	bool squarefree = true;
	for (Int p = 2; p * p <= m; ++p) {
		if (m % p != 0)
			continue;
		++omega;
		m /= p;
		while (m % p == 0) {
			squarefree = false;
			m /= p;
		}
	}
	if (m > 1)
		++omega;
	return {omega, squarefree};
}

static std::string render_int(const Int& v) {
	return v.get_str();
}

// "Z/2", "(Z/2)^2", "Z/2xZ/4" (invariant factors ascending)
static std::string render_group(const AbelianType& t) {
	std::string s;
	size_t i = 0;
	while (i < t.invariants.size()) {
		size_t j = i;
		while (j < t.invariants.size() && t.invariants[j] == t.invariants[i])
			++j;
		std::string piece = "Z/" + render_int(t.invariants[i]);
		if (j - i > 1)
			piece = "(" + piece + ")^" + std::to_string(j - i);
		if (!s.empty())
			s += "x";
		s += piece;
		i = j;
	}
	return s;
}

namespace {

struct Atom {
	AlternateModule module;
	std::string display;
	Int order;
	bool is_cyclic_trivial; // a C_k summand (these collapse in display)
};

} // namespace

// every standard summand whose order divides m
static std::vector<Atom> atom_catalog(const Int& m) {
	std::vector<Atom> atoms;
	for (Int k = 2; k <= m; ++k) {
		if (m % k != 0)
			continue;
		atoms.push_back({standard_C(k), "C_" + render_int(k), k, true});
	}
	for (Int b = 2; b * b <= m; ++b) {
		if (m % (b * b) != 0)
			continue;
		for (const AbelianType& t : abelian_types_of_order(b)) {
			AlternateModule s = standard_S(t);
			atoms.push_back({s, "S(" + render_group(t) + ")", b * b, false});
		}
	}
	for (Int e = 2; e * e <= m; ++e) {
		for (Int d = e; e * d <= m; d += e) {
			if (m % (e * d) != 0)
				continue;
			for (Int ep = 2; ep <= e; ++ep) {
				if (e % ep != 0)
					continue;
				if (ep == e && e == d)
					continue; // isometric to S(Z/e), which already has a name
				std::string disp = "M_{" + render_int(ep) + "," + render_int(e) + "," + render_int(d) + "}";
				atoms.push_back({standard_M(ep, e, d), disp, e * d, false});
			}
		}
	}
	return atoms;
}

// display string of a multiset of atoms: summands ordered by order descending
// then name, equal C_k runs collapsed to (C_k)^j
static std::string render_expression(const std::vector<Atom>& parts) {
	std::vector<const Atom*> sorted;
	for (const Atom& a : parts)
		sorted.push_back(&a);
	std::sort(sorted.begin(), sorted.end(), [](const Atom* a, const Atom* b) {
		if (a->order != b->order)
			return a->order > b->order;
		return a->display < b->display;
	});
	std::string s;
	size_t i = 0;
	while (i < sorted.size()) {
		size_t j = i;
		while (j < sorted.size() && sorted[j]->display == sorted[i]->display)
			++j;
		std::string piece = sorted[i]->display;
		if (j - i > 1 && sorted[i]->is_cyclic_trivial)
			piece = "(" + piece + ")^" + std::to_string(j - i);
		else
			for (size_t k = i + 1; k < j; ++k)
				piece += "+" + sorted[i]->display;
		if (!s.empty())
			s += "+";
		s += piece;
		i = j;
	}
	return s;
}

// multisets of atom indices (non-decreasing) whose orders multiply to m
static void collect_expressions(const std::vector<Atom>& atoms, size_t first, const Int& m,
				 std::vector<int>& cur, std::vector<std::vector<int>>& out) {
	if (m == 1) {
		if (!cur.empty())
			out.push_back(cur);
		return;
	}
	for (size_t i = first; i < atoms.size(); ++i) {
		if (m % atoms[i].order != 0)
			continue;
		cur.push_back((int)i);
		collect_expressions(atoms, i, m / atoms[i].order, cur, out);
		cur.pop_back();
	}
}

std::string label_class(const AlternateModule& m) {
	Int order = module_order(m);
	if (order == 1)
		return "C_1";
	std::vector<Atom> atoms = atom_catalog(order);
	std::vector<std::vector<int>> exprs;
	std::vector<int> cur;
	collect_expressions(atoms, 0, order, cur, exprs);
	// candidate names ordered by summand count, then display string
	std::vector<std::pair<std::string, const std::vector<int>*>> named;
	for (const auto& e : exprs) {
		std::vector<Atom> parts;
		for (int i : e)
			parts.push_back(atoms[i]);
		named.push_back({render_expression(parts), &e});
	}
	std::sort(named.begin(), named.end(), [](const auto& a, const auto& b) {
		if (a.second->size() != b.second->size())
			return a.second->size() < b.second->size();
		return a.first < b.first;
	});
	for (const auto& [disp, expr] : named) {
		// group type of the direct sum is cheap; test it before searching
		std::vector<Int> factors;
		for (int i : *expr)
			for (const Int& d : atoms[i].module.group.invariants)
				factors.push_back(d);
		if (abelian_type_from_factors(factors) != m.group)
			continue;
		AlternateModule cand = atoms[(*expr)[0]].module;
		for (size_t k = 1; k < expr->size(); ++k)
			cand = direct_sum(cand, atoms[(*expr)[k]].module);
		if (find_isometry(cand, m))
			return disp;
	}
	// no standard expression matched; emit the raw descriptor
	std::ostringstream os;
	os << "raw[";
	for (size_t i = 0; i < m.group.invariants.size(); ++i)
		os << (i ? "," : "") << m.group.invariants[i];
	os << "|" << m.denom << "|";
	for (size_t i = 0; i < m.gram.size(); ++i)
		for (size_t j = 0; j < m.gram.size(); ++j)
			os << m.gram[i][j] << (i + 1 == m.gram.size() && j + 1 == m.gram.size() ? "" : ",");
	os << "]";
	return os.str();
}

std::vector<ModuliClass> enumerate_classes(const Int& n, const ModuliOptions& opt) {
	if (n < 1)
		throw invalid_argument("enumerate_classes: n must be positive");
	if (n > opt.n_cap)
		throw scale_limit_error("enumerate_classes: n exceeds the configured cap");
	// every n-subsymplectic class arises by restricting the full form on some
	// B of order n to a subgroup
	std::vector<AlternateModule> reps;
	using Key = std::tuple<std::vector<Int>, std::vector<Int>, Int>;
	std::map<Key, std::vector<size_t>> buckets;
	for (const AbelianType& b : abelian_types_of_order(n)) {
		AlternateModule full = standard_S(b);
		for (const Subgroup& s : enumerate_subgroups(full.group, opt.subgroup_cap)) {
			AlternateModule r = restrict_module(full, s);
			Key key{r.group.invariants, subgroup_smith_basis(radical(r)).type.invariants,
				lagrangian(r).second};
			auto& bucket = buckets[key];
			bool fresh = true;
			for (size_t idx : bucket)
				if (find_isometry(r, reps[idx])) {
					fresh = false;
					break;
				}
			if (fresh) {
				bucket.push_back(reps.size());
				reps.push_back(r);
			}
		}
	}
	std::vector<ModuliClass> classes;
	for (const AlternateModule& r : reps) {
		ModuliClass c;
		c.representative = r;
		c.order = module_order(r);
		c.radical_type = subgroup_smith_basis(radical(r)).type;
		c.lagrangian_order = lagrangian(r).second;
		c.label = label_class(r);
		classes.push_back(std::move(c));
	}
	std::sort(classes.begin(), classes.end(), [](const ModuliClass& a, const ModuliClass& b) {
		if (a.order != b.order)
			return a.order < b.order;
		if (a.representative.group.invariants != b.representative.group.invariants)
			return a.representative.group.invariants < b.representative.group.invariants;
		if (a.radical_type.invariants != b.radical_type.invariants)
			return a.radical_type.invariants < b.radical_type.invariants;
		if (a.lagrangian_order != b.lagrangian_order)
			return a.lagrangian_order < b.lagrangian_order;
		return a.label < b.label;
	});
	return classes;
}

Int count_classes(const Int& n, const ModuliOptions& opt) {
	if (n < 1)
		throw invalid_argument("count_classes: n must be positive");
	auto [omega, squarefree] = factor_shape(n);
	if (squarefree) {
		Int c = 1;
		for (int i = 0; i < omega; ++i)
			c *= 3; // squarefree count: three classes per prime factor
		if (n <= opt.n_cap) {
			Int seen = (long)enumerate_classes(n, opt).size();
			if (seen != c)
				throw certificate_error("count_classes: enumeration disagrees with the squarefree count");
		}
		return c;
	}
	return (long)enumerate_classes(n, opt).size();
}

ModuliGraph build_graph(const Int& n, const ModuliOptions& opt) {
	ModuliGraph g;
	g.n = n;
	g.nodes = enumerate_classes(n, opt);
	for (size_t i = 0; i < g.nodes.size(); ++i)
		for (size_t j = 0; j < g.nodes.size(); ++j) {
			if (i == j || g.nodes[j].order % g.nodes[i].order != 0)
				continue;
			if (!int_is_prime(g.nodes[j].order / g.nodes[i].order))
				continue;
			auto w = find_embedding(g.nodes[i].representative, g.nodes[j].representative);
			if (w)
				g.edges.push_back({(int)i, (int)j, w->matrix});
		}
	// layers by order, largest first
	std::vector<Int> orders;
	for (const ModuliClass& c : g.nodes)
		if (std::find(orders.begin(), orders.end(), c.order) == orders.end())
			orders.push_back(c.order);
	std::sort(orders.begin(), orders.end(), [](const Int& a, const Int& b) { return a > b; });
	for (const Int& o : orders) {
		std::vector<int> layer;
		for (size_t i = 0; i < g.nodes.size(); ++i)
			if (g.nodes[i].order == o)
				layer.push_back((int)i);
		g.layers.push_back(layer);
	}
	return g;
}

std::string emit_dot(const ModuliGraph& g) {
	std::ostringstream os;
	os << "digraph moduli {\n";
	os << "\trankdir=BT;\n";
	os << "\tnode [shape=box];\n";
	for (size_t i = 0; i < g.nodes.size(); ++i)
		os << "\tn" << i << " [label=\"" << g.nodes[i].label << "\"];\n";
	for (const auto& layer : g.layers) {
		os << "\t{ rank=same;";
		for (int id : layer)
			os << " n" << id << ";";
		os << " }\n";
	}
	for (const ModuliEdge& e : g.edges)
		os << "\tn" << e.from << " -> n" << e.to << ";\n";
	os << "}\n";
	return os.str();
}

} // namespace altmod
