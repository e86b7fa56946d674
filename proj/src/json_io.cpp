#include "altmod/json_io.hpp"
#include "altmod/errors.hpp"

namespace altmod {

using nlohmann::json;

json int_to_json(const Int& v) {
	if (v.fits_slong_p())
		return (long long)v.get_si();
	return v.get_str();
}

Int int_from_json(const json& j) {
	if (j.is_number_integer())
		return Int((long)j.get<long long>());
	if (j.is_string())
		return Int(j.get<std::string>());
	throw invalid_argument("expected an integer");
}

static json int_vec(const IntVec& v) {
	json a = json::array();
	for (const Int& x : v)
		a.push_back(int_to_json(x));
	return a;
}

static json int_mat(const IntMat& m) {
	json a = json::array();
	for (const IntVec& row : m)
		a.push_back(int_vec(row));
	return a;
}

json to_json(const AbelianType& t) {
	return {{"invariants", int_vec(t.invariants)}};
}

json to_json(const Subgroup& s) {
	return {{"basis", int_mat(s.basis)}};
}

json to_json(const AlternateModule& m) {
	return {{"invariants", int_vec(m.group.invariants)},
		{"denom", int_to_json(m.denom)},
		{"gram", int_mat(m.gram)}};
}

json to_json(const Isometry& w) {
	return {{"source", to_json(w.source)}, {"target", to_json(w.target)}, {"matrix", int_mat(w.matrix)}};
}

json to_json(const ModuliGraph& g) {
	json nodes = json::array();
	for (size_t i = 0; i < g.nodes.size(); ++i)
		nodes.push_back({{"id", (long long)i},
				 {"label", g.nodes[i].label},
				 {"order", int_to_json(g.nodes[i].order)},
				 {"module", to_json(g.nodes[i].representative)}});
	json edges = json::array();
	for (const ModuliEdge& e : g.edges)
		edges.push_back(json::array({e.from, e.to}));
	return {{"n", int_to_json(g.n)}, {"nodes", nodes}, {"edges", edges}};
}

json to_json(const MonomialGroup& h) {
	json elems = json::array();
	for (const MonomialMatrix& x : h.elements)
		elems.push_back({{"perm", x.perm}, {"exps", x.exps}});
	json gens = json::array();
	for (const MonomialMatrix& g : h.generators)
		gens.push_back(element_index(h, g));
	return {{"n", h.n}, {"m", 2 * h.n}, {"elements", elems}, {"generators", gens}};
}

json to_json(const CentralizerReport& r) {
	return {{"d", int_to_json(r.d)},
		{"z_order", int_to_json(r.z_order)},
		{"z_exponent", int_to_json(r.z_exponent)},
		{"torsion", to_json(r.torsion_type)},
		{"module", to_json(r.m_d)},
		{"lagrangian", int_to_json(r.m_d_lagrangian)},
		{"checks",
		 {{"torsion_identity", r.torsion_identity_ok},
		  {"exponent_bound", r.exponent_bound_ok},
		  {"order_bound", r.order_bound_ok},
		  {"coprime_bound", r.coprime_bound_ok},
		  {"torsion_exponent_bound", r.m_d_exponent_ok},
		  {"lagrangian_bound", r.m_d_lagrangian_ok}}}};
}

AbelianType abelian_type_from_json(const json& j) {
	if (!j.is_object() || !j.contains("invariants") || !j["invariants"].is_array())
		throw invalid_argument("abelian type: expected {\"invariants\": [...]}");
	std::vector<Int> inv;
	for (const json& v : j["invariants"])
		inv.push_back(int_from_json(v));
	return make_abelian_type(inv);
}

AlternateModule module_from_json(const json& j) {
	if (!j.is_object() || !j.contains("invariants") || !j.contains("denom") || !j.contains("gram"))
		throw invalid_argument("module: expected {\"invariants\", \"denom\", \"gram\"}");
	std::vector<Int> inv;
	for (const json& v : j["invariants"])
		inv.push_back(int_from_json(v));
	AbelianType t = make_abelian_type(inv);
	Int denom = int_from_json(j["denom"]);
	if (denom < 1)
		throw invalid_argument("module: denom must be positive");
	IntMat gram;
	for (const json& row : j["gram"]) {
		IntVec r;
		for (const json& v : row)
			r.push_back(int_from_json(v));
		gram.push_back(r);
	}
	// re-express the form over the canonical denominator exponent(t)
	Int n = t.exponent();
	for (IntVec& row : gram)
		for (Int& g : row) {
			Int num = g * n;
			if (num % denom != 0)
				throw invalid_argument("module: form value is not defined over the group exponent");
			g = mod_floor(num / denom, n);
		}
	return make_module(t, gram);
}

} // namespace altmod
