// Acceptance suite: one line per criterion, exit code = number of failures.
#include "altmod/json_io.hpp"
#include "altmod/matgrp.hpp"
#include "altmod/moduli.hpp"
#include "oracles.hpp"

#include <cstdio>
#include <functional>
#include <iostream>
#include <map>
#include <random>
#include <set>
#include <sstream>
#include <sys/wait.h>

using namespace altmod;
using nlohmann::json;

namespace {

void expect(bool ok, const std::string& what) {
	if (!ok)
		throw std::runtime_error(what);
}

AbelianType type_of(std::vector<long> inv) {
	std::vector<Int> v;
	for (long x : inv)
		v.push_back(x);
	return make_abelian_type(v);
}

const std::vector<ModuliClass>& classes_for(long n) {
	static std::map<long, std::vector<ModuliClass>> cache;
	auto it = cache.find(n);
	if (it == cache.end())
		it = cache.emplace(n, enumerate_classes(Int(n))).first;
	return it->second;
}

const MonomialGroup& model_for(const AbelianType& b) {
	static std::map<std::string, MonomialGroup> cache;
	std::string key;
	for (const Int& d : b.invariants)
		key += d.get_str() + ",";
	auto it = cache.find(key);
	if (it == cache.end())
		it = cache.emplace(key, build_model(b)).first;
	return it->second;
}

std::pair<int, std::string> run_cli(const std::string& args) {
	std::string cmd = std::string(ALTMOD_CLI_PATH) + " " + args;
	FILE* p = popen(cmd.c_str(), "r");
	expect(p != nullptr, "popen failed");
	std::string out;
	char buf[4096];
	size_t got;
	while ((got = fread(buf, 1, sizeof(buf), p)) > 0)
		out.append(buf, got);
	int st = pclose(p);
	return {WIFEXITED(st) ? WEXITSTATUS(st) : -1, out};
}

// ---- criterion 1: class counts at desk scale, library and binary ----------
std::string criterion_counts() {
	for (long n : {2L, 3L, 5L})
		expect(count_classes(n) == 3, "count at prime n=" + std::to_string(n));
	expect(count_classes(4) == 9, "count at n=4");
	expect(count_classes(9) == 9, "count at n=9");
	expect(count_classes(8) == 24, "count at n=8");
	expect(count_classes(6) == 9, "count at n=6");
	expect(count_classes(30) == 27, "count at n=30");
	expect((long)classes_for(8).size() == 24, "enumeration size at n=8");

	auto [code, out] = run_cli("count --n 30");
	expect(code == 0 && out == "27\n", "cli count --n 30");
	auto [gcode, gout] = run_cli("graph --n 2 --format json");
	expect(gcode == 0, "cli graph exit code");
	json g = json::parse(gout);
	expect(g["nodes"].size() == 3 && g["edges"].size() == 2, "cli graph shape");
	return "includes cli round trips";
}

// ---- criterion 2: inclusion graphs match the published pictures -----------
std::string criterion_graphs() {
	for (long p : {2L, 3L}) {
		ModuliGraph g = build_graph(p);
		expect(g.nodes.size() == 3, "prime graph node count");
		std::set<std::pair<int, int>> es;
		for (const ModuliEdge& e : g.edges)
			es.insert({e.from, e.to});
		expect(es == std::set<std::pair<int, int>>{{0, 1}, {1, 2}}, "prime graph is a path");
	}

	std::map<long, std::set<std::string>> expected;
	expected[4] = {"C_1",     "C_2",          "(C_2)^2", "C_4",      "S(Z/2)",
		       "S(Z/2)+C_2", "M_{2,2,4}", "S(Z/4)",  "S((Z/2)^2)"};
	expected[9] = {"C_1",     "C_3",          "(C_3)^2", "C_9",      "S(Z/3)",
		       "S(Z/3)+C_3", "M_{3,3,9}", "S(Z/9)",  "S((Z/3)^2)"};
	for (long n : {4L, 9L}) {
		ModuliGraph g = build_graph(n);
		std::set<std::string> labels;
		for (const ModuliClass& c : g.nodes)
			labels.insert(c.label);
		expect(labels == expected[n], "labels at n=" + std::to_string(n));
		expect(g.edges.size() == 10, "edge count at n=" + std::to_string(n));
		for (const ModuliEdge& e : g.edges) {
			Isometry w{g.nodes[e.from].representative, g.nodes[e.to].representative,
				   e.witness};
			expect(isometry_witness_ok(w, false), "edge witness at n=" + std::to_string(n));
		}
	}

	ModuliGraph g8 = build_graph(8);
	expect(g8.nodes.size() == 24, "node count at n=8");
	std::vector<size_t> layer_sizes;
	for (const auto& l : g8.layers)
		layer_sizes.push_back(l.size());
	expect(layer_sizes == std::vector<size_t>{3, 4, 7, 5, 3, 1, 1}, "layer profile at n=8");
	return "n in {2,3,4,8,9}";
}

// ---- criterion 3: squarefree scopes are classified by the group alone ----
std::string criterion_squarefree() {
	long pairs = 0;
	for (long n : {2L, 3L, 5L, 6L, 10L, 15L}) {
		long omega = 0;
		for (long p = 2, m = n; p <= m; ++p)
			while (m % p == 0) {
				m /= p;
				++omega;
			}
		const std::vector<ModuliClass>& cs = classes_for(n);
		long want = 1;
		for (long i = 0; i < omega; ++i)
			want *= 3;
		expect((long)cs.size() == want, "3^omega count at n=" + std::to_string(n));
		for (size_t i = 0; i < cs.size(); ++i)
			for (size_t j = i + 1; j < cs.size(); ++j) {
				expect(!(cs[i].representative.group == cs[j].representative.group),
				       "group types repeat at n=" + std::to_string(n));
				++pairs;
			}
	}
	expect(count_classes(30) == 27, "formula count at n=30");

	// sharpness: away from squarefree n the group no longer determines the
	// class -- the zero form and the symplectic form share (Z/2)^2
	AlternateModule zero22 = make_module(type_of({2, 2}), zero_mat(2, 2));
	AlternateModule s2 = standard_S(type_of({2}));
	expect(zero22.group == s2.group, "counterexample shares its group");
	expect(is_n_subsymplectic(zero22, 4) && is_n_subsymplectic(s2, 4), "both live at n=4");
	expect(!find_isometry(zero22, s2).has_value(), "counterexample is non-isometric");
	return std::to_string(pairs) + " distinct-type pairs";
}

// ---- criterion 4: monomial models realize the full pairing ---------------
const std::vector<std::vector<long>>& model_types() {
	static std::vector<std::vector<long>> types = {
	    {2}, {3}, {4}, {2, 2}, {6}, {8}, {2, 4}, {2, 2, 2}, {9}, {3, 3}};
	return types;
}

std::string criterion_models() {
	for (const auto& inv : model_types()) {
		AbelianType b = type_of(inv);
		const MonomialGroup& h = model_for(b);
		long n = (long)b.order().get_si();
		expect((long)h.elements.size() == n * n * n, "model order for |B|=" + std::to_string(n));
		expect(commutant_dimension(h) == 1, "irreducibility for |B|=" + std::to_string(n));
		expect(character_norm_sq(h) == 1, "character norm for |B|=" + std::to_string(n));
		for (const MonomialMatrix& g : h.generators)
			expect(det_exponent(g) == 0, "generator determinant");
		MonomialGroup un = extended_centralizer(h, n);
		expect(un.elements.size() == h.elements.size(), "self-centralizing model");
		PairingData pd = commutator_pairing(h);
		std::optional<Isometry> w = find_isometry(pd.module, standard_S(b));
		expect(w.has_value(), "pairing class for |B|=" + std::to_string(n));
		expect(isometry_witness_ok(*w, true), "pairing witness");
	}
	return std::to_string(model_types().size()) + " models";
}

// ---- criterion 5: characters vanish off the scalars ----------------------
std::string criterion_traces() {
	long checked = 0;
	for (const auto& inv : model_types()) {
		const MonomialGroup& h = model_for(type_of(inv));
		for (const MonomialMatrix& g : h.elements) {
			Cyclotomic tr = monomial_trace(g);
			std::optional<int> t = scalar_exponent(g);
			if (t) {
				Cyclotomic want =
				    cyc_mul(cyc_rational(2 * h.n, Rat(h.n)), root_power(2 * h.n, *t));
				expect(cyc_equal(tr, want), "scalar trace");
			} else {
				expect(cyc_is_zero(tr), "off-scalar trace");
			}
			++checked;
		}
	}
	return std::to_string(checked) + " elements";
}

// ---- criterion 6: the lagrangian order law on every restriction ----------
std::string criterion_lagrangian() {
	long instances = 0;
	for (long n = 1; n <= 9; ++n) {
		for (const AbelianType& b : abelian_types_of_order(n)) {
			AlternateModule full = standard_S(b);
			for (const Subgroup& s : enumerate_subgroups(full.group)) {
				AlternateModule r = restrict_module(full, s);
				auto [l, nl] = lagrangian(r);
				expect(nl * nl == module_order(r) * radical(r).order(),
				       "order law |L|^2 = |A||K|");
				expect(l.order() == nl, "lagrangian size");
				expect(orthogonal_complement(r, l) == l, "self-perpendicularity");
				expect(b.order() % nl == 0, "lagrangian divides |B|");
				expect(is_n_subsymplectic(r, n), "restriction stays in scope");
				++instances;
			}
		}
	}
	return std::to_string(instances) + " restriction instances";
}

// ---- criterion 7: perpendicularity is a perfect duality -------------------
std::string criterion_duality() {
	long instances = 0;
	for (long n = 1; n <= 8; ++n) {
		for (const AbelianType& b : abelian_types_of_order(n)) {
			AlternateModule full = standard_S(b);
			Int total = module_order(full);
			for (const Subgroup& a : enumerate_subgroups(full.group)) {
				Subgroup perp = orthogonal_complement(full, a);
				expect(a.order() * perp.order() == total, "order product law");
				expect(orthogonal_complement(full, perp) == a, "double complement");
				++instances;
			}
		}
	}
	return std::to_string(instances) + " subgroups";
}

// ---- criterion 8: centralizer reports satisfy every bound ----------------
std::string criterion_centralizer_reports() {
	long reports = 0;
	for (const auto& inv : model_types()) {
		AbelianType b = type_of(inv);
		const MonomialGroup& h = model_for(b);
		long n = (long)b.order().get_si();
		for (long d = 1; d <= n; ++d) {
			if (n % d != 0)
				continue;
			CentralizerReport r = d_centralizer_report(h, d);
			std::string at = " at |B|=" + std::to_string(n) + " d=" + std::to_string(d);
			expect(r.torsion_identity_ok, "torsion identity" + at);
			expect(r.exponent_bound_ok, "exponent bound" + at);
			expect(r.order_bound_ok, "order bound" + at);
			expect(r.coprime_bound_ok, "coprime bound" + at);
			expect(r.m_d_exponent_ok, "torsion exponent bound" + at);
			expect(r.m_d_lagrangian_ok, "lagrangian bound" + at);
			++reports;
		}
	}
	expect(reports == 32, "report census");
	return std::to_string(reports) + " reports, all bounds hold";
}

// ---- criterion 9: independent oracles agree ------------------------------
std::string criterion_oracles() {
	// isometry search vs definitional backtracking on the class pools
	long iso_checked = 0;
	for (long n : {2L, 3L, 4L, 5L, 6L, 8L, 9L}) {
		const std::vector<ModuliClass>& cs = classes_for(n);
		for (size_t i = 0; i < cs.size(); ++i)
			for (size_t j = i; j < cs.size(); ++j) {
				if (cs[i].order > 64 || cs[j].order > 64)
					continue;
				bool fast =
				    find_isometry(cs[i].representative, cs[j].representative).has_value();
				bool slow =
				    oracle::oracle_isometric(cs[i].representative, cs[j].representative);
				expect(fast == slow, "isometry oracle split at n=" + std::to_string(n));
				expect(fast == (i == j), "class separation at n=" + std::to_string(n));
				++iso_checked;
			}
	}
	// every raw restriction lands on exactly one catalogued class
	for (long n : {2L, 3L, 4L}) {
		const std::vector<ModuliClass>& cs = classes_for(n);
		for (const AbelianType& b : abelian_types_of_order(n)) {
			AlternateModule full = standard_S(b);
			for (const Subgroup& s : enumerate_subgroups(full.group)) {
				AlternateModule r = restrict_module(full, s);
				long hits = 0;
				for (const ModuliClass& c : cs)
					if (find_isometry(r, c.representative)) {
						++hits;
						expect(oracle::oracle_isometric(r, c.representative),
						       "oracle rejects the matched class");
					}
				expect(hits == 1, "restriction matches exactly one class");
				++iso_checked;
			}
		}
	}
	// subgroup enumeration vs breadth-first lattice walk
	long grp_checked = 0;
	for (long n = 1; n <= 64; ++n) {
		for (const AbelianType& t : abelian_types_of_order(n)) {
			std::set<oracle::ElementSet> brute = oracle::brute_force_subgroups(t);
			std::vector<Subgroup> fast = enumerate_subgroups(t);
			expect(fast.size() == brute.size(), "subgroup count at order " + std::to_string(n));
			for (const Subgroup& s : fast)
				expect(brute.count(oracle::set_key(t, subgroup_elements(s))) == 1,
				       "unknown subgroup at order " + std::to_string(n));
			++grp_checked;
		}
	}
	return std::to_string(iso_checked) + " isometry checks, " + std::to_string(grp_checked) +
	       " group types";
}

// ---- criterion 10: pairing isometries lift to group isomorphisms ----------
std::string criterion_extensions() {
	std::mt19937 rng(0xA17);
	std::vector<std::vector<long>> types = {{2}, {3}, {4}, {2, 2}, {5}, {6}};
	long instances = 0;
	for (long inst = 0; inst < 20; ++inst) {
		AbelianType b = type_of(types[inst % types.size()]);
		const MonomialGroup& h1 = model_for(b);
		MonomialMatrix t = oracle::random_monomial_sl(h1.n, rng);
		std::vector<MonomialMatrix> gens2;
		for (const MonomialMatrix& g : h1.generators)
			gens2.push_back(monomial_mul(monomial_mul(t, g), monomial_inverse(t)));
		MonomialGroup h2 = closure(h1.n, gens2);
		expect(h2.elements.size() == h1.elements.size(), "conjugate closure size");

		PairingData p1 = commutator_pairing(h1);
		PairingData p2 = commutator_pairing(h2);
		std::optional<Isometry> w = find_isometry(p1.module, p2.module);
		expect(w.has_value(), "pairings of conjugate models are isometric");
		ExtensionIsomorphism f = extension_isomorphism(h1, h2, *w);
		expect(f.image.size() == h1.elements.size(), "extension domain");
		std::set<int> image(f.image.begin(), f.image.end());
		expect(image.size() == f.image.size(), "extension bijectivity");
		++instances;
	}
	return std::to_string(instances) + " seeded instances";
}

struct Criterion {
	int id;
	std::string title;
	std::function<std::string()> run;
};

} // namespace

int main() {
	std::vector<Criterion> criteria = {
	    {1, "class counts at desk scale (library and cli)", criterion_counts},
	    {2, "inclusion graphs for n in {2,3,4,8,9}", criterion_graphs},
	    {3, "squarefree classification by group type, with a non-squarefree counterexample",
	     criterion_squarefree},
	    {4, "irreducible monomial models with the full commutator pairing", criterion_models},
	    {5, "model characters vanish off the scalar subgroup", criterion_traces},
	    {6, "lagrangian order law on every restriction of the full forms", criterion_lagrangian},
	    {7, "perpendicularity duality on every subgroup of the full forms", criterion_duality},
	    {8, "centralizer reports meet all structural bounds", criterion_centralizer_reports},
	    {9, "search results agree with definitional oracles", criterion_oracles},
	    {10, "pairing isometries lift to verified group isomorphisms", criterion_extensions},
	};
	int fails = 0;
	for (const Criterion& c : criteria) {
		std::string note;
		bool ok = true;
		try {
			note = c.run();
		} catch (const std::exception& e) {
			ok = false;
			note = e.what();
		}
		if (ok) {
			std::cout << "[PASS] criterion " << c.id << ": " << c.title;
			if (!note.empty())
				std::cout << " [" << note << "]";
			std::cout << "\n";
		} else {
			std::cout << "[FAIL] criterion " << c.id << ": " << c.title << " -- " << note << "\n";
			++fails;
		}
		std::cout.flush();
	}
	std::cout << (fails == 0 ? "all criteria passed" : std::to_string(fails) + " criteria failed")
		  << "\n";
	return fails;
}
