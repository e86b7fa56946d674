#include "CLI11.hpp"
#include "altmod/errors.hpp"
#include "altmod/json_io.hpp"
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

using namespace altmod;
using nlohmann::json;

namespace {

struct Config {
	long n = 0;
	long d = -1;
	std::string invariants;
	std::string format = "text";
	std::string out;
	long threads = 1;
	long max_order = 0;
	long seed = 0;
	std::string left, right;
};

void add_common(CLI::App* cmd, Config& cfg) {
	cmd->add_option("--format", cfg.format, "output format: text, json or dot")
	    ->check(CLI::IsMember({"text", "json", "dot"}));
	cmd->add_option("--out", cfg.out, "write output to a file instead of stdout");
	cmd->add_option("--threads", cfg.threads, "worker threads (accepted; execution is sequential)")
	    ->check(CLI::PositiveNumber);
	cmd->add_option("--max-order", cfg.max_order, "enumeration size cap (env ALTMOD_MAX_ORDER)")
	    ->check(CLI::PositiveNumber);
	cmd->add_option("--seed", cfg.seed, "random seed (accepted; all output is deterministic)");
}

void emit(const Config& cfg, const std::string& payload) {
	std::string text = payload;
	if (text.empty() || text.back() != '\n')
		text += '\n';
	if (cfg.out.empty()) {
		std::cout << text;
		return;
	}
	std::ofstream f(cfg.out, std::ios::binary);
	if (!f)
		throw invalid_argument("cannot open output file: " + cfg.out);
	f << text;
}

void error_json(const std::string& kind, const std::string& message) {
	json e = {{"error", kind}, {"message", message}};
	std::cerr << e.dump() << "\n";
}

AbelianType parse_invariants(const std::string& s) {
	if (s.empty())
		throw invalid_argument("--invariants is required (comma-separated factors, e.g. 2,4)");
	std::vector<Int> factors;
	std::stringstream ss(s);
	std::string item;
	while (std::getline(ss, item, ',')) {
		if (item.empty() || item.find_first_not_of("0123456789") != std::string::npos)
			throw invalid_argument("--invariants: expected positive integers, got '" + item + "'");
		factors.push_back(Int(item));
	}
	return abelian_type_from_factors(factors);
}

ModuliOptions moduli_options(const Config& cfg) {
	ModuliOptions opt;
	if (cfg.max_order > 0)
		opt.subgroup_cap = cfg.max_order;
	return opt;
}

long model_limit(const Config& cfg) {
	return cfg.max_order > 0 ? cfg.max_order : 100000;
}

json module_file(const std::string& path) {
	std::ifstream f(path);
	if (!f)
		throw invalid_argument("cannot open module file: " + path);
	json j;
	try {
		f >> j;
	} catch (const json::exception& e) {
		throw invalid_argument("bad JSON in " + path + ": " + e.what());
	}
	return j;
}

int cmd_enumerate(const Config& cfg) {
	std::vector<ModuliClass> classes = enumerate_classes(Int(cfg.n), moduli_options(cfg));
	if (cfg.format == "json") {
		json out = json::array();
		for (size_t i = 0; i < classes.size(); ++i)
			out.push_back({{"id", (long long)i},
				       {"label", classes[i].label},
				       {"order", int_to_json(classes[i].order)},
				       {"module", to_json(classes[i].representative)}});
		emit(cfg, json{{"n", cfg.n}, {"classes", out}}.dump(2));
	} else {
		std::ostringstream os;
		for (size_t i = 0; i < classes.size(); ++i)
			os << i << "\t" << classes[i].label << "\t" << classes[i].order << "\n";
		emit(cfg, os.str());
	}
	return 0;
}

int cmd_count(const Config& cfg) {
	Int c = count_classes(Int(cfg.n), moduli_options(cfg));
	if (cfg.format == "json")
		emit(cfg, json{{"n", cfg.n}, {"count", int_to_json(c)}}.dump(2));
	else
		emit(cfg, c.get_str());
	return 0;
}

int cmd_graph(const Config& cfg) {
	ModuliGraph g = build_graph(Int(cfg.n), moduli_options(cfg));
	if (cfg.format == "json")
		emit(cfg, to_json(g).dump(2));
	else if (cfg.format == "dot")
		emit(cfg, emit_dot(g));
	else {
		std::ostringstream os;
		os << "graph n=" << cfg.n << " nodes=" << g.nodes.size() << " edges=" << g.edges.size() << "\n";
		for (size_t i = 0; i < g.nodes.size(); ++i)
			os << "node " << i << " " << g.nodes[i].label << " " << g.nodes[i].order << "\n";
		for (const ModuliEdge& e : g.edges)
			os << "edge " << e.from << " " << e.to << "\n";
		emit(cfg, os.str());
	}
	return 0;
}

int cmd_isometry(const Config& cfg) {
	AlternateModule left = module_from_json(module_file(cfg.left));
	AlternateModule right = module_from_json(module_file(cfg.right));
	std::optional<Isometry> w = find_isometry(left, right);
	if (!w) {
		if (cfg.format == "json")
			emit(cfg, json{{"isometric", false}}.dump(2));
		else
			emit(cfg, "not isometric");
		return 3;
	}
	if (cfg.format == "json")
		emit(cfg, json{{"isometric", true}, {"witness", to_json(*w)["matrix"]}}.dump(2));
	else {
		std::ostringstream os;
		os << "isometric\n";
		for (const IntVec& row : w->matrix) {
			for (size_t j = 0; j < row.size(); ++j)
				os << (j ? " " : "") << row[j];
			os << "\n";
		}
		emit(cfg, os.str());
	}
	return 0;
}

int cmd_model(const Config& cfg) {
	AbelianType b = parse_invariants(cfg.invariants);
	MonomialGroup h = build_model(b, model_limit(cfg));
	if (cfg.format == "json")
		emit(cfg, to_json(h).dump(2));
	else {
		std::ostringstream os;
		os << "model n=" << h.n << " order=" << h.elements.size()
		   << " generators=" << h.generators.size() << "\n";
		emit(cfg, os.str());
	}
	return 0;
}

int cmd_dcentralizer(const Config& cfg) {
	AbelianType b = parse_invariants(cfg.invariants);
	MonomialGroup h = build_model(b, model_limit(cfg));
	Int d = cfg.d < 0 ? Int(h.n) : Int(cfg.d);
	CentralizerReport rep = d_centralizer_report(h, d);
	if (cfg.format == "json")
		emit(cfg, to_json(rep).dump(2));
	else {
		std::ostringstream os;
		os << "d=" << rep.d << " z_order=" << rep.z_order << " z_exponent=" << rep.z_exponent
		   << " lagrangian=" << rep.m_d_lagrangian << "\n";
		os << "torsion=";
		for (size_t i = 0; i < rep.torsion_type.invariants.size(); ++i)
			os << (i ? "," : "") << rep.torsion_type.invariants[i];
		os << "\n";
		bool all = rep.torsion_identity_ok && rep.exponent_bound_ok && rep.order_bound_ok &&
			   rep.coprime_bound_ok && rep.m_d_exponent_ok && rep.m_d_lagrangian_ok;
		os << "checks=" << (all ? "ok" : "FAIL") << "\n";
		emit(cfg, os.str());
	}
	return 0;
}

// full invariant sweep for one n; depth >= 2 adds the matrix-group layer
int cmd_verify(const Config& cfg) {
	long depth = cfg.d < 0 ? 2 : cfg.d;
	Int n(cfg.n);
	std::vector<std::string> failures;
	ModuliOptions opt = moduli_options(cfg);
	std::vector<ModuliClass> classes = enumerate_classes(n, opt);
	Int counted = count_classes(n, opt);
	if (counted != Int((long)classes.size()))
		failures.push_back("class count mismatch");
	for (const ModuliClass& c : classes) {
		if (!validate(c.representative).ok)
			failures.push_back("invalid representative: " + c.label);
		if (!is_n_subsymplectic(c.representative, n))
			failures.push_back("representative outside scope: " + c.label);
		if (c.label.rfind("raw[", 0) == 0)
			failures.push_back("unlabeled class of order " + c.order.get_str());
	}
	ModuliGraph g = build_graph(n, opt);
	for (const ModuliEdge& e : g.edges) {
		Isometry w{g.nodes[e.from].representative, g.nodes[e.to].representative, e.witness};
		if (!isometry_witness_ok(w, false))
			failures.push_back("bad edge witness");
	}
	long checks = (long)classes.size() + (long)g.edges.size() + 1;
	if (depth >= 2 && cfg.n <= 12) {
		for (const AbelianType& b : abelian_types_of_order(n)) {
			MonomialGroup h = build_model(b, model_limit(cfg));
			if (character_norm_sq(h) != 1)
				failures.push_back("model is not irreducible");
			MonomialGroup un = extended_centralizer(h, n);
			if (un.elements.size() != h.elements.size())
				failures.push_back("model is not its own extended centralizer");
			PairingData pd = commutator_pairing(h);
			if (!find_isometry(pd.module, standard_S(b)))
				failures.push_back("model pairing is not the full form");
			++checks;
			for (Int d = 1; d <= n; ++d) {
				if (n % d != 0)
					continue;
				CentralizerReport rep = d_centralizer_report(h, d);
				if (!(rep.torsion_identity_ok && rep.exponent_bound_ok && rep.order_bound_ok &&
				      rep.coprime_bound_ok && rep.m_d_exponent_ok && rep.m_d_lagrangian_ok))
					failures.push_back("centralizer report check failed at d=" + d.get_str());
				++checks;
			}
		}
	}
	if (!failures.empty()) {
		std::ostringstream os;
		if (cfg.format == "json") {
			json out = {{"n", cfg.n}, {"verified", false}, {"failures", failures}};
			emit(cfg, out.dump(2));
		} else {
			os << "verify failed:\n";
			for (const std::string& f : failures)
				os << "  " << f << "\n";
			emit(cfg, os.str());
		}
		return 3;
	}
	if (cfg.format == "json")
		emit(cfg, json{{"n", cfg.n}, {"verified", true}, {"checks", checks}}.dump(2));
	else {
		std::ostringstream os;
		os << "verified n=" << cfg.n << " classes=" << classes.size() << " checks=" << checks << "\n";
		emit(cfg, os.str());
	}
	return 0;
}

} // namespace

int main(int argc, char** argv) {
	Config cfg;
	CLI::App app{"altmod: finite alternate modules, their moduli, and monomial models"};
	app.require_subcommand(1);

	CLI::App* c_enum = app.add_subcommand("enumerate", "list the isometry classes for n");
	c_enum->add_option("--n", cfg.n, "scope parameter")->required();
	add_common(c_enum, cfg);

	CLI::App* c_count = app.add_subcommand("count", "count the isometry classes for n");
	c_count->add_option("--n", cfg.n, "scope parameter")->required();
	add_common(c_count, cfg);

	CLI::App* c_graph = app.add_subcommand("graph", "inclusion graph of the classes for n");
	c_graph->add_option("--n", cfg.n, "scope parameter")->required();
	add_common(c_graph, cfg);

	CLI::App* c_iso = app.add_subcommand("isometry", "test two module files for isometry");
	c_iso->add_option("left", cfg.left, "module JSON file")->required();
	c_iso->add_option("right", cfg.right, "module JSON file")->required();
	add_common(c_iso, cfg);

	CLI::App* c_model = app.add_subcommand("model", "monomial matrix model for a group type");
	c_model->add_option("--invariants", cfg.invariants, "invariant factors, e.g. 2,4")->required();
	add_common(c_model, cfg);

	CLI::App* c_dc = app.add_subcommand("dcentralizer", "centralizer report for a model");
	c_dc->add_option("--invariants", cfg.invariants, "invariant factors, e.g. 2,4")->required();
	c_dc->add_option("--d", cfg.d, "divisor of n (default n)");
	add_common(c_dc, cfg);

	CLI::App* c_verify = app.add_subcommand("verify", "run the invariant suite for n");
	c_verify->add_option("--n", cfg.n, "scope parameter")->required();
	c_verify->add_option("--d", cfg.d, "verification depth (default 2)");
	add_common(c_verify, cfg);

	try {
		app.parse(argc, argv);
	} catch (const CLI::CallForHelp& e) {
		return app.exit(e);
	} catch (const CLI::ParseError& e) {
		error_json("usage", e.what());
		return 2;
	}

	if (cfg.max_order == 0)
		if (const char* env = std::getenv("ALTMOD_MAX_ORDER")) {
			char* end = nullptr;
			long v = std::strtol(env, &end, 10);
			if (end && *end == '\0' && v > 0)
				cfg.max_order = v;
		}

	try {
		if (c_enum->parsed())
			return cmd_enumerate(cfg);
		if (c_count->parsed())
			return cmd_count(cfg);
		if (c_graph->parsed())
			return cmd_graph(cfg);
		if (c_iso->parsed())
			return cmd_isometry(cfg);
		if (c_model->parsed())
			return cmd_model(cfg);
		if (c_dc->parsed())
			return cmd_dcentralizer(cfg);
		if (c_verify->parsed())
			return cmd_verify(cfg);
		error_json("usage", "no subcommand given");
		return 2;
	} catch (const scale_limit_error& e) {
		error_json("scale", e.what());
		return 4;
	} catch (const invalid_argument& e) {
		error_json("usage", e.what());
		return 2;
	} catch (const certificate_error& e) {
		error_json("internal", e.what());
		return 1;
	} catch (const std::exception& e) {
		error_json("internal", e.what());
		return 1;
	}
}
