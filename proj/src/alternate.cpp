#include "altmod/alternate.hpp"
#include "altmod/errors.hpp"
#include <algorithm>
#include <cassert>
#include <sstream>

namespace altmod {

bool operator==(const AlternateModule& a, const AlternateModule& b) {
	return a.group == b.group && a.denom == b.denom && a.gram == b.gram;
}

ValidationReport validate(const AlternateModule& m) {
	int r = m.group.rank();
	const Int& n = m.denom;
	ValidationReport rep;
	auto fail = [&](const std::string& what, int i, int j) {
		rep.ok = false;
		std::ostringstream os;
		os << what << " at (" << i + 1 << "," << j + 1 << ")";
		rep.message = os.str();
		return rep;
	};
	if (n != m.group.exponent()) {
		rep.ok = false;
		rep.message = "denominator is not the group exponent";
		return rep;
	}
	if ((int)m.gram.size() != r) {
		rep.ok = false;
		rep.message = "gram matrix rank mismatch";
		return rep;
	}
	for (int i = 0; i < r; i++)
		if ((int)m.gram[i].size() != r) {
			rep.ok = false;
			rep.message = "gram matrix not square";
			return rep;
		}
	for (int i = 0; i < r; i++)
		if (mod_floor(m.gram[i][i], n) != 0) return fail("nonzero diagonal", i, i);
	for (int i = 0; i < r; i++)
		for (int j = 0; j < i; j++)
			if (mod_floor(m.gram[i][j] + m.gram[j][i], n) != 0)
				return fail("antisymmetry violated", i, j);
	for (int i = 0; i < r; i++)
		for (int j = 0; j < r; j++) {
			if (mod_floor(m.group.invariants[i] * m.gram[i][j], n) != 0)
				return fail("form not well defined on generator orders", i, j);
		}
	return rep;
}

AlternateModule make_module(AbelianType group, IntMat gram) {
	AlternateModule m;
	m.denom = group.exponent();
	m.group = std::move(group);
	int r = m.group.rank();
	if ((int)gram.size() != r) throw invalid_argument("gram matrix rank mismatch");
	for (auto& row : gram) {
		if ((int)row.size() != r) throw invalid_argument("gram matrix not square");
		for (auto& x : row) x = mod_floor(x, m.denom);
	}
	m.gram = std::move(gram);
	auto rep = validate(m);
	if (!rep.ok) throw invalid_argument("invalid alternate module: " + rep.message);
	return m;
}

Int module_order(const AlternateModule& m) { return m.group.order(); }

Int form_value(const AlternateModule& m, const GroupElement& a, const GroupElement& b) {
	int r = m.group.rank();
	assert((int)a.size() == r && (int)b.size() == r);
	Int v = 0;
	for (int i = 0; i < r; i++) {
		if (a[i] == 0) continue;
		for (int j = 0; j < r; j++) {
			if (b[j] == 0 || m.gram[i][j] == 0) continue;
			v += a[i] * m.gram[i][j] * b[j];
		}
	}
	return mod_floor(v, m.denom);
}

namespace {

// {x in A : mat * x = 0 (mod N)} as a subgroup of A
Subgroup solve_mod_subgroup(const AbelianType& t, const IntMat& mat, const Int& N) {
	int r = t.rank();
	if (r == 0) return full_subgroup(t);
	auto snf = smith_normal_form(mat);
	// x = right * w, constraint sigma_i * w_i = 0 mod N
	IntMat cols(r, IntVec(2 * r, 0));
	for (int j = 0; j < r; j++) {
		Int sigma = snf.diagonal[j][j];
		Int step = N / gcd(sigma, N);
		for (int i = 0; i < r; i++) cols[i][j] = snf.right[i][j] * step;
	}
	for (int i = 0; i < r; i++) cols[i][r + i] = t.invariants[i];
	return Subgroup{t, hnf_column_basis(cols)};
}

} // namespace

Subgroup radical(const AlternateModule& m) {
	return solve_mod_subgroup(m.group, mat_transpose(m.gram), m.denom);
}

Subgroup orthogonal_complement(const AlternateModule& m, const Subgroup& s) {
	assert(s.parent == m.group);
	int r = m.group.rank();
	if (r == 0) return full_subgroup(m.group);
	// phi(x, col_j(basis)) = 0 for all j  <=>  (basis^T gram^T) x = 0 mod N
	IntMat c = mat_mul(mat_transpose(s.basis), mat_transpose(m.gram));
	return solve_mod_subgroup(m.group, c, m.denom);
}

std::pair<Subgroup, Int> lagrangian(const AlternateModule& m) {
	Subgroup l = radical(m);
	Int rad_order = l.order();
	int r = m.group.rank();
	auto elements = all_elements(m.group);
	for (const auto& a : elements) {
		if (subgroup_contains(l, a)) continue;
		bool orth = true;
		for (int j = 0; j < r && orth; j++) {
			GroupElement col(r);
			for (int i = 0; i < r; i++) col[i] = l.basis[i][j];
			if (form_value(m, a, normalize_coords(m.group, col)) != 0) orth = false;
		}
		if (!orth) continue;
		std::vector<GroupElement> gens;
		for (int j = 0; j < r; j++) {
			GroupElement col(r);
			for (int i = 0; i < r; i++) col[i] = l.basis[i][j];
			gens.push_back(normalize_coords(m.group, col));
		}
		gens.push_back(a);
		l = subgroup_from_generators(m.group, gens);
	}
	Int lo = l.order();
	if (lo * lo != module_order(m) * rad_order)
		throw certificate_error("lagrangian order identity |L|^2 = |A||K| failed");
	return {l, lo};
}

bool is_n_subsymplectic(const AlternateModule& m, const Int& n) {
	Int nm = lagrangian(m).second;
	return n % nm == 0;
}

namespace {

struct SearchSetup {
	const AlternateModule& src;
	const AlternateModule& tgt;
	bool surjective;
	std::vector<GroupElement> tgt_elements;
	std::vector<GroupElement> chosen; // by source generator index; empty = unset
};

// phi_src(i, j) = phi_tgt(x, y) as elements of Q/Z
bool form_match(const AlternateModule& src, const AlternateModule& tgt, const Int& sv,
                const Int& tv) {
	return mod_floor(sv * tgt.denom - tv * src.denom, src.denom * tgt.denom) == 0;
}

bool extend(SearchSetup& ctx, int pos) {
	int r = ctx.src.group.rank();
	if (pos < 0) return true;
	const Int& d = ctx.src.group.invariants[pos];
	// partial span size must multiply by exactly d at each level for the map
	// to stay injective
	Int want = 1;
	std::vector<GroupElement> picked;
	for (int i = pos; i < r; i++)
		if (i != pos) {
			want *= ctx.src.group.invariants[i];
			picked.push_back(ctx.chosen[i]);
		}
	want *= d;
	for (const auto& cand : ctx.tgt_elements) {
		if (scale_coords(ctx.tgt.group, d, cand) != GroupElement(ctx.tgt.group.rank(), 0))
			continue; // image order must divide d
		bool ok = true;
		for (int i = pos + 1; i < r && ok; i++) {
			Int sv = ctx.src.gram[pos][i];
			Int tv = form_value(ctx.tgt, cand, ctx.chosen[i]);
			if (!form_match(ctx.src, ctx.tgt, sv, tv)) ok = false;
		}
		if (!ok) continue;
		picked.push_back(cand);
		if (subgroup_from_generators(ctx.tgt.group, picked).order() == want) {
			ctx.chosen[pos] = cand;
			if (extend(ctx, pos - 1)) return true;
		}
		picked.pop_back();
	}
	return false;
}

std::optional<Isometry> search(const AlternateModule& m1, const AlternateModule& m2,
                               bool surjective) {
	SearchSetup ctx{m1, m2, surjective, all_elements(m2.group), {}};
	ctx.chosen.assign(m1.group.rank(), {});
	// generators processed by decreasing order d_i (storage is ascending)
	if (!extend(ctx, m1.group.rank() - 1)) return std::nullopt;
	Isometry w;
	w.source = m1;
	w.target = m2;
	w.matrix.resize(m1.group.rank());
	for (int i = 0; i < m1.group.rank(); i++) w.matrix[i] = ctx.chosen[i];
	assert(isometry_witness_ok(w, surjective));
	return w;
}

} // namespace

bool isometry_witness_ok(const Isometry& w, bool require_surjective) {
	int r = w.source.group.rank();
	if ((int)w.matrix.size() != r) return false;
	std::vector<GroupElement> images;
	for (int i = 0; i < r; i++) {
		GroupElement img = normalize_coords(w.target.group, w.matrix[i]);
		// hom well defined: order of image divides generator order
		if (scale_coords(w.target.group, w.source.group.invariants[i], img) !=
		    GroupElement(w.target.group.rank(), 0))
			return false;
		images.push_back(img);
	}
	// injectivity: image subgroup has full source order
	if (subgroup_from_generators(w.target.group, images).order() != w.source.group.order())
		return false;
	if (require_surjective && w.source.group.order() != w.target.group.order()) return false;
	for (int i = 0; i < r; i++)
		for (int j = 0; j < r; j++) {
			Int tv = form_value(w.target, images[i], images[j]);
			if (!form_match(w.source, w.target, w.source.gram[i][j], tv)) return false;
		}
	return true;
}

std::optional<Isometry> find_isometry(const AlternateModule& m1, const AlternateModule& m2) {
	if (m1.group != m2.group) return std::nullopt; // isomorphism type must agree
	auto rad1 = subgroup_smith_basis(radical(m1)).type;
	auto rad2 = subgroup_smith_basis(radical(m2)).type;
	if (rad1 != rad2) return std::nullopt;
	if (lagrangian(m1).second != lagrangian(m2).second) return std::nullopt;
	return search(m1, m2, true);
}

std::optional<Isometry> find_embedding(const AlternateModule& m1, const AlternateModule& m2) {
	if (module_order(m2) % module_order(m1) != 0) return std::nullopt;
	if (m2.group.exponent() % m1.group.exponent() != 0) return std::nullopt;
	return search(m1, m2, false);
}

AlternateModule direct_sum(const AlternateModule& a, const AlternateModule& b) {
	int ra = a.group.rank(), rb = b.group.rank();
	int k = ra + rb;
	Int nblk = lcm(a.denom, b.denom);
	// block gram over the common denominator
	IntMat g = zero_mat(k, k);
	for (int i = 0; i < ra; i++)
		for (int j = 0; j < ra; j++) g[i][j] = a.gram[i][j] * (nblk / a.denom);
	for (int i = 0; i < rb; i++)
		for (int j = 0; j < rb; j++) g[ra + i][ra + j] = b.gram[i][j] * (nblk / b.denom);
	// renormalize the concatenated factors to a divisibility chain
	IntMat c = zero_mat(k, k);
	for (int i = 0; i < ra; i++) c[i][i] = a.group.invariants[i];
	for (int i = 0; i < rb; i++) c[ra + i][ra + i] = b.group.invariants[i];
	auto snf = smith_normal_form(c);
	IntMat linv = mat_inverse_unimodular(snf.left);
	// new generator i = columns of left^{-1}, order = diagonal[i][i]
	IntMat gnew = mat_mul(mat_transpose(linv), mat_mul(g, linv));
	std::vector<Int> inv;
	std::vector<int> keep;
	for (int i = 0; i < k; i++) {
		if (snf.diagonal[i][i] == 1) continue;
		inv.push_back(snf.diagonal[i][i]);
		keep.push_back(i);
	}
	IntMat gk(keep.size(), IntVec(keep.size()));
	for (size_t i = 0; i < keep.size(); i++)
		for (size_t j = 0; j < keep.size(); j++) gk[i][j] = gnew[keep[i]][keep[j]];
	return make_module(make_abelian_type(std::move(inv)), std::move(gk));
}

AlternateModule standard_C(const Int& k) {
	if (k < 1) throw invalid_argument("standard_C: order must be >= 1");
	if (k == 1) return make_module(AbelianType{}, {});
	return make_module(make_abelian_type({k}), {{Int(0)}});
}

AlternateModule standard_S(const AbelianType& b) {
	int k = b.rank();
	if (k == 0) return make_module(AbelianType{}, {});
	std::vector<Int> inv;
	for (int i = 0; i < k; i++) {
		inv.push_back(b.invariants[i]);
		inv.push_back(b.invariants[i]);
	}
	Int n = b.exponent();
	IntMat g = zero_mat(2 * k, 2 * k);
	for (int i = 0; i < k; i++) {
		g[2 * i][2 * i + 1] = n / b.invariants[i];          // phi(b_i, b*_i) = 1/d_i
		g[2 * i + 1][2 * i] = n - n / b.invariants[i];      // antisymmetry
	}
	return make_module(make_abelian_type(std::move(inv)), std::move(g));
}

AlternateModule standard_M(const Int& eprime, const Int& e, const Int& d) {
	if (eprime < 1 || e % eprime != 0 || d % e != 0)
		throw invalid_argument("standard_M: need e' | e | d");
	std::vector<Int> factors = {e, d};
	std::vector<Int> inv;
	for (auto& f : factors)
		if (f > 1) inv.push_back(f);
	if (inv.empty()) return make_module(AbelianType{}, {});
	if (inv.size() == 1) return make_module(make_abelian_type(std::move(inv)), {{Int(0)}});
	IntMat g = zero_mat(2, 2);
	g[0][1] = mod_floor(-d / eprime, d); // phi(g1, g2) = -1/e'
	g[1][0] = d / eprime;
	return make_module(make_abelian_type(std::move(inv)), std::move(g));
}

AlternateModule restrict_module(const AlternateModule& m, const Subgroup& s) {
	assert(s.parent == m.group);
	auto sb = subgroup_smith_basis(s);
	int k = sb.type.rank();
	Int ns = sb.type.exponent();
	IntMat g(k, IntVec(k, 0));
	for (int i = 0; i < k; i++)
		for (int j = 0; j < k; j++) {
			Int v = form_value(m, sb.gens[i], sb.gens[j]);
			Int scaled = v * ns;
			if (scaled % m.denom != 0)
				throw certificate_error("restricted form does not live over the subgroup exponent");
			g[i][j] = mod_floor(scaled / m.denom, ns);
		}
	return make_module(sb.type, std::move(g));
}

std::pair<AlternateModule, Isometry> rank2_squarefree_canonical(const AlternateModule& m,
                                                                const Int& n) {
	// preconditions: n squarefree, rank <= 2, exponent | n, n_M | n
	Int rest = n;
	for (Int p = 2; p * p <= rest; p++) {
		if (rest % p != 0) continue;
		rest /= p;
		if (rest % p == 0) throw invalid_argument("rank2_squarefree_canonical: n not squarefree");
	}
	if (m.group.rank() > 2) throw invalid_argument("rank2_squarefree_canonical: rank must be <= 2");
	if (n % m.group.exponent() != 0)
		throw invalid_argument("rank2_squarefree_canonical: exponent must divide n");
	if (!is_n_subsymplectic(m, n))
		throw invalid_argument("rank2_squarefree_canonical: Lagrangian order must divide n");
	bool zero_form = true;
	for (const auto& row : m.gram)
		for (const auto& x : row)
			if (x != 0) zero_form = false;
	if (m.group.rank() < 2 || zero_form) {
		Isometry id;
		id.source = m;
		id.target = m;
		id.matrix = identity_mat(m.group.rank());
		return {m, id};
	}
	Int e = m.group.invariants[0], d = m.group.invariants[1];
	// the pairing of the two generators has order exactly e
	Int v = m.gram[0][1];
	if (m.denom / gcd(v, m.denom) != e)
		throw certificate_error("rank-2 squarefree pairing order mismatch");
	AlternateModule canon = standard_M(e, e, d);
	auto wit = find_isometry(m, canon);
	if (!wit) throw certificate_error("rank-2 squarefree module not isometric to its standard form");
	return {canon, *wit};
}

} // namespace altmod
