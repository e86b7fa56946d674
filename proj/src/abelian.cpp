#include "altmod/abelian.hpp"
#include "altmod/errors.hpp"
#include <algorithm>
#include <cassert>
#include <numeric>

namespace altmod {

Int AbelianType::order() const {
	Int n = 1;
	for (const auto& d : invariants) n *= d;
	return n;
}

Int AbelianType::exponent() const {
	return invariants.empty() ? Int(1) : invariants.back();
}

bool operator==(const AbelianType& a, const AbelianType& b) { return a.invariants == b.invariants; }
bool operator!=(const AbelianType& a, const AbelianType& b) { return !(a == b); }
bool operator<(const AbelianType& a, const AbelianType& b) { return a.invariants < b.invariants; }

AbelianType make_abelian_type(std::vector<Int> invariants) {
	for (size_t i = 0; i < invariants.size(); i++) {
		if (invariants[i] < 2)
			throw invalid_argument("abelian type: invariant factors must be >= 2");
		if (i + 1 < invariants.size() && invariants[i + 1] % invariants[i] != 0)
			throw invalid_argument("abelian type: invariant factors must form a divisibility chain");
	}
	return AbelianType{std::move(invariants)};
}

AbelianType abelian_type_from_factors(const std::vector<Int>& factors) {
	int k = (int)factors.size();
	IntMat diag = zero_mat(k, k);
	for (int i = 0; i < k; i++) {
		if (factors[i] < 1) throw invalid_argument("abelian factors must be >= 1");
		diag[i][i] = factors[i];
	}
	auto snf = smith_normal_form(diag);
	std::vector<Int> inv;
	for (int i = 0; i < k; i++)
		if (snf.diagonal[i][i] > 1) inv.push_back(snf.diagonal[i][i]);
	return make_abelian_type(std::move(inv));
}

GroupElement normalize_coords(const AbelianType& t, GroupElement x) {
	assert(x.size() == t.invariants.size());
	for (size_t i = 0; i < x.size(); i++) x[i] = mod_floor(x[i], t.invariants[i]);
	return x;
}

GroupElement add_coords(const AbelianType& t, const GroupElement& a, const GroupElement& b) {
	GroupElement c(a.size());
	for (size_t i = 0; i < a.size(); i++) c[i] = a[i] + b[i];
	return normalize_coords(t, std::move(c));
}

GroupElement scale_coords(const AbelianType& t, const Int& k, const GroupElement& a) {
	GroupElement c(a.size());
	for (size_t i = 0; i < a.size(); i++) c[i] = k * a[i];
	return normalize_coords(t, std::move(c));
}

Int element_order(const AbelianType& t, const GroupElement& x) {
	Int ord = 1;
	for (size_t i = 0; i < x.size(); i++) {
		Int g = gcd(x[i], t.invariants[i]);
		Int o = t.invariants[i] / g;
		ord = lcm(ord, o);
	}
	return ord;
}

std::vector<GroupElement> all_elements(const AbelianType& t) {
	Int n = t.order();
	if (n > 1000000) throw scale_limit_error("group too large to enumerate elements");
	std::vector<GroupElement> out;
	out.reserve(n.get_ui());
	GroupElement cur(t.invariants.size(), 0);
	for (;;) {
		out.push_back(cur);
		int i = (int)cur.size() - 1;
		while (i >= 0) {
			cur[i] += 1;
			if (cur[i] < t.invariants[i]) break;
			cur[i] = 0;
			i--;
		}
		if (i < 0) break;
	}
	return out;
}

Int Subgroup::order() const {
	Int full = parent.order();
	Int det = 1;
	for (size_t i = 0; i < basis.size(); i++) det *= basis[i][i];
	assert(full % det == 0);
	return full / det;
}

bool operator==(const Subgroup& a, const Subgroup& b) {
	return a.parent == b.parent && a.basis == b.basis;
}
bool operator!=(const Subgroup& a, const Subgroup& b) { return !(a == b); }
bool operator<(const Subgroup& a, const Subgroup& b) {
	if (a.parent != b.parent) return a.parent < b.parent;
	return a.basis < b.basis;
}

namespace {

IntMat diag_of(const AbelianType& t) {
	int r = t.rank();
	IntMat d = zero_mat(r, r);
	for (int i = 0; i < r; i++) d[i][i] = t.invariants[i];
	return d;
}

} // namespace

Subgroup trivial_subgroup(const AbelianType& t) { return Subgroup{t, diag_of(t)}; }

Subgroup full_subgroup(const AbelianType& t) { return Subgroup{t, identity_mat(t.rank())}; }

Subgroup subgroup_from_generators(const AbelianType& t, const std::vector<GroupElement>& gens) {
	int r = t.rank();
	IntMat cols(r, IntVec(gens.size() + r, 0));
	for (size_t j = 0; j < gens.size(); j++) {
		assert((int)gens[j].size() == r);
		for (int i = 0; i < r; i++) cols[i][j] = gens[j][i];
	}
	for (int i = 0; i < r; i++) cols[i][gens.size() + i] = t.invariants[i];
	return Subgroup{t, hnf_column_basis(cols)};
}

bool subgroup_contains(const Subgroup& s, const GroupElement& x) {
	return hnf_solve(s.basis, x);
}

bool subgroup_leq(const Subgroup& a, const Subgroup& b) {
	assert(a.parent == b.parent);
	int r = a.parent.rank();
	for (int j = 0; j < r; j++) {
		IntVec col(r);
		for (int i = 0; i < r; i++) col[i] = a.basis[i][j];
		if (!hnf_solve(b.basis, col)) return false;
	}
	return true;
}

SubgroupBasis subgroup_smith_basis(const Subgroup& s) {
	int r = s.parent.rank();
	// relation matrix: coordinates of D's columns in the basis of L
	IntMat rel = zero_mat(r, r);
	for (int j = 0; j < r; j++) {
		IntVec col(r, 0);
		col[j] = s.parent.invariants[j];
		IntVec y;
		bool ok = hnf_solve(s.basis, col, &y);
		if (!ok) throw certificate_error("subgroup basis does not contain D");
		for (int i = 0; i < r; i++) rel[i][j] = y[i];
	}
	auto snf = smith_normal_form(rel);
	// generators: columns of basis * left^{-1}; generator i has order diag[i][i]
	IntMat linv = mat_inverse_unimodular(snf.left);
	IntMat g = mat_mul(s.basis, linv);
	SubgroupBasis out;
	std::vector<Int> inv;
	for (int i = 0; i < r; i++) {
		const Int& d = snf.diagonal[i][i];
		assert(d >= 1);
		if (d == 1) continue;
		inv.push_back(d);
		IntVec col(r);
		for (int t = 0; t < r; t++) col[t] = g[t][i];
		out.gens.push_back(normalize_coords(s.parent, col));
	}
	out.type = make_abelian_type(std::move(inv));
	return out;
}

std::vector<GroupElement> subgroup_elements(const Subgroup& s) {
	auto sb = subgroup_smith_basis(s);
	Int n = sb.type.order();
	if (n > 1000000) throw scale_limit_error("subgroup too large to enumerate elements");
	std::vector<GroupElement> out;
	out.reserve(n.get_ui());
	int k = sb.type.rank();
	std::vector<Int> alpha(k, 0);
	int r = s.parent.rank();
	for (;;) {
		GroupElement x(r, 0);
		for (int i = 0; i < k; i++)
			for (int t = 0; t < r; t++) x[t] += alpha[i] * sb.gens[i][t];
		out.push_back(normalize_coords(s.parent, std::move(x)));
		int i = k - 1;
		while (i >= 0) {
			alpha[i] += 1;
			if (alpha[i] < sb.type.invariants[i]) break;
			alpha[i] = 0;
			i--;
		}
		if (i < 0) break;
	}
	assert((Int)(long)out.size() == n);
	return out;
}

std::vector<AbelianType> abelian_types_of_order(const Int& n) {
	if (n < 1) throw invalid_argument("abelian_types_of_order: n must be >= 1");
	if (n == 1) return {AbelianType{}};
	// factor n
	std::vector<std::pair<Int, int>> fac;
	Int rest = n;
	for (Int p = 2; p * p <= rest; p++) {
		if (rest % p != 0) continue;
		int e = 0;
		while (rest % p == 0) { rest /= p; e++; }
		fac.push_back({p, e});
	}
	if (rest > 1) fac.push_back({rest, 1});
	// partitions of each exponent, decreasing lexicographic order
	auto partitions = [](int a) {
		std::vector<std::vector<int>> out;
		std::vector<int> cur;
		// standard descending-parts recursion emits decreasing-lex order
		auto rec = [&](auto&& self, int left, int maxpart) -> void {
			if (left == 0) { out.push_back(cur); return; }
			for (int p = std::min(left, maxpart); p >= 1; p--) {
				cur.push_back(p);
				self(self, left - p, p);
				cur.pop_back();
			}
		};
		rec(rec, a, a);
		return out;
	};
	std::vector<std::vector<std::vector<int>>> parts;
	for (auto& [p, e] : fac) parts.push_back(partitions(e));
	// combine: product order, first prime outermost
	std::vector<AbelianType> out;
	std::vector<size_t> idx(fac.size(), 0);
	for (;;) {
		size_t rank = 0;
		for (size_t t = 0; t < fac.size(); t++) rank = std::max(rank, parts[t][idx[t]].size());
		std::vector<Int> inv(rank, 1); // inv[0] = largest
		for (size_t t = 0; t < fac.size(); t++) {
			const auto& lam = parts[t][idx[t]];
			for (size_t i = 0; i < lam.size(); i++) {
				Int pk = 1;
				for (int e = 0; e < lam[i]; e++) pk *= fac[t].first;
				inv[i] *= pk;
			}
		}
		std::reverse(inv.begin(), inv.end()); // ascending
		out.push_back(make_abelian_type(std::move(inv)));
		int t = (int)fac.size() - 1;
		while (t >= 0) {
			idx[t]++;
			if (idx[t] < parts[t].size()) break;
			idx[t] = 0;
			t--;
		}
		if (t < 0) break;
	}
	return out;
}

std::vector<Subgroup> enumerate_subgroups(const AbelianType& t, const Int& order_cap) {
	if (t.order() > order_cap)
		throw scale_limit_error("enumerate_subgroups: group order exceeds the configured cap");
	int r = t.rank();
	std::vector<long> d(r);
	for (int i = 0; i < r; i++) d[i] = t.invariants[i].get_si();
	// divisors of each invariant, ascending
	std::vector<std::vector<long>> divs(r);
	for (int i = 0; i < r; i++)
		for (long q = 1; q <= d[i]; q++)
			if (d[i] % q == 0) divs[i].push_back(q);

	std::vector<Subgroup> out;
	std::vector<std::vector<long>> b(r, std::vector<long>(r, 0)); // candidate basis
	// membership of d_j * e_j in the span of columns 0..j (upper triangular)
	auto column_ok = [&](int j) {
		std::vector<__int128> y(j + 1, 0);
		for (int i = j; i >= 0; i--) {
			__int128 acc = (i == j) ? d[j] : 0;
			for (int k = i + 1; k <= j; k++) acc -= (__int128)b[i][k] * y[k];
			if (acc % b[i][i] != 0) return false;
			y[i] = acc / b[i][i];
		}
		return true;
	};
	auto emit = [&]() {
		IntMat m = zero_mat(r, r);
		for (int i = 0; i < r; i++)
			for (int j = 0; j < r; j++) m[i][j] = b[i][j];
		out.push_back(Subgroup{t, std::move(m)});
	};
	// enumerate column j: pivot b[j][j] | d_j, off-diagonals b[i][j] in [0, b[i][i])
	auto rec = [&](auto&& self, int j) -> void {
		if (j == r) { emit(); return; }
		for (long piv : divs[j]) {
			b[j][j] = piv;
			// mixed-radix walk over the off-diagonal entries of column j
			for (int i = 0; i < j; i++) b[i][j] = 0;
			for (;;) {
				if (column_ok(j)) self(self, j + 1);
				int i = j - 1;
				while (i >= 0) {
					b[i][j] += 1;
					if (b[i][j] < b[i][i]) break;
					b[i][j] = 0;
					i--;
				}
				if (i < 0) break;
			}
		}
		b[j][j] = 0;
	};
	rec(rec, 0);
	return out;
}

AbelianType dual_type(const AbelianType& b) { return b; }

} // namespace altmod
