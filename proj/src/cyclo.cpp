#include "altmod/cyclo.hpp"
#include "altmod/errors.hpp"
#include <algorithm>
#include <cassert>
#include <map>
#include <mutex>
#include <numeric>
#include <unordered_map>
#include <unordered_set>

namespace altmod {

long euler_phi(long m) {
	assert(m >= 1);
	long r = m;
	for (long p = 2; p * p <= m; p++) {
		if (m % p) continue;
		r -= r / p;
		while (m % p == 0) m /= p;
	}
	if (m > 1) r -= r / m;
	return r;
}

namespace {

// polynomial helpers on ascending-degree Int vectors
std::vector<Int> poly_div_exact(std::vector<Int> num, const std::vector<Int>& den) {
	// exact division of monic-ish integer polynomials (den monic up to sign)
	assert(!den.empty() && abs(den.back()) == 1);
	int dn = (int)num.size() - 1, dd = (int)den.size() - 1;
	assert(dn >= dd);
	std::vector<Int> q(dn - dd + 1, 0);
	for (int k = dn - dd; k >= 0; k--) {
		Int f = num[k + dd] / den[dd];
		q[k] = f;
		if (f == 0) continue;
		for (int j = 0; j <= dd; j++) num[k + j] -= f * den[j];
	}
	for (const Int& x : num) { assert(x == 0); (void)x; }
	return q;
}

std::map<long, std::vector<Int>>& phi_cache() {
	static std::map<long, std::vector<Int>> c;
	return c;
}
std::mutex& cyc_mutex() {
	static std::mutex mu;
	return mu;
}

std::vector<Int> cyclotomic_polynomial_nolock(long m) {
	auto& cache = phi_cache();
	auto it = cache.find(m);
	if (it != cache.end()) return it->second;
	// x^m - 1 divided by Phi_d for all proper divisors d
	std::vector<Int> poly(m + 1, 0);
	poly[0] = -1;
	poly[m] = 1;
	for (long d = 1; d < m; d++) {
		if (m % d) continue;
		poly = poly_div_exact(poly, cyclotomic_polynomial_nolock(d));
	}
	cache[m] = poly;
	return poly;
}

// reduction table: x^j mod Phi_m for 0 <= j < max(m, 2*phi(m)-1)
struct ReductionTable {
	long m;
	long phi;
	std::vector<std::vector<Int>> pow; // pow[j] has size phi
};

const ReductionTable& table_for(long m) {
	static std::map<long, ReductionTable> tables;
	std::lock_guard<std::mutex> lock(cyc_mutex());
	auto it = tables.find(m);
	if (it != tables.end()) return it->second;
	ReductionTable t;
	t.m = m;
	t.phi = euler_phi(m);
	auto cp = cyclotomic_polynomial_nolock(m);
	long hi = std::max(m, 2 * t.phi - 1);
	t.pow.resize(hi);
	for (long j = 0; j < hi; j++) {
		if (j < t.phi) {
			t.pow[j].assign(t.phi, 0);
			t.pow[j][j] = 1;
			continue;
		}
		// x^j = x * x^(j-1), then reduce the leading term by Phi_m
		std::vector<Int> v(t.phi + 1, 0);
		for (long k = 0; k < t.phi; k++) v[k + 1] = t.pow[j - 1][k];
		if (v[t.phi] != 0) {
			Int lead = v[t.phi];
			for (long k = 0; k < t.phi; k++) v[k] -= lead * cp[k];
		}
		v.resize(t.phi);
		t.pow[j] = std::move(v);
	}
	return tables.emplace(m, std::move(t)).first->second;
}

constexpr long kRootOrderCap = 1'000'000;

} // namespace

std::vector<Int> cyclotomic_polynomial(long m) {
	if (m < 1) throw invalid_argument("cyclotomic_polynomial: m must be >= 1");
	std::lock_guard<std::mutex> lock(cyc_mutex());
	return cyclotomic_polynomial_nolock(m);
}

Cyclotomic cyc_rational(long m, const Rat& q) {
	Cyclotomic z;
	z.m = m;
	z.c.assign(euler_phi(m), Rat(0));
	z.c[0] = q;
	return z;
}

Cyclotomic root_power(long m, long k) {
	if (m < 1) throw invalid_argument("root_power: m must be >= 1");
	const auto& t = table_for(m);
	long j = ((k % m) + m) % m;
	Cyclotomic z;
	z.m = m;
	z.c.assign(t.phi, Rat(0));
	for (long i = 0; i < t.phi; i++) z.c[i] = Rat(t.pow[j][i]);
	return z;
}

Cyclotomic promote(const Cyclotomic& a, long M) {
	if (M == a.m) return a;
	if (M % a.m != 0) throw invalid_argument("promote: target order not a multiple");
	const auto& t = table_for(M);
	long s = M / a.m;
	Cyclotomic z;
	z.m = M;
	z.c.assign(t.phi, Rat(0));
	for (size_t j = 0; j < a.c.size(); j++) {
		if (a.c[j] == 0) continue;
		const auto& row = t.pow[(long)j * s];
		for (long i = 0; i < t.phi; i++)
			if (row[i] != 0) z.c[i] += a.c[j] * Rat(row[i]);
	}
	return z;
}

namespace {

long common_order(const Cyclotomic& a, const Cyclotomic& b) {
	long l = std::lcm(a.m, b.m);
	if (l > kRootOrderCap) throw scale_limit_error("cyclotomic root order exceeds cap");
	return l;
}

} // namespace

Cyclotomic cyc_add(const Cyclotomic& a, const Cyclotomic& b) {
	long l = common_order(a, b);
	Cyclotomic x = promote(a, l), y = promote(b, l);
	for (size_t i = 0; i < x.c.size(); i++) x.c[i] += y.c[i];
	return x;
}

Cyclotomic cyc_sub(const Cyclotomic& a, const Cyclotomic& b) {
	long l = common_order(a, b);
	Cyclotomic x = promote(a, l), y = promote(b, l);
	for (size_t i = 0; i < x.c.size(); i++) x.c[i] -= y.c[i];
	return x;
}

Cyclotomic cyc_neg(const Cyclotomic& a) {
	Cyclotomic z = a;
	for (auto& q : z.c) q = -q;
	return z;
}

Cyclotomic cyc_mul(const Cyclotomic& a, const Cyclotomic& b) {
	long l = common_order(a, b);
	Cyclotomic x = promote(a, l), y = promote(b, l);
	const auto& t = table_for(l);
	long phi = t.phi;
	std::vector<Rat> conv(2 * phi - 1, Rat(0));
	for (long i = 0; i < phi; i++) {
		if (x.c[i] == 0) continue;
		for (long j = 0; j < phi; j++) {
			if (y.c[j] == 0) continue;
			conv[i + j] += x.c[i] * y.c[j];
		}
	}
	Cyclotomic z;
	z.m = l;
	z.c.assign(phi, Rat(0));
	for (long k = 0; k < phi; k++) z.c[k] = conv[k];
	for (long k = phi; k < 2 * phi - 1; k++) {
		if (conv[k] == 0) continue;
		const auto& row = t.pow[k];
		for (long i = 0; i < phi; i++)
			if (row[i] != 0) z.c[i] += conv[k] * Rat(row[i]);
	}
	return z;
}

bool cyc_is_zero(const Cyclotomic& a) {
	for (const auto& q : a.c)
		if (q != 0) return false;
	return true;
}

bool cyc_equal(const Cyclotomic& a, const Cyclotomic& b) { return cyc_is_zero(cyc_sub(a, b)); }

Cyclotomic conjugate(const Cyclotomic& a) {
	const auto& t = table_for(a.m);
	Cyclotomic z;
	z.m = a.m;
	z.c.assign(t.phi, Rat(0));
	for (size_t j = 0; j < a.c.size(); j++) {
		if (a.c[j] == 0) continue;
		long e = (long)((a.m - 1) * (long)j % a.m); // x^j -> x^(-j)
		const auto& row = t.pow[e];
		for (long i = 0; i < t.phi; i++)
			if (row[i] != 0) z.c[i] += a.c[j] * Rat(row[i]);
	}
	return z;
}

std::optional<Rat> as_rational(const Cyclotomic& a) {
	for (size_t i = 1; i < a.c.size(); i++)
		if (a.c[i] != 0) return std::nullopt;
	return a.c.empty() ? Rat(0) : a.c[0];
}

std::optional<Int> as_rational_integer(const Cyclotomic& a) {
	auto q = as_rational(a);
	if (!q) return std::nullopt;
	Rat r = *q;
	r.canonicalize();
	if (r.get_den() != 1) return std::nullopt;
	return Int(r.get_num());
}

LinearSolution solve_linear_sparse(std::vector<SparseRow> rows, RatVec rhs, int ncols) {
	assert(rows.size() == rhs.size());
	int nrows = (int)rows.size();
	// normalize rows: combine duplicate columns, drop zeros
	auto compact = [](SparseRow& r) {
		std::sort(r.begin(), r.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
		SparseRow out;
		for (auto& [col, val] : r) {
			if (!out.empty() && out.back().first == col) out.back().second += val;
			else out.push_back({col, val});
		}
		out.erase(std::remove_if(out.begin(), out.end(), [](const auto& p) { return p.second == 0; }),
		          out.end());
		r = std::move(out);
	};
	for (auto& r : rows) compact(r);

	std::vector<std::unordered_set<int>> col_rows(ncols); // rows with a nonzero in this col
	for (int i = 0; i < nrows; i++)
		for (auto& [col, val] : rows[i]) col_rows[col].insert(i);

	std::vector<char> processed(nrows, 0);
	std::vector<int> pivot_col_of_row(nrows, -1);
	std::vector<int> pivot_row_of_col(ncols, -1);

	auto row_coeff = [&](int i, int col) -> Rat {
		for (auto& [c, v] : rows[i])
			if (c == col) return v;
		return Rat(0);
	};

	for (;;) {
		// shortest unprocessed nonzero row
		int best = -1;
		size_t best_len = 0;
		for (int i = 0; i < nrows; i++) {
			if (processed[i] || rows[i].empty()) continue;
			if (best < 0 || rows[i].size() < best_len) { best = i; best_len = rows[i].size(); }
		}
		if (best < 0) break;
		// in that row, the column present in fewest other rows
		int pcol = -1;
		size_t pcol_load = 0;
		for (auto& [col, val] : rows[best]) {
			size_t load = col_rows[col].size();
			if (pcol < 0 || load < pcol_load) { pcol = col; pcol_load = load; }
		}
		Rat pval = row_coeff(best, pcol);
		// eliminate pcol from every other row (full Gauss-Jordan)
		auto victims = col_rows[pcol]; // copy: we mutate the index inside
		for (int i : victims) {
			if (i == best) continue;
			Rat f = row_coeff(i, pcol) / pval;
			// row_i -= f * row_best
			SparseRow merged;
			merged.reserve(rows[i].size() + rows[best].size());
			size_t a = 0, b = 0;
			while (a < rows[i].size() || b < rows[best].size()) {
				int ca = a < rows[i].size() ? rows[i][a].first : ncols;
				int cb = b < rows[best].size() ? rows[best][b].first : ncols;
				if (ca < cb) {
					merged.push_back(rows[i][a++]);
				} else if (cb < ca) {
					Rat nv = -f * rows[best][b].second;
					if (nv != 0) {
						merged.push_back({cb, nv});
						col_rows[cb].insert(i);
					}
					b++;
				} else {
					Rat nv = rows[i][a].second - f * rows[best][b].second;
					if (nv != 0) merged.push_back({ca, nv});
					else col_rows[ca].erase(i);
					a++;
					b++;
				}
			}
			rows[i] = std::move(merged);
			rhs[i] -= f * rhs[best];
		}
		processed[best] = 1;
		pivot_col_of_row[best] = pcol;
		pivot_row_of_col[pcol] = best;
	}

	LinearSolution sol;
	// consistency: a zero row with nonzero rhs
	for (int i = 0; i < nrows; i++)
		if (rows[i].empty() && rhs[i] != 0) { sol.consistent = false; return sol; }
	sol.consistent = true;
	sol.particular.assign(ncols, Rat(0));
	for (int i = 0; i < nrows; i++) {
		if (pivot_col_of_row[i] < 0) continue;
		// after Jordan elimination the row holds only its pivot and free cols
		sol.particular[pivot_col_of_row[i]] = rhs[i] / row_coeff(i, pivot_col_of_row[i]);
	}
	for (int col = 0; col < ncols; col++) {
		if (pivot_row_of_col[col] >= 0) continue; // bound variable
		RatVec v(ncols, Rat(0));
		v[col] = 1;
		for (int i : col_rows[col]) {
			int pc = pivot_col_of_row[i];
			assert(pc >= 0);
			v[pc] = -row_coeff(i, col) / row_coeff(i, pc);
		}
		sol.nullspace.push_back(std::move(v));
	}
	return sol;
}

LinearSolution solve_linear(const RatMat& a, const RatVec& b) {
	int nrows = (int)a.size();
	int ncols = nrows ? (int)a[0].size() : 0;
	std::vector<SparseRow> rows(nrows);
	for (int i = 0; i < nrows; i++) {
		assert((int)a[i].size() == ncols);
		for (int j = 0; j < ncols; j++)
			if (a[i][j] != 0) rows[i].push_back({j, a[i][j]});
	}
	return solve_linear_sparse(std::move(rows), b, ncols);
}

} // namespace altmod
