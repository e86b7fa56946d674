#include "altmod/intmat.hpp"
#include "altmod/errors.hpp"
#include <algorithm>
#include <cassert>
#include <cstdlib>

namespace altmod {

IntMat identity_mat(int n) {
	IntMat m(n, IntVec(n, 0));
	for (int i = 0; i < n; i++) m[i][i] = 1;
	return m;
}

IntMat zero_mat(int rows, int cols) { return IntMat(rows, IntVec(cols, 0)); }

IntMat mat_mul(const IntMat& a, const IntMat& b) {
	int n = (int)a.size();
	int k = n ? (int)a[0].size() : 0;
	int m = k ? (int)b[0].size() : (b.empty() ? 0 : (int)b[0].size());
	assert(b.size() == (size_t)k);
	IntMat c(n, IntVec(m, 0));
	for (int i = 0; i < n; i++)
		for (int t = 0; t < k; t++) {
			if (a[i][t] == 0) continue;
			for (int j = 0; j < m; j++) c[i][j] += a[i][t] * b[t][j];
		}
	return c;
}

IntVec mat_vec(const IntMat& a, const IntVec& x) {
	IntVec y(a.size(), 0);
	for (size_t i = 0; i < a.size(); i++) {
		assert(a[i].size() == x.size());
		for (size_t j = 0; j < x.size(); j++) y[i] += a[i][j] * x[j];
	}
	return y;
}

IntMat mat_transpose(const IntMat& a) {
	int n = (int)a.size();
	int m = n ? (int)a[0].size() : 0;
	IntMat t(m, IntVec(n));
	for (int i = 0; i < n; i++)
		for (int j = 0; j < m; j++) t[j][i] = a[i][j];
	return t;
}

Int mat_det(IntMat a) {
	int n = (int)a.size();
	if (n == 0) return 1;
	assert(a[0].size() == (size_t)n);
	// Bareiss fraction-free elimination
	Int prev = 1;
	int sign = 1;
	for (int k = 0; k + 1 < n; k++) {
		if (a[k][k] == 0) {
			int p = -1;
			for (int i = k + 1; i < n; i++)
				if (a[i][k] != 0) { p = i; break; }
			if (p < 0) return 0;
			std::swap(a[k], a[p]);
			sign = -sign;
		}
		for (int i = k + 1; i < n; i++) {
			for (int j = k + 1; j < n; j++) {
				Int num = a[i][j] * a[k][k] - a[i][k] * a[k][j];
				assert(num % prev == 0);
				a[i][j] = num / prev;
			}
			a[i][k] = 0;
		}
		prev = a[k][k];
	}
	return sign > 0 ? a[n - 1][n - 1] : Int(-a[n - 1][n - 1]);
}

IntMat mat_inverse_unimodular(const IntMat& u) {
	int n = (int)u.size();
	// rational Gauss-Jordan; inputs are tiny so exact mpq is cheap
	std::vector<std::vector<Rat>> w(n, std::vector<Rat>(2 * n, 0));
	for (int i = 0; i < n; i++) {
		assert(u[i].size() == (size_t)n);
		for (int j = 0; j < n; j++) w[i][j] = Rat(u[i][j]);
		w[i][n + i] = 1;
	}
	for (int c = 0; c < n; c++) {
		int p = -1;
		for (int i = c; i < n; i++)
			if (w[i][c] != 0) { p = i; break; }
		if (p < 0) throw certificate_error("matrix is singular, expected unimodular");
		std::swap(w[c], w[p]);
		Rat piv = w[c][c];
		for (int j = 0; j < 2 * n; j++) w[c][j] /= piv;
		for (int i = 0; i < n; i++) {
			if (i == c || w[i][c] == 0) continue;
			Rat f = w[i][c];
			for (int j = 0; j < 2 * n; j++) w[i][j] -= f * w[c][j];
		}
	}
	IntMat inv(n, IntVec(n));
	for (int i = 0; i < n; i++)
		for (int j = 0; j < n; j++) {
			Rat q = w[i][n + j];
			q.canonicalize();
			if (q.get_den() != 1)
				throw certificate_error("matrix inverse is not integral, expected unimodular");
			inv[i][j] = q.get_num();
		}
	return inv;
}

Int mod_floor(const Int& a, const Int& m) {
	assert(m > 0);
	Int r;
	mpz_fdiv_r(r.get_mpz_t(), a.get_mpz_t(), m.get_mpz_t());
	return r;
}

namespace {

// helpers operating on a matrix together with its recorded transforms

void row_swap(IntMat& d, IntMat& u, int i, int j) {
	std::swap(d[i], d[j]);
	std::swap(u[i], u[j]);
}
void col_swap(IntMat& d, IntMat& v, int i, int j) {
	for (auto& row : d) std::swap(row[i], row[j]);
	for (auto& row : v) std::swap(row[i], row[j]);
}
void row_addmul(IntMat& d, IntMat& u, int dst, int src, const Int& f) {
	for (size_t j = 0; j < d[dst].size(); j++) d[dst][j] += f * d[src][j];
	for (size_t j = 0; j < u[dst].size(); j++) u[dst][j] += f * u[src][j];
}
void col_addmul(IntMat& d, IntMat& v, int dst, int src, const Int& f) {
	for (auto& row : d) row[dst] += f * row[src];
	for (auto& row : v) row[dst] += f * row[src];
}
void row_negate(IntMat& d, IntMat& u, int i) {
	for (auto& x : d[i]) x = -x;
	for (auto& x : u[i]) x = -x;
}

} // namespace

SmithResult smith_normal_form(const IntMat& a) {
	int r = (int)a.size();
	int c = r ? (int)a[0].size() : 0;
	if (r > 0 && c == 0) c = 0;
	SmithResult s{identity_mat(r), a, identity_mat(c)};
	IntMat& d = s.diagonal;
	int t = 0;
	int lim = std::min(r, c);
	while (t < lim) {
		// locate a nonzero entry of minimal absolute value in the submatrix
		int pi = -1, pj = -1;
		Int best = 0;
		for (int i = t; i < r; i++)
			for (int j = t; j < c; j++) {
				if (d[i][j] == 0) continue;
				Int v = abs(d[i][j]);
				if (pi < 0 || v < best) { best = v; pi = i; pj = j; }
			}
		if (pi < 0) break; // remaining block is zero
		row_swap(d, s.left, t, pi);
		col_swap(d, s.right, t, pj);
		// clear row t and column t
		bool clean = true;
		for (int i = t + 1; i < r; i++) {
			if (d[i][t] == 0) continue;
			Int q;
			mpz_fdiv_q(q.get_mpz_t(), d[i][t].get_mpz_t(), d[t][t].get_mpz_t());
			row_addmul(d, s.left, i, t, -q);
			if (d[i][t] != 0) clean = false;
		}
		for (int j = t + 1; j < c; j++) {
			if (d[t][j] == 0) continue;
			Int q;
			mpz_fdiv_q(q.get_mpz_t(), d[t][j].get_mpz_t(), d[t][t].get_mpz_t());
			col_addmul(d, s.right, j, t, -q);
			if (d[t][j] != 0) clean = false;
		}
		if (!clean) continue; // smaller remainders appeared; repick pivot
		// divisibility: pivot must divide every entry of the rest
		bool divides = true;
		for (int i = t + 1; i < r && divides; i++)
			for (int j = t + 1; j < c; j++)
				if (d[i][j] % d[t][t] != 0) {
					row_addmul(d, s.left, t, i, 1);
					divides = false;
					break;
				}
		if (!divides) continue;
		if (d[t][t] < 0) row_negate(d, s.left, t);
		t++;
	}
	return s;
}

IntMat hnf_column_basis(const IntMat& a) {
	int r = (int)a.size();
	int k = r ? (int)a[0].size() : 0;
	// work on a list of column vectors
	std::vector<IntVec> cols(k, IntVec(r));
	for (int i = 0; i < r; i++)
		for (int j = 0; j < k; j++) cols[j][i] = a[i][j];
	std::vector<IntVec> pivot(r);
	std::vector<int> active(k);
	for (int j = 0; j < k; j++) active[j] = j;
	for (int i = r - 1; i >= 0; i--) {
		// gcd-eliminate row i across the active columns
		for (;;) {
			int q = -1; // column with minimal |entry| in row i
			for (int idx : active) {
				if (cols[idx][i] == 0) continue;
				if (q < 0 || abs(cols[idx][i]) < abs(cols[q][i])) q = idx;
			}
			if (q < 0) throw certificate_error("column lattice is not full rank");
			bool lone = true;
			for (int idx : active) {
				if (idx == q || cols[idx][i] == 0) continue;
				lone = false;
				Int f;
				mpz_fdiv_q(f.get_mpz_t(), cols[idx][i].get_mpz_t(), cols[q][i].get_mpz_t());
				for (int t = 0; t <= i; t++) cols[idx][t] -= f * cols[q][t];
			}
			if (lone) {
				if (cols[q][i] < 0)
					for (auto& x : cols[q]) x = -x;
				pivot[i] = cols[q];
				active.erase(std::find(active.begin(), active.end(), q));
				break;
			}
		}
	}
	IntMat b(r, IntVec(r, 0));
	for (int i = 0; i < r; i++)
		for (int j = 0; j < r; j++) b[j][i] = pivot[i][j]; // pivot[i] is column i
	// reduce entries right of each pivot (column j by column i, i < j)
	for (int i = r - 1; i >= 0; i--)
		for (int j = i + 1; j < r; j++) {
			Int f;
			mpz_fdiv_q(f.get_mpz_t(), b[i][j].get_mpz_t(), b[i][i].get_mpz_t());
			if (f == 0) continue;
			for (int t = 0; t <= i; t++) b[t][j] -= f * b[t][i];
		}
	return b;
}

bool hnf_solve(const IntMat& b, const IntVec& x, IntVec* y) {
	int r = (int)b.size();
	assert(x.size() == (size_t)r);
	IntVec sol(r, 0);
	for (int i = r - 1; i >= 0; i--) {
		Int acc = x[i];
		for (int j = i + 1; j < r; j++) acc -= b[i][j] * sol[j];
		if (acc % b[i][i] != 0) return false;
		sol[i] = acc / b[i][i];
	}
	if (y) *y = sol;
	return true;
}

} // namespace altmod
