#include "altmod/matgrp.hpp"
#include "altmod/errors.hpp"
#include <algorithm>
#include <cassert>
#include <functional>
#include <numeric>
#include <queue>

namespace altmod {

static int mod_pos(long v, long m) {
	long r = v % m;
	if (r < 0)
		r += m;
	return (int)r;
}

MonomialMatrix monomial_identity(int n) {
	MonomialMatrix a;
	a.n = n;
	a.perm.resize(n);
	a.exps.assign(n, 0);
	for (int j = 0; j < n; ++j)
		a.perm[j] = j;
	return a;
}

MonomialMatrix make_monomial(int n, std::vector<int> perm, std::vector<int> exps) {
	if (n <= 0 || (int)perm.size() != n || (int)exps.size() != n)
		throw invalid_argument("make_monomial: bad dimensions");
	std::vector<bool> seen(n, false);
	for (int p : perm) {
		if (p < 0 || p >= n || seen[p])
			throw invalid_argument("make_monomial: not a permutation");
		seen[p] = true;
	}
	MonomialMatrix a;
	a.n = n;
	a.perm = std::move(perm);
	a.exps = std::move(exps);
	for (int& e : a.exps)
		e = mod_pos(e, 2 * n);
	return a;
}

MonomialMatrix scalar_monomial(int n, int exp) {
	MonomialMatrix a = monomial_identity(n);
	a.exps.assign(n, mod_pos(exp, 2 * n));
	return a;
}

bool operator==(const MonomialMatrix& a, const MonomialMatrix& b) {
	return a.n == b.n && a.perm == b.perm && a.exps == b.exps;
}

bool operator!=(const MonomialMatrix& a, const MonomialMatrix& b) {
	return !(a == b);
}

bool monomial_less(const MonomialMatrix& a, const MonomialMatrix& b) {
	assert(a.n == b.n);
	if (a.perm != b.perm)
		return a.perm < b.perm;
	return a.exps < b.exps;
}

MonomialKey monomial_key(const MonomialMatrix& a) {
	return {a.perm, a.exps};
}

MonomialMatrix monomial_mul(const MonomialMatrix& a, const MonomialMatrix& b) {
	assert(a.n == b.n);
	int n = a.n;
	MonomialMatrix c;
	c.n = n;
	c.perm.resize(n);
	c.exps.resize(n);
	for (int j = 0; j < n; ++j) {
		c.perm[j] = a.perm[b.perm[j]];
		c.exps[j] = mod_pos((long)b.exps[j] + a.exps[b.perm[j]], 2 * n);
	}
	return c;
}

MonomialMatrix monomial_inverse(const MonomialMatrix& a) {
	int n = a.n;
	MonomialMatrix b;
	b.n = n;
	b.perm.resize(n);
	b.exps.resize(n);
	for (int k = 0; k < n; ++k) {
		b.perm[a.perm[k]] = k;
		b.exps[a.perm[k]] = mod_pos(-(long)a.exps[k], 2 * n);
	}
	return b;
}

MonomialMatrix monomial_power(const MonomialMatrix& a, const Int& k) {
	Int e = k;
	MonomialMatrix base = a;
	if (e < 0) {
		base = monomial_inverse(a);
		e = -e;
	}
	MonomialMatrix acc = monomial_identity(a.n);
	while (e > 0) {
		if (mpz_odd_p(e.get_mpz_t()))
			acc = monomial_mul(acc, base);
		base = monomial_mul(base, base);
		e /= 2;
	}
	return acc;
}

std::optional<int> scalar_exponent(const MonomialMatrix& a) {
	for (int j = 0; j < a.n; ++j)
		if (a.perm[j] != j || a.exps[j] != a.exps[0])
			return std::nullopt;
	return a.exps[0];
}

int monomial_order(const MonomialMatrix& a) {
	MonomialMatrix p = a;
	MonomialMatrix id = monomial_identity(a.n);
	int t = 1;
	while (!(p == id)) {
		p = monomial_mul(p, a);
		++t;
		if (t > 100000)
			throw certificate_error("monomial_order: runaway power sequence");
	}
	return t;
}

int det_exponent(const MonomialMatrix& a) {
	int n = a.n;
	// sign of the permutation, folded into mu_{2n} via -1 = zeta_{2n}^n
	std::vector<bool> seen(n, false);
	int cycles = 0;
	for (int j = 0; j < n; ++j) {
		if (seen[j])
			continue;
		++cycles;
		int k = j;
		while (!seen[k]) {
			seen[k] = true;
			k = a.perm[k];
		}
	}
	long total = (long)(n - cycles) * n;
	for (int e : a.exps)
		total += e;
	return mod_pos(total, 2 * n);
}

Cyclotomic monomial_trace(const MonomialMatrix& a) {
	Cyclotomic t = cyc_rational(2 * a.n, Rat(0));
	for (int j = 0; j < a.n; ++j)
		if (a.perm[j] == j)
			t = cyc_add(t, root_power(2 * a.n, a.exps[j]));
	return t;
}

int element_index(const MonomialGroup& g, const MonomialMatrix& x) {
	auto it = std::lower_bound(g.elements.begin(), g.elements.end(), x, monomial_less);
	if (it != g.elements.end() && *it == x)
		return (int)(it - g.elements.begin());
	return -1;
}

MonomialGroup closure(int n, const std::vector<MonomialMatrix>& gens, long limit) {
	for (const MonomialMatrix& g : gens)
		if (g.n != n)
			throw invalid_argument("closure: dimension mismatch");
	std::map<MonomialKey, int> seen;
	std::vector<MonomialMatrix> elems;
	elems.push_back(monomial_identity(n));
	seen[monomial_key(elems[0])] = 0;
	for (size_t head = 0; head < elems.size(); ++head)
		for (const MonomialMatrix& g : gens) {
			MonomialMatrix w = monomial_mul(elems[head], g);
			MonomialKey k = monomial_key(w);
			if (seen.count(k))
				continue;
			if ((long)elems.size() >= limit)
				throw scale_limit_error("closure: element limit exceeded");
			seen[k] = (int)elems.size();
			elems.push_back(w);
		}
	std::sort(elems.begin(), elems.end(), monomial_less);
	MonomialGroup out;
	out.n = n;
	out.elements = std::move(elems);
	out.generators = gens;
	return out;
}

ClockShiftPair clock_shift(const Int& n_, const Int& d_) {
	if (n_ < 1 || d_ < 1 || n_ % d_ != 0)
		throw invalid_argument("clock_shift: d must divide n");
	long n = n_.get_si();
	long d = d_.get_si();
	long k = n / d;
	// lambda makes both determinants one; it is forced away from 1 exactly
	// when d is even and the block size is odd
	long lam = (d % 2 == 0 && k % 2 == 1) ? mod_pos(k * (d - 1), 2 * n) : 0;
	MonomialMatrix u = monomial_identity((int)n);
	for (long j = 0; j < n; ++j)
		u.exps[j] = mod_pos(lam + 2 * k * (j / k), 2 * n);
	MonomialMatrix m;
	m.n = (int)n;
	m.perm.resize(n);
	m.exps.assign(n, (int)lam);
	for (long j = 0; j < n; ++j)
		m.perm[j] = (int)((j + k) % n);
	if (det_exponent(u) != 0 || det_exponent(m) != 0)
		throw certificate_error("clock_shift: determinant normalization failed");
	return {u, m};
}

// I_d tensor g, with root exponents promoted from mu_{2k} to mu_{2dk}
static MonomialMatrix block_embed(const MonomialMatrix& g, long d) {
	long k = g.n;
	long n = d * k;
	MonomialMatrix out;
	out.n = (int)n;
	out.perm.resize(n);
	out.exps.resize(n);
	for (long b = 0; b < d; ++b)
		for (long s = 0; s < k; ++s) {
			out.perm[b * k + s] = (int)(b * k + g.perm[s]);
			out.exps[b * k + s] = mod_pos((long)g.exps[s] * d, 2 * n);
		}
	return out;
}

static std::vector<MonomialMatrix> model_generators(const std::vector<Int>& inv) {
	if (inv.empty())
		return {};
	long d = inv.back().get_si();
	Int nn = 1;
	for (const Int& v : inv)
		nn *= v;
	std::vector<Int> rest(inv.begin(), inv.end() - 1);
	std::vector<MonomialMatrix> out;
	for (const MonomialMatrix& g : model_generators(rest))
		out.push_back(block_embed(g, d));
	ClockShiftPair cs = clock_shift(nn, d);
	out.push_back(cs.u);
	out.push_back(cs.m);
	return out;
}

MonomialGroup build_model(const AbelianType& b, long limit) {
	Int order = b.order();
	if (order > 12)
		throw scale_limit_error("build_model: group order exceeds the supported scale");
	long n = order.get_si();
	std::vector<MonomialMatrix> gens = model_generators(b.invariants);
	gens.push_back(scalar_monomial((int)n, 2));
	for (const MonomialMatrix& g : gens)
		if (det_exponent(g) != 0)
			throw certificate_error("build_model: generator outside the determinant-one group");
	MonomialGroup h = closure((int)n, gens, limit);
	if ((long)h.elements.size() != n * n * n)
		throw certificate_error("build_model: group order is not n^3");
	return h;
}

long commutant_dimension(const MonomialGroup& h) {
	int n = h.n;
	int m = 2 * n;
	long phi = euler_phi(m);
	const std::vector<MonomialMatrix>& gens = h.generators.empty() ? h.elements : h.generators;
	// multiplication by zeta^c as a rational phi x phi matrix on the power basis
	std::vector<std::vector<std::vector<Rat>>> mul(m);
	for (int c = 0; c < m; ++c) {
		mul[c].assign(phi, std::vector<Rat>(phi));
		for (long t = 0; t < phi; ++t) {
			Cyclotomic p = root_power(m, c + t);
			for (long s = 0; s < phi; ++s)
				mul[c][s][t] = p.c[s];
		}
	}
	auto var = [&](int i, int j, long t) { return ((long)i * n + j) * phi + t; };
	std::vector<SparseRow> rows;
	for (const MonomialMatrix& g : gens) {
		std::vector<int> inv(n);
		for (int j = 0; j < n; ++j)
			inv[g.perm[j]] = j;
		for (int i = 0; i < n; ++i)
			for (int j = 0; j < n; ++j) {
				// x_{i, sigma(j)} zeta^{e_j} = zeta^{e_{sigma^{-1}(i)}} x_{sigma^{-1}(i), j}
				int a = i, b = g.perm[j], c1 = g.exps[j];
				int a2 = inv[i], b2 = j, c2 = g.exps[inv[i]];
				for (long s = 0; s < phi; ++s) {
					std::map<long, Rat> row;
					for (long t = 0; t < phi; ++t) {
						if (mul[c1][s][t] != 0)
							row[var(a, b, t)] += mul[c1][s][t];
						if (mul[c2][s][t] != 0)
							row[var(a2, b2, t)] -= mul[c2][s][t];
					}
					SparseRow r;
					for (const auto& [col, val] : row)
						if (val != 0)
							r.push_back({(int)col, val});
					if (!r.empty())
						rows.push_back(std::move(r));
				}
			}
	}
	long ncols = (long)n * n * phi;
	LinearSolution sol = solve_linear_sparse(rows, RatVec(rows.size(), Rat(0)), (int)ncols);
	assert(sol.consistent);
	long nullity = (long)sol.nullspace.size();
	if (nullity % phi != 0)
		throw certificate_error("commutant_dimension: nullity is not a multiple of the field degree");
	return nullity / phi;
}

Int character_norm_sq(const MonomialGroup& h) {
	int m = 2 * h.n;
	Cyclotomic acc = cyc_rational(m, Rat(0));
	for (const MonomialMatrix& g : h.elements)
		acc = cyc_add(acc, cyc_mul(monomial_trace(g), monomial_trace(monomial_inverse(g))));
	acc = cyc_mul(acc, cyc_rational(m, Rat(1) / Rat((long)h.elements.size())));
	std::optional<Int> v = as_rational_integer(acc);
	if (!v)
		throw certificate_error("character_norm_sq: the averaged norm is not a rational integer");
	return *v;
}

namespace {

// cosets of the scalar subgroup <xi^shift I> inside a monomial group
struct ScalarQuotient {
	int n = 0;
	int shift = 1;
	std::vector<MonomialMatrix> reps;
	std::map<MonomialKey, int> ids;

	MonomialMatrix canonical(const MonomialMatrix& x) const {
		int ord = n / std::gcd(n, shift);
		MonomialMatrix best = x;
		for (int t = 1; t < ord; ++t) {
			MonomialMatrix y = monomial_mul(scalar_monomial(n, 2 * shift * t), x);
			if (monomial_less(y, best))
				best = y;
		}
		return best;
	}
	int id_of(const MonomialMatrix& x) const {
		auto it = ids.find(monomial_key(canonical(x)));
		return it == ids.end() ? -1 : it->second;
	}
	int mul(int a, int b) const {
		int r = id_of(monomial_mul(reps[a], reps[b]));
		assert(r >= 0);
		return r;
	}
};

ScalarQuotient make_quotient(const MonomialGroup& u, int shift) {
	ScalarQuotient q;
	q.n = u.n;
	q.shift = shift;
	for (const MonomialMatrix& x : u.elements) {
		MonomialMatrix c = q.canonical(x);
		MonomialKey k = monomial_key(c);
		if (!q.ids.count(k)) {
			q.ids[k] = (int)q.reps.size();
			q.reps.push_back(c);
		}
	}
	return q;
}

struct QuotientCoordinates {
	AbelianType type;               // invariant factors, ascending
	std::vector<int> generator_ids; // one coset per factor
	std::map<int, IntVec> coords;   // coset id -> coordinates
};

// invariant factors and an explicit basis of a finite abelian quotient,
// found by descending-order search with direct-span certificates
QuotientCoordinates coordinatize(const ScalarQuotient& q) {
	int N = (int)q.reps.size();
	int id1 = q.id_of(monomial_identity(q.n));
	assert(id1 >= 0);
	std::vector<int> order(N);
	for (int a = 0; a < N; ++a) {
		int p = a, t = 1;
		while (p != id1) {
			p = q.mul(p, a);
			++t;
			assert(t <= N);
		}
		order[a] = t;
	}
	for (int a = 0; a < N; ++a)
		for (int b = a + 1; b < N; ++b)
			if (q.mul(a, b) != q.mul(b, a))
				throw invalid_argument("coordinatize: quotient is not abelian");
	// p-part of the type from the order statistics, one prime at a time
	std::vector<long> primes;
	for (long v = N, p = 2; p <= v; ++p)
		if (v % p == 0) {
			primes.push_back(p);
			while (v % p == 0)
				v /= p;
		}
	std::vector<std::vector<long>> pexp; // descending exponent lists per prime
	for (long p : primes) {
		std::vector<long> counts; // #{x : ord(x) | p^k}
		counts.push_back(1);
		for (long pk = p;; pk *= p) {
			long c = 0;
			for (int a = 0; a < N; ++a)
				if (pk % order[a] == 0)
					++c;
			counts.push_back(c);
			if (c == counts[counts.size() - 2])
				break;
		}
		std::vector<long> m; // m_k = #factors with exponent >= k
		for (size_t k = 1; k < counts.size(); ++k) {
			long ratio = counts[k] / counts[k - 1];
			assert(counts[k] % counts[k - 1] == 0);
			long e = 0;
			while (ratio > 1) {
				assert(ratio % p == 0);
				ratio /= p;
				++e;
			}
			m.push_back(e);
		}
		std::vector<long> exps;
		for (long j = 0;; ++j) {
			long e = 0;
			for (long mk : m)
				if (mk > j)
					++e;
			if (e == 0)
				break;
			exps.push_back(e);
		}
		pexp.push_back(exps); // descending by construction
	}
	size_t rank = 0;
	for (const auto& e : pexp)
		rank = std::max(rank, e.size());
	std::vector<Int> desc(rank, 1); // invariant factors, largest first
	for (size_t pi = 0; pi < primes.size(); ++pi)
		for (size_t j = 0; j < pexp[pi].size(); ++j)
			for (long t = 0; t < pexp[pi][j]; ++t)
				desc[j] *= primes[pi];
	QuotientCoordinates out;
	out.type.invariants.assign(desc.rbegin(), desc.rend());
	assert(out.type.order() == N);
	out.generator_ids.assign(rank, -1);
	std::map<int, IntVec> span;
	span[id1] = IntVec(rank, 0);
	std::function<bool(size_t)> place = [&](size_t level) -> bool {
		if (level == rank)
			return (int)span.size() == N;
		long d = desc[level].get_si();
		size_t slot = rank - 1 - level;
		for (int cand = 0; cand < N; ++cand) {
			if (order[cand] != d)
				continue;
			bool independent = true;
			int p = cand;
			for (long j = 1; j < d && independent; ++j) {
				if (span.count(p))
					independent = false;
				p = q.mul(p, cand);
			}
			if (!independent)
				continue;
			std::map<int, IntVec> saved = span;
			int xj = cand;
			for (long j = 1; j < d; ++j) {
				for (const auto& [s, c] : saved) {
					IntVec nc = c;
					nc[slot] = j;
					int ns = q.mul(s, xj);
					assert(!span.count(ns));
					span[ns] = nc;
				}
				xj = q.mul(xj, cand);
			}
			out.generator_ids[slot] = cand;
			if (place(level + 1))
				return true;
			span = std::move(saved);
		}
		return false;
	};
	if (!place(0))
		throw certificate_error("coordinatize: no basis realizes the computed type");
	out.coords = std::move(span);
	return out;
}

// scalar value of a commutator, as an exponent of xi = zeta_n
int commutator_xi_exponent(const MonomialMatrix& a, const MonomialMatrix& b) {
	MonomialMatrix c = monomial_mul(monomial_mul(a, b), monomial_mul(monomial_inverse(a), monomial_inverse(b)));
	std::optional<int> s = scalar_exponent(c);
	if (!s)
		throw invalid_argument("commutators must be scalar");
	if (*s % 2 != 0)
		throw certificate_error("commutator scalar escapes the determinant-one constraint");
	return *s / 2;
}

} // namespace

MonomialGroup extended_centralizer(const MonomialGroup& h, const Int& d_) {
	int n = h.n;
	if (d_ < 1 || Int(n) % d_ != 0)
		throw invalid_argument("extended_centralizer: d must divide n");
	long d = d_.get_si();
	if (character_norm_sq(h) != 1)
		throw invalid_argument("extended_centralizer: the group must act irreducibly");
	const std::vector<MonomialMatrix>& gens = h.generators.empty() ? h.elements : h.generators;
	// derived subgroup <xi^g I>
	long gshift = n;
	for (size_t i = 0; i < gens.size(); ++i)
		for (size_t j = i + 1; j < gens.size(); ++j)
			gshift = std::gcd(gshift, (long)mod_pos(commutator_xi_exponent(gens[i], gens[j]), n));
	if (gshift == 0)
		gshift = n;
	ScalarQuotient hab = make_quotient(h, (int)gshift);
	QuotientCoordinates hc = coordinatize(hab);
	size_t rank = hc.type.invariants.size();
	std::vector<IntVec> gen_coords;
	for (const MonomialMatrix& g : gens) {
		int id = hab.id_of(g);
		assert(id >= 0);
		gen_coords.push_back(hc.coords.at(id));
	}
	// orbits of positions (i,j) -> (sigma i, sigma j), with transport weights
	int nn = n * n;
	struct Edge {
		int to, gen, base, sign;
	};
	std::vector<std::vector<Edge>> adj(nn);
	for (size_t gi = 0; gi < gens.size(); ++gi) {
		const MonomialMatrix& g = gens[gi];
		for (int a = 0; a < n; ++a)
			for (int j = 0; j < n; ++j) {
				int from = a * n + j;
				int to = g.perm[a] * n + g.perm[j];
				int base = mod_pos((long)g.exps[a] - g.exps[j], 2 * n);
				adj[from].push_back({to, (int)gi, base, 1});
				adj[to].push_back({from, (int)gi, base, -1});
			}
	}
	std::vector<std::vector<int>> components;
	{
		std::vector<int> comp(nn, -1);
		for (int s = 0; s < nn; ++s) {
			if (comp[s] >= 0)
				continue;
			std::vector<int> nodes{s};
			comp[s] = (int)components.size();
			for (size_t head = 0; head < nodes.size(); ++head)
				for (const Edge& e : adj[nodes[head]])
					if (comp[e.to] < 0) {
						comp[e.to] = (int)components.size();
						nodes.push_back(e.to);
					}
			components.push_back(std::move(nodes));
		}
	}
	// twisted characters: images of the quotient basis in Z/d
	std::vector<long> radix(rank), step(rank);
	for (size_t i = 0; i < rank; ++i) {
		long delta = hc.type.invariants[i].get_si();
		radix[i] = std::gcd(delta, d);
		step[i] = d / radix[i];
	}
	std::vector<MonomialMatrix> solutions;
	std::vector<long> digits(rank, 0);
	while (true) {
		// character value per generator, as an exponent of zeta_{2n}
		std::vector<int> chi(gens.size());
		for (size_t j = 0; j < gens.size(); ++j) {
			long acc = 0;
			for (size_t i = 0; i < rank; ++i)
				acc += digits[i] * step[i] * gen_coords[j][i].get_si();
			chi[j] = mod_pos(2 * (n / d) * (acc % d), 2 * n);
		}
		// transport potentials on each orbit; at most one stays consistent
		std::vector<int> pot(nn, -1);
		int consistent = -1;
		int count = 0;
		for (const auto& nodes : components) {
			bool ok = true;
			for (int x : nodes)
				pot[x] = -1;
			pot[nodes[0]] = 0;
			std::vector<int> queue{nodes[0]};
			for (size_t head = 0; head < queue.size() && ok; ++head) {
				int x = queue[head];
				for (const Edge& e : adj[x]) {
					int w = mod_pos((long)e.sign * (e.base + chi[e.gen]), 2 * n);
					int want = mod_pos((long)pot[x] + w, 2 * n);
					if (pot[e.to] < 0) {
						pot[e.to] = want;
						queue.push_back(e.to);
					} else if (pot[e.to] != want) {
						ok = false;
						break;
					}
				}
			}
			if (!ok)
				continue;
			++count;
			if (count > 1)
				throw certificate_error("extended_centralizer: two independent intertwiners");
			consistent = (int)(&nodes - &components[0]);
		}
		if (consistent >= 0) {
			// re-run transport on the surviving orbit to recover values
			const auto& nodes = components[consistent];
			for (int x : nodes)
				pot[x] = -1;
			pot[nodes[0]] = 0;
			std::vector<int> queue{nodes[0]};
			for (size_t head = 0; head < queue.size(); ++head)
				for (const Edge& e : adj[queue[head]]) {
					int w = mod_pos((long)e.sign * (e.base + chi[e.gen]), 2 * n);
					if (pot[e.to] < 0) {
						pot[e.to] = mod_pos((long)pot[queue[head]] + w, 2 * n);
						queue.push_back(e.to);
					}
				}
			std::vector<int> row_of(n, -1), exps(n, -1);
			bool perm_ok = ((int)nodes.size() == n);
			for (int x : nodes) {
				int i = x / n, j = x % n;
				if (row_of[j] >= 0)
					perm_ok = false;
				else {
					row_of[j] = i;
					exps[j] = pot[x];
				}
			}
			std::vector<bool> hit(n, false);
			for (int j = 0; j < n && perm_ok; ++j) {
				if (row_of[j] < 0 || hit[row_of[j]])
					perm_ok = false;
				else
					hit[row_of[j]] = true;
			}
			if (!perm_ok)
				throw certificate_error("extended_centralizer: intertwiner support is not invertible");
			MonomialMatrix u = make_monomial(n, row_of, exps);
			int dexp = det_exponent(u);
			if (dexp % n != 0)
				throw certificate_error("extended_centralizer: determinant cannot be normalized");
			if (dexp != 0)
				u = monomial_mul(scalar_monomial(n, 1), u); // shifts det by zeta^n = -1
			if (det_exponent(u) != 0)
				throw certificate_error("extended_centralizer: determinant normalization failed");
			for (size_t j = 0; j < gens.size(); ++j) {
				MonomialMatrix lhs = monomial_mul(u, gens[j]);
				MonomialMatrix rhs = monomial_mul(scalar_monomial(n, chi[j]), monomial_mul(gens[j], u));
				if (lhs != rhs)
					throw certificate_error("extended_centralizer: solution fails its defining relation");
			}
			solutions.push_back(u);
		}
		// next character
		size_t i = 0;
		while (i < rank && ++digits[i] == radix[i]) {
			digits[i] = 0;
			++i;
		}
		if (i == rank)
			break;
		if (rank == 0)
			break;
	}
	std::vector<MonomialMatrix> ugens = solutions;
	ugens.push_back(scalar_monomial(n, 2));
	MonomialGroup ud = closure(n, ugens, 100000);
	if ((long)ud.elements.size() != (long)n * (long)solutions.size())
		throw certificate_error("extended_centralizer: order bookkeeping failed");
	return ud;
}

PairingData commutator_pairing(const MonomialGroup& u) {
	int n = u.n;
	MonomialGroup probe = u;
	if (element_index(probe, scalar_monomial(n, 2)) < 0)
		throw invalid_argument("commutator_pairing: the scalar subgroup is missing");
	const std::vector<MonomialMatrix>& gens = u.generators.empty() ? u.elements : u.generators;
	for (size_t i = 0; i < gens.size(); ++i)
		for (size_t j = i + 1; j < gens.size(); ++j)
			commutator_xi_exponent(gens[i], gens[j]); // throws unless scalar
	ScalarQuotient q = make_quotient(u, 1);
	if ((long)q.reps.size() * n != (long)u.elements.size())
		throw invalid_argument("commutator_pairing: scalar cosets are not uniform");
	QuotientCoordinates qc = coordinatize(q);
	size_t rank = qc.type.invariants.size();
	Int N = qc.type.exponent();
	std::vector<MonomialMatrix> lifts;
	for (size_t i = 0; i < rank; ++i)
		lifts.push_back(q.reps[qc.generator_ids[i]]);
	auto gram_of = [&](const std::vector<MonomialMatrix>& L) {
		IntMat g(rank, IntVec(rank, 0));
		for (size_t i = 0; i < rank; ++i)
			for (size_t j = 0; j < rank; ++j) {
				long c = mod_pos(commutator_xi_exponent(L[i], L[j]), n);
				Int num = Int(c) * N;
				if (num % n != 0)
					throw certificate_error("commutator_pairing: value outside the expected lattice");
				g[i][j] = mod_floor(num / n, N);
			}
		return g;
	};
	IntMat gram = gram_of(lifts);
	// the pairing must not depend on the chosen lifts
	std::vector<MonomialMatrix> shifted;
	for (size_t i = 0; i < rank; ++i)
		shifted.push_back(monomial_mul(scalar_monomial(n, 2 * (int)(i + 1)), lifts[i]));
	if (gram_of(shifted) != gram)
		throw certificate_error("commutator_pairing: value depends on the lift");
	// bilinearity spot check on all basis triples
	for (size_t i = 0; i < rank; ++i)
		for (size_t j = 0; j < rank; ++j)
			for (size_t k = 0; k < rank; ++k) {
				long lhs = mod_pos(commutator_xi_exponent(monomial_mul(lifts[i], lifts[j]), lifts[k]), n);
				long rhs = mod_pos(commutator_xi_exponent(lifts[i], lifts[k]) +
						    commutator_xi_exponent(lifts[j], lifts[k]), n);
				if (lhs != rhs)
					throw certificate_error("commutator_pairing: pairing is not bilinear");
			}
	PairingData out;
	out.module = make_module(qc.type, gram);
	out.generator_lifts = lifts;
	for (const auto& [id, coords] : qc.coords)
		out.coset_coords[monomial_key(q.reps[id])] = coords;
	return out;
}

ConjugacyShape conjugacy_shape(const MonomialMatrix& g) {
	int n = g.n;
	long m2 = 2 * n;
	MonomialMatrix p = g;
	long d = 1;
	while (true) {
		std::optional<int> s = scalar_exponent(p);
		if (s && *s % 2 == 0)
			break;
		p = monomial_mul(p, g);
		++d;
		if (d > 100000)
			throw certificate_error("conjugacy_shape: no power lands in the scalars");
	}
	if (n % d != 0)
		throw certificate_error("conjugacy_shape: scalar period does not divide the dimension");
	// eigenvalues cycle by cycle
	std::vector<bool> seen(n, false);
	std::vector<std::pair<long, long>> cycles; // (length, exponent sum)
	long L = 1;
	for (int j = 0; j < n; ++j) {
		if (seen[j])
			continue;
		long len = 0, sum = 0;
		int k = j;
		while (!seen[k]) {
			seen[k] = true;
			sum += g.exps[k];
			k = g.perm[k];
			++len;
		}
		cycles.push_back({len, sum});
		L = std::lcm(L, len);
	}
	long M = m2 * L;
	std::vector<long> exps;
	for (const auto& [len, sum] : cycles)
		for (long k = 0; k < len; ++k)
			exps.push_back(mod_pos((sum % m2 + m2 * k) * (M / (m2 * len)), M));
	std::sort(exps.begin(), exps.end());
	long lam = exps[0];
	std::vector<long> expected;
	for (long t = 0; t < d; ++t)
		for (long c = 0; c < n / d; ++c)
			expected.push_back(mod_pos(lam + t * (M / d), M));
	std::sort(expected.begin(), expected.end());
	if (expected != exps)
		throw certificate_error("conjugacy_shape: eigenvalues are not one uniform scalar coset");
	bool in_xi = (lam % (M / n) == 0);
	if (!in_xi) {
		long lam2 = mod_pos(lam + ((n / d) * (d - 1) % m2) * (M / m2), M);
		if (lam2 % (M / n) != 0)
			throw certificate_error("conjugacy_shape: coset representative misses both branches");
	}
	ConjugacyShape out;
	out.d = d;
	out.root_order = M;
	for (long e : exps)
		out.eigenvalue_exponents.push_back(e);
	out.lambda_in_xi = in_xi;
	return out;
}

CentralizerReport d_centralizer_report(const MonomialGroup& h, const Int& d_) {
	int n = h.n;
	if (d_ < 1 || Int(n) % d_ != 0)
		throw invalid_argument("d_centralizer_report: d must divide n");
	long d = d_.get_si();
	MonomialGroup un = extended_centralizer(h, Int(n));
	MonomialGroup ud = extended_centralizer(h, d_);
	PairingData pd = commutator_pairing(un);
	CentralizerReport rep;
	rep.d = d_;
	rep.z_order = Int((long)ud.elements.size()) / d_;
	// exponent of U_d modulo the order-d scalars
	long shift = n / d;
	Int zexp = 1;
	for (const MonomialMatrix& x : ud.elements) {
		MonomialMatrix p = x;
		long t = 1;
		while (true) {
			std::optional<int> s = scalar_exponent(p);
			if (s && *s % 2 == 0 && (*s / 2) % shift == 0)
				break;
			p = monomial_mul(p, x);
			++t;
			if (t > 100000)
				throw certificate_error("d_centralizer_report: runaway element order");
		}
		zexp = lcm(zexp, Int(t));
	}
	rep.z_exponent = zexp;
	// image of U_d in the pairing coordinates
	const AbelianType& a = pd.module.group;
	ScalarQuotient canon;
	canon.n = n;
	canon.shift = 1;
	std::vector<IntVec> img;
	for (const MonomialMatrix& x : ud.elements) {
		auto it = pd.coset_coords.find(monomial_key(canon.canonical(x)));
		if (it == pd.coset_coords.end())
			throw certificate_error("d_centralizer_report: U_d escapes U_n");
		img.push_back(it->second);
	}
	Subgroup image = subgroup_from_generators(a, img);
	// d-torsion of the pairing group
	std::vector<IntVec> tgens;
	for (size_t i = 0; i < a.invariants.size(); ++i) {
		IntVec v(a.invariants.size(), 0);
		v[i] = a.invariants[i] / gcd(d_, a.invariants[i]);
		tgens.push_back(v);
	}
	Subgroup torsion = subgroup_from_generators(a, tgens);
	rep.torsion_identity_ok = (image == torsion);
	rep.torsion_type = subgroup_smith_basis(image).type;
	rep.m_d = restrict_module(pd.module, image);
	rep.m_d_lagrangian = lagrangian(rep.m_d).second;
	Int n3 = Int(n) * n * n;
	rep.exponent_bound_ok = (lcm(Int(shift), d_) % rep.z_exponent == 0);
	rep.order_bound_ok = ((n3 / d_) % rep.z_order == 0);
	rep.coprime_bound_ok = gcd(Int(shift), d_) != 1 || (Int(n) * d_) % rep.z_order == 0;
	rep.m_d_exponent_ok = (d_ % rep.torsion_type.exponent() == 0);
	rep.m_d_lagrangian_ok = (Int(n) % rep.m_d_lagrangian == 0);
	return rep;
}

ExtensionIsomorphism extension_isomorphism(const MonomialGroup& u1, const MonomialGroup& u2,
					    const Isometry& iso) {
	if (u1.n != u2.n)
		throw invalid_argument("extension_isomorphism: dimension mismatch");
	int n = u1.n;
	PairingData p1 = commutator_pairing(u1);
	PairingData p2 = commutator_pairing(u2);
	if (!(iso.source == p1.module) || !(iso.target == p2.module))
		throw invalid_argument("extension_isomorphism: isometry does not match the pairings");
	if (!isometry_witness_ok(iso, true))
		throw invalid_argument("extension_isomorphism: witness is not a bijective isometry");
	const std::vector<Int>& inv = p1.module.group.invariants;
	size_t rank = inv.size();
	// scalar of each source generator's defining power
	std::vector<long> s1(rank);
	for (size_t i = 0; i < rank; ++i) {
		std::optional<int> s = scalar_exponent(monomial_power(p1.generator_lifts[i], inv[i]));
		if (!s || *s % 2 != 0)
			throw certificate_error("extension_isomorphism: source lift power is not scalar");
		s1[i] = mod_pos(*s / 2, n);
	}
	// target lifts matched power-for-power
	std::vector<MonomialMatrix> vlift(rank);
	for (size_t i = 0; i < rank; ++i) {
		MonomialMatrix v0 = monomial_identity(n);
		for (size_t j = 0; j < rank; ++j)
			v0 = monomial_mul(v0, monomial_power(p2.generator_lifts[j], iso.matrix[i][j]));
		std::optional<int> s = scalar_exponent(monomial_power(v0, inv[i]));
		if (!s || *s % 2 != 0)
			throw certificate_error("extension_isomorphism: image lift power is not scalar");
		long s0 = mod_pos(*s / 2, n);
		long di = inv[i].get_si();
		long g = std::gcd(di, (long)n);
		if ((s1[i] - s0) % g != 0)
			throw certificate_error("extension_isomorphism: no scalar-compatible lift for a generator");
		long k = 0;
		while (mod_pos(k * di + s0 - s1[i], n) != 0)
			++k;
		vlift[i] = monomial_mul(scalar_monomial(n, 2 * (int)k), v0);
	}
	// canonical sections g_r^{a_r} ... g_1^{a_1} on both sides
	std::map<MonomialKey, std::pair<int, IntVec>> table1;
	std::vector<IntVec> coords_list;
	IntVec a(rank, 0);
	while (true) {
		coords_list.push_back(a);
		size_t i = 0;
		while (i < rank && ++a[i] == inv[i]) {
			a[i] = 0;
			++i;
		}
		if (i == rank)
			break;
		if (rank == 0)
			break;
	}
	auto section = [&](const std::vector<MonomialMatrix>& lifts, const IntVec& c) {
		MonomialMatrix x = monomial_identity(n);
		for (size_t i = rank; i > 0; --i)
			x = monomial_mul(x, monomial_power(lifts[i - 1], c[i - 1]));
		return x;
	};
	for (const IntVec& c : coords_list) {
		MonomialMatrix base = section(p1.generator_lifts, c);
		for (int t = 0; t < n; ++t) {
			MonomialMatrix x = monomial_mul(scalar_monomial(n, 2 * t), base);
			if (!table1.emplace(monomial_key(x), std::make_pair(t, c)).second)
				throw certificate_error("extension_isomorphism: sections collide");
		}
	}
	if (table1.size() != u1.elements.size())
		throw certificate_error("extension_isomorphism: sections do not cover the group");
	ExtensionIsomorphism out;
	std::map<MonomialKey, int> index1;
	for (size_t i = 0; i < u1.elements.size(); ++i)
		index1[monomial_key(u1.elements[i])] = (int)i;
	std::vector<MonomialMatrix> images(u1.elements.size());
	for (size_t i = 0; i < u1.elements.size(); ++i) {
		auto it = table1.find(monomial_key(u1.elements[i]));
		assert(it != table1.end());
		const auto& [t, c] = it->second;
		MonomialMatrix y = monomial_mul(scalar_monomial(n, 2 * t), section(vlift, c));
		int idx = element_index(u2, y);
		if (idx < 0)
			throw certificate_error("extension_isomorphism: image escapes the target group");
		images[i] = y;
		out.image.push_back(idx);
	}
	// verified scalar-fixing isomorphism
	{
		std::vector<bool> hit(u2.elements.size(), false);
		for (int idx : out.image) {
			if (hit[idx])
				throw certificate_error("extension_isomorphism: map is not injective");
			hit[idx] = true;
		}
		int xi1 = index1.at(monomial_key(scalar_monomial(n, 2)));
		if (!(images[xi1] == scalar_monomial(n, 2)))
			throw certificate_error("extension_isomorphism: the scalar generator moves");
		for (size_t x = 0; x < u1.elements.size(); ++x)
			for (size_t y = 0; y < u1.elements.size(); ++y) {
				MonomialMatrix prod = monomial_mul(u1.elements[x], u1.elements[y]);
				int pi = index1.at(monomial_key(prod));
				if (!(monomial_mul(images[x], images[y]) == images[pi]))
					throw certificate_error("extension_isomorphism: homomorphism check failed");
			}
	}
	return out;
}

} // namespace altmod
