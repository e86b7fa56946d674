#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "altmod/cyclo.hpp"
#include "altmod/errors.hpp"

using namespace altmod;

TEST_CASE("euler phi and the divisor-sum identity") {
	CHECK(euler_phi(1) == 1);
	CHECK(euler_phi(2) == 1);
	CHECK(euler_phi(12) == 4);
	CHECK(euler_phi(36) == 12);
	CHECK(euler_phi(97) == 96);
	for (long m : {1L, 2L, 6L, 12L, 30L, 60L}) {
		long sum = 0;
		for (long d = 1; d <= m; ++d)
			if (m % d == 0)
				sum += euler_phi(d);
		CHECK(sum == m);
	}
}

TEST_CASE("cyclotomic polynomials, frozen coefficients") {
	// Phi_1 = x - 1
	CHECK(cyclotomic_polynomial(1) == std::vector<Int>{-1, 1});
	// Phi_8 = x^4 + 1
	CHECK(cyclotomic_polynomial(8) == std::vector<Int>{1, 0, 0, 0, 1});
	// Phi_9 = x^6 + x^3 + 1
	CHECK(cyclotomic_polynomial(9) == std::vector<Int>{1, 0, 0, 1, 0, 0, 1});
	// Phi_12 = x^4 - x^2 + 1
	CHECK(cyclotomic_polynomial(12) == std::vector<Int>{1, 0, -1, 0, 1});
	for (long m : {1L, 4L, 7L, 12L, 15L, 24L})
		CHECK(cyclotomic_polynomial(m).size() == (size_t)euler_phi(m) + 1);
}

TEST_CASE("roots of unity multiply by adding exponents") {
	for (long m : {4L, 6L, 12L}) {
		for (long a = 0; a < m; ++a)
			for (long b = 0; b < m; ++b) {
				Cyclotomic lhs = cyc_mul(root_power(m, a), root_power(m, b));
				CHECK(cyc_equal(lhs, root_power(m, a + b)));
			}
	}
}

TEST_CASE("a root of unity times its conjugate is one") {
	for (long m : {3L, 8L, 12L})
		for (long k = 0; k < m; ++k) {
			Cyclotomic z = root_power(m, k);
			CHECK(cyc_equal(cyc_mul(z, conjugate(z)), cyc_rational(m, Rat(1))));
		}
}

TEST_CASE("promotion between compatible conductors") {
	CHECK(cyc_equal(promote(root_power(6, 1), 12), root_power(12, 2)));
	CHECK(cyc_equal(promote(root_power(4, 1), 12), root_power(12, 3)));
	CHECK(cyc_equal(cyc_add(root_power(4, 1), root_power(6, 1)),
	                cyc_add(root_power(12, 3), root_power(12, 2))));
}

TEST_CASE("sum of all primitive fifth roots is minus one") {
	Cyclotomic s = cyc_rational(5, Rat(0));
	for (long k = 1; k <= 4; ++k)
		s = cyc_add(s, root_power(5, k));
	auto q = as_rational(s);
	REQUIRE(q.has_value());
	CHECK(*q == Rat(-1));
}

TEST_CASE("rational detection") {
	CHECK(as_rational(root_power(8, 1)) == std::nullopt);
	CHECK(as_rational(root_power(8, 4)) == Rat(-1));
	auto n = as_rational_integer(cyc_rational(12, Rat(5)));
	REQUIRE(n.has_value());
	CHECK(*n == 5);
	CHECK(as_rational_integer(cyc_rational(12, Rat(1, 2))) == std::nullopt);
}

TEST_CASE("dense linear solver") {
	RatMat a = {{Rat(1), Rat(1)}, {Rat(1), Rat(-1)}};
	LinearSolution s = solve_linear(a, {Rat(2), Rat(0)});
	REQUIRE(s.consistent);
	CHECK(s.particular == RatVec{Rat(1), Rat(1)});
	CHECK(s.nullspace.empty());

	RatMat b = {{Rat(1), Rat(2)}, {Rat(2), Rat(4)}};
	LinearSolution t = solve_linear(b, {Rat(1), Rat(2)});
	REQUIRE(t.consistent);
	CHECK(t.nullspace.size() == 1);
	// residual of particular and of particular + nullspace vector
	for (int use_null = 0; use_null <= 1; ++use_null) {
		RatVec x = t.particular;
		if (use_null)
			for (size_t i = 0; i < x.size(); ++i)
				x[i] += t.nullspace[0][i];
		for (size_t i = 0; i < b.size(); ++i) {
			Rat acc = -((i == 0) ? Rat(1) : Rat(2));
			for (size_t j = 0; j < x.size(); ++j)
				acc += b[i][j] * x[j];
			CHECK(acc == 0);
		}
	}

	LinearSolution u = solve_linear(b, {Rat(1), Rat(3)});
	CHECK(!u.consistent);
}

TEST_CASE("sparse solver agrees with the dense one") {
	RatMat dense = {
	    {Rat(2), Rat(0), Rat(1)},
	    {Rat(0), Rat(3), Rat(0)},
	    {Rat(2), Rat(3), Rat(1)},
	    {Rat(0), Rat(0), Rat(0)},
	};
	RatVec rhs = {Rat(4), Rat(6), Rat(10), Rat(0)};
	std::vector<SparseRow> rows;
	for (const RatVec& r : dense) {
		SparseRow row;
		for (int j = 0; j < 3; ++j)
			if (r[j] != 0)
				row.push_back({j, r[j]});
		rows.push_back(row);
	}
	LinearSolution a = solve_linear(dense, rhs);
	LinearSolution b = solve_linear_sparse(rows, rhs, 3);
	REQUIRE(a.consistent);
	REQUIRE(b.consistent);
	CHECK(a.nullspace.size() == b.nullspace.size());
	for (size_t i = 0; i < dense.size(); ++i) {
		Rat acc = -rhs[i];
		for (int j = 0; j < 3; ++j)
			acc += dense[i][j] * b.particular[j];
		CHECK(acc == 0);
	}
	// nullspace vectors really annihilate the matrix
	for (const RatVec& v : b.nullspace)
		for (size_t i = 0; i < dense.size(); ++i) {
			Rat acc = 0;
			for (int j = 0; j < 3; ++j)
				acc += dense[i][j] * v[j];
			CHECK(acc == 0);
		}
	// inconsistent sparse system
	LinearSolution c = solve_linear_sparse(rows, {Rat(4), Rat(6), Rat(11), Rat(0)}, 3);
	CHECK(!c.consistent);
}

TEST_CASE("mixing huge coprime conductors trips the scale cap") {
	CHECK_THROWS_AS(cyc_add(root_power(2017, 1), root_power(1999, 1)), scale_limit_error);
}
