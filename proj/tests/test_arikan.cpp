/*------------------------------------------------------------------------
arikan unit tests

Copyright 2026 wproc contributors

Licensed under the Apache License,
Version 2.0(the "License");
   you may not use this file except in compliance with the License.
   You may obtain a copy of the License at

       http://www.apache.org/licenses/LICENSE-2.0

   Unless required by applicable law or agreed to in writing, software
   distributed under the License is distributed on an "AS IS" BASIS,
   WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
   See the License for the specific language governing permissions and
   limitations under the License.
--------------------------------------------------------------------------*/
#include <random>

#include "doctest.h"
#include "wproc/arikan.hpp"
#include "wproc/oracle.hpp"

using namespace wproc;

TEST_SUITE("arikan")
{
	TEST_CASE("min-sum primitives")
	{
		OpCounter c;
		CHECK(q_func(0.0, 5.0, c) == 0.0);
		CHECK(q_func(-2.0, 3.0, c) == -2.0);
		CHECK(q_func(1.5, -1.5, c) == -1.5);
		CHECK(c.comparisons == 3);
		CHECK(p_func(2.5, 0.0, 0, c) == 2.5);
		CHECK(p_func(2.0, 1.0, 1, c) == -1.0);
		CHECK(p_func(-0.5, -0.5, 0, c) == -1.0);
		CHECK(c.additions == 3);
	}

	TEST_CASE("penalties and path scores")
	{
		CHECK(tau_penalty(3.0, 0) == 0.0);
		CHECK(tau_penalty(3.0, 1) == -3.0);
		CHECK(tau_penalty(0.0, 1) == 0.0);
		CHECK(tau_penalty(0.0, 0) == 0.0);
		OpCounter c;
		CHECK(path_score_extend(0.0, 3.0, 0, c) == 0.0);
		CHECK(c.additions == 0);
		CHECK(path_score_extend(-1.0, 3.0, 1, c) == -4.0);
		CHECK(c.additions == 1);
		double r = 0;
		const double s[] = {1, -2, 0.5, -0.5};
		for (double x : s)
			r = path_score_extend(r, x, 0, c);
		CHECK(r == doctest::Approx(-2.5));
		// exactly one branch is penalized for s != 0
		for (double x : {-1.25, 0.5, 7.0})
			CHECK(((tau_penalty(x, 0) == 0.0) != (tau_penalty(x, 1) == 0.0)));
	}

	TEST_CASE("ellipsoidal weight")
	{
		CHECK(ellipsoidal_weight({0, 0, 0}, {1, 2, 3}) == 0.0);
		CHECK(ellipsoidal_weight({1, 1}, {1, 2}) == -3.0);
		CHECK_THROWS_AS(ellipsoidal_weight({1}, {1, 2}), Error);
	}

	TEST_CASE("fast Hadamard transform")
	{
		OpCounter c;
		auto all = fht4({1, 1, 1, 1}, 0, c);
		CHECK(all[fht4_index(0, 0, 0)] == 4.0);
		CHECK(c.additions == 8);
		for (double x : fht4({1, 0, 0, 0}, 0, c))
			CHECK(std::fabs(x) == 1.0);
		std::mt19937_64 rng(2);
		std::normal_distribution<double> nd;
		for (int it = 0; it < 100; it++) {
			std::array<Llr, 4> s{nd(rng), nd(rng), nd(rng), nd(rng)};
			for (int first = 0; first < 2; first++) {
				auto h = fht4(s, first, c);
				for (int v1 = 0; v1 < 2; v1++)
					for (int v2 = 0; v2 < 2; v2++)
						for (int v3 = 0; v3 < 2; v3++) {
							Word v = Word(first) | Word(v1) << 1 | Word(v2) << 2 | Word(v3) << 3;
							Word cw = arikan_blocks(v, 2);
							double corr = 0;
							for (int b = 0; b < 4; b++)
								corr += ((cw >> b) & 1) ? -s[std::size_t(b)] : s[std::size_t(b)];
							CHECK(h[std::size_t(fht4_index(v1, v2, v3))] == doctest::Approx(corr));
						}
			}
		}
	}

	TEST_CASE("block penalty degenerate cases")
	{
		CHECK(block_penalty({-1.5}, 1) == 0.0);
		CHECK(block_penalty({-1.5}, 0) == -1.5);
		CHECK(block_penalty({1, -2, 3, -4}, 0) == -6.0);
	}

	TEST_CASE("layered SC costs and values")
	{
		std::mt19937_64 rng(4);
		std::normal_distribution<double> nd(0.5, 1.5);
		for (unsigned t = 1; t <= 5; t++) {
			std::size_t l = std::size_t(1) << t;
			std::vector<Llr> y(l);
			for (auto &x : y)
				x = nd(rng);
			std::vector<int> v(l);
			for (auto &b : v)
				b = int(rng() & 1);
			ArikanSC sc(t);
			sc.load(y);
			OpCounter c;
			Word packed = 0;
			for (std::size_t i = 0; i < l; i++)
				packed |= Word(v[i]) << i;
			auto ref = oracle::path_llrs(y, packed, l - 1);
			for (std::size_t i = 0; i < l; i++) {
				OpCounter before = c;
				Llr s = sc.next(c);
				CHECK(s == doctest::Approx(arikan_llr(y, v, i)));
				CHECK(s == doctest::Approx(ref[i]));
				unsigned ps = i ? unsigned(std::countr_zero(i)) : t;
				if (ps > t - 1)
					ps = t - 1;
				CHECK((c - before).total() == (std::uint64_t(2) << ps) - 1);
				sc.decide(v[i]);
			}
			CHECK(c.total() == t * l);
		}
	}

	TEST_CASE("16-phase Arikan cost pattern")
	{
		ArikanSC sc(4);
		sc.load(std::vector<Llr>(16, 1.0));
		const std::uint64_t want[] = {15, 1, 3, 1, 7, 1, 3, 1, 15, 1, 3, 1, 7, 1, 3, 1};
		for (std::size_t i = 0; i < 16; i++) {
			OpCounter c;
			sc.next(c);
			CHECK(c.total() == want[i]);
			sc.decide(0);
		}
	}
}
