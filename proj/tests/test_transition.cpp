/*------------------------------------------------------------------------
transition unit tests

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
#include <algorithm>
#include <random>

#include "doctest.h"
#include "wproc/kernels.hpp"
#include "wproc/transition.hpp"

using namespace wproc;

TEST_SUITE("transition")
{
	TEST_CASE("Arikan kernel has empty windows")
	{
		TransitionSpec s = derive_transition(builtin_kernel("F4"));
		CHECK(s.T == BinMatrix::identity(16));
		for (std::size_t phi = 0; phi < 16; phi++) {
			CHECK(s.tau[phi] == int(phi));
			CHECK(s.windows[phi].empty());
		}
	}

	TEST_CASE("K16P example phase")
	{
		TransitionSpec s = derive_transition(builtin_kernel("K16P"));
		CHECK(format_vset(s.u_expr[6]) == "v5+v6+v10");
		CHECK(format_set(s.windows[6]) == "{3,5,6,7}");
		CHECK(s.h[6] == 10);
	}

	TEST_CASE("K16 and K32 windows")
	{
		TransitionSpec a = derive_transition(builtin_kernel("K16"));
		CHECK(format_vset(a.u_expr[5]) == "v8");
		CHECK(format_set(a.windows[5]) == "{5,6,7}");
		TransitionSpec b = derive_transition(builtin_kernel("K32"));
		CHECK(format_vset(b.u_expr[12]) == "v16");
		CHECK(format_set(b.windows[12]) == "{12,13,14,15}");
	}

	TEST_CASE("maximum window sizes")
	{
		CHECK(derive_transition(builtin_kernel("K16P")).max_window() == 4);
		CHECK(derive_transition(builtin_kernel("K16")).max_window() == 3);
		CHECK(derive_transition(builtin_kernel("K32")).max_window() == 4);
	}

	TEST_CASE("structural invariants")
	{
		for (const char *name : {"K16P", "K16", "K32", "F3"}) {
			TransitionSpec s = derive_transition(builtin_kernel(name));
			std::size_t l = s.l();
			CHECK(multiply(s.T, s.kernel.matrix) == arikan_matrix(s.t()));
			std::vector<int> seen(l, 0);
			for (std::size_t phi = 0; phi < l; phi++) {
				CHECK(int(s.window_size(phi)) == s.h[phi] - int(phi));
				seen[std::size_t(s.omega[phi])]++;
			}
			for (int c : seen)
				CHECK(c == 1);
		}
	}

	TEST_CASE("u expressions agree with v T")
	{
		for (const char *name : {"K16P", "K16", "K32"}) {
			TransitionSpec s = derive_transition(builtin_kernel(name));
			std::size_t l = s.l();
			std::mt19937_64 rng(7);
			std::size_t samples = l <= 16 ? (std::size_t(1) << l) : 10000;
			for (std::size_t it = 0; it < samples; it++) {
				Word v = l <= 16 ? Word(it) : (rng() & ((Word(1) << l) - 1));
				Word u = vec_mul(v, s.T);
				for (std::size_t phi = 0; phi < l; phi++)
					REQUIRE(s.u_of(phi, v) == int((u >> phi) & 1));
				// (v T) K = v F_t
				REQUIRE(vec_mul(u, s.kernel.matrix) == arikan_blocks(v, s.t()));
			}
		}
	}

	TEST_CASE("complete_v reproduces v from u and window bits")
	{
		TransitionSpec s = derive_transition(builtin_kernel("K16"));
		std::mt19937_64 rng(3);
		for (int it = 0; it < 2000; it++) {
			Word v = rng() & 0xffff;
			Word u = vec_mul(v, s.T);
			for (std::size_t phi = 0; phi < 16; phi++) {
				Word h = (Word(2) << s.h[phi]) - 1;
				REQUIRE(complete_v(s, phi, u, v) == (v & h));
			}
		}
	}

	TEST_CASE("min-span form")
	{
		std::mt19937_64 rng(11);
		for (int it = 0; it < 50; it++) {
			BinMatrix m(8, 16);
			for (std::size_t i = 0; i < 8; i++)
				for (std::size_t j = 0; j < 16; j++)
					m.set(i, j, int(rng() & 1));
			for (std::size_t i = 0; i < 8; i++)
				m.set(i, i, 1);
			for (std::size_t i = 0; i < 8; i++)
				for (std::size_t j = 0; j < i; j++)
					m.set(i, j, 0);
			BinMatrix r = min_span_reduce(m);
			CHECK(rank(r) == 8);
			std::vector<int> ends;
			for (std::size_t i = 0; i < 8; i++) {
				CHECK(r.first_one(i) == int(i));
				ends.push_back(r.last_one(i));
			}
			std::sort(ends.begin(), ends.end());
			CHECK(std::adjacent_find(ends.begin(), ends.end()) == ends.end());
			CHECK(min_span_reduce(r) == r);
		}
		CHECK_THROWS_AS(min_span_reduce(BinMatrix(2, 4)), Error);
	}
}
