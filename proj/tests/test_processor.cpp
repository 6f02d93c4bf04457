/*------------------------------------------------------------------------
processor unit tests

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
#include "wproc/kernels.hpp"
#include "wproc/oracle.hpp"
#include "wproc/processor.hpp"
#include "wproc/verify.hpp"

using namespace wproc;

namespace {

std::vector<OpCounter> phase_costs(const KernelPlan &plan, const std::vector<Llr> &y, Word u)
{
	ProcessorState st(&plan);
	st.load(y.data());
	std::vector<OpCounter> r;
	for (std::size_t phi = 0; phi < plan.spec.l(); phi++) {
		OpCounter before = st.ops;
		process_phase(st, phi);
		r.push_back(st.ops - before);
		record_decision(st, phi, int((u >> phi) & 1));
	}
	return r;
}

} // namespace

TEST_SUITE("processor")
{
	TEST_CASE("Arikan kernel passes through plain SC")
	{
		KernelPlan plan = make_plan(derive_transition(builtin_kernel("F4")));
		std::mt19937_64 rng(1);
		std::normal_distribution<double> nd(0.3, 1.0);
		std::vector<Llr> y(16);
		for (auto &x : y)
			x = nd(rng);
		Word v = rng() & 0xffff;
		auto got = processor_llrs(plan, y, v);
		auto ref = oracle::path_llrs(y, v, 15);
		for (std::size_t i = 0; i < 16; i++)
			CHECK(got[i] == doctest::Approx(ref[i]));
		auto cost = phase_costs(plan, y, v);
		const std::uint64_t want[] = {15, 1, 3, 1, 7, 1, 3, 1, 15, 1, 3, 1, 7, 1, 3, 1};
		for (std::size_t i = 0; i < 16; i++)
			CHECK(cost[i].total() == want[i]);
	}

	TEST_CASE("K16 per-phase costs")
	{
		KernelPlan plan = make_plan(derive_transition(builtin_kernel("K16")));
		KernelFrame f = kernel_frame(plan.spec.kernel, 3, 0);
		auto cost = phase_costs(plan, f.y, f.u);
		const std::uint64_t want[] = {15, 1, 3, 1, 7, 67, 24, 47, 1, 1, 1, 1, 7, 1, 3, 1};
		OpCounter tot;
		for (std::size_t i = 0; i < 16; i++) {
			CHECK(cost[i].total() == want[i]);
			tot += cost[i];
		}
		CHECK(tot.additions == 95);
		CHECK(tot.comparisons == 86);
	}

	TEST_CASE("phase 5 step breakdown")
	{
		KernelPlan plan = make_plan(derive_transition(builtin_kernel("K16")));
		KernelFrame f = kernel_frame(plan.spec.kernel, 4, 0);
		ProcessorState st(&plan);
		st.keep_reports = true;
		st.load(f.y.data());
		for (std::size_t phi = 0; phi < 8; phi++) {
			process_phase(st, phi);
			record_decision(st, phi, int((f.u >> phi) & 1));
		}
		const PhaseReport &r = st.reports[5];
		CHECK(r.step[1].total() == 8);
		CHECK(r.step[2].total() == 40);
		CHECK(r.step[3].total() == 8);
		CHECK(r.step[4].total() == 10);
		CHECK(r.step[5].total() == 1);
		CHECK(r.max_kind == MK_FHT);
		CHECK(st.reports[6].step[2].total() == 8);
		CHECK(st.reports[6].max_kind == MK_REUSE);
		CHECK(st.reports[7].max_kind == MK_ROOT);
	}

	TEST_CASE("plain options give the same LLRs")
	{
		TransitionSpec s = derive_transition(builtin_kernel("K16P"));
		KernelPlan a = make_plan(s), b = make_plan(s, ProcessorOptions::plain());
		for (std::size_t f = 0; f < 20; f++) {
			KernelFrame fr = kernel_frame(s.kernel, 5, f);
			auto x = processor_llrs(a, fr.y, fr.u), y = processor_llrs(b, fr.y, fr.u);
			for (std::size_t i = 0; i < 16; i++)
				CHECK(x[i] == doctest::Approx(y[i]).epsilon(1e-12));
		}
	}

	TEST_CASE("sign agreement with the oracles")
	{
		TransitionSpec s = derive_transition(builtin_kernel("K16"));
		KernelPlan plan = make_plan(s);
		for (std::size_t f = 0; f < 20; f++) {
			KernelFrame fr = kernel_frame(s.kernel, 6, f);
			auto got = processor_llrs(plan, fr.y, fr.u);
			for (std::size_t phi = 0; phi < 16; phi++) {
				double ref = oracle::exact_maxllr(s.kernel, low_bits(fr.u, phi), phi, fr.y);
				if (std::fabs(ref) > 1e-6)
					CHECK((got[phi] < 0) == (ref < 0));
			}
		}
	}

	TEST_CASE("recursive maximum buffers")
	{
		TransitionSpec s = derive_transition(builtin_kernel("K16"));
		std::mt19937_64 rng(8);
		std::vector<ScoreEntry> tab;
		Word u = rng() & 0x7f;
		for (Word v : oracle::enumerate_z(s, 7, u))
			tab.push_back({v, -double(rng() % 1000) / 10.0, false});
		OpCounter c;
		auto M = recursive_max_build(s, 7, 3, tab, c);
		std::size_t kept = 0;
		for (int i = 0; i <= 2; i++)
			kept += M[std::size_t(i)].size();
		CHECK(kept == 14);
		for (int i = 0; i <= 3; i++)
			for (std::size_t idx = 0; idx < M[std::size_t(i)].size(); idx++) {
				double best = -1e300;
				for (const ScoreEntry &e : tab) {
					bool match = true;
					for (int k = 0; k <= i; k++)
						match = match && s.u_of(7 + std::size_t(k), e.v) == int((idx >> k) & 1);
					if (match)
						best = std::max(best, e.score);
				}
				CHECK(M[std::size_t(i)][idx].score == best);
			}
		CHECK_THROWS_AS(recursive_max_build(s, 4, 2, tab, c), Error);
	}

	TEST_CASE("phase order errors")
	{
		KernelPlan plan = make_plan(derive_transition(builtin_kernel("K16")));
		std::vector<Llr> y(16, 1.0);
		ProcessorState st(&plan);
		st.load(y.data());
		auto code = [&](auto fn) {
			try {
				fn();
			} catch (const Error &e) {
				return e.code();
			}
			return ErrorCode::TooLarge;
		};
		CHECK(code([&] { process_phase(st, 1); }) == ErrorCode::PhaseOrderViolation);
		process_phase(st, 0);
		CHECK(code([&] { process_phase(st, 1); }) == ErrorCode::MissingDecision);
		CHECK(code([&] { record_decision(st, 1, 0); }) == ErrorCode::PhaseOrderViolation);
		CHECK(code([&] { process_phase(st, 16); }) == ErrorCode::PhaseOutOfRange);
		record_decision(st, 0, 0);
		CHECK_NOTHROW(process_phase(st, 1));
	}

	TEST_CASE("memory footprint")
	{
		MemoryFootprint a = memory_footprint(make_plan(derive_transition(builtin_kernel("K16"))));
		CHECK(a.cs == 48);
		CHECK(a.cr == 16);
		CHECK(a.cm == 14);
		CHECK(a.total() == 78);
		MemoryFootprint f = memory_footprint(make_plan(derive_transition(builtin_kernel("F4"))));
		CHECK(f.cr == 2);
		CHECK(f.cm == 0);
		MemoryFootprint b = memory_footprint(make_plan(derive_transition(builtin_kernel("K32"))));
		CHECK(b.total() >= 32);
		CHECK(b.cr == 32);
	}
}
