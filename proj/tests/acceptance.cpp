/*------------------------------------------------------------------------
Acceptance run: one pass/fail line per criterion

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
#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <iostream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "wproc/cse.hpp"
#include "wproc/kernels.hpp"
#include "wproc/sim.hpp"
#include "wproc/verify.hpp"

using namespace wproc;

namespace {

struct Row {
	const char *u;
	const char *d;
	int cost;
};

// Reference transition tables: u_phi expression, window, cost
const std::vector<Row> &table_k16p()
{
	static const std::vector<Row> r = {
	    {"v0", "{}", 15},           {"v1", "{}", 1},          {"v2", "{}", 3},
	    {"v4", "{3}", 21},          {"v8", "{3,5,6,7}", 127}, {"v6+v9", "{3,5,6,7}", 48},
	    {"v5+v6+v10", "{3,5,6,7}", 95}, {"v3", "{5,6,7}", 1}, {"v12", "{5,6,7,11}", 127},
	    {"v5", "{6,7,11}", 1},      {"v6", "{7,11}", 1},      {"v7", "{11}", 1},
	    {"v11", "{}", 1},           {"v13", "{}", 1},         {"v14", "{}", 3},
	    {"v15", "{}", 1}};
	return r;
}

const std::vector<Row> &table_k16()
{
	static const std::vector<Row> r = {
	    {"v0", "{}", 15},     {"v1", "{}", 1},           {"v2", "{}", 3},
	    {"v3", "{}", 1},      {"v4", "{}", 7},           {"v8", "{5,6,7}", 67},
	    {"v6+v9", "{5,6,7}", 24}, {"v5+v6+v10", "{5,6,7}", 47}, {"v5", "{6,7}", 1},
	    {"v6", "{7}", 1},     {"v7", "{}", 1},           {"v11", "{}", 1},
	    {"v12", "{}", 7},     {"v13", "{}", 1},          {"v14", "{}", 3},
	    {"v15", "{}", 1}};
	return r;
}

const std::vector<Row> &table_k32()
{
	static const std::vector<Row> r = {
	    {"v0", "{}", 31},         {"v1", "{}", 1},           {"v2", "{}", 3},
	    {"v3", "{}", 1},          {"v4", "{}", 7},           {"v8", "{5,6,7}", 67},
	    {"v5+v6+v9", "{5,6,7}", 24}, {"v5+v10", "{5,6,7}", 47}, {"v5", "{6,7}", 1},
	    {"v6", "{7}", 1},         {"v7", "{}", 1},           {"v11", "{}", 1},
	    {"v16", "{12,13,14,15}", 127}, {"v12+v17", "{12,13,14,15}", 63}, {"v12", "{13,14,15}", 1},
	    {"v13", "{14,15}", 1},    {"v18", "{14,15}", 16},    {"v14+v19", "{14,15}", 15},
	    {"v14", "{15}", 1},       {"v15", "{}", 1},          {"v20", "{}", 7},
	    {"v24", "{21,22,23}", 67}, {"v21+v22+v25", "{21,22,23}", 24}, {"v21+v26", "{21,22,23}", 47},
	    {"v21", "{22,23}", 1},    {"v22", "{23}", 1},        {"v23", "{}", 1},
	    {"v27", "{}", 1},         {"v28", "{}", 7},          {"v29", "{}", 1},
	    {"v30", "{}", 3},         {"v31", "{}", 1}};
	return r;
}

struct Outcome {
	bool pass = true;
	std::string detail;
};

double seconds_since(std::chrono::steady_clock::time_point t0)
{
	return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

std::string fmt(double x)
{
	char b[64];
	std::snprintf(b, sizeof b, "%.3g", x);
	return b;
}

Outcome criterion1()
{
	Outcome o;
	std::size_t cells = 0, bad = 0;
	for (auto [name, tab] : {std::pair{"K16P", &table_k16p()}, {"K16", &table_k16()}, {"K32", &table_k32()}}) {
		TransitionSpec s = derive_transition(builtin_kernel(name));
		for (std::size_t phi = 0; phi < tab->size(); phi++) {
			cells += 2;
			std::string u = format_vset(s.u_expr[phi]), d = format_set(s.windows[phi]);
			if (u != (*tab)[phi].u) {
				bad++;
				o.detail += std::string(" ") + name + " u" + std::to_string(phi) + "=" + u;
			}
			if (d != (*tab)[phi].d) {
				bad++;
				o.detail += std::string(" ") + name + " D" + std::to_string(phi) + "=" + d;
			}
		}
	}
	o.pass = bad == 0;
	o.detail = std::to_string(cells - bad) + "/" + std::to_string(cells) + " cells" + o.detail;
	return o;
}

Outcome criterion2()
{
	struct Ref {
		const char *kernel;
		std::size_t phi;
		std::map<unsigned, std::size_t> x;
	};
	const std::vector<Ref> refs = {{"K16", 5, {{1, 16}, {2, 8}, {3, 8}, {4, 8}}},
	                               {"K16", 6, {{4, 8}}},
	                               {"K16", 7, {{3, 16}, {4, 8}}},
	                               {"K32", 12, {{1, 32}, {2, 16}, {3, 8}, {4, 8}, {5, 16}}},
	                               {"K32", 13, {{5, 16}}},
	                               {"K32", 16, {{4, 4}, {5, 4}}},
	                               {"K32", 17, {{5, 4}}}};
	Outcome o;
	std::size_t cells = 0, bad = 0;
	for (const Ref &r : refs) {
		TransitionSpec s = derive_transition(builtin_kernel(r.kernel));
		CseTable tb = get_cse_pairs(s, std::size_t(s.h[r.phi]), r.phi);
		for (auto [lam, want] : r.x) {
			cells++;
			if (tb.size(lam) != want) {
				bad++;
				o.detail += std::string(" ") + r.kernel + " phi" + std::to_string(r.phi) + " X" + std::to_string(lam) +
				            "=" + std::to_string(tb.size(lam));
			}
		}
	}
	o.pass = bad == 0;
	o.detail = std::to_string(cells - bad) + "/" + std::to_string(cells) + " sizes" + o.detail;
	return o;
}

Outcome from_checks(const std::vector<CheckResult> &rs)
{
	Outcome o;
	for (const CheckResult &r : rs) {
		o.pass = o.pass && r.pass;
		o.detail += (o.detail.empty() ? "" : "; ") + r.name + " " + fmt(r.value) + (r.pass ? "" : " FAIL");
	}
	return o;
}

Outcome criterion3()
{
	std::vector<CheckResult> rs;
	for (const char *k : {"F4", "K16P", "K16", "K32"})
		rs.push_back(check_wp_naive(builtin_kernel(k), 200, 11));
	for (const char *k : {"F4", "K16P", "K16"})
		rs.push_back(check_naive_exact(builtin_kernel(k), 200, 12));
	for (const char *k : {"K16P", "K16"})
		rs.push_back(check_window_marginal(builtin_kernel(k), 200, 13));
	return from_checks(rs);
}

Outcome criterion4() { return from_checks(check_path_weights(4, 20, 14)); }

Outcome criterion5()
{
	Outcome o;
	std::ostringstream dev;
	struct Case {
		const char *kernel;
		const std::vector<Row> *tab;
		int total;  // -1: not gated
	};
	const Case cases[] = {{"K16", &table_k16(), 181}, {"K32", &table_k32(), 571}, {"K16P", &table_k16p(), -1}};
	std::string totals;
	for (const Case &c : cases) {
		Kernel K = builtin_kernel(c.kernel);
		KernelPlan plan = make_plan(derive_transition(K));
		ComplexityReport r = kernel_complexity(plan, 50, 15);
		if (!r.phase_invariant) {
			o.pass = false;
			totals += std::string(" ") + c.kernel + " counts vary across frames";
		}
		OpCounter tot;
		int ref_total = 0;
		dev << "    " << c.kernel << " per-phase (ours/table):";
		for (std::size_t phi = 0; phi < r.phases.size(); phi++) {
			std::uint64_t got = r.phases[phi].total().total();
			int want = (*c.tab)[phi].cost;
			tot += r.phases[phi].total();
			ref_total += want;
			if (got != std::uint64_t(want))
				dev << " phi" << phi << "=" << got << "/" << want;
			if (std::string((*c.tab)[phi].d) == "{}" && got != std::uint64_t(want)) {
				o.pass = false;
				dev << "(empty window mismatch)";
			}
		}
		dev << "\n";
		totals += std::string(" ") + c.kernel + "=" + std::to_string(tot.total()) + " (" +
		          std::to_string(tot.additions) + "+" + std::to_string(tot.comparisons) + ", table sum " +
		          std::to_string(ref_total) + ")";
		if (c.total > 0 && std::abs(double(tot.total()) - c.total) > 0.1 * c.total)
			o.pass = false;
	}
	o.detail = "totals" + totals + "\n" + dev.str();
	if (!o.detail.empty() && o.detail.back() == '\n')
		o.detail.pop_back();
	return o;
}

Outcome criterion6()
{
	std::vector<CheckResult> rs;
	for (const char *k : {"K16P", "K16", "K32"})
		for (auto &r : check_strategies(builtin_kernel(k), 50, 16))
			rs.push_back(r);
	Outcome o;
	double worst = 0;
	for (auto &r : rs) {
		o.pass = o.pass && r.pass;
		worst = std::max(worst, r.value);
		if (!r.pass)
			o.detail += " " + r.name + "=" + fmt(r.value);
	}
	o.detail = std::to_string(rs.size()) + " variants, max deviation " + fmt(worst) + o.detail;
	return o;
}

/// Min-sum ML over the whole codebook of a short code
std::vector<std::uint8_t> codebook_ml(const CodeSpec &c, const std::vector<Llr> &y)
{
	double best = -1e300;
	std::vector<std::uint8_t> arg;
	std::vector<std::uint8_t> info(c.k);
	for (std::uint64_t m = 0; m < (std::uint64_t(1) << c.k); m++) {
		for (std::size_t i = 0; i < c.k; i++)
			info[i] = std::uint8_t((m >> i) & 1);
		auto x = encode(c, info);
		std::vector<int> xi(x.begin(), x.end());
		double e = ellipsoidal_weight(xi, y);
		if (e > best) {
			best = e;
			arg = info;
		}
	}
	return arg;
}

Outcome criterion7()
{
	Outcome o;
	std::string d;
	// SCL with L = 1 against SC
	{
		Kernel K = builtin_kernel("K16");
		CodeSpec c = make_code(K, 2, frozen_from_order(mc_rank_channels(K, 2, 2.0, 0.5, 2000, 17), 128));
		ChannelModel ch{2.0, 0.5};
		std::size_t diff = 0;
		for (std::size_t f = 0; f < 1000; f++) {
			auto rng = frame_rng(17, f);
			std::vector<std::uint8_t> info(c.k);
			for (auto &b : info)
				b = std::uint8_t(rng() & 1);
			auto y = ch.transmit(encode(c, info), rng);
			auto a = sc_decode(c, y);
			auto b = scl_decode(c, y, 1, f);
			if (a.u != b.u || a.score != b.score)
				diff++;
		}
		d += "L=1 vs SC differ on " + std::to_string(diff) + "/1000";
		o.pass = o.pass && diff == 0;
	}
	// full list against codebook ML
	{
		Kernel K = builtin_kernel("K16");
		std::size_t bad = 0, total = 0;
		for (std::size_t k : {4, 6, 8}) {
			auto order = mc_rank_channels(K, 1, 1.0, double(k) / 16.0, 2000, 18);
			CodeSpec c = make_code(K, 1, frozen_from_order(order, k));
			ChannelModel ch{1.0, double(k) / 16.0};
			std::size_t frames = k == 8 ? 166 : 167;
			for (std::size_t f = 0; f < frames; f++) {
				auto rng = frame_rng(18 + k, f);
				std::vector<std::uint8_t> info(c.k);
				for (auto &b : info)
					b = std::uint8_t(rng() & 1);
				auto y = ch.transmit(encode(c, info), rng);
				auto r = scl_decode(c, y, std::size_t(1) << k, f);
				total++;
				if (r.info != codebook_ml(c, y))
					bad++;
			}
		}
		d += "; full-list vs ML differ on " + std::to_string(bad) + "/" + std::to_string(total);
		o.pass = o.pass && bad == 0;
	}
	// noiseless round trip
	{
		struct Cfg {
			const char *k;
			unsigned m;
		};
		std::size_t bad = 0, total = 0;
		for (Cfg cf : {Cfg{"K16", 1}, Cfg{"K16", 2}, Cfg{"K32", 2}, Cfg{"F1", 10}, Cfg{"F2", 5}}) {
			Kernel K = builtin_kernel(cf.k);
			std::size_t n = ipow(K.size, cf.m);
			CodeSpec c = make_code(K, cf.m, frozen_from_order(mc_rank_channels(K, cf.m, 2.0, 0.5, 1000, 19), n / 2));
			for (std::size_t f = 0; f < 20; f++) {
				auto rng = frame_rng(19, f);
				std::vector<std::uint8_t> info(c.k);
				for (auto &b : info)
					b = std::uint8_t(rng() & 1);
				auto x = encode(c, info);
				std::vector<Llr> y(n);
				for (std::size_t i = 0; i < n; i++)
					y[i] = x[i] ? -20.0 : 20.0;
				total += 2;
				bad += sc_decode(c, y).info != info;
				bad += scl_decode(c, y, 4, f).info != info;
			}
		}
		d += "; noiseless n=16,256,1024 failures " + std::to_string(bad) + "/" + std::to_string(total);
		o.pass = o.pass && bad == 0;
	}
	o.detail = d;
	return o;
}

Outcome criterion8()
{
	Outcome o;
	Kernel K = builtin_kernel("K16");
	CodeSpec c = make_code(K, 2, frozen_from_order(mc_rank_channels(K, 2, 2.0, 0.5, 10000, 20), 128));
	const std::size_t lists[] = {1, 2, 8};
	SimConfig cfg;
	cfg.snrs = {1.0, 1.5, 2.0};
	cfg.frames = 10000;
	cfg.seed = 20;
	std::vector<SimReport> reps;
	bool same = true;
	for (std::size_t L : lists) {
		cfg.list = L;
		cfg.workers = 1;
		SimReport a = run_sweep(c, cfg);
		cfg.workers = 3;
		SimReport b = run_sweep(c, cfg);
		std::ostringstream sa, sb;
		write_csv(sa, a);
		write_csv(sb, b);
		same = same && sa.str() == sb.str();
		reps.push_back(a);
	}
	std::string d = "FER";
	bool mono = true;
	for (std::size_t li = 0; li < 3; li++) {
		d += " L=" + std::to_string(lists[li]) + ":";
		for (std::size_t si = 0; si < 3; si++) {
			double f = reps[li].points[si].fer();
			d += " " + fmt(f);
			if (si && f > reps[li].points[si - 1].fer())
				mono = false;
			if (li && f > reps[li - 1].points[si].fer())
				mono = false;
		}
	}
	d += std::string("; monotone ") + (mono ? "yes" : "no") + ", identical across workers " + (same ? "yes" : "no");
	o.pass = mono && same;
	o.detail = d;
	return o;
}

Outcome criterion9()
{
	Outcome o;
	TransitionSpec s = derive_transition(builtin_kernel("K16"));
	KernelPlan plan = make_plan(s);
	MemoryFootprint mf = memory_footprint(plan);
	std::size_t cs = 0;
	auto tabs = cse_tables(s);
	for (unsigned lam = 1; lam <= s.t(); lam++) {
		std::size_t mx = 0;
		for (const CseTable &tb : tabs)
			mx = std::max(mx, tb.size(lam));
		cs += mx;
	}
	o.pass = mf.cr == 16 && mf.cm == 14 && mf.cs == cs;
	o.detail = "C_s=" + std::to_string(mf.cs) + " (expected " + std::to_string(cs) + ") C_r=" + std::to_string(mf.cr) +
	           " C_m=" + std::to_string(mf.cm);
	return o;
}

} // namespace

int main()
{
	struct Crit {
		int id;
		const char *what;
		double limit;
		std::function<Outcome()> run;
	};
	const Crit crits[] = {
	    {1, "transition tables", 1, criterion1},   {2, "CSE sizes", 1, criterion2},
	    {3, "oracle equivalence", 120, criterion3}, {4, "path weight identities", 30, criterion4},
	    {5, "complexity totals", 10, criterion5},  {6, "strategy no-op", 60, criterion6},
	    {7, "codec properties", 120, criterion7},  {8, "Monte-Carlo trends", 600, criterion8},
	    {9, "memory footprint", 1, criterion9},
	};
	int failed = 0;
	for (const Crit &c : crits) {
		auto t0 = std::chrono::steady_clock::now();
		Outcome o;
		try {
			o = c.run();
		} catch (const std::exception &e) {
			o.pass = false;
			o.detail = std::string("exception: ") + e.what();
		}
		double t = seconds_since(t0);
		bool pass = o.pass && t < c.limit;
		failed += !pass;
		std::cout << "criterion " << c.id << ": " << (pass ? "PASS" : "FAIL") << "  " << c.what << " [" << fmt(t)
		          << " s, limit " << c.limit << " s] " << o.detail << std::endl;
	}
	std::cout << (failed ? "acceptance: " + std::to_string(failed) + " criteria failed" : "acceptance: all passed")
	          << std::endl;
	return failed ? 1 : 0;
}
