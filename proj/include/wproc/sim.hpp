/*------------------------------------------------------------------------
Monte-Carlo FER/BER sweeps and operation-count reports

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
#pragma once

#include <algorithm>
#include <chrono>
#include <cmath>
#include <iomanip>
#include <limits>
#include <ostream>
#include <thread>
#include <vector>

#include "codec.hpp"

namespace wproc {

struct SimConfig {
	std::vector<double> snrs;
	std::size_t frames = 1000;
	std::size_t target_errors = 0;  // 0: run the full budget
	std::size_t list = 1;
	std::uint64_t seed = 1;
	unsigned workers = 1;
	std::size_t batch = 1000;
};

struct SimPoint {
	double snr_db = 0;
	std::size_t frames = 0, ferr = 0, berr = 0;
	double add_mean = 0, cmp_mean = 0, select_mean = 0;

	double fer() const { return frames ? double(ferr) / double(frames) : 0.0; }
	double ber(std::size_t k) const { return frames ? double(berr) / double(frames * k) : 0.0; }
};

struct SimReport {
	std::size_t n = 0, k = 0, list = 1;
	std::uint64_t seed = 0;
	std::vector<SimPoint> points;
	double wall_seconds = 0;
};

/// Outcome of one frame
struct FrameResult {
	std::uint32_t berr = 0;
	std::uint64_t add = 0, cmp = 0, sel = 0;
};

// Procedure: simulate_frame
inline FrameResult simulate_frame(const CodeSpec &c, const ChannelModel &ch, std::size_t L, std::uint64_t seed,
                                  std::uint64_t frame)
{
	auto rng = frame_rng(seed, frame, 0);
	std::vector<std::uint8_t> info(c.k);
	for (auto &b : info)
		b = std::uint8_t(rng() & 1);
	auto x = encode(c, info);
	auto llr = ch.transmit(x, rng);
	DecodeResult d = L == 1 ? sc_decode(c, llr) : scl_decode(c, llr, L, rng());
	FrameResult r;
	for (std::size_t i = 0; i < c.k; i++)
		r.berr += d.info[i] != info[i];
	r.add = d.ops.additions;
	r.cmp = d.ops.comparisons;
	r.sel = d.select_cmps;
	return r;
}

// Procedure: run_sweep
/// Frames are evaluated in batches split across workers; each frame owns its
/// random stream, and a point stops at the first frame reaching the error
/// target, so reports do not depend on the worker count.
inline SimReport run_sweep(const CodeSpec &c, const SimConfig &cfg)
{
	auto t0 = std::chrono::steady_clock::now();
	SimReport rep;
	rep.n = c.n;
	rep.k = c.k;
	rep.list = cfg.list;
	rep.seed = cfg.seed;
	double rate = double(c.k) / double(c.n);
	unsigned workers = std::max(1u, cfg.workers);
	std::size_t batch = std::max<std::size_t>(1, cfg.batch);
	for (std::size_t si = 0; si < cfg.snrs.size(); si++) {
		ChannelModel ch{cfg.snrs[si], rate};
		std::uint64_t pseed = cfg.seed + 0x9e3779b97f4a7c15ull * (si + 1);
		SimPoint pt;
		pt.snr_db = cfg.snrs[si];
		std::uint64_t add = 0, cmp = 0, sel = 0;
		bool done = false;
		std::vector<FrameResult> res;
		for (std::size_t start = 0; start < cfg.frames && !done; start += batch) {
			std::size_t cnt = std::min(batch, cfg.frames - start);
			res.assign(cnt, {});
			auto work = [&](unsigned w) {
				for (std::size_t f = w; f < cnt; f += workers)
					res[f] = simulate_frame(c, ch, cfg.list, pseed, start + f);
			};
			if (workers == 1) {
				work(0);
			} else {
				std::vector<std::thread> th;
				for (unsigned w = 0; w < workers; w++)
					th.emplace_back(work, w);
				for (auto &t : th)
					t.join();
			}
			for (const FrameResult &r : res) {
				pt.frames++;
				pt.berr += r.berr;
				pt.ferr += r.berr != 0;
				add += r.add;
				cmp += r.cmp;
				sel += r.sel;
				if (cfg.target_errors && pt.ferr >= cfg.target_errors) {
					done = true;
					break;
				}
			}
		}
		if (pt.frames) {
			pt.add_mean = double(add) / double(pt.frames);
			pt.cmp_mean = double(cmp) / double(pt.frames);
			pt.select_mean = double(sel) / double(pt.frames);
		}
		rep.points.push_back(pt);
	}
	rep.wall_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
	return rep;
}

inline void write_csv(std::ostream &out, const SimReport &r)
{
	out << "snr_db,frames,ferr,fer,berr,ber,add_mean,cmp_mean,select_cmps_mean\n";
	out << std::setprecision(10);
	for (const SimPoint &p : r.points)
		out << p.snr_db << ',' << p.frames << ',' << p.ferr << ',' << p.fer() << ',' << p.berr << ','
		    << p.ber(r.k) << ',' << p.add_mean << ',' << p.cmp_mean << ',' << p.select_mean << '\n';
}

/// Mean, min and max of a per-frame counter
struct CounterStats {
	double mean = 0;
	std::uint64_t min = std::numeric_limits<std::uint64_t>::max(), max = 0;
	double sum = 0, sumsq = 0;
	std::size_t count = 0;

	void add(std::uint64_t x)
	{
		min = std::min(min, x);
		max = std::max(max, x);
		sum += double(x);
		sumsq += double(x) * double(x);
		count++;
		mean = sum / double(count);
	}
	double variance() const { return count ? sumsq / double(count) - mean * mean : 0.0; }
};

struct PhaseCost {
	OpCounter step[6];
	std::uint64_t misses[8] = {};
	int max_kind = MK_PLAIN;
	OpCounter total() const
	{
		OpCounter t;
		for (int s = 1; s <= 5; s++)
			t += step[s];
		return t;
	}
};

struct ComplexityReport {
	std::size_t frames = 0;
	CounterStats kernel_add, kernel_cmp;   // single kernel stage
	std::vector<PhaseCost> phases;         // first frame
	bool phase_invariant = true;           // per-phase counts equal on every frame
	CounterStats dec_add, dec_cmp, dec_sel; // whole decoder, m > 1 or a frozen set
};

// Procedure: kernel_complexity
/// One kernel stage on random AWGN-like LLRs with hard decisions
inline ComplexityReport kernel_complexity(const KernelPlan &plan, std::size_t frames, std::uint64_t seed)
{
	ComplexityReport rep;
	std::size_t l = plan.spec.l();
	for (std::size_t f = 0; f < frames; f++) {
		auto rng = frame_rng(seed, f, 2);
		std::normal_distribution<double> nd(1.0, 1.0);
		std::vector<Llr> y(l);
		for (auto &x : y)
			x = nd(rng);
		ProcessorState st(&plan);
		st.keep_reports = true;
		st.load(y.data());
		for (std::size_t phi = 0; phi < l; phi++) {
			Llr s = process_phase(st, phi);
			record_decision(st, phi, hard_bit(s));
		}
		std::vector<PhaseCost> pc(l);
		for (std::size_t phi = 0; phi < l; phi++) {
			const PhaseReport &r = st.reports[phi];
			for (int s = 1; s <= 5; s++)
				pc[phi].step[s] = r.step[s];
			for (int x = 0; x < 8; x++)
				pc[phi].misses[x] = r.x[x];
			pc[phi].max_kind = r.max_kind;
		}
		if (f == 0)
			rep.phases = pc;
		else
			for (std::size_t phi = 0; phi < l; phi++)
				if (!(pc[phi].total() == rep.phases[phi].total()))
					rep.phase_invariant = false;
		rep.kernel_add.add(st.ops.additions);
		rep.kernel_cmp.add(st.ops.comparisons);
		rep.frames++;
	}
	return rep;
}

// Procedure: run_complexity
inline ComplexityReport run_complexity(const CodeSpec &c, std::size_t frames, std::size_t L, std::uint64_t seed,
                                       double ebn0_db = 2.0)
{
	ComplexityReport rep = kernel_complexity(*c.plan, frames, seed);
	ChannelModel ch{ebn0_db, c.k ? double(c.k) / double(c.n) : 0.5};
	for (std::size_t f = 0; f < frames; f++) {
		FrameResult r = simulate_frame(c, ch, L, seed, f);
		rep.dec_add.add(r.add);
		rep.dec_cmp.add(r.cmp);
		rep.dec_sel.add(r.sel);
	}
	return rep;
}

inline void write_complexity_csv(std::ostream &out, const ComplexityReport &r)
{
	out << "phase,add,cmp,total,max_kind\n";
	for (std::size_t phi = 0; phi < r.phases.size(); phi++) {
		OpCounter t = r.phases[phi].total();
		out << phi << ',' << t.additions << ',' << t.comparisons << ',' << t.total() << ','
		    << max_kind_name(r.phases[phi].max_kind) << '\n';
	}
	out << "decoder_add_mean,decoder_cmp_mean,decoder_select_cmps_mean\n";
	out << r.dec_add.mean << ',' << r.dec_cmp.mean << ',' << r.dec_sel.mean << '\n';
}

} // namespace wproc
