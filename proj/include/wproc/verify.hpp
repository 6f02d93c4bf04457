/*------------------------------------------------------------------------
Oracle battery: optimized processing against brute-force references

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

#include <cmath>
#include <random>
#include <string>
#include <vector>

#include "arikan.hpp"
#include "channel.hpp"
#include "oracle.hpp"
#include "processor.hpp"

namespace wproc {

struct CheckResult {
	std::string name;
	bool pass = false;
	double value = 0;  // worst observed deviation
	double tol = 0;
	std::string detail;
};

/// Kernel codeword over AWGN plus the input word that produced it
struct KernelFrame {
	Word u = 0;
	std::vector<Llr> y;
};

inline KernelFrame kernel_frame(const Kernel &k, std::uint64_t seed, std::uint64_t frame, double ebn0_db = 1.0)
{
	auto rng = frame_rng(seed, frame, 3);
	KernelFrame f;
	std::vector<std::uint8_t> x(k.size, 0);
	for (std::size_t i = 0; i < k.size; i++)
		if (rng() & 1) {
			f.u |= Word(1) << i;
			Word r = k.matrix.row_word(i);
			for (std::size_t j = 0; j < k.size; j++)
				x[j] ^= std::uint8_t((r >> j) & 1);
		}
	f.y = ChannelModel{ebn0_db, 0.5}.transmit(x, rng);
	return f;
}

/// Phase LLRs of one processor run, decisions taken from u
inline std::vector<Llr> processor_llrs(const KernelPlan &plan, const std::vector<Llr> &y, Word u)
{
	ProcessorState st(&plan);
	st.load(y.data());
	std::vector<Llr> out;
	for (std::size_t phi = 0; phi < plan.spec.l(); phi++) {
		out.push_back(process_phase(st, phi));
		record_decision(st, phi, int((u >> phi) & 1));
	}
	return out;
}

inline Word low_bits(Word u, std::size_t n) { return n >= 64 ? u : (u & ((Word(1) << n) - 1)); }

// Procedure: check_wp_naive
inline CheckResult check_wp_naive(const Kernel &k, std::size_t frames, std::uint64_t seed, double tol = 1e-9)
{
	TransitionSpec s = derive_transition(k);
	KernelPlan plan = make_plan(s);
	CheckResult r{"optimized WP = naive WP (" + k.name + ")", true, 0, tol, ""};
	for (std::size_t f = 0; f < frames; f++) {
		KernelFrame fr = kernel_frame(k, seed, f);
		auto got = processor_llrs(plan, fr.y, fr.u);
		for (std::size_t phi = 0; phi < k.size; phi++) {
			double ref = oracle::naive_wp(s, phi, fr.y, low_bits(fr.u, phi));
			r.value = std::max(r.value, std::fabs(ref - got[phi]));
		}
	}
	r.pass = r.value <= tol;
	return r;
}

// Procedure: check_naive_exact
inline CheckResult check_naive_exact(const Kernel &k, std::size_t frames, std::uint64_t seed, double tol = 1e-9)
{
	TransitionSpec s = derive_transition(k);
	CheckResult r{"naive WP = exact max-LLR (" + k.name + ")", true, 0, tol, ""};
	for (std::size_t f = 0; f < frames; f++) {
		KernelFrame fr = kernel_frame(k, seed, f);
		for (std::size_t phi = 0; phi < k.size; phi++) {
			Word uh = low_bits(fr.u, phi);
			double a = oracle::naive_wp(s, phi, fr.y, uh);
			double b = oracle::exact_maxllr(k, uh, phi, fr.y);
			r.value = std::max(r.value, std::fabs(a - b));
		}
	}
	r.pass = r.value <= tol;
	return r;
}

// Procedure: check_window_marginal
/// Window marginal over Arikan inputs against the kernel marginal, probability domain
inline CheckResult check_window_marginal(const Kernel &k, std::size_t frames, std::uint64_t seed, double tol = 1e-12)
{
	TransitionSpec s = derive_transition(k);
	CheckResult r{"window marginal identity (" + k.name + ")", true, 0, tol, ""};
	for (std::size_t f = 0; f < frames; f++) {
		KernelFrame fr = kernel_frame(k, seed, f);
		std::vector<double> w0(k.size), w1(k.size);
		for (std::size_t i = 0; i < k.size; i++) {
			w0[i] = 1.0 / (1.0 + std::exp(-fr.y[i]));
			w1[i] = 1.0 - w0[i];
		}
		for (std::size_t phi = 0; phi < k.size; phi++)
			for (int b = 0; b < 2; b++) {
				Word u = low_bits(fr.u, phi) | (Word(b) << phi);
				double a = oracle::exact_marginal(k, u, phi, w0, w1);
				double c = oracle::arikan_window_marginal(s, phi, u, w0, w1);
				double rel = std::fabs(a - c) / std::max(std::fabs(a), 1e-300);
				r.value = std::max(r.value, rel);
			}
	}
	r.pass = r.value <= tol;
	return r;
}

namespace detail {

/// Layer t-q values S_{t-q}^{(i >> q)}[0..2^q) along v by plain halving
inline std::vector<Llr> layer_values(const std::vector<Llr> &y, Word v, std::size_t i, unsigned q)
{
	std::vector<Llr> cur = y;
	std::size_t idx = i, len = y.size();
	while (len > (std::size_t(1) << q)) {
		std::size_t half = len / 2;
		std::vector<Llr> nxt(half);
		bool second = idx >= half;
		Word c = second ? oracle::arikan_transform(v & ((Word(1) << half) - 1), half) : 0;
		for (std::size_t b = 0; b < half; b++)
			nxt[b] = second ? p_raw(cur[b], cur[b + half], int((c >> b) & 1)) : q_raw(cur[b], cur[b + half]);
		if (second) {
			v >>= half;
			idx -= half;
		}
		cur.swap(nxt);
		len = half;
	}
	return cur;
}

} // namespace detail

// Procedure: check_path_weights
/// Ellipsoidal weight of v F_t equals the SC path score of v; block
/// penalties equal the per-phase penalty sum over every aligned block
inline std::vector<CheckResult> check_path_weights(unsigned tmax, std::size_t trials, std::uint64_t seed,
                                                  double tol = 1e-9)
{
	CheckResult ew{"ellipsoidal weight = path score", true, 0, tol, ""};
	CheckResult bp{"block penalty = phase penalty sum", true, 0, tol, ""};
	for (unsigned t = 1; t <= tmax; t++) {
		std::size_t l = std::size_t(1) << t;
		for (std::size_t tr = 0; tr < trials; tr++) {
			auto rng = frame_rng(seed, tr, 100 + t);
			std::normal_distribution<double> nd(0.0, 2.0);
			std::vector<Llr> y(l);
			for (auto &x : y)
				x = nd(rng);
			for (Word v = 0; v < (Word(1) << l); v++) {
				std::vector<double> S = oracle::path_llrs(y, v, l - 1);
				std::vector<double> pen(l);
				for (std::size_t i = 0; i < l; i++)
					pen[i] = tau_penalty(S[i], int((v >> i) & 1));
				Word c = oracle::arikan_transform(v, l);
				std::vector<int> cb(l);
				for (std::size_t i = 0; i < l; i++)
					cb[i] = int((c >> i) & 1);
				double score = 0;
				for (double p : pen)
					score += p;
				ew.value = std::max(ew.value, std::fabs(ellipsoidal_weight(cb, y) - score));
				for (unsigned q = 0; q <= t; q++) {
					std::size_t bl = std::size_t(1) << q;
					for (std::size_t i = 0; i < l; i += bl) {
						std::vector<Llr> s = detail::layer_values(y, v, i, q);
						double sum = 0;
						for (std::size_t b = i; b < i + bl; b++)
							sum += pen[b];
						double got = block_penalty(s, (v >> i) & ((Word(1) << bl) - 1));
						bp.value = std::max(bp.value, std::fabs(got - sum));
					}
				}
			}
		}
	}
	ew.pass = ew.value <= tol;
	bp.pass = bp.value <= tol;
	return {ew, bp};
}

// Procedure: check_strategies
/// Each shortcut disabled on its own leaves every phase LLR unchanged
inline std::vector<CheckResult> check_strategies(const Kernel &k, std::size_t frames, std::uint64_t seed,
                                                 double tol = 1e-9)
{
	TransitionSpec s = derive_transition(k);
	KernelPlan base = make_plan(s);
	struct Variant {
		const char *name;
		bool ProcessorOptions::*flag;
	};
	const Variant vars[] = {{"fht", &ProcessorOptions::fht},
	                        {"blocks", &ProcessorOptions::blocks},
	                        {"recursive-max", &ProcessorOptions::recursive_max},
	                        {"max-reuse", &ProcessorOptions::max_reuse},
	                        {"known-argmax", &ProcessorOptions::known_argmax},
	                        {"cse-reuse", &ProcessorOptions::cse_reuse}};
	std::vector<CheckResult> out;
	for (const Variant &v : vars) {
		ProcessorOptions o;
		o.*(v.flag) = false;
		KernelPlan alt = make_plan(s, o);
		CheckResult r{std::string("without ") + v.name + " (" + k.name + ")", true, 0, tol, ""};
		for (std::size_t f = 0; f < frames; f++) {
			KernelFrame fr = kernel_frame(k, seed, f);
			auto a = processor_llrs(base, fr.y, fr.u);
			auto b = processor_llrs(alt, fr.y, fr.u);
			for (std::size_t phi = 0; phi < k.size; phi++)
				r.value = std::max(r.value, std::fabs(a[phi] - b[phi]));
		}
		r.pass = r.value <= tol;
		out.push_back(r);
	}
	return out;
}

} // namespace wproc
