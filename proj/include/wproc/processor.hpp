/*------------------------------------------------------------------------
Window processing of one kernel stage in the LLR domain

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

#include <array>
#include <memory>
#include <string>
#include <vector>

#include "arikan.hpp"
#include "cse.hpp"
#include "lattice.hpp"
#include "transition.hpp"

namespace wproc {

struct ProcessorOptions {
	bool fht = true;            // length-4 RM coset blocks via fht4
	bool blocks = true;         // score blocks over aligned Arikan sub-blocks in step 1
	bool recursive_max = true;  // M-buffers over groups with equal h
	bool max_reuse = true;      // argmax carried over from the previous phase
	bool known_argmax = true;   // structurally zero and FHT argmax shortcuts
	bool cse_reuse = true;      // keep lattice layers across phases

	static ProcessorOptions plain()
	{
		return {false, false, false, false, false, true};
	}
};

enum class PhaseKind { Passthrough, General, Follower };

struct PhasePlan {
	PhaseKind kind = PhaseKind::General;
	int h = 0;
	int hp = -1;     // h_{phi-1}, -1 at phi = 0
	int root = -1;   // group root for followers
	int q = 0;       // group depth at the root
	int pos = 0;     // position inside the group
	Word determined = 0;  // v positions fixed by u_0..u_{phi-1}
};

struct KernelPlan {
	TransitionSpec spec;
	ProcessorOptions opt;
	LatticeGeometry geo;
	std::vector<PhasePlan> phases;
};

/// Step strategy labels, matching the count-ops table
inline const char *max_kind_name(int k)
{
	static const char *names[] = {"arikan", "plain", "fht", "zero", "reuse(4a)", "recmax(4b)", "follower"};
	return names[k];
}

enum MaxKind { MK_PASSTHROUGH = 0, MK_PLAIN, MK_FHT, MK_ZERO, MK_REUSE, MK_ROOT, MK_FOLLOWER };

struct PhaseReport {
	std::array<OpCounter, 6> step{};  // index 1..5
	std::array<std::uint64_t, 8> x{}; // lattice values computed in step 2, by layer
	int max_kind = MK_PLAIN;
	OpCounter total() const
	{
		OpCounter c;
		for (auto &s : step)
			c += s;
		return c;
	}
};

// Procedure: make_plan
inline KernelPlan make_plan(const TransitionSpec &spec, ProcessorOptions opt = {})
{
	if (spec.max_window() > 8)
		throw Error(ErrorCode::TooLarge, "decoding windows above 8 are not supported");
	if (spec.t() > 6)
		throw Error(ErrorCode::TooLarge, "kernel size above 64");
	KernelPlan p;
	p.spec = spec;
	p.opt = opt;
	p.geo = LatticeGeometry::make(spec.t());
	std::size_t l = spec.l();
	p.phases.resize(l);
	for (std::size_t phi = 0; phi < l; phi++) {
		PhasePlan &pp = p.phases[phi];
		pp.h = spec.h[phi];
		pp.hp = phi ? spec.h[phi - 1] : -1;
		for (std::size_t q = 0; q < phi; q++)
			pp.determined |= Word(1) << spec.omega[q];
		if (pp.h == pp.hp) {
			pp.kind = PhaseKind::Follower;
			pp.root = p.phases[phi - 1].kind == PhaseKind::Follower ? p.phases[phi - 1].root : int(phi - 1);
			pp.pos = int(phi) - pp.root;
			p.phases[pp.root].q = pp.pos;
		} else if (spec.windows[phi].empty() && pp.h == pp.hp + 1) {
			pp.kind = PhaseKind::Passthrough;
		} else {
			pp.kind = PhaseKind::General;
		}
	}
	return p;
}

struct ScoreEntry {
	Word v;
	double score;
	bool zero;  // exactly 0 by construction, hence a maximum of an exact table
};

struct ArgMax {
	Word v = 0;
	double score = 0;
	bool valid = false;
};

/// Lexicographic order on v_0, v_1, ...
inline bool lex_less(Word a, Word b)
{
	Word x = a ^ b;
	if (!x)
		return false;
	return !((a >> std::countr_zero(x)) & 1);
}

inline bool better(const ArgMax &a, const ArgMax &b)
{
	if (!b.valid)
		return a.valid;
	if (!a.valid)
		return false;
	if (a.score != b.score)
		return a.score > b.score;
	return lex_less(a.v, b.v);
}

struct ProcessorState {
	const KernelPlan *plan = nullptr;
	LlrLattice lat;
	Word u = 0;
	std::size_t phase = 0;
	bool pending = false;  // processed, waiting for the decision
	int level = -1;        // scores cover v_0^{level}
	std::vector<ScoreEntry> tab;
	bool inexact = false;  // FHT-scaled scores, no structural zeros
	ArgMax best[2];
	ArgMax chosen;
	std::vector<std::vector<ArgMax>> M;
	// FHT argmax data of the last step-1 block
	bool fht_valid = false;
	std::array<Llr, 4> fht_h{};
	std::array<std::size_t, 8> fht_entry{};
	OpCounter ops;
	bool keep_reports = false;
	std::vector<PhaseReport> reports;

	ProcessorState() = default;
	explicit ProcessorState(const KernelPlan *p) : plan(p), lat(&p->geo) {}

	void load(const Llr *y)
	{
		lat.load(y);
		u = 0;
		phase = 0;
		pending = false;
		level = -1;
		tab.assign(1, {0, 0.0, true});
		inexact = false;
		best[0] = best[1] = chosen = {};
		fht_valid = false;
		reports.clear();
	}
};

namespace detail {

inline int u_bit(const TransitionSpec &s, std::size_t phi, Word v) { return parity(s.u_expr[phi] & v); }

/// Value of a determined position i given u and the earlier bits of v
inline int determined_bit(const TransitionSpec &s, int i, Word u, Word v)
{
	int q = s.phase_of_v[i];
	return parity(s.v_expr[q].u_mask & u) ^ parity(s.v_expr[q].v_mask & v);
}

/// Extend every entry by position pos given S_t^{(pos)} of each entry
inline std::vector<ScoreEntry> extend(const ProcessorState &st, const PhasePlan &pp, int pos,
                                      const std::vector<ScoreEntry> &tab, const std::vector<Llr> &S, OpCounter &c)
{
	const TransitionSpec &s = st.plan->spec;
	std::vector<ScoreEntry> out;
	out.reserve(tab.size() * 2);
	bool fixed = (pp.determined >> pos) & 1;
	for (std::size_t k = 0; k < tab.size(); k++) {
		const ScoreEntry &e = tab[k];
		int hb = hard_bit(S[k]);
		double pen = -std::fabs(S[k]);
		if (fixed) {
			int b = determined_bit(s, pos, st.u, e.v);
			Word v = e.v | (Word(b) << pos);
			double t = tau_penalty(S[k], b);
			if (e.zero)
				out.push_back({v, t, false});
			else {
				c.additions++;
				out.push_back({v, e.score + t, false});
			}
			continue;
		}
		for (int b = 0; b < 2; b++) {
			Word v = e.v | (Word(b) << pos);
			if (b == hb)
				out.push_back({v, e.score, e.zero});
			else if (e.zero)
				out.push_back({v, pen, false});
			else {
				c.additions++;
				out.push_back({v, e.score + pen, false});
			}
		}
	}
	return out;
}

inline void pvs(const LlrLattice &lat, Word v, std::array<Word, 8> &pv) { lat.partial_sums(v, pv); }

} // namespace detail

// Procedure: recursive_max_build
/// M[i][idx], idx LSB-first over u_root..u_{root+i}; returns comparisons used
inline std::vector<std::vector<ArgMax>> recursive_max_build(const TransitionSpec &s, std::size_t root, int q,
                                                            const std::vector<ScoreEntry> &tab, OpCounter &c)
{
	if (root + std::size_t(q) >= s.l())
		throw Error(ErrorCode::GroupMismatch, "group exceeds kernel size");
	for (int k = 1; k <= q; k++)
		if (s.h[root + k] != s.h[root])
			throw Error(ErrorCode::GroupMismatch, "group phases do not share h");
	std::vector<std::vector<ArgMax>> M(q + 1);
	M[q].assign(std::size_t(2) << q, {});
	for (const ScoreEntry &e : tab) {
		std::size_t idx = 0;
		for (int k = 0; k <= q; k++)
			idx |= std::size_t(detail::u_bit(s, root + k, e.v)) << k;
		ArgMax cand{e.v, e.score, true};
		ArgMax &slot = M[q][idx];
		if (slot.valid)
			c.comparisons++;
		if (better(cand, slot))
			slot = cand;
	}
	for (int i = q - 1; i >= 0; i--) {
		M[i].assign(std::size_t(2) << i, {});
		for (std::size_t idx = 0; idx < M[i].size(); idx++) {
			const ArgMax &a = M[i + 1][idx], &b = M[i + 1][idx | (std::size_t(1) << (i + 1))];
			if (a.valid && b.valid)
				c.comparisons++;
			M[i][idx] = better(b, a) ? b : a;
		}
	}
	return M;
}

namespace detail {

/// Step 1: bring the score table from level hp to h-1
inline void step1(ProcessorState &st, const PhasePlan &pp, OpCounter &c)
{
	const KernelPlan &P = *st.plan;
	unsigned t = P.spec.t();
	int h = pp.h;
	st.fht_valid = false;
	int pos = st.level + 1;
	auto is_free = [&](int i) { return !((pp.determined >> i) & 1); };
	while (pos <= h - 1) {
		int a = pos & ~3;
		bool done = false;
		if (P.opt.blocks && t >= 2 && a + 3 <= h - 1) {
			bool all_free = is_free(a) && is_free(a + 1) && is_free(a + 2) && is_free(a + 3);
			bool tail_free = is_free(a + 1) && is_free(a + 2) && is_free(a + 3);
			std::array<Word, 8> pv{};
			if (a == pos && all_free) {
				// full 16-word block by subset sums of the 4 penalties
				std::vector<ScoreEntry> out;
				out.reserve(st.tab.size() * 16);
				for (const ScoreEntry &e : st.tab) {
					pvs(st.lat, e.v, pv);
					std::array<Llr, 4> sv;
					for (unsigned b = 0; b < 4; b++)
						sv[b] = st.lat.eval(t - 2, b, std::size_t(a) >> 2, pv, c);
					unsigned hard = 0;
					for (unsigned b = 0; b < 4; b++)
						hard |= unsigned(hard_bit(sv[b])) << b;
					std::array<double, 16> E{};
					for (unsigned m = 1; m < 16; m++) {
						unsigned lo = m & (m - 1);
						unsigned bit = unsigned(std::countr_zero(m));
						if (lo == 0)
							E[m] = -std::fabs(sv[bit]);
						else {
							c.additions++;
							E[m] = E[lo] - std::fabs(sv[bit]);
						}
					}
					for (unsigned cw = 0; cw < 16; cw++) {
						unsigned mism = cw ^ hard;
						Word vb = arikan_blocks(cw, 2);  // F_2 is an involution
						Word v = e.v | (vb << a);
						if (e.zero)
							out.push_back({v, E[mism], mism == 0});
						else if (mism == 0)
							out.push_back({v, e.score, false});
						else {
							c.additions++;
							out.push_back({v, e.score + E[mism], false});
						}
					}
				}
				st.tab = std::move(out);
				st.level = a + 3;
				pos = a + 4;
				done = true;
			} else if (P.opt.fht && a == pos - 1 && st.tab.size() == 1 && tail_free) {
				// v_a fixed by the prefix, coset of RM(1,2)
				const ScoreEntry e = st.tab[0];
				pvs(st.lat, e.v, pv);
				std::array<Llr, 4> sv;
				for (unsigned b = 0; b < 4; b++)
					sv[b] = st.lat.eval(t - 2, b, std::size_t(a) >> 2, pv, c);
				int f = int((e.v >> a) & 1);
				Llr x0 = f ? -sv[0] : sv[0];
				std::array<Llr, 4> hd = hadamard4({x0, sv[1], sv[2], sv[3]}, c);
				std::vector<ScoreEntry> out(8);
				for (int k = 0; k < 8; k++) {
					int v1 = k & 1, v2 = (k >> 1) & 1, v3 = (k >> 2) & 1;
					int sg = v1 ^ v2 ^ v3;
					int w = v2 | (v1 << 1);
					Llr val = sg ? -hd[w] : hd[w];
					Word v = e.v | (Word(v1) << (a + 1)) | (Word(v2) << (a + 2)) | (Word(v3) << (a + 3));
					out[k] = {v, 0.5 * val, false};
					st.fht_entry[std::size_t(w | (sg << 2))] = std::size_t(k);
				}
				st.fht_h = hd;
				st.fht_valid = true;
				st.inexact = true;
				st.tab = std::move(out);
				st.level = a + 3;
				pos = a + 4;
				done = true;
			}
		}
		if (!done) {
			std::vector<Llr> S(st.tab.size());
			for (std::size_t k = 0; k < st.tab.size(); k++)
				S[k] = st.lat.top(std::size_t(pos), st.tab[k].v, c);
			st.tab = extend(st, pp, pos, st.tab, S, c);
			st.level = pos;
			st.fht_valid = false;
			pos++;
		}
	}
}

/// Max of the entries of branch b, skipping index skip
inline ArgMax branch_max(const ProcessorState &st, std::size_t phi, int b, OpCounter &c)
{
	ArgMax m;
	for (const ScoreEntry &e : st.tab) {
		if (u_bit(st.plan->spec, phi, e.v) != b)
			continue;
		ArgMax cand{e.v, e.score, true};
		if (m.valid)
			c.comparisons++;
		if (better(cand, m))
			m = cand;
	}
	return m;
}

inline void check_order(const ProcessorState &st, std::size_t phi)
{
	if (phi >= st.plan->spec.l())
		throw Error(ErrorCode::PhaseOutOfRange, "phase beyond kernel size");
	if (st.pending && phi == st.phase + 1)
		throw Error(ErrorCode::MissingDecision, "phase " + std::to_string(st.phase) + " has no decision");
	if (st.pending || phi != st.phase)
		throw Error(ErrorCode::PhaseOrderViolation, "expected phase " + std::to_string(st.phase));
}

} // namespace detail

// Procedure: process_phase
/// Returns the phase-phi kernel input LLR; decisions u_0^{phi-1} must be recorded
inline Llr process_phase(ProcessorState &st, std::size_t phi)
{
	detail::check_order(st, phi);
	const KernelPlan &P = *st.plan;
	const TransitionSpec &s = P.spec;
	const PhasePlan &pp = P.phases[phi];
	if (!P.opt.cse_reuse)
		st.lat.clear();
	PhaseReport rep;
	Llr out = 0;
	st.pending = true;

	if (pp.kind == PhaseKind::Passthrough) {
		rep.max_kind = MK_PASSTHROUGH;
		out = st.lat.top(std::size_t(pp.h), st.tab[0].v, rep.step[2], rep.x.data());
		st.best[0] = st.best[1] = {};
	} else if (pp.kind == PhaseKind::Follower) {
		ArgMax R[2];
		if (P.opt.recursive_max && !st.M.empty()) {
			rep.max_kind = MK_FOLLOWER;
			std::size_t root = std::size_t(pp.root);
			std::size_t idx = 0;
			for (int k = 0; k < pp.pos; k++)
				idx |= std::size_t((st.u >> (root + k)) & 1) << k;
			for (int b = 0; b < 2; b++)
				R[b] = st.M[pp.pos][idx | (std::size_t(b) << pp.pos)];
		} else {
			rep.max_kind = MK_PLAIN;
			for (int b = 0; b < 2; b++)
				R[b] = detail::branch_max(st, phi, b, rep.step[4]);
		}
		rep.step[5].additions++;
		out = R[0].score - R[1].score;
		st.best[0] = R[0];
		st.best[1] = R[1];
	} else {
		// step 1
		detail::step1(st, pp, rep.step[1]);
		// step 2
		std::vector<Llr> S(st.tab.size());
		for (std::size_t k = 0; k < st.tab.size(); k++)
			S[k] = st.lat.top(std::size_t(pp.h), st.tab[k].v, rep.step[2], rep.x.data());
		// step 3
		std::vector<ScoreEntry> prev = st.tab;
		st.tab = detail::extend(st, pp, pp.h, prev, S, rep.step[3]);
		st.level = pp.h;
		bool branch_free = s.omega[phi] == pp.h;
		// step 4
		ArgMax R[2];
		int known = -1;
		if (P.opt.recursive_max && pp.q >= 1) {
			rep.max_kind = MK_ROOT;
			st.M = recursive_max_build(s, phi, pp.q, st.tab, rep.step[4]);
			R[0] = st.M[0][0];
			R[1] = st.M[0][1];
		} else {
			st.M.clear();
			if (P.opt.known_argmax && !st.inexact) {
				for (const ScoreEntry &e : st.tab)
					if (e.zero) {
						known = detail::u_bit(s, phi, e.v);
						R[known] = {e.v, 0.0, true};
						rep.max_kind = MK_ZERO;
						break;
					}
			}
			if (known < 0 && P.opt.max_reuse && branch_free && pp.h == pp.hp + 1 && phi > 0 &&
			    s.windows[phi] == s.windows[phi - 1] && st.chosen.valid) {
				for (std::size_t k = 0; k < prev.size(); k++)
					if (prev[k].v == st.chosen.v) {
						Word v = prev[k].v | (Word(hard_bit(S[k])) << pp.h);
						for (const ScoreEntry &e : st.tab)
							if (e.v == v) {
								known = detail::u_bit(s, phi, v);
								R[known] = {v, e.score, true};
								rep.max_kind = MK_REUSE;
							}
						break;
					}
			}
			if (known < 0 && P.opt.known_argmax && st.fht_valid && branch_free) {
				// max_w |H_w| over the 4 transform values
				int w = 0;
				for (int k = 1; k < 4; k++) {
					rep.step[4].comparisons++;
					if (std::fabs(st.fht_h[k]) > std::fabs(st.fht_h[w]))
						w = k;
				}
				int sg = st.fht_h[w] < 0;
				std::size_t pk = st.fht_entry[std::size_t(w | (sg << 2))];
				Word v = prev[pk].v | (Word(hard_bit(S[pk])) << pp.h);
				known = detail::u_bit(s, phi, v);
				R[known] = {v, prev[pk].score, true};
				rep.max_kind = MK_FHT;
			}
			for (int b = 0; b < 2; b++)
				if (b != known)
					R[b] = detail::branch_max(st, phi, b, rep.step[4]);
			if (known < 0)
				rep.max_kind = MK_PLAIN;
		}
		rep.step[5].additions++;
		out = R[0].score - R[1].score;
		st.best[0] = R[0];
		st.best[1] = R[1];
	}
	st.fht_valid = false;
	for (auto &c : rep.step)
		st.ops += c;
	if (st.keep_reports)
		st.reports.push_back(rep);
	return out;
}

// Procedure: record_decision
inline void record_decision(ProcessorState &st, std::size_t phi, int bit)
{
	if (!st.pending || phi != st.phase)
		throw Error(ErrorCode::PhaseOrderViolation, "decision for phase " + std::to_string(phi) +
		                                                " while phase " + std::to_string(st.phase) + " is open");
	const KernelPlan &P = *st.plan;
	const TransitionSpec &s = P.spec;
	const PhasePlan &pp = P.phases[phi];
	st.u |= Word(bit & 1) << phi;
	// complete the table up to h_phi with positions fixed by the new decision
	while (st.level < pp.h) {
		int pos = st.level + 1;
		int q = s.phase_of_v[pos];
		if (q < 0 || std::size_t(q) > phi)
			throw Error(ErrorCode::MissingLayer, "score table misses a free position");
		for (ScoreEntry &e : st.tab)
			e.v |= Word(detail::determined_bit(s, pos, st.u, e.v)) << pos;
		st.level = pos;
	}
	std::vector<ScoreEntry> kept;
	kept.reserve(st.tab.size());
	for (const ScoreEntry &e : st.tab)
		if (detail::u_bit(s, phi, e.v) == (bit & 1))
			kept.push_back({e.v, e.score, false});
	st.tab = std::move(kept);
	if (st.tab.size() == 1) {
		st.tab[0].score = 0;
		st.tab[0].zero = true;
		st.inexact = false;
	}
	st.chosen = st.best[bit & 1];
	std::size_t next = phi + 1;
	if (next >= s.l() || P.phases[next].kind != PhaseKind::Follower)
		st.M.clear();
	st.pending = false;
	st.phase = next;
}

// Procedure: memory_footprint
struct MemoryFootprint {
	std::size_t cs = 0, cr = 0, cm = 0;
	std::size_t total() const { return cs + cr + cm; }
};

inline MemoryFootprint memory_footprint(const KernelPlan &p)
{
	MemoryFootprint m;
	const TransitionSpec &s = p.spec;
	std::vector<std::size_t> mx(s.t() + 1, 0);
	for (const CseTable &tb : cse_tables(s))
		for (unsigned lam = 1; lam <= s.t(); lam++)
			mx[lam] = std::max(mx[lam], tb.size(lam));
	for (std::size_t phi = 0; phi < s.l(); phi++) {
		m.cr = std::max(m.cr, std::size_t(2) << s.window_size(phi));
		if (p.phases[phi].q >= 1)
			m.cm = std::max(m.cm, (std::size_t(2) << p.phases[phi].q) - 2);
	}
	for (unsigned lam = 1; lam <= s.t(); lam++)
		m.cs += mx[lam];
	return m;
}

} // namespace wproc
