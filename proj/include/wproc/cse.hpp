/*------------------------------------------------------------------------
Common subexpressions of Arikan path LLRs and their evaluation plans

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
#include <map>
#include <vector>

#include "arikan.hpp"
#include "transition.hpp"

namespace wproc {

/// GF(2)-affine bit: <umask, u_0^{phi-1}> + c
struct AffineBit {
	Word umask = 0;
	int c = 0;
	AffineBit operator^(const AffineBit &o) const { return {umask ^ o.umask, c ^ o.c}; }
	bool operator==(const AffineBit &) const = default;
	auto operator<=>(const AffineBit &) const = default;
	int eval(Word u) const { return parity(umask & u) ^ c; }
};

// CsePair: partial sums and a channel subvector (offset, stride)
struct CsePair {
	std::vector<AffineBit> v;
	std::size_t offset = 0;
	std::size_t stride = 1;
	// evaluation: Q or P over two pairs of the layer below
	bool is_p = false;
	AffineBit bit;
	std::size_t child_a = 0, child_b = 0;
};

struct CseTable {
	unsigned t = 0;
	std::size_t phi = 0, h = 0;
	std::vector<std::vector<CsePair>> X;  // X[lambda], X[0] left empty
	std::vector<Word> top_assign;         // free-bit assignment of each prefix in Z
	std::vector<std::size_t> top_index;   // its pair in X[t]

	std::size_t size(unsigned lam) const { return lam == 0 ? (std::size_t(1) << t) : X[lam].size(); }
	std::size_t total() const
	{
		std::size_t s = 0;
		for (unsigned lam = 1; lam <= t; lam++)
			s += X[lam].size();
		return s;
	}
};

namespace detail {

struct PairKey {
	std::vector<AffineBit> v;
	std::size_t offset, stride;
	auto operator<=>(const PairKey &) const = default;
};

inline std::size_t intern(std::vector<CsePair> &layer, std::map<PairKey, std::size_t> &idx, CsePair p)
{
	PairKey k{p.v, p.offset, p.stride};
	auto it = idx.find(k);
	if (it != idx.end())
		return it->second;
	std::size_t id = layer.size();
	idx.emplace(std::move(k), id);
	layer.push_back(std::move(p));
	return id;
}

} // namespace detail

// Procedure: get_cse_pairs
/// Distinct (partial sum, channel subvector) pairs needed for S_t^{(h)} over all
/// prefixes v_0^{h-1} of the phase-phi window; decided u's stay symbolic.
inline CseTable get_cse_pairs(const TransitionSpec &s, std::size_t h, std::size_t phi)
{
	if (phi >= s.l())
		throw Error(ErrorCode::PhaseOutOfRange, "phase beyond kernel size");
	int hp = phi ? s.h[phi - 1] : -1;
	if (int(h) <= hp || int(h) > s.h[phi])
		throw Error(ErrorCode::PhaseOutOfRange, "internal phase outside (h_{phi-1}, h_phi]");
	unsigned t = s.t();
	CseTable tb;
	tb.t = t;
	tb.phi = phi;
	tb.h = h;
	tb.X.resize(t + 1);

	// positions below h: fixed by u_0..u_{phi-1} or free
	std::vector<int> free_pos;
	for (std::size_t i = 0; i < h; i++) {
		int q = s.phase_of_v[i];
		if (q < 0 || std::size_t(q) >= phi)
			free_pos.push_back(int(i));
	}
	std::vector<std::map<detail::PairKey, std::size_t>> index(t + 1);
	for (Word a = 0; a < (Word(1) << free_pos.size()); a++) {
		std::vector<AffineBit> v(h);
		std::size_t fi = 0;
		Word assign = 0;
		for (std::size_t i = 0; i < h; i++) {
			if (fi < free_pos.size() && free_pos[fi] == int(i)) {
				v[i] = {0, int((a >> fi) & 1)};
				assign |= Word(v[i].c) << i;
				fi++;
				continue;
			}
			const VExpr &e = s.v_expr[std::size_t(s.phase_of_v[i])];
			AffineBit b{e.u_mask, 0};
			for (std::size_t j = 0; j < i; j++)
				if ((e.v_mask >> j) & 1)
					b = b ^ v[j];
			v[i] = b;
		}
		CsePair p;
		p.v = v;
		p.offset = 0;
		p.stride = 1;
		std::size_t before = tb.X[t].size();
		std::size_t id = detail::intern(tb.X[t], index[t], p);
		if (id == before) {
			tb.top_assign.push_back(assign);
			tb.top_index.push_back(id);
		}
	}
	// split layer by layer into even-xor-odd and odd halves
	for (unsigned lam = t; lam >= 1; lam--) {
		std::size_t j = h >> (t - lam);
		for (std::size_t k = 0; k < tb.X[lam].size(); k++) {
			CsePair &p = tb.X[lam][k];
			std::size_t jc = j / 2;
			p.is_p = j & 1;
			if (p.is_p)
				p.bit = p.v[j - 1];
			if (lam == 1) {
				p.child_a = p.offset;
				p.child_b = p.offset + p.stride;
				continue;
			}
			CsePair e, o;
			e.v.resize(jc);
			o.v.resize(jc);
			for (std::size_t r = 0; r < jc; r++) {
				e.v[r] = p.v[2 * r] ^ p.v[2 * r + 1];
				o.v[r] = p.v[2 * r + 1];
			}
			e.offset = p.offset;
			o.offset = p.offset + p.stride;
			e.stride = o.stride = 2 * p.stride;
			std::size_t ia = detail::intern(tb.X[lam - 1], index[lam - 1], std::move(e));
			std::size_t ib = detail::intern(tb.X[lam - 1], index[lam - 1], std::move(o));
			tb.X[lam][k].child_a = ia;
			tb.X[lam][k].child_b = ib;
		}
	}
	return tb;
}

/// Largest s with 2^s dividing i, psi(0) = infinity
inline unsigned psi(std::size_t i) { return i == 0 ? 64u : unsigned(std::countr_zero(i)); }

// Procedure: reuse_start_layer
/// First layer that must be recomputed for internal phase h of phase phi
inline unsigned reuse_start_layer(std::size_t phi, std::size_t h, const TransitionSpec &s)
{
	unsigned t = s.t();
	unsigned ps = psi(h);
	unsigned start = ps >= t ? 1u : t - ps;
	int hp = phi ? s.h[phi - 1] : -1;
	if (phi > 0 && int(h) == hp + 1 && s.window_size(phi) > s.window_size(phi - 1))
		start = 1;
	return std::max(start, 1u);
}

struct Instr {
	bool is_p;
	std::uint32_t a, b, dst;
	AffineBit bit;
};

struct EvalPlan {
	unsigned t = 0;
	std::size_t phi = 0, h = 0;
	std::vector<std::vector<Instr>> layers;  // layers[lambda], bottom-up order
	std::vector<std::size_t> slots;          // slot count per layer
	std::vector<Word> top_assign;
	std::vector<std::uint32_t> top_slot;
	unsigned start_layer = 1;

	std::size_t instructions() const
	{
		std::size_t n = 0;
		for (auto &L : layers)
			n += L.size();
		return n;
	}
};

// Procedure: compile_plan
inline EvalPlan compile_plan(const CseTable &tb, const TransitionSpec &s)
{
	EvalPlan p;
	p.t = tb.t;
	p.phi = tb.phi;
	p.h = tb.h;
	p.layers.resize(tb.t + 1);
	p.slots.resize(tb.t + 1);
	p.slots[0] = tb.size(0);
	for (unsigned lam = 1; lam <= tb.t; lam++) {
		p.slots[lam] = tb.X[lam].size();
		for (std::size_t k = 0; k < tb.X[lam].size(); k++) {
			const CsePair &c = tb.X[lam][k];
			p.layers[lam].push_back(
			    {c.is_p, std::uint32_t(c.child_a), std::uint32_t(c.child_b), std::uint32_t(k), c.bit});
		}
	}
	p.top_assign = tb.top_assign;
	for (std::size_t i : tb.top_index)
		p.top_slot.push_back(std::uint32_t(i));
	p.start_layer = reuse_start_layer(tb.phi, tb.h, s);
	return p;
}

/// Slot storage for executing one plan
struct PlanLattice {
	std::vector<std::vector<Llr>> slots;
	std::vector<char> filled;

	void load(const EvalPlan &p, const std::vector<Llr> &y)
	{
		slots.assign(p.t + 1, {});
		filled.assign(p.t + 1, 0);
		slots[0] = y;
		filled[0] = 1;
	}
};

// Procedure: compute_llrs
/// Executes layers from_layer..t; lower layers must be filled by an earlier run of the same plan.
/// Returns S_t^{(h)} for each prefix, in top_assign order.
inline std::vector<Llr> compute_llrs(const EvalPlan &p, PlanLattice &lat, Word u, OpCounter &c,
                                     unsigned from_layer = 1)
{
	if (lat.slots.size() != p.t + 1)
		throw Error(ErrorCode::MissingLayer, "lattice not loaded for this plan");
	for (unsigned lam = 0; lam < from_layer && lam <= p.t; lam++)
		if (!lat.filled[lam] || lat.slots[lam].size() != p.slots[lam])
			throw Error(ErrorCode::MissingLayer, "layer " + std::to_string(lam) + " was never populated");
	for (unsigned lam = std::max(from_layer, 1u); lam <= p.t; lam++) {
		const std::vector<Llr> &src = lat.slots[lam - 1];
		std::vector<Llr> &dst = lat.slots[lam];
		dst.assign(p.slots[lam], 0.0);
		for (const Instr &in : p.layers[lam])
			dst[in.dst] = in.is_p ? p_func(src[in.a], src[in.b], in.bit.eval(u), c) : q_func(src[in.a], src[in.b], c);
		lat.filled[lam] = 1;
	}
	std::vector<Llr> out;
	out.reserve(p.top_slot.size());
	for (std::uint32_t k : p.top_slot)
		out.push_back(lat.slots[p.t][k]);
	return out;
}

/// |X_lambda| table at h = h_phi for every phase that raises h
inline std::vector<CseTable> cse_tables(const TransitionSpec &s)
{
	std::vector<CseTable> r;
	for (std::size_t phi = 0; phi < s.l(); phi++)
		if (phi == 0 || s.h[phi] > s.h[phi - 1])
			r.push_back(get_cse_pairs(s, std::size_t(s.h[phi]), phi));
	return r;
}

} // namespace wproc
