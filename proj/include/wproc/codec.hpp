/*------------------------------------------------------------------------
Polar codes with l x l kernels: encoder, SC and SCL decoders

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
#include <istream>
#include <memory>
#include <numeric>
#include <ostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "channel.hpp"
#include "kernels.hpp"
#include "processor.hpp"

namespace wproc {

/// Frozen symbol: static zero, or the sum of earlier symbols
struct FrozenConstraint {
	std::size_t index = 0;
	std::vector<std::size_t> deps;
};

struct CodeSpec {
	Kernel kernel;
	unsigned m = 1;
	std::size_t n = 0, k = 0;
	std::vector<char> frozen;                  // per index
	std::vector<std::vector<std::size_t>> dyn; // per index, empty for static
	std::shared_ptr<const KernelPlan> plan;

	std::vector<std::size_t> info_positions() const
	{
		std::vector<std::size_t> r;
		for (std::size_t i = 0; i < n; i++)
			if (!frozen[i])
				r.push_back(i);
		return r;
	}
};

inline std::size_t ipow(std::size_t b, unsigned e)
{
	std::size_t r = 1;
	while (e--)
		r *= b;
	return r;
}

// Procedure: make_code
inline CodeSpec make_code(const Kernel &kernel, unsigned m, const std::vector<FrozenConstraint> &frozen,
                          ProcessorOptions opt = {})
{
	CodeSpec c;
	c.kernel = kernel;
	c.m = m;
	c.n = ipow(kernel.size, m);
	c.frozen.assign(c.n, 0);
	c.dyn.assign(c.n, {});
	for (const FrozenConstraint &f : frozen) {
		if (f.index >= c.n)
			throw Error(ErrorCode::LengthMismatch, "frozen index " + std::to_string(f.index) + " beyond n");
		if (c.frozen[f.index])
			throw Error(ErrorCode::ParseError, "frozen index listed twice");
		for (std::size_t d : f.deps)
			if (d >= f.index)
				throw Error(ErrorCode::ParseError, "dynamic constraint must reference earlier symbols");
		c.frozen[f.index] = 1;
		c.dyn[f.index] = f.deps;
	}
	c.k = c.n - frozen.size();
	c.plan = std::make_shared<KernelPlan>(make_plan(derive_transition(kernel), opt));
	return c;
}

inline std::vector<FrozenConstraint> static_frozen(const std::vector<std::size_t> &idx)
{
	std::vector<FrozenConstraint> r;
	for (std::size_t i : idx)
		r.push_back({i, {}});
	std::sort(r.begin(), r.end(), [](auto &a, auto &b) { return a.index < b.index; });
	return r;
}

/// One line per frozen index: "i" or "i = j1 ^ j2 ^ ..."; '#' starts a comment
inline std::vector<FrozenConstraint> parse_frozen(std::istream &in)
{
	std::vector<FrozenConstraint> r;
	std::string line;
	std::size_t lineno = 0;
	while (std::getline(in, line)) {
		lineno++;
		auto hash = line.find('#');
		if (hash != std::string::npos)
			line.resize(hash);
		if (line.find_first_not_of(" \t\r") == std::string::npos)
			continue;
		if (line.find('-') != std::string::npos)
			throw Error(ErrorCode::ParseError, "frozen file line " + std::to_string(lineno));
		for (char &ch : line)
			if (ch == '^')
				ch = ' ';
		std::string lhs = line, rhs;
		auto eq = line.find('=');
		if (eq != std::string::npos) {
			lhs = line.substr(0, eq);
			rhs = line.substr(eq + 1);
		}
		FrozenConstraint f;
		std::istringstream ls(lhs);
		if (!(ls >> f.index))
			throw Error(ErrorCode::ParseError, "frozen file line " + std::to_string(lineno));
		std::string extra;
		if (ls >> extra)
			throw Error(ErrorCode::ParseError, "frozen file line " + std::to_string(lineno));
		std::istringstream rs(rhs);
		std::string tok;
		while (rs >> tok) {
			std::size_t pos = 0;
			unsigned long v = 0;
			try {
				v = std::stoul(tok, &pos);
			} catch (const std::exception &) {
				throw Error(ErrorCode::ParseError, "frozen file line " + std::to_string(lineno));
			}
			if (pos != tok.size())
				throw Error(ErrorCode::ParseError, "frozen file line " + std::to_string(lineno));
			f.deps.push_back(v);
		}
		if (eq != std::string::npos && f.deps.empty())
			throw Error(ErrorCode::ParseError, "empty dynamic constraint on line " + std::to_string(lineno));
		r.push_back(f);
	}
	return r;
}

inline void write_frozen(std::ostream &out, const CodeSpec &c)
{
	for (std::size_t i = 0; i < c.n; i++) {
		if (!c.frozen[i])
			continue;
		out << i;
		for (std::size_t d = 0; d < c.dyn[i].size(); d++)
			out << (d ? " ^ " : " = ") << c.dyn[i][d];
		out << '\n';
	}
}

/// sum_i j_i l^i -> sum_i j_{m-1-i} l^i
inline std::size_t digit_reverse(std::size_t x, std::size_t l, unsigned m)
{
	std::size_t r = 0;
	for (unsigned i = 0; i < m; i++) {
		r = r * l + x % l;
		x /= l;
	}
	return r;
}

/// Input vector from info bits, dynamic frozen symbols resolved
inline std::vector<std::uint8_t> place_info(const CodeSpec &c, const std::vector<std::uint8_t> &info)
{
	if (info.size() != c.k)
		throw Error(ErrorCode::LengthMismatch, "info length " + std::to_string(info.size()) + " != k");
	std::vector<std::uint8_t> u(c.n, 0);
	std::size_t p = 0;
	for (std::size_t i = 0; i < c.n; i++) {
		if (!c.frozen[i])
			u[i] = info[p++] & 1;
		else
			for (std::size_t d : c.dyn[i])
				u[i] ^= u[d];
	}
	return u;
}

/// x = u G_m with G_m = M^{(m)} K^{(x)m}
inline std::vector<std::uint8_t> transform(const CodeSpec &c, const std::vector<std::uint8_t> &u)
{
	std::size_t l = c.kernel.size, n = c.n;
	if (u.size() != n)
		throw Error(ErrorCode::LengthMismatch, "input length != n");
	std::vector<std::uint8_t> x(n);
	for (std::size_t i = 0; i < n; i++)
		x[digit_reverse(i, l, c.m)] = u[i];
	std::vector<std::uint8_t> tmp(l), res(l);
	for (std::size_t stride = 1; stride < n; stride *= l) {
		for (std::size_t base = 0; base < n; base++) {
			if ((base / stride) % l != 0)
				continue;
			for (std::size_t a = 0; a < l; a++)
				tmp[a] = x[base + a * stride];
			std::fill(res.begin(), res.end(), 0);
			for (std::size_t a = 0; a < l; a++)
				if (tmp[a])
					for (std::size_t b = 0; b < l; b++)
						res[b] ^= std::uint8_t(c.kernel.matrix.get(a, b));
			for (std::size_t b = 0; b < l; b++)
				x[base + b * stride] = res[b];
		}
	}
	return x;
}

// Procedure: encode
inline std::vector<std::uint8_t> encode(const CodeSpec &c, const std::vector<std::uint8_t> &info)
{
	return transform(c, place_info(c, info));
}

/// Dense G_m, reference for the staged transform
inline BinMatrix generator_matrix(const CodeSpec &c)
{
	BinMatrix kp = kronecker_power(c.kernel.matrix, c.m);
	BinMatrix g(c.n, c.n);
	for (std::size_t i = 0; i < c.n; i++) {
		std::size_t r = digit_reverse(i, c.kernel.size, c.m);
		for (std::size_t j = 0; j < c.n; j++)
			g.set(i, j, kp.get(r, j));
	}
	return g;
}

/// Decoder for one l^level sub-block; channel values or children feed the kernel processor
struct DecNode {
	unsigned level = 1;
	std::size_t block = 0, phi = 0;
	Word block_u = 0;
	std::vector<Llr> y;  // level 1 only
	std::vector<std::shared_ptr<DecNode>> child;
	ProcessorState proc;
	std::vector<Llr> kin;
};

namespace detail {

inline std::shared_ptr<DecNode> &mutable_node(std::shared_ptr<DecNode> &p)
{
	if (p.use_count() > 1)
		p = std::make_shared<DecNode>(*p);
	return p;
}

inline std::shared_ptr<DecNode> build_node(const KernelPlan *plan, unsigned level, const Llr *y, std::size_t l)
{
	auto nd = std::make_shared<DecNode>();
	nd->level = level;
	nd->proc = ProcessorState(plan);
	nd->kin.assign(l, 0.0);
	std::size_t len = ipow(l, level);
	if (level == 1)
		nd->y.assign(y, y + l);
	else
		for (std::size_t j = 0; j < l; j++)
			nd->child.push_back(build_node(plan, level - 1, y + j * (len / l), l));
	return nd;
}

inline Llr next_llr(std::shared_ptr<DecNode> &ptr, OpCounter &ops)
{
	DecNode &nd = *mutable_node(ptr);
	std::size_t l = nd.kin.size();
	if (nd.phi == 0) {
		if (nd.level == 1)
			nd.kin = nd.y;
		else
			for (std::size_t j = 0; j < l; j++)
				nd.kin[j] = next_llr(nd.child[j], ops);
		nd.proc.load(nd.kin.data());
	}
	OpCounter before = nd.proc.ops;
	Llr r = process_phase(nd.proc, nd.phi);
	ops += nd.proc.ops - before;
	return r;
}

inline void decide(std::shared_ptr<DecNode> &ptr, int bit, const std::vector<Word> &rows)
{
	DecNode &nd = *mutable_node(ptr);
	std::size_t l = nd.kin.size();
	record_decision(nd.proc, nd.phi, bit);
	nd.block_u |= Word(bit & 1) << nd.phi;
	if (++nd.phi < l)
		return;
	if (nd.level > 1) {
		Word w = 0;
		for (std::size_t i = 0; i < l; i++)
			if ((nd.block_u >> i) & 1)
				w ^= rows[i];
		for (std::size_t j = 0; j < l; j++)
			decide(nd.child[j], int((w >> j) & 1), rows);
	}
	nd.phi = 0;
	nd.block_u = 0;
	nd.block++;
}

inline std::vector<Word> rows_of(const Kernel &k)
{
	std::vector<Word> r(k.size);
	for (std::size_t i = 0; i < k.size; i++)
		r[i] = k.matrix.row_word(i);
	return r;
}

} // namespace detail

struct DecodeResult {
	std::vector<std::uint8_t> u;
	std::vector<std::uint8_t> info;
	double score = 0;
	OpCounter ops;
	std::uint64_t select_cmps = 0;
};

inline std::vector<std::uint8_t> extract_info(const CodeSpec &c, const std::vector<std::uint8_t> &u)
{
	std::vector<std::uint8_t> info;
	info.reserve(c.k);
	for (std::size_t i = 0; i < c.n; i++)
		if (!c.frozen[i])
			info.push_back(u[i]);
	return info;
}

inline int frozen_value(const CodeSpec &c, std::size_t i, const std::vector<std::uint8_t> &u)
{
	int b = 0;
	for (std::size_t d : c.dyn[i])
		b ^= u[d];
	return b;
}

// Procedure: sc_decode
/// genie, when given, replaces every decision by the true symbol
inline DecodeResult sc_decode(const CodeSpec &c, const std::vector<Llr> &llr, std::vector<Llr> *phase_llr = nullptr,
                              const std::vector<std::uint8_t> *genie = nullptr)
{
	if (llr.size() != c.n)
		throw Error(ErrorCode::LengthMismatch, "LLR length != n");
	auto rows = detail::rows_of(c.kernel);
	auto root = detail::build_node(c.plan.get(), c.m, llr.data(), c.kernel.size);
	DecodeResult r;
	r.u.assign(c.n, 0);
	for (std::size_t i = 0; i < c.n; i++) {
		Llr s = detail::next_llr(root, r.ops);
		if (phase_llr)
			phase_llr->push_back(s);
		int b;
		if (genie)
			b = (*genie)[i];
		else if (c.frozen[i])
			b = frozen_value(c, i, r.u);
		else
			b = hard_bit(s);
		r.score += tau_penalty(s, b);
		r.u[i] = std::uint8_t(b);
		detail::decide(root, b, rows);
	}
	r.info = extract_info(c, r.u);
	return r;
}

namespace detail {

struct Candidate {
	double score;
	std::uint32_t idx;
};

inline bool cand_better(const Candidate &a, const Candidate &b)
{
	if (a.score != b.score)
		return a.score > b.score;
	return a.idx < b.idx;
}

/// Moves the L best candidates to the front, randomized pivot
inline void select_best(std::vector<Candidate> &v, std::size_t L, std::mt19937_64 &rng, std::uint64_t &cmps)
{
	std::size_t lo = 0, hi = v.size();
	while (hi - lo > 1) {
		std::size_t pi = lo + std::size_t(rng() % (hi - lo));
		std::swap(v[pi], v[hi - 1]);
		const Candidate piv = v[hi - 1];
		std::size_t store = lo;
		for (std::size_t i = lo; i + 1 < hi; i++) {
			cmps++;
			if (cand_better(v[i], piv))
				std::swap(v[i], v[store++]);
		}
		std::swap(v[store], v[hi - 1]);
		// v[lo..store) better than pivot, pivot at store
		if (store + 1 == L || store == L)
			return;
		if (store + 1 < L)
			lo = store + 1;
		else
			hi = store;
	}
}

} // namespace detail

struct ListPath {
	std::shared_ptr<DecNode> root;
	double score = 0;
	std::vector<std::uint8_t> u;
};

// Procedure: scl_decode
inline DecodeResult scl_decode(const CodeSpec &c, const std::vector<Llr> &llr, std::size_t L,
                               std::uint64_t select_seed = 0)
{
	if (llr.size() != c.n)
		throw Error(ErrorCode::LengthMismatch, "LLR length != n");
	if (L == 0)
		throw Error(ErrorCode::LengthMismatch, "list size must be positive");
	auto rows = detail::rows_of(c.kernel);
	std::mt19937_64 rng(select_seed);
	DecodeResult r;
	std::vector<ListPath> paths(1);
	paths[0].root = detail::build_node(c.plan.get(), c.m, llr.data(), c.kernel.size);
	paths[0].u.assign(c.n, 0);
	std::vector<Llr> s;
	std::vector<detail::Candidate> cand;
	for (std::size_t i = 0; i < c.n; i++) {
		s.resize(paths.size());
		for (std::size_t p = 0; p < paths.size(); p++)
			s[p] = detail::next_llr(paths[p].root, r.ops);
		if (c.frozen[i]) {
			for (std::size_t p = 0; p < paths.size(); p++) {
				int b = frozen_value(c, i, paths[p].u);
				double t = tau_penalty(s[p], b);
				if (t != 0.0)
					r.ops.additions++;
				paths[p].score += t;
				paths[p].u[i] = std::uint8_t(b);
				detail::decide(paths[p].root, b, rows);
			}
			continue;
		}
		cand.clear();
		for (std::size_t p = 0; p < paths.size(); p++)
			for (int b = 0; b < 2; b++) {
				double t = tau_penalty(s[p], b);
				if (t != 0.0)
					r.ops.additions++;
				cand.push_back({paths[p].score + t, std::uint32_t(2 * p + b)});
			}
		std::vector<char> keep(cand.size(), 1);
		if (cand.size() > L) {
			std::vector<detail::Candidate> work = cand;
			detail::select_best(work, L, rng, r.select_cmps);
			std::fill(keep.begin(), keep.end(), 0);
			for (std::size_t q = 0; q < L; q++)
				keep[work[q].idx] = 1;
		}
		std::vector<ListPath> next;
		next.reserve(std::min(cand.size(), L));
		for (std::size_t p = 0; p < paths.size(); p++) {
			for (int b = 0; b < 2; b++) {
				if (!keep[2 * p + b])
					continue;
				bool other = b == 0 && keep[2 * p + 1];
				ListPath np = other ? paths[p] : std::move(paths[p]);
				np.score = cand[2 * p + b].score;
				np.u[i] = std::uint8_t(b);
				detail::decide(np.root, b, rows);
				next.push_back(std::move(np));
			}
		}
		paths = std::move(next);
	}
	std::size_t best = 0;
	for (std::size_t p = 1; p < paths.size(); p++)
		if (paths[p].score > paths[best].score)
			best = p;
	r.u = paths[best].u;
	r.score = paths[best].score;
	r.info = extract_info(c, r.u);
	return r;
}

// Procedure: mc_rank_channels
/// Genie-aided SC error counts per input symbol over all-zero codewords
inline std::vector<std::uint64_t> mc_error_counts(const Kernel &kernel, unsigned m, double ebn0_db, double rate,
                                                  std::size_t frames, std::uint64_t seed)
{
	CodeSpec c = make_code(kernel, m, {});
	std::vector<std::uint64_t> err(c.n, 0);
	ChannelModel ch{ebn0_db, rate};
	std::vector<std::uint8_t> zero(c.n, 0);
	for (std::size_t f = 0; f < frames; f++) {
		auto rng = frame_rng(seed, f, 7);
		auto llr = ch.transmit(zero, rng);
		std::vector<Llr> s;
		sc_decode(c, llr, &s, &zero);
		for (std::size_t i = 0; i < c.n; i++)
			if (hard_bit(s[i]))
				err[i]++;
	}
	return err;
}

/// Positions ordered from least to most reliable
inline std::vector<std::size_t> reliability_order(const std::vector<std::uint64_t> &err)
{
	std::vector<std::size_t> idx(err.size());
	std::iota(idx.begin(), idx.end(), 0);
	std::stable_sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) { return err[a] > err[b]; });
	return idx;
}

inline std::vector<std::size_t> mc_rank_channels(const Kernel &kernel, unsigned m, double ebn0_db, double rate,
                                                 std::size_t frames, std::uint64_t seed)
{
	return reliability_order(mc_error_counts(kernel, m, ebn0_db, rate, frames, seed));
}

/// Static frozen set: the n - k least reliable positions
inline std::vector<FrozenConstraint> frozen_from_order(const std::vector<std::size_t> &order, std::size_t k)
{
	std::vector<std::size_t> f(order.begin(), order.begin() + std::ptrdiff_t(order.size() - k));
	return static_frozen(f);
}

} // namespace wproc
