/*------------------------------------------------------------------------
Brute-force reference computations used by tests and the verify tool

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
#include <cmath>
#include <cstdint>
#include <limits>
#include <vector>

#include "kernel.hpp"
#include "transition.hpp"

namespace wproc::oracle {

// Deliberately self-contained: no primitives from the decoding path.

inline int bit_of(std::uint64_t x, std::size_t i) { return int((x >> i) & 1); }

inline int par(std::uint64_t x)
{
	int p = 0;
	while (x) {
		p ^= 1;
		x &= x - 1;
	}
	return p;
}

/// Row i of the kernel as a packed word
inline std::vector<std::uint64_t> kernel_rows(const Kernel &k)
{
	std::vector<std::uint64_t> r(k.size, 0);
	for (std::size_t i = 0; i < k.size; i++)
		for (std::size_t j = 0; j < k.size; j++)
			if (k.matrix.get(i, j))
				r[i] |= std::uint64_t(1) << j;
	return r;
}

/// x = v F_t, x_i = sum of v_k over k containing i
inline std::uint64_t arikan_transform(std::uint64_t v, std::size_t l)
{
	std::uint64_t x = 0;
	for (std::size_t i = 0; i < l; i++) {
		int b = 0;
		for (std::size_t k = 0; k < l; k++)
			if ((k & i) == i)
				b ^= bit_of(v, k);
		x |= std::uint64_t(b) << i;
	}
	return x;
}

/// Sum of min(0, (-1)^{c_i} s_i) over i, by 8-bit lookup tables
class WeightTable {
public:
	WeightTable(const std::vector<double> &s)
	{
		m_l = s.size();
		m_hard = 0;
		for (std::size_t i = 0; i < m_l; i++)
			if (s[i] < 0)
				m_hard |= std::uint64_t(1) << i;
		std::size_t chunks = (m_l + 7) / 8;
		m_tab.assign(chunks, std::vector<double>(256, 0.0));
		for (std::size_t c = 0; c < chunks; c++)
			for (unsigned m = 0; m < 256; m++) {
				double w = 0;
				for (unsigned b = 0; b < 8; b++)
					if ((m >> b) & 1 && c * 8 + b < m_l)
						w -= std::fabs(s[c * 8 + b]);
				m_tab[c][m] = w;
			}
	}
	double weight(std::uint64_t c) const
	{
		std::uint64_t d = c ^ m_hard;
		double w = 0;
		for (std::size_t k = 0; k < m_tab.size(); k++)
			w += m_tab[k][(d >> (8 * k)) & 0xff];
		return w;
	}

private:
	std::size_t m_l;
	std::uint64_t m_hard;
	std::vector<std::vector<double>> m_tab;
};

// Procedure: exact_maxllr
/// max over continuations of E(uK, s) with u_phi = 0, minus the same with u_phi = 1
inline double exact_maxllr(const Kernel &k, std::uint64_t u_hat, std::size_t phi, const std::vector<double> &s)
{
	std::size_t l = k.size;
	if (l > 16)
		throw Error(ErrorCode::TooLarge, "full enumeration needs l <= 16");
	if (s.size() != l)
		throw Error(ErrorCode::LengthMismatch, "LLR vector length");
	auto rows = kernel_rows(k);
	WeightTable wt(s);
	double R[2];
	for (int b = 0; b < 2; b++) {
		std::uint64_t c = 0;
		for (std::size_t i = 0; i < phi; i++)
			if (bit_of(u_hat, i))
				c ^= rows[i];
		if (b)
			c ^= rows[phi];
		std::size_t free_n = l - phi - 1;
		double best = wt.weight(c);
		// Gray code over u_{phi+1}..u_{l-1}
		for (std::uint64_t g = 1; g < (std::uint64_t(1) << free_n); g++) {
			std::size_t flip = std::size_t(__builtin_ctzll(g));
			c ^= rows[phi + 1 + flip];
			best = std::max(best, wt.weight(c));
		}
		R[b] = best;
	}
	return R[0] - R[1];
}

// Procedure: exact_marginal
/// sum over continuations of prod_i W((uK)_i | y_i); w0[i], w1[i] are W(0|y_i), W(1|y_i)
inline double exact_marginal(const Kernel &k, std::uint64_t u, std::size_t phi, const std::vector<double> &w0,
                             const std::vector<double> &w1)
{
	std::size_t l = k.size;
	if (l > 16)
		throw Error(ErrorCode::TooLarge, "full enumeration needs l <= 16");
	auto rows = kernel_rows(k);
	std::uint64_t c = 0;
	for (std::size_t i = 0; i <= phi; i++)
		if (bit_of(u, i))
			c ^= rows[i];
	std::size_t free_n = l - phi - 1;
	auto prod = [&](std::uint64_t x) {
		double p = 1;
		for (std::size_t i = 0; i < l; i++)
			p *= bit_of(x, i) ? w1[i] : w0[i];
		return p;
	};
	double sum = prod(c);
	for (std::uint64_t g = 1; g < (std::uint64_t(1) << free_n); g++) {
		c ^= rows[phi + 1 + std::size_t(__builtin_ctzll(g))];
		sum += prod(c);
	}
	return sum;
}

/// Maximum instead of the sum, as a log-probability
inline double max_log_marginal(const Kernel &k, std::uint64_t u, std::size_t phi, const std::vector<double> &w0,
                               const std::vector<double> &w1)
{
	std::size_t l = k.size;
	if (l > 16)
		throw Error(ErrorCode::TooLarge, "full enumeration needs l <= 16");
	auto rows = kernel_rows(k);
	std::uint64_t c = 0;
	for (std::size_t i = 0; i <= phi; i++)
		if (bit_of(u, i))
			c ^= rows[i];
	auto lp = [&](std::uint64_t x) {
		double p = 0;
		for (std::size_t i = 0; i < l; i++)
			p += std::log(bit_of(x, i) ? w1[i] : w0[i]);
		return p;
	};
	double best = lp(c);
	for (std::uint64_t g = 1; g < (std::uint64_t(1) << (l - phi - 1)); g++) {
		c ^= rows[phi + 1 + std::size_t(__builtin_ctzll(g))];
		best = std::max(best, lp(c));
	}
	return best;
}

/// All v_0^{h_phi} consistent with u_0^{phi-1}, any u_phi
inline std::vector<std::uint64_t> enumerate_z(const TransitionSpec &s, std::size_t phi, std::uint64_t u_hat)
{
	int h = s.h[phi];
	std::vector<int> fr;
	for (int i = 0; i <= h; i++) {
		int q = s.phase_of_v[std::size_t(i)];
		if (q < 0 || std::size_t(q) >= phi)
			fr.push_back(i);
	}
	std::vector<std::uint64_t> out;
	for (std::uint64_t a = 0; a < (std::uint64_t(1) << fr.size()); a++) {
		std::uint64_t v = 0;
		std::size_t fi = 0;
		for (int i = 0; i <= h; i++) {
			int b;
			if (fi < fr.size() && fr[fi] == i)
				b = bit_of(a, fi++);
			else {
				const VExpr &e = s.v_expr[std::size_t(s.phase_of_v[std::size_t(i)])];
				b = par(e.u_mask & u_hat) ^ par(e.v_mask & v);
			}
			v |= std::uint64_t(b) << i;
		}
		for (std::size_t q = 0; q < phi; q++)
			if (par(s.u_expr[q] & v) != bit_of(u_hat, q))
				throw Error(ErrorCode::RankDeficient, "window path violates a decided symbol");
		out.push_back(v);
	}
	return out;
}

/// S_t^{(i)} for i = 0..last along one path, fresh layered recursion
inline std::vector<double> path_llrs(const std::vector<double> &y, std::uint64_t v, std::size_t last,
                                     std::uint64_t *ops = nullptr)
{
	std::size_t l = y.size();
	std::vector<double> out;
	for (std::size_t i = 0; i <= last; i++) {
		// full recursion without any cache
		std::vector<double> cur = y;
		std::uint64_t vv = v;
		std::size_t idx = i, len = l;
		while (len > 1) {
			std::size_t half = len / 2;
			std::vector<double> nxt(half);
			bool second = idx >= half;
			std::uint64_t a = 0;
			if (second) {
				std::uint64_t first = vv & ((std::uint64_t(1) << half) - 1);
				for (std::size_t b = 0; b < half; b++) {
					int x = 0;
					for (std::size_t k = 0; k < half; k++)
						if ((k & b) == b)
							x ^= bit_of(first, k);
					a |= std::uint64_t(x) << b;
				}
			}
			for (std::size_t b = 0; b < half; b++) {
				double p = cur[b], q = cur[b + half];
				if (second)
					nxt[b] = (bit_of(a, b) ? -p : p) + q;
				else {
					double m = std::min(std::fabs(p), std::fabs(q));
					nxt[b] = ((p < 0) != (q < 0)) ? -m : m;
				}
				if (ops)
					(*ops)++;
			}
			if (second) {
				vv >>= half;
				idx -= half;
			}
			cur.swap(nxt);
			len = half;
		}
		out.push_back(cur[0]);
	}
	return out;
}

// Procedure: naive_wp
/// Difference of the best path scores over Z_phi^{(0)} and Z_phi^{(1)}
inline double naive_wp(const TransitionSpec &s, std::size_t phi, const std::vector<double> &y, std::uint64_t u_hat,
                       std::uint64_t *ops = nullptr)
{
	int h = s.h[phi];
	double R[2] = {-std::numeric_limits<double>::infinity(), -std::numeric_limits<double>::infinity()};
	for (std::uint64_t v : enumerate_z(s, phi, u_hat)) {
		std::vector<double> S = path_llrs(y, v, std::size_t(h), ops);
		double r = 0;
		for (int i = 0; i <= h; i++) {
			bool mism = (S[std::size_t(i)] < 0) != bool(bit_of(v, std::size_t(i)));
			if (mism) {
				r -= std::fabs(S[std::size_t(i)]);
				if (ops)
					(*ops)++;
			}
		}
		int b = par(s.u_expr[phi] & v);
		if (ops)
			(*ops)++;
		R[b] = std::max(R[b], r);
	}
	return R[0] - R[1];
}

/// sum over v in Z_phi^{(u_phi)} of sum over v_{h+1}^{l-1} of prod W((vF)_i | y_i)
inline double arikan_window_marginal(const TransitionSpec &s, std::size_t phi, std::uint64_t u,
                                     const std::vector<double> &w0, const std::vector<double> &w1)
{
	std::size_t l = s.l();
	if (l > 16)
		throw Error(ErrorCode::TooLarge, "full enumeration needs l <= 16");
	int h = s.h[phi];
	double sum = 0;
	for (std::uint64_t v : enumerate_z(s, phi, u & ((std::uint64_t(1) << phi) - 1))) {
		if (par(s.u_expr[phi] & v) != bit_of(u, phi))
			continue;
		std::size_t rest = l - std::size_t(h) - 1;
		for (std::uint64_t c = 0; c < (std::uint64_t(1) << rest); c++) {
			std::uint64_t full = v | (c << (h + 1));
			std::uint64_t x = arikan_transform(full, l);
			double p = 1;
			for (std::size_t i = 0; i < l; i++)
				p *= bit_of(x, i) ? w1[i] : w0[i];
			sum += p;
		}
	}
	return sum;
}

} // namespace wproc::oracle
