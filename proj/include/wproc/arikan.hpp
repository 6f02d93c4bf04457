/*------------------------------------------------------------------------
Min-sum primitives of Arikan SC decoding: Q/P recursion, path scores,
ellipsoidal weight and the length-4 fast Hadamard transform

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
#include <array>
#include <bit>
#include <cmath>
#include <cstdint>
#include <vector>

#include "gf2.hpp"

namespace wproc {

using Llr = double;

struct OpCounter {
	std::uint64_t additions = 0;
	std::uint64_t comparisons = 0;

	std::uint64_t total() const { return additions + comparisons; }
	OpCounter &operator+=(const OpCounter &o)
	{
		additions += o.additions;
		comparisons += o.comparisons;
		return *this;
	}
	friend OpCounter operator-(const OpCounter &a, const OpCounter &b)
	{
		return {a.additions - b.additions, a.comparisons - b.comparisons};
	}
	bool operator==(const OpCounter &) const = default;
};

/// Sign convention: sgn(0) = +1
inline bool hard_bit(Llr s) { return s < 0; }

inline Llr q_raw(Llr a, Llr b)
{
	Llr m = std::min(std::fabs(a), std::fabs(b));
	return (hard_bit(a) != hard_bit(b)) ? -m : m;
}

inline Llr p_raw(Llr a, Llr b, int bit) { return (bit ? -a : a) + b; }

// Procedure: q_func
inline Llr q_func(Llr a, Llr b, OpCounter &c)
{
	c.comparisons++;
	return q_raw(a, b);
}

// Procedure: p_func
inline Llr p_func(Llr a, Llr b, int bit, OpCounter &c)
{
	c.additions++;
	return p_raw(a, b, bit);
}

// Procedure: tau_penalty
inline Llr tau_penalty(Llr s, int bit)
{
	return (hard_bit(s) == bool(bit)) ? 0.0 : -std::fabs(s);
}

// Procedure: path_score_extend
inline double path_score_extend(double r_prev, Llr s, int bit, OpCounter &c)
{
	Llr t = tau_penalty(s, bit);
	if (t == 0.0)
		return r_prev;
	c.additions++;
	return r_prev + t;
}

// Procedure: ellipsoidal_weight
inline double ellipsoidal_weight(const std::vector<int> &c, const std::vector<Llr> &s)
{
	if (c.size() != s.size())
		throw Error(ErrorCode::LengthMismatch, "ellipsoidal weight: length mismatch");
	double e = 0;
	for (std::size_t i = 0; i < c.size(); i++)
		e += tau_penalty(s[i], c[i]);
	return e;
}

/// Walsh-Hadamard transform of 4 values, 8 additions.
/// out[w] = sum_b (-1)^{<w,b>} s_b
inline std::array<Llr, 4> hadamard4(const std::array<Llr, 4> &s, OpCounter &c)
{
	Llr a0 = s[0] + s[1], a1 = s[0] - s[1], a2 = s[2] + s[3], a3 = s[2] - s[3];
	c.additions += 8;
	return {a0 + a2, a1 + a3, a0 - a2, a1 - a3};
}

/// Index of v = (v_0 v_1 v_2 v_3) in the fht4 output, v_0 fixed by the caller
inline int fht4_index(int v1, int v2, int v3) { return v1 | (v2 << 1) | (v3 << 2); }

// Procedure: fht4
/// Correlations sum_b (-1)^{c_b} s_b for the 8 words c = v F_2 with v_0 = first
/// and (v_1,v_2,v_3) free, indexed by fht4_index. Costs 8 additions.
inline std::array<Llr, 8> fht4(const std::array<Llr, 4> &s, int first, OpCounter &c)
{
	std::array<Llr, 4> x = s;
	if (first)
		x[0] = -x[0];
	std::array<Llr, 4> hd = hadamard4(x, c);
	std::array<Llr, 8> out{};
	for (int v = 0; v < 8; v++) {
		int v1 = v & 1, v2 = (v >> 1) & 1, v3 = (v >> 2) & 1;
		// c' = v1 (1100) + v2 (1010) + v3 (1111)
		int e = v1 ^ v2 ^ v3;           // c'_0
		int w0 = (v1 ^ v3) ^ e;         // c'_1 + c'_0
		int w1 = (v2 ^ v3) ^ e;         // c'_2 + c'_0
		Llr val = hd[w0 | (w1 << 1)];
		out[v] = e ? -val : val;
	}
	return out;
}

// Procedure: block_penalty
/// sum_b tau(s_b, c_b), c = v F_q, v packed into the low 2^q bits
inline double block_penalty(const std::vector<Llr> &s, Word v)
{
	std::size_t n = s.size();
	unsigned q = unsigned(std::countr_zero(n));
	Word c = arikan_blocks(v, q);
	double r = 0;
	for (std::size_t b = 0; b < n; b++)
		r += tau_penalty(s[b], int((c >> b) & 1));
	return r;
}

/// Plain recursive evaluation of S_lambda^{(i)}(v_0^{i-1}, y), N = y.size() = 2^lambda.
/// No reuse, used as a reference.
inline Llr arikan_llr(const std::vector<Llr> &y, const std::vector<int> &v, std::size_t i)
{
	std::size_t n = y.size();
	if (n == 1)
		return y[0];
	std::size_t half = n / 2;
	std::vector<Llr> z(half);
	if (i < half) {
		for (std::size_t b = 0; b < half; b++)
			z[b] = q_raw(y[b], y[b + half]);
		return arikan_llr(z, v, i);
	}
	// c = v_0^{half-1} F on the first half
	std::vector<int> c(v.begin(), v.begin() + std::ptrdiff_t(half));
	for (std::size_t s = 1; s < half; s <<= 1)
		for (std::size_t b = 0; b < half; b++)
			if (!(b & s))
				c[b] ^= c[b | s];
	for (std::size_t b = 0; b < half; b++)
		z[b] = p_raw(y[b], y[b + half], c[b]);
	std::vector<int> rest(v.begin() + std::ptrdiff_t(half), v.end());
	return arikan_llr(z, rest, i - half);
}

/// SC path score of v_0^{k-1}: sum of tau over the first k phases
inline double arikan_path_score(const std::vector<Llr> &y, const std::vector<int> &v, std::size_t k)
{
	double r = 0;
	for (std::size_t i = 0; i < k; i++)
		r += tau_penalty(arikan_llr(y, v, i), v[i]);
	return r;
}

/// Standard layered min-sum SC over F_t with intermediate LLR reuse.
/// Layer lambda stores 2^{t-lambda} values, partial sums are kept per layer.
class ArikanSC {
public:
	explicit ArikanSC(unsigned t) : m_t(t), m_l(std::size_t(1) << t), m_S(t + 1), m_C(t + 1)
	{
		for (unsigned lam = 0; lam <= t; lam++) {
			m_S[lam].assign(std::size_t(1) << (t - lam), 0.0);
			m_C[lam].assign(std::size_t(1) << (t - lam), 0);
		}
	}

	void load(const std::vector<Llr> &y)
	{
		m_S[0] = y;
		m_phase = 0;
		m_v.assign(m_l, 0);
	}

	/// S_t^{(i)} for the current phase i
	Llr next(OpCounter &c)
	{
		std::size_t i = m_phase;
		unsigned s = (i == 0) ? m_t : std::min(m_t, unsigned(std::countr_zero(i)));
		for (unsigned lam = std::max(1u, m_t - s); lam <= m_t; lam++) {
			std::size_t M = std::size_t(1) << (m_t - lam);
			std::size_t j = i >> (m_t - lam);
			const std::vector<Llr> &up = m_S[lam - 1];
			for (std::size_t b = 0; b < M; b++)
				m_S[lam][b] = (j & 1) ? p_func(up[b], up[b + M], m_C[lam][b], c) : q_func(up[b], up[b + M], c);
		}
		return m_S[m_t][0];
	}

	/// Bind v_i and update partial sums c^{(j)} used by the next P nodes
	void decide(int bit)
	{
		std::size_t i = m_phase;
		m_v[i] = bit;
		m_phase++;
		std::size_t p = m_phase;
		for (unsigned lam = 1; lam <= m_t; lam++) {
			std::size_t M = std::size_t(1) << (m_t - lam);
			std::size_t j = p >> (m_t - lam);
			if ((j & 1) && (p % M) == 0) {
				// c^{(j-1)} = v_{M(j-1)}^{Mj-1} F_{t-lambda}
				Word blk = 0;
				for (std::size_t b = 0; b < M; b++)
					blk |= Word(m_v[M * (j - 1) + b]) << b;
				blk = arikan_blocks(blk, m_t - lam);
				for (std::size_t b = 0; b < M; b++)
					m_C[lam][b] = int((blk >> b) & 1);
			}
		}
	}

	std::size_t phase() const { return m_phase; }

private:
	unsigned m_t;
	std::size_t m_l;
	std::size_t m_phase = 0;
	std::vector<std::vector<Llr>> m_S;
	std::vector<std::vector<int>> m_C;
	std::vector<int> m_v;
};

} // namespace wproc
