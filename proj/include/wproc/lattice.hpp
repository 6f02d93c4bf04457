/*------------------------------------------------------------------------
Layered storage of intermediate Arikan LLRs for one kernel instance

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
#include <vector>

#include "arikan.hpp"

namespace wproc {

/// Bit masks shared by all lattices of one kernel size
struct LatticeGeometry {
	unsigned t = 0;
	/// comb[lambda][beta]: positions p with p mod 2^{t-lambda} == beta
	std::vector<std::vector<Word>> comb;

	static LatticeGeometry make(unsigned t)
	{
		LatticeGeometry g;
		g.t = t;
		std::size_t l = std::size_t(1) << t;
		g.comb.resize(t + 1);
		for (unsigned lam = 0; lam <= t; lam++) {
			std::size_t M = std::size_t(1) << (t - lam);
			g.comb[lam].assign(M, 0);
			for (std::size_t p = 0; p < l; p++)
				g.comb[lam][p % M] |= Word(1) << p;
		}
		return g;
	}
};

inline Word low_mask(std::size_t n) { return n >= 64 ? ~Word(0) : ((Word(1) << n) - 1); }

/// S_lambda^{(j)}[beta] values keyed by (beta, partial sums of instance beta).
/// Each layer holds entries of a single index j; moving to another j drops them.
class LlrLattice {
public:
	struct Entry {
		unsigned beta;
		Word key;
		Llr value;
	};

	LlrLattice() = default;
	explicit LlrLattice(const LatticeGeometry *g) : m_g(g), m_layers(g->t + 1), m_j(g->t + 1, -1) {}

	void load(const Llr *y)
	{
		std::size_t l = std::size_t(1) << m_g->t;
		m_y.assign(y, y + l);
		clear();
	}

	void clear()
	{
		for (auto &L : m_layers)
			L.clear();
		std::fill(m_j.begin(), m_j.end(), -1);
	}

	const std::vector<Llr> &channel() const { return m_y; }
	unsigned t() const { return m_g->t; }

	/// P_lambda(v) for every layer, v packed LSB first
	void partial_sums(Word v, std::array<Word, 8> &pv) const
	{
		for (unsigned lam = 1; lam <= m_g->t; lam++)
			pv[lam] = arikan_blocks(v, m_g->t - lam);
	}

	/// S_lambda^{(j)}[beta] for the prefix whose partial sums are pv.
	/// Counts one operation per newly computed value; per-layer miss counts go to misses.
	Llr eval(unsigned lam, unsigned beta, std::size_t j, const std::array<Word, 8> &pv, OpCounter &c,
	         std::uint64_t *misses = nullptr)
	{
		if (lam == 0)
			return m_y[beta];
		std::size_t M = std::size_t(1) << (m_g->t - lam);
		Word key = pv[lam] & m_g->comb[lam][beta] & low_mask(M * j);
		auto &L = m_layers[lam];
		if (m_j[lam] != long(j)) {
			L.clear();
			m_j[lam] = long(j);
		}
		for (const Entry &e : L)
			if (e.beta == beta && e.key == key)
				return e.value;
		Llr a = eval(lam - 1, beta, j / 2, pv, c, misses);
		Llr b = eval(lam - 1, unsigned(beta + M), j / 2, pv, c, misses);
		Llr r;
		if (j & 1)
			r = p_func(a, b, int((pv[lam] >> (M * (j - 1) + beta)) & 1), c);
		else
			r = q_func(a, b, c);
		if (misses)
			misses[lam]++;
		m_layers[lam].push_back({beta, key, r});
		return r;
	}

	/// S_t^{(i)}(v_0^{i-1})
	Llr top(std::size_t i, Word v, OpCounter &c, std::uint64_t *misses = nullptr)
	{
		std::array<Word, 8> pv{};
		partial_sums(v, pv);
		return eval(m_g->t, 0, i, pv, c, misses);
	}

	std::size_t layer_size(unsigned lam) const { return m_layers[lam].size(); }

private:
	const LatticeGeometry *m_g = nullptr;
	std::vector<Llr> m_y;
	std::vector<std::vector<Entry>> m_layers;
	std::vector<long> m_j;
};

} // namespace wproc
