/*------------------------------------------------------------------------
Transition matrix between a kernel and the Arikan matrix, decoding windows

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
#include <sstream>
#include <string>
#include <vector>

#include "kernel.hpp"

namespace wproc {

/// v_{omega} = <u_mask, u> + <v_mask, v>
struct VExpr {
	Word u_mask = 0;  // over u_0..u_phi
	Word v_mask = 0;  // over v_0..v_{omega-1}
};

struct TransitionSpec {
	Kernel kernel;
	BinMatrix T;                    // T K = F_t, u = v T
	std::vector<int> tau;           // last 1 in column phi of T
	std::vector<int> h;             // running max of tau
	std::vector<std::vector<int>> windows;
	std::vector<int> omega;
	std::vector<Word> u_expr;       // column phi of T, bit s = T[s][phi]
	std::vector<VExpr> v_expr;      // indexed by phase phi, defines v_{omega_phi}
	std::vector<int> phase_of_v;    // inverse of omega
	BinMatrix theta;                // minimum-span form of (TT I)

	std::size_t l() const { return kernel.size; }
	unsigned t() const { return kernel.t; }
	std::size_t window_size(std::size_t phi) const { return windows[phi].size(); }
	std::size_t max_window() const
	{
		std::size_t m = 0;
		for (auto &w : windows)
			m = std::max(m, w.size());
		return m;
	}
	Word window_mask(std::size_t phi) const
	{
		Word m = 0;
		for (int s : windows[phi])
			m |= Word(1) << s;
		return m;
	}
	/// u_phi evaluated from a packed v
	int u_of(std::size_t phi, Word v) const { return parity(u_expr[phi] & v); }
};

// Procedure: min_span_reduce
/// Row-equivalent matrix whose row i starts at column i and whose last
/// nonzero positions are pairwise distinct
inline BinMatrix min_span_reduce(const BinMatrix &theta_prime)
{
	std::size_t r = theta_prime.rows();
	if (theta_prime.cols() < r)
		throw Error(ErrorCode::ShapeMismatch, "min-span: more rows than columns");
	BinMatrix m = theta_prime;
	// forward elimination, pivot of row i at column i
	for (std::size_t c = 0; c < r; c++) {
		std::size_t p = c;
		while (p < r && !m.get(p, c))
			p++;
		if (p == r)
			throw Error(ErrorCode::RankDeficient, "leading block is not of full rank");
		m.swap_rows(p, c);
		for (std::size_t i = c + 1; i < r; i++)
			if (m.get(i, c))
				m.xor_row(i, c);
	}
	// make the ends distinct; adding a later-starting row keeps the start
	for (;;) {
		bool changed = false;
		for (std::size_t a = 0; a < r && !changed; a++)
			for (std::size_t b = a + 1; b < r; b++)
				if (m.last_one(a) == m.last_one(b)) {
					m.xor_row(a, b);
					changed = true;
					break;
				}
		if (!changed)
			break;
	}
	return m;
}

// Procedure: derive_transition
inline TransitionSpec derive_transition(const Kernel &k)
{
	std::size_t l = k.size;
	TransitionSpec s;
	s.kernel = k;
	BinMatrix Kinv = gf2_invert(k.matrix);
	s.T = multiply(arikan_matrix(k.t), Kinv);
	s.tau.resize(l);
	s.h.resize(l);
	s.u_expr.resize(l);
	int run = -1;
	for (std::size_t phi = 0; phi < l; phi++) {
		Word col = s.T.col_word(phi);
		s.u_expr[phi] = col;
		s.tau[phi] = 63 - std::countl_zero(col);
		run = std::max(run, s.tau[phi]);
		s.h[phi] = run;
	}

	// Theta' = (TT I), TT = transpose of T^{-1} with reversed columns,
	// acting on (u_{l-1},...,u_0,v_0,...,v_{l-1})
	BinMatrix Tinv = gf2_invert(s.T);
	BinMatrix tp(l, 2 * l);
	for (std::size_t j = 0; j < l; j++) {
		for (std::size_t c = 0; c < l; c++)
			tp.set(j, c, Tinv.get(l - 1 - c, j));
		tp.set(j, l + j, 1);
	}
	s.theta = min_span_reduce(tp);

	s.omega.resize(l);
	s.v_expr.resize(l);
	s.phase_of_v.assign(l, -1);
	for (std::size_t phi = 0; phi < l; phi++) {
		std::size_t row = l - 1 - phi;
		int z = s.theta.last_one(row);
		if (z < int(l))
			throw Error(ErrorCode::RankDeficient, "min-span row ends inside the u block");
		int om = z - int(l);
		s.omega[phi] = om;
		VExpr e;
		for (std::size_t q = 0; q <= phi; q++)
			if (s.theta.get(row, l - 1 - q))
				e.u_mask |= Word(1) << q;
		for (int j = 0; j < om; j++)
			if (s.theta.get(row, l + j))
				e.v_mask |= Word(1) << j;
		s.v_expr[phi] = e;
		if (s.phase_of_v[om] >= 0)
			throw Error(ErrorCode::RankDeficient, "omega values are not distinct");
		s.phase_of_v[om] = int(phi);
	}

	s.windows.resize(l);
	for (std::size_t phi = 0; phi < l; phi++) {
		std::vector<bool> taken(l, false);
		for (std::size_t q = 0; q <= phi; q++)
			taken[s.omega[q]] = true;
		for (int i = 0; i <= s.h[phi]; i++)
			if (!taken[i])
				s.windows[phi].push_back(i);
	}
	return s;
}

/// Evaluate v_0^{h_phi} from u_0^phi (bit q of u) and free window bits taken from w.
/// Positions in the window are read from w; all others follow the min-span equations.
inline Word complete_v(const TransitionSpec &s, std::size_t phi, Word u, Word w)
{
	Word v = 0;
	for (int i = 0; i <= s.h[phi]; i++) {
		int q = s.phase_of_v[i];
		int bit;
		if (q < 0 || std::size_t(q) > phi)
			bit = int((w >> i) & 1);
		else
			bit = parity(s.v_expr[q].u_mask & u) ^ parity(s.v_expr[q].v_mask & v);
		v |= Word(bit) << i;
	}
	return v;
}

inline std::string format_vset(Word mask, const char *sym = "v")
{
	std::string r;
	for (int i = 0; i < 64; i++)
		if ((mask >> i) & 1) {
			if (!r.empty())
				r += "+";
			r += sym + std::to_string(i);
		}
	return r.empty() ? "0" : r;
}

inline std::string format_set(const std::vector<int> &xs)
{
	std::string r = "{";
	for (std::size_t i = 0; i < xs.size(); i++)
		r += (i ? "," : "") + std::to_string(xs[i]);
	return r + "}";
}

/// Table layout: phase, u expression, window, tau, h, omega
inline std::string format_transition(const TransitionSpec &s)
{
	std::ostringstream o;
	o << "phi\tu_phi\tD_phi\ttau\th\tomega\n";
	for (std::size_t phi = 0; phi < s.l(); phi++)
		o << phi << '\t' << format_vset(s.u_expr[phi]) << '\t' << format_set(s.windows[phi]) << '\t'
		  << s.tau[phi] << '\t' << s.h[phi] << '\t' << s.omega[phi] << '\n';
	return o.str();
}

} // namespace wproc
