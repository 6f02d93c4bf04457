/*------------------------------------------------------------------------
Bit-packed binary matrices and GF(2) linear algebra

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

#include <bit>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "errors.hpp"

namespace wproc {

using Word = std::uint64_t;

inline int parity(Word x) { return std::popcount(x) & 1; }

/// Row-major binary matrix, each row stored in ceil(cols/64) words
class BinMatrix {
public:
	BinMatrix() = default;
	BinMatrix(std::size_t rows, std::size_t cols)
	    : m_rows(rows), m_cols(cols), m_stride((cols + 63) / 64), m_bits(rows * m_stride, 0)
	{
		if (rows == 0 || cols == 0)
			throw Error(ErrorCode::ShapeMismatch, "matrix dimensions must be positive");
	}

	static BinMatrix identity(std::size_t n)
	{
		BinMatrix m(n, n);
		for (std::size_t i = 0; i < n; i++)
			m.set(i, i, 1);
		return m;
	}

	/// Rows given as strings of '0'/'1'
	static BinMatrix from_rows(const std::vector<std::string> &rows)
	{
		if (rows.empty())
			throw Error(ErrorCode::ParseError, "empty matrix");
		BinMatrix m(rows.size(), rows[0].size());
		for (std::size_t i = 0; i < rows.size(); i++) {
			if (rows[i].size() != m.m_cols)
				throw Error(ErrorCode::ParseError, "ragged matrix row " + std::to_string(i));
			for (std::size_t j = 0; j < m.m_cols; j++) {
				char c = rows[i][j];
				if (c != '0' && c != '1')
					throw Error(ErrorCode::ParseError, "bad matrix character");
				m.set(i, j, c == '1');
			}
		}
		return m;
	}

	std::size_t rows() const { return m_rows; }
	std::size_t cols() const { return m_cols; }
	bool square() const { return m_rows == m_cols; }

	int get(std::size_t i, std::size_t j) const
	{
		return (m_bits[i * m_stride + j / 64] >> (j % 64)) & 1;
	}
	void set(std::size_t i, std::size_t j, int b)
	{
		Word &w = m_bits[i * m_stride + j / 64];
		Word mask = Word(1) << (j % 64);
		w = b ? (w | mask) : (w & ~mask);
	}

	Word *row(std::size_t i) { return &m_bits[i * m_stride]; }
	const Word *row(std::size_t i) const { return &m_bits[i * m_stride]; }
	std::size_t stride() const { return m_stride; }

	/// Row i as a single word, bit j = entry (i,j); cols must be at most 64
	Word row_word(std::size_t i) const { return m_bits[i * m_stride]; }

	/// Column j as a single word, bit i = entry (i,j); rows must be at most 64
	Word col_word(std::size_t j) const
	{
		Word w = 0;
		for (std::size_t i = 0; i < m_rows; i++)
			w |= Word(get(i, j)) << i;
		return w;
	}

	void xor_row(std::size_t dst, std::size_t src)
	{
		for (std::size_t k = 0; k < m_stride; k++)
			m_bits[dst * m_stride + k] ^= m_bits[src * m_stride + k];
	}
	void swap_rows(std::size_t a, std::size_t b)
	{
		for (std::size_t k = 0; k < m_stride; k++)
			std::swap(m_bits[a * m_stride + k], m_bits[b * m_stride + k]);
	}

	/// Lowest and highest nonzero column of row i, -1 if the row is zero
	int first_one(std::size_t i) const
	{
		for (std::size_t k = 0; k < m_stride; k++)
			if (Word w = m_bits[i * m_stride + k])
				return int(k * 64 + std::countr_zero(w));
		return -1;
	}
	int last_one(std::size_t i) const
	{
		for (std::size_t k = m_stride; k-- > 0;)
			if (Word w = m_bits[i * m_stride + k])
				return int(k * 64 + 63 - std::countl_zero(w));
		return -1;
	}

	BinMatrix transpose() const
	{
		BinMatrix t(m_cols, m_rows);
		for (std::size_t i = 0; i < m_rows; i++)
			for (std::size_t j = 0; j < m_cols; j++)
				if (get(i, j))
					t.set(j, i, 1);
		return t;
	}

	bool operator==(const BinMatrix &o) const
	{
		return m_rows == o.m_rows && m_cols == o.m_cols && m_bits == o.m_bits;
	}

	std::string to_string() const
	{
		std::string s;
		for (std::size_t i = 0; i < m_rows; i++) {
			for (std::size_t j = 0; j < m_cols; j++)
				s += char('0' + get(i, j));
			s += '\n';
		}
		return s;
	}

private:
	std::size_t m_rows = 0, m_cols = 0, m_stride = 0;
	std::vector<Word> m_bits;
};

inline BinMatrix multiply(const BinMatrix &a, const BinMatrix &b)
{
	if (a.cols() != b.rows())
		throw Error(ErrorCode::ShapeMismatch, "multiply: inner dimensions differ");
	BinMatrix c(a.rows(), b.cols());
	for (std::size_t i = 0; i < a.rows(); i++)
		for (std::size_t k = 0; k < a.cols(); k++)
			if (a.get(i, k))
				for (std::size_t w = 0; w < c.stride(); w++)
					c.row(i)[w] ^= b.row(k)[w];
	return c;
}

/// Row vector times matrix, vector packed into words (bit j of word j/64)
inline std::vector<Word> vec_mul(const std::vector<Word> &v, const BinMatrix &m)
{
	std::vector<Word> out(m.stride(), 0);
	for (std::size_t k = 0; k < m.rows(); k++)
		if ((v[k / 64] >> (k % 64)) & 1)
			for (std::size_t w = 0; w < m.stride(); w++)
				out[w] ^= m.row(k)[w];
	return out;
}

/// Single-word variant for matrices with at most 64 rows and columns
inline Word vec_mul(Word v, const BinMatrix &m)
{
	Word out = 0;
	while (v) {
		int k = std::countr_zero(v);
		out ^= m.row_word(k);
		v &= v - 1;
	}
	return out;
}

inline std::size_t rank(BinMatrix m)
{
	std::size_t r = 0;
	for (std::size_t c = 0; c < m.cols() && r < m.rows(); c++) {
		std::size_t p = r;
		while (p < m.rows() && !m.get(p, c))
			p++;
		if (p == m.rows())
			continue;
		m.swap_rows(p, r);
		for (std::size_t i = 0; i < m.rows(); i++)
			if (i != r && m.get(i, c))
				m.xor_row(i, r);
		r++;
	}
	return r;
}

// Procedure: gf2_invert
inline BinMatrix gf2_invert(const BinMatrix &m)
{
	if (!m.square())
		throw Error(ErrorCode::ShapeMismatch, "inverse of non-square matrix");
	std::size_t n = m.rows();
	BinMatrix a = m;
	BinMatrix inv = BinMatrix::identity(n);
	for (std::size_t c = 0; c < n; c++) {
		std::size_t p = c;
		while (p < n && !a.get(p, c))
			p++;
		if (p == n)
			throw Error(ErrorCode::SingularMatrix, "matrix is singular over GF(2)");
		a.swap_rows(p, c);
		inv.swap_rows(p, c);
		for (std::size_t i = 0; i < n; i++)
			if (i != c && a.get(i, c)) {
				a.xor_row(i, c);
				inv.xor_row(i, c);
			}
	}
	return inv;
}

inline bool is_invertible(const BinMatrix &m)
{
	return m.square() && rank(m) == m.rows();
}

inline BinMatrix kronecker(const BinMatrix &a, const BinMatrix &b)
{
	BinMatrix c(a.rows() * b.rows(), a.cols() * b.cols());
	for (std::size_t i = 0; i < a.rows(); i++)
		for (std::size_t j = 0; j < a.cols(); j++)
			if (a.get(i, j))
				for (std::size_t p = 0; p < b.rows(); p++)
					for (std::size_t q = 0; q < b.cols(); q++)
						if (b.get(p, q))
							c.set(i * b.rows() + p, j * b.cols() + q, 1);
	return c;
}

// Procedure: kronecker_power
inline BinMatrix kronecker_power(const BinMatrix &base, unsigned t)
{
	BinMatrix r = BinMatrix::identity(1);
	for (unsigned i = 0; i < t; i++)
		r = kronecker(r, base);
	return r;
}

inline BinMatrix arikan_f1()
{
	return BinMatrix::from_rows({"10", "11"});
}

/// F_t = [[1,0],[1,1]]^{(x)t}
inline BinMatrix arikan_matrix(unsigned t)
{
	return kronecker_power(arikan_f1(), t);
}

/// v F_q applied inside every aligned block of 2^q bits of a word
inline Word arikan_blocks(Word x, unsigned q)
{
	static const Word low[6] = {0x5555555555555555ull, 0x3333333333333333ull, 0x0F0F0F0F0F0F0F0Full,
	                            0x00FF00FF00FF00FFull, 0x0000FFFF0000FFFFull, 0x00000000FFFFFFFFull};
	for (unsigned s = 0; s < q; s++)
		x ^= (x >> (1u << s)) & low[s];
	return x;
}

} // namespace wproc
