/*------------------------------------------------------------------------
Polarization kernel type, validation and text format

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

#include <istream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "gf2.hpp"

namespace wproc {

/// Rate of polarization and scaling exponent, display only
struct KernelMeta {
	double rate_of_polarization = 0;
	double scaling_exponent = 0;
};

struct Kernel {
	std::size_t size = 0;  // l = 2^t
	unsigned t = 0;
	BinMatrix matrix;
	std::string name;
	std::optional<KernelMeta> meta;
};

/// True if some column permutation makes m upper triangular.
/// Scanning rows bottom-up, each row may only touch one column not yet
/// claimed by a lower row; that column is forced, so the greedy pass is exact.
inline bool is_triangular_permutable(const BinMatrix &m)
{
	std::size_t n = m.rows();
	std::vector<bool> used(m.cols(), false);
	for (std::size_t i = n; i-- > 0;) {
		int free_col = -1;
		for (std::size_t j = 0; j < m.cols(); j++) {
			if (!m.get(i, j) || used[j])
				continue;
			if (free_col >= 0)
				return false;
			free_col = int(j);
		}
		if (free_col < 0)
			return false;
		used[free_col] = true;
	}
	return true;
}

inline bool is_valid_kernel(const BinMatrix &m)
{
	return m.square() && is_invertible(m) && !is_triangular_permutable(m);
}

inline Kernel make_kernel(const BinMatrix &m, std::string name = "", std::optional<KernelMeta> meta = {})
{
	if (!m.square())
		throw Error(ErrorCode::InvalidKernel, "kernel must be square");
	std::size_t l = m.rows();
	if (l < 2 || (l & (l - 1)) != 0)
		throw Error(ErrorCode::InvalidKernel, "kernel size must be a power of two");
	if (l > 64)
		throw Error(ErrorCode::InvalidKernel, "kernel size above 64 is not supported");
	if (!is_invertible(m))
		throw Error(ErrorCode::InvalidKernel, "kernel is singular");
	if (is_triangular_permutable(m))
		throw Error(ErrorCode::InvalidKernel, "kernel is upper triangular under a column permutation");
	Kernel k;
	k.size = l;
	k.t = unsigned(std::countr_zero(l));
	k.matrix = m;
	k.name = std::move(name);
	k.meta = meta;
	return k;
}

/// Text format: first line l, then l lines of l characters '0'/'1'
inline Kernel parse_kernel(std::istream &in, std::string name = "")
{
	std::string line;
	std::size_t l = 0;
	while (std::getline(in, line)) {
		if (line.find_first_not_of(" \t\r") == std::string::npos)
			continue;
		std::istringstream ss(line);
		if (!(ss >> l))
			throw Error(ErrorCode::ParseError, "expected kernel size on first line");
		break;
	}
	if (l == 0)
		throw Error(ErrorCode::ParseError, "missing kernel size");
	std::vector<std::string> rows;
	while (rows.size() < l && std::getline(in, line)) {
		std::string r;
		for (char c : line)
			if (c == '0' || c == '1')
				r += c;
			else if (c != ' ' && c != '\t' && c != '\r')
				throw Error(ErrorCode::ParseError, "unexpected character in kernel row");
		if (r.empty())
			continue;
		if (r.size() != l)
			throw Error(ErrorCode::ParseError, "kernel row has wrong length");
		rows.push_back(r);
	}
	if (rows.size() != l)
		throw Error(ErrorCode::ParseError, "kernel has too few rows");
	return make_kernel(BinMatrix::from_rows(rows), std::move(name));
}

inline std::string format_kernel(const Kernel &k)
{
	return std::to_string(k.size) + "\n" + k.matrix.to_string();
}

} // namespace wproc
