/*------------------------------------------------------------------------
Built-in kernels and kernel loading

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

#include <fstream>
#include <string>
#include <vector>

#include "kernel.hpp"

namespace wproc {

namespace detail {

inline const std::vector<std::string> &k16p_rows()
{
	static const std::vector<std::string> r = {
	    "1000000000000000", "1100000000000000", "1010000000000000", "1000100000000000",
	    "1000000010000000", "1100000011000000", "1010000010100000", "1111000000000000",
	    "1000100010001000", "0110110010100000", "1100101001100000", "1111111100000000",
	    "1111000011110000", "1100110011001100", "1010101010101010", "1111111111111111"};
	return r;
}

inline const std::vector<std::string> &k16_rows()
{
	static const std::vector<std::string> r = {
	    "1000000000000000", "1100000000000000", "1010000000000000", "1111000000000000",
	    "1000100000000000", "1000000010000000", "1100000011000000", "1010000010100000",
	    "0110110010100000", "1100101001100000", "1111111100000000", "1111000011110000",
	    "1000100010001000", "1100110011001100", "1010101010101010", "1111111111111111"};
	return r;
}

inline const std::vector<std::string> &k32_rows()
{
	static const std::vector<std::string> r = {
	    "10000000000000000000000000000000", "11000000000000000000000000000000",
	    "10100000000000000000000000000000", "11110000000000000000000000000000",
	    "10001000000000000000000000000000", "10000000100000000000000000000000",
	    "11000000110000000000000000000000", "10100000101000000000000000000000",
	    "10101100011000000000000000000000", "01101010110000000000000000000000",
	    "11111111000000000000000000000000", "11110000111100000000000000000000",
	    "10000000000000001000000000000000", "11000000000000001100000000000000",
	    "01001000100010001100000000000000", "11001100110011000000000000000000",
	    "10100000000000001010000000000000", "11110000000000001111000000000000",
	    "01011010101010101111000000000000", "11111111111111110000000000000000",
	    "10001000000000001000100000000000", "10000000100000001000000010000000",
	    "11000000110000001100000011000000", "10100000101000001010000010100000",
	    "10101100011000001010110001100000", "01101010110000000110101011000000",
	    "11111111000000001111111100000000", "11110000111100001111000011110000",
	    "10001000100010001000100010001000", "11001100110011001100110011001100",
	    "10101010101010101010101010101010", "11111111111111111111111111111111"};
	return r;
}

} // namespace detail

struct KernelLibraryEntry {
	std::string name;
	std::string description;
};

inline std::vector<KernelLibraryEntry> builtin_kernels()
{
	std::vector<KernelLibraryEntry> v;
	for (int t = 1; t <= 6; t++)
		v.push_back({"F" + std::to_string(t), "Arikan matrix F_" + std::to_string(t)});
	v.push_back({"K16P", "16x16 kernel, E=0.51828, mu=3.346"});
	v.push_back({"K16", "16x16 kernel, E=0.51828, mu=3.45"});
	v.push_back({"K32", "32x32 kernel, E=0.521936, mu=3.417"});
	return v;
}

inline Kernel builtin_kernel(const std::string &name)
{
	if (name.size() == 2 && name[0] == 'F' && name[1] >= '1' && name[1] <= '6')
		return make_kernel(arikan_matrix(unsigned(name[1] - '0')), name);
	if (name == "K16P")
		return make_kernel(BinMatrix::from_rows(detail::k16p_rows()), name, KernelMeta{0.51828, 3.346});
	if (name == "K16")
		return make_kernel(BinMatrix::from_rows(detail::k16_rows()), name, KernelMeta{0.51828, 3.45});
	if (name == "K32")
		return make_kernel(BinMatrix::from_rows(detail::k32_rows()), name, KernelMeta{0.521936, 3.417});
	throw Error(ErrorCode::UnknownKernel, "unknown kernel " + name);
}

inline bool is_builtin_kernel(const std::string &name)
{
	for (auto &e : builtin_kernels())
		if (e.name == name)
			return true;
	return false;
}

// Procedure: load_kernel
/// Built-in name or path to a kernel text file
inline Kernel load_kernel(const std::string &name_or_path)
{
	if (is_builtin_kernel(name_or_path))
		return builtin_kernel(name_or_path);
	std::ifstream in(name_or_path);
	if (!in)
		throw Error(ErrorCode::UnknownKernel, "no built-in kernel or file named " + name_or_path);
	return parse_kernel(in, name_or_path);
}

/// FNV-1a over the matrix text, used to pin the embedded constants
inline std::uint64_t kernel_checksum(const Kernel &k)
{
	std::uint64_t hsh = 1469598103934665603ull;
	for (char c : k.matrix.to_string()) {
		hsh ^= std::uint8_t(c);
		hsh *= 1099511628211ull;
	}
	return hsh;
}

} // namespace wproc
