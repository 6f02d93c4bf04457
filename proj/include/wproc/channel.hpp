/*------------------------------------------------------------------------
AWGN channel with BPSK modulation and per-frame random streams

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

#include <cmath>
#include <cstdint>
#include <random>
#include <vector>

namespace wproc {

/// Independent generator for (seed, stream, frame)
inline std::mt19937_64 frame_rng(std::uint64_t seed, std::uint64_t frame, std::uint32_t stream = 0)
{
	std::seed_seq sq{std::uint32_t(seed), std::uint32_t(seed >> 32), std::uint32_t(frame), std::uint32_t(frame >> 32),
	                 stream};
	return std::mt19937_64(sq);
}

struct ChannelModel {
	double ebn0_db = 0;
	double rate = 0.5;

	double sigma2() const { return 1.0 / (2.0 * rate * std::pow(10.0, ebn0_db / 10.0)); }

	/// BPSK 0 -> +1, 1 -> -1, LLR = 2y/sigma^2
	std::vector<double> transmit(const std::vector<std::uint8_t> &c, std::mt19937_64 &rng) const
	{
		double s2 = sigma2();
		double sd = std::sqrt(s2);
		std::normal_distribution<double> nd(0.0, sd);
		std::vector<double> llr(c.size());
		for (std::size_t i = 0; i < c.size(); i++) {
			double y = (c[i] ? -1.0 : 1.0) + nd(rng);
			llr[i] = 2.0 * y / s2;
		}
		return llr;
	}
};

} // namespace wproc
