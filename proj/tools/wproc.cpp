/*------------------------------------------------------------------------
wproc command line tool

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
#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "wproc/cse.hpp"
#include "wproc/kernels.hpp"
#include "wproc/sim.hpp"
#include "wproc/verify.hpp"

using namespace wproc;

namespace {

struct CodeArgs {
	std::string kernel = "K16";
	unsigned m = 1;
	long k = -1;  // -1: n
	std::string frozen;
	std::string save_frozen;
	std::uint64_t seed = 1;
};

void add_code_opts(CLI::App *app, CodeArgs &a)
{
	app->add_option("--kernel", a.kernel, "Built-in kernel name or kernel file")->capture_default_str();
	app->add_option("--m", a.m, "Number of kernel layers")->capture_default_str()->check(CLI::Range(1, 12));
	app->add_option("--k", a.k, "Code dimension, default n");
	app->add_option("--frozen", a.frozen, "Frozen set file, or mc:SNR:FRAMES for Monte-Carlo construction");
	app->add_option("--save-frozen", a.save_frozen, "Write the frozen set used");
	app->add_option("--seed", a.seed, "Random seed")->capture_default_str();
}

std::vector<double> parse_snr(const std::string &s)
{
	std::vector<double> v;
	std::vector<double> parts;
	std::stringstream ss(s);
	std::string tok;
	while (std::getline(ss, tok, ':'))
		parts.push_back(std::stod(tok));
	if (parts.size() == 1)
		return parts;
	if (parts.size() != 3 || parts[1] <= 0)
		throw CLI::ValidationError("--snr", "expected a:step:b");
	for (int i = 0; parts[0] + i * parts[1] <= parts[2] + 1e-9; i++)
		v.push_back(parts[0] + i * parts[1]);
	return v;
}

CodeSpec build_code(const CodeArgs &a, double design_snr)
{
	Kernel K = load_kernel(a.kernel);
	std::size_t n = ipow(K.size, a.m);
	std::size_t k = a.k < 0 ? n : std::size_t(a.k);
	if (k > n)
		throw Error(ErrorCode::LengthMismatch, "k exceeds n");
	std::vector<FrozenConstraint> fz;
	std::string src = a.frozen;
	if (src.empty() && k < n)
		src = "mc:" + std::to_string(design_snr) + ":10000";
	if (src.rfind("mc:", 0) == 0) {
		std::stringstream ss(src.substr(3));
		std::string snr, frames;
		std::getline(ss, snr, ':');
		std::getline(ss, frames, ':');
		double rate = double(k) / double(n);
		std::size_t nf = frames.empty() ? 10000 : std::stoul(frames);
		auto order = mc_rank_channels(K, a.m, std::stod(snr), rate, nf, a.seed);
		fz = frozen_from_order(order, k);
	} else if (!src.empty()) {
		std::ifstream in(src);
		if (!in)
			throw Error(ErrorCode::ParseError, "cannot open " + src);
		fz = parse_frozen(in);
		if (a.k >= 0 && fz.size() != n - k)
			throw Error(ErrorCode::LengthMismatch, "frozen set size does not match n - k");
	}
	CodeSpec c = make_code(K, a.m, fz);
	if (!a.save_frozen.empty()) {
		std::ofstream out(a.save_frozen);
		write_frozen(out, c);
	}
	return c;
}

int cmd_list_kernels()
{
	for (const auto &e : builtin_kernels())
		std::cout << std::left << std::setw(6) << e.name << e.description << '\n';
	return 0;
}

int cmd_analyze(const std::string &name)
{
	Kernel K = load_kernel(name);
	TransitionSpec s = derive_transition(K);
	std::cout << "kernel " << K.name << " l=" << K.size << " checksum=" << std::hex << kernel_checksum(K) << std::dec
	          << '\n';
	if (K.meta)
		std::cout << "E=" << K.meta->rate_of_polarization << " mu=" << K.meta->scaling_exponent << '\n';
	std::cout << format_transition(s);
	std::cout << "max window " << s.max_window() << '\n';
	return 0;
}

int cmd_cse(const std::string &name, int phase)
{
	TransitionSpec s = derive_transition(load_kernel(name));
	unsigned t = s.t();
	std::cout << "phi\th";
	for (unsigned lam = 1; lam <= t; lam++)
		std::cout << "\tX" << lam;
	std::cout << '\n';
	for (std::size_t phi = 0; phi < s.l(); phi++) {
		if (phase >= 0 && std::size_t(phase) != phi)
			continue;
		std::cout << phi << '\t' << s.h[phi];
		if (phi > 0 && s.h[phi] == s.h[phi - 1]) {
			for (unsigned lam = 1; lam <= t; lam++)
				std::cout << "\t-";
			std::cout << '\n';
			continue;
		}
		CseTable tb = get_cse_pairs(s, std::size_t(s.h[phi]), phi);
		for (unsigned lam = 1; lam <= t; lam++)
			std::cout << '\t' << tb.size(lam);
		std::cout << '\n';
	}
	return 0;
}

int cmd_count_ops(const CodeArgs &a, std::size_t frames, std::size_t list, const std::string &out)
{
	CodeSpec c = build_code(a, 2.0);
	ComplexityReport r = run_complexity(c, frames, list, a.seed);
	const TransitionSpec &s = c.plan->spec;
	std::cout << "phi\tD_phi\tstep1\tstep2\tstep3\tstep4\tstep5\tadd\tcmp\ttotal\tmax\n";
	OpCounter tot;
	for (std::size_t phi = 0; phi < r.phases.size(); phi++) {
		const PhaseCost &p = r.phases[phi];
		OpCounter t = p.total();
		tot += t;
		std::cout << phi << '\t' << format_set(s.windows[phi]);
		for (int k = 1; k <= 5; k++)
			std::cout << '\t' << p.step[k].total();
		std::cout << '\t' << t.additions << '\t' << t.comparisons << '\t' << t.total() << '\t'
		          << max_kind_name(p.max_kind) << '\n';
	}
	std::cout << "total\t\t\t\t\t\t\t" << tot.additions << '\t' << tot.comparisons << '\t' << tot.total() << '\n';
	std::cout << "per-phase counts identical over " << r.frames << " frames: " << (r.phase_invariant ? "yes" : "no")
	          << '\n';
	MemoryFootprint mf = memory_footprint(*c.plan);
	std::cout << "memory C_s=" << mf.cs << " C_r=" << mf.cr << " C_m=" << mf.cm << " total=" << mf.total() << '\n';
	if (c.m > 1 || c.k < c.n)
		std::cout << "decoder n=" << c.n << " k=" << c.k << " L=" << list << " add_mean=" << r.dec_add.mean
		          << " cmp_mean=" << r.dec_cmp.mean << " select_cmps_mean=" << r.dec_sel.mean << '\n';
	if (!out.empty()) {
		std::ofstream f(out);
		write_complexity_csv(f, r);
	}
	return 0;
}

int cmd_simulate(const CodeArgs &a, const std::string &snr, SimConfig cfg, const std::string &out)
{
	cfg.snrs = parse_snr(snr);
	cfg.seed = a.seed;
	CodeSpec c = build_code(a, cfg.snrs.empty() ? 2.0 : cfg.snrs.front());
	SimReport r = run_sweep(c, cfg);
	if (out.empty()) {
		write_csv(std::cout, r);
	} else {
		std::ofstream f(out);
		write_csv(f, r);
		write_csv(std::cout, r);
	}
	std::cerr << "n=" << r.n << " k=" << r.k << " L=" << r.list << " seed=" << r.seed << " wall=" << r.wall_seconds
	          << "s\n";
	return 0;
}

int cmd_verify(const std::string &name, std::size_t frames, std::uint64_t seed)
{
	Kernel K = load_kernel(name);
	std::vector<CheckResult> res;
	res.push_back(check_wp_naive(K, frames, seed));
	if (K.size <= 16) {
		res.push_back(check_naive_exact(K, frames, seed));
		res.push_back(check_window_marginal(K, std::min<std::size_t>(frames, 20), seed));
	}
	for (auto &r : check_strategies(K, std::min<std::size_t>(frames, 50), seed))
		res.push_back(r);
	for (auto &r : check_path_weights(std::min(4u, K.t), 4, seed))
		res.push_back(r);
	bool ok = true;
	for (const auto &r : res) {
		std::cout << (r.pass ? "PASS " : "FAIL ") << r.name << "  max deviation " << r.value << " (tol " << r.tol
		          << ")\n";
		ok = ok && r.pass;
	}
	return ok ? 0 : 1;
}

} // namespace

int main(int argc, char **argv)
{
	CLI::App app{"Window processing for polar codes with large kernels"};
	app.require_subcommand(1);

	app.add_subcommand("list-kernels", "List built-in kernels");

	std::string kname = "K16";
	int phase = -1;
	auto *analyze = app.add_subcommand("analyze", "Transition matrix and decoding windows");
	analyze->add_option("--kernel", kname, "Kernel name or file")->capture_default_str();
	auto *cse = app.add_subcommand("cse", "Common subexpression counts per layer");
	cse->add_option("--kernel", kname, "Kernel name or file")->capture_default_str();
	cse->add_option("--phase", phase, "Single phase");

	CodeArgs ca;
	std::size_t frames = 100, list = 1;
	std::string out;
	auto *ops = app.add_subcommand("count-ops", "Operation counts per phase");
	add_code_opts(ops, ca);
	ops->add_option("--frames", frames, "Frames")->capture_default_str();
	ops->add_option("--list", list, "List size")->capture_default_str();
	ops->add_option("--out", out, "CSV output");

	SimConfig cfg;
	std::string snr = "1.0:0.5:2.0";
	auto *sim = app.add_subcommand("simulate", "FER/BER Monte-Carlo sweep");
	add_code_opts(sim, ca);
	sim->add_option("--snr", snr, "Eb/N0 range a:step:b in dB")->capture_default_str();
	sim->add_option("--frames", cfg.frames, "Frame budget per point")->capture_default_str();
	sim->add_option("--target-errors", cfg.target_errors, "Stop a point after this many frame errors");
	sim->add_option("--list", cfg.list, "List size")->capture_default_str()->check(CLI::PositiveNumber);
	sim->add_option("--workers", cfg.workers, "Worker threads")->capture_default_str();
	sim->add_option("--out", out, "CSV output");

	std::uint64_t vseed = 1;
	std::size_t vframes = 200;
	auto *ver = app.add_subcommand("verify", "Run the oracle battery");
	ver->add_option("--kernel", kname, "Kernel name or file")->capture_default_str();
	ver->add_option("--frames", vframes, "Frames")->capture_default_str();
	ver->add_option("--seed", vseed, "Seed")->capture_default_str();

	CLI11_PARSE(app, argc, argv);
	try {
		if (app.got_subcommand("list-kernels"))
			return cmd_list_kernels();
		if (*analyze)
			return cmd_analyze(kname);
		if (*cse)
			return cmd_cse(kname, phase);
		if (*ops)
			return cmd_count_ops(ca, frames, list, out);
		if (*sim)
			return cmd_simulate(ca, snr, cfg, out);
		if (*ver)
			return cmd_verify(kname, vframes, vseed);
	} catch (const Error &e) {
		std::cerr << "error: " << e.what() << '\n';
		return 2;
	} catch (const std::exception &e) {
		std::cerr << "error: " << e.what() << '\n';
		return 2;
	}
	return 0;
}
