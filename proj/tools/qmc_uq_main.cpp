// SPDX-License-Identifier: Apache-2.0
// Copyright Contributors to the qmc-uq Project.
//
// qmc-uq: points, randomize, discrepancy, certify, estimate, integrands,
// coverage. Single-threaded dispatcher; parallelism lives inside the
// harness. Machine-readable JSON/CSV everywhere; every stochastic
// subcommand requires an explicit master seed.
//
// Exit codes: 0 success, 2 usage or input errors, 3 precondition
// violations (undeclared assumptions, attainability, budgets).

#include <chrono>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "qmcuq/qmcuq.hpp"

namespace {

using nlohmann::json;
using namespace qmcuq;

json make_manifest(const std::string& subcommand, const std::vector<std::string>& argv,
                   std::uint64_t seed, double wall_s)
{
	json m;
	m["tool"] = "qmc-uq";
	m["version"] = kVersion;
	m["subcommand"] = subcommand;
	m["argv"] = argv;
	m["master_seed"] = seed;
	m["wall_time_s"] = wall_s;
	return m;
}

json interval_json(const Interval& iv)
{
	json j;
	j["lo"] = iv.lo;
	j["hi"] = iv.hi;
	j["level"] = iv.level;
	j["method"] = iv.method;
	j["guarantee"] = to_string(iv.guarantee);
	if (!iv.notes.empty()) j["notes"] = iv.notes;
	return j;
}

json certificate_json(const Certificate& cert)
{
	json j;
	j["lower"] = cert.lower;
	j["upper"] = cert.upper;
	j["estimate"] = cert.estimate;
	j["n_evals"] = cert.n_evals;
	j["assumption"] = to_string(cert.assumption);
	j["guarantee"] = "certain";
	if (!cert.meta.empty()) j["meta"] = cert.meta;
	return j;
}

std::vector<std::string> split_list(const std::string& csv)
{
	std::vector<std::string> out;
	std::istringstream in(csv);
	std::string item;
	while (std::getline(in, item, ','))
		if (!item.empty()) out.push_back(item);
	return out;
}

DirectionTable resolve_direction_table(const std::string& flag_path)
{
	if (!flag_path.empty()) return load_direction_table(flag_path);
	if (const char* env = std::getenv("QMC_UQ_DIRECTIONS"); env && *env)
		return load_direction_table(env);
	return default_direction_table();
}

PointSet read_points(const std::string& path)
{
	if (path.empty() || path == "-") return read_points_csv(std::cin);
	return read_points_csv(path);
}

void write_output(const std::string& path, const std::string& content)
{
	if (path.empty() || path == "-") {
		std::cout << content;
		return;
	}
	std::ofstream out(path);
	if (!out) throw ParseError("cannot open for writing: " + path);
	out << content;
}

void maybe_write_manifest(const std::string& out_path, const json& manifest)
{
	if (out_path.empty() || out_path == "-") return;
	std::ofstream out(out_path + ".manifest.json");
	out << manifest.dump(2) << "\n";
}

struct PointsArgs {
	std::string kind = "sobol";
	int d = 2;
	int m = -1;
	std::int64_t n = -1;
	int base = 2;
	std::string table_path;
	std::string out;
};

int run_points(const PointsArgs& a, const std::vector<std::string>& argv)
{
	const auto t0 = std::chrono::steady_clock::now();
	PointSet ps;
	if (a.kind == "sobol") {
		if (a.m < 0) throw PreconditionError("points --kind sobol needs --m");
		ps = sobol_net(a.d, a.m, resolve_direction_table(a.table_path));
	} else if (a.kind == "hammersley") {
		if (a.m < 0) throw PreconditionError("points --kind hammersley needs --m");
		if (a.d != 2)
			throw PreconditionError("hammersley points are two-dimensional");
		ps = hammersley_2d(a.m, a.base);
	} else if (a.kind == "halton") {
		if (a.n < 0) throw PreconditionError("points --kind halton needs --n");
		ps = halton(a.n, a.d);
	} else if (a.kind == "lattice") {
		if (a.n < 0) throw PreconditionError("points --kind lattice needs --n");
		ps = rank1_lattice(korobov_lattice(a.n, a.d), a.d);
	} else {
		throw PreconditionError("unknown point kind: " + a.kind);
	}
	std::ostringstream csv;
	write_points_csv(csv, ps);
	write_output(a.out, csv.str());
	const double wall = std::chrono::duration<double>(
	                        std::chrono::steady_clock::now() - t0)
	                        .count();
	auto manifest = make_manifest("points", argv, 0, wall);
	manifest["construction"] = to_string(ps.construction);
	manifest["n"] = ps.n;
	manifest["d"] = ps.d;
	if (a.m >= 0) manifest["m"] = a.m;
	maybe_write_manifest(a.out, manifest);
	return 0;
}

struct RandomizeArgs {
	std::string kind = "nested";
	std::uint64_t seed = 0;
	bool seed_set = false;
	std::uint32_t replicate = 0;
	int depth = 53;
	std::string in, out;
	int sobol_d = -1, sobol_m = -1;
	std::string table_path;
};

int run_randomize(const RandomizeArgs& a, const std::vector<std::string>& argv)
{
	const auto t0 = std::chrono::steady_clock::now();
	if (!a.seed_set)
		throw PreconditionError("randomize is stochastic: --seed is mandatory");
	RandomizerSpec spec;
	spec.kind = randomizer_from_string(a.kind);
	spec.seed = a.seed;
	spec.replicate_index = a.replicate;
	spec.precision_bits = a.depth;
	PointSet out_ps;
	if (spec.kind == RandomizerKind::matrix_scramble_shift) {
		if (a.sobol_d < 1 || a.sobol_m < 0)
			throw PreconditionError(
			    "matrix scramble acts on generator matrices: pass --sobol-d and "
			    "--sobol-m to rebuild the net (not --in points)");
		const auto gen =
		    sobol_generators(a.sobol_d, a.sobol_m, resolve_direction_table(a.table_path));
		out_ps = matrix_scramble_shift(gen, spec);
	} else {
		out_ps = randomize(read_points(a.in), spec);
	}
	std::ostringstream csv;
	write_points_csv(csv, out_ps);
	write_output(a.out, csv.str());
	const double wall = std::chrono::duration<double>(
	                        std::chrono::steady_clock::now() - t0)
	                        .count();
	auto manifest = make_manifest("randomize", argv, a.seed, wall);
	manifest["randomizer"] = to_string(spec.kind);
	manifest["replicate"] = a.replicate;
	manifest["precision_bits"] = a.depth;
	maybe_write_manifest(a.out, manifest);
	return 0;
}

struct DiscrepancyArgs {
	std::string in;
	std::string check = "all";
	long long budget = kDefaultCornerBudget;
};

int run_discrepancy(const DiscrepancyArgs& a, const std::vector<std::string>& argv)
{
	const auto t0 = std::chrono::steady_clock::now();
	const PointSet ps = read_points(a.in);
	json j;
	j["n"] = ps.n;
	j["d"] = ps.d;
	std::int64_t corners = 0;
	if (a.check == "star" || a.check == "all") {
		const auto report = star_discrepancy_exact(ps, a.budget);
		j["d_star"] = report.d_star;
		j["argmax"] = report.argmax;
		corners = std::max(corners, report.grid_size);
	}
	if (a.check == "nnld" || a.check == "all") {
		const auto check = verify_nnld_check(ps, a.budget);
		j["nnld"] = check.holds;
		if (!check.holds) j["nnld_witness"] = check.witness;
		corners = std::max(corners, check.grid_size);
	}
	if (a.check == "npld" || a.check == "all") {
		const auto check = verify_npld_check(ps, a.budget);
		j["npld"] = check.holds;
		if (!check.holds) j["npld_witness"] = check.witness;
		corners = std::max(corners, check.grid_size);
	}
	if (a.check != "all" && a.check != "star" && a.check != "nnld" && a.check != "npld")
		throw PreconditionError("unknown --check: " + a.check);
	j["grid_size"] = corners;
	const double wall = std::chrono::duration<double>(
	                        std::chrono::steady_clock::now() - t0)
	                        .count();
	j["manifest"] = make_manifest("discrepancy", argv, 0, wall);
	std::cout << j.dump(2) << "\n";
	return 0;
}

struct CertifyArgs {
	std::string integrand;
	double param = NAN;
	int d = 1;
	std::string method = "mid-trap";
	std::int64_t n = 16;
	int m = 4;
	bool trust = false;
};

int run_certify(const CertifyArgs& a, const std::vector<std::string>& argv)
{
	const auto t0 = std::chrono::steady_clock::now();
	const IntegrandDescriptor f = fixture(a.integrand, a.d, a.param);
	Certificate cert;
	if (a.method == "endpoint")
		cert = bracket_endpoint(f, a.n);
	else if (a.method == "mid-trap")
		cert = bracket_mid_trap(f, a.n);
	else if (a.method == "product-convex")
		cert = bracket_product_convex(f, a.m, a.d);
	else if (a.method == "simplex")
		cert = bracket_kuhn_simplex(f, a.d);
	else if (a.method == "cm-bracket")
		cert = bracket_completely_monotone(f, nnld_point_set(a.d, a.m),
		                                   npld_point_set(a.d, a.m), a.trust);
	else
		throw PreconditionError("unknown certify method: " + a.method);
	json j = certificate_json(cert);
	j["integrand"] = f.name;
	j["d"] = f.d;
	j["exact_mean"] = f.exact_mean;
	const double wall = std::chrono::duration<double>(
	                        std::chrono::steady_clock::now() - t0)
	                        .count();
	j["manifest"] = make_manifest("certify", argv, 0, wall);
	std::cout << j.dump(2) << "\n";
	return 0;
}

struct EstimateArgs {
	std::string integrand;
	double param = NAN;
	int d = 2;
	std::int64_t n = 1024;
	int R = 10;
	std::string randomizer = "nested";
	std::string points;  // optional override
	std::string ci = "student";
	double alpha = 0.05;
	int B = 1000;
	std::uint64_t seed = 0;
	bool seed_set = false;
	int depth = 53;
};

int run_estimate(const EstimateArgs& a, const std::vector<std::string>& argv)
{
	const auto t0 = std::chrono::steady_clock::now();
	if (!a.seed_set)
		throw PreconditionError("estimate is stochastic: --seed is mandatory");
	const IntegrandDescriptor f = fixture(a.integrand, a.d, a.param);
	const RandomizerKind kind = randomizer_from_string(a.randomizer);
	PointSpec spec{default_point_kind(kind), a.d};
	if (!a.points.empty()) {
		if (a.points == "sobol")
			spec.kind = PointKind::sobol;
		else if (a.points == "lattice")
			spec.kind = PointKind::lattice;
		else if (a.points == "halton")
			spec.kind = PointKind::halton;
		else
			throw PreconditionError("unknown --points kind: " + a.points);
		const bool digital = kind == RandomizerKind::digital_shift ||
		                     kind == RandomizerKind::matrix_scramble_shift ||
		                     kind == RandomizerKind::nested_scramble;
		if (digital && spec.kind != PointKind::sobol)
			throw PreconditionError("randomizer " + a.randomizer +
			                        " needs a base-2 digital net (--points sobol)");
	}

	const ReplicatePool pool =
	    rqmc_replicates(f, spec, kind, a.n, a.R, a.seed, a.depth);

	json j;
	j["pool"] = {{"mean", pool.mean()},
	             {"values", pool.values},
	             {"n", pool.n},
	             {"R", pool.R()},
	             {"method", pool.method}};
	if (pool.R() >= 2) j["pool"]["variance"] = pool_variance(pool);
	if (pool.R() >= 3) {
		const MomentDiagnostics m = moments(pool);
		j["moments"] = {{"mean", m.mean},
		                {"variance", m.variance},
		                {"skewness", m.skewness}};
		if (pool.R() >= 4) j["moments"]["ex_kurtosis"] = m.ex_kurtosis;
	}

	json intervals = json::array();
	for (const auto& method : split_list(a.ci)) {
		Interval iv;
		if (method == "student")
			iv = ci_student(pool, a.alpha);
		else if (method == "normal")
			iv = ci_normal(pool, a.alpha);
		else if (method == "percentile")
			iv = bootstrap_percentile(pool, a.alpha, a.B,
			                          rng::derive_seed(a.seed, 0xB007));
		else if (method == "boot-t")
			iv = bootstrap_t(pool, a.alpha, a.B, rng::derive_seed(a.seed, 0xB007));
		else if (method == "median")
			iv = ci_median_order_stat(pool, a.alpha);
		else if (method == "chebyshev") {
			if (kind != RandomizerKind::iid)
				throw PreconditionError(
				    "chebyshev needs independent evaluations: use --randomizer iid");
			if (std::isnan(f.exact_variance))
				throw PreconditionError("chebyshev: no known variance for fixture");
			iv = ci_chebyshev(pool.mean(), std::sqrt(f.exact_variance),
			                  pool.n * pool.R(), a.alpha);
		} else if (method == "hoeffding") {
			if (!f.has(kBounded01))
				throw PreconditionError(
				    "hoeffding: integrand is not declared bounded in [0,1]");
			const std::int64_t count =
			    (kind == RandomizerKind::iid) ? pool.n * pool.R() : pool.R();
			iv = ci_hoeffding(pool.mean(), count, a.alpha);
			iv.notes["count"] = std::to_string(count);
		} else {
			throw PreconditionError("unknown CI method: " + method);
		}
		intervals.push_back(interval_json(iv));
	}
	j["intervals"] = intervals;
	j["exact_mean"] = f.exact_mean;
	const double wall = std::chrono::duration<double>(
	                        std::chrono::steady_clock::now() - t0)
	                        .count();
	j["manifest"] = make_manifest("estimate", argv, a.seed, wall);
	std::cout << j.dump(2) << "\n";
	return 0;
}

int run_integrands(int d)
{
	std::cout << "name                 d    exact_mean            properties\n";
	for (const auto& name : fixture_names()) {
		const int dim = (name == "exp_1d") ? 1 : d;
		const IntegrandDescriptor f = fixture(name, dim);
		std::string props;
		const auto add = [&](Property p, const char* label) {
			if (f.has(p)) props += std::string(props.empty() ? "" : ",") + label;
		};
		add(kBounded01, "bounded01");
		add(kMonotone1d, "monotone");
		add(kConvex, "convex");
		add(kCompletelyMonotone, "completely_monotone");
		add(kAdditive, "additive");
		add(kSmooth, "smooth");
		add(kDiscontinuous, "discontinuous");
		add(kPeriodic, "periodic");
		char line[256];
		std::snprintf(line, sizeof line, "%-20s %-4d %-21.17g %s\n", name.c_str(),
		              f.d, f.exact_mean, props.c_str());
		std::cout << line;
	}
	return 0;
}

struct CoverageArgs {
	std::string config;
	std::string out_dir;
	std::int64_t trials = -1;
	std::uint64_t seed = 0;
	bool seed_set = false;
	int threads = 1;
};

int run_coverage(const CoverageArgs& a, const std::vector<std::string>& argv)
{
	const auto t0 = std::chrono::steady_clock::now();
	const Config cfg = Config::parse_file(a.config);
	CoverageGrid grid;
	grid.integrands = cfg.strings("integrands");
	for (auto v : cfg.ints("d")) grid.dims.push_back(int(v));
	grid.ns = cfg.ints("n");
	for (auto v : cfg.ints("R")) grid.Rs.push_back(int(v));
	for (const auto& r : cfg.strings("randomizers"))
		grid.randomizers.push_back(randomizer_from_string(r));
	grid.ci_methods = cfg.strings("ci");
	grid.alpha = cfg.number_or("alpha", 0.05);
	grid.bootstrap_B = int(cfg.integer_or("B", 1000));
	const std::int64_t T = (a.trials > 0) ? a.trials : cfg.integer_or("trials", 1000);
	std::uint64_t seed = a.seed;
	if (!a.seed_set) {
		if (!cfg.has("seed"))
			throw PreconditionError(
			    "coverage is stochastic: set seed in the config or pass --seed");
		seed = std::uint64_t(cfg.integer("seed"));
	}

	std::vector<CoverageCell> skipped;
	expand_grid(grid, &skipped);
	for (const auto& cell : skipped)
		std::cerr << "skipping unsupported cell: " << cell.integrand << " d=" << cell.d
		          << " n=" << cell.n << " R=" << cell.R << " "
		          << to_string(cell.randomizer) << " ci=" << cell.ci << "\n";

	const auto rows = coverage_study(grid, T, seed, a.threads);

	std::filesystem::create_directories(a.out_dir);
	{
		std::ofstream csv(a.out_dir + "/coverage.csv");
		csv << coverage_csv(rows);
	}
	json summary;
	summary["cells"] = rows.size();
	summary["trials_per_cell"] = T;
	summary["threshold"] = coverage_threshold(T);
	std::int64_t failures = 0;
	double min_cov = 1.0;
	for (const auto& r : rows) {
		if (r.verdict == "confirmed_failure") ++failures;
		min_cov = std::min(min_cov, r.coverage);
	}
	summary["confirmed_failures"] = failures;
	summary["min_coverage"] = min_cov;
	const double wall = std::chrono::duration<double>(
	                        std::chrono::steady_clock::now() - t0)
	                        .count();
	const json manifest = make_manifest("coverage", argv, seed, wall);
	summary["manifest"] = manifest;
	{
		std::ofstream out(a.out_dir + "/summary.json");
		out << summary.dump(2) << "\n";
	}
	{
		std::ofstream out(a.out_dir + "/manifest.json");
		out << manifest.dump(2) << "\n";
	}
	std::cout << "wrote " << rows.size() << " rows to " << a.out_dir
	          << "/coverage.csv (" << failures << " confirmed failures)\n";
	return 0;
}

}  // namespace

int main(int argc, char** argv)
{
	CLI::App app{
	    "qmc-uq: quasi-Monte Carlo integration with uncertainty quantification.\n"
	    "Guarantee classes: certain (certificates), exact_finite_sample\n"
	    "(chebyshev, hoeffding, median order statistics), asymptotic\n"
	    "(student, normal, percentile, bootstrap-t)."};
	app.require_subcommand(1);
	std::vector<std::string> raw_args(argv + 1, argv + argc);

	PointsArgs pa;
	auto* points = app.add_subcommand(
	    "points", "Generate deterministic low-discrepancy points (CSV, 17 digits)");
	points->add_option("--kind", pa.kind, "sobol | halton | hammersley | lattice");
	points->add_option("--d", pa.d, "dimension");
	points->add_option("--m", pa.m, "level: n = 2^m (sobol) or b^m (hammersley)");
	points->add_option("--n", pa.n, "point count (halton, lattice)");
	points->add_option("--base", pa.base, "base b >= 2 (hammersley)");
	points->add_option("--table", pa.table_path,
	                   "direction-number file (else $QMC_UQ_DIRECTIONS, else bundled)");
	points->add_option("--out", pa.out, "output CSV path (default stdout)");

	RandomizeArgs ra;
	auto* rand_cmd = app.add_subcommand(
	    "randomize",
	    "Apply an RQMC randomization to points (marginal-uniformity preserving)");
	rand_cmd->add_option("--kind", ra.kind,
	                     "shift | shift_baker | digital | matrix | nested");
	rand_cmd->add_option("--seed", ra.seed, "master seed (mandatory)")
	    ->each([&ra](const std::string&) { ra.seed_set = true; });
	rand_cmd->add_option("--replicate", ra.replicate, "replicate index");
	rand_cmd->add_option("--depth", ra.depth, "scramble depth in bits (default 53)");
	rand_cmd->add_option("--in", ra.in, "input points CSV ('-' for stdin)");
	rand_cmd->add_option("--out", ra.out, "output CSV path (default stdout)");
	rand_cmd->add_option("--sobol-d", ra.sobol_d, "net dimension (matrix scramble)");
	rand_cmd->add_option("--sobol-m", ra.sobol_m, "net bits (matrix scramble)");
	rand_cmd->add_option("--table", ra.table_path, "direction-number file");

	DiscrepancyArgs da;
	auto* disc = app.add_subcommand(
	    "discrepancy", "Exact star discrepancy / NNLD / NPLD report (JSON)");
	disc->add_option("--in", da.in, "input points CSV ('-' for stdin)");
	disc->add_option("--check", da.check, "star | nnld | npld | all (default all)");
	disc->add_option("--budget", da.budget, "corner-point enumeration budget");

	CertifyArgs ca;
	auto* cert = app.add_subcommand(
	    "certify",
	    "Guaranteed bracket certificates [lower, upper] (guarantee class: certain)");
	cert->add_option("--integrand", ca.integrand, "fixture name")->required();
	cert->add_option("--param", ca.param, "fixture parameter, where applicable");
	cert->add_option("--d", ca.d, "dimension");
	cert->add_option("--method", ca.method,
	                 "endpoint | mid-trap | product-convex | simplex | cm-bracket");
	cert->add_option("--n", ca.n, "subdivisions (endpoint, mid-trap)");
	cert->add_option("--m", ca.m,
	                 "boxes per axis (product-convex) or Hammersley level (cm-bracket)");
	cert->add_flag("--trust", ca.trust, "skip NNLD/NPLD verification (cm-bracket)");

	EstimateArgs ea;
	auto* est = app.add_subcommand(
	    "estimate",
	    "RQMC replicate estimate with confidence intervals (JSON).\n"
	    "Guarantees: chebyshev/hoeffding/median = exact_finite_sample;\n"
	    "student/normal/percentile/boot-t = asymptotic");
	est->add_option("--integrand", ea.integrand, "fixture name")->required();
	est->add_option("--param", ea.param, "fixture parameter");
	est->add_option("--d", ea.d, "dimension");
	est->add_option("--n", ea.n, "points per replicate");
	est->add_option("--R", ea.R, "replicate count");
	est->add_option("--randomizer", ea.randomizer,
	                "iid | shift | shift_baker | digital | matrix | nested");
	est->add_option("--points", ea.points, "base points: sobol | lattice | halton");
	est->add_option("--ci", ea.ci,
	                "comma list: student,normal,percentile,boot-t,median,chebyshev,"
	                "hoeffding");
	est->add_option("--alpha", ea.alpha, "1 - confidence level (default 0.05)");
	est->add_option("--B", ea.B, "bootstrap resamples (default 1000)");
	est->add_option("--seed", ea.seed, "master seed (mandatory)")
	    ->each([&ea](const std::string&) { ea.seed_set = true; });
	est->add_option("--depth", ea.depth, "scramble depth in bits");

	int integrands_d = 2;
	auto* integ = app.add_subcommand("integrands",
	                                 "List fixture integrands with properties and "
	                                 "exact means");
	integ->add_option("--d", integrands_d, "dimension used for the listing");
	bool list_flag = false;
	integ->add_flag("--list", list_flag, "list fixtures (default action)");

	CoverageArgs cov;
	auto* coverage = app.add_subcommand(
	    "coverage", "Coverage study over a config-file grid; CSV + JSON summary");
	coverage->add_option("--config", cov.config, "study config (TOML subset)")
	    ->required();
	coverage->add_option("--out", cov.out_dir, "output directory")->required();
	coverage->add_option("--trials", cov.trials, "override trials per cell");
	coverage->add_option("--seed", cov.seed, "master seed (overrides config)")
	    ->each([&cov](const std::string&) { cov.seed_set = true; });
	coverage->add_option("--threads", cov.threads, "worker threads");

	try {
		app.parse(argc, argv);
	} catch (const CLI::CallForHelp& e) {
		return app.exit(e);  // help text, exit 0
	} catch (const CLI::ParseError& e) {
		app.exit(e);
		return 2;
	}

	try {
		if (points->parsed()) return run_points(pa, raw_args);
		if (rand_cmd->parsed()) return run_randomize(ra, raw_args);
		if (disc->parsed()) return run_discrepancy(da, raw_args);
		if (cert->parsed()) return run_certify(ca, raw_args);
		if (est->parsed()) return run_estimate(ea, raw_args);
		if (integ->parsed()) return run_integrands(integrands_d);
		if (coverage->parsed()) return run_coverage(cov, raw_args);
	} catch (const PreconditionError& e) {
		std::cerr << "precondition violated: " << e.what() << "\n";
		return 3;
	} catch (const BudgetError& e) {
		std::cerr << "budget exceeded: " << e.what() << "\n";
		return 3;
	} catch (const ParseError& e) {
		std::cerr << "input error: " << e.what() << "\n";
		return 2;
	} catch (const std::exception& e) {
		std::cerr << "error: " << e.what() << "\n";
		return 1;
	}
	return 2;
}
