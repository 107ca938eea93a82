/*
 *   Copyright 2026 Huawei Technologies Co., Ltd.
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#include <fstream>
#include <iostream>
#include <map>
#include <sstream>

#include <CLI11.hpp>

#include <bsplab/algorithms/workloads.hpp>
#include <bsplab/checks.hpp>
#include <bsplab/error.hpp>
#include <bsplab/perfmodel/fit.hpp>
#include <bsplab/perfmodel/surface.hpp>
#include <bsplab/sgl/script.hpp>

using namespace bsplab;

namespace {

	constexpr int exit_ok = 0;
	constexpr int exit_failed = 1;
	constexpr int exit_usage = 2;

	struct MachineFlags {
		std::size_t p = 1;
		double g = 1.0;
		double l = 100.0;
		double r = 1.0;
		std::string tree_path;

		void add_to( CLI::App &cmd, bool with_tree ) {
			cmd.add_option( "--g", g, "time per word" );
			cmd.add_option( "--l", l, "barrier cost" );
			cmd.add_option( "--r", r, "compute rate" );
			if( with_tree ) {
				cmd.add_option( "--p", p, "processor count" );
				cmd.add_option( "--machine", tree_path, "machine tree JSON; replaces --p/--g/--l/--r" );
			}
		}

		MachineTree tree() const {
			if( tree_path.empty() ) {
				return MachineTree::leaf( make_machine( p, g, l, r ) );
			}
			std::ifstream in( tree_path );
			if( !in ) {
				throw UsageError( "cannot read " + tree_path );
			}
			nlohmann::json j;
			try {
				in >> j;
			} catch( const nlohmann::json::exception &e ) {
				throw UsageError( tree_path + ": " + e.what() );
			}
			return parse_machine_tree( j );
		}
	};

	std::ofstream open_out( const std::string &path ) {
		std::ofstream out( path );
		if( !out ) {
			throw UsageError( "cannot write " + path );
		}
		return out;
	}

	perfmodel::SweepGrid load_grid( const std::string &path ) {
		std::ifstream in( path );
		if( !in ) {
			throw UsageError( "cannot read " + path );
		}
		try {
			return perfmodel::read_grid_csv( in );
		} catch( const UsageError &e ) {
			throw UsageError( path + ": " + e.what() );
		}
	}

	/** The metric to fit when none is named: cost, then time, then memory. */
	perfmodel::Metric pick_metric( const perfmodel::SweepGrid &grid, const std::string &requested ) {
		if( !requested.empty() ) {
			return perfmodel::parse_metric( requested );
		}
		for( auto m : { perfmodel::Metric::cost, perfmodel::Metric::time, perfmodel::Metric::memory } ) {
			if( !grid.rows_of( m ).empty() ) {
				return m;
			}
		}
		throw UsageError( "grid holds no rows" );
	}

	void write_env_lines( std::ostream &out, const engine::Environment &env ) {
		out << "# env " << env.id() << ' ' << nlohmann::json( env ).dump() << '\n';
	}

	// ---- run -----------------------------------------------------------------

	struct RunFlags {
		std::string algo;
		MachineFlags machine;
		std::string backend = "simulate";
		algorithms::WorkloadParams params;
		std::string out_path;
		std::string trace_path;
		std::vector< std::string > env;
		std::size_t workers = 0;
	};

	int cmd_run( const RunFlags &f ) {
		RunSetup setup;
		setup.options.backend = engine::parse_backend( f.backend );
		setup.options.threads = f.workers;
		setup.env_overrides = f.env;
		const auto report = algorithms::run_workload( f.algo, f.machine.tree(), f.params, setup );

		const auto json = engine::to_json( report );
		if( f.out_path.empty() ) {
			std::cout << json.dump( 2 ) << '\n';
		} else {
			open_out( f.out_path ) << json.dump( 2 ) << '\n';
		}
		if( !f.trace_path.empty() ) {
			auto out = open_out( f.trace_path );
			write_env_lines( out, report.environment );
			write_trace_csv( out, report.trace );
		}
		if( !report.ok() ) {
			std::cerr << "error (" << report.error->kind << "): " << report.error->message << '\n';
			return report.error->kind == "usage" || report.error->kind == "validation" ? exit_usage : exit_failed;
		}
		std::cerr << f.algo << ": supersteps " << report.trace.sync_count << ", cost " << format_real( report.trace.total_cost )
				  << ", oracle " << report.summary.value( "oracle", std::string( "n/a" ) ) << '\n';
		return report.summary.value( "oracle", std::string( "pass" ) ) == "pass" ? exit_ok : exit_failed;
	}

	// ---- sweep / fit / surface ---------------------------------------------

	struct SweepFlags {
		perfmodel::SweepSpec spec;
		MachineFlags machine;
		std::string backend = "simulate";
		std::string out_path;
	};

	int cmd_sweep( SweepFlags f ) {
		f.spec.backend = engine::parse_backend( f.backend );
		f.spec.machine = make_machine( 1, f.machine.g, f.machine.l, f.machine.r );
		const auto grid = perfmodel::sweep( f.spec );
		auto out = open_out( f.out_path );
		perfmodel::write_grid_csv( out, grid );
		std::cerr << "sweep: " << grid.rows.size() << " rows written to " << f.out_path << '\n';
		return exit_ok;
	}

	struct FitFlags {
		std::string grid_path;
		std::string basis = "1,n,p,n*p,n/p,n^2";
		std::string metric;
		std::string out_path;
		std::string residual_path;
		std::string surface_path;
		std::size_t folds = 0;
	};

	int write_surface( const perfmodel::SweepGrid &grid, perfmodel::Metric metric, const std::string &path ) {
		const auto surface = perfmodel::make_surface( grid, metric );
		if( surface.is_curve() ) {
			std::cerr << "warning: the grid has a single p or n value; writing a curve instead of a surface\n";
		}
		auto out = open_out( path );
		perfmodel::write_surface_csv( out, surface, grid );
		return exit_ok;
	}

	int cmd_fit( const FitFlags &f ) {
		const auto grid = load_grid( f.grid_path );
		const auto metric = pick_metric( grid, f.metric );
		const auto rows = grid.rows_of( metric );
		const auto model = perfmodel::fit( rows, perfmodel::parse_basis( f.basis ) );

		auto json = perfmodel::to_json( model );
		json[ "environments" ] = nlohmann::json::object();
		for( const auto &[ id, env ] : grid.environments ) {
			json[ "environments" ][ id ] = env;
		}
		if( f.folds != 0 ) {
			const auto cv = perfmodel::crossval( rows, model.basis, f.folds );
			json[ "crossval" ] = { { "folds", f.folds }, { "max_abs", cv.max_abs }, { "rms", cv.rms }, { "r2", cv.r2 } };
		}
		if( f.out_path.empty() ) {
			std::cout << json.dump( 2 ) << '\n';
		} else {
			open_out( f.out_path ) << json.dump( 2 ) << '\n';
		}
		if( !f.residual_path.empty() ) {
			auto out = open_out( f.residual_path );
			for( const auto &[ id, env ] : grid.environments ) {
				write_env_lines( out, env );
			}
			perfmodel::write_residual_csv( out, model, rows );
		}
		if( !f.surface_path.empty() ) {
			write_surface( grid, metric, f.surface_path );
		}

		for( std::size_t k = 0; k < model.basis.size(); ++k ) {
			std::cerr << model.basis[ k ].name() << " = " << format_real( model.coefficients[ k ] ) << '\n';
		}
		std::cerr << "rms " << format_real( model.stats.rms ) << ", r2 " << format_real( model.stats.r2 ) << '\n';
		if( model.rank_deficient ) {
			std::cerr << "warning: rank-deficient design; unidentifiable terms:";
			for( const auto &name : model.deficient ) {
				std::cerr << ' ' << name;
			}
			std::cerr << '\n';
		}
		return exit_ok;
	}

	int cmd_surface( const std::string &grid_path, const std::string &metric, const std::string &out_path ) {
		const auto grid = load_grid( grid_path );
		return write_surface( grid, pick_metric( grid, metric ), out_path );
	}

	// ---- check / translate -------------------------------------------------

	int cmd_check( std::vector< std::string > suites, const checks::CheckOptions &options ) {
		if( suites.empty() ) {
			suites = checks::suite_names();
		}
		for( const auto &s : suites ) {
			const auto &known = checks::suite_names();
			if( std::find( known.begin(), known.end(), s ) == known.end() ) {
				throw UsageError( "unknown suite '" + s + "'" );
			}
		}
		std::vector< std::string > failing;
		for( const auto &s : suites ) {
			for( const auto &r : checks::run_suite( s, options ) ) {
				std::cout << ( r.passed ? "PASS  " : "FAIL  " ) << r.suite << "  " << r.property << "  (" << r.detail << ")\n";
				if( !r.passed ) {
					failing.push_back( r.suite + ": " + r.property );
				}
			}
		}
		if( failing.empty() ) {
			std::cout << "all properties hold\n";
			return exit_ok;
		}
		std::cout << failing.size() << " failing:\n";
		for( const auto &name : failing ) {
			std::cout << "  " << name << '\n';
		}
		return exit_failed;
	}

	int cmd_translate( const std::string &script_path, std::size_t p, const std::string &out_path ) {
		std::ifstream in( script_path );
		if( !in ) {
			throw UsageError( "cannot read " + script_path );
		}
		nlohmann::json j;
		try {
			in >> j;
		} catch( const nlohmann::json::exception &e ) {
			throw UsageError( script_path + ": " + e.what() );
		}
		const auto text = sgl::dump( sgl::translate_to_bsml( sgl::script_from_json( j ) ), p );
		if( out_path.empty() ) {
			std::cout << text;
		} else {
			open_out( out_path ) << text;
		}
		return exit_ok;
	}

} // namespace

int main( int argc, char **argv ) {
	CLI::App app{ "BSP programming lab: run, cost, sweep and model BSML and SGL programs" };
	app.require_subcommand( 1 );
	app.set_version_flag( "--version", engine::tool_version );

	RunFlags run_flags;
	auto *run = app.add_subcommand( "run", "run one named workload and write its report" );
	run->add_option( "--algo", run_flags.algo, "workload name" )->required();
	run_flags.machine.add_to( *run, true );
	run->add_option( "--backend", run_flags.backend, "simulate or parallel" );
	run->add_option( "--n", run_flags.params.n, "input size" );
	run->add_option( "--seed", run_flags.params.seed, "generator seed" );
	run->add_option( "--distribution", run_flags.params.distribution, "uniform, sorted, reversed, equal or few" );
	run->add_option( "--out", run_flags.out_path, "report JSON (stdout if absent)" );
	run->add_option( "--trace", run_flags.trace_path, "trace CSV" );
	run->add_option( "--env", run_flags.env, "key=value environment override" );
	run->add_option( "--workers", run_flags.workers, "parallel worker threads, 0 for automatic" );

	SweepFlags sweep_flags;
	auto *sweep = app.add_subcommand( "sweep", "run a workload over a p x n grid and write the grid CSV" );
	sweep->add_option( "--algo", sweep_flags.spec.algorithm, "workload name" )->required();
	sweep->add_option( "--p-list", sweep_flags.spec.p_list, "processor counts" )->required()->delimiter( ',' );
	sweep->add_option( "--n-list", sweep_flags.spec.n_list, "input sizes" )->required()->delimiter( ',' );
	sweep_flags.machine.add_to( *sweep, false );
	sweep->add_option( "--backend", sweep_flags.backend, "simulate or parallel" );
	sweep->add_option( "--reps", sweep_flags.spec.repetitions, "repetitions per cell (parallel)" );
	sweep->add_option( "--seed", sweep_flags.spec.seed, "generator seed" );
	sweep->add_option( "--distribution", sweep_flags.spec.distribution, "key distribution" );
	sweep->add_option( "--env", sweep_flags.spec.env_overrides, "key=value environment override" );
	sweep->add_option( "--out", sweep_flags.out_path, "grid CSV" )->required();

	FitFlags fit_flags;
	auto *fit = app.add_subcommand( "fit", "fit a linear-in-coefficients model to a grid CSV" );
	fit->add_option( "--grid", fit_flags.grid_path, "grid CSV" )->required();
	fit->add_option( "--basis", fit_flags.basis, "comma separated terms in p and n" );
	fit->add_option( "--metric", fit_flags.metric, "time, cost or memory" );
	fit->add_option( "--out", fit_flags.out_path, "model JSON (stdout if absent)" );
	fit->add_option( "--residuals", fit_flags.residual_path, "residual CSV" );
	fit->add_option( "--surface", fit_flags.surface_path, "plot matrix CSV" );
	fit->add_option( "--crossval", fit_flags.folds, "k-fold cross validation" );

	std::string surface_grid, surface_metric, surface_out;
	auto *surface = app.add_subcommand( "surface", "write the p x n plot matrix of a grid CSV" );
	surface->add_option( "--grid", surface_grid, "grid CSV" )->required();
	surface->add_option( "--metric", surface_metric, "time, cost or memory" );
	surface->add_option( "--out", surface_out, "matrix CSV" )->required();

	std::vector< std::string > check_suites;
	checks::CheckOptions check_options;
	auto *check = app.add_subcommand( "check", "run the property suites" );
	check->add_option( "--suite", check_suites, "suite name, repeatable; all when absent" );
	check->add_option( "--p", check_options.max_p, "largest p" );
	check->add_option( "--cases", check_options.cases, "random cases per property" );
	check->add_option( "--seed", check_options.seed, "generator seed" );

	std::string script_path, translate_out;
	std::size_t translate_p = 4;
	auto *translate = app.add_subcommand( "translate", "translate an SGL script JSON into a BSML listing" );
	translate->add_option( "--script", script_path, "script JSON" )->required();
	translate->add_option( "--p", translate_p, "processor count for the plan patterns" );
	translate->add_option( "--out", translate_out, "listing (stdout if absent)" );

	try {
		app.parse( argc, argv );
	} catch( const CLI::ParseError &e ) {
		return app.exit( e ) == 0 ? exit_ok : exit_usage;
	}

	try {
		if( *run ) {
			return cmd_run( run_flags );
		}
		if( *sweep ) {
			return cmd_sweep( sweep_flags );
		}
		if( *fit ) {
			return cmd_fit( fit_flags );
		}
		if( *surface ) {
			return cmd_surface( surface_grid, surface_metric, surface_out );
		}
		if( *check ) {
			return cmd_check( check_suites, check_options );
		}
		return cmd_translate( script_path, translate_p, translate_out );
	} catch( const UsageError &e ) {
		std::cerr << "usage error: " << e.what() << '\n';
		return exit_usage;
	} catch( const ValidationError &e ) {
		std::cerr << "invalid input: " << e.what() << '\n';
		return exit_usage;
	} catch( const std::exception &e ) {
		std::cerr << "error: " << e.what() << '\n';
		return exit_failed;
	}
}
