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

#include <bsplab/perfmodel/grid.hpp>

#include <algorithm>
#include <charconv>
#include <cmath>
#include <istream>
#include <ostream>
#include <set>
#include <sstream>
#include <tuple>

#include <bsplab/core/cost.hpp>
#include <bsplab/error.hpp>

namespace bsplab::perfmodel {

	std::string to_string( Metric m ) {
		switch( m ) {
			case Metric::time:
				return "time";
			case Metric::cost:
				return "cost";
			case Metric::memory:
				return "memory";
		}
		return "cost";
	}

	Metric parse_metric( const std::string &text ) {
		if( text == "time" ) {
			return Metric::time;
		}
		if( text == "cost" ) {
			return Metric::cost;
		}
		if( text == "memory" ) {
			return Metric::memory;
		}
		throw UsageError( "unknown metric '" + text + "' (time, cost, memory)" );
	}

	void SweepGrid::validate() const {
		std::set< std::tuple< std::size_t, std::size_t, Metric > > seen;
		for( const auto &row : rows ) {
			if( !seen.emplace( row.p, row.n, row.metric ).second ) {
				throw ValidationError( "grid: repeated cell p=" + std::to_string( row.p ) + " n=" + std::to_string( row.n ) +
					" metric=" + to_string( row.metric ) );
			}
			if( !std::isfinite( row.value ) || row.value < 0 ) {
				throw ValidationError( "grid: value must be finite and >= 0 at p=" + std::to_string( row.p ) +
					" n=" + std::to_string( row.n ) );
			}
		}
	}

	std::vector< GridRow > SweepGrid::rows_of( Metric m ) const {
		std::vector< GridRow > out;
		std::copy_if( rows.begin(), rows.end(), std::back_inserter( out ), [ m ]( const GridRow &r ) { return r.metric == m; } );
		return out;
	}

	void write_grid_csv( std::ostream &out, const SweepGrid &grid ) {
		for( const auto &[ id, env ] : grid.environments ) {
			out << "# env " << id << ' ' << nlohmann::json( env ).dump() << '\n';
		}
		out << "p,n,metric,value,env_id\n";
		for( const auto &row : grid.rows ) {
			out << row.p << ',' << row.n << ',' << to_string( row.metric ) << ',' << format_real( row.value ) << ','
				<< row.env_id << '\n';
		}
	}

	namespace {

		std::vector< std::string > split( const std::string &line ) {
			std::vector< std::string > out;
			std::string cell;
			std::istringstream in( line );
			while( std::getline( in, cell, ',' ) ) {
				out.push_back( cell );
			}
			if( !line.empty() && line.back() == ',' ) {
				out.emplace_back();
			}
			return out;
		}

		template< typename T >
		T number( const std::string &cell, std::size_t line, const char *column ) {
			T v{};
			const auto res = std::from_chars( cell.data(), cell.data() + cell.size(), v );
			if( cell.empty() || res.ec != std::errc{} || res.ptr != cell.data() + cell.size() ) {
				throw UsageError( "line " + std::to_string( line ) + ": bad " + column + " '" + cell + "'" );
			}
			return v;
		}

	} // namespace

	SweepGrid read_grid_csv( std::istream &in ) {
		SweepGrid grid;
		std::string line;
		std::size_t lineno = 0;
		bool header = false;
		std::set< std::tuple< std::size_t, std::size_t, Metric > > seen;
		while( std::getline( in, line ) ) {
			++lineno;
			if( !line.empty() && line.back() == '\r' ) {
				line.pop_back();
			}
			if( line.empty() ) {
				continue;
			}
			if( line[ 0 ] == '#' ) {
				if( line.rfind( "# env ", 0 ) == 0 ) {
					const auto space = line.find( ' ', 6 );
					if( space == std::string::npos ) {
						throw UsageError( "line " + std::to_string( lineno ) + ": malformed environment record" );
					}
					try {
						grid.environments[ line.substr( 6, space - 6 ) ] =
							nlohmann::json::parse( line.substr( space + 1 ) ).get< engine::Environment >();
					} catch( const nlohmann::json::exception &e ) {
						throw UsageError( "line " + std::to_string( lineno ) + ": malformed environment record: " + e.what() );
					}
				}
				continue;
			}
			if( !header ) {
				if( line != "p,n,metric,value,env_id" ) {
					throw UsageError( "line " + std::to_string( lineno ) + ": expected header p,n,metric,value,env_id" );
				}
				header = true;
				continue;
			}
			const auto cells = split( line );
			if( cells.size() != 5 ) {
				throw UsageError( "line " + std::to_string( lineno ) + ": expected 5 columns, found " +
					std::to_string( cells.size() ) );
			}
			GridRow row;
			row.p = number< std::size_t >( cells[ 0 ], lineno, "p" );
			row.n = number< std::size_t >( cells[ 1 ], lineno, "n" );
			try {
				row.metric = parse_metric( cells[ 2 ] );
			} catch( const UsageError &e ) {
				throw UsageError( "line " + std::to_string( lineno ) + ": " + e.what() );
			}
			row.value = number< double >( cells[ 3 ], lineno, "value" );
			row.env_id = cells[ 4 ];
			if( row.p == 0 ) {
				throw UsageError( "line " + std::to_string( lineno ) + ": p must be >= 1" );
			}
			if( !std::isfinite( row.value ) || row.value < 0 ) {
				throw UsageError( "line " + std::to_string( lineno ) + ": value must be finite and >= 0" );
			}
			if( !seen.emplace( row.p, row.n, row.metric ).second ) {
				throw UsageError( "line " + std::to_string( lineno ) + ": repeated (p, n, metric) cell" );
			}
			grid.rows.push_back( std::move( row ) );
		}
		if( !header ) {
			throw UsageError( "line " + std::to_string( lineno ) + ": missing header p,n,metric,value,env_id" );
		}
		return grid;
	}

	SweepGrid sweep( const SweepSpec &spec ) {
		algorithms::describe_workload( spec.algorithm );
		if( spec.p_list.empty() || spec.n_list.empty() ) {
			throw UsageError( "sweep: p and n lists must not be empty" );
		}
		if( spec.repetitions == 0 ) {
			throw UsageError( "sweep: repetitions must be >= 1" );
		}
		const bool simulate = spec.backend == engine::Backend::simulate;
		SweepGrid grid;
		for( std::size_t p : spec.p_list ) {
			for( std::size_t n : spec.n_list ) {
				MachineConfig cfg = spec.machine;
				cfg.p = p;
				cfg.validate();
				RunSetup setup;
				setup.options.backend = spec.backend;
				setup.options.worker_cap = spec.worker_cap;
				if( simulate ) {
					setup.env_overrides = { "repetitions=1 (simulate is exact; requested " +
							std::to_string( spec.repetitions ) + ")",
						"measured_quantity=model cost (time-units) and peak words per pid" };
				} else {
					setup.env_overrides = { "repetitions=" + std::to_string( spec.repetitions ) + " (median)",
						"measured_quantity=wall-clock time (s)" };
				}
				setup.env_overrides.insert( setup.env_overrides.end(), spec.env_overrides.begin(), spec.env_overrides.end() );
				algorithms::WorkloadParams params{ n, spec.seed, spec.distribution };

				const std::size_t reps = simulate ? 1 : spec.repetitions;
				std::vector< double > times;
				engine::RunReport report;
				for( std::size_t i = 0; i < reps; ++i ) {
					report = algorithms::run_workload( spec.algorithm, MachineTree::leaf( cfg ), params, setup );
					if( !report.ok() ) {
						throw Error( "sweep: cell p=" + std::to_string( p ) + " n=" + std::to_string( n ) + ": " +
							report.error->message );
					}
					if( report.summary.value( "oracle", "" ) != "pass" ) {
						throw Error( "sweep: cell p=" + std::to_string( p ) + " n=" + std::to_string( n ) +
							": result differs from the sequential oracle" );
					}
					if( report.wall_time_seconds ) {
						times.push_back( *report.wall_time_seconds );
					}
				}
				const auto id = report.environment.id();
				grid.environments.emplace( id, report.environment );
				if( simulate ) {
					grid.rows.push_back( { p, n, Metric::cost, report.trace.total_cost, id } );
					grid.rows.push_back( { p, n, Metric::memory, static_cast< double >( report.peak_words_per_pid ), id } );
				} else {
					std::sort( times.begin(), times.end() );
					const std::size_t k = times.size();
					const double median = k % 2 ? times[ k / 2 ] : ( times[ k / 2 - 1 ] + times[ k / 2 ] ) / 2;
					grid.rows.push_back( { p, n, Metric::time, median, id } );
				}
			}
		}
		grid.validate();
		return grid;
	}

} // namespace bsplab::perfmodel
