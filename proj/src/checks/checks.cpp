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

#include <bsplab/checks.hpp>

#include <algorithm>
#include <cmath>
#include <functional>
#include <map>
#include <random>

#include <bsplab/algorithms/collectives.hpp>
#include <bsplab/algorithms/hash_table.hpp>
#include <bsplab/algorithms/nbody.hpp>
#include <bsplab/algorithms/sample_sort.hpp>
#include <bsplab/algorithms/workloads.hpp>
#include <bsplab/error.hpp>
#include <bsplab/perfmodel/fit.hpp>
#include <bsplab/sgl/library.hpp>
#include <bsplab/sgl/run_nested.hpp>
#include <bsplab/sgl/script.hpp>

namespace bsplab::checks {

	namespace {

		using Rng = std::mt19937_64;

		class Recorder {
			public:
				explicit Recorder( std::string suite ) : m_suite( std::move( suite ) ) {}

				/** Counts cases; the first failure is kept as the detail. */
				void expect( bool ok, const std::string &what ) {
					++m_cases;
					if( !ok && m_first_failure.empty() ) {
						m_first_failure = what;
					}
					m_ok = m_ok && ok;
				}

				void close( const std::string &property ) {
					m_out.push_back( { m_suite, property, m_ok,
						m_ok ? std::to_string( m_cases ) + " cases" : "failed: " + m_first_failure } );
					m_ok = true;
					m_cases = 0;
					m_first_failure.clear();
				}

				void add( const std::string &property, bool ok, const std::string &detail ) {
					m_out.push_back( { m_suite, property, ok, detail } );
				}

				std::vector< PropertyResult > take() { return std::move( m_out ); }

			private:
				std::string m_suite;
				std::vector< PropertyResult > m_out;
				bool m_ok = true;
				std::size_t m_cases = 0;
				std::string m_first_failure;
		};

		std::vector< std::size_t > power_ps( std::size_t max_p ) {
			std::vector< std::size_t > out;
			for( std::size_t p = 1; p <= std::max< std::size_t >( 1, max_p ); p *= 2 ) {
				out.push_back( p );
			}
			return out;
		}

		MachineConfig flat( std::size_t p ) {
			return make_machine( p, 1, 10 );
		}

		std::string at_p( std::size_t p, std::size_t i ) {
			return "p=" + std::to_string( p ) + " case " + std::to_string( i );
		}

		std::vector< long > random_longs( Rng &rng, std::size_t n ) {
			std::vector< long > xs( n );
			for( auto &x : xs ) {
				x = static_cast< long >( rng() % 2001 ) - 1000;
			}
			return xs;
		}

		// ---- transpose -------------------------------------------------------

		std::vector< PropertyResult > transpose_suite( const CheckOptions &o ) {
			Recorder rec( "transpose" );
			Rng rng( o.seed );
			std::vector< std::pair< std::string, bool > > counts;
			for( std::size_t p = 1; p <= o.max_p; ++p ) {
				for( std::size_t i = 0; i < o.cases; ++i ) {
					std::vector< bsml::MsgRow< std::vector< int > > > rows( p, bsml::MsgRow< std::vector< int > >( p ) );
					for( auto &row : rows ) {
						for( auto &msg : row ) {
							if( rng() % 2 ) {
								msg = std::vector< int >( rng() % 4, static_cast< int >( rng() % 100 ) );
							}
						}
					}
					const bsml::MsgPlan< std::vector< int > > plan( rows );
					auto res = run(
						[ & ]( bsml::Machine &m ) {
							auto once = m.put( plan );
							auto twice = m.put( once );
							return std::make_pair( once, twice );
						},
						flat( p ) );
					if( !res.ok() ) {
						rec.expect( false, at_p( p, i ) + ": " + res.report.error->message );
						counts.emplace_back( at_p( p, i ), false );
						continue;
					}
					bool transposed = true;
					bool counted = true;
					const auto &comm = res.report.trace.steps[ 0 ].comm;
					for( std::size_t s = 0; s < p; ++s ) {
						for( std::size_t d = 0; d < p; ++d ) {
							transposed = transposed && res.value->first[ d ][ s ] == plan[ s ][ d ];
							const Words expected = ( s != d && plan[ s ][ d ] ) ? plan[ s ][ d ]->size() : 0;
							counted = counted && comm.at( s, d ) == expected;
						}
					}
					rec.expect( transposed && res.value->second == plan, at_p( p, i ) );
					counts.emplace_back( at_p( p, i ), counted );
				}
			}
			rec.close( "put delivers plan[s][d] as result[d][s] and is an involution" );
			for( const auto &[ what, ok ] : counts ) {
				rec.expect( ok, what );
			}
			rec.close( "comm matrix holds the sized plan, self-sends as 0 words" );
			return rec.take();
		}

		// ---- oracle ----------------------------------------------------------

		std::vector< algorithms::Body > nbody_sequential( std::vector< algorithms::Body > b,
			const algorithms::NBodyParams &prm )
		{
			const double half = prm.dt / 2;
			for( auto &x : b ) {
				x.pos[ 0 ] = x.pos[ 0 ] + x.vel[ 0 ] * half;
				x.pos[ 1 ] = x.pos[ 1 ] + x.vel[ 1 ] * half;
			}
			const auto at = b;
			for( std::size_t i = 0; i < b.size(); ++i ) {
				double ax = 0, ay = 0;
				for( std::size_t j = 0; j < at.size(); ++j ) {
					if( i != j ) {
						const double dx = at[ j ].pos[ 0 ] - at[ i ].pos[ 0 ];
						const double dy = at[ j ].pos[ 1 ] - at[ i ].pos[ 1 ];
						const double r2 = dx * dx + dy * dy + prm.softening * prm.softening;
						const double s = prm.gravity * at[ j ].mass / ( r2 * std::sqrt( r2 ) );
						ax = ax + s * dx;
						ay = ay + s * dy;
					}
				}
				b[ i ].vel[ 0 ] = b[ i ].vel[ 0 ] + ax * prm.dt;
				b[ i ].vel[ 1 ] = b[ i ].vel[ 1 ] + ay * prm.dt;
				b[ i ].pos[ 0 ] = b[ i ].pos[ 0 ] + b[ i ].vel[ 0 ] * half;
				b[ i ].pos[ 1 ] = b[ i ].pos[ 1 ] + b[ i ].vel[ 1 ] * half;
			}
			return b;
		}

		std::vector< PropertyResult > oracle_suite( const CheckOptions &o ) {
			Recorder rec( "oracle" );
			Rng rng( o.seed );
			const char *dists[] = { "uniform", "sorted", "reversed", "equal", "few" };

			for( std::size_t p : power_ps( o.max_p ) ) {
				for( std::size_t i = 0; i < o.cases; ++i ) {
					const auto keys = algorithms::generate_keys( rng() % 2000, rng(), dists[ i % 5 ] );
					auto res = run(
						[ & ]( bsml::Machine &m ) { return algorithms::sample_sort( m, block_distribute( keys, p ) ); }, flat( p ) );
					auto expected = keys;
					std::sort( expected.begin(), expected.end() );
					bool balanced = res.ok();
					if( res.ok() ) {
						for( const auto &block : *res.value ) {
							balanced = balanced && static_cast< double >( block.size() ) <=
								2.0 * static_cast< double >( keys.size() ) / static_cast< double >( p ) + static_cast< double >( p );
						}
					}
					rec.expect( res.ok() && concat( *res.value ) == expected && balanced, at_p( p, i ) );
				}
			}
			rec.close( "sample_sort equals std::sort within the 2n/p + p balance bound" );

			for( std::size_t p : power_ps( o.max_p ) ) {
				for( std::size_t i = 0; i < o.cases; ++i ) {
					const auto xs = random_longs( rng, rng() % 300 );
					auto res = run(
						[ & ]( bsml::Machine &m ) {
							const auto d = block_distribute( xs, p );
							return std::make_tuple( algorithms::reduce( m, std::plus<>{}, d ),
								algorithms::reduce( m, []( long a, long b ) { return std::max( a, b ); }, d ),
								concat( algorithms::scan( m, std::plus<>{}, d ) ) );
						},
						flat( p ) );
					std::optional< long > sum, best;
					std::vector< long > prefix;
					for( auto x : xs ) {
						sum = sum.value_or( 0 ) + x;
						best = best ? std::max( *best, x ) : x;
						prefix.push_back( *sum );
					}
					rec.expect( res.ok() && std::get< 0 >( *res.value ) == sum && std::get< 1 >( *res.value ) == best &&
							std::get< 2 >( *res.value ) == prefix,
						at_p( p, i ) );
				}
			}
			rec.close( "reduce and scan equal the sequential folds" );

			for( std::size_t p : power_ps( o.max_p ) ) {
				for( std::size_t i = 0; i < o.cases; ++i ) {
					std::vector< std::pair< std::uint64_t, std::uint64_t > > pairs( rng() % 500 );
					for( auto &kv : pairs ) {
						kv = { rng() % 700, rng() };
					}
					std::vector< std::uint64_t > queries( rng() % 300 );
					for( auto &q : queries ) {
						q = rng() % 1000;
					}
					const auto seed = rng();
					auto res = run(
						[ & ]( bsml::Machine &m ) {
							const auto table = algorithms::hash_build( m, block_distribute( pairs, p ), seed );
							return concat( algorithms::hash_lookup( m, table, block_distribute( queries, p ) ) );
						},
						flat( p ) );
					std::map< std::uint64_t, std::uint64_t > oracle;
					for( const auto &[ k, v ] : pairs ) {
						oracle[ k ] = v;
					}
					bool ok = res.ok() && res.value->size() == queries.size();
					for( std::size_t q = 0; ok && q < queries.size(); ++q ) {
						const auto it = oracle.find( queries[ q ] );
						ok = ( *res.value )[ q ] == ( it == oracle.end() ? std::nullopt : std::optional( it->second ) );
					}
					rec.expect( ok, at_p( p, i ) );
				}
			}
			rec.close( "hash lookup equals a sequential map" );

			const algorithms::NBodyParams prm{};
			std::uniform_real_distribution< double > unit( -1, 1 ), mass( 0.1, 2 );
			for( std::size_t p : power_ps( o.max_p ) ) {
				for( std::size_t i = 0; i < o.cases; ++i ) {
					std::vector< algorithms::Body > bodies( rng() % 40 );
					for( auto &b : bodies ) {
						b.pos = { unit( rng ), unit( rng ) };
						b.vel = { unit( rng ) * 0.1, unit( rng ) * 0.1 };
						b.mass = mass( rng );
					}
					auto res = run(
						[ & ]( bsml::Machine &m ) { return concat( algorithms::nbody_step( m, block_distribute( bodies, p ), prm ) ); },
						flat( p ) );
					rec.expect( res.ok() && *res.value == nbody_sequential( bodies, prm ), at_p( p, i ) );
				}
			}
			rec.close( "nbody_step equals the sequential leapfrog bit for bit" );
			return rec.take();
		}

		// ---- SGL -------------------------------------------------------------

		std::vector< PropertyResult > translate_suite( const CheckOptions &o ) {
			Recorder rec( "sgl-translate" );
			Rng rng( o.seed );
			for( std::size_t p = 1; p <= o.max_p; ++p ) {
				for( std::size_t i = 0; i < o.cases; ++i ) {
					const auto script = sgl::random_script( rng, p, 4 + rng() % 12 );
					auto direct = sgl::run_nested( MachineTree::leaf( flat( p ) ), script );
					const auto compiled = sgl::translate_to_bsml( script );
					auto lowered = run( [ & ]( bsml::Machine &m ) { return sgl::run_bsml_script( m, compiled ); }, flat( p ) );
					rec.expect( direct.ok() && lowered.ok() && *direct.value == *lowered.value &&
							direct.report.trace == lowered.report.trace,
						at_p( p, i ) );
				}
			}
			rec.close( "SGL script result and trace equal its BSML translation" );

			sgl::Script with_put;
			with_put.input = { 1 };
			with_put.code.push_back( sgl::Instr{ sgl::Instr::Kind::put, 0, 0, 0, {}, {} } );
			bool rejected = false;
			try {
				sgl::translate_to_bsml( with_put );
			} catch( const UsageError &e ) {
				rejected = std::string( e.what() ) == "put is absent in SGL";
			}
			const auto ran = sgl::run_nested( MachineTree::leaf( flat( 2 ) ), with_put );
			rejected = rejected && !ran.ok() && ran.report.error->message == "put is absent in SGL";
			rec.add( "put is rejected in SGL", rejected, rejected ? "usage error" : "put was accepted" );
			return rec.take();
		}

		template< typename Program, typename Oracle >
		bool sgl_cases( const CheckOptions &o, Rng &rng, Program program, Oracle oracle ) {
			for( std::size_t p = 1; p <= o.max_p; ++p ) {
				for( std::size_t i = 0; i < std::max< std::size_t >( 1, o.cases / 4 ); ++i ) {
					const auto xs = random_longs( rng, rng() % 50 );
					const auto ys = random_longs( rng, xs.size() );
					RunSetup setup;
					auto res = sgl::run_nested( MachineTree::leaf( flat( p ) ),
						[ & ]( sgl::Machine &m ) { return program( m, xs, ys ); }, setup );
					if( !res.ok() || !( *res.value == oracle( xs, ys, p ) ) ) {
						return false;
					}
				}
			}
			return true;
		}

		std::vector< PropertyResult > expressiveness_suite( const CheckOptions &o ) {
			Recorder rec( "sgl-expressiveness" );
			const auto table = sgl_api_table( o );
			std::size_t ok = 0;
			for( const auto &e : table ) {
				ok += e.sgl_only && e.passed;
				rec.add( "api " + e.op, e.passed, e.note );
			}
			const double fraction = sgl_fraction( table );
			rec.add( "at least 80% of the basic API is written in SGL", fraction >= 0.8,
				std::to_string( ok ) + "/" + std::to_string( table.size() ) + " = " +
					std::to_string( static_cast< int >( std::lround( fraction * 100 ) ) ) + "%" );
			return rec.take();
		}

		std::vector< PropertyResult > nested_suite( const CheckOptions &o ) {
			Recorder rec( "nested" );
			Rng rng( o.seed );
			const auto tree =
				MachineTree::node( { MachineTree::leaf( make_machine( 2, 1, 10 ) ), MachineTree::leaf( make_machine( 2, 1, 10 ) ) },
					2, 20 );
			for( std::size_t i = 0; i < o.cases; ++i ) {
				const auto script = sgl::random_script( rng, 4, 4 + rng() % 12 );
				auto nested = sgl::run_nested( tree, script );
				auto flat4 = sgl::run_nested( MachineTree::leaf( flat( 4 ) ), script );
				rec.expect( nested.ok() && flat4.ok() && *nested.value == *flat4.value, "case " + std::to_string( i ) );

				const auto xs = random_longs( rng, rng() % 40 );
				auto library = [ & ]( sgl::Machine &m ) {
					const auto d = block_distribute( xs, 4 );
					return std::make_tuple( sgl::reduce( m, std::plus<>{}, d ), concat( sgl::scan( m, std::plus<>{}, d ) ),
						sgl::dot( m, d, d ), concat( sgl::filter( m, []( long x ) { return x % 3 == 0; }, d ) ),
						sgl::broadcast( m, 3, xs.size() ) );
				};
				auto a = sgl::run_nested( tree, library );
				auto b = sgl::run_nested( MachineTree::leaf( flat( 4 ) ), library );
				rec.expect( a.ok() && b.ok() && *a.value == *b.value, "library case " + std::to_string( i ) );
			}
			rec.close( "results on a 2 x 2 tree equal flat p = 4 results" );

			auto example = sgl::run_nested( tree, []( sgl::Machine &m ) { return m.scatter( 0, std::vector< int >{ 1, 2, 3, 4 } ); } );
			const bool cost_ok = example.ok() && example.report.trace.total_cost == 35.0 &&
				example.report.trace.steps[ 0 ].nested && example.report.trace.steps[ 0 ].nested->own_cost == 24.0;
			rec.add( "scatter of 4 unit chunks on the 2 x 2 tree costs 24 + 11 = 35", cost_ok,
				example.ok() ? "cost " + format_real( example.report.trace.total_cost ) : "run failed" );
			return rec.take();
		}

		// ---- traces ----------------------------------------------------------

		algorithms::WorkloadParams params_for( const std::string &name, std::uint64_t seed ) {
			algorithms::WorkloadParams prm;
			prm.n = name == "nbody" || name == "matvec" ? 24 : 300;
			prm.seed = seed;
			return prm;
		}

		std::vector< PropertyResult > determinism_suite( const CheckOptions &o ) {
			Recorder rec( "determinism" );
			RunSetup parallel;
			parallel.options.backend = engine::Backend::parallel;
			for( const auto &name : algorithms::workload_names() ) {
				for( std::size_t p : power_ps( o.max_p ) ) {
					const auto prm = params_for( name, o.seed + p );
					const auto a = algorithms::run_workload( name, MachineTree::leaf( flat( p ) ), prm );
					const auto b = algorithms::run_workload( name, MachineTree::leaf( flat( p ) ), prm );
					const auto c = algorithms::run_workload( name, MachineTree::leaf( flat( p ) ), prm, parallel );
					rec.expect( a.ok() && b.ok() && a.trace == b.trace && a.result_digest == b.result_digest &&
							a.peak_words_per_pid == b.peak_words_per_pid,
						name + " p=" + std::to_string( p ) + " simulate" );
					rec.expect( c.ok() && c.result_digest == a.result_digest && c.trace == a.trace,
						name + " p=" + std::to_string( p ) + " parallel" );
				}
			}
			rec.close( "simulate reruns are bit-identical and parallel results equal simulate results" );
			return rec.take();
		}

		std::vector< PropertyResult > exact_counts_suite( const CheckOptions &o ) {
			Recorder rec( "exact-counts" );
			for( const char *name : { "broadcast", "exchange", "shift" } ) {
				for( std::size_t p = 1; p <= o.max_p; ++p ) {
					for( std::size_t n : { 1u, 10u, 100u } ) {
						algorithms::WorkloadParams prm;
						prm.n = n;
						const auto r = algorithms::run_workload( name, MachineTree::leaf( flat( p ) ), prm );
						Words h = ( p - 1 ) * n;
						Words words = ( p - 1 ) * n;
						if( std::string( name ) == "exchange" ) {
							words = p * ( p - 1 ) * n;
						} else if( std::string( name ) == "shift" ) {
							h = p > 1 ? n : 0;
							words = p > 1 ? p * n : 0;
						}
						rec.expect( r.ok() && r.trace.sync_count == 1 && r.trace.steps[ 0 ].h == h && r.trace.total_words == words &&
								r.trace.total_cost == static_cast< double >( h ) + 10.0,
							std::string( name ) + " p=" + std::to_string( p ) + " n=" + std::to_string( n ) );
					}
				}
				rec.close( std::string( name ) + " h and words match the closed form" );
			}
			return rec.take();
		}

		std::vector< PropertyResult > recost_suite( const CheckOptions &o ) {
			Recorder rec( "recost" );
			const std::size_t p = std::min< std::size_t >( 4, o.max_p );
			for( const auto &name : algorithms::workload_names() ) {
				const auto r = algorithms::run_workload( name, MachineTree::leaf( make_machine( p, 3, 50 ) ), params_for( name, o.seed ) );
				if( !r.ok() ) {
					rec.expect( false, name + ": " + r.error->message );
					continue;
				}
				const double same = engine::estimate_runtime( r.trace, make_machine( p, 3, 50 ) );
				const double lo = engine::estimate_runtime( r.trace, make_machine( p, 3, 0 ) );
				const double hi = engine::estimate_runtime( r.trace, make_machine( p, 3, 1000 ) );
				rec.expect( same == r.trace.total_cost, name + " same machine" );
				rec.expect( hi - lo == static_cast< double >( r.trace.sync_count ) * 1000.0, name + " l change" );
			}
			rec.close( "re-costing reproduces the cost and shifts it by sync_count * dl" );
			return rec.take();
		}

		std::vector< PropertyResult > model_suite( const CheckOptions &o ) {
			Recorder rec( "model" );
			Rng rng( o.seed );
			std::uniform_real_distribution< double > coef( -10, 10 );
			const auto basis = perfmodel::default_basis();
			for( std::size_t i = 0; i < o.cases; ++i ) {
				std::vector< double > c( basis.size() );
				for( auto &x : c ) {
					x = coef( rng );
				}
				std::vector< perfmodel::GridRow > rows;
				for( std::size_t p : { 1, 2, 3, 4, 6, 8 } ) {
					for( std::size_t n : { 1, 2, 4, 8, 16, 32, 64 } ) {
						double v = 0;
						for( std::size_t k = 0; k < basis.size(); ++k ) {
							v += c[ k ] * basis[ k ]( static_cast< double >( p ), static_cast< double >( n ) );
						}
						rows.push_back( { p, n, perfmodel::Metric::time, v, "" } );
					}
				}
				const auto model = perfmodel::fit( rows, basis );
				bool ok = model.stats.rms <= 1e-9;
				for( std::size_t k = 0; k < c.size(); ++k ) {
					ok = ok && std::abs( model.coefficients[ k ] - c[ k ] ) <= 1e-6 * std::abs( c[ k ] );
				}
				rec.expect( ok, "draw " + std::to_string( i ) );
			}
			rec.close( "noiseless grids over the default basis are recovered" );

			perfmodel::SweepSpec spec;
			spec.algorithm = "broadcast";
			spec.p_list = { 2, 4, 8 };
			spec.n_list = { 1, 10, 100 };
			spec.machine = make_machine( 1, 3, 40 );
			const auto grid = perfmodel::sweep( spec );
			const auto model = perfmodel::fit( grid.rows_of( perfmodel::Metric::cost ), perfmodel::parse_basis( "1,n*(p-1)" ) );
			const bool ok = std::abs( model.coefficients[ 0 ] - 40 ) <= 1e-9 && std::abs( model.coefficients[ 1 ] - 3 ) <= 1e-9;
			rec.add( "broadcast sweep fitted on {1, n*(p-1)} gives (l, g)", ok,
				"l=" + format_real( model.coefficients[ 0 ] ) + " g=" + format_real( model.coefficients[ 1 ] ) );
			return rec.take();
		}

		using Suite = std::function< std::vector< PropertyResult >( const CheckOptions & ) >;

		const std::vector< std::pair< std::string, Suite > > &suites() {
			static const std::vector< std::pair< std::string, Suite > > table = {
				{ "transpose", transpose_suite },
				{ "oracle", oracle_suite },
				{ "sgl-translate", translate_suite },
				{ "sgl-expressiveness", expressiveness_suite },
				{ "nested", nested_suite },
				{ "determinism", determinism_suite },
				{ "exact-counts", exact_counts_suite },
				{ "recost", recost_suite },
				{ "model", model_suite },
			};
			return table;
		}

	} // namespace

	const std::vector< std::string > &suite_names() {
		static const std::vector< std::string > names = [] {
			std::vector< std::string > out;
			for( const auto &s : suites() ) {
				out.push_back( s.first );
			}
			return out;
		}();
		return names;
	}

	std::vector< PropertyResult > run_suite( const std::string &name, const CheckOptions &options ) {
		if( options.max_p == 0 || options.cases == 0 ) {
			throw UsageError( "check: p and cases must be >= 1" );
		}
		for( const auto &[ suite_name, suite ] : suites() ) {
			if( suite_name == name ) {
				return suite( options );
			}
		}
		throw UsageError( "unknown suite '" + name + "'" );
	}

	std::vector< ApiEntry > sgl_api_table( const CheckOptions &o ) {
		Rng rng( o.seed );
		std::vector< ApiEntry > out;
		auto add = [ &out ]( const char *op, bool passed, const char *note ) { out.push_back( { op, true, passed, note } ); };
		using V = std::vector< long >;

		add( "map",
			sgl_cases(
				o, rng,
				[]( const sgl::Machine &m, const V &xs, const V & ) {
					return concat( sgl::map( m, []( long x ) { return 3 * x + 1; }, block_distribute( xs, m.nprocs() ) ) );
				},
				[]( const V &xs, const V &, std::size_t ) {
					V out;
					for( auto x : xs ) {
						out.push_back( 3 * x + 1 );
					}
					return out;
				} ),
			"lmap" );
		add( "reduce",
			sgl_cases(
				o, rng,
				[]( const sgl::Machine &m, const V &xs, const V & ) {
					return sgl::reduce( m, std::plus<>{}, block_distribute( xs, m.nprocs() ) );
				},
				[]( const V &xs, const V &, std::size_t ) {
					std::optional< long > out;
					for( auto x : xs ) {
						out = out.value_or( 0 ) + x;
					}
					return out;
				} ),
			"lmap, gather" );
		add( "scan",
			sgl_cases(
				o, rng,
				[]( const sgl::Machine &m, const V &xs, const V & ) {
					return concat( sgl::scan( m, std::plus<>{}, block_distribute( xs, m.nprocs() ) ) );
				},
				[]( const V &xs, const V &, std::size_t ) {
					V out;
					long acc = 0;
					for( auto x : xs ) {
						out.push_back( acc += x );
					}
					return out;
				} ),
			"lmap, gather, scatter" );
		add( "zip",
			sgl_cases(
				o, rng,
				[]( const sgl::Machine &m, const V &xs, const V &ys ) {
					return concat( sgl::zip( m, block_distribute( xs, m.nprocs() ), block_distribute( ys, m.nprocs() ) ) );
				},
				[]( const V &xs, const V &ys, std::size_t ) {
					std::vector< std::pair< long, long > > out;
					for( std::size_t i = 0; i < xs.size(); ++i ) {
						out.emplace_back( xs[ i ], ys[ i ] );
					}
					return out;
				} ),
			"lmap" );
		add( "filter",
			sgl_cases(
				o, rng,
				[]( const sgl::Machine &m, const V &xs, const V & ) {
					return concat( sgl::filter( m, []( long x ) { return x % 2 == 0; }, block_distribute( xs, m.nprocs() ) ) );
				},
				[]( const V &xs, const V &, std::size_t ) {
					V out;
					std::copy_if( xs.begin(), xs.end(), std::back_inserter( out ), []( long x ) { return x % 2 == 0; } );
					return out;
				} ),
			"lmap" );
		add( "histogram",
			sgl_cases(
				o, rng,
				[]( const sgl::Machine &m, const V &xs, const V & ) {
					return sgl::histogram( m, block_distribute( xs, m.nprocs() ), 8,
						[]( long x ) { return static_cast< std::size_t >( ( x + 1000 ) / 250 ); } );
				},
				[]( const V &xs, const V &, std::size_t ) {
					std::vector< std::uint64_t > out( 8, 0 );
					for( auto x : xs ) {
						const auto b = static_cast< std::size_t >( ( x + 1000 ) / 250 );
						if( b < 8 ) {
							++out[ b ];
						}
					}
					return out;
				} ),
			"lmap, gather" );
		add( "dot",
			sgl_cases(
				o, rng,
				[]( const sgl::Machine &m, const V &xs, const V &ys ) {
					return sgl::dot( m, block_distribute( xs, m.nprocs() ), block_distribute( ys, m.nprocs() ) );
				},
				[]( const V &xs, const V &ys, std::size_t ) {
					long out = 0;
					for( std::size_t i = 0; i < xs.size(); ++i ) {
						out += xs[ i ] * ys[ i ];
					}
					return out;
				} ),
			"lmap, gather" );
		add( "matvec",
			sgl_cases(
				o, rng,
				[]( const sgl::Machine &m, const V &xs, const V &ys ) {
					std::vector< V > rows;
					for( std::size_t i = 0; i < xs.size(); ++i ) {
						rows.push_back( { xs[ i ], ys[ i ], 1 } );
					}
					return sgl::matvec( m, block_distribute( rows, m.nprocs() ), V{ 2, -1, 5 } );
				},
				[]( const V &xs, const V &ys, std::size_t ) {
					V out;
					for( std::size_t i = 0; i < xs.size(); ++i ) {
						out.push_back( 2 * xs[ i ] - ys[ i ] + 5 );
					}
					return out;
				} ),
			"scatter, lmap, gather" );
		add( "broadcast",
			sgl_cases(
				o, rng,
				[]( const sgl::Machine &m, const V &xs, const V & ) {
					return sgl::broadcast( m, m.nprocs() - 1, xs ).elems();
				},
				[]( const V &xs, const V &, std::size_t p ) { return std::vector< V >( p, xs ); } ),
			"scatter" );

		// sort needs the all-to-all redistribution of put; checked with the BSML sample sort
		bool sorted = true;
		for( std::size_t p = 1; p <= o.max_p && sorted; ++p ) {
			const auto xs = random_longs( rng, rng() % 200 );
			auto res = run(
				[ & ]( bsml::Machine &m ) { return concat( algorithms::sample_sort( m, block_distribute( xs, p ) ) ); }, flat( p ) );
			auto expected = xs;
			std::sort( expected.begin(), expected.end() );
			sorted = res.ok() && *res.value == expected;
		}
		out.push_back( { "sort", false, sorted, "needs put for the all-to-all redistribution (BSML sample_sort)" } );
		return out;
	}

	double sgl_fraction( const std::vector< ApiEntry > &table ) {
		if( table.empty() ) {
			return 0;
		}
		std::size_t ok = 0;
		for( const auto &e : table ) {
			ok += e.sgl_only && e.passed;
		}
		return static_cast< double >( ok ) / static_cast< double >( table.size() );
	}

} // namespace bsplab::checks
