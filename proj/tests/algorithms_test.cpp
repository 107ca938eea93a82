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

#include <doctest.h>

#include <bsplab/algorithms/collectives.hpp>
#include <bsplab/algorithms/hash_table.hpp>
#include <bsplab/algorithms/nbody.hpp>
#include <bsplab/algorithms/sample_sort.hpp>
#include <bsplab/algorithms/workloads.hpp>
#include <bsplab/run.hpp>

#include <algorithm>
#include <cmath>
#include <map>
#include <random>

using namespace bsplab;
using algorithms::Body;

namespace {

	const std::size_t test_ps[] = { 1, 2, 3, 4, 8 };

	MachineConfig flat( std::size_t p ) { return make_machine( p, 1, 10 ); }

	std::vector< std::uint32_t > random_keys( std::mt19937_64 &rng, std::size_t n, int kind ) {
		std::vector< std::uint32_t > xs( n );
		for( auto &x : xs ) {
			x = static_cast< std::uint32_t >( rng() );
		}
		switch( kind ) {
			case 1:
				std::sort( xs.begin(), xs.end() );
				break;
			case 2:
				std::sort( xs.rbegin(), xs.rend() );
				break;
			case 3:
				std::fill( xs.begin(), xs.end(), 7u );
				break;
			case 4:
				for( auto &x : xs ) {
					x %= 3;
				}
				break;
			default:
				break;
		}
		return xs;
	}

	// sequential leapfrog, same arithmetic as the parallel step written out over one array
	std::vector< Body > nbody_oracle( std::vector< Body > bodies, const algorithms::NBodyParams &prm ) {
		const double half = prm.dt / 2;
		for( auto &b : bodies ) {
			b.pos[ 0 ] = b.pos[ 0 ] + b.vel[ 0 ] * half;
			b.pos[ 1 ] = b.pos[ 1 ] + b.vel[ 1 ] * half;
		}
		const auto snapshot = bodies;
		for( std::size_t i = 0; i < bodies.size(); ++i ) {
			double ax = 0, ay = 0;
			for( std::size_t j = 0; j < snapshot.size(); ++j ) {
				if( i == j ) {
					continue;
				}
				const double dx = snapshot[ j ].pos[ 0 ] - snapshot[ i ].pos[ 0 ];
				const double dy = snapshot[ j ].pos[ 1 ] - snapshot[ i ].pos[ 1 ];
				const double r2 = dx * dx + dy * dy + prm.softening * prm.softening;
				const double s = prm.gravity * snapshot[ j ].mass / ( r2 * std::sqrt( r2 ) );
				ax = ax + s * dx;
				ay = ay + s * dy;
			}
			bodies[ i ].vel[ 0 ] = bodies[ i ].vel[ 0 ] + ax * prm.dt;
			bodies[ i ].vel[ 1 ] = bodies[ i ].vel[ 1 ] + ay * prm.dt;
			bodies[ i ].pos[ 0 ] = bodies[ i ].pos[ 0 ] + bodies[ i ].vel[ 0 ] * half;
			bodies[ i ].pos[ 1 ] = bodies[ i ].pos[ 1 ] + bodies[ i ].vel[ 1 ] * half;
		}
		return bodies;
	}

	std::vector< Body > random_bodies( std::mt19937_64 &rng, std::size_t n ) {
		std::uniform_real_distribution< double > pos( -1.0, 1.0 ), mass( 0.1, 2.0 );
		std::vector< Body > out( n );
		for( auto &b : out ) {
			b.pos = { pos( rng ), pos( rng ) };
			b.vel = { pos( rng ) * 0.1, pos( rng ) * 0.1 };
			b.mass = mass( rng );
		}
		return out;
	}

} // namespace

TEST_CASE( "broadcast counts" ) {
	for( std::size_t p = 1; p <= 8; ++p ) {
		for( std::size_t n : { 1u, 10u, 100u } ) {
			const std::vector< int > value( n, 3 );
			auto res = run( [ & ]( sgl::Machine &m ) { return algorithms::broadcast( m, 0, value ); }, flat( p ) );
			REQUIRE( res.ok() );
			CHECK( *res.value == ParVec< std::vector< int > >( std::vector< std::vector< int > >( p, value ) ) );
			REQUIRE( res.report.trace.sync_count == 1 );
			CHECK( res.report.trace.steps[ 0 ].h == ( p - 1 ) * n );
			CHECK( res.report.trace.total_words == ( p - 1 ) * n );
			CHECK( res.report.trace.total_cost == static_cast< double >( ( p - 1 ) * n ) + 10.0 );
		}
	}
	auto bad = run( []( sgl::Machine &m ) { return algorithms::broadcast( m, 4, 1 ); }, flat( 4 ) );
	CHECK( bad.report.error->kind == "routing" );
}

TEST_CASE( "total exchange and ring shift counts" ) {
	for( std::size_t p = 1; p <= 8; ++p ) {
		for( std::size_t n : { 1u, 10u, 100u } ) {
			auto ex = run(
				[ & ]( bsml::Machine &m ) {
					auto v = m.mkpar( [ n ]( std::size_t pid ) { return std::vector< int >( n, static_cast< int >( pid ) ); },
						bsml::Work{ 0 } );
					return algorithms::total_exchange( m, v );
				},
				flat( p ) );
			REQUIRE( ex.ok() );
			for( std::size_t d = 0; d < p; ++d ) {
				for( std::size_t s = 0; s < p; ++s ) {
					CHECK( ( *ex.value )[ d ][ s ] == std::vector< int >( n, static_cast< int >( s ) ) );
				}
			}
			REQUIRE( ex.report.trace.sync_count == 1 );
			CHECK( ex.report.trace.steps[ 0 ].h == ( p - 1 ) * n );
			CHECK( ex.report.trace.total_words == p * ( p - 1 ) * n );

			auto sh = run(
				[ & ]( bsml::Machine &m ) {
					auto v = m.mkpar( [ n ]( std::size_t pid ) { return std::vector< int >( n, static_cast< int >( pid ) ); },
						bsml::Work{ 0 } );
					return algorithms::ring_shift( m, v );
				},
				flat( p ) );
			REQUIRE( sh.ok() );
			for( std::size_t d = 0; d < p; ++d ) {
				CHECK( ( *sh.value )[ d ] == std::vector< int >( n, static_cast< int >( ( d + p - 1 ) % p ) ) );
			}
			CHECK( sh.report.trace.steps[ 0 ].h == ( p > 1 ? n : 0 ) );
			CHECK( sh.report.trace.total_words == ( p > 1 ? p * n : 0 ) );
		}
	}
}

TEST_CASE( "reduce and scan examples" ) {
	auto res = run(
		[]( bsml::Machine &m ) {
			auto v = m.mkpar( []( std::size_t pid ) { return static_cast< int >( pid + 1 ); } );
			auto ones = m.mkpar( []( std::size_t ) { return 1; } );
			return std::make_pair( algorithms::reduce( m, std::plus<>{}, v ), algorithms::scan( m, std::plus<>{}, ones ) );
		},
		flat( 4 ) );
	REQUIRE( res.ok() );
	CHECK( res.value->first == 10 );
	CHECK( res.value->second == ParVec< int >{ 1, 2, 3, 4 } );
}

TEST_CASE( "reduce and scan against sequential oracles" ) {
	std::mt19937_64 rng( 1234 );
	for( std::size_t p : test_ps ) {
		for( int trial = 0; trial < 100; ++trial ) {
			const std::size_t n = rng() % 60;
			std::vector< long > xs( n );
			for( auto &x : xs ) {
				x = static_cast< long >( rng() % 2001 ) - 1000;
			}
			auto res = run(
				[ & ]( bsml::Machine &m ) {
					const auto d = block_distribute( xs, p );
					auto mx = algorithms::reduce( m, []( long a, long b ) { return std::max( a, b ); }, d );
					auto sum = algorithms::reduce( m, std::plus<>{}, d );
					auto pre = algorithms::scan( m, std::plus<>{}, d );
					auto pv = m.mkpar( [ & ]( std::size_t pid ) { return pid < xs.size() ? xs[ pid ] : 0L; } );
					auto pv_scan = algorithms::scan( m, []( long a, long b ) { return a - b; }, pv );
					auto pv_max = algorithms::reduce( m, []( long a, long b ) { return std::max( a, b ); }, pv );
					return std::make_tuple( mx, sum, concat( pre ), pv_scan, pv_max );
				},
				flat( p ) );
			REQUIRE( res.ok() );
			const auto &[ mx, sum, pre, pv_scan, pv_max ] = *res.value;
			if( xs.empty() ) {
				CHECK_FALSE( mx );
				CHECK_FALSE( sum );
			} else {
				CHECK( *mx == *std::max_element( xs.begin(), xs.end() ) );
				long total = 0;
				for( auto x : xs ) {
					total += x;
				}
				CHECK( *sum == total );
			}
			std::vector< long > expected;
			long acc = 0;
			for( auto x : xs ) {
				acc += x;
				expected.push_back( acc );
			}
			CHECK( pre == expected );
			// a non-commutative op checks the left-to-right order over pids
			long left = 0;
			long best = 0;
			for( std::size_t pid = 0; pid < p; ++pid ) {
				const long x = pid < xs.size() ? xs[ pid ] : 0;
				left = pid == 0 ? x : left - x;
				best = pid == 0 ? x : std::max( best, x );
				CHECK( pv_scan[ pid ] == left );
			}
			CHECK( pv_max == best );
		}
	}
}

TEST_CASE( "reduce and scan use a constant number of supersteps" ) {
	for( std::size_t n : { 10u, 1000u, 10000u } ) {
		auto res = run(
			[ & ]( bsml::Machine &m ) {
				const auto d = block_distribute( std::vector< long >( n, 1 ), 4 );
				const auto before = m.sync_count();
				algorithms::reduce( m, std::plus<>{}, d );
				const auto mid = m.sync_count();
				algorithms::scan( m, std::plus<>{}, d );
				return std::make_pair( mid - before, m.sync_count() - mid );
			},
			flat( 4 ) );
		CHECK( res.value->first == 1 );
		CHECK( res.value->second == 1 );
	}
}

TEST_CASE( "sample sort against the sequential sort" ) {
	std::mt19937_64 rng( 77 );
	for( std::size_t p : test_ps ) {
		for( int trial = 0; trial < 100; ++trial ) {
			const std::size_t n = trial < 10 ? trial : rng() % 3000;
			const auto xs = random_keys( rng, n, trial % 5 );
			auto res = run(
				[ & ]( bsml::Machine &m ) { return algorithms::sample_sort( m, block_distribute( xs, p ) ); }, flat( p ) );
			REQUIRE( res.ok() );
			auto expected = xs;
			std::sort( expected.begin(), expected.end() );
			CHECK( concat( *res.value ) == expected );
			for( const auto &block : *res.value ) {
				CHECK( static_cast< double >( block.size() ) <=
					2.0 * static_cast< double >( n ) / static_cast< double >( p ) + static_cast< double >( p ) );
			}
		}
	}
}

TEST_CASE( "sample sort: trivial inputs and superstep count" ) {
	auto one = run(
		[]( bsml::Machine &m ) { return algorithms::sample_sort( m, DistArray< int >{ std::vector< int >{ 1, 2, 3 } } ); },
		flat( 1 ) );
	CHECK( one.value->at( 0 ) == std::vector< int >{ 1, 2, 3 } );

	auto empty = run(
		[]( bsml::Machine &m ) {
			return algorithms::sample_sort( m, DistArray< int >( std::vector< std::vector< int > >( 4 ) ) );
		},
		flat( 4 ) );
	REQUIRE( empty.ok() );
	CHECK( concat( *empty.value ).empty() );

	auto equal = run(
		[]( bsml::Machine &m ) {
			return algorithms::sample_sort( m, block_distribute( std::vector< int >( 1000, 5 ), 4 ) );
		},
		flat( 4 ) );
	for( const auto &block : *equal.value ) {
		CHECK( block.size() <= 2 * 1000 / 4 + 4 );
	}

	std::mt19937_64 rng( 9 );
	std::vector< std::size_t > syncs;
	for( std::size_t n : { 1000u, 10000u } ) {
		const auto xs = random_keys( rng, n, 0 );
		auto res = run( [ & ]( bsml::Machine &m ) { return algorithms::sample_sort( m, block_distribute( xs, 4 ) ); },
			flat( 4 ) );
		syncs.push_back( res.report.trace.sync_count );
	}
	CHECK( syncs[ 0 ] == syncs[ 1 ] );
	// three exchanges plus the superstep closed by the final merge
	CHECK( syncs[ 0 ] == 4 );

	auto wrong = run(
		[]( bsml::Machine &m ) { return algorithms::sample_sort( m, DistArray< int >{ std::vector< int >{ 1 } } ); },
		flat( 2 ) );
	CHECK( wrong.report.error->kind == "dimension" );
}

TEST_CASE( "sample sort trace re-costed with different l" ) {
	std::mt19937_64 rng( 4 );
	const auto xs = random_keys( rng, 5000, 0 );
	auto res = run( [ & ]( bsml::Machine &m ) { return algorithms::sample_sort( m, block_distribute( xs, 4 ) ); },
		make_machine( 4, 2, 300 ) );
	const auto &t = res.report.trace;
	const double lo = engine::estimate_runtime( t, make_machine( 4, 2, 0 ) );
	const double hi = engine::estimate_runtime( t, make_machine( 4, 2, 1000 ) );
	CHECK( hi - lo == static_cast< double >( t.sync_count ) * 1000.0 );
}

TEST_CASE( "hash table against a sequential map" ) {
	std::mt19937_64 rng( 2024 );
	for( std::size_t p : test_ps ) {
		for( int trial = 0; trial < 100; ++trial ) {
			const std::size_t n = rng() % 400;
			std::vector< std::pair< std::uint64_t, std::uint64_t > > pairs( n );
			for( auto &kv : pairs ) {
				kv = { rng() % 500, rng() };
			}
			std::vector< std::uint64_t > queries( rng() % 200 );
			for( auto &q : queries ) {
				q = rng() % 700;
			}
			const std::uint64_t seed = rng();
			auto res = run(
				[ & ]( bsml::Machine &m ) {
					const auto table = algorithms::hash_build( m, block_distribute( pairs, p ), seed );
					const auto before = m.sync_count();
					auto found = algorithms::hash_lookup( m, table, block_distribute( queries, p ) );
					return std::make_pair( concat( found ), m.sync_count() - before );
				},
				flat( p ) );
			REQUIRE( res.ok() );
			std::map< std::uint64_t, std::uint64_t > oracle;
			for( const auto &[ k, v ] : pairs ) {
				oracle[ k ] = v;
			}
			const auto &[ found, syncs ] = *res.value;
			REQUIRE( found.size() == queries.size() );
			for( std::size_t i = 0; i < queries.size(); ++i ) {
				const auto it = oracle.find( queries[ i ] );
				CHECK( found[ i ] == ( it == oracle.end() ? std::nullopt : std::optional< std::uint64_t >( it->second ) ) );
			}
			CHECK( syncs == 2 );
		}
	}
}

TEST_CASE( "hash table examples" ) {
	auto empty = run(
		[]( bsml::Machine &m ) {
			const auto table = algorithms::hash_build( m,
				DistArray< std::pair< int, int > >( std::vector< std::vector< std::pair< int, int > > >( 3 ) ), 1 );
			return concat( algorithms::hash_lookup( m, table, block_distribute( std::vector< int >{ 1, 2, 3, 4, 5 }, 3 ) ) );
		},
		flat( 3 ) );
	CHECK( empty.value->size() == 5 );
	for( const auto &x : *empty.value ) {
		CHECK_FALSE( x );
	}

	// 1000 pairs, 100 present keys
	std::mt19937_64 rng( 8 );
	std::vector< std::pair< std::uint64_t, std::uint64_t > > pairs( 1000 );
	for( std::size_t i = 0; i < pairs.size(); ++i ) {
		pairs[ i ] = { rng(), i };
	}
	std::vector< std::uint64_t > keys;
	for( std::size_t i = 0; i < 100; ++i ) {
		keys.push_back( pairs[ rng() % pairs.size() ].first );
	}
	auto res = run(
		[ & ]( bsml::Machine &m ) {
			const auto table = algorithms::hash_build( m, block_distribute( pairs, 4 ), 42 );
			CHECK( table.max_load() <= 4 * 1000 / 4 );
			return concat( algorithms::hash_lookup( m, table, block_distribute( keys, 4 ) ) );
		},
		flat( 4 ) );
	std::map< std::uint64_t, std::uint64_t > oracle( pairs.begin(), pairs.end() );
	for( std::size_t i = 0; i < keys.size(); ++i ) {
		CHECK( res.value->at( i ) == oracle.at( keys[ i ] ) );
	}

	// sync count of a lookup batch does not depend on the batch size
	for( std::size_t batch : { 0u, 1u, 10u, 1000u } ) {
		auto r = run(
			[ & ]( bsml::Machine &m ) {
				const auto table = algorithms::hash_build( m, block_distribute( pairs, 4 ), 42 );
				const auto before = m.sync_count();
				algorithms::hash_lookup( m, table, block_distribute( std::vector< std::uint64_t >( batch, 3 ), 4 ) );
				return m.sync_count() - before;
			},
			flat( 4 ) );
		CHECK( *r.value == 2 );
	}
}

TEST_CASE( "hash load stays within four times the mean" ) {
	for( std::uint64_t seed = 0; seed < 20; ++seed ) {
		for( std::size_t p : { 2u, 4u, 8u } ) {
			const std::size_t n = 50 * p;
			std::vector< std::pair< std::uint64_t, int > > pairs;
			for( std::size_t i = 0; i < n; ++i ) {
				pairs.emplace_back( i, 0 );
			}
			auto res = run(
				[ & ]( bsml::Machine &m ) { return algorithms::hash_build( m, block_distribute( pairs, p ), seed ).max_load(); },
				flat( p ) );
			CHECK( *res.value <= 4 * n / p );
		}
	}
}

TEST_CASE( "n-body step against the sequential oracle" ) {
	std::mt19937_64 rng( 31 );
	const algorithms::NBodyParams prm{ 0.01, 0.05, 1.0 };
	for( std::size_t p : test_ps ) {
		for( int trial = 0; trial < 100; ++trial ) {
			const auto bodies = random_bodies( rng, rng() % 40 );
			auto res = run(
				[ & ]( bsml::Machine &m ) { return concat( algorithms::nbody_step( m, block_distribute( bodies, p ), prm ) ); },
				flat( p ) );
			REQUIRE( res.ok() );
			CHECK( *res.value == nbody_oracle( bodies, prm ) );
		}
	}
}

TEST_CASE( "n-body examples" ) {
	const algorithms::NBodyParams prm{ 0.25, 0.05, 1.0 };
	Body lone;
	lone.pos = { 1.0, 2.0 };
	lone.vel = { 0.5, -1.0 };
	auto one = run(
		[ & ]( bsml::Machine &m ) {
			return concat( algorithms::nbody_step( m, DistArray< Body >{ std::vector< Body >{ lone } }, prm ) );
		},
		flat( 1 ) );
	REQUIRE( one.ok() );
	CHECK( one.value->at( 0 ).vel == lone.vel );
	CHECK( one.value->at( 0 ).pos[ 0 ] == 1.0 + 0.5 * 0.25 );
	CHECK( one.value->at( 0 ).pos[ 1 ] == 2.0 - 1.0 * 0.25 );

	// mirrored pair: equal and opposite kicks, zero total momentum stays zero
	Body a, b;
	a.pos = { -0.5, 0.25 };
	b.pos = { 0.5, -0.25 };
	a.vel = { 0.125, 0.0 };
	b.vel = { -0.125, 0.0 };
	auto pair = run(
		[ & ]( bsml::Machine &m ) {
			return concat( algorithms::nbody_step( m, block_distribute( std::vector< Body >{ a, b }, 2 ), prm ) );
		},
		flat( 2 ) );
	REQUIRE( pair.ok() );
	const auto &out = *pair.value;
	CHECK( out[ 0 ].vel[ 0 ] == -out[ 1 ].vel[ 0 ] );
	CHECK( out[ 0 ].vel[ 1 ] == -out[ 1 ].vel[ 1 ] );
	CHECK( out[ 0 ].mass * out[ 0 ].vel[ 0 ] + out[ 1 ].mass * out[ 1 ].vel[ 0 ] == 0.0 );

	std::mt19937_64 rng( 5 );
	const auto bodies = random_bodies( rng, 37 );
	auto on = [ & ]( std::size_t p ) {
		return *run(
			[ & ]( bsml::Machine &m ) { return concat( algorithms::nbody_step( m, block_distribute( bodies, p ), prm ) ); },
			flat( p ) )
					.value;
	};
	CHECK( on( 4 ) == on( 1 ) );

	auto bad = bodies;
	bad[ 3 ].vel[ 1 ] = std::nan( "" );
	auto invalid = run(
		[ & ]( bsml::Machine &m ) { return algorithms::nbody_step( m, block_distribute( bad, 2 ), prm ); }, flat( 2 ) );
	CHECK( invalid.report.error->kind == "validation" );
	auto bad_dt = run(
		[ & ]( bsml::Machine &m ) {
			return algorithms::nbody_step( m, block_distribute( bodies, 2 ), algorithms::NBodyParams{ 0.0, 0.05, 1.0 } );
		},
		flat( 2 ) );
	CHECK( bad_dt.report.error->kind == "validation" );
}

TEST_CASE( "algorithms agree across backends" ) {
	std::mt19937_64 rng( 12 );
	const auto keys = random_keys( rng, 2000, 0 );
	const auto bodies = random_bodies( rng, 30 );
	auto program = [ & ]( bsml::Machine &m ) {
		const auto p = m.nprocs();
		auto sorted = algorithms::sample_sort( m, block_distribute( keys, p ) );
		auto moved = algorithms::nbody_step( m, block_distribute( bodies, p ), algorithms::NBodyParams{} );
		auto sum = algorithms::reduce( m, std::plus<>{}, block_distribute( std::vector< double >{ 0.1, 0.2, 0.3, 1e-17 }, p ) );
		return std::make_tuple( concat( sorted ), concat( moved ), sum );
	};
	RunSetup parallel;
	parallel.options.backend = engine::Backend::parallel;
	for( std::size_t p : test_ps ) {
		auto a = run( program, flat( p ) );
		auto b = run( program, flat( p ), parallel );
		auto c = run( program, flat( p ) );
		REQUIRE( a.ok() );
		REQUIRE( b.ok() );
		CHECK( *a.value == *b.value );
		CHECK( a.report.trace == b.report.trace );
		CHECK( a.report.trace == c.report.trace );
		CHECK( a.report.result_digest == b.report.result_digest );
	}
}

TEST_CASE( "named workloads pass their oracles on both backends" ) {
	RunSetup parallel;
	parallel.options.backend = engine::Backend::parallel;
	for( const auto &name : algorithms::workload_names() ) {
		for( std::size_t p : { 1u, 2u, 4u } ) {
			for( const char *dist : { "uniform", "equal" } ) {
				algorithms::WorkloadParams prm;
				prm.n = name == "matvec" || name == "nbody" ? 24 : 500;
				prm.seed = p;
				prm.distribution = dist;
				const auto a = algorithms::run_workload( name, MachineTree::leaf( flat( p ) ), prm );
				const auto b = algorithms::run_workload( name, MachineTree::leaf( flat( p ) ), prm );
				const auto c = algorithms::run_workload( name, MachineTree::leaf( flat( p ) ), prm, parallel );
				INFO( name, " p=", p );
				REQUIRE( a.ok() );
				REQUIRE( c.ok() );
				CHECK( a.summary.at( "oracle" ) == "pass" );
				CHECK( c.summary.at( "oracle" ) == "pass" );
				CHECK( a.trace == b.trace );
				CHECK( a.result_digest == b.result_digest );
				CHECK( a.result_digest == c.result_digest );
				CHECK( a.program == name );
			}
		}
	}
}

TEST_CASE( "workload closed forms and errors" ) {
	for( std::size_t p : { 2u, 4u, 8u } ) {
		for( std::size_t n : { 1u, 10u, 100u } ) {
			algorithms::WorkloadParams prm;
			prm.n = n;
			const auto r = algorithms::run_workload( "broadcast", MachineTree::leaf( make_machine( p, 3, 40 ) ), prm );
			CHECK( r.trace.total_cost == 3.0 * static_cast< double >( ( p - 1 ) * n ) + 40.0 );
		}
	}
	algorithms::WorkloadParams empty;
	empty.n = 0;
	const auto sorted = algorithms::run_workload( "samplesort", MachineTree::leaf( flat( 1 ) ), empty );
	CHECK( sorted.ok() );
	CHECK( sorted.summary.at( "oracle" ) == "pass" );

	CHECK_THROWS_AS( algorithms::run_workload( "foo", MachineTree::leaf( flat( 1 ) ), {} ), UsageError );
	algorithms::WorkloadParams odd;
	odd.distribution = "zipf";
	CHECK_THROWS_AS( algorithms::run_workload( "samplesort", MachineTree::leaf( flat( 1 ) ), odd ), UsageError );

	const auto tree = MachineTree::node( { MachineTree::leaf( flat( 2 ) ), MachineTree::leaf( flat( 2 ) ) }, 2, 20 );
	algorithms::WorkloadParams small;
	small.n = 12;
	CHECK( algorithms::run_workload( "matvec", tree, small ).summary.at( "oracle" ) == "pass" );
	const auto flat_run = algorithms::run_workload( "broadcast", MachineTree::leaf( flat( 4 ) ), small );
	const auto nested_run = algorithms::run_workload( "broadcast", tree, small );
	CHECK( nested_run.result_digest == flat_run.result_digest );
	CHECK( algorithms::run_workload( "samplesort", tree, small ).error->kind == "usage" );
}
