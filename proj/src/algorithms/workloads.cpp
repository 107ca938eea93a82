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

#include <bsplab/algorithms/workloads.hpp>

#include <algorithm>
#include <functional>
#include <map>
#include <random>

#include <bsplab/algorithms/collectives.hpp>
#include <bsplab/algorithms/hash_table.hpp>
#include <bsplab/algorithms/nbody.hpp>
#include <bsplab/algorithms/sample_sort.hpp>
#include <bsplab/sgl/library.hpp>

namespace bsplab::algorithms {

	namespace {

		struct Entry {
			const char *name;
			const char *meaning;
		};

		const Entry entries[] = {
			{ "broadcast", "words in the value broadcast from pid 0 (SGL scatter)" },
			{ "exchange", "words each pid sends to every other pid" },
			{ "shift", "words each pid sends to its right neighbour" },
			{ "reduce", "integers summed" },
			{ "scan", "integers prefix-summed" },
			{ "samplesort", "32-bit keys sorted" },
			{ "hash", "key-value pairs inserted; n lookups follow, about half of them present" },
			{ "nbody", "bodies advanced by one leapfrog step" },
			{ "matvec", "rows and columns of the square matrix (SGL)" },
		};

		template< typename R >
		engine::RunReport finish( RunResult< R > &&res, const std::string &name, const WorkloadParams &params,
			const std::function< bool( const R & ) > &oracle )
		{
			auto report = std::move( res.report );
			report.summary[ "algorithm" ] = name;
			report.summary[ "n" ] = params.n;
			report.summary[ "seed" ] = params.seed;
			report.summary[ "distribution" ] = params.distribution;
			if( res.value ) {
				report.summary[ "oracle" ] = oracle( *res.value ) ? "pass" : "fail";
			}
			return report;
		}

		std::vector< std::int64_t > words( std::size_t n, std::size_t pid ) {
			std::vector< std::int64_t > out( n );
			for( std::size_t i = 0; i < n; ++i ) {
				out[ i ] = static_cast< std::int64_t >( pid * 1000003 + i );
			}
			return out;
		}

		std::vector< std::int64_t > as_values( const std::vector< std::uint32_t > &keys ) {
			std::vector< std::int64_t > out;
			out.reserve( keys.size() );
			for( auto k : keys ) {
				out.push_back( static_cast< std::int64_t >( k % 2001 ) - 1000 );
			}
			return out;
		}

	} // namespace

	const std::vector< std::string > &workload_names() {
		static const std::vector< std::string > names = [] {
			std::vector< std::string > out;
			for( const auto &e : entries ) {
				out.emplace_back( e.name );
			}
			return out;
		}();
		return names;
	}

	bool is_workload( const std::string &name ) {
		const auto &names = workload_names();
		return std::find( names.begin(), names.end(), name ) != names.end();
	}

	std::string describe_workload( const std::string &name ) {
		for( const auto &e : entries ) {
			if( name == e.name ) {
				return e.meaning;
			}
		}
		throw UsageError( "unknown algorithm '" + name + "'" );
	}

	std::vector< std::uint32_t > generate_keys( std::size_t n, std::uint64_t seed, const std::string &distribution ) {
		std::mt19937_64 rng( seed );
		std::vector< std::uint32_t > keys( n );
		for( auto &k : keys ) {
			k = static_cast< std::uint32_t >( rng() );
		}
		if( distribution == "uniform" ) {
		} else if( distribution == "sorted" ) {
			std::sort( keys.begin(), keys.end() );
		} else if( distribution == "reversed" ) {
			std::sort( keys.rbegin(), keys.rend() );
		} else if( distribution == "equal" ) {
			std::fill( keys.begin(), keys.end(), 0x5eedu );
		} else if( distribution == "few" ) {
			for( auto &k : keys ) {
				k %= 4;
			}
		} else {
			throw UsageError( "unknown distribution '" + distribution + "' (uniform, sorted, reversed, equal, few)" );
		}
		return keys;
	}

	engine::RunReport run_workload( const std::string &name, const MachineTree &machine, const WorkloadParams &params,
		RunSetup setup )
	{
		describe_workload( name );
		setup.name = name;
		const std::size_t n = params.n;
		const auto keys = generate_keys( n, params.seed, params.distribution );

		if( name == "broadcast" ) {
			const auto value = words( n, 0 );
			auto res = run( [ & ]( sgl::Machine &m ) { return algorithms::broadcast( m, 0, value ); }, machine, setup );
			return finish< ParVec< std::vector< std::int64_t > > >( std::move( res ), name, params, [ & ]( const auto &out ) {
				return std::all_of( out.begin(), out.end(), [ & ]( const auto &x ) { return x == value; } );
			} );
		}
		if( name == "exchange" ) {
			auto res = run(
				[ & ]( bsml::Machine &m ) {
					return total_exchange( m, m.mkpar( [ n ]( std::size_t pid ) { return words( n, pid ); }, bsml::Work{ 0 } ) );
				},
				machine, setup );
			return finish< ParVec< std::vector< std::vector< std::int64_t > > > >( std::move( res ), name, params,
				[ & ]( const auto &out ) {
					for( std::size_t d = 0; d < out.width(); ++d ) {
						for( std::size_t s = 0; s < out[ d ].size(); ++s ) {
							if( out[ d ][ s ] != words( n, s ) ) {
								return false;
							}
						}
					}
					return true;
				} );
		}
		if( name == "shift" ) {
			auto res = run(
				[ & ]( bsml::Machine &m ) {
					return ring_shift( m, m.mkpar( [ n ]( std::size_t pid ) { return words( n, pid ); }, bsml::Work{ 0 } ) );
				},
				machine, setup );
			return finish< ParVec< std::vector< std::int64_t > > >( std::move( res ), name, params, [ & ]( const auto &out ) {
				const std::size_t p = out.width();
				for( std::size_t d = 0; d < p; ++d ) {
					if( out[ d ] != words( n, ( d + p - 1 ) % p ) ) {
						return false;
					}
				}
				return true;
			} );
		}
		if( name == "reduce" || name == "scan" ) {
			const auto xs = as_values( keys );
			std::vector< std::int64_t > prefix;
			std::int64_t acc = 0;
			for( auto x : xs ) {
				acc += x;
				prefix.push_back( acc );
			}
			if( name == "reduce" ) {
				auto res = run(
					[ & ]( bsml::Machine &m ) {
						return reduce( m, std::plus<>{}, block_distribute( xs, m.nprocs() ) ).value_or( 0 );
					},
					machine, setup );
				return finish< std::int64_t >( std::move( res ), name, params, [ & ]( std::int64_t total ) { return total == acc; } );
			}
			auto res = run(
				[ & ]( bsml::Machine &m ) { return concat( scan( m, std::plus<>{}, block_distribute( xs, m.nprocs() ) ) ); },
				machine, setup );
			return finish< std::vector< std::int64_t > >( std::move( res ), name, params,
				[ & ]( const auto &out ) { return out == prefix; } );
		}
		if( name == "samplesort" ) {
			auto res = run(
				[ & ]( bsml::Machine &m ) { return sample_sort( m, block_distribute( keys, m.nprocs() ) ); }, machine, setup );
			auto expected = keys;
			std::sort( expected.begin(), expected.end() );
			return finish< DistArray< std::uint32_t > >( std::move( res ), name, params, [ & ]( const auto &out ) {
				const double bound = 2.0 * static_cast< double >( n ) / static_cast< double >( out.width() ) +
					static_cast< double >( out.width() );
				for( const auto &block : out ) {
					if( static_cast< double >( block.size() ) > bound ) {
						return false;
					}
				}
				return concat( out ) == expected;
			} );
		}
		if( name == "hash" ) {
			std::mt19937_64 rng( params.seed ^ 0x6a09e667f3bcc909ULL );
			std::vector< std::pair< std::uint32_t, std::uint64_t > > pairs;
			pairs.reserve( n );
			for( std::size_t i = 0; i < n; ++i ) {
				pairs.emplace_back( keys[ i ], i );
			}
			std::vector< std::uint32_t > queries( n );
			for( auto &q : queries ) {
				q = ( n > 0 && rng() % 2 == 0 ) ? keys[ rng() % n ] : static_cast< std::uint32_t >( rng() );
			}
			auto res = run(
				[ & ]( bsml::Machine &m ) {
					const auto table = hash_build( m, block_distribute( pairs, m.nprocs() ), params.seed );
					return concat( hash_lookup( m, table, block_distribute( queries, m.nprocs() ) ) );
				},
				machine, setup );
			std::map< std::uint32_t, std::uint64_t > oracle;
			for( const auto &[ k, v ] : pairs ) {
				oracle[ k ] = v;
			}
			return finish< std::vector< std::optional< std::uint64_t > > >( std::move( res ), name, params,
				[ & ]( const auto &out ) {
					for( std::size_t i = 0; i < queries.size(); ++i ) {
						const auto it = oracle.find( queries[ i ] );
						if( out[ i ] != ( it == oracle.end() ? std::nullopt : std::optional< std::uint64_t >( it->second ) ) ) {
							return false;
						}
					}
					return true;
				} );
		}
		if( name == "nbody" ) {
			std::mt19937_64 rng( params.seed );
			std::uniform_real_distribution< double > unit( -1.0, 1.0 ), mass( 0.5, 1.5 );
			std::vector< Body > bodies( n );
			for( auto &b : bodies ) {
				b.pos = { unit( rng ), unit( rng ) };
				b.vel = { 0.1 * unit( rng ), 0.1 * unit( rng ) };
				b.mass = mass( rng );
			}
			const NBodyParams prm{};
			auto res = run(
				[ & ]( bsml::Machine &m ) { return concat( nbody_step( m, block_distribute( bodies, m.nprocs() ), prm ) ); },
				machine, setup );
			// the p = 1 run is the sequential reference
			RunSetup single;
			auto reference = run( [ & ]( bsml::Machine &m ) { return concat( nbody_step( m, DistArray< Body >{ bodies }, prm ) ); },
				make_machine( 1, 1, 0 ), single );
			return finish< std::vector< Body > >( std::move( res ), name, params,
				[ & ]( const auto &out ) { return reference.value && out == *reference.value; } );
		}
		// matvec
		std::vector< std::vector< std::int64_t > > rows( n, std::vector< std::int64_t >( n ) );
		std::vector< std::int64_t > x( n );
		for( std::size_t i = 0; i < n; ++i ) {
			x[ i ] = static_cast< std::int64_t >( keys[ i ] % 19 ) - 9;
			for( std::size_t j = 0; j < n; ++j ) {
				rows[ i ][ j ] = static_cast< std::int64_t >( ( keys[ i ] >> ( j % 24 ) ) % 7 ) - 3;
			}
		}
		std::vector< std::int64_t > expected( n, 0 );
		for( std::size_t i = 0; i < n; ++i ) {
			for( std::size_t j = 0; j < n; ++j ) {
				expected[ i ] += rows[ i ][ j ] * x[ j ];
			}
		}
		auto res = run(
			[ & ]( sgl::Machine &m ) { return sgl::matvec( m, block_distribute( rows, m.nprocs() ), x ); }, machine, setup );
		return finish< std::vector< std::int64_t > >( std::move( res ), name, params,
			[ & ]( const auto &out ) { return out == expected; } );
	}

} // namespace bsplab::algorithms
