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

#ifndef BSPLAB_ALGORITHMS_HASH_TABLE_HPP
#define BSPLAB_ALGORITHMS_HASH_TABLE_HPP

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <type_traits>
#include <utility>
#include <vector>

#include <bsplab/bsml.hpp>
#include <bsplab/core/parvec.hpp>

namespace bsplab::algorithms {

	inline std::uint64_t splitmix64( std::uint64_t x ) {
		x += 0x9e3779b97f4a7c15ULL;
		x = ( x ^ ( x >> 30 ) ) * 0xbf58476d1ce4e5b9ULL;
		x = ( x ^ ( x >> 27 ) ) * 0x94d049bb133111ebULL;
		return x ^ ( x >> 31 );
	}

	template< typename K >
		requires std::is_integral_v< K >
	std::uint64_t key_hash( const K &key, std::uint64_t seed ) {
		return splitmix64( static_cast< std::uint64_t >( key ) ^ splitmix64( seed ) );
	}

	inline std::uint64_t key_hash( const std::string &key, std::uint64_t seed ) {
		std::uint64_t h = 14695981039346656037ULL;
		for( unsigned char c : key ) {
			h = ( h ^ c ) * 1099511628211ULL;
		}
		return splitmix64( h ^ splitmix64( seed ) );
	}

	/** Key-value pairs bucketed by owner pid = hash(key) mod p. */
	template< typename K, typename V >
	struct DistHash {
		ParVec< std::map< K, V > > buckets;
		std::uint64_t seed = 0;

		std::size_t owner( const K &key ) const { return key_hash( key, seed ) % buckets.width(); }

		std::size_t max_load() const {
			std::size_t out = 0;
			for( const auto &b : buckets ) {
				out = std::max( out, b.size() );
			}
			return out;
		}
	};

	/**
	 * Routes every pair to its owner in one superstep. For duplicate keys
	 * the pair that comes last in global order wins.
	 */
	template< typename K, typename V >
	DistHash< K, V > hash_build( const bsml::Machine &m, const DistArray< std::pair< K, V > > &pairs,
		std::uint64_t seed )
	{
		using Batch = std::vector< std::pair< K, V > >;
		const std::size_t p = m.nprocs();
		auto plan = m.apply(
			m.mkpar(
				[ p, seed ]( std::size_t ) {
					return [ p, seed ]( const Batch &block ) {
						bsml::MsgRow< Batch > row( p );
						for( const auto &kv : block ) {
							auto &msg = row[ key_hash( kv.first, seed ) % p ];
							if( !msg ) {
								msg.emplace();
							}
							msg->push_back( kv );
						}
						engine::charge( block.size() );
						return row;
					};
				},
				bsml::Work{ 0 } ),
			pairs, bsml::Work{ 0 } );
		const auto received = m.put( plan, []( const Batch &b ) { return 2 * b.size(); } );
		auto buckets = m.mkpar(
			[ &received ]( std::size_t pid ) {
				std::map< K, V > table;
				WorkSteps n = 0;
				for( const auto &msg : received[ pid ] ) {
					if( msg ) {
						for( const auto &[ k, v ] : *msg ) {
							table.insert_or_assign( k, v );
						}
						n += msg->size();
					}
				}
				engine::charge( n );
				return table;
			},
			bsml::Work{ 0 } );
		return DistHash< K, V >{ std::move( buckets ), seed };
	}

	/**
	 * Looks up a batch of keys: queries travel to their owners and the
	 * answers travel back, two supersteps whatever the batch size. Missing
	 * keys give nullopt at the query's position.
	 */
	template< typename K, typename V >
	DistArray< std::optional< V > > hash_lookup( const bsml::Machine &m, const DistHash< K, V > &table,
		const DistArray< K > &queries )
	{
		using Keys = std::vector< K >;
		using Answers = std::vector< std::optional< V > >;
		const std::size_t p = m.nprocs();
		if( table.buckets.width() != p || queries.width() != p ) {
			throw DimensionError( "hash_lookup: table or query width differs from p = " + std::to_string( p ) );
		}
		auto ask = m.mkpar(
			[ & ]( std::size_t s ) {
				bsml::MsgRow< Keys > row( p );
				for( const auto &k : queries[ s ] ) {
					auto &msg = row[ table.owner( k ) ];
					if( !msg ) {
						msg.emplace();
					}
					msg->push_back( k );
				}
				return row;
			},
			bsml::Work{ 0 } );
		const auto asked = m.put( ask );
		auto answer = m.mkpar(
			[ & ]( std::size_t owner ) {
				bsml::MsgRow< Answers > row( p );
				WorkSteps n = 0;
				for( std::size_t s = 0; s < p; ++s ) {
					if( !asked[ owner ][ s ] ) {
						continue;
					}
					Answers out;
					for( const auto &k : *asked[ owner ][ s ] ) {
						const auto it = table.buckets[ owner ].find( k );
						out.push_back( it == table.buckets[ owner ].end() ? std::nullopt : std::optional< V >( it->second ) );
					}
					n += out.size();
					row[ s ] = std::move( out );
				}
				engine::charge( n );
				return row;
			},
			bsml::Work{ 0 } );
		const auto answered = m.put( answer );
		return m.mkpar(
			[ & ]( std::size_t s ) {
				// answers from each owner come back in query order
				std::vector< std::size_t > next( p, 0 );
				std::vector< std::optional< V > > out;
				out.reserve( queries[ s ].size() );
				for( const auto &k : queries[ s ] ) {
					const std::size_t o = table.owner( k );
					out.push_back( ( *answered[ s ][ o ] )[ next[ o ]++ ] );
				}
				engine::charge( out.size() );
				return out;
			},
			bsml::Work{ 0 } );
	}

} // namespace bsplab::algorithms

#endif
