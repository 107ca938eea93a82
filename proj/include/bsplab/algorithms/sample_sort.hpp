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

#ifndef BSPLAB_ALGORITHMS_SAMPLE_SORT_HPP
#define BSPLAB_ALGORITHMS_SAMPLE_SORT_HPP

#include <algorithm>
#include <bit>
#include <cstddef>
#include <tuple>
#include <vector>

#include <bsplab/bsml.hpp>
#include <bsplab/core/parvec.hpp>

namespace bsplab::algorithms {

	namespace detail {

		inline WorkSteps sort_work( std::size_t n ) {
			return static_cast< WorkSteps >( n ) * static_cast< WorkSteps >( std::bit_width( n ) );
		}

		/** p evenly spaced elements of a sorted block, or all of it when shorter. */
		template< typename T >
		std::vector< T > regular_samples( const std::vector< T > &sorted, std::size_t p ) {
			if( sorted.size() <= p ) {
				return sorted;
			}
			std::vector< T > out;
			out.reserve( p );
			for( std::size_t i = 0; i < p; ++i ) {
				out.push_back( sorted[ i * sorted.size() / p ] );
			}
			return out;
		}

		/** p - 1 splitters from the sorted sample set. */
		template< typename T >
		std::vector< T > pick_splitters( const std::vector< T > &samples, std::size_t p ) {
			std::vector< T > out;
			const std::size_t k = samples.size();
			if( k == 0 ) {
				return out;
			}
			const std::size_t offset = k / p / 2;
			for( std::size_t j = 1; j < p; ++j ) {
				out.push_back( samples[ std::min( k - 1, j * k / p + offset ) ] );
			}
			return out;
		}

	} // namespace detail

	/**
	 * Parallel sort by regular sampling. Keys are tagged with their origin
	 * (pid, index), so that all tagged keys are distinct and equal keys are
	 * spread deterministically.
	 *
	 * Supersteps: samples to `root`, splitters from `root`, all-to-all
	 * redistribution; the final local merge is work of the following
	 * superstep. With evenly distributed input every pid ends up with at
	 * most 2n/p + p keys.
	 */
	template< typename K >
	DistArray< K > sample_sort( const bsml::Machine &m, const DistArray< K > &d, std::size_t root = 0 ) {
		using Tagged = std::tuple< K, std::size_t, std::size_t >;
		using Block = std::vector< Tagged >;
		const std::size_t p = m.nprocs();
		if( d.width() != p ) {
			throw DimensionError( "sample_sort: input width " + std::to_string( d.width() ) + " differs from p = " +
				std::to_string( p ) );
		}
		if( root >= p ) {
			throw RoutingError( "sample_sort: root " + std::to_string( root ) + " out of range" );
		}

		auto sorted = m.mkpar(
			[ &d ]( std::size_t pid ) {
				Block out;
				out.reserve( d[ pid ].size() );
				for( std::size_t i = 0; i < d[ pid ].size(); ++i ) {
					out.emplace_back( d[ pid ][ i ], pid, i );
				}
				std::sort( out.begin(), out.end() );
				engine::charge( detail::sort_work( out.size() ) );
				return out;
			},
			bsml::Work{ 0 } );

		auto sample_plan = m.mkpar(
			[ &sorted, p, root ]( std::size_t s ) {
				bsml::MsgRow< Block > row( p );
				row[ root ] = detail::regular_samples( sorted[ s ], p );
				return row;
			},
			bsml::Work{ 0 } );
		const auto samples = m.put( sample_plan );

		auto splitter_plan = m.mkpar(
			[ &samples, p, root ]( std::size_t s ) {
				bsml::MsgRow< Block > row( p );
				if( s != root ) {
					return row;
				}
				Block all;
				for( const auto &msg : samples[ root ] ) {
					all.insert( all.end(), msg->begin(), msg->end() );
				}
				std::sort( all.begin(), all.end() );
				engine::charge( detail::sort_work( all.size() ) );
				const auto splitters = detail::pick_splitters( all, p );
				for( std::size_t dst = 0; dst < p; ++dst ) {
					row[ dst ] = splitters;
				}
				return row;
			},
			bsml::Work{ 0 } );
		const auto splitters = m.put( splitter_plan );

		auto part_plan = m.mkpar(
			[ &sorted, &splitters, p, root ]( std::size_t s ) {
				const Block &sp = *splitters[ s ][ root ];
				bsml::MsgRow< Block > row( p, Block{} );
				for( const auto &x : sorted[ s ] ) {
					const auto bucket = static_cast< std::size_t >( std::lower_bound( sp.begin(), sp.end(), x ) - sp.begin() );
					row[ bucket ]->push_back( x );
				}
				engine::charge( static_cast< WorkSteps >( sorted[ s ].size() ) *
					static_cast< WorkSteps >( std::bit_width( p ) ) );
				return row;
			},
			bsml::Work{ 0 } );
		const auto parts = m.put( part_plan );

		return m.mkpar(
			[ &parts ]( std::size_t pid ) {
				Block all;
				for( const auto &msg : parts[ pid ] ) {
					const auto mid = all.size();
					all.insert( all.end(), msg->begin(), msg->end() );
					std::inplace_merge( all.begin(), all.begin() + static_cast< std::ptrdiff_t >( mid ), all.end() );
				}
				engine::charge( static_cast< WorkSteps >( all.size() ) *
					static_cast< WorkSteps >( std::bit_width( parts[ pid ].size() ) ) );
				std::vector< K > keys;
				keys.reserve( all.size() );
				for( auto &x : all ) {
					keys.push_back( std::move( std::get< 0 >( x ) ) );
				}
				return keys;
			},
			bsml::Work{ 0 } );
	}

} // namespace bsplab::algorithms

#endif
