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

#ifndef BSPLAB_ALGORITHMS_COLLECTIVES_HPP
#define BSPLAB_ALGORITHMS_COLLECTIVES_HPP

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include <bsplab/bsml.hpp>
#include <bsplab/core/parvec.hpp>
#include <bsplab/core/tree_reduce.hpp>
#include <bsplab/core/words.hpp>
#include <bsplab/sgl/machine.hpp>

namespace bsplab::algorithms {

	/**
	 * One-to-many broadcast written with SGL scatter: the root sends a copy
	 * of `value` to every other pid in a single superstep, so
	 * h = (p - 1) * size(value).
	 */
	template< typename T, typename Sizer = DefaultSizer >
	ParVec< T > broadcast( const sgl::Machine &m, std::size_t root, const T &value, Sizer sizer = {} ) {
		return m.scatter( root, std::vector< T >( m.nprocs(), value ), sizer );
	}

	/**
	 * Every pid sends its value to every other pid. Result at pid d lists the
	 * values of all pids in pid order. h = (p - 1) * size(value) for equal
	 * sizes.
	 */
	template< typename T, typename Sizer = DefaultSizer >
	ParVec< std::vector< T > > total_exchange( const bsml::Machine &m, const ParVec< T > &pv, Sizer sizer = {} ) {
		const std::size_t p = m.nprocs();
		auto plan = m.mkpar(
			[ &pv, p ]( std::size_t s ) { return bsml::MsgRow< T >( p, pv[ s ] ); }, bsml::Work{ 0 } );
		auto received = m.put( plan, sizer );
		return m.mkpar(
			[ &received, &pv ]( std::size_t d ) {
				std::vector< T > out;
				out.reserve( received[ d ].size() );
				for( std::size_t s = 0; s < received[ d ].size(); ++s ) {
					out.push_back( s == d ? pv[ d ] : *received[ d ][ s ] );
				}
				return out;
			},
			bsml::Work{ 0 } );
	}

	/** Cyclic shift by `k`: pid s sends its value to pid (s + k) mod p. */
	template< typename T, typename Sizer = DefaultSizer >
	ParVec< T > ring_shift( const bsml::Machine &m, const ParVec< T > &pv, std::size_t k = 1, Sizer sizer = {} ) {
		const std::size_t p = m.nprocs();
		auto plan = m.mkpar(
			[ &pv, p, k ]( std::size_t s ) {
				bsml::MsgRow< T > row( p );
				row[ ( s + k ) % p ] = pv[ s ];
				return row;
			},
			bsml::Work{ 0 } );
		auto received = m.put( plan, sizer );
		return m.mkpar( [ &received, p, k ]( std::size_t d ) { return *received[ d ][ ( d + p - k % p ) % p ]; },
			bsml::Work{ 0 } );
	}

	/**
	 * Folds one value per pid. The values are replicated with proj and every
	 * pid folds them in the fixed tree order, so all pids agree bit for bit.
	 */
	template< typename T, typename Op >
	T reduce( const bsml::Machine &m, Op op, const ParVec< T > &pv ) {
		const auto all = m.proj( pv );
		for( std::size_t pid = 0; pid < m.nprocs(); ++pid ) {
			m.charge( pid, all.size() );
		}
		return tree_reduce( std::span< const T >( all ), op );
	}

	/** Folds a distributed array; nullopt when it holds no element. */
	template< typename T, typename Op >
	std::optional< T > reduce( const bsml::Machine &m, Op op, const DistArray< T > &d ) {
		auto partial = m.apply(
			m.mkpar(
				[ &op ]( std::size_t ) {
					return [ &op ]( const std::vector< T > &block ) -> std::optional< T > {
						engine::charge( block.size() );
						if( block.empty() ) {
							return std::nullopt;
						}
						return tree_reduce( std::span< const T >( block ), op );
					};
				},
				bsml::Work{ 0 } ),
			d, bsml::Work{ 0 } );
		std::vector< T > present;
		for( auto &x : m.proj( partial ) ) {
			if( x ) {
				present.push_back( std::move( *x ) );
			}
		}
		for( std::size_t pid = 0; pid < m.nprocs(); ++pid ) {
			m.charge( pid, present.size() );
		}
		if( present.empty() ) {
			return std::nullopt;
		}
		return tree_reduce( std::span< const T >( present ), op );
	}

	/**
	 * Inclusive prefix: result[i] = pv[0] op ... op pv[i], folded left to
	 * right. Pid s puts its value to every d > s; one superstep.
	 */
	template< typename T, typename Op >
	ParVec< T > scan( const bsml::Machine &m, Op op, const ParVec< T > &pv ) {
		const std::size_t p = m.nprocs();
		auto plan = m.mkpar(
			[ &pv, p ]( std::size_t s ) {
				bsml::MsgRow< T > row( p );
				for( std::size_t d = s + 1; d < p; ++d ) {
					row[ d ] = pv[ s ];
				}
				return row;
			},
			bsml::Work{ 0 } );
		auto received = m.put( plan );
		return m.mkpar(
			[ & ]( std::size_t d ) {
				engine::charge( d + 1 );
				if( d == 0 ) {
					return pv[ 0 ];
				}
				T acc = *received[ d ][ 0 ];
				for( std::size_t s = 1; s < d; ++s ) {
					acc = op( acc, *received[ d ][ s ] );
				}
				return op( acc, pv[ d ] );
			},
			bsml::Work{ 0 } );
	}

	/**
	 * Inclusive prefix over a distributed array in global order. Local
	 * scans, then the block totals are sent to every later pid, each pid
	 * folds the totals it received and combines the offset with its block.
	 */
	template< typename T, typename Op >
	DistArray< T > scan( const bsml::Machine &m, Op op, const DistArray< T > &d ) {
		const std::size_t p = m.nprocs();
		auto local = m.mkpar(
			[ & ]( std::size_t pid ) {
				engine::charge( d[ pid ].size() );
				std::vector< T > out;
				out.reserve( d[ pid ].size() );
				for( const auto &x : d[ pid ] ) {
					out.push_back( out.empty() ? x : op( out.back(), x ) );
				}
				return out;
			},
			bsml::Work{ 0 } );
		auto plan = m.mkpar(
			[ &local, p ]( std::size_t s ) {
				bsml::MsgRow< T > row( p );
				if( !local[ s ].empty() ) {
					for( std::size_t dst = s + 1; dst < p; ++dst ) {
						row[ dst ] = local[ s ].back();
					}
				}
				return row;
			},
			bsml::Work{ 0 } );
		auto received = m.put( plan );
		return m.mkpar(
			[ & ]( std::size_t pid ) {
				std::optional< T > offset;
				for( std::size_t s = 0; s < pid; ++s ) {
					if( received[ pid ][ s ] ) {
						offset = offset ? op( *offset, *received[ pid ][ s ] ) : *received[ pid ][ s ];
					}
				}
				engine::charge( pid + local[ pid ].size() );
				if( !offset ) {
					return local[ pid ];
				}
				std::vector< T > out;
				out.reserve( local[ pid ].size() );
				for( const auto &x : local[ pid ] ) {
					out.push_back( op( *offset, x ) );
				}
				return out;
			},
			bsml::Work{ 0 } );
	}

} // namespace bsplab::algorithms

#endif
