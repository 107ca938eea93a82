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

#ifndef BSPLAB_SGL_LIBRARY_HPP
#define BSPLAB_SGL_LIBRARY_HPP

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include <bsplab/core/parvec.hpp>
#include <bsplab/core/tree_reduce.hpp>
#include <bsplab/engine/context.hpp>
#include <bsplab/sgl/machine.hpp>

/**
 * Basic list/array operations written with scatter, gather and lmap only.
 * Sorting is not provided here: an efficient parallel sort needs the
 * all-to-all redistribution of put (see algorithms::sample_sort).
 */
namespace bsplab::sgl {

	namespace detail {

		/** Declares one work step per element of a local block. */
		template< typename T >
		void charge_block( const std::vector< T > &block ) {
			engine::charge( static_cast< WorkSteps >( block.size() ) );
		}

		template< typename T, typename Op >
		std::optional< T > fold_present( const std::vector< std::optional< T > > &parts, Op &op ) {
			std::vector< T > present;
			for( const auto &x : parts ) {
				if( x ) {
					present.push_back( *x );
				}
			}
			if( present.empty() ) {
				return std::nullopt;
			}
			return tree_reduce( std::span< const T >( present ), op );
		}

	} // namespace detail

	/** Elementwise map of a distributed array. */
	template< typename T, typename F >
	auto map( const Machine &m, F f, const DistArray< T > &d ) {
		using U = std::decay_t< std::invoke_result_t< F &, const T & > >;
		return m.lmap(
			[ &f ]( const std::vector< T > &block ) {
				std::vector< U > out;
				out.reserve( block.size() );
				for( const auto &x : block ) {
					out.push_back( f( x ) );
				}
				detail::charge_block( block );
				return out;
			},
			d, Work{ 0 } );
	}

	/**
	 * Folds every element with an associative op. Local blocks are folded
	 * in tree order, the partials are gathered at `root` and folded there in
	 * tree order. Empty input gives nullopt.
	 */
	template< typename T, typename Op >
	std::optional< T > reduce( const Machine &m, Op op, const DistArray< T > &d, std::size_t root = 0 ) {
		auto partial = m.lmap(
			[ &op ]( const std::vector< T > &block ) -> std::optional< T > {
				detail::charge_block( block );
				if( block.empty() ) {
					return std::nullopt;
				}
				return tree_reduce( std::span< const T >( block ), op );
			},
			d, Work{ 0 } );
		const auto parts = m.gather( root, partial );
		m.charge( root, parts.size() );
		return detail::fold_present( parts, op );
	}

	/**
	 * Inclusive prefix fold. Each pid scans its block, the block totals are
	 * gathered at `root`, which scatters back the fold of all preceding
	 * totals; each pid then combines that offset with its local scan.
	 */
	template< typename T, typename Op >
	DistArray< T > scan( const Machine &m, Op op, const DistArray< T > &d, std::size_t root = 0 ) {
		auto local = m.lmap(
			[ &op ]( const std::vector< T > &block ) {
				std::vector< T > out;
				out.reserve( block.size() );
				for( const auto &x : block ) {
					out.push_back( out.empty() ? x : op( out.back(), x ) );
				}
				detail::charge_block( block );
				return out;
			},
			d, Work{ 0 } );
		auto totals = m.lmap(
			[]( const std::vector< T > &block ) -> std::optional< T > {
				if( block.empty() ) {
					return std::nullopt;
				}
				return block.back();
			},
			local, Work{ 0 } );
		const auto gathered = m.gather( root, totals );
		std::vector< std::optional< T > > offsets( gathered.size() );
		std::optional< T > running;
		for( std::size_t i = 0; i < gathered.size(); ++i ) {
			offsets[ i ] = running;
			if( gathered[ i ] ) {
				running = running ? op( *running, *gathered[ i ] ) : *gathered[ i ];
			}
		}
		m.charge( root, gathered.size() );
		const auto offset = m.scatter( root, std::move( offsets ) );
		return m.lmap2(
			[ &op ]( const std::optional< T > &off, const std::vector< T > &block ) {
				if( !off ) {
					return block;
				}
				std::vector< T > out;
				out.reserve( block.size() );
				for( const auto &x : block ) {
					out.push_back( op( *off, x ) );
				}
				detail::charge_block( block );
				return out;
			},
			offset, local, Work{ 0 } );
	}

	/** Pairs two distributed arrays with identical block sizes. */
	template< typename A, typename B >
	DistArray< std::pair< A, B > > zip( const Machine &m, const DistArray< A > &a, const DistArray< B > &b ) {
		return m.lmap2(
			[]( const std::vector< A > &x, const std::vector< B > &y ) {
				if( x.size() != y.size() ) {
					throw DimensionError( "zip: local blocks differ in length" );
				}
				std::vector< std::pair< A, B > > out;
				out.reserve( x.size() );
				for( std::size_t i = 0; i < x.size(); ++i ) {
					out.emplace_back( x[ i ], y[ i ] );
				}
				detail::charge_block( x );
				return out;
			},
			a, b, Work{ 0 } );
	}

	/** Keeps the elements satisfying `pred`, preserving global order. */
	template< typename T, typename Pred >
	DistArray< T > filter( const Machine &m, Pred pred, const DistArray< T > &d ) {
		return m.lmap(
			[ &pred ]( const std::vector< T > &block ) {
				std::vector< T > out;
				for( const auto &x : block ) {
					if( pred( x ) ) {
						out.push_back( x );
					}
				}
				detail::charge_block( block );
				return out;
			},
			d, Work{ 0 } );
	}

	/**
	 * Counts elements per bin at `root`; bin_of maps an element to
	 * [0, bins). Elements mapping outside that range are ignored.
	 */
	template< typename T, typename BinOf >
	std::vector< std::uint64_t > histogram( const Machine &m, const DistArray< T > &d, std::size_t bins, BinOf bin_of,
		std::size_t root = 0 )
	{
		auto local = m.lmap(
			[ & ]( const std::vector< T > &block ) {
				std::vector< std::uint64_t > counts( bins, 0 );
				for( const auto &x : block ) {
					const std::size_t b = bin_of( x );
					if( b < bins ) {
						++counts[ b ];
					}
				}
				detail::charge_block( block );
				return counts;
			},
			d, Work{ 0 } );
		const auto parts = m.gather( root, local );
		std::vector< std::uint64_t > out( bins, 0 );
		for( const auto &counts : parts ) {
			for( std::size_t b = 0; b < bins; ++b ) {
				out[ b ] += counts[ b ];
			}
		}
		m.charge( root, parts.size() * bins );
		return out;
	}

	/** Dot product of two identically distributed arrays, result at `root`. */
	template< typename T >
	T dot( const Machine &m, const DistArray< T > &a, const DistArray< T > &b, std::size_t root = 0 ) {
		auto partial = m.lmap2(
			[]( const std::vector< T > &x, const std::vector< T > &y ) -> std::optional< T > {
				if( x.size() != y.size() ) {
					throw DimensionError( "dot: local blocks differ in length" );
				}
				detail::charge_block( x );
				if( x.empty() ) {
					return std::nullopt;
				}
				T acc = x[ 0 ] * y[ 0 ];
				for( std::size_t i = 1; i < x.size(); ++i ) {
					acc = acc + x[ i ] * y[ i ];
				}
				return acc;
			},
			a, b, Work{ 0 } );
		const auto parts = m.gather( root, partial );
		m.charge( root, parts.size() );
		auto add = []( const T &x, const T &y ) { return x + y; };
		return detail::fold_present( parts, add ).value_or( T{} );
	}

	/** Replicates `value` from `root` on every pid. */
	template< typename T >
	ParVec< T > broadcast( const Machine &m, std::size_t root, const T &value ) {
		return m.scatter( root, std::vector< T >( m.nprocs(), value ) );
	}

	/**
	 * y = A x with the rows of A distributed by pid and x held at `root`.
	 * x is broadcast, each pid multiplies its rows, the pieces of y are
	 * gathered at `root` in row order.
	 */
	template< typename T >
	std::vector< T > matvec( const Machine &m, const DistArray< std::vector< T > > &rows, const std::vector< T > &x,
		std::size_t root = 0 )
	{
		const auto xs = broadcast( m, root, x );
		auto local = m.lmap2(
			[]( const std::vector< T > &xv, const std::vector< std::vector< T > > &block ) {
				std::vector< T > y;
				y.reserve( block.size() );
				for( const auto &row : block ) {
					if( row.size() != xv.size() ) {
						throw DimensionError( "matvec: row length does not match x" );
					}
					T acc{};
					for( std::size_t j = 0; j < row.size(); ++j ) {
						acc = acc + row[ j ] * xv[ j ];
					}
					y.push_back( acc );
					engine::charge( static_cast< WorkSteps >( row.size() ) );
				}
				return y;
			},
			xs, rows, Work{ 0 } );
		std::vector< T > y;
		for( auto &piece : m.gather( root, local ) ) {
			y.insert( y.end(), piece.begin(), piece.end() );
		}
		return y;
	}

} // namespace bsplab::sgl

#endif
