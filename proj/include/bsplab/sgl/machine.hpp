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

#ifndef BSPLAB_SGL_MACHINE_HPP
#define BSPLAB_SGL_MACHINE_HPP

#include <cstddef>
#include <memory>
#include <optional>
#include <type_traits>
#include <utility>
#include <vector>

#include <bsplab/bsml.hpp>
#include <bsplab/core/parvec.hpp>
#include <bsplab/core/words.hpp>
#include <bsplab/engine/context.hpp>
#include <bsplab/sgl/nested.hpp>

/**
 * Scatter-gather language: local maps plus one-to-many (scatter) and
 * many-to-one (gather) global operations. There is no put. Programs run
 * unchanged on flat machines and on nested machine trees.
 */
namespace bsplab::sgl {

	using bsml::Work;

	/** How scatter and gather are executed. */
	enum class Lowering {
		/// directly by the engine, on flat or nested machines
		native,
		/// compiled to bsml put plans from/to the root; flat machines only
		via_put
	};

	class Machine {
		public:
			Machine( std::shared_ptr< engine::Context > ctx, Lowering lowering = Lowering::native ) :
				m_ctx( std::move( ctx ) ), m_lowering( lowering )
			{
				if( m_lowering == Lowering::via_put ) {
					m_ctx->flat_config();
					m_bsml.emplace( m_ctx );
				}
			}

			std::size_t nprocs() const { return m_ctx->nprocs(); }
			engine::Context &context() const { return *m_ctx; }
			Lowering lowering() const noexcept { return m_lowering; }
			std::size_t sync_count() const { return m_ctx->sync_count(); }

			/**
			 * Distributes chunks held at `root`: result[i] = chunks[i]. The root
			 * sends chunk i to every i != root in one superstep.
			 */
			template< typename T, typename Sizer = DefaultSizer >
			ParVec< T > scatter( std::size_t root, std::vector< T > chunks, Sizer sizer = {} ) const {
				const std::size_t p = nprocs();
				if( chunks.size() != p ) {
					throw DimensionError( "scatter: got " + std::to_string( chunks.size() ) + " chunks for p = " +
						std::to_string( p ) );
				}
				check_root( root, "scatter" );
				if( m_lowering == Lowering::via_put ) {
					bsml::MsgPlan< T > plan{ std::vector< bsml::MsgRow< T > >( p ) };
					plan[ root ] = bsml::MsgRow< T >( p );
					for( std::size_t d = 0; d < p; ++d ) {
						if( d != root ) {
							plan[ root ][ d ] = chunks[ d ];
						}
					}
					auto received = m_bsml->put( plan, sizer );
					for( std::size_t d = 0; d < p; ++d ) {
						if( d != root ) {
							chunks[ d ] = std::move( *received[ d ][ root ] );
						}
					}
					return ParVec< T >( std::move( chunks ) );
				}
				std::vector< Words > words( p, 0 );
				for( std::size_t i = 0; i < p; ++i ) {
					words[ i ] = i == root ? 0 : sizer( chunks[ i ] );
				}
				if( m_ctx->is_flat() ) {
					CommMatrix comm( p );
					for( std::size_t i = 0; i < p; ++i ) {
						comm.at( root, i ) = words[ i ];
					}
					m_ctx->barrier( comm );
				} else {
					auto plan = plan_scatter( m_ctx->machine(), root, words );
					m_ctx->barrier_nested( plan.comm, std::move( plan.phase ) );
				}
				return ParVec< T >( std::move( chunks ) );
			}

			/** Collects [pv[0], ..., pv[p-1]] at `root` in one superstep. */
			template< typename T, typename Sizer = DefaultSizer >
			std::vector< T > gather( std::size_t root, const ParVec< T > &pv, Sizer sizer = {} ) const {
				const std::size_t p = nprocs();
				check_width( pv.width(), "gather" );
				check_root( root, "gather" );
				if( m_lowering == Lowering::via_put ) {
					std::vector< bsml::MsgRow< T > > rows( p, bsml::MsgRow< T >( p ) );
					for( std::size_t s = 0; s < p; ++s ) {
						if( s != root ) {
							rows[ s ][ root ] = pv[ s ];
						}
					}
					auto received = m_bsml->put( bsml::MsgPlan< T >( std::move( rows ) ), sizer );
					std::vector< T > out;
					out.reserve( p );
					for( std::size_t s = 0; s < p; ++s ) {
						out.push_back( s == root ? pv[ s ] : std::move( *received[ root ][ s ] ) );
					}
					return out;
				}
				std::vector< Words > words( p, 0 );
				for( std::size_t i = 0; i < p; ++i ) {
					words[ i ] = i == root ? 0 : sizer( pv[ i ] );
				}
				if( m_ctx->is_flat() ) {
					CommMatrix comm( p );
					for( std::size_t i = 0; i < p; ++i ) {
						comm.at( i, root ) = words[ i ];
					}
					m_ctx->barrier( comm );
				} else {
					auto plan = plan_gather( m_ctx->machine(), root, words );
					m_ctx->barrier_nested( plan.comm, std::move( plan.phase ) );
				}
				return pv.elems();
			}

			/**
			 * Pointwise local map without communication. f may take the value
			 * alone or (pid, value).
			 */
			template< typename F, typename T >
			auto lmap( F &&f, const ParVec< T > &pv, std::optional< Work > work = std::nullopt ) const {
				check_width( pv.width(), "lmap" );
				return local( pv.width(), work, [ & ]( std::size_t pid ) { return call( f, pid, pv[ pid ] ); } );
			}

			/** Pointwise local map over two vectors of equal width. */
			template< typename F, typename A, typename B >
			auto lmap2( F &&f, const ParVec< A > &a, const ParVec< B > &b,
				std::optional< Work > work = std::nullopt ) const
			{
				check_width( a.width(), "lmap2" );
				check_width( b.width(), "lmap2" );
				return local( a.width(), work, [ & ]( std::size_t pid ) { return f( a[ pid ], b[ pid ] ); } );
			}

			/** Adds host-side sequential work (e.g. at a root) to one pid. */
			void charge( std::size_t pid, WorkSteps steps ) const {
				m_ctx->require_active();
				m_ctx->charge( pid, steps );
			}

		private:
			template< typename F, typename T >
			static decltype( auto ) call( F &f, std::size_t pid, const T &x ) {
				if constexpr( std::is_invocable_v< F &, std::size_t, const T & > ) {
					return f( pid, x );
				} else {
					return f( x );
				}
			}

			template< typename G >
			auto local( std::size_t p, std::optional< Work > work, G &&g ) const {
				using R = std::decay_t< std::invoke_result_t< G &, std::size_t > >;
				const WorkSteps steps = work ? work->steps : m_ctx->options().default_work;
				std::vector< std::optional< R > > out( p );
				m_ctx->for_each_pid( [ & ]( std::size_t pid ) {
					out[ pid ].emplace( g( pid ) );
					m_ctx->charge( pid, steps );
				} );
				std::vector< R > vals;
				vals.reserve( p );
				for( auto &x : out ) {
					vals.push_back( std::move( *x ) );
				}
				return ParVec< R >( std::move( vals ) );
			}

			void check_width( std::size_t w, const char *what ) const {
				if( w != m_ctx->nprocs() ) {
					throw DimensionError( std::string( what ) + ": parallel vector has width " + std::to_string( w ) +
						", machine has p = " + std::to_string( m_ctx->nprocs() ) );
				}
			}

			void check_root( std::size_t root, const char *what ) const {
				if( root >= m_ctx->nprocs() ) {
					throw RoutingError( std::string( what ) + ": root " + std::to_string( root ) +
						" out of range for p = " + std::to_string( m_ctx->nprocs() ) );
				}
			}

			std::shared_ptr< engine::Context > m_ctx;
			Lowering m_lowering;
			std::optional< bsml::Machine > m_bsml;
	};

} // namespace bsplab::sgl

#endif
