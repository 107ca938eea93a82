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

#ifndef BSPLAB_BSML_HPP
#define BSPLAB_BSML_HPP

#include <cstddef>
#include <functional>
#include <memory>
#include <optional>
#include <type_traits>
#include <utility>
#include <vector>

#include <bsplab/core/parvec.hpp>
#include <bsplab/core/words.hpp>
#include <bsplab/engine/context.hpp>

/**
 * The four BSML primitives over parallel vectors:
 *  - nprocs, the load-time processor count;
 *  - mkpar and apply, which build and transform parallel vectors with
 *    purely local, asynchronous computation;
 *  - proj, which folds a parallel vector into a local array;
 *  - put, the p x p message exchange that ends a superstep.
 */
namespace bsplab::bsml {

	/** Work declared for every element evaluation of a call. */
	struct Work {
		WorkSteps steps = 1;
	};

	/** Row s of a plan: the optional message from pid s to each pid d. */
	template< typename T >
	using MsgRow = std::vector< std::optional< T > >;

	/**
	 * Dense p x p message plan. As input to put, element s holds what pid s
	 * sends to every d. As put's result, element d holds what pid d received
	 * from every s.
	 */
	template< typename T >
	using MsgPlan = ParVec< MsgRow< T > >;

	/** Processor count of the active run; throws UsageError when there is none. */
	std::size_t nprocs();

	class Machine {
		public:
			/** Throws UsageError for SGL contexts. */
			explicit Machine( std::shared_ptr< engine::Context > ctx ) : m_ctx( std::move( ctx ) ) {
				m_ctx->require_put();
			}

			std::size_t nprocs() const { return m_ctx->nprocs(); }

			engine::Context &context() const { return *m_ctx; }

			std::size_t sync_count() const { return m_ctx->sync_count(); }

			/** result[i] = f(i), evaluated once per pid in ascending order on the simulator. */
			template< typename F >
			auto mkpar( F &&f, std::optional< Work > work = std::nullopt ) const {
				using R = std::invoke_result_t< F &, std::size_t >;
				const std::size_t p = nprocs();
				const WorkSteps steps = work ? work->steps : m_ctx->options().default_work;
				std::vector< std::optional< R > > out( p );
				m_ctx->for_each_pid( [ & ]( std::size_t pid ) {
					out[ pid ].emplace( f( pid ) );
					m_ctx->charge( pid, steps );
				} );
				return unwrap( std::move( out ) );
			}

			/** result[i] = pf[i](pv[i]); work accrues to pid i. */
			template< typename F, typename T >
			auto apply( const ParVec< F > &pf, const ParVec< T > &pv, std::optional< Work > work = std::nullopt ) const {
				using R = std::invoke_result_t< const F &, const T & >;
				const std::size_t p = nprocs();
				check_width( pf.width(), "apply (functions)" );
				check_width( pv.width(), "apply (values)" );
				const WorkSteps steps = work ? work->steps : m_ctx->options().default_work;
				std::vector< std::optional< R > > out( p );
				m_ctx->for_each_pid( [ & ]( std::size_t pid ) {
					out[ pid ].emplace( std::invoke( pf[ pid ], pv[ pid ] ) );
					m_ctx->charge( pid, steps );
				} );
				return unwrap( std::move( out ) );
			}

			/**
			 * Folds pv into a local array. Accounted as every pid sending its
			 * value to every other pid, which ends the current superstep.
			 */
			template< typename T, typename Sizer = DefaultSizer >
			std::vector< T > proj( const ParVec< T > &pv, Sizer sizer = {} ) const {
				const std::size_t p = nprocs();
				check_width( pv.width(), "proj" );
				CommMatrix comm( p );
				for( std::size_t s = 0; s < p; ++s ) {
					const Words w = sizer( pv[ s ] );
					for( std::size_t d = 0; d < p; ++d ) {
						if( d != s ) {
							comm.at( s, d ) = w;
						}
					}
				}
				m_ctx->barrier( comm );
				return pv.elems();
			}

			/**
			 * Exchanges messages: result[d][s] = plan[s][d]. Ends the current
			 * superstep; the comm matrix holds the sized words of every present
			 * message, with self-deliveries recorded as 0 words. Rows may be
			 * shorter than p (missing entries are absent); a present message at
			 * index >= p is a RoutingError.
			 */
			template< typename T, typename Sizer = DefaultSizer >
			MsgPlan< T > put( const MsgPlan< T > &plan, Sizer sizer = {} ) const {
				m_ctx->require_put();
				const std::size_t p = nprocs();
				check_width( plan.width(), "put" );
				CommMatrix comm( p );
				for( std::size_t s = 0; s < p; ++s ) {
					const auto &row = plan[ s ];
					for( std::size_t d = 0; d < row.size(); ++d ) {
						if( !row[ d ] ) {
							continue;
						}
						if( d >= p ) {
							throw RoutingError( "put: pid " + std::to_string( s ) + " addresses pid " +
								std::to_string( d ) + " but p = " + std::to_string( p ) );
						}
						if( d != s ) {
							comm.at( s, d ) = sizer( *row[ d ] );
						}
					}
				}
				m_ctx->barrier( comm );
				std::vector< MsgRow< T > > received( p, MsgRow< T >( p ) );
				for( std::size_t s = 0; s < p; ++s ) {
					const auto &row = plan[ s ];
					for( std::size_t d = 0; d < row.size() && d < p; ++d ) {
						received[ d ][ s ] = row[ d ];
					}
				}
				return MsgPlan< T >( std::move( received ) );
			}

			/** Adds host-side sequential work to one pid's counter. */
			void charge( std::size_t pid, WorkSteps steps ) const {
				m_ctx->require_active();
				m_ctx->charge( pid, steps );
			}

		private:
			void check_width( std::size_t w, const char *what ) const {
				if( w != m_ctx->nprocs() ) {
					throw DimensionError( std::string( what ) + ": parallel vector has width " + std::to_string( w ) +
						", machine has p = " + std::to_string( m_ctx->nprocs() ) );
				}
			}

			template< typename R >
			static ParVec< R > unwrap( std::vector< std::optional< R > > &&xs ) {
				std::vector< R > out;
				out.reserve( xs.size() );
				for( auto &x : xs ) {
					out.push_back( std::move( *x ) );
				}
				return ParVec< R >( std::move( out ) );
			}

			std::shared_ptr< engine::Context > m_ctx;
	};

} // namespace bsplab::bsml

#endif
