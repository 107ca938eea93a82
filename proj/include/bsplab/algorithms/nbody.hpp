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

#ifndef BSPLAB_ALGORITHMS_NBODY_HPP
#define BSPLAB_ALGORITHMS_NBODY_HPP

#include <array>
#include <cmath>
#include <cstddef>
#include <vector>

#include <bsplab/bsml.hpp>
#include <bsplab/core/digest.hpp>
#include <bsplab/core/parvec.hpp>
#include <bsplab/error.hpp>

namespace bsplab::algorithms {

	struct Body {
		std::array< double, 2 > pos{};
		std::array< double, 2 > vel{};
		double mass = 1.0;

		bool operator==( const Body & ) const = default;
	};

	inline void digest_append( Digest &d, const Body &b ) {
		digest_append( d, b.pos[ 0 ] );
		digest_append( d, b.pos[ 1 ] );
		digest_append( d, b.vel[ 0 ] );
		digest_append( d, b.vel[ 1 ] );
		digest_append( d, b.mass );
	}

	/** Words moved per body: two 2-vectors and the mass. */
	inline constexpr Words body_words = 5;

	struct NBodyParams {
		double dt = 0.01;
		/// Plummer softening length
		double softening = 0.05;
		double gravity = 1.0;
	};

	inline void validate( const Body &b ) {
		for( double x : { b.pos[ 0 ], b.pos[ 1 ], b.vel[ 0 ], b.vel[ 1 ], b.mass } ) {
			if( !std::isfinite( x ) ) {
				throw ValidationError( "nbody: body has a non-finite component" );
			}
		}
		if( !( b.mass > 0 ) ) {
			throw ValidationError( "nbody: body mass must be > 0" );
		}
	}

	inline void validate( const NBodyParams &prm ) {
		if( !std::isfinite( prm.dt ) || !( prm.dt > 0 ) ) {
			throw ValidationError( "nbody: dt must be a finite value > 0" );
		}
		if( !std::isfinite( prm.softening ) || !( prm.softening > 0 ) ) {
			throw ValidationError( "nbody: softening must be a finite value > 0" );
		}
		if( !std::isfinite( prm.gravity ) ) {
			throw ValidationError( "nbody: gravity must be finite" );
		}
	}

	/**
	 * One drift-kick-drift leapfrog step of the softened all-pairs model.
	 * Positions are drifted by half a step locally, replicated with proj,
	 * and each pid sums the accelerations on its bodies over all bodies in
	 * global index order, which fixes the floating-point summation order.
	 */
	inline DistArray< Body > nbody_step( const bsml::Machine &m, const DistArray< Body > &bodies,
		const NBodyParams &prm )
	{
		validate( prm );
		for( const auto &block : bodies ) {
			for( const auto &b : block ) {
				validate( b );
			}
		}
		const double half = prm.dt / 2;
		const double eps2 = prm.softening * prm.softening;

		auto drifted = m.apply(
			m.mkpar(
				[ half ]( std::size_t ) {
					return [ half ]( const std::vector< Body > &block ) {
						std::vector< Body > out = block;
						for( auto &b : out ) {
							b.pos[ 0 ] = b.pos[ 0 ] + b.vel[ 0 ] * half;
							b.pos[ 1 ] = b.pos[ 1 ] + b.vel[ 1 ] * half;
						}
						engine::charge( out.size() );
						return out;
					};
				},
				bsml::Work{ 0 } ),
			bodies, bsml::Work{ 0 } );

		const auto blocks = m.proj( drifted, []( const std::vector< Body > &b ) { return body_words * b.size(); } );
		std::vector< Body > all;
		std::vector< std::size_t > offset;
		for( const auto &block : blocks ) {
			offset.push_back( all.size() );
			all.insert( all.end(), block.begin(), block.end() );
		}

		return m.mkpar(
			[ & ]( std::size_t pid ) {
				std::vector< Body > out = blocks[ pid ];
				for( std::size_t i = 0; i < out.size(); ++i ) {
					const std::size_t self = offset[ pid ] + i;
					double ax = 0;
					double ay = 0;
					for( std::size_t j = 0; j < all.size(); ++j ) {
						if( j == self ) {
							continue;
						}
						const double dx = all[ j ].pos[ 0 ] - all[ self ].pos[ 0 ];
						const double dy = all[ j ].pos[ 1 ] - all[ self ].pos[ 1 ];
						const double r2 = dx * dx + dy * dy + eps2;
						const double s = prm.gravity * all[ j ].mass / ( r2 * std::sqrt( r2 ) );
						ax = ax + s * dx;
						ay = ay + s * dy;
					}
					Body &b = out[ i ];
					b.vel[ 0 ] = b.vel[ 0 ] + ax * prm.dt;
					b.vel[ 1 ] = b.vel[ 1 ] + ay * prm.dt;
					b.pos[ 0 ] = b.pos[ 0 ] + b.vel[ 0 ] * half;
					b.pos[ 1 ] = b.pos[ 1 ] + b.vel[ 1 ] * half;
				}
				engine::charge( static_cast< WorkSteps >( out.size() ) * static_cast< WorkSteps >( all.size() ) );
				return out;
			},
			bsml::Work{ 0 } );
	}

} // namespace bsplab::algorithms

#endif
