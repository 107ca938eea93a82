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

#ifndef BSPLAB_CORE_PARVEC_HPP
#define BSPLAB_CORE_PARVEC_HPP

#include <cstddef>
#include <initializer_list>
#include <utility>
#include <vector>

#include <bsplab/error.hpp>

namespace bsplab {

	/**
	 * One value per processor, indexed by pid. The width is fixed at
	 * construction and must equal the p of the machine it is used with;
	 * primitives check this.
	 */
	template< typename T >
	class ParVec {
		public:
			using value_type = T;

			ParVec() = default;
			explicit ParVec( std::vector< T > elems ) : m_elems( std::move( elems ) ) {}
			ParVec( std::initializer_list< T > elems ) : m_elems( elems ) {}

			std::size_t width() const noexcept { return m_elems.size(); }

			const T &operator[]( std::size_t pid ) const { return m_elems[ pid ]; }
			T &operator[]( std::size_t pid ) { return m_elems[ pid ]; }

			const T &at( std::size_t pid ) const {
				if( pid >= m_elems.size() ) {
					throw RoutingError( "parvec: pid " + std::to_string( pid ) + " out of range" );
				}
				return m_elems[ pid ];
			}

			auto begin() const noexcept { return m_elems.begin(); }
			auto end() const noexcept { return m_elems.end(); }
			auto begin() noexcept { return m_elems.begin(); }
			auto end() noexcept { return m_elems.end(); }

			const std::vector< T > &elems() const & noexcept { return m_elems; }
			std::vector< T > elems() && noexcept { return std::move( m_elems ); }

			bool operator==( const ParVec & ) const = default;

		private:
			std::vector< T > m_elems;
	};

	/** A distributed sequence: one local block per pid, concatenated by pid. */
	template< typename T >
	using DistArray = ParVec< std::vector< T > >;

	template< typename T >
	std::vector< T > concat( const DistArray< T > &d ) {
		std::vector< T > out;
		for( const auto &block : d ) {
			out.insert( out.end(), block.begin(), block.end() );
		}
		return out;
	}

	/** Splits `xs` into p blocks whose sizes differ by at most one. */
	template< typename T >
	DistArray< T > block_distribute( const std::vector< T > &xs, std::size_t p ) {
		std::vector< std::vector< T > > blocks( p );
		const std::size_t base = xs.size() / p;
		const std::size_t extra = xs.size() % p;
		std::size_t pos = 0;
		for( std::size_t i = 0; i < p; ++i ) {
			const std::size_t len = base + ( i < extra ? 1 : 0 );
			blocks[ i ].assign( xs.begin() + static_cast< std::ptrdiff_t >( pos ),
				xs.begin() + static_cast< std::ptrdiff_t >( pos + len ) );
			pos += len;
		}
		return DistArray< T >( std::move( blocks ) );
	}

} // namespace bsplab

#endif
