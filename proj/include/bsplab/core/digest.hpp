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

#ifndef BSPLAB_CORE_DIGEST_HPP
#define BSPLAB_CORE_DIGEST_HPP

#include <bit>
#include <cstdint>
#include <cstdio>
#include <map>
#include <optional>
#include <string>
#include <tuple>
#include <type_traits>
#include <utility>
#include <variant>
#include <vector>

#include <bsplab/core/parvec.hpp>

namespace bsplab {

	/** 64-bit FNV-1a over a canonical byte encoding of values. */
	class Digest {
		public:
			void bytes( const void *data, std::size_t n ) {
				const auto *p = static_cast< const unsigned char * >( data );
				for( std::size_t i = 0; i < n; ++i ) {
					m_state ^= p[ i ];
					m_state *= 0x100000001b3ULL;
				}
			}

			void u64( std::uint64_t v ) {
				for( int i = 0; i < 8; ++i ) {
					const unsigned char b = static_cast< unsigned char >( v >> ( 8 * i ) );
					bytes( &b, 1 );
				}
			}

			std::uint64_t value() const noexcept { return m_state; }

			std::string hex() const {
				char buf[ 17 ];
				std::snprintf( buf, sizeof( buf ), "%016llx", static_cast< unsigned long long >( m_state ) );
				return buf;
			}

		private:
			std::uint64_t m_state = 0xcbf29ce484222325ULL;
	};

	inline void digest_append( Digest &d, std::monostate ) { d.u64( 0 ); }

	template< typename T >
	requires std::is_integral_v< T > || std::is_enum_v< T >
	void digest_append( Digest &d, T v ) {
		d.u64( static_cast< std::uint64_t >( v ) );
	}

	inline void digest_append( Digest &d, double v ) { d.u64( std::bit_cast< std::uint64_t >( v ) ); }
	inline void digest_append( Digest &d, float v ) { d.u64( std::bit_cast< std::uint32_t >( v ) ); }

	inline void digest_append( Digest &d, const std::string &s ) {
		d.u64( s.size() );
		d.bytes( s.data(), s.size() );
	}

	template< typename T >
	void digest_append( Digest &d, const std::vector< T > &xs );
	template< typename T >
	void digest_append( Digest &d, const std::optional< T > &x );
	template< typename A, typename B >
	void digest_append( Digest &d, const std::pair< A, B > &x );
	template< typename... Ts >
	void digest_append( Digest &d, const std::tuple< Ts... > &x );
	template< typename K, typename V >
	void digest_append( Digest &d, const std::map< K, V > &m );
	template< typename T >
	void digest_append( Digest &d, const ParVec< T > &pv );

	template< typename T >
	void digest_append( Digest &d, const std::vector< T > &xs ) {
		d.u64( xs.size() );
		for( const auto &x : xs ) {
			digest_append( d, x );
		}
	}

	template< typename T >
	void digest_append( Digest &d, const std::optional< T > &x ) {
		d.u64( x.has_value() ? 1 : 0 );
		if( x ) {
			digest_append( d, *x );
		}
	}

	template< typename A, typename B >
	void digest_append( Digest &d, const std::pair< A, B > &x ) {
		digest_append( d, x.first );
		digest_append( d, x.second );
	}

	template< typename... Ts >
	void digest_append( Digest &d, const std::tuple< Ts... > &x ) {
		std::apply( [ &d ]( const auto &...e ) { ( digest_append( d, e ), ... ); }, x );
	}

	template< typename K, typename V >
	void digest_append( Digest &d, const std::map< K, V > &m ) {
		d.u64( m.size() );
		for( const auto &kv : m ) {
			digest_append( d, kv );
		}
	}

	template< typename T >
	void digest_append( Digest &d, const ParVec< T > &pv ) {
		digest_append( d, pv.elems() );
	}

	template< typename T >
	std::string digest_of( const T &value ) {
		Digest d;
		digest_append( d, value );
		return d.hex();
	}

} // namespace bsplab

#endif
