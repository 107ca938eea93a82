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

#ifndef BSPLAB_CORE_WORDS_HPP
#define BSPLAB_CORE_WORDS_HPP

#include <cstdint>
#include <ranges>
#include <string>

namespace bsplab {

	/**
	 * Default message size in words: the element count of a sized range,
	 * 1 for anything else. Overload `word_count` for user types found by
	 * ADL, or pass an explicit sizer to the communicating primitives.
	 */
	template< typename T >
	std::uint64_t word_count( const T &value ) {
		if constexpr( std::ranges::sized_range< T > ) {
			return static_cast< std::uint64_t >( std::ranges::size( value ) );
		} else {
			(void) value;
			return 1;
		}
	}

	/** Function object forwarding to the (ADL-visible) word_count. */
	struct DefaultSizer {
		template< typename T >
		std::uint64_t operator()( const T &value ) const {
			return word_count( value );
		}
	};

} // namespace bsplab

#endif
