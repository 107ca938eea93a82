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

#ifndef BSPLAB_CORE_TREE_REDUCE_HPP
#define BSPLAB_CORE_TREE_REDUCE_HPP

#include <cstddef>
#include <span>

#include <bsplab/error.hpp>

namespace bsplab {

	/**
	 * Folds a non-empty range in a fixed left-balanced binary tree order:
	 * the left half holds ceil(n/2) elements. Every backend uses this order
	 * so floating-point reductions are reproducible bit for bit.
	 */
	template< typename T, typename Op >
	T tree_reduce( std::span< const T > xs, Op &&op ) {
		if( xs.empty() ) {
			throw UsageError( "tree_reduce: empty input has no identity" );
		}
		if( xs.size() == 1 ) {
			return xs[ 0 ];
		}
		const std::size_t mid = ( xs.size() + 1 ) / 2;
		T left = tree_reduce( xs.first( mid ), op );
		T right = tree_reduce( xs.subspan( mid ), op );
		return op( left, right );
	}

} // namespace bsplab

#endif
