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

#ifndef BSPLAB_SGL_NESTED_HPP
#define BSPLAB_SGL_NESTED_HPP

#include <cstddef>
#include <vector>

#include <bsplab/core/cost.hpp>
#include <bsplab/core/machine.hpp>

namespace bsplab::sgl {

	/** Communication of one scatter or gather on a machine tree. */
	struct NestedComm {
		/// all words moved, by global (source, destination) pid, over every level
		CommMatrix comm;
		/// recursive cost decomposition
		NestedPhase phase;
	};

	/**
	 * Scatter from `root` where words[i] is the size of the chunk for global
	 * pid i. At a node, the source sends each other child's bundle to that
	 * child's root at the node's (g, l); then every child scatters
	 * internally, concurrently, from the pid now holding its bundle.
	 */
	NestedComm plan_scatter( const MachineTree &tree, std::size_t root, const std::vector< Words > &words );

	/**
	 * Mirror of plan_scatter: every child gathers internally to the pid
	 * that will forward its bundle, then the child roots send their bundles
	 * to `root` at the node's (g, l).
	 */
	NestedComm plan_gather( const MachineTree &tree, std::size_t root, const std::vector< Words > &words );

} // namespace bsplab::sgl

#endif
