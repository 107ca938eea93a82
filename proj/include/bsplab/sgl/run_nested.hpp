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

#ifndef BSPLAB_SGL_RUN_NESTED_HPP
#define BSPLAB_SGL_RUN_NESTED_HPP

#include <type_traits>
#include <utility>

#include <bsplab/run.hpp>
#include <bsplab/sgl/script.hpp>

namespace bsplab::sgl {

	/**
	 * Runs an SGL program on a machine tree. Scatter and gather decompose
	 * level by level; the trace of every superstep carries the per-level
	 * cost tree.
	 */
	template< typename Program >
		requires( !std::is_same_v< std::remove_cvref_t< Program >, Script > )
	auto run_nested( const MachineTree &tree, Program &&program, RunSetup setup = {} ) {
		static_assert( bsplab::detail::is_sgl_program< Program >, "run_nested takes SGL programs only" );
		setup.lowering = Lowering::native;
		return run( std::forward< Program >( program ), tree, setup );
	}

	/** Script form; a put instruction fails the run with "put is absent in SGL". */
	inline RunResult< ScriptState > run_nested( const MachineTree &tree, const Script &script, RunSetup setup = {} ) {
		return run_nested(
			tree, [ &script ]( Machine &m ) { return run_script( m, script ); }, std::move( setup ) );
	}

} // namespace bsplab::sgl

#endif
