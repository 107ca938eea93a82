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

#ifndef BSPLAB_RUN_HPP
#define BSPLAB_RUN_HPP

#include <chrono>
#include <memory>
#include <optional>
#include <string>
#include <type_traits>
#include <variant>
#include <vector>

#include <bsplab/bsml.hpp>
#include <bsplab/core/digest.hpp>
#include <bsplab/engine/report.hpp>
#include <bsplab/sgl/machine.hpp>

namespace bsplab {

	struct RunSetup {
		engine::RunOptions options{};
		std::string name = "program";
		/// key=value entries applied on top of the detected environment
		std::vector< std::string > env_overrides;
		/// only consulted for SGL programs
		sgl::Lowering lowering = sgl::Lowering::native;
	};

	template< typename R >
	struct RunResult {
		std::optional< R > value;
		engine::RunReport report;

		bool ok() const noexcept { return report.ok(); }
	};

	namespace detail {

		engine::ErrorInfo describe( const std::exception &e );

		engine::Environment make_environment( const MachineTree &machine, const RunSetup &setup );

		template< typename Program >
		constexpr bool is_bsml_program = std::is_invocable_v< Program &, bsml::Machine & >;

		template< typename Program >
		constexpr bool is_sgl_program = !is_bsml_program< Program > && std::is_invocable_v< Program &, sgl::Machine & >;

		template< typename Program, typename Handle >
		using result_of = std::conditional_t< std::is_void_v< std::invoke_result_t< Program &, Handle & > >,
			std::monostate, std::invoke_result_t< Program &, Handle & > >;

	} // namespace detail

	/**
	 * Executes a closed program, i.e. a callable taking either a
	 * bsml::Machine& or an sgl::Machine&, and returns its value together
	 * with the run report. Failures never escape: they are recorded in the
	 * report along with the partial trace.
	 */
	template< typename Program >
	auto run( Program &&program, const MachineTree &machine, const RunSetup &setup = {} ) {
		static_assert( detail::is_bsml_program< Program > || detail::is_sgl_program< Program >,
			"a program takes bsml::Machine& or sgl::Machine&" );
		using Handle = std::conditional_t< detail::is_bsml_program< Program >, bsml::Machine, sgl::Machine >;
		using R = detail::result_of< Program, Handle >;

		RunResult< R > out;
		auto &report = out.report;
		report.program = setup.name;
		report.backend = setup.options.backend;
		report.machine = to_json( machine );

		std::shared_ptr< engine::Context > ctx;
		try {
			report.environment = detail::make_environment( machine, setup );
			const bool sgl_native = detail::is_sgl_program< Program > && setup.lowering == sgl::Lowering::native;
			ctx = std::make_shared< engine::Context >( machine, setup.options,
				sgl_native ? engine::Dialect::sgl : engine::Dialect::bsml );
		} catch( const std::exception &e ) {
			report.error = detail::describe( e );
			return out;
		}

		const auto start = std::chrono::steady_clock::now();
		try {
			engine::ActiveScope active( ctx.get() );
			Handle handle = [ & ] {
				if constexpr( std::is_same_v< Handle, sgl::Machine > ) {
					return sgl::Machine( ctx, setup.lowering );
				} else {
					return bsml::Machine( ctx );
				}
			}();
			if constexpr( std::is_void_v< std::invoke_result_t< Program &, Handle & > > ) {
				program( handle );
				out.value.emplace();
			} else {
				out.value.emplace( program( handle ) );
			}
			ctx->finish();
		} catch( const std::exception &e ) {
			out.value.reset();
			report.error = detail::describe( e );
		}
		const auto stop = std::chrono::steady_clock::now();
		ctx->deactivate();

		report.trace = ctx->trace();
		report.peak_words_per_pid = ctx->peak_words();
		if( setup.options.backend == engine::Backend::parallel ) {
			report.wall_time_seconds = std::chrono::duration< double >( stop - start ).count();
		}
		if( out.value ) {
			report.result_digest = digest_of( *out.value );
		}
		return out;
	}

	template< typename Program >
	auto run( Program &&program, const MachineConfig &machine, const RunSetup &setup = {} ) {
		return run( std::forward< Program >( program ), MachineTree::leaf( machine ), setup );
	}

} // namespace bsplab

#endif
