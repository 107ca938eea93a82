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

#include <bsplab/run.hpp>

#include <algorithm>
#include <thread>

namespace bsplab {

	std::size_t bsml::nprocs() {
		engine::Context *ctx = engine::active_context();
		if( ctx == nullptr ) {
			throw UsageError( "nprocs: no active run context" );
		}
		return ctx->nprocs();
	}

	namespace detail {

		engine::ErrorInfo describe( const std::exception &e ) {
			engine::ErrorInfo info;
			info.message = e.what();
			if( const auto *pe = dynamic_cast< const ProgramError * >( &e ) ) {
				info.kind = "program";
				info.pid = pe->pid();
				info.superstep = pe->superstep();
			} else if( dynamic_cast< const DimensionError * >( &e ) ) {
				info.kind = "dimension";
			} else if( dynamic_cast< const RoutingError * >( &e ) ) {
				info.kind = "routing";
			} else if( dynamic_cast< const UsageError * >( &e ) ) {
				info.kind = "usage";
			} else if( dynamic_cast< const CapacityError * >( &e ) ) {
				info.kind = "capacity";
			} else if( dynamic_cast< const ValidationError * >( &e ) ) {
				info.kind = "validation";
			} else {
				info.kind = "error";
			}
			return info;
		}

		engine::Environment make_environment( const MachineTree &machine, const RunSetup &setup ) {
			auto env = engine::Environment::detect();
			const std::size_t p = machine.total_p();
			env.set( "backend", engine::to_string( setup.options.backend ) );
			env.set( "cores_used", std::to_string( p ) );
			if( setup.options.backend == engine::Backend::parallel ) {
				std::size_t threads = setup.options.threads;
				if( threads == 0 ) {
					threads = std::max< std::size_t >( 1, std::thread::hardware_concurrency() );
				}
				env.set( "threads_used", std::to_string( p > 1 ? std::min( threads, p ) : 1 ) );
				env.set( "measured_quantity", "wall-clock time (s) and model cost (time-units)" );
			} else {
				env.set( "threads_used", "1" );
				env.set( "measured_quantity", "model cost (time-units)" );
			}
			env.apply_overrides( setup.env_overrides );
			return env;
		}

	} // namespace detail

} // namespace bsplab
