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

#ifndef BSPLAB_ENGINE_CONTEXT_HPP
#define BSPLAB_ENGINE_CONTEXT_HPP

#include <cstddef>
#include <exception>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include <bsplab/core/cost.hpp>
#include <bsplab/core/machine.hpp>
#include <bsplab/engine/worker_pool.hpp>
#include <bsplab/error.hpp>

namespace bsplab::engine {

	enum class Backend { simulate, parallel };

	std::string to_string( Backend b );
	/** Throws UsageError for anything but "simulate" or "parallel". */
	Backend parse_backend( const std::string &name );

	/** Which primitive set a run exposes. SGL runs reject put. */
	enum class Dialect { bsml, sgl };

	struct RunOptions {
		Backend backend = Backend::simulate;
		/// largest p the parallel backend accepts
		std::size_t worker_cap = 1024;
		/// parallel worker threads; 0 means min(p, hardware threads)
		std::size_t threads = 0;
		/// work charged per element evaluation unless a call declares otherwise
		WorkSteps default_work = 1;
	};

	/**
	 * State of one program execution: the machine, the trace grown so far
	 * and the work counters of the superstep currently open. Exactly one
	 * superstep is open at any time; it is closed by a barrier.
	 */
	class Context {
		public:
			Context( MachineTree machine, RunOptions options, Dialect dialect );

			Context( const Context & ) = delete;
			Context &operator=( const Context & ) = delete;

			/** Throws UsageError once the run has finished. */
			std::size_t nprocs() const;

			const MachineTree &machine() const noexcept { return m_machine; }
			bool is_flat() const noexcept { return m_machine.is_leaf(); }
			/** Throws UsageError on a nested machine. */
			const MachineConfig &flat_config() const;

			Dialect dialect() const noexcept { return m_dialect; }
			Backend backend() const noexcept { return m_options.backend; }
			const RunOptions &options() const noexcept { return m_options; }

			bool active() const noexcept { return m_active; }
			void require_active() const;
			/** Throws UsageError("put is absent in SGL") in SGL runs. */
			void require_put() const;

			/**
			 * Evaluates f(pid) for every pid: sequentially in ascending pid
			 * order on the simulator, concurrently on the parallel backend. A
			 * throwing f is reported as ProgramError for the lowest failing pid.
			 */
			template< typename F >
			void for_each_pid( F &&f );

			void charge( std::size_t pid, WorkSteps steps );
			void note_resident( std::size_t pid, Words words );

			/** Closes the open superstep of a flat machine. */
			void barrier( const CommMatrix &comm );
			/** Closes the open superstep of a nested machine. */
			void barrier_nested( const CommMatrix &comm, NestedPhase phase );

			/** Closes a trailing superstep if it has work, then deactivates. */
			void finish();
			void deactivate() noexcept { m_active = false; }

			std::size_t sync_count() const noexcept { return m_records.size(); }
			std::size_t open_superstep() const noexcept { return m_records.size(); }
			const std::vector< SuperstepRecord > &records() const noexcept { return m_records; }
			CostTrace trace() const { return trace_totals( m_records ); }

			/** Largest per-pid resident or received word count seen so far. */
			Words peak_words() const;

		private:
			void run_on_pool( const std::function< void( std::size_t ) > &task );
			void close( const CommMatrix &comm, double cost, std::optional< NestedPhase > nested );
			double work_term() const;

			MachineTree m_machine;
			RunOptions m_options;
			Dialect m_dialect;
			std::size_t m_p;
			bool m_active = true;
			std::vector< WorkSteps > m_work;
			std::vector< Words > m_resident;
			std::vector< Words > m_peak;
			std::vector< SuperstepRecord > m_records;
			std::unique_ptr< WorkerPool > m_pool;
	};

	/**
	 * Per-thread record of which context and pid is executing, so that code
	 * inside an element function can charge work to its own pid.
	 */
	struct PidScope {
		PidScope( Context *ctx, std::size_t pid );
		~PidScope();
		PidScope( const PidScope & ) = delete;
		PidScope &operator=( const PidScope & ) = delete;

		static Context *current_context() noexcept;
		static std::optional< std::size_t > current_pid() noexcept;

		private:
			Context *m_prev_ctx;
			std::optional< std::size_t > m_prev_pid;
	};

	/** Marks `ctx` as the active context of the calling host thread. */
	struct ActiveScope {
		explicit ActiveScope( Context *ctx );
		~ActiveScope();
		ActiveScope( const ActiveScope & ) = delete;
		ActiveScope &operator=( const ActiveScope & ) = delete;

		private:
			Context *m_prev;
	};

	/** Active context of this thread, or nullptr. */
	Context *active_context() noexcept;

	template< typename F >
	void Context::for_each_pid( F &&f ) {
		require_active();
		if( PidScope::current_pid() ) {
			throw UsageError( "parallel primitives cannot be nested inside an element function" );
		}
		const std::size_t step = open_superstep();
		auto wrap = [ step ]( std::size_t pid, std::exception_ptr e ) -> ProgramError {
			try {
				std::rethrow_exception( e );
			} catch( const ProgramError &pe ) {
				return pe;
			} catch( const std::exception &ex ) {
				return ProgramError( pid, step, ex.what() );
			} catch( ... ) {
				return ProgramError( pid, step, "unknown exception" );
			}
		};
		if( m_options.backend == Backend::simulate || m_p == 1 ) {
			for( std::size_t pid = 0; pid < m_p; ++pid ) {
				try {
					PidScope scope( this, pid );
					f( pid );
				} catch( ... ) {
					throw wrap( pid, std::current_exception() );
				}
			}
			return;
		}
		std::vector< std::exception_ptr > errors( m_p );
		run_on_pool( [ & ]( std::size_t pid ) {
			try {
				PidScope scope( this, pid );
				f( pid );
			} catch( ... ) {
				errors[ pid ] = std::current_exception();
			}
		} );
		for( std::size_t pid = 0; pid < m_p; ++pid ) {
			if( errors[ pid ] ) {
				throw wrap( pid, errors[ pid ] );
			}
		}
	}

	/**
	 * Adds `steps` to the work counter of the pid evaluating the calling
	 * element function. Throws UsageError outside an element function.
	 */
	void charge( WorkSteps steps );

	/** Declares the words currently held by the calling pid. */
	void note_resident( Words words );

} // namespace bsplab::engine

#endif
