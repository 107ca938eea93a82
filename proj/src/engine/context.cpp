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

#include <bsplab/engine/context.hpp>

#include <algorithm>
#include <thread>

namespace bsplab::engine {

	namespace {
		thread_local Context *t_pid_ctx = nullptr;
		thread_local std::optional< std::size_t > t_pid;
		thread_local Context *t_active = nullptr;
	} // namespace

	std::string to_string( Backend b ) {
		return b == Backend::simulate ? "simulate" : "parallel";
	}

	Backend parse_backend( const std::string &name ) {
		if( name == "simulate" ) {
			return Backend::simulate;
		}
		if( name == "parallel" ) {
			return Backend::parallel;
		}
		throw UsageError( "unknown backend '" + name + "' (expected simulate or parallel)" );
	}

	Context::Context( MachineTree machine, RunOptions options, Dialect dialect ) :
		m_machine( std::move( machine ) ), m_options( options ), m_dialect( dialect ),
		m_p( m_machine.total_p() ), m_work( m_p, 0 ), m_resident( m_p, 0 ), m_peak( m_p, 0 )
	{
		m_machine.validate();
		if( m_options.backend == Backend::parallel ) {
			if( m_p > m_options.worker_cap ) {
				throw CapacityError( "parallel backend: p = " + std::to_string( m_p ) + " exceeds the worker cap of " +
					std::to_string( m_options.worker_cap ) );
			}
			std::size_t threads = m_options.threads;
			if( threads == 0 ) {
				threads = std::max< std::size_t >( 1, std::thread::hardware_concurrency() );
			}
			threads = std::min( threads, m_p );
			if( m_p > 1 ) {
				m_pool = std::make_unique< WorkerPool >( threads );
			}
		}
	}

	std::size_t Context::nprocs() const {
		require_active();
		return m_p;
	}

	const MachineConfig &Context::flat_config() const {
		if( !is_flat() ) {
			throw UsageError( "this operation requires a flat machine, got a nested machine tree" );
		}
		return m_machine.config();
	}

	void Context::require_active() const {
		if( !m_active ) {
			throw UsageError( "no active run context" );
		}
	}

	void Context::require_put() const {
		require_active();
		if( m_dialect == Dialect::sgl ) {
			throw UsageError( "put is absent in SGL" );
		}
	}

	void Context::run_on_pool( const std::function< void( std::size_t ) > &task ) {
		m_pool->run( m_p, task );
	}

	void Context::charge( std::size_t pid, WorkSteps steps ) {
		m_work.at( pid ) += steps;
	}

	void Context::note_resident( std::size_t pid, Words words ) {
		m_resident.at( pid ) = words;
		m_peak[ pid ] = std::max( m_peak[ pid ], words );
	}

	double Context::work_term() const {
		double t = 0.0;
		for( std::size_t pid = 0; pid < m_p; ++pid ) {
			const double r = is_flat() ? m_machine.config().r : m_machine.rate_of( pid );
			t = std::max( t, static_cast< double >( m_work[ pid ] ) / r );
		}
		return t;
	}

	void Context::close( const CommMatrix &comm, double cost, std::optional< NestedPhase > nested ) {
		SuperstepRecord rec;
		rec.index = m_records.size();
		rec.work = m_work;
		rec.comm = comm;
		rec.h = h_relation( comm );
		rec.cost = cost;
		rec.nested = std::move( nested );
		for( std::size_t pid = 0; pid < m_p; ++pid ) {
			Words in = 0;
			for( std::size_t s = 0; s < m_p; ++s ) {
				in += comm.at( s, pid );
			}
			m_peak[ pid ] = std::max( { m_peak[ pid ], m_resident[ pid ], in } );
		}
		m_records.push_back( std::move( rec ) );
		std::fill( m_work.begin(), m_work.end(), 0 );
	}

	void Context::barrier( const CommMatrix &comm ) {
		require_active();
		if( comm.size() != m_p ) {
			throw DimensionError( "barrier: comm matrix does not match p" );
		}
		close( comm, superstep_cost( m_work, comm, flat_config() ), std::nullopt );
	}

	void Context::barrier_nested( const CommMatrix &comm, NestedPhase phase ) {
		require_active();
		if( comm.size() != m_p ) {
			throw DimensionError( "barrier: comm matrix does not match p" );
		}
		const double cost = work_term() + phase.total;
		close( comm, cost, std::move( phase ) );
	}

	void Context::finish() {
		if( !m_active ) {
			return;
		}
		if( std::any_of( m_work.begin(), m_work.end(), []( WorkSteps w ) { return w != 0; } ) ) {
			if( is_flat() ) {
				barrier( CommMatrix( m_p ) );
			} else {
				NestedPhase phase;
				phase.label = "final";
				phase.g = m_machine.g();
				phase.l = m_machine.l();
				phase.own_cost = m_machine.l();
				phase.total = phase.own_cost;
				barrier_nested( CommMatrix( m_p ), std::move( phase ) );
			}
		}
		m_active = false;
	}

	Words Context::peak_words() const {
		Words peak = 0;
		for( std::size_t pid = 0; pid < m_p; ++pid ) {
			peak = std::max( { peak, m_peak[ pid ], m_resident[ pid ] } );
		}
		return peak;
	}

	PidScope::PidScope( Context *ctx, std::size_t pid ) : m_prev_ctx( t_pid_ctx ), m_prev_pid( t_pid ) {
		t_pid_ctx = ctx;
		t_pid = pid;
	}

	PidScope::~PidScope() {
		t_pid_ctx = m_prev_ctx;
		t_pid = m_prev_pid;
	}

	Context *PidScope::current_context() noexcept { return t_pid_ctx; }
	std::optional< std::size_t > PidScope::current_pid() noexcept { return t_pid; }

	ActiveScope::ActiveScope( Context *ctx ) : m_prev( t_active ) { t_active = ctx; }
	ActiveScope::~ActiveScope() { t_active = m_prev; }

	Context *active_context() noexcept {
		if( t_pid_ctx != nullptr ) {
			return t_pid_ctx;
		}
		return t_active;
	}

	void charge( WorkSteps steps ) {
		if( t_pid_ctx == nullptr || !t_pid ) {
			throw UsageError( "charge() called outside an element function" );
		}
		t_pid_ctx->charge( *t_pid, steps );
	}

	void note_resident( Words words ) {
		if( t_pid_ctx == nullptr || !t_pid ) {
			throw UsageError( "note_resident() called outside an element function" );
		}
		t_pid_ctx->note_resident( *t_pid, words );
	}

} // namespace bsplab::engine
