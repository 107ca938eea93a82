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

#include <bsplab/engine/worker_pool.hpp>

namespace bsplab::engine {

	WorkerPool::WorkerPool( std::size_t workers ) :
		m_workers( workers ),
		m_start( static_cast< std::ptrdiff_t >( workers + 1 ) ),
		m_done( static_cast< std::ptrdiff_t >( workers + 1 ) )
	{
		m_threads.reserve( workers );
		for( std::size_t w = 0; w < workers; ++w ) {
			m_threads.emplace_back( [ this, w ] { loop( w ); } );
		}
	}

	WorkerPool::~WorkerPool() {
		m_stop = true;
		m_start.arrive_and_wait();
		for( auto &t : m_threads ) {
			t.join();
		}
	}

	void WorkerPool::run( std::size_t p, const std::function< void( std::size_t ) > &task ) {
		m_task = &task;
		m_p = p;
		// the start barrier publishes m_task/m_p; the done barrier publishes results
		m_start.arrive_and_wait();
		m_done.arrive_and_wait();
		m_task = nullptr;
	}

	void WorkerPool::loop( std::size_t worker ) {
		const std::size_t stride = m_workers;
		while( true ) {
			m_start.arrive_and_wait();
			if( m_stop ) {
				return;
			}
			for( std::size_t pid = worker; pid < m_p; pid += stride ) {
				( *m_task )( pid );
			}
			m_done.arrive_and_wait();
		}
	}

} // namespace bsplab::engine
