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

#ifndef BSPLAB_ENGINE_WORKER_POOL_HPP
#define BSPLAB_ENGINE_WORKER_POOL_HPP

#include <barrier>
#include <cstddef>
#include <functional>
#include <thread>
#include <vector>

namespace bsplab::engine {

	/**
	 * Fixed set of worker threads that evaluate one task per pid and then
	 * meet at a barrier. Pids are multiplexed round-robin when there are
	 * fewer workers than pids. Tasks must not throw.
	 */
	class WorkerPool {
		public:
			explicit WorkerPool( std::size_t workers );
			~WorkerPool();

			WorkerPool( const WorkerPool & ) = delete;
			WorkerPool &operator=( const WorkerPool & ) = delete;

			std::size_t size() const noexcept { return m_workers; }

			/** Runs task(pid) for every pid in [0, p); returns after all finished. */
			void run( std::size_t p, const std::function< void( std::size_t ) > &task );

		private:
			void loop( std::size_t worker );

			std::size_t m_workers;
			std::vector< std::thread > m_threads;
			std::barrier<> m_start;
			std::barrier<> m_done;
			const std::function< void( std::size_t ) > *m_task = nullptr;
			std::size_t m_p = 0;
			bool m_stop = false;
	};

} // namespace bsplab::engine

#endif
