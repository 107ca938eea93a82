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

#ifndef BSPLAB_ERROR_HPP
#define BSPLAB_ERROR_HPP

#include <cstddef>
#include <stdexcept>
#include <string>

namespace bsplab {

	/** Base of every exception thrown by the library. */
	class Error : public std::runtime_error {
		public:
			using std::runtime_error::runtime_error;
	};

	/** Mismatched widths, non-square matrices, wrong chunk counts. */
	class DimensionError : public Error {
		public:
			using Error::Error;
	};

	/** A message or collective addressed a pid outside 0..p-1. */
	class RoutingError : public Error {
		public:
			using Error::Error;
	};

	/** API misuse: no active context, put inside SGL, missing work counts. */
	class UsageError : public Error {
		public:
			using Error::Error;
	};

	/** The parallel backend was asked for more pids than its worker cap. */
	class CapacityError : public Error {
		public:
			using Error::Error;
	};

	/** Rejected input values (non-finite bodies, bad machine parameters). */
	class ValidationError : public Error {
		public:
			using Error::Error;
	};

	/**
	 * A per-pid user function failed. Carries the failing pid and the index
	 * of the superstep that was open when it happened.
	 */
	class ProgramError : public Error {
		public:
			ProgramError( std::size_t pid, std::size_t superstep, const std::string &what ) :
				Error( "pid " + std::to_string( pid ) + ", superstep " + std::to_string( superstep ) + ": " + what ),
				m_pid( pid ), m_superstep( superstep ), m_cause( what )
			{}

			std::size_t pid() const noexcept { return m_pid; }
			std::size_t superstep() const noexcept { return m_superstep; }
			const std::string &cause() const noexcept { return m_cause; }

		private:
			std::size_t m_pid;
			std::size_t m_superstep;
			std::string m_cause;
	};

} // namespace bsplab

#endif
