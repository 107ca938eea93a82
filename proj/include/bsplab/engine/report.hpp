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

#ifndef BSPLAB_ENGINE_REPORT_HPP
#define BSPLAB_ENGINE_REPORT_HPP

#include <cstddef>
#include <optional>
#include <string>

#include <nlohmann/json.hpp>

#include <bsplab/core/cost.hpp>
#include <bsplab/engine/context.hpp>
#include <bsplab/engine/environment.hpp>

namespace bsplab::engine {

	struct ErrorInfo {
		std::string kind;
		std::string message;
		std::optional< std::size_t > pid;
		std::optional< std::size_t > superstep;

		bool operator==( const ErrorInfo & ) const = default;
	};

	/**
	 * Outcome of one run. On failure `error` is set and `trace` holds the
	 * supersteps completed before the failure.
	 */
	struct RunReport {
		std::string program;
		Backend backend = Backend::simulate;
		nlohmann::json machine;
		std::string result_digest;
		nlohmann::json summary = nlohmann::json::object();
		CostTrace trace;
		Words peak_words_per_pid = 0;
		std::optional< double > wall_time_seconds;
		Environment environment;
		std::optional< ErrorInfo > error;

		bool ok() const noexcept { return !error.has_value(); }
	};

	nlohmann::json to_json( const RunReport &report );
	RunReport report_from_json( const nlohmann::json &j );

	/**
	 * Re-costs a recorded trace on machine `m`: the sum over supersteps of
	 * max(work)/r + g*h + l. Work and comm counts do not depend on the
	 * machine, so `m` may differ from the recording machine. Throws
	 * UsageError if a superstep carries no work counts.
	 */
	double estimate_runtime( const CostTrace &trace, const MachineConfig &m );

} // namespace bsplab::engine

#endif
