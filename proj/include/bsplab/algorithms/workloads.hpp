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

#ifndef BSPLAB_ALGORITHMS_WORKLOADS_HPP
#define BSPLAB_ALGORITHMS_WORKLOADS_HPP

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include <bsplab/core/machine.hpp>
#include <bsplab/engine/report.hpp>
#include <bsplab/run.hpp>

/**
 * Named, self-generating runs of the algorithms, as used by the command
 * line, the sweeps and the check suites. Each workload draws its input
 * from (n, seed, distribution), runs, and compares its result with a
 * sequential oracle; the outcome lands in the report summary.
 */
namespace bsplab::algorithms {

	struct WorkloadParams {
		/// input size; its meaning per workload is listed by describe_workload
		std::size_t n = 1000;
		std::uint64_t seed = 1;
		/// uniform | sorted | reversed | equal | few
		std::string distribution = "uniform";
	};

	const std::vector< std::string > &workload_names();

	bool is_workload( const std::string &name );

	/** One line on what n means for the workload; UsageError if unknown. */
	std::string describe_workload( const std::string &name );

	/**
	 * Runs a workload. Throws UsageError for an unknown name or
	 * distribution; every other failure is recorded in the report. The
	 * summary holds algorithm, n, seed, distribution and "oracle"
	 * ("pass" or "fail", absent when the run failed).
	 */
	engine::RunReport run_workload( const std::string &name, const MachineTree &machine, const WorkloadParams &params,
		RunSetup setup = {} );

	/** Keys drawn for sorting-type workloads, exposed for tests. */
	std::vector< std::uint32_t > generate_keys( std::size_t n, std::uint64_t seed, const std::string &distribution );

} // namespace bsplab::algorithms

#endif
