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

#ifndef BSPLAB_PERFMODEL_GRID_HPP
#define BSPLAB_PERFMODEL_GRID_HPP

#include <cstddef>
#include <iosfwd>
#include <map>
#include <string>
#include <vector>

#include <bsplab/algorithms/workloads.hpp>
#include <bsplab/engine/environment.hpp>

namespace bsplab::perfmodel {

	enum class Metric { time, cost, memory };

	std::string to_string( Metric m );

	/** Throws UsageError for anything but time, cost or memory. */
	Metric parse_metric( const std::string &text );

	struct GridRow {
		std::size_t p = 1;
		std::size_t n = 0;
		Metric metric = Metric::cost;
		double value = 0;
		std::string env_id;

		bool operator==( const GridRow & ) const = default;
	};

	/**
	 * Measurements over (p, n). Every env_id referenced by a row has its
	 * environment record in `environments`.
	 */
	struct SweepGrid {
		std::vector< GridRow > rows;
		std::map< std::string, engine::Environment > environments;

		/** Throws ValidationError on a repeated (p, n, metric) or a negative or non-finite value. */
		void validate() const;

		std::vector< GridRow > rows_of( Metric m ) const;

		bool operator==( const SweepGrid & ) const = default;
	};

	/**
	 * CSV with columns p,n,metric,value,env_id. Environment records come
	 * first as comment lines "# env <id> <json>".
	 */
	void write_grid_csv( std::ostream &out, const SweepGrid &grid );

	/** Throws UsageError naming the offending line on malformed input. */
	SweepGrid read_grid_csv( std::istream &in );

	struct SweepSpec {
		std::string algorithm;
		std::vector< std::size_t > p_list;
		std::vector< std::size_t > n_list;
		engine::Backend backend = engine::Backend::simulate;
		std::size_t repetitions = 1;
		/// g, l and r of every cell; p is taken from p_list
		MachineConfig machine{};
		std::uint64_t seed = 1;
		std::string distribution = "uniform";
		std::vector< std::string > env_overrides;
		std::size_t worker_cap = 1024;
	};

	/**
	 * Runs the workload on every (p, n) cell. Simulate gives exact cost and
	 * memory rows (repetitions are not needed and recorded as such); the
	 * parallel backend gives time rows, the median of the repetitions.
	 * Throws UsageError on an unknown algorithm, empty lists or zero
	 * repetitions, and Error if a cell's run fails.
	 */
	SweepGrid sweep( const SweepSpec &spec );

} // namespace bsplab::perfmodel

#endif
