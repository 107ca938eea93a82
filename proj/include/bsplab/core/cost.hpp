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

#ifndef BSPLAB_CORE_COST_HPP
#define BSPLAB_CORE_COST_HPP

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include <bsplab/core/machine.hpp>

namespace bsplab {

	using Words = std::uint64_t;
	using WorkSteps = std::uint64_t;

	/**
	 * Words sent per (source, destination) pair in one superstep.
	 *
	 * Diagonal entries may be stored but never count towards the h-relation:
	 * a pid delivering to itself crosses no network.
	 */
	class CommMatrix {
		public:
			CommMatrix() = default;
			explicit CommMatrix( std::size_t p ) : m_p( p ), m_words( p * p, 0 ) {}

			/** Builds from nested rows; throws DimensionError if not square. */
			static CommMatrix from_rows( const std::vector< std::vector< Words > > &rows );

			std::size_t size() const noexcept { return m_p; }

			Words at( std::size_t src, std::size_t dst ) const { return m_words[ src * m_p + dst ]; }
			Words &at( std::size_t src, std::size_t dst ) { return m_words[ src * m_p + dst ]; }

			/** Off-diagonal words sent by `pid`. */
			Words sent( std::size_t pid ) const;
			/** Off-diagonal words received by `pid`. */
			Words received( std::size_t pid ) const;
			/** Sum of all entries, diagonal included. */
			Words total() const;

			CommMatrix transposed() const;
			CommMatrix &operator+=( const CommMatrix &other );

			std::vector< std::vector< Words > > rows() const;

			bool operator==( const CommMatrix & ) const = default;

		private:
			std::size_t m_p = 0;
			std::vector< Words > m_words;
	};

	/** max over pids of max(words sent, words received), self-sends excluded. */
	Words h_relation( const CommMatrix &comm );

	/** max(work)/r + g*h + l for one flat superstep. */
	double superstep_cost( const std::vector< WorkSteps > &work, const CommMatrix &comm, const MachineConfig &m );

	/**
	 * Cost of one communication phase inside a nested machine. A phase at a
	 * node is followed (scatter) or preceded (gather) by its children's
	 * phases, which run concurrently:
	 *   total = own_cost + max over children of child.total
	 */
	struct NestedPhase {
		std::string label;
		double g = 0.0;
		double l = 0.0;
		Words h = 0;
		double own_cost = 0.0;
		double total = 0.0;
		std::vector< NestedPhase > children;

		bool operator==( const NestedPhase & ) const = default;
	};

	struct SuperstepRecord {
		std::size_t index = 0;
		std::vector< WorkSteps > work;
		CommMatrix comm;
		Words h = 0;
		double cost = 0.0;
		/// Only set for supersteps executed on a nested machine.
		std::optional< NestedPhase > nested;

		WorkSteps max_work() const;

		bool operator==( const SuperstepRecord & ) const = default;
	};

	struct CostTrace {
		std::vector< SuperstepRecord > steps;
		double total_cost = 0.0;
		Words total_words = 0;
		std::size_t sync_count = 0;

		bool operator==( const CostTrace & ) const = default;
	};

	/** Aggregates records into a trace; throws DimensionError on mixed p. */
	CostTrace trace_totals( std::vector< SuperstepRecord > steps );

	/**
	 * Recomputes h and cost of every flat record and the totals of the trace
	 * against `m`. Returns a description of the first mismatch, if any.
	 * Nested records are checked for internal consistency of their phases.
	 */
	std::optional< std::string > verify_trace( const CostTrace &trace, const MachineConfig &m );

	nlohmann::json to_json( const NestedPhase &phase );
	NestedPhase nested_phase_from_json( const nlohmann::json &j );

	/** {"machine":..., "steps":[...], "totals":{...}} */
	nlohmann::json trace_to_json( const CostTrace &trace, const nlohmann::json &machine );
	CostTrace trace_from_json( const nlohmann::json &j );

	/** Header plus one row per superstep: index,max_work,h,words_total,cost */
	void write_trace_csv( std::ostream &out, const CostTrace &trace );

	/** Shortest round-trip decimal form of a double, locale independent. */
	std::string format_real( double v );

} // namespace bsplab

#endif
