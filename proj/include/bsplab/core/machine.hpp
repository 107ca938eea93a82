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

#ifndef BSPLAB_CORE_MACHINE_HPP
#define BSPLAB_CORE_MACHINE_HPP

#include <cstddef>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

namespace bsplab {

	/**
	 * BSP parameters of a flat machine.
	 *
	 * p is the processor count, g the time per communicated word, l the cost
	 * of one barrier and r the local compute rate in work-steps per
	 * time-unit. All times are abstract units.
	 */
	struct MachineConfig {
		std::size_t p = 1;
		double g = 1.0;
		double l = 100.0;
		double r = 1.0;

		/** Throws ValidationError unless p >= 1, g > 0, l >= 0, r > 0. */
		void validate() const;

		bool operator==( const MachineConfig & ) const = default;
	};

	MachineConfig make_machine( std::size_t p, double g = 1.0, double l = 100.0, double r = 1.0 );

	void to_json( nlohmann::json &j, const MachineConfig &m );
	void from_json( const nlohmann::json &j, MachineConfig &m );

	/**
	 * A machine that is either a flat leaf or a node whose children are
	 * themselves machines. Communication between the children of a node
	 * costs (g, l) of that node. Global pids are numbered leaf by leaf in
	 * child order.
	 */
	class MachineTree {
		public:
			/** A single flat machine. */
			static MachineTree leaf( MachineConfig config );

			/** A node over the given children; at least one child. */
			static MachineTree node( std::vector< MachineTree > children, double g, double l );

			bool is_leaf() const noexcept { return m_children.empty(); }

			/** Leaf parameters; only meaningful when is_leaf(). */
			const MachineConfig &config() const noexcept { return m_config; }

			const std::vector< MachineTree > &children() const noexcept { return m_children; }

			double g() const noexcept { return is_leaf() ? m_config.g : m_g; }
			double l() const noexcept { return is_leaf() ? m_config.l : m_l; }

			/** Total number of workers, i.e. the sum of leaf p. */
			std::size_t total_p() const noexcept { return m_total_p; }

			/** Compute rate of the leaf that owns global pid `pid`. */
			double rate_of( std::size_t pid ) const;

			/** Throws ValidationError on any invalid leaf or level parameter. */
			void validate() const;

			bool operator==( const MachineTree & ) const = default;

		private:
			MachineConfig m_config{};
			std::vector< MachineTree > m_children;
			double m_g = 0.0;
			double m_l = 0.0;
			std::size_t m_total_p = 1;
	};

	/**
	 * Parses {"p":4} style leaves (optional "g", "l", "r") and
	 * {"children":[...],"g":2,"l":20} style nodes.
	 */
	MachineTree parse_machine_tree( const nlohmann::json &j );

	nlohmann::json to_json( const MachineTree &tree );

} // namespace bsplab

#endif
