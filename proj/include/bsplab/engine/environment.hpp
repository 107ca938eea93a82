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

#ifndef BSPLAB_ENGINE_ENVIRONMENT_HPP
#define BSPLAB_ENGINE_ENVIRONMENT_HPP

#include <map>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

namespace bsplab::engine {

	/** Library version string embedded in every emitted record. */
	inline constexpr const char *tool_version = "bsplab 1.0.0";

	/**
	 * Experiment setup attached to every measurement: software versions,
	 * hardware, cores available and used, threads and the measured
	 * quantity. Values are never empty; unknown entries read "unknown".
	 */
	class Environment {
		public:
			/** Fills tool_version, compiler, os, hardware, cores_available and timestamp. */
			static Environment detect();

			void set( const std::string &key, const std::string &value );
			const std::string &get( const std::string &key ) const;
			bool has( const std::string &key ) const { return m_fields.count( key ) != 0; }

			/** Applies "key=value" overrides; throws UsageError on malformed entries. */
			void apply_overrides( const std::vector< std::string > &overrides );

			/** Short stable identifier of the record, timestamp excluded. */
			std::string id() const;

			const std::map< std::string, std::string > &fields() const noexcept { return m_fields; }

			bool operator==( const Environment & ) const = default;

		private:
			std::map< std::string, std::string > m_fields;
	};

	void to_json( nlohmann::json &j, const Environment &env );
	void from_json( const nlohmann::json &j, Environment &env );

} // namespace bsplab::engine

#endif
