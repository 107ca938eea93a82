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

#ifndef BSPLAB_CHECKS_HPP
#define BSPLAB_CHECKS_HPP

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

/**
 * Property suites run by `bsplab check`. Each suite checks a family of
 * laws against brute-force or sequential oracles on generated inputs.
 */
namespace bsplab::checks {

	struct CheckOptions {
		/// largest p tried; suites use 1..max_p or the subset {1,2,4,8} up to it
		std::size_t max_p = 8;
		/// random cases per property and p
		std::size_t cases = 100;
		std::uint64_t seed = 1;
	};

	struct PropertyResult {
		std::string suite;
		std::string property;
		bool passed = false;
		std::string detail;
	};

	/** transpose, oracle, sgl-translate, sgl-expressiveness, nested, determinism, exact-counts, recost, model */
	const std::vector< std::string > &suite_names();

	/** Throws UsageError for an unknown suite name. */
	std::vector< PropertyResult > run_suite( const std::string &name, const CheckOptions &options = {} );

	/** One row per operation of the basic list/array API. */
	struct ApiEntry {
		std::string op;
		/// written with scatter, gather and lmap only
		bool sgl_only = false;
		/// agrees with the sequential oracle on every generated case
		bool passed = false;
		std::string note;
	};

	std::vector< ApiEntry > sgl_api_table( const CheckOptions &options = {} );

	/** Fraction of API entries that are SGL-only and pass. */
	double sgl_fraction( const std::vector< ApiEntry > &table );

} // namespace bsplab::checks

#endif
