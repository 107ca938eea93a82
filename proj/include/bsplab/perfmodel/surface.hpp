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

#ifndef BSPLAB_PERFMODEL_SURFACE_HPP
#define BSPLAB_PERFMODEL_SURFACE_HPP

#include <cstddef>
#include <iosfwd>
#include <optional>
#include <vector>

#include <bsplab/perfmodel/grid.hpp>

namespace bsplab::perfmodel {

	struct Cell {
		std::optional< double > value;
		bool interpolated = false;

		bool operator==( const Cell & ) const = default;
	};

	/**
	 * One metric of a grid laid out as a matrix, rows by ascending p and
	 * columns by ascending n. A missing cell that is not on the border is
	 * filled by bilinear interpolation between its four diagonal neighbours
	 * (p and n one step down and up) when all four are measured; it is
	 * then flagged. Other missing cells stay empty.
	 */
	struct Surface {
		Metric metric = Metric::cost;
		std::vector< std::size_t > p_values;
		std::vector< std::size_t > n_values;
		/// cells[i][j] for p_values[i], n_values[j]
		std::vector< std::vector< Cell > > cells;

		/** Fewer than two distinct p or n values: written as a curve. */
		bool is_curve() const { return p_values.size() < 2 || n_values.size() < 2; }
	};

	Surface make_surface( const SweepGrid &grid, Metric metric );

	/**
	 * Matrix CSV: header "p/n,<n values>", then one line per p starting with
	 * p. Empty cells are blank, interpolated cells end in '*'. A curve is
	 * written as "n,value" (or "p,value" when there is a single n).
	 * Environment records are written first as "# env" comment lines.
	 */
	void write_surface_csv( std::ostream &out, const Surface &surface, const SweepGrid &grid );

} // namespace bsplab::perfmodel

#endif
