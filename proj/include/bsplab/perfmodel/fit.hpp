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

#ifndef BSPLAB_PERFMODEL_FIT_HPP
#define BSPLAB_PERFMODEL_FIT_HPP

#include <cstddef>
#include <iosfwd>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include <bsplab/perfmodel/basis.hpp>
#include <bsplab/perfmodel/grid.hpp>

namespace bsplab::perfmodel {

	struct ResidualStats {
		double max_abs = 0;
		double rms = 0;
		/// 1 by convention when the data has zero variance
		double r2 = 1;

		bool operator==( const ResidualStats & ) const = default;
	};

	/** value ~ sum_i coefficients[i] * basis[i](p, n) */
	struct PerfModel {
		std::vector< BasisFn > basis;
		std::vector< double > coefficients;
		ResidualStats stats;
		std::string metric = "cost";
		std::size_t rows = 0;
		/// set when the design matrix is rank deficient; the coefficients are then the minimum-norm fit
		bool rank_deficient = false;
		/// basis terms that are linear combinations of earlier ones
		std::vector< std::string > deficient;

		bool operator==( const PerfModel & ) const = default;
	};

	/**
	 * Linear least squares over the basis-evaluated design matrix, solved
	 * with a complete orthogonal decomposition of the column-scaled matrix.
	 * Throws UsageError with fewer rows than basis terms and
	 * ValidationError if a basis term is not finite on some row.
	 */
	PerfModel fit( const std::vector< GridRow > &rows, const std::vector< BasisFn > &basis );

	double predict( const PerfModel &model, double p, double n );

	ResidualStats residual_stats( const PerfModel &model, const std::vector< GridRow > &rows );

	/**
	 * k-fold cross validation: row i goes to fold i mod k; every fold is
	 * predicted by a model fitted on the other folds. Returns the stats of
	 * the held-out residuals. Throws UsageError unless 2 <= k <= rows.
	 */
	ResidualStats crossval( const std::vector< GridRow > &rows, const std::vector< BasisFn > &basis, std::size_t k );

	nlohmann::json to_json( const PerfModel &model );
	PerfModel model_from_json( const nlohmann::json &j );

	/** CSV p,n,value,predicted,residual for every row. */
	void write_residual_csv( std::ostream &out, const PerfModel &model, const std::vector< GridRow > &rows );

} // namespace bsplab::perfmodel

#endif
