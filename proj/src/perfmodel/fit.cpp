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

#include <bsplab/perfmodel/fit.hpp>

#include <cmath>
#include <ostream>

#include <Eigen/Dense>

#include <bsplab/core/cost.hpp>
#include <bsplab/error.hpp>

namespace bsplab::perfmodel {

	namespace {

		Eigen::MatrixXd design( const std::vector< GridRow > &rows, const std::vector< BasisFn > &basis ) {
			Eigen::MatrixXd a( static_cast< Eigen::Index >( rows.size() ), static_cast< Eigen::Index >( basis.size() ) );
			for( std::size_t i = 0; i < rows.size(); ++i ) {
				for( std::size_t j = 0; j < basis.size(); ++j ) {
					const double v = basis[ j ]( static_cast< double >( rows[ i ].p ), static_cast< double >( rows[ i ].n ) );
					if( !std::isfinite( v ) ) {
						throw ValidationError( "fit: basis term '" + basis[ j ].name() + "' is not finite at p=" +
							std::to_string( rows[ i ].p ) + " n=" + std::to_string( rows[ i ].n ) );
					}
					a( static_cast< Eigen::Index >( i ), static_cast< Eigen::Index >( j ) ) = v;
				}
			}
			return a;
		}

		Eigen::Index rank_of( const Eigen::MatrixXd &a ) {
			return Eigen::CompleteOrthogonalDecomposition< Eigen::MatrixXd >( a ).rank();
		}

	} // namespace

	PerfModel fit( const std::vector< GridRow > &rows, const std::vector< BasisFn > &basis ) {
		if( basis.empty() ) {
			throw UsageError( "fit: empty basis" );
		}
		if( rows.size() < basis.size() ) {
			throw UsageError( "fit: " + std::to_string( rows.size() ) + " rows cannot determine " +
				std::to_string( basis.size() ) + " basis terms" );
		}
		const Eigen::MatrixXd a = design( rows, basis );
		Eigen::VectorXd y( a.rows() );
		for( std::size_t i = 0; i < rows.size(); ++i ) {
			y( static_cast< Eigen::Index >( i ) ) = rows[ i ].value;
		}

		// equilibrate columns so that terms like 1 and n^2 are on the same scale
		Eigen::VectorXd scale( a.cols() );
		for( Eigen::Index j = 0; j < a.cols(); ++j ) {
			const double s = a.col( j ).cwiseAbs().maxCoeff();
			scale( j ) = s > 0 ? s : 1.0;
		}
		const Eigen::MatrixXd scaled = a * scale.cwiseInverse().asDiagonal();
		Eigen::CompleteOrthogonalDecomposition< Eigen::MatrixXd > cod( scaled );

		PerfModel model;
		model.basis = basis;
		model.rows = rows.size();
		model.metric = rows.empty() ? "cost" : to_string( rows.front().metric );
		Eigen::VectorXd coef;
		if( cod.rank() == a.cols() ) {
			coef = cod.solve( y ).cwiseQuotient( scale );
		} else {
			model.rank_deficient = true;
			std::vector< Eigen::Index > kept;
			for( Eigen::Index j = 0; j < a.cols(); ++j ) {
				Eigen::MatrixXd trial( a.rows(), static_cast< Eigen::Index >( kept.size() ) + 1 );
				for( std::size_t c = 0; c < kept.size(); ++c ) {
					trial.col( static_cast< Eigen::Index >( c ) ) = scaled.col( kept[ c ] );
				}
				trial.col( trial.cols() - 1 ) = scaled.col( j );
				if( rank_of( trial ) > static_cast< Eigen::Index >( kept.size() ) ) {
					kept.push_back( j );
				} else {
					model.deficient.push_back( basis[ static_cast< std::size_t >( j ) ].name() );
				}
			}
			// minimum-norm solution in the original coefficients, unless the
			// unscaled matrix disagrees on the rank; then minimum norm in scaled ones
			Eigen::CompleteOrthogonalDecomposition< Eigen::MatrixXd > plain( a );
			coef = plain.rank() == cod.rank() ? Eigen::VectorXd( plain.solve( y ) ) :
												Eigen::VectorXd( cod.solve( y ).cwiseQuotient( scale ) );
		}
		model.coefficients.assign( coef.data(), coef.data() + coef.size() );
		model.stats = residual_stats( model, rows );
		return model;
	}

	double predict( const PerfModel &model, double p, double n ) {
		double out = 0;
		for( std::size_t i = 0; i < model.basis.size(); ++i ) {
			out += model.coefficients[ i ] * model.basis[ i ]( p, n );
		}
		return out;
	}

	namespace {

		ResidualStats stats_of( const std::vector< GridRow > &rows, const std::vector< double > &residual ) {
			ResidualStats out;
			if( rows.empty() ) {
				return out;
			}
			double mean = 0;
			for( const auto &r : rows ) {
				mean += r.value;
			}
			mean /= static_cast< double >( rows.size() );
			double ss_res = 0;
			double ss_tot = 0;
			for( std::size_t i = 0; i < rows.size(); ++i ) {
				out.max_abs = std::max( out.max_abs, std::abs( residual[ i ] ) );
				ss_res += residual[ i ] * residual[ i ];
				ss_tot += ( rows[ i ].value - mean ) * ( rows[ i ].value - mean );
			}
			out.rms = std::sqrt( ss_res / static_cast< double >( rows.size() ) );
			out.r2 = ss_tot == 0 ? 1.0 : 1.0 - ss_res / ss_tot;
			return out;
		}

		double residual_at( const PerfModel &model, const GridRow &r ) {
			return r.value - predict( model, static_cast< double >( r.p ), static_cast< double >( r.n ) );
		}

	} // namespace

	ResidualStats residual_stats( const PerfModel &model, const std::vector< GridRow > &rows ) {
		std::vector< double > residual;
		for( const auto &r : rows ) {
			residual.push_back( residual_at( model, r ) );
		}
		return stats_of( rows, residual );
	}

	ResidualStats crossval( const std::vector< GridRow > &rows, const std::vector< BasisFn > &basis, std::size_t k ) {
		if( k < 2 || k > rows.size() ) {
			throw UsageError( "crossval: need 2 <= k <= rows (k = " + std::to_string( k ) + ", rows = " +
				std::to_string( rows.size() ) + ")" );
		}
		std::vector< double > residual( rows.size() );
		for( std::size_t fold = 0; fold < k; ++fold ) {
			std::vector< GridRow > train;
			for( std::size_t i = 0; i < rows.size(); ++i ) {
				if( i % k != fold ) {
					train.push_back( rows[ i ] );
				}
			}
			const auto model = fit( train, basis );
			for( std::size_t i = fold; i < rows.size(); i += k ) {
				residual[ i ] = residual_at( model, rows[ i ] );
			}
		}
		return stats_of( rows, residual );
	}

	nlohmann::json to_json( const PerfModel &model ) {
		return nlohmann::json{
			{ "metric", model.metric },
			{ "rows", model.rows },
			{ "basis", names_of( model.basis ) },
			{ "coefficients", model.coefficients },
			{ "stats", { { "max_abs", model.stats.max_abs }, { "rms", model.stats.rms }, { "r2", model.stats.r2 } } },
			{ "rank_deficient", model.rank_deficient },
			{ "deficient", model.deficient },
		};
	}

	PerfModel model_from_json( const nlohmann::json &j ) {
		try {
			PerfModel model;
			model.metric = j.at( "metric" ).get< std::string >();
			model.rows = j.at( "rows" ).get< std::size_t >();
			for( const auto &name : j.at( "basis" ) ) {
				model.basis.push_back( BasisFn::parse( name.get< std::string >() ) );
			}
			model.coefficients = j.at( "coefficients" ).get< std::vector< double > >();
			if( model.coefficients.size() != model.basis.size() ) {
				throw ValidationError( "model: basis and coefficients differ in length" );
			}
			const auto &s = j.at( "stats" );
			model.stats = { s.at( "max_abs" ).get< double >(), s.at( "rms" ).get< double >(), s.at( "r2" ).get< double >() };
			model.rank_deficient = j.value( "rank_deficient", false );
			model.deficient = j.value( "deficient", std::vector< std::string >{} );
			return model;
		} catch( const nlohmann::json::exception &e ) {
			throw ValidationError( std::string( "model: " ) + e.what() );
		}
	}

	void write_residual_csv( std::ostream &out, const PerfModel &model, const std::vector< GridRow > &rows ) {
		out << "p,n,value,predicted,residual\n";
		for( const auto &r : rows ) {
			const double pred = predict( model, static_cast< double >( r.p ), static_cast< double >( r.n ) );
			out << r.p << ',' << r.n << ',' << format_real( r.value ) << ',' << format_real( pred ) << ','
				<< format_real( r.value - pred ) << '\n';
		}
	}

} // namespace bsplab::perfmodel
