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

#include <bsplab/perfmodel/surface.hpp>

#include <algorithm>
#include <ostream>
#include <set>

#include <bsplab/core/cost.hpp>

namespace bsplab::perfmodel {

	Surface make_surface( const SweepGrid &grid, Metric metric ) {
		Surface s;
		s.metric = metric;
		const auto rows = grid.rows_of( metric );
		std::set< std::size_t > ps, ns;
		for( const auto &r : rows ) {
			ps.insert( r.p );
			ns.insert( r.n );
		}
		s.p_values.assign( ps.begin(), ps.end() );
		s.n_values.assign( ns.begin(), ns.end() );
		s.cells.assign( s.p_values.size(), std::vector< Cell >( s.n_values.size() ) );
		auto index = []( const std::vector< std::size_t > &axis, std::size_t v ) {
			return static_cast< std::size_t >( std::lower_bound( axis.begin(), axis.end(), v ) - axis.begin() );
		};
		for( const auto &r : rows ) {
			s.cells[ index( s.p_values, r.p ) ][ index( s.n_values, r.n ) ].value = r.value;
		}
		if( s.is_curve() ) {
			return s;
		}
		// interpolate from measured cells only, never from filled ones
		const auto measured = s.cells;
		for( std::size_t i = 1; i + 1 < s.p_values.size(); ++i ) {
			for( std::size_t j = 1; j + 1 < s.n_values.size(); ++j ) {
				if( measured[ i ][ j ].value ) {
					continue;
				}
				const auto &f00 = measured[ i - 1 ][ j - 1 ].value;
				const auto &f01 = measured[ i - 1 ][ j + 1 ].value;
				const auto &f10 = measured[ i + 1 ][ j - 1 ].value;
				const auto &f11 = measured[ i + 1 ][ j + 1 ].value;
				if( !f00 || !f01 || !f10 || !f11 ) {
					continue;
				}
				const auto at = []( const std::vector< std::size_t > &axis, std::size_t k ) {
					return static_cast< double >( axis[ k ] );
				};
				const double ty = ( at( s.p_values, i ) - at( s.p_values, i - 1 ) ) /
					( at( s.p_values, i + 1 ) - at( s.p_values, i - 1 ) );
				const double tx = ( at( s.n_values, j ) - at( s.n_values, j - 1 ) ) /
					( at( s.n_values, j + 1 ) - at( s.n_values, j - 1 ) );
				s.cells[ i ][ j ].value = ( 1 - ty ) * ( ( 1 - tx ) * *f00 + tx * *f01 ) + ty * ( ( 1 - tx ) * *f10 + tx * *f11 );
				s.cells[ i ][ j ].interpolated = true;
			}
		}
		return s;
	}

	void write_surface_csv( std::ostream &out, const Surface &surface, const SweepGrid &grid ) {
		for( const auto &[ id, env ] : grid.environments ) {
			out << "# env " << id << ' ' << nlohmann::json( env ).dump() << '\n';
		}
		out << "# metric " << to_string( surface.metric ) << '\n';
		if( surface.is_curve() ) {
			const bool along_n = surface.p_values.size() < 2 && surface.n_values.size() >= 2;
			out << ( along_n ? "n" : "p" ) << ",value\n";
			for( std::size_t i = 0; i < surface.p_values.size(); ++i ) {
				for( std::size_t j = 0; j < surface.n_values.size(); ++j ) {
					const auto &cell = surface.cells[ i ][ j ];
					if( cell.value ) {
						out << ( along_n ? surface.n_values[ j ] : surface.p_values[ i ] ) << ',' << format_real( *cell.value )
							<< '\n';
					}
				}
			}
			return;
		}
		out << "p/n";
		for( auto n : surface.n_values ) {
			out << ',' << n;
		}
		out << '\n';
		for( std::size_t i = 0; i < surface.p_values.size(); ++i ) {
			out << surface.p_values[ i ];
			for( const auto &cell : surface.cells[ i ] ) {
				out << ',';
				if( cell.value ) {
					out << format_real( *cell.value ) << ( cell.interpolated ? "*" : "" );
				}
			}
			out << '\n';
		}
	}

} // namespace bsplab::perfmodel
