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

#include <doctest.h>

#include <bsplab/error.hpp>
#include <bsplab/perfmodel/fit.hpp>
#include <bsplab/perfmodel/surface.hpp>

#include <algorithm>
#include <cmath>
#include <random>
#include <sstream>

using namespace bsplab;
using namespace bsplab::perfmodel;

namespace {

	const std::size_t grid_p[] = { 1, 2, 3, 4, 6, 8 };
	const std::size_t grid_n[] = { 1, 2, 4, 8, 16, 32, 64 };

	template< typename F >
	std::vector< GridRow > synthetic( F f, Metric metric = Metric::time ) {
		std::vector< GridRow > rows;
		for( auto p : grid_p ) {
			for( auto n : grid_n ) {
				rows.push_back( { p, n, metric, f( static_cast< double >( p ), static_cast< double >( n ) ), "x" } );
			}
		}
		return rows;
	}

} // namespace

TEST_CASE( "basis expressions" ) {
	CHECK( BasisFn::parse( "1" )( 3, 5 ) == 1 );
	CHECK( BasisFn::parse( "n * ( p - 1 )" )( 4, 10 ) == 30 );
	CHECK( BasisFn::parse( "n*(p-1)" ).name() == "n*(p-1)" );
	CHECK( BasisFn::parse( "n/p" )( 4, 10 ) == 2.5 );
	CHECK( BasisFn::parse( "n^2" )( 4, 10 ) == 100 );
	CHECK( BasisFn::parse( "-n+2*p^3" )( 2, 1 ) == 15 );
	CHECK( BasisFn::parse( "n*p/2-0.5" )( 3, 3 ) == 4 );
	CHECK( names_of( default_basis() ) == std::vector< std::string >{ "1", "n", "p", "n*p", "n/p", "n^2" } );
	CHECK( names_of( parse_basis( "1, n*(p-1)" ) ) == std::vector< std::string >{ "1", "n*(p-1)" } );
	for( const char *bad : { "", "n*", "(n", "q", "n^x", "n^-1", "n)", "2 3", "inf" } ) {
		CHECK_THROWS_AS( BasisFn::parse( bad ), UsageError );
	}
	CHECK_THROWS_AS( parse_basis( "n,1,n" ), UsageError );
	CHECK_THROWS_AS( parse_basis( "n,,p" ), UsageError );
}

TEST_CASE( "fit recovers a model in the span of the basis" ) {
	const auto rows = synthetic( []( double p, double n ) { return 2 + 3 * n + 5 * n / p; } );
	const auto model = fit( rows, parse_basis( "1,n,n/p" ) );
	REQUIRE( model.coefficients.size() == 3 );
	CHECK( model.coefficients[ 0 ] == doctest::Approx( 2 ).epsilon( 1e-6 ) );
	CHECK( model.coefficients[ 1 ] == doctest::Approx( 3 ).epsilon( 1e-6 ) );
	CHECK( model.coefficients[ 2 ] == doctest::Approx( 5 ).epsilon( 1e-6 ) );
	CHECK( model.stats.max_abs <= 1e-9 );
	CHECK( model.stats.r2 == doctest::Approx( 1.0 ) );
	CHECK_FALSE( model.rank_deficient );
	CHECK( predict( model, 10, 100 ) == doctest::Approx( 352 ).epsilon( 1e-12 ) );
	CHECK( predict( model, 4, 8 ) == doctest::Approx( rows[ 3 * 7 + 3 ].value ).epsilon( 1e-12 ) );
	CHECK( model.metric == "time" );
}

TEST_CASE( "constant grid" ) {
	const auto model = fit( synthetic( []( double, double ) { return 7.25; } ), parse_basis( "1" ) );
	CHECK( model.coefficients[ 0 ] == doctest::Approx( 7.25 ).epsilon( 1e-15 ) );
	CHECK( model.stats.r2 == 1.0 );
}

TEST_CASE( "random coefficients over the default basis are recovered" ) {
	std::mt19937_64 rng( 8 );
	std::uniform_real_distribution< double > coef( -10, 10 );
	const auto basis = default_basis();
	double worst_rel = 0, worst_rms = 0;
	for( int trial = 0; trial < 200; ++trial ) {
		std::vector< double > c( basis.size() );
		for( auto &x : c ) {
			x = coef( rng );
		}
		auto rows = synthetic( [ & ]( double p, double n ) {
			double v = 0;
			for( std::size_t i = 0; i < basis.size(); ++i ) {
				v += c[ i ] * basis[ i ]( p, n );
			}
			return v;
		} );
		// fitting works on signed data; only grids emitted by sweeps are non-negative
		const auto model = fit( rows, basis );
		for( std::size_t i = 0; i < c.size(); ++i ) {
			worst_rel = std::max( worst_rel, std::abs( model.coefficients[ i ] - c[ i ] ) / std::abs( c[ i ] ) );
		}
		worst_rms = std::max( worst_rms, model.stats.rms );

		// predict after fit does not depend on row order
		std::shuffle( rows.begin(), rows.end(), rng );
		const auto again = fit( rows, basis );
		for( auto p : grid_p ) {
			CHECK( predict( again, static_cast< double >( p ), 5 ) ==
				doctest::Approx( predict( model, static_cast< double >( p ), 5 ) ).epsilon( 1e-9 ) );
		}
	}
	CHECK( worst_rel <= 1e-6 );
	CHECK( worst_rms <= 1e-9 );
}

TEST_CASE( "rank-deficient design" ) {
	const auto rows = synthetic( []( double, double n ) { return 3 * n; } );
	const auto model = fit( rows, parse_basis( "n,2*n" ) );
	CHECK( model.rank_deficient );
	CHECK( model.deficient == std::vector< std::string >{ "2*n" } );
	// minimum norm: c1 + 2 c2 = 3 closest to the origin
	CHECK( model.coefficients[ 0 ] == doctest::Approx( 0.6 ) );
	CHECK( model.coefficients[ 1 ] == doctest::Approx( 1.2 ) );
	CHECK( model.stats.rms <= 1e-9 );

	std::vector< GridRow > single_p;
	for( auto n : grid_n ) {
		single_p.push_back( { 4, n, Metric::cost, 1.0 + static_cast< double >( n ), "x" } );
	}
	const auto p_model = fit( single_p, parse_basis( "1,n,p" ) );
	CHECK( p_model.rank_deficient );
	CHECK( p_model.deficient == std::vector< std::string >{ "p" } );
	CHECK( p_model.stats.rms <= 1e-9 );
}

TEST_CASE( "fit preconditions" ) {
	auto rows = synthetic( []( double, double n ) { return n; } );
	rows.resize( 2 );
	CHECK_THROWS_AS( fit( rows, parse_basis( "1,n,p" ) ), UsageError );
	CHECK_THROWS_AS( fit( rows, {} ), UsageError );
	std::vector< GridRow > zero_n{ { 1, 0, Metric::cost, 1, "" }, { 2, 1, Metric::cost, 1, "" } };
	CHECK_THROWS_AS( fit( zero_n, parse_basis( "p/n" ) ), ValidationError );
}

TEST_CASE( "adding a basis term never increases the fitting RMS" ) {
	std::mt19937_64 rng( 3 );
	std::normal_distribution< double > noise( 0, 5 );
	const auto full = default_basis();
	for( int trial = 0; trial < 50; ++trial ) {
		const auto rows = synthetic( [ & ]( double p, double n ) { return 100 + 4 * n + 30 * n / p + noise( rng ); } );
		double previous = INFINITY;
		for( std::size_t k = 1; k <= full.size(); ++k ) {
			const auto model = fit( rows, std::vector< BasisFn >( full.begin(), full.begin() + static_cast< long >( k ) ) );
			CHECK( model.stats.rms <= previous * ( 1 + 1e-12 ) );
			previous = model.stats.rms;
		}
		const auto cv = crossval( rows, parse_basis( "1,n,n/p" ), 5 );
		CHECK( cv.rms >= fit( rows, parse_basis( "1,n,n/p" ) ).stats.rms );
	}
	const auto rows = synthetic( []( double, double n ) { return n; } );
	CHECK_THROWS_AS( crossval( rows, parse_basis( "n" ), 1 ), UsageError );
	CHECK_THROWS_AS( crossval( rows, parse_basis( "n" ), rows.size() + 1 ), UsageError );
	CHECK( crossval( rows, parse_basis( "n" ), 3 ).rms <= 1e-12 );
}

TEST_CASE( "model JSON round-trip" ) {
	const auto model = fit( synthetic( []( double p, double n ) { return 1.5 + n / p; } ), parse_basis( "1,n/p,n*(p-1)" ) );
	const auto back = model_from_json( nlohmann::json::parse( to_json( model ).dump() ) );
	CHECK( back == model );
	CHECK_THROWS_AS( model_from_json( nlohmann::json{ { "metric", "cost" } } ), ValidationError );

	std::ostringstream residuals;
	write_residual_csv( residuals, model, { { 2, 4, Metric::cost, 3.5, "" } } );
	CHECK( residuals.str().rfind( "p,n,value,predicted,residual\n2,4,3.5,", 0 ) == 0 );
}

TEST_CASE( "grid CSV round-trip and errors" ) {
	SweepGrid grid;
	auto env = engine::Environment::detect();
	env.set( "note", "comma, inside" );
	grid.environments[ env.id() ] = env;
	grid.rows = { { 2, 10, Metric::cost, 0.1 + 0.2, env.id() }, { 2, 10, Metric::memory, 12, env.id() },
		{ 4, 10, Metric::time, 1e-7, env.id() } };
	std::ostringstream out;
	write_grid_csv( out, grid );
	std::istringstream in( out.str() );
	const auto back = read_grid_csv( in );
	CHECK( back == grid );
	std::ostringstream again;
	write_grid_csv( again, back );
	CHECK( again.str() == out.str() );

	auto fails_at = []( const std::string &text, const std::string &line ) {
		std::istringstream s( text );
		try {
			read_grid_csv( s );
		} catch( const UsageError &e ) {
			return std::string( e.what() ).rfind( line, 0 ) == 0;
		}
		return false;
	};
	CHECK( fails_at( "p,n,metric,value,env_id\n1,2,cost,3,x\n1,2,cost,x,x\n", "line 3:" ) );
	CHECK( fails_at( "p,n,metric,value,env_id\n1,2,speed,3,x\n", "line 2:" ) );
	CHECK( fails_at( "# hello\nq,n\n", "line 2:" ) );
	CHECK( fails_at( "p,n,metric,value,env_id\n1,2,cost,3\n", "line 2:" ) );
	CHECK( fails_at( "p,n,metric,value,env_id\n1,2,cost,-3,x\n", "line 2:" ) );
	CHECK( fails_at( "p,n,metric,value,env_id\n1,2,cost,3,x\n1,2,cost,4,x\n", "line 3:" ) );
	CHECK( fails_at( "", "line 0:" ) );
}

TEST_CASE( "simulated broadcast sweep matches the closed form and fits (l, g)" ) {
	SweepSpec spec;
	spec.algorithm = "broadcast";
	spec.p_list = { 2, 4, 8 };
	spec.n_list = { 1, 10, 100 };
	spec.machine = make_machine( 1, 2.5, 75 );
	const auto grid = sweep( spec );
	const auto cost = grid.rows_of( Metric::cost );
	REQUIRE( cost.size() == 9 );
	for( const auto &r : cost ) {
		CHECK( r.value == 2.5 * static_cast< double >( ( r.p - 1 ) * r.n ) + 75 );
		CHECK( grid.environments.count( r.env_id ) == 1 );
	}
	CHECK( grid.rows_of( Metric::memory ).size() == 9 );
	const auto model = fit( cost, parse_basis( "1,n*(p-1)" ) );
	CHECK( std::abs( model.coefficients[ 0 ] - 75 ) <= 1e-9 );
	CHECK( std::abs( model.coefficients[ 1 ] - 2.5 ) <= 1e-9 );

	// simulate sweeps are deterministic up to the environment timestamp
	const auto again = sweep( spec );
	CHECK( again.rows == grid.rows );

	spec.algorithm = "nope";
	CHECK_THROWS_AS( sweep( spec ), UsageError );
	spec.algorithm = "broadcast";
	spec.repetitions = 0;
	CHECK_THROWS_AS( sweep( spec ), UsageError );
}

TEST_CASE( "parallel sweep reports median wall time" ) {
	SweepSpec spec;
	spec.algorithm = "samplesort";
	spec.p_list = { 1, 2 };
	spec.n_list = { 1000 };
	spec.backend = engine::Backend::parallel;
	spec.repetitions = 3;
	const auto grid = sweep( spec );
	REQUIRE( grid.rows.size() == 2 );
	for( const auto &r : grid.rows ) {
		CHECK( r.metric == Metric::time );
		CHECK( r.value > 0 );
		CHECK( grid.environments.at( r.env_id ).get( "repetitions" ) == "3 (median)" );
	}
}

TEST_CASE( "surface layout and interpolation" ) {
	SweepGrid grid;
	const std::size_t ps[] = { 1, 2, 4 };
	const std::size_t ns[] = { 10, 20, 50 };
	for( auto p : ps ) {
		for( auto n : ns ) {
			grid.rows.push_back( { p, n, Metric::cost, static_cast< double >( p * 100 + n ), "e" } );
		}
	}
	const auto full = make_surface( grid, Metric::cost );
	CHECK_FALSE( full.is_curve() );
	for( const auto &row : full.cells ) {
		for( const auto &c : row ) {
			CHECK( c.value );
			CHECK_FALSE( c.interpolated );
		}
	}
	std::ostringstream csv;
	write_surface_csv( csv, full, grid );
	CHECK( csv.str() == "# metric cost\np/n,10,20,50\n1,110,120,150\n2,210,220,250\n4,410,420,450\n" );

	// remove the interior cell (p=2, n=20) and a border cell
	auto holes = grid;
	holes.rows.erase( std::remove_if( holes.rows.begin(), holes.rows.end(),
						  []( const GridRow &r ) { return ( r.p == 2 && r.n == 20 ) || ( r.p == 4 && r.n == 50 ); } ),
		holes.rows.end() );
	// corners still present except (4, 50), so no fill
	CHECK_FALSE( make_surface( holes, Metric::cost ).cells[ 1 ][ 1 ].value );
	holes.rows.push_back( { 4, 50, Metric::cost, 1000, "e" } );
	const auto filled = make_surface( holes, Metric::cost );
	// bilinear by hand: ty = (2-1)/(4-1), tx = (20-10)/(50-10)
	const double ty = 1.0 / 3.0, tx = 0.25;
	const double expected = ( 1 - ty ) * ( ( 1 - tx ) * 110 + tx * 150 ) + ty * ( ( 1 - tx ) * 410 + tx * 1000 );
	REQUIRE( filled.cells[ 1 ][ 1 ].value );
	CHECK( *filled.cells[ 1 ][ 1 ].value == doctest::Approx( expected ).epsilon( 1e-15 ) );
	CHECK( filled.cells[ 1 ][ 1 ].interpolated );
	std::ostringstream flagged;
	write_surface_csv( flagged, filled, holes );
	CHECK( flagged.str().find( "*" ) != std::string::npos );

	SweepGrid line;
	for( auto n : ns ) {
		line.rows.push_back( { 4, n, Metric::cost, static_cast< double >( n ), "e" } );
	}
	const auto curve = make_surface( line, Metric::cost );
	CHECK( curve.is_curve() );
	std::ostringstream curve_csv;
	write_surface_csv( curve_csv, curve, line );
	CHECK( curve_csv.str() == "# metric cost\nn,value\n10,10\n20,20\n50,50\n" );
}
