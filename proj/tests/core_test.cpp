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

#include <bsplab/core/cost.hpp>
#include <bsplab/core/machine.hpp>
#include <bsplab/core/tree_reduce.hpp>
#include <bsplab/error.hpp>

#include <algorithm>
#include <random>
#include <sstream>

using namespace bsplab;

namespace {

	// independent oracle: plain double loop over every pair
	Words brute_h( const std::vector< std::vector< Words > > &m ) {
		Words h = 0;
		for( std::size_t i = 0; i < m.size(); ++i ) {
			Words out = 0, in = 0;
			for( std::size_t j = 0; j < m.size(); ++j ) {
				if( i == j ) {
					continue;
				}
				out += m[ i ][ j ];
				in += m[ j ][ i ];
			}
			h = std::max( h, std::max( out, in ) );
		}
		return h;
	}

	CommMatrix random_comm( std::mt19937_64 &rng, std::size_t p, Words max_words ) {
		CommMatrix c( p );
		for( std::size_t s = 0; s < p; ++s ) {
			for( std::size_t d = 0; d < p; ++d ) {
				c.at( s, d ) = rng() % ( max_words + 1 );
			}
		}
		return c;
	}

} // namespace

TEST_CASE( "h_relation on the documented examples" ) {
	CHECK( h_relation( CommMatrix( 4 ) ) == 0 );

	std::vector< std::vector< Words > > exchange( 4, std::vector< Words >( 4, 1 ) );
	for( std::size_t i = 0; i < 4; ++i ) {
		exchange[ i ][ i ] = 0;
	}
	CHECK( brute_h( exchange ) == 3 );
	CHECK( h_relation( CommMatrix::from_rows( exchange ) ) == 3 );

	CommMatrix root( 4 );
	for( std::size_t d = 1; d < 4; ++d ) {
		root.at( 0, d ) = 10;
	}
	CHECK( h_relation( root ) == 30 );
}

TEST_CASE( "h_relation ignores self-sends" ) {
	CommMatrix c( 3 );
	c.at( 1, 1 ) = 1000;
	c.at( 0, 2 ) = 5;
	CHECK( h_relation( c ) == 5 );
	CHECK( c.total() == 1005 );
}

TEST_CASE( "non-square rows are a dimension error" ) {
	CHECK_THROWS_AS( CommMatrix::from_rows( { { 0, 1 }, { 1 } } ), DimensionError );
}

TEST_CASE( "h_relation matches the brute-force oracle and is transpose invariant" ) {
	std::mt19937_64 rng( 7 );
	for( int trial = 0; trial < 300; ++trial ) {
		const std::size_t p = 1 + rng() % 8;
		const CommMatrix c = random_comm( rng, p, 20 );
		CHECK( h_relation( c ) == brute_h( c.rows() ) );
		CHECK( h_relation( c.transposed() ) == h_relation( c ) );
	}
}

TEST_CASE( "superstep_cost formula" ) {
	const MachineConfig m{ 4, 2.0, 10.0, 1.0 };
	CHECK( superstep_cost( { 0, 0, 0, 0 }, CommMatrix( 4 ), m ) == 10.0 );

	CommMatrix c( 4 );
	c.at( 0, 1 ) = 4;
	CHECK( h_relation( c ) == 4 );
	CHECK( superstep_cost( { 5, 7, 3, 2 }, c, m ) == 25.0 );

	CHECK_THROWS_AS( superstep_cost( { 1, 2, 3 }, c, m ), DimensionError );
}

TEST_CASE( "superstep_cost is linear in h and monotone in work and comm" ) {
	std::mt19937_64 rng( 11 );
	const MachineConfig m{ 5, 1.5, 30.0, 2.0 };
	for( int trial = 0; trial < 200; ++trial ) {
		CommMatrix c = random_comm( rng, 5, 9 );
		std::vector< WorkSteps > zero( 5, 0 );
		CommMatrix doubled = c;
		doubled += c;
		CHECK( superstep_cost( zero, doubled, m ) - m.l == doctest::Approx( 2 * ( superstep_cost( zero, c, m ) - m.l ) ) );

		std::vector< WorkSteps > work( 5 );
		for( auto &w : work ) {
			w = rng() % 100;
		}
		const double base = superstep_cost( work, c, m );
		auto more_work = work;
		more_work[ rng() % 5 ] += 1 + rng() % 10;
		CHECK( superstep_cost( more_work, c, m ) >= base );
		CommMatrix more_comm = c;
		more_comm.at( rng() % 5, rng() % 5 ) += 1 + rng() % 10;
		CHECK( superstep_cost( work, more_comm, m ) >= base );
	}
}

TEST_CASE( "trace_totals aggregates records" ) {
	CostTrace empty = trace_totals( {} );
	CHECK( empty.total_cost == 0.0 );
	CHECK( empty.total_words == 0 );
	CHECK( empty.sync_count == 0 );

	SuperstepRecord a;
	a.index = 0;
	a.work = { 0, 0 };
	a.comm = CommMatrix::from_rows( { { 0, 12 }, { 0, 0 } } );
	a.h = 12;
	a.cost = 25.0;
	CostTrace one = trace_totals( { a } );
	CHECK( one.total_cost == 25.0 );
	CHECK( one.total_words == 12 );
	CHECK( one.sync_count == 1 );

	SuperstepRecord b = a;
	b.index = 1;
	b.comm = CommMatrix::from_rows( { { 3, 1 }, { 2, 0 } } );
	b.cost = 7.5;
	CostTrace two = trace_totals( { a, b } );
	CHECK( two.total_cost == 25.0 + 7.5 );
	CHECK( two.total_words == 12 + 3 + 1 + 2 );
	CHECK( two.sync_count == 2 );
	CHECK( two.steps[ 1 ].index == 1 );

	SuperstepRecord c = a;
	c.comm = CommMatrix( 3 );
	CHECK_THROWS_AS( trace_totals( { a, c } ), DimensionError );
}

TEST_CASE( "trace JSON round-trip and CSV shape" ) {
	const MachineConfig m{ 2, 1.0, 10.0, 1.0 };
	SuperstepRecord a;
	a.work = { 3, 1 };
	a.comm = CommMatrix::from_rows( { { 0, 4 }, { 1, 0 } } );
	a.h = h_relation( a.comm );
	a.cost = superstep_cost( a.work, a.comm, m );
	const CostTrace t = trace_totals( { a } );
	CHECK_FALSE( verify_trace( t, m ).has_value() );

	const auto j = trace_to_json( t, nlohmann::json( m ) );
	CHECK( trace_from_json( nlohmann::json::parse( j.dump() ) ) == t );

	std::ostringstream csv;
	write_trace_csv( csv, t );
	CHECK( csv.str() == "index,max_work,h,words_total,cost\n0,3,4,5,17\n" );
}

TEST_CASE( "verify_trace detects tampering" ) {
	const MachineConfig m{ 2, 1.0, 10.0, 1.0 };
	SuperstepRecord a;
	a.work = { 0, 0 };
	a.comm = CommMatrix( 2 );
	a.h = 0;
	a.cost = 10.0;
	CostTrace t = trace_totals( { a } );
	CHECK_FALSE( verify_trace( t, m ).has_value() );
	t.steps[ 0 ].cost = 11.0;
	CHECK( verify_trace( t, m ).has_value() );
}

TEST_CASE( "machine parameters are validated" ) {
	CHECK_THROWS_AS( make_machine( 0 ), ValidationError );
	CHECK_THROWS_AS( make_machine( 2, 0.0 ), ValidationError );
	CHECK_THROWS_AS( make_machine( 2, 1.0, -1.0 ), ValidationError );
	CHECK_THROWS_AS( make_machine( 2, 1.0, 1.0, 0.0 ), ValidationError );
	const auto m = make_machine( 3 );
	CHECK( m.g == 1.0 );
	CHECK( m.l == 100.0 );
	CHECK( m.r == 1.0 );
}

TEST_CASE( "machine tree JSON" ) {
	const auto tree = parse_machine_tree( nlohmann::json::parse(
		R"({"children":[{"p":2,"g":1,"l":10},{"p":3,"r":2}],"g":2,"l":20})" ) );
	CHECK_FALSE( tree.is_leaf() );
	CHECK( tree.total_p() == 5 );
	CHECK( tree.g() == 2.0 );
	CHECK( tree.l() == 20.0 );
	CHECK( tree.rate_of( 4 ) == 2.0 );
	CHECK( parse_machine_tree( to_json( tree ) ) == tree );

	CHECK_THROWS_AS( parse_machine_tree( nlohmann::json::parse( R"({"children":[],"g":1,"l":1})" ) ),
		ValidationError );
	CHECK_THROWS_AS( parse_machine_tree( nlohmann::json::parse( R"({"p":0})" ) ), ValidationError );
	CHECK_THROWS_AS( parse_machine_tree( nlohmann::json::parse( R"({"children":[{"p":1}]})" ) ), ValidationError );
}

TEST_CASE( "tree_reduce uses a fixed left-balanced order" ) {
	const std::vector< std::string > xs{ "a", "b", "c", "d", "e" };
	const auto joined = tree_reduce( std::span< const std::string >( xs ),
		[]( const std::string &l, const std::string &r ) { return "(" + l + r + ")"; } );
	CHECK( joined == "(((ab)c)(de))" );
	CHECK_THROWS_AS( tree_reduce( std::span< const int >(), []( int a, int b ) { return a + b; } ), UsageError );
}
