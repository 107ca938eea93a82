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

#include <bsplab/sgl/nested.hpp>
#include <bsplab/error.hpp>

#include <algorithm>
#include <string>

namespace bsplab::sgl {

	namespace {

		enum class Direction { scatter, gather };

		std::string range_label( const char *kind, std::size_t lo, std::size_t hi ) {
			return std::string( kind ) + "[" + std::to_string( lo ) + "," + std::to_string( hi ) + ")";
		}

		/**
		 * `anchor` is the global pid that is the source (scatter) or the
		 * destination (gather) inside this subtree. The root of a subtree is
		 * its first pid.
		 */
		NestedPhase plan( const MachineTree &tree, std::size_t offset, std::size_t anchor,
			const std::vector< Words > &words, Direction dir, CommMatrix &comm )
		{
			const std::size_t width = tree.total_p();
			CommMatrix local( width );
			NestedPhase phase;
			phase.g = tree.g();
			phase.l = tree.l();

			auto route = [ & ]( std::size_t a, std::size_t b, Words w ) {
				// a is the anchor-side pid, b the far pid
				if( dir == Direction::scatter ) {
					local.at( a - offset, b - offset ) += w;
					comm.at( a, b ) += w;
				} else {
					local.at( b - offset, a - offset ) += w;
					comm.at( b, a ) += w;
				}
			};

			if( tree.is_leaf() ) {
				phase.label = range_label( "leaf", offset, offset + width );
				for( std::size_t i = offset; i < offset + width; ++i ) {
					if( i != anchor ) {
						route( anchor, i, words[ i ] );
					}
				}
			} else {
				phase.label = range_label( "node", offset, offset + width );
				std::size_t child_offset = offset;
				for( const auto &child : tree.children() ) {
					const std::size_t lo = child_offset;
					const std::size_t hi = child_offset + child.total_p();
					const bool holds_anchor = anchor >= lo && anchor < hi;
					if( !holds_anchor ) {
						Words bundle = 0;
						for( std::size_t i = lo; i < hi; ++i ) {
							bundle += words[ i ];
						}
						route( anchor, lo, bundle );
					}
					phase.children.push_back( plan( child, lo, holds_anchor ? anchor : lo, words, dir, comm ) );
					child_offset = hi;
				}
			}
			phase.h = h_relation( local );
			phase.own_cost = phase.g * static_cast< double >( phase.h ) + phase.l;
			double slowest_child = 0.0;
			for( const auto &c : phase.children ) {
				slowest_child = std::max( slowest_child, c.total );
			}
			phase.total = phase.own_cost + slowest_child;
			return phase;
		}

		NestedComm run_plan( const MachineTree &tree, std::size_t root, const std::vector< Words > &words,
			Direction dir )
		{
			const std::size_t p = tree.total_p();
			if( root >= p ) {
				throw RoutingError( std::string( dir == Direction::scatter ? "scatter" : "gather" ) + ": root " +
					std::to_string( root ) + " out of range for p = " + std::to_string( p ) );
			}
			if( words.size() != p ) {
				throw DimensionError( "nested plan: expected " + std::to_string( p ) + " word counts" );
			}
			NestedComm out{ CommMatrix( p ), {} };
			out.phase = plan( tree, 0, root, words, dir, out.comm );
			return out;
		}

	} // namespace

	NestedComm plan_scatter( const MachineTree &tree, std::size_t root, const std::vector< Words > &words ) {
		return run_plan( tree, root, words, Direction::scatter );
	}

	NestedComm plan_gather( const MachineTree &tree, std::size_t root, const std::vector< Words > &words ) {
		return run_plan( tree, root, words, Direction::gather );
	}

} // namespace bsplab::sgl
