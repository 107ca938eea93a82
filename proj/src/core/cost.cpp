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

#include <bsplab/core/cost.hpp>
#include <bsplab/error.hpp>

#include <algorithm>
#include <charconv>
#include <cmath>
#include <ostream>

namespace bsplab {

	CommMatrix CommMatrix::from_rows( const std::vector< std::vector< Words > > &rows ) {
		CommMatrix out( rows.size() );
		for( std::size_t s = 0; s < rows.size(); ++s ) {
			if( rows[ s ].size() != rows.size() ) {
				throw DimensionError( "comm matrix: row " + std::to_string( s ) + " has " +
					std::to_string( rows[ s ].size() ) + " entries, expected " + std::to_string( rows.size() ) );
			}
			for( std::size_t d = 0; d < rows.size(); ++d ) {
				out.at( s, d ) = rows[ s ][ d ];
			}
		}
		return out;
	}

	Words CommMatrix::sent( std::size_t pid ) const {
		Words sum = 0;
		for( std::size_t d = 0; d < m_p; ++d ) {
			if( d != pid ) {
				sum += at( pid, d );
			}
		}
		return sum;
	}

	Words CommMatrix::received( std::size_t pid ) const {
		Words sum = 0;
		for( std::size_t s = 0; s < m_p; ++s ) {
			if( s != pid ) {
				sum += at( s, pid );
			}
		}
		return sum;
	}

	Words CommMatrix::total() const {
		Words sum = 0;
		for( Words w : m_words ) {
			sum += w;
		}
		return sum;
	}

	CommMatrix CommMatrix::transposed() const {
		CommMatrix out( m_p );
		for( std::size_t s = 0; s < m_p; ++s ) {
			for( std::size_t d = 0; d < m_p; ++d ) {
				out.at( d, s ) = at( s, d );
			}
		}
		return out;
	}

	CommMatrix &CommMatrix::operator+=( const CommMatrix &other ) {
		if( other.m_p != m_p ) {
			throw DimensionError( "comm matrix: cannot add matrices of different size" );
		}
		for( std::size_t i = 0; i < m_words.size(); ++i ) {
			m_words[ i ] += other.m_words[ i ];
		}
		return *this;
	}

	std::vector< std::vector< Words > > CommMatrix::rows() const {
		std::vector< std::vector< Words > > out( m_p, std::vector< Words >( m_p ) );
		for( std::size_t s = 0; s < m_p; ++s ) {
			for( std::size_t d = 0; d < m_p; ++d ) {
				out[ s ][ d ] = at( s, d );
			}
		}
		return out;
	}

	Words h_relation( const CommMatrix &comm ) {
		Words h = 0;
		for( std::size_t i = 0; i < comm.size(); ++i ) {
			h = std::max( { h, comm.sent( i ), comm.received( i ) } );
		}
		return h;
	}

	double superstep_cost( const std::vector< WorkSteps > &work, const CommMatrix &comm, const MachineConfig &m ) {
		if( work.size() != m.p ) {
			throw DimensionError( "superstep cost: work vector has length " + std::to_string( work.size() ) +
				", machine has p = " + std::to_string( m.p ) );
		}
		if( comm.size() != m.p ) {
			throw DimensionError( "superstep cost: comm matrix is " + std::to_string( comm.size() ) + "x" +
				std::to_string( comm.size() ) + ", machine has p = " + std::to_string( m.p ) );
		}
		const WorkSteps w = work.empty() ? 0 : *std::max_element( work.begin(), work.end() );
		return static_cast< double >( w ) / m.r + m.g * static_cast< double >( h_relation( comm ) ) + m.l;
	}

	WorkSteps SuperstepRecord::max_work() const {
		return work.empty() ? 0 : *std::max_element( work.begin(), work.end() );
	}

	CostTrace trace_totals( std::vector< SuperstepRecord > steps ) {
		CostTrace trace;
		if( !steps.empty() ) {
			const std::size_t p = steps.front().comm.size();
			for( const auto &s : steps ) {
				if( s.comm.size() != p || ( !s.work.empty() && s.work.size() != p ) ) {
					throw DimensionError( "trace: superstep " + std::to_string( s.index ) +
						" has a different processor count than superstep " + std::to_string( steps.front().index ) );
				}
			}
		}
		for( const auto &s : steps ) {
			trace.total_cost += s.cost;
			trace.total_words += s.comm.total();
		}
		trace.sync_count = steps.size();
		trace.steps = std::move( steps );
		return trace;
	}

	namespace {

		std::optional< std::string > check_phase( const NestedPhase &ph ) {
			if( ph.own_cost != ph.g * static_cast< double >( ph.h ) + ph.l ) {
				return "nested phase '" + ph.label + "': own cost does not match g*h + l";
			}
			double child = 0.0;
			for( const auto &c : ph.children ) {
				if( auto err = check_phase( c ) ) {
					return err;
				}
				child = std::max( child, c.total );
			}
			if( ph.total != ph.own_cost + child ) {
				return "nested phase '" + ph.label + "': total does not match own cost + max child";
			}
			return std::nullopt;
		}

	} // namespace

	std::optional< std::string > verify_trace( const CostTrace &trace, const MachineConfig &m ) {
		double total = 0.0;
		Words words = 0;
		for( std::size_t i = 0; i < trace.steps.size(); ++i ) {
			const auto &s = trace.steps[ i ];
			const std::string where = "superstep " + std::to_string( i );
			if( s.index != i ) {
				return where + ": index is " + std::to_string( s.index );
			}
			if( s.h != h_relation( s.comm ) ) {
				return where + ": stored h does not match its comm matrix";
			}
			if( s.nested ) {
				if( auto err = check_phase( *s.nested ) ) {
					return where + ": " + *err;
				}
			} else if( s.cost != superstep_cost( s.work, s.comm, m ) ) {
				return where + ": stored cost does not match max(work)/r + g*h + l";
			}
			total += s.cost;
			words += s.comm.total();
		}
		if( total != trace.total_cost ) {
			return std::string( "trace: total cost does not match the sum of superstep costs" );
		}
		if( words != trace.total_words ) {
			return std::string( "trace: total words does not match the sum of comm matrices" );
		}
		if( trace.sync_count != trace.steps.size() ) {
			return std::string( "trace: sync count does not match the number of supersteps" );
		}
		return std::nullopt;
	}

	nlohmann::json to_json( const NestedPhase &phase ) {
		nlohmann::json children = nlohmann::json::array();
		for( const auto &c : phase.children ) {
			children.push_back( to_json( c ) );
		}
		return nlohmann::json{ { "label", phase.label }, { "g", phase.g }, { "l", phase.l }, { "h", phase.h },
			{ "own_cost", phase.own_cost }, { "total", phase.total }, { "children", children } };
	}

	NestedPhase nested_phase_from_json( const nlohmann::json &j ) {
		NestedPhase ph;
		ph.label = j.at( "label" ).get< std::string >();
		ph.g = j.at( "g" ).get< double >();
		ph.l = j.at( "l" ).get< double >();
		ph.h = j.at( "h" ).get< Words >();
		ph.own_cost = j.at( "own_cost" ).get< double >();
		ph.total = j.at( "total" ).get< double >();
		for( const auto &c : j.at( "children" ) ) {
			ph.children.push_back( nested_phase_from_json( c ) );
		}
		return ph;
	}

	nlohmann::json trace_to_json( const CostTrace &trace, const nlohmann::json &machine ) {
		nlohmann::json steps = nlohmann::json::array();
		for( const auto &s : trace.steps ) {
			nlohmann::json step{ { "index", s.index }, { "work", s.work }, { "comm", s.comm.rows() }, { "h", s.h },
				{ "cost", s.cost } };
			if( s.nested ) {
				step[ "nested" ] = to_json( *s.nested );
			}
			steps.push_back( std::move( step ) );
		}
		return nlohmann::json{ { "machine", machine }, { "steps", steps },
			{ "totals",
				{ { "total_cost", trace.total_cost }, { "total_words", trace.total_words },
					{ "sync_count", trace.sync_count } } } };
	}

	CostTrace trace_from_json( const nlohmann::json &j ) {
		CostTrace trace;
		for( const auto &js : j.at( "steps" ) ) {
			SuperstepRecord s;
			s.index = js.at( "index" ).get< std::size_t >();
			s.work = js.at( "work" ).get< std::vector< WorkSteps > >();
			s.comm = CommMatrix::from_rows( js.at( "comm" ).get< std::vector< std::vector< Words > > >() );
			s.h = js.at( "h" ).get< Words >();
			s.cost = js.at( "cost" ).get< double >();
			if( js.contains( "nested" ) ) {
				s.nested = nested_phase_from_json( js.at( "nested" ) );
			}
			trace.steps.push_back( std::move( s ) );
		}
		const auto &totals = j.at( "totals" );
		trace.total_cost = totals.at( "total_cost" ).get< double >();
		trace.total_words = totals.at( "total_words" ).get< Words >();
		trace.sync_count = totals.at( "sync_count" ).get< std::size_t >();
		return trace;
	}

	std::string format_real( double v ) {
		char buf[ 64 ];
		const auto res = std::to_chars( buf, buf + sizeof( buf ), v );
		return std::string( buf, res.ptr );
	}

	void write_trace_csv( std::ostream &out, const CostTrace &trace ) {
		out << "index,max_work,h,words_total,cost\n";
		for( const auto &s : trace.steps ) {
			out << s.index << ',' << s.max_work() << ',' << s.h << ',' << s.comm.total() << ','
				<< format_real( s.cost ) << '\n';
		}
	}

} // namespace bsplab
