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

#include <bsplab/engine/report.hpp>
#include <bsplab/error.hpp>

namespace bsplab::engine {

	nlohmann::json to_json( const RunReport &report ) {
		nlohmann::json j{ { "program", report.program }, { "backend", to_string( report.backend ) },
			{ "machine", report.machine }, { "result_digest", report.result_digest }, { "summary", report.summary },
			{ "trace", trace_to_json( report.trace, report.machine ) },
			{ "peak_words_per_pid", report.peak_words_per_pid }, { "environment", report.environment } };
		j[ "wall_time_seconds" ] = report.wall_time_seconds ? nlohmann::json( *report.wall_time_seconds ) : nlohmann::json();
		if( report.error ) {
			nlohmann::json e{ { "kind", report.error->kind }, { "message", report.error->message } };
			e[ "pid" ] = report.error->pid ? nlohmann::json( *report.error->pid ) : nlohmann::json();
			e[ "superstep" ] = report.error->superstep ? nlohmann::json( *report.error->superstep ) : nlohmann::json();
			j[ "error" ] = e;
		} else {
			j[ "error" ] = nullptr;
		}
		return j;
	}

	RunReport report_from_json( const nlohmann::json &j ) {
		RunReport r;
		r.program = j.at( "program" ).get< std::string >();
		r.backend = parse_backend( j.at( "backend" ).get< std::string >() );
		r.machine = j.at( "machine" );
		r.result_digest = j.at( "result_digest" ).get< std::string >();
		r.summary = j.at( "summary" );
		r.trace = trace_from_json( j.at( "trace" ) );
		r.peak_words_per_pid = j.at( "peak_words_per_pid" ).get< Words >();
		if( !j.at( "wall_time_seconds" ).is_null() ) {
			r.wall_time_seconds = j.at( "wall_time_seconds" ).get< double >();
		}
		r.environment = j.at( "environment" ).get< Environment >();
		if( !j.at( "error" ).is_null() ) {
			const auto &e = j.at( "error" );
			ErrorInfo info{ e.at( "kind" ).get< std::string >(), e.at( "message" ).get< std::string >(), {}, {} };
			if( !e.at( "pid" ).is_null() ) {
				info.pid = e.at( "pid" ).get< std::size_t >();
			}
			if( !e.at( "superstep" ).is_null() ) {
				info.superstep = e.at( "superstep" ).get< std::size_t >();
			}
			r.error = info;
		}
		return r;
	}

	double estimate_runtime( const CostTrace &trace, const MachineConfig &m ) {
		m.validate();
		double total = 0.0;
		for( const auto &s : trace.steps ) {
			if( s.work.empty() ) {
				throw UsageError( "estimate_runtime: superstep " + std::to_string( s.index ) + " has no work counts" );
			}
			if( s.work.size() != m.p ) {
				throw DimensionError( "estimate_runtime: trace was recorded with p = " +
					std::to_string( s.work.size() ) + ", target machine has p = " + std::to_string( m.p ) );
			}
			total += superstep_cost( s.work, s.comm, m );
		}
		return total;
	}

} // namespace bsplab::engine
