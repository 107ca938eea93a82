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

#include <bsplab/engine/environment.hpp>
#include <bsplab/core/digest.hpp>
#include <bsplab/error.hpp>

#include <chrono>
#include <ctime>
#include <fstream>
#include <thread>

#include <sys/utsname.h>

namespace bsplab::engine {

	namespace {

		const std::string unknown = "unknown";

		std::string compiler_description() {
#if defined( __clang__ )
			return "clang " __clang_version__;
#elif defined( __GNUC__ )
			return "gcc " __VERSION__;
#else
			return unknown;
#endif
		}

		std::string os_description() {
			struct utsname u;
			if( uname( &u ) != 0 ) {
				return unknown;
			}
			return std::string( u.sysname ) + " " + u.release + " " + u.machine;
		}

		std::string cpu_model() {
			std::ifstream in( "/proc/cpuinfo" );
			std::string line;
			while( std::getline( in, line ) ) {
				if( line.rfind( "model name", 0 ) == 0 ) {
					const auto colon = line.find( ':' );
					if( colon != std::string::npos && colon + 2 <= line.size() ) {
						return line.substr( colon + 2 );
					}
				}
			}
			return unknown;
		}

		std::string utc_timestamp() {
			const std::time_t now = std::chrono::system_clock::to_time_t( std::chrono::system_clock::now() );
			std::tm tm{};
			gmtime_r( &now, &tm );
			char buf[ 32 ];
			std::strftime( buf, sizeof( buf ), "%Y-%m-%dT%H:%M:%SZ", &tm );
			return buf;
		}

	} // namespace

	Environment Environment::detect() {
		Environment env;
		env.set( "tool_version", tool_version );
		env.set( "compiler", compiler_description() );
		env.set( "os", os_description() );
		env.set( "hardware", cpu_model() );
		const unsigned cores = std::thread::hardware_concurrency();
		env.set( "cores_available", cores == 0 ? unknown : std::to_string( cores ) );
		env.set( "timestamp", utc_timestamp() );
		return env;
	}

	void Environment::set( const std::string &key, const std::string &value ) {
		if( key.empty() ) {
			throw UsageError( "environment: empty key" );
		}
		m_fields[ key ] = value.empty() ? unknown : value;
	}

	const std::string &Environment::get( const std::string &key ) const {
		const auto it = m_fields.find( key );
		return it == m_fields.end() ? unknown : it->second;
	}

	void Environment::apply_overrides( const std::vector< std::string > &overrides ) {
		for( const auto &kv : overrides ) {
			const auto eq = kv.find( '=' );
			if( eq == std::string::npos || eq == 0 ) {
				throw UsageError( "environment override '" + kv + "' is not of the form key=value" );
			}
			set( kv.substr( 0, eq ), kv.substr( eq + 1 ) );
		}
	}

	std::string Environment::id() const {
		Digest d;
		for( const auto &[ k, v ] : m_fields ) {
			if( k == "timestamp" ) {
				continue;
			}
			digest_append( d, k );
			digest_append( d, v );
		}
		return d.hex().substr( 0, 12 );
	}

	void to_json( nlohmann::json &j, const Environment &env ) {
		j = nlohmann::json( env.fields() );
	}

	void from_json( const nlohmann::json &j, Environment &env ) {
		Environment out;
		for( const auto &[ k, v ] : j.items() ) {
			out.set( k, v.get< std::string >() );
		}
		env = out;
	}

} // namespace bsplab::engine
