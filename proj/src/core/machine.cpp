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

#include <bsplab/core/machine.hpp>
#include <bsplab/error.hpp>

#include <cmath>

namespace bsplab {

	void MachineConfig::validate() const {
		if( p < 1 ) {
			throw ValidationError( "machine: p must be >= 1" );
		}
		if( !( g > 0.0 ) || !std::isfinite( g ) ) {
			throw ValidationError( "machine: g must be a finite value > 0" );
		}
		if( !( l >= 0.0 ) || !std::isfinite( l ) ) {
			throw ValidationError( "machine: l must be a finite value >= 0" );
		}
		if( !( r > 0.0 ) || !std::isfinite( r ) ) {
			throw ValidationError( "machine: r must be a finite value > 0" );
		}
	}

	MachineConfig make_machine( std::size_t p, double g, double l, double r ) {
		MachineConfig m{ p, g, l, r };
		m.validate();
		return m;
	}

	void to_json( nlohmann::json &j, const MachineConfig &m ) {
		j = nlohmann::json{ { "p", m.p }, { "g", m.g }, { "l", m.l }, { "r", m.r } };
	}

	void from_json( const nlohmann::json &j, MachineConfig &m ) {
		MachineConfig out;
		out.p = j.at( "p" ).get< std::size_t >();
		out.g = j.value( "g", out.g );
		out.l = j.value( "l", out.l );
		out.r = j.value( "r", out.r );
		out.validate();
		m = out;
	}

	MachineTree MachineTree::leaf( MachineConfig config ) {
		config.validate();
		MachineTree t;
		t.m_config = config;
		t.m_total_p = config.p;
		return t;
	}

	MachineTree MachineTree::node( std::vector< MachineTree > children, double g, double l ) {
		if( children.empty() ) {
			throw ValidationError( "machine tree: a node needs at least one child" );
		}
		if( !( g > 0.0 ) || !( l >= 0.0 ) || !std::isfinite( g ) || !std::isfinite( l ) ) {
			throw ValidationError( "machine tree: node requires g > 0 and l >= 0" );
		}
		MachineTree t;
		t.m_g = g;
		t.m_l = l;
		t.m_total_p = 0;
		for( const auto &c : children ) {
			t.m_total_p += c.total_p();
		}
		t.m_children = std::move( children );
		return t;
	}

	double MachineTree::rate_of( std::size_t pid ) const {
		if( pid >= m_total_p ) {
			throw RoutingError( "machine tree: pid " + std::to_string( pid ) + " out of range" );
		}
		if( is_leaf() ) {
			return m_config.r;
		}
		for( const auto &c : m_children ) {
			if( pid < c.total_p() ) {
				return c.rate_of( pid );
			}
			pid -= c.total_p();
		}
		return m_config.r; // unreachable
	}

	void MachineTree::validate() const {
		if( is_leaf() ) {
			m_config.validate();
			return;
		}
		for( const auto &c : m_children ) {
			c.validate();
		}
	}

	MachineTree parse_machine_tree( const nlohmann::json &j ) {
		if( !j.is_object() ) {
			throw ValidationError( "machine tree: expected a JSON object" );
		}
		try {
			if( j.contains( "children" ) ) {
				std::vector< MachineTree > children;
				for( const auto &c : j.at( "children" ) ) {
					children.push_back( parse_machine_tree( c ) );
				}
				return MachineTree::node( std::move( children ), j.at( "g" ).get< double >(),
					j.at( "l" ).get< double >() );
			}
			return MachineTree::leaf( j.get< MachineConfig >() );
		} catch( const nlohmann::json::exception &e ) {
			throw ValidationError( std::string( "machine tree: " ) + e.what() );
		}
	}

	nlohmann::json to_json( const MachineTree &tree ) {
		if( tree.is_leaf() ) {
			return nlohmann::json( tree.config() );
		}
		nlohmann::json children = nlohmann::json::array();
		for( const auto &c : tree.children() ) {
			children.push_back( to_json( c ) );
		}
		return nlohmann::json{ { "children", children }, { "g", tree.g() }, { "l", tree.l() } };
	}

} // namespace bsplab
