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

#include <bsplab/perfmodel/basis.hpp>

#include <cctype>
#include <cmath>
#include <set>

#include <bsplab/error.hpp>

namespace bsplab::perfmodel {

	struct BasisFn::Node {
		enum class Kind { number, var_p, var_n, neg, add, sub, mul, div, pow };
		Kind kind = Kind::number;
		double value = 0;
		unsigned exponent = 0;
		std::shared_ptr< const Node > lhs;
		std::shared_ptr< const Node > rhs;

		double eval( double p, double n ) const {
			switch( kind ) {
				case Kind::number:
					return value;
				case Kind::var_p:
					return p;
				case Kind::var_n:
					return n;
				case Kind::neg:
					return -lhs->eval( p, n );
				case Kind::add:
					return lhs->eval( p, n ) + rhs->eval( p, n );
				case Kind::sub:
					return lhs->eval( p, n ) - rhs->eval( p, n );
				case Kind::mul:
					return lhs->eval( p, n ) * rhs->eval( p, n );
				case Kind::div:
					return lhs->eval( p, n ) / rhs->eval( p, n );
				case Kind::pow: {
					const double base = lhs->eval( p, n );
					double out = 1;
					for( unsigned i = 0; i < exponent; ++i ) {
						out *= base;
					}
					return out;
				}
			}
			return 0;
		}
	};

	namespace {

		using Node = BasisFn::Node;
		using Ptr = std::shared_ptr< const Node >;

		class Parser {
			public:
				explicit Parser( const std::string &text ) : m_text( text ) {}

				Ptr parse() {
					auto root = expr();
					if( m_pos != m_text.size() ) {
						fail( "unexpected '" + std::string( 1, m_text[ m_pos ] ) + "'" );
					}
					return root;
				}

			private:
				const std::string &m_text;
				std::size_t m_pos = 0;

				[[noreturn]] void fail( const std::string &what ) const {
					throw UsageError( "basis term '" + m_text + "': " + what );
				}

				bool eat( char c ) {
					if( m_pos < m_text.size() && m_text[ m_pos ] == c ) {
						++m_pos;
						return true;
					}
					return false;
				}

				static Ptr make( Node::Kind k, Ptr a, Ptr b = nullptr ) {
					auto node = std::make_shared< Node >();
					node->kind = k;
					node->lhs = std::move( a );
					node->rhs = std::move( b );
					return node;
				}

				Ptr expr() {
					auto lhs = term();
					for( ;; ) {
						if( eat( '+' ) ) {
							lhs = make( Node::Kind::add, lhs, term() );
						} else if( eat( '-' ) ) {
							lhs = make( Node::Kind::sub, lhs, term() );
						} else {
							return lhs;
						}
					}
				}

				Ptr term() {
					auto lhs = power();
					for( ;; ) {
						if( eat( '*' ) ) {
							lhs = make( Node::Kind::mul, lhs, power() );
						} else if( eat( '/' ) ) {
							lhs = make( Node::Kind::div, lhs, power() );
						} else {
							return lhs;
						}
					}
				}

				Ptr power() {
					auto base = unary();
					if( !eat( '^' ) ) {
						return base;
					}
					const std::size_t start = m_pos;
					while( m_pos < m_text.size() && std::isdigit( static_cast< unsigned char >( m_text[ m_pos ] ) ) ) {
						++m_pos;
					}
					if( start == m_pos || m_pos - start > 2 ) {
						fail( "exponent must be an integer literal below 100" );
					}
					auto node = std::make_shared< Node >();
					node->kind = Node::Kind::pow;
					node->lhs = base;
					node->exponent = static_cast< unsigned >( std::stoul( m_text.substr( start, m_pos - start ) ) );
					return node;
				}

				Ptr unary() {
					if( eat( '-' ) ) {
						return make( Node::Kind::neg, unary() );
					}
					return primary();
				}

				Ptr primary() {
					if( m_pos >= m_text.size() ) {
						fail( "unexpected end" );
					}
					if( eat( '(' ) ) {
						auto inner = expr();
						if( !eat( ')' ) ) {
							fail( "missing ')'" );
						}
						return inner;
					}
					if( eat( 'p' ) ) {
						return make( Node::Kind::var_p, nullptr );
					}
					if( eat( 'n' ) ) {
						return make( Node::Kind::var_n, nullptr );
					}
					const char *begin = m_text.c_str() + m_pos;
					char *end = nullptr;
					const double v = std::strtod( begin, &end );
					if( end == begin || !std::isfinite( v ) ) {
						fail( "expected a number, p, n or '('" );
					}
					m_pos += static_cast< std::size_t >( end - begin );
					auto node = std::make_shared< Node >();
					node->kind = Node::Kind::number;
					node->value = v;
					return node;
				}
		};

	} // namespace

	BasisFn BasisFn::parse( const std::string &text ) {
		BasisFn out;
		for( std::size_t i = 0; i < text.size(); ++i ) {
			if( !std::isspace( static_cast< unsigned char >( text[ i ] ) ) ) {
				out.m_name += text[ i ];
				continue;
			}
			// blanks may separate tokens but not split a number
			const auto digit = []( char c ) { return std::isdigit( static_cast< unsigned char >( c ) ) || c == '.'; };
			const auto next = text.find_first_not_of( " \t\r\n", i );
			if( !out.m_name.empty() && next != std::string::npos && digit( out.m_name.back() ) && digit( text[ next ] ) ) {
				throw UsageError( "basis term '" + text + "': blank inside a number" );
			}
		}
		if( out.m_name.empty() ) {
			throw UsageError( "empty basis term" );
		}
		out.m_root = Parser( out.m_name ).parse();
		return out;
	}

	double BasisFn::operator()( double p, double n ) const {
		return m_root->eval( p, n );
	}

	std::vector< BasisFn > parse_basis( const std::string &list ) {
		std::vector< BasisFn > out;
		std::set< std::string > seen;
		std::string current;
		int depth = 0;
		auto flush = [ & ] {
			auto fn = BasisFn::parse( current );
			if( !seen.insert( fn.name() ).second ) {
				throw UsageError( "basis term '" + fn.name() + "' appears twice" );
			}
			out.push_back( std::move( fn ) );
			current.clear();
		};
		for( char c : list ) {
			if( c == ',' && depth == 0 ) {
				flush();
				continue;
			}
			depth += c == '(' ? 1 : c == ')' ? -1 : 0;
			current += c;
		}
		flush();
		return out;
	}

	std::vector< BasisFn > default_basis() {
		return parse_basis( "1,n,p,n*p,n/p,n^2" );
	}

	std::vector< std::string > names_of( const std::vector< BasisFn > &basis ) {
		std::vector< std::string > out;
		for( const auto &fn : basis ) {
			out.push_back( fn.name() );
		}
		return out;
	}

} // namespace bsplab::perfmodel
