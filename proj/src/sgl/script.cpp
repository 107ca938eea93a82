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

#include <bsplab/sgl/script.hpp>
#include <bsplab/error.hpp>

#include <algorithm>
#include <sstream>

namespace bsplab::sgl {

	namespace {

		// two's-complement wrap-around instead of signed overflow
		std::int64_t wrap_add( std::int64_t x, std::int64_t y ) {
			return static_cast< std::int64_t >( static_cast< std::uint64_t >( x ) + static_cast< std::uint64_t >( y ) );
		}

		std::int64_t wrap_mul( std::int64_t x, std::int64_t y ) {
			return static_cast< std::int64_t >( static_cast< std::uint64_t >( x ) * static_cast< std::uint64_t >( y ) );
		}

		const char *local_name( LocalFn::Kind k ) {
			switch( k ) {
				case LocalFn::Kind::add: return "add";
				case LocalFn::Kind::mul: return "mul";
				case LocalFn::Kind::affine: return "affine";
				case LocalFn::Kind::add_pid: return "add_pid";
				case LocalFn::Kind::square: return "square";
				case LocalFn::Kind::negate: return "negate";
			}
			return "?";
		}

		const char *host_name( HostFn::Kind k ) {
			switch( k ) {
				case HostFn::Kind::reverse: return "reverse";
				case HostFn::Kind::rotate: return "rotate";
				case HostFn::Kind::prefix_sum: return "prefix_sum";
				case HostFn::Kind::add: return "add";
			}
			return "?";
		}

		const char *instr_name( Instr::Kind k ) {
			switch( k ) {
				case Instr::Kind::scatter: return "scatter";
				case Instr::Kind::gather: return "gather";
				case Instr::Kind::lmap: return "lmap";
				case Instr::Kind::host: return "host";
				case Instr::Kind::put: return "put";
			}
			return "?";
		}

		LocalFn::Kind parse_local( const std::string &s ) {
			for( auto k : { LocalFn::Kind::add, LocalFn::Kind::mul, LocalFn::Kind::affine, LocalFn::Kind::add_pid,
					 LocalFn::Kind::square, LocalFn::Kind::negate } ) {
				if( s == local_name( k ) ) {
					return k;
				}
			}
			throw UsageError( "script: unknown local function '" + s + "'" );
		}

		HostFn::Kind parse_host( const std::string &s ) {
			for( auto k : { HostFn::Kind::reverse, HostFn::Kind::rotate, HostFn::Kind::prefix_sum, HostFn::Kind::add } ) {
				if( s == host_name( k ) ) {
					return k;
				}
			}
			throw UsageError( "script: unknown host function '" + s + "'" );
		}

		Instr::Kind parse_instr( const std::string &s ) {
			for( auto k : { Instr::Kind::scatter, Instr::Kind::gather, Instr::Kind::lmap, Instr::Kind::host,
					 Instr::Kind::put } ) {
				if( s == instr_name( k ) ) {
					return k;
				}
			}
			throw UsageError( "script: unknown instruction '" + s + "'" );
		}

		/** Register file shared by both interpreters. */
		struct Registers {
			ScriptState state;

			Registers( const std::vector< std::int64_t > &input, std::size_t host_regs, std::size_t par_regs ) {
				if( host_regs == 0 ) {
					throw UsageError( "script: at least one host register is required" );
				}
				state.host.resize( host_regs );
				state.par.resize( par_regs );
				state.host[ 0 ] = input;
			}

			std::vector< std::int64_t > &host( std::size_t r ) {
				if( r >= state.host.size() ) {
					throw UsageError( "script: host register h" + std::to_string( r ) + " does not exist" );
				}
				return state.host[ r ];
			}

			std::vector< std::int64_t > &par( std::size_t r ) {
				if( r >= state.par.size() ) {
					throw UsageError( "script: parallel register p" + std::to_string( r ) + " does not exist" );
				}
				return state.par[ r ];
			}

			const std::vector< std::int64_t > &defined_par( std::size_t r, std::size_t p ) {
				auto &v = par( r );
				if( v.size() != p ) {
					throw UsageError( "script: parallel register p" + std::to_string( r ) + " is unset" );
				}
				return v;
			}

			const std::vector< std::int64_t > &host_of_width( std::size_t r, std::size_t p ) {
				auto &v = host( r );
				if( v.size() != p ) {
					throw DimensionError( "script: host register h" + std::to_string( r ) + " has " +
						std::to_string( v.size() ) + " values, scatter needs p = " + std::to_string( p ) );
				}
				return v;
			}
		};

	} // namespace

	std::int64_t LocalFn::operator()( std::size_t pid, std::int64_t x ) const {
		switch( kind ) {
			case Kind::add: return wrap_add( x, a );
			case Kind::mul: return wrap_mul( x, a );
			case Kind::affine: return wrap_add( wrap_mul( x, a ), b );
			case Kind::add_pid: return wrap_add( x, static_cast< std::int64_t >( pid ) );
			case Kind::square: return wrap_mul( x, x );
			case Kind::negate: return wrap_mul( x, -1 );
		}
		return x;
	}

	std::string LocalFn::describe() const {
		switch( kind ) {
			case Kind::add: return "x + " + std::to_string( a );
			case Kind::mul: return "x * " + std::to_string( a );
			case Kind::affine: return "x * " + std::to_string( a ) + " + " + std::to_string( b );
			case Kind::add_pid: return "x + pid";
			case Kind::square: return "x * x";
			case Kind::negate: return "-x";
		}
		return "?";
	}

	std::vector< std::int64_t > HostFn::operator()( std::vector< std::int64_t > xs ) const {
		switch( kind ) {
			case Kind::reverse:
				std::reverse( xs.begin(), xs.end() );
				break;
			case Kind::rotate:
				if( !xs.empty() ) {
					const auto n = static_cast< std::int64_t >( xs.size() );
					const auto shift = ( ( k % n ) + n ) % n;
					std::rotate( xs.begin(), xs.begin() + shift, xs.end() );
				}
				break;
			case Kind::prefix_sum:
				for( std::size_t i = 1; i < xs.size(); ++i ) {
					xs[ i ] = wrap_add( xs[ i ], xs[ i - 1 ] );
				}
				break;
			case Kind::add:
				for( auto &x : xs ) {
					x = wrap_add( x, k );
				}
				break;
		}
		return xs;
	}

	std::string HostFn::describe() const {
		switch( kind ) {
			case Kind::reverse: return "reverse";
			case Kind::rotate: return "rotate " + std::to_string( k );
			case Kind::prefix_sum: return "prefix_sum";
			case Kind::add: return "add " + std::to_string( k );
		}
		return "?";
	}

	ScriptState run_script( const Machine &m, const Script &script ) {
		const std::size_t p = m.nprocs();
		Registers regs( script.input, script.host_regs, script.par_regs );
		for( const auto &in : script.code ) {
			if( in.kind == Instr::Kind::put ) {
				throw UsageError( "put is absent in SGL" );
			}
			if( in.root >= p && in.kind != Instr::Kind::lmap ) {
				throw RoutingError( "root " + std::to_string( in.root ) + " out of range for p = " + std::to_string( p ) );
			}
			switch( in.kind ) {
				case Instr::Kind::scatter:
					regs.par( in.dst ) = m.scatter( in.root, regs.host_of_width( in.src, p ) ).elems();
					break;
				case Instr::Kind::gather:
					regs.host( in.dst ) = m.gather( in.root, ParVec< std::int64_t >( regs.defined_par( in.src, p ) ) );
					break;
				case Instr::Kind::lmap: {
					const LocalFn fn = in.fn;
					regs.par( in.dst ) = m.lmap( [ fn ]( std::size_t pid, std::int64_t x ) { return fn( pid, x ); },
											  ParVec< std::int64_t >( regs.defined_par( in.src, p ) ) )
											 .elems();
					break;
				}
				case Instr::Kind::host: {
					auto out = in.host_fn( regs.host( in.src ) );
					m.charge( in.root, out.size() );
					regs.host( in.dst ) = std::move( out );
					break;
				}
				case Instr::Kind::put:
					throw UsageError( "put is absent in SGL" );
			}
		}
		return regs.state;
	}

	Script random_script( std::mt19937_64 &rng, std::size_t p, std::size_t length ) {
		Script s;
		s.host_regs = 3;
		s.par_regs = 3;
		for( std::size_t i = 0; i < p; ++i ) {
			s.input.push_back( static_cast< std::int64_t >( rng() % 2001 ) - 1000 );
		}
		std::vector< bool > host_set{ true, false, false };
		std::vector< bool > par_set( 3, false );
		auto pick = [ &rng ]( const std::vector< bool > &set ) {
			std::vector< std::size_t > ids;
			for( std::size_t i = 0; i < set.size(); ++i ) {
				if( set[ i ] ) {
					ids.push_back( i );
				}
			}
			return ids[ rng() % ids.size() ];
		};
		auto random_local = [ &rng ] {
			LocalFn f;
			f.kind = static_cast< LocalFn::Kind >( rng() % 6 );
			f.a = static_cast< std::int64_t >( rng() % 11 ) - 5;
			f.b = static_cast< std::int64_t >( rng() % 11 ) - 5;
			return f;
		};
		auto random_host = [ &rng ] {
			HostFn f;
			f.kind = static_cast< HostFn::Kind >( rng() % 4 );
			f.k = static_cast< std::int64_t >( rng() % 7 ) - 3;
			return f;
		};
		const Instr::Kind forced[] = { Instr::Kind::scatter, Instr::Kind::lmap, Instr::Kind::gather, Instr::Kind::host };
		for( std::size_t i = 0; i < length; ++i ) {
			Instr in;
			if( i < 4 ) {
				in.kind = forced[ i ];
			} else {
				const bool any_par = std::find( par_set.begin(), par_set.end(), true ) != par_set.end();
				const auto r = rng() % 4;
				in.kind = !any_par ? Instr::Kind::scatter : forced[ r ];
			}
			in.root = rng() % p;
			switch( in.kind ) {
				case Instr::Kind::scatter:
					in.src = pick( host_set );
					in.dst = rng() % 3;
					par_set[ in.dst ] = true;
					break;
				case Instr::Kind::gather:
					in.src = pick( par_set );
					in.dst = rng() % 3;
					host_set[ in.dst ] = true;
					break;
				case Instr::Kind::lmap:
					in.src = pick( par_set );
					in.dst = rng() % 3;
					in.fn = random_local();
					par_set[ in.dst ] = true;
					break;
				case Instr::Kind::host:
					in.src = pick( host_set );
					in.dst = rng() % 3;
					in.host_fn = random_host();
					host_set[ in.dst ] = true;
					break;
				case Instr::Kind::put:
					break;
			}
			s.code.push_back( in );
		}
		return s;
	}

	nlohmann::json to_json( const Script &script ) {
		nlohmann::json code = nlohmann::json::array();
		for( const auto &in : script.code ) {
			nlohmann::json j{ { "op", instr_name( in.kind ) } };
			if( in.kind != Instr::Kind::put ) {
				j[ "root" ] = in.root;
				j[ "src" ] = in.src;
				j[ "dst" ] = in.dst;
			}
			if( in.kind == Instr::Kind::lmap ) {
				j[ "fn" ] = local_name( in.fn.kind );
				j[ "a" ] = in.fn.a;
				j[ "b" ] = in.fn.b;
			}
			if( in.kind == Instr::Kind::host ) {
				j[ "fn" ] = host_name( in.host_fn.kind );
				j[ "k" ] = in.host_fn.k;
			}
			code.push_back( std::move( j ) );
		}
		return nlohmann::json{ { "input", script.input }, { "host_regs", script.host_regs },
			{ "par_regs", script.par_regs }, { "code", code } };
	}

	Script script_from_json( const nlohmann::json &j ) {
		try {
			Script s;
			s.input = j.at( "input" ).get< std::vector< std::int64_t > >();
			s.host_regs = j.value( "host_regs", std::size_t{ 1 } );
			s.par_regs = j.value( "par_regs", std::size_t{ 1 } );
			for( const auto &ji : j.at( "code" ) ) {
				Instr in;
				in.kind = parse_instr( ji.at( "op" ).get< std::string >() );
				in.root = ji.value( "root", std::size_t{ 0 } );
				in.src = ji.value( "src", std::size_t{ 0 } );
				in.dst = ji.value( "dst", std::size_t{ 0 } );
				if( in.kind == Instr::Kind::lmap ) {
					in.fn.kind = parse_local( ji.at( "fn" ).get< std::string >() );
					in.fn.a = ji.value( "a", std::int64_t{ 0 } );
					in.fn.b = ji.value( "b", std::int64_t{ 0 } );
				}
				if( in.kind == Instr::Kind::host ) {
					in.host_fn.kind = parse_host( ji.at( "fn" ).get< std::string >() );
					in.host_fn.k = ji.value( "k", std::int64_t{ 0 } );
				}
				s.code.push_back( in );
			}
			return s;
		} catch( const nlohmann::json::exception &e ) {
			throw UsageError( std::string( "script: " ) + e.what() );
		}
	}

	BsmlScript translate_to_bsml( const Script &script ) {
		BsmlScript out;
		out.input = script.input;
		out.host_regs = script.host_regs;
		out.par_regs = script.par_regs;
		for( const auto &in : script.code ) {
			BsmlInstr b;
			b.root = in.root;
			b.src = in.src;
			b.dst = in.dst;
			switch( in.kind ) {
				case Instr::Kind::scatter: b.kind = BsmlInstr::Kind::put_from_root; break;
				case Instr::Kind::gather: b.kind = BsmlInstr::Kind::put_to_root; break;
				case Instr::Kind::lmap:
					b.kind = BsmlInstr::Kind::apply;
					b.fn = in.fn;
					break;
				case Instr::Kind::host:
					b.kind = BsmlInstr::Kind::host;
					b.host_fn = in.host_fn;
					break;
				case Instr::Kind::put: throw UsageError( "put is absent in SGL" );
			}
			out.code.push_back( b );
		}
		return out;
	}

	ScriptState run_bsml_script( const bsml::Machine &m, const BsmlScript &script ) {
		using Row = bsml::MsgRow< std::int64_t >;
		const std::size_t p = m.nprocs();
		Registers regs( script.input, script.host_regs, script.par_regs );
		for( const auto &in : script.code ) {
			if( in.root >= p && in.kind != BsmlInstr::Kind::apply ) {
				throw RoutingError( "root " + std::to_string( in.root ) + " out of range for p = " + std::to_string( p ) );
			}
			switch( in.kind ) {
				case BsmlInstr::Kind::put_from_root: {
					const auto src = regs.host_of_width( in.src, p );
					auto plan = m.mkpar(
						[ & ]( std::size_t s ) {
							Row row( p );
							if( s == in.root ) {
								for( std::size_t d = 0; d < p; ++d ) {
									if( d != s ) {
										row[ d ] = src[ d ];
									}
								}
							}
							return row;
						},
						bsml::Work{ 0 } );
					const auto got = m.put( plan );
					std::vector< std::int64_t > out( p );
					for( std::size_t d = 0; d < p; ++d ) {
						out[ d ] = d == in.root ? src[ d ] : *got[ d ][ in.root ];
					}
					regs.par( in.dst ) = std::move( out );
					break;
				}
				case BsmlInstr::Kind::put_to_root: {
					const auto src = regs.defined_par( in.src, p );
					auto plan = m.mkpar(
						[ & ]( std::size_t s ) {
							Row row( p );
							if( s != in.root ) {
								row[ in.root ] = src[ s ];
							}
							return row;
						},
						bsml::Work{ 0 } );
					const auto got = m.put( plan );
					std::vector< std::int64_t > out( p );
					for( std::size_t s = 0; s < p; ++s ) {
						out[ s ] = s == in.root ? src[ s ] : *got[ in.root ][ s ];
					}
					regs.host( in.dst ) = std::move( out );
					break;
				}
				case BsmlInstr::Kind::apply: {
					const LocalFn fn = in.fn;
					auto fs = m.mkpar(
						[ fn ]( std::size_t pid ) { return [ fn, pid ]( std::int64_t x ) { return fn( pid, x ); }; },
						bsml::Work{ 0 } );
					regs.par( in.dst ) = m.apply( fs, ParVec< std::int64_t >( regs.defined_par( in.src, p ) ) ).elems();
					break;
				}
				case BsmlInstr::Kind::host: {
					auto out = in.host_fn( regs.host( in.src ) );
					m.charge( in.root, out.size() );
					regs.host( in.dst ) = std::move( out );
					break;
				}
			}
		}
		return regs.state;
	}

	std::string dump( const BsmlScript &script, std::size_t p ) {
		std::ostringstream out;
		out << "# bsml program, p = " << p << ", " << script.code.size() << " instructions\n";
		out << "h0 <- input [";
		for( std::size_t i = 0; i < script.input.size(); ++i ) {
			out << ( i ? ", " : "" ) << script.input[ i ];
		}
		out << "]\n";
		auto pattern = [ &out, p ]( auto sends ) {
			for( std::size_t s = 0; s < p; ++s ) {
				out << "    pid " << s << " -> [";
				for( std::size_t d = 0; d < p; ++d ) {
					out << ( sends( s, d ) ? 'x' : '.' );
				}
				out << "]\n";
			}
		};
		for( std::size_t i = 0; i < script.code.size(); ++i ) {
			const auto &in = script.code[ i ];
			out << i << ": ";
			switch( in.kind ) {
				case BsmlInstr::Kind::put_from_root:
					out << "p" << in.dst << " <- put(plan: pid " << in.root << " sends h" << in.src
						<< "[d] to every d != " << in.root << ")  ; scatter\n";
					pattern( [ &in ]( std::size_t s, std::size_t d ) { return s == in.root && d != s; } );
					break;
				case BsmlInstr::Kind::put_to_root:
					out << "h" << in.dst << " <- put(plan: every pid s != " << in.root << " sends p" << in.src
						<< "[s] to pid " << in.root << ")  ; gather\n";
					pattern( [ &in ]( std::size_t s, std::size_t d ) { return d == in.root && d != s; } );
					break;
				case BsmlInstr::Kind::apply:
					out << "p" << in.dst << " <- apply(mkpar(pid -> x -> " << in.fn.describe() << "), p" << in.src << ")\n";
					break;
				case BsmlInstr::Kind::host:
					out << "h" << in.dst << " <- " << in.host_fn.describe() << "(h" << in.src << ") at pid " << in.root
						<< "\n";
					break;
			}
		}
		return out.str();
	}

} // namespace bsplab::sgl
