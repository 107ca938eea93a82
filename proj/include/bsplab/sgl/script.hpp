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

#ifndef BSPLAB_SGL_SCRIPT_HPP
#define BSPLAB_SGL_SCRIPT_HPP

#include <cstddef>
#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include <bsplab/bsml.hpp>
#include <bsplab/core/digest.hpp>
#include <bsplab/sgl/machine.hpp>

/**
 * SGL programs as data, so that they can be stored, generated, checked
 * and compiled to BSML. A script works on integer registers: host
 * registers hold a sequence at the root, parallel registers hold one
 * integer per pid. Host register 0 starts out as the script's input.
 */
namespace bsplab::sgl {

	/** Pointwise integer function applied by lmap. */
	struct LocalFn {
		enum class Kind { add, mul, affine, add_pid, square, negate };
		Kind kind = Kind::add;
		std::int64_t a = 0;
		std::int64_t b = 0;

		std::int64_t operator()( std::size_t pid, std::int64_t x ) const;
		std::string describe() const;

		bool operator==( const LocalFn & ) const = default;
	};

	/** Sequential rewrite of a host register performed at the root. */
	struct HostFn {
		enum class Kind { reverse, rotate, prefix_sum, add };
		Kind kind = Kind::reverse;
		std::int64_t k = 0;

		std::vector< std::int64_t > operator()( std::vector< std::int64_t > xs ) const;
		std::string describe() const;

		bool operator==( const HostFn & ) const = default;
	};

	struct Instr {
		enum class Kind {
			scatter, ///< par[dst] <- scatter(root, host[src])
			gather,  ///< host[dst] <- gather(root, par[src])
			lmap,    ///< par[dst] <- lmap(fn, par[src])
			host,    ///< host[dst] <- host_fn(host[src])
			put      ///< not part of SGL; only present to be rejected
		};
		Kind kind = Kind::lmap;
		std::size_t root = 0;
		std::size_t src = 0;
		std::size_t dst = 0;
		LocalFn fn{};
		HostFn host_fn{};

		bool operator==( const Instr & ) const = default;
	};

	struct Script {
		std::vector< std::int64_t > input;
		std::size_t host_regs = 1;
		std::size_t par_regs = 1;
		std::vector< Instr > code;

		bool operator==( const Script & ) const = default;
	};

	/** Final register contents; unset registers are empty. */
	struct ScriptState {
		std::vector< std::vector< std::int64_t > > host;
		std::vector< std::vector< std::int64_t > > par;

		bool operator==( const ScriptState & ) const = default;
	};

	inline void digest_append( Digest &d, const ScriptState &s ) {
		digest_append( d, s.host );
		digest_append( d, s.par );
	}

	/** Throws UsageError("put is absent in SGL") on a put instruction. */
	ScriptState run_script( const Machine &m, const Script &script );

	/**
	 * Random well-formed script of `length` instructions for p pids. Every
	 * instruction kind except put appears at least once when length >= 4.
	 */
	Script random_script( std::mt19937_64 &rng, std::size_t p, std::size_t length );

	nlohmann::json to_json( const Script &script );
	Script script_from_json( const nlohmann::json &j );

	/** Compiled form: the same registers, driven by put plans. */
	struct BsmlInstr {
		enum class Kind {
			put_from_root, ///< only the root's plan row is filled: host[src][d] to each d != root
			put_to_root,   ///< every pid s != root sends par[src][s] to the root
			apply,         ///< par[dst] <- apply(mkpar(fn), par[src])
			host           ///< host[dst] <- host_fn(host[src])
		};
		Kind kind = Kind::apply;
		std::size_t root = 0;
		std::size_t src = 0;
		std::size_t dst = 0;
		LocalFn fn{};
		HostFn host_fn{};
	};

	struct BsmlScript {
		std::vector< std::int64_t > input;
		std::size_t host_regs = 1;
		std::size_t par_regs = 1;
		std::vector< BsmlInstr > code;
	};

	/** Throws UsageError if the script contains put. */
	BsmlScript translate_to_bsml( const Script &script );

	ScriptState run_bsml_script( const bsml::Machine &m, const BsmlScript &script );

	/** Human-readable listing including the p x p plan pattern of every put. */
	std::string dump( const BsmlScript &script, std::size_t p );

} // namespace bsplab::sgl

#endif
