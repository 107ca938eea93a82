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

#ifndef BSPLAB_PERFMODEL_BASIS_HPP
#define BSPLAB_PERFMODEL_BASIS_HPP

#include <memory>
#include <string>
#include <vector>

namespace bsplab::perfmodel {

	/**
	 * A named function of (p, n), written as an arithmetic expression over
	 * p, n and numbers with + - * / ^ and parentheses, e.g. "n*(p-1)" or
	 * "n^2". The exponent of ^ must be a non-negative integer literal.
	 */
	class BasisFn {
		public:
			/** Throws UsageError on a malformed expression. */
			static BasisFn parse( const std::string &text );

			/** The expression with blanks removed. */
			const std::string &name() const noexcept { return m_name; }

			double operator()( double p, double n ) const;

			bool operator==( const BasisFn &other ) const { return m_name == other.m_name; }

			struct Node;

		private:
			std::string m_name;
			std::shared_ptr< const Node > m_root;
	};

	/**
	 * Splits a comma-separated list of terms (commas inside parentheses do
	 * not split). Throws UsageError on an empty list, a malformed term or a
	 * repeated name.
	 */
	std::vector< BasisFn > parse_basis( const std::string &list );

	/** 1, n, p, n*p, n/p, n^2 */
	std::vector< BasisFn > default_basis();

	std::vector< std::string > names_of( const std::vector< BasisFn > &basis );

} // namespace bsplab::perfmodel

#endif
