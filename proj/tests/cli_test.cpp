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

// Drives the bsplab executable: cli_test <path to bsplab> <scratch dir>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include <sys/wait.h>

#include <nlohmann/json.hpp>

#include <bsplab/engine/report.hpp>
#include <bsplab/perfmodel/fit.hpp>
#include <bsplab/perfmodel/grid.hpp>

namespace fs = std::filesystem;

namespace {

	std::string tool;
	fs::path dir;
	int failed = 0;

	int sh( const std::string &args ) {
		const std::string cmd = tool + " " + args + " >" + ( dir / "stdout.txt" ).string() + " 2>" + ( dir / "stderr.txt" ).string();
		const int status = std::system( cmd.c_str() );
		return WIFEXITED( status ) ? WEXITSTATUS( status ) : -1;
	}

	std::string slurp( const fs::path &p ) {
		std::ifstream in( p );
		std::stringstream ss;
		ss << in.rdbuf();
		return ss.str();
	}

	void expect( bool ok, const std::string &what ) {
		std::cout << ( ok ? "ok    " : "FAIL  " ) << what << '\n';
		if( !ok ) {
			++failed;
			std::cout << "      stderr: " << slurp( dir / "stderr.txt" ) << '\n';
		}
	}

	std::string at( const char *name ) {
		return ( dir / name ).string();
	}

} // namespace

int main( int argc, char **argv ) {
	if( argc != 3 ) {
		std::cerr << "usage: cli_test <bsplab> <scratch dir>\n";
		return 2;
	}
	tool = argv[ 1 ];
	dir = argv[ 2 ];
	fs::create_directories( dir );

	expect( sh( "run --algo broadcast --p 4 --n 1 --backend simulate --out " + at( "report.json" ) + " --trace " +
				 at( "trace.csv" ) + " --env lab=room3" ) == 0,
		"run broadcast exits 0" );
	{
		const auto j = nlohmann::json::parse( slurp( dir / "report.json" ) );
		expect( j.at( "trace" ).at( "steps" ).size() == 1 && j.at( "trace" ).at( "steps" )[ 0 ].at( "h" ) == 3,
			"broadcast p=4 n=1 has one superstep with h=3" );
		expect( j.at( "environment" ).at( "lab" ) == "room3", "environment override recorded" );
		expect( bsplab::engine::to_json( bsplab::engine::report_from_json( j ) ) == j, "report JSON round trips" );
		const auto trace = slurp( dir / "trace.csv" );
		expect( trace.rfind( "# env ", 0 ) == 0, "trace CSV carries the environment" );
	}

	expect( sh( "run --algo samplesort --p 1 --n 0" ) == 0, "samplesort p=1 n=0 exits 0" );
	expect( sh( "run --algo foo --p 2" ) == 2, "unknown algorithm exits 2" );
	expect( sh( "run --algo reduce --p 0" ) == 2, "p = 0 exits 2" );
	expect( sh( "run --algo reduce --distribution spiky" ) == 2, "unknown distribution exits 2" );
	expect( sh( "run" ) == 2, "missing --algo exits 2" );
	expect( sh( "frobnicate" ) == 2, "unknown subcommand exits 2" );

	{
		std::ofstream tree( dir / "tree.json" );
		tree << R"({"children":[{"p":2,"g":1,"l":10},{"p":2,"g":1,"l":10}],"g":2,"l":20})";
	}
	expect( sh( "run --algo matvec --n 8 --machine " + at( "tree.json" ) ) == 0, "SGL workload on a machine tree exits 0" );
	expect( sh( "run --algo samplesort --machine " + at( "tree.json" ) ) == 2, "BSML workload on a machine tree exits 2" );

	expect( sh( "sweep --algo broadcast --p-list 1,2,4,8 --n-list 1,10,100 --g 2.5 --l 75 --out " + at( "grid.csv" ) ) == 0,
		"sweep exits 0" );
	expect( sh( "fit --grid " + at( "grid.csv" ) + " --basis \"1,n*(p-1)\" --metric cost --out " + at( "model.json" ) +
				 " --residuals " + at( "residuals.csv" ) + " --surface " + at( "surface.csv" ) ) == 0,
		"fit exits 0" );
	{
		const auto j = nlohmann::json::parse( slurp( dir / "model.json" ) );
		const auto model = bsplab::perfmodel::model_from_json( j );
		expect( std::abs( model.coefficients.at( 0 ) - 75 ) <= 1e-9 && std::abs( model.coefficients.at( 1 ) - 2.5 ) <= 1e-9,
			"fit recovers (l, g) = (75, 2.5)" );
		expect( !j.at( "environments" ).empty(), "model JSON carries the environments" );
		std::ifstream in( dir / "grid.csv" );
		std::ostringstream again;
		bsplab::perfmodel::write_grid_csv( again, bsplab::perfmodel::read_grid_csv( in ) );
		expect( again.str() == slurp( dir / "grid.csv" ), "grid CSV round trips byte for byte" );
		expect( slurp( dir / "surface.csv" ).find( "p/n,1,10,100" ) != std::string::npos, "surface matrix written" );
		expect( slurp( dir / "residuals.csv" ).find( "p,n,value,predicted,residual" ) != std::string::npos,
			"residual table written" );
	}

	expect( sh( "fit --grid " + at( "grid.csv" ) + " --basis \"1,n,p,n*p,n/p,n^2,p^2,n*p^2,n^2*p,n^3,p^3,p/n,n/p^2\"" ) == 2,
		"fewer rows than basis terms exits 2" );
	{
		std::ofstream bad( dir / "bad.csv" );
		bad << "p,n,metric,value,env_id\n2,10,cost,12,x\n4,ten,cost,3,x\n";
	}
	expect( sh( "fit --grid " + at( "bad.csv" ) ) == 2 && slurp( dir / "stderr.txt" ).find( "line 3" ) != std::string::npos,
		"malformed CSV exits 2 naming the line" );

	expect( sh( "sweep --algo reduce --p-list 4 --n-list 10,100,1000 --out " + at( "line.csv" ) ) == 0, "1 x k sweep exits 0" );
	expect( sh( "surface --grid " + at( "line.csv" ) + " --out " + at( "curve.csv" ) ) == 0, "surface on 1 x k exits 0" );
	expect( slurp( dir / "stderr.txt" ).find( "warning" ) != std::string::npos, "curve fallback prints a warning" );
	expect( slurp( dir / "curve.csv" ).find( "n,value" ) != std::string::npos, "curve CSV written" );

	expect( sh( "check" ) == 0, "check with default sizes exits 0" );
	expect( sh( "check --suite transpose --p 5" ) == 0 && slurp( dir / "stdout.txt" ).find( "PASS  transpose" ) != std::string::npos,
		"check transpose p<=5 passes" );
	expect( sh( "check --suite none" ) == 2, "check --suite none exits 2" );

	{
		std::ofstream script( dir / "script.json" );
		script << R"({"input":[1,2,3,4],"host_regs":2,"par_regs":1,"code":[)"
			   << R"({"op":"scatter","root":0,"src":0,"dst":0},{"op":"gather","root":2,"src":0,"dst":1}]})";
		std::ofstream with_put( dir / "put.json" );
		with_put << R"({"input":[1],"code":[{"op":"put"}]})";
	}
	expect( sh( "translate --script " + at( "script.json" ) + " --p 4" ) == 0, "translate exits 0" );
	expect( slurp( dir / "stdout.txt" ).find( "put" ) != std::string::npos, "translation lists put instructions" );
	expect( sh( "translate --script " + at( "put.json" ) ) == 2, "translating a script with put exits 2" );

	std::cout << ( failed == 0 ? "all CLI checks pass" : std::to_string( failed ) + " CLI checks fail" ) << '\n';
	return failed == 0 ? 0 : 1;
}
