#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "cli.hpp"
#include "csv.hpp"
#include "symquot/registry.hpp"

using namespace symquot;

namespace {

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result run_cli(std::vector<std::string> args, const std::string& input = {}) {
  args.insert(args.begin(), "symquot");
  std::istringstream in(input);
  std::ostringstream out, err;
  const int code = cli::run(args, in, out, err);
  return {code, out.str(), err.str()};
}

cli::CsvTable parse(const std::string& text) {
  std::istringstream s(text);
  return cli::read_csv(s);
}

}  // namespace

TEST_CASE("csv reader") {
  const auto t = parse("\xEF\xBB\xBF a , b\n\n1, 2 \n3,4\n");
  CHECK(t.header == std::vector<std::string>{"a", "b"});
  REQUIRE(t.rows.size() == 2);
  CHECK(t.rows[0] == std::vector<std::string>{"1", "2"});
  CHECK(t.line_numbers[1] == 4);
  CHECK_THROWS_AS(parse("a,b\n1\n"), cli::DataError);
  CHECK(cli::parse_double("1e-3", 1, "x") == 1e-3);
  CHECK_THROWS_AS(cli::parse_double("1.5x", 2, "x"), cli::DataError);
  CHECK_THROWS_AS(cli::parse_double("", 2, "x"), cli::DataError);
  CHECK(cli::format_double(0.1) == "0.10000000000000001");
}

TEST_CASE("embed") {
  const Result r = run_cli({"embed", "--group", "C1", "--variant", "arnold"}, "id,w,x,y,z\np,1,0,0,0\n");
  CHECK(r.code == cli::kOk);
  const auto t = parse(r.out);
  REQUIRE(t.rows.size() == 1);
  CHECK(t.header.size() == 10);
  CHECK(t.rows[0][0] == "p");
  const std::vector<std::string> identity{"1", "0", "0", "0", "1", "0", "0", "0", "1"};
  for (std::size_t i = 0; i < 9; ++i) CHECK(cli::parse_double(t.rows[0][i + 1], 2, "c") == doctest::Approx(std::stod(identity[i])));

  const Result empty = run_cli({"embed", "--group", "O"}, "id,w,x,y,z\n");
  CHECK(empty.code == cli::kOk);
  CHECK(parse(empty.out).rows.empty());
  CHECK(parse(empty.out).header.size() == 82);

  // Two representatives of one C4 coset embed identically.
  const double h = std::sqrt(0.5);
  const std::string rows = "id,w,x,y,z\na,1,0,0,0\nb," + std::to_string(h) + "," + std::to_string(h) + ",0,0\n";
  const auto e = parse(run_cli({"embed", "--group", "C4"}, rows).out);
  for (std::size_t c = 1; c < e.header.size(); ++c) {
    CHECK(std::stod(e.rows[0][c]) == doctest::Approx(std::stod(e.rows[1][c])).epsilon(1e-6).scale(1.0));
  }

  const auto euler = parse(run_cli({"embed", "--group", "C1", "--degrees"}, "id,alpha,beta,gamma\nq,90,0,0\n").out);
  CHECK(std::stod(euler.rows[0][1]) == doctest::Approx(0.0).scale(1.0));
  CHECK(std::stod(euler.rows[0][2]) == doctest::Approx(std::sqrt(0.5)));

  CHECK(run_cli({"embed", "--group", "C1"}, "id,w,x,y,z\np,2,0,0,0\n").code == cli::kDataError);
  CHECK(run_cli({"embed", "--group", "C1"}, "id,alpha,beta,gamma\np,0,4,0\n").code == cli::kDataError);
  CHECK(run_cli({"embed", "--group", "C1"}, "id,foo\np,1\n").code == cli::kDataError);
  CHECK(run_cli({"embed"}, "id,w,x,y,z\n").code == cli::kUsage);
  CHECK(run_cli({"embed", "--group", "Z9"}, "id,w,x,y,z\n").code == cli::kDataError);
  CHECK(run_cli({"frobnicate"}).code == cli::kUsage);
  CHECK(run_cli({"--help"}).code == cli::kOk);
}

TEST_CASE("project") {
  const Rotation r = Rotation::from_euler_zyz(0.3, 1.0, -0.7);
  const auto q = r.quaternion();
  std::ostringstream row;
  row.precision(17);
  row << "id,w,x,y,z\nt," << q.w() << ',' << q.x() << ',' << q.y() << ',' << q.z() << '\n';
  const Result emb = run_cli({"embed", "--group", "D3"}, row.str());
  REQUIRE(emb.code == cli::kOk);
  std::string table = emb.out;
  const std::size_t header_len = parse(table).header.size();
  table += "zero";
  for (std::size_t i = 1; i < header_len; ++i) table += ",0";
  table += '\n';

  const Result p = run_cli({"project", "--group", "D3"}, table);
  CHECK(p.code == cli::kOk);
  CHECK(p.err.find("warning: 1") != std::string::npos);
  const auto t = parse(p.out);
  CHECK(t.header == std::vector<std::string>{"id", "w", "x", "y", "z", "residual", "objective", "iterations", "converged", "error"});
  REQUIRE(t.rows.size() == 2);
  const Rotation back = Rotation::from_quaternion(std::stod(t.rows[0][1]), std::stod(t.rows[0][2]), std::stod(t.rows[0][3]),
                                                  std::stod(t.rows[0][4]));
  const GroupPtr d3 = SymmetryGroup::make("D3");
  CHECK(coset_distance(Coset(back, d3), Coset(r, d3)) < 1e-8);
  CHECK(geodesic_distance(back, fundamental_representative(Coset(r, d3))) < 1e-8);
  CHECK(t.rows[0][8] == "true");
  CHECK(t.rows[0][9].empty());
  CHECK(t.rows[1][8] == "false");
  CHECK_FALSE(t.rows[1][9].empty());

  const Result mismatch = run_cli({"project", "--group", "C4"}, table);
  CHECK(mismatch.code == cli::kDataError);
  CHECK(mismatch.err.find("expects 84 coordinates per row, found 36") != std::string::npos);
  CHECK(run_cli({"project", "--group", "D3", "--max-iter", "x"}, table).code == cli::kUsage);
}

TEST_CASE("distance") {
  const std::string pair = "id,w1,x1,y1,z1,w2,x2,y2,z2\np,1,0,0,0,0.7071067811865476,0.7071067811865476,0,0\n";
  const auto g = parse(run_cli({"distance", "--group", "C1"}, pair).out);
  CHECK(std::stod(g.rows[0][1]) == doctest::Approx(std::numbers::pi / 2).epsilon(1e-12));
  const auto c4 = parse(run_cli({"distance", "--group", "C4"}, pair).out);
  CHECK(std::stod(c4.rows[0][1]) < 1e-7);
  const auto e = parse(run_cli({"distance", "--group", "C1", "--metric", "embedded"}, pair).out);
  CHECK(std::stod(e.rows[0][1]) == doctest::Approx(std::sqrt(2.0) * std::sqrt(1 - std::cos(std::numbers::pi / 2))).epsilon(1e-12));
  const auto euler = parse(run_cli({"distance", "--group", "C1", "--degrees"},
                                   "alpha1,beta1,gamma1,alpha2,beta2,gamma2\n0,0,0,0,30,0\n")
                               .out);
  CHECK(euler.rows[0][0] == "1");
  CHECK(std::stod(euler.rows[0][1]) == doctest::Approx(std::numbers::pi / 6).epsilon(1e-12));
  CHECK(run_cli({"distance", "--group", "C1", "--metric", "taxicab"}, pair).code == cli::kUsage);
}

TEST_CASE("verify") {
  const Result iso = run_cli({"verify", "--suite", "isometry"});
  CHECK(iso.code == cli::kOk);
  CHECK(iso.out.find("12 checks, 0 failed") != std::string::npos);
  const Result binom = run_cli({"verify", "--suite", "binom"});
  CHECK(binom.code == cli::kOk);
  CHECK(binom.out.find("binom alpha=30") != std::string::npos);
  const Result norms = run_cli({"verify", "--suite", "norms"});
  CHECK(norms.code == cli::kOk);
  const Result mean = run_cli({"verify", "--suite", "mean", "--group", "O", "--mean-samples", "5000"});
  CHECK(mean.code == cli::kOk);
  CHECK(mean.out.rfind("mean O", 0) == 0);
  // The sampled rank of the O embedding falls below the affine-hull formula.
  const Result rank = run_cli({"verify", "--suite", "rank", "--group", "O"});
  CHECK(rank.code == cli::kVerificationFailed);
  CHECK(rank.out.find("FAIL") != std::string::npos);
  CHECK(run_cli({"verify", "--suite", "rank", "--group", "C1"}).code == cli::kOk);
  CHECK(run_cli({"verify", "--suite", "nope"}).code == cli::kUsage);
}

TEST_CASE("bounds and scatter") {
  const Result b = run_cli({"bounds", "--group", "C1", "--pairs", "20000", "--refine"});
  CHECK(b.code == cli::kOk);
  const auto t = parse(b.out);
  REQUIRE(t.rows.size() == 1);
  CHECK(t.rows[0][0] == "C1");
  CHECK(std::stod(t.rows[0][4]) == doctest::Approx(2 / std::numbers::pi).epsilon(0.01));
  CHECK(std::stod(t.rows[0][5]) == doctest::Approx(1.0).epsilon(0.005));

  const Result b2 = run_cli({"bounds", "--group", "C4", "--pairs", "2000", "--beta", "1,0.6"});
  CHECK(b2.code == cli::kOk);
  CHECK(b2.out == run_cli({"bounds", "--group", "C4", "--pairs", "2000", "--beta", "1,0.6"}).out);
  CHECK(run_cli({"bounds", "--group", "C4", "--pairs", "2000", "--beta", "1"}).code == cli::kDataError);

  const Result s = run_cli({"scatter", "--group", "C1", "--pairs", "50", "--seed", "4"});
  CHECK(s.code == cli::kOk);
  const auto st = parse(s.out);
  CHECK(st.rows.size() == 50);
  for (const auto& r : st.rows) {
    CHECK(std::stod(r[1]) == doctest::Approx(std::sqrt(2.0) * std::sqrt(1 - std::cos(std::stod(r[0])))).epsilon(1e-9));
  }
  CHECK(s.out == run_cli({"scatter", "--group", "C1", "--pairs", "50", "--seed", "4"}).out);
}

TEST_CASE("spec files and output files") {
  const auto dir = std::filesystem::temp_directory_path() / "symquot_cli_test";
  std::filesystem::create_directories(dir);
  const auto spec = dir / "c4.yaml";
  std::ofstream(spec) << "group: C4\nbeta: [1, 0.6]\ncentered: false\n";
  const auto out = dir / "out.csv";
  const Result r = run_cli({"embed", "--spec", spec.string(), "--output", out.string()}, "id,w,x,y,z\na,1,0,0,0\n");
  CHECK(r.code == cli::kOk);
  CHECK(r.out.empty());
  std::ifstream f(out);
  const auto t = cli::read_csv(f);
  CHECK(t.header.size() == 85);
  CHECK(std::stod(t.rows[0][1]) == doctest::Approx(1.0));
  CHECK(std::stod(t.rows[0][44]) == doctest::Approx(0.3));
  CHECK(run_cli({"embed", "--spec", (dir / "missing.yaml").string()}, "id,w,x,y,z\n").code == cli::kDataError);
  std::filesystem::remove_all(dir);
}
