#include <doctest.h>

#include <sys/wait.h>

#include <array>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

namespace {

struct Result {
  int code = -1;
  std::string out;
};

Result run(const std::string& args, const std::string& env = "") {
  const std::string cmd = env + " " + std::string(BRWLAB_BINARY) + " " + args + " 2>&1";
  Result r;
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  std::array<char, 4096> buf{};
  std::size_t got = 0;
  while ((got = fread(buf.data(), 1, buf.size(), pipe)) > 0) r.out.append(buf.data(), got);
  const int status = pclose(pipe);
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

std::string read_file(const std::filesystem::path& p) {
  std::ifstream in(p);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::string first_line(const std::string& s) { return s.substr(0, s.find('\n')); }

std::filesystem::path scratch(const std::string& name) {
  const auto dir = std::filesystem::temp_directory_path() / "brwlab_cli_test";
  std::filesystem::create_directories(dir);
  return dir / name;
}

}  // namespace

TEST_CASE("rate reports the shift regime with its coefficient") {
  const Result r = run("rate --set \"(-inf,0]\" --p 0.8 --b 2");
  CHECK(r.code == 0);
  CHECK(r.out.find(",shift,sqrt_n,0.84162123") != std::string::npos);
  CHECK(r.out.find("0.58336738") != std::string::npos);
}

TEST_CASE("rate on the real line is degenerate") {
  const Result r = run("rate --set R --p 0.3");
  CHECK(r.code == 0);
  CHECK(r.out.find("degenerate") != std::string::npos);
  CHECK(r.out.find("\"(-inf,+inf)\",0.3,2,degenerate,sqrt_n,0,") != std::string::npos);
}

TEST_CASE("rate accepts several sets and probabilities") {
  const Result r = run("rate --set \"(-inf,0]\" --set \"[-1,1]\" --p 0.8 0.9 --b 2 3");
  CHECK(r.code == 0);
  std::size_t rows = 0;
  std::istringstream in(r.out);
  for (std::string line; std::getline(in, line);)
    if (!line.empty() && line[0] == '"') ++rows;
  CHECK(rows == 8);
}

TEST_CASE("parse errors exit 2 with the column") {
  const Result r = run("rate --set \"(0,]\" --p 0.5");
  CHECK(r.code == 2);
  CHECK(r.out.find("column 4") != std::string::npos);
  CHECK(run("rate --set \"(-inf,0]\" --p 1.5").code == 2);
  CHECK(run("simulate --n 10 --replicas 0").code == 2);
  CHECK(run("simulate --n 10 --law \"1:1.0\"").code == 2);
  CHECK(run("no-such-command").code == 2);
  CHECK(run("--help").code == 0);
}

TEST_CASE("infeasible ldp strategy exits 3 naming the deficit") {
  const Result r = run("ldp --set \"(-inf,0]\" --p 0.8 --kind shift --x 0.1 --n 100 --replicas 100");
  CHECK(r.code == 3);
  CHECK(r.out.find("varphi") != std::string::npos);
  CHECK(r.out.find("deficit") != std::string::npos);
}

TEST_CASE("enumerate prints the exact value") {
  const Result r = run("enumerate --n 2 --law \"2:1.0\" --set \"(-inf,0]\" --p 1");
  CHECK(r.code == 0);
  CHECK(r.out.find("0.390625") != std::string::npos);
  CHECK(r.out.find("25/64") != std::string::npos);
  CHECK(run("enumerate --n 6 --law \"2:1.0\" --set \"(-inf,0]\" --p 1").code == 3);
}

TEST_CASE("interp reports an exponent near 3/4") {
  const Result r = run("interp --alpha 0.75 --p 0.5 --delta 0.05");
  CHECK(r.code == 0);
  const auto pos = r.out.rfind(',');
  REQUIRE(pos != std::string::npos);
  const double alpha_hat = std::stod(r.out.substr(pos + 1));
  CHECK(alpha_hat >= 0.70);
  CHECK(alpha_hat <= 0.80);
}

TEST_CASE("every output carries seed, config hash and version") {
  const Result r = run("--seed 17 simulate --n 6 --replicas 2 --set \"(-inf,0]\"");
  CHECK(r.code == 0);
  const std::string head = first_line(r.out);
  CHECK(head.rfind("# brwlab 1.0.0 seed=17 config=", 0) == 0);
  CHECK(head.find("command=simulate") != std::string::npos);
  CHECK(r.out.find("replica,generation,total_log,normalized_total,mean_position,fraction_A") != std::string::npos);
  // a different parameter changes the hash, the thread count does not
  const std::string other = first_line(run("--seed 17 simulate --n 7 --replicas 2 --set \"(-inf,0]\"").out);
  const std::string threads = first_line(run("--seed 17 --threads 3 simulate --n 6 --replicas 2 --set \"(-inf,0]\"").out);
  auto hash = [](const std::string& h) { return h.substr(h.find("config="), 23); };
  CHECK(hash(head) != hash(other));
  CHECK(hash(head) == hash(threads));
}

TEST_CASE("identical seeds give byte-identical files") {
  const auto a = scratch("a.csv"), b = scratch("b.csv"), c = scratch("c.csv");
  const std::string args = " simulate --n 30 --replicas 4 --mode aggregated --set \"(-inf,0]\"";
  REQUIRE(run("--seed 5 -o " + a.string() + args).code == 0);
  REQUIRE(run("--seed 5 --threads 4 -o " + b.string() + args).code == 0);
  REQUIRE(run("--seed 6 -o " + c.string() + args).code == 0);
  CHECK(read_file(a) == read_file(b));
  CHECK(read_file(a) != read_file(c));
}

TEST_CASE("seed from the environment and config files") {
  const Result env = run("simulate --n 4 --replicas 1", "BRWLAB_SEED=99");
  CHECK(first_line(env.out).find("seed=99") != std::string::npos);
  const Result flag = run("--seed 3 simulate --n 4 --replicas 1", "BRWLAB_SEED=99");
  CHECK(first_line(flag.out).find("seed=3") != std::string::npos);

  const auto cfg = scratch("run.toml");
  std::ofstream(cfg) << "seed = 41\n[rate]\nset = [\"[-1,1]\"]\np = [0.9]\n";
  const Result r = run("--config " + cfg.string() + " rate");
  CHECK(r.code == 0);
  CHECK(first_line(r.out).find("seed=41") != std::string::npos);
  CHECK(r.out.find("\"[-1,1]\",0.9,2,dilation") != std::string::npos);
  const Result over = run("--config " + cfg.string() + " rate --p 0.5");
  CHECK(over.out.find("\"[-1,1]\",0.5,2,") != std::string::npos);
}

TEST_CASE("snapshot output round-trips the final measure") {
  const auto snap = scratch("snap.txt");
  REQUIRE(run("simulate --n 5 --replicas 1 --law \"2:1.0\" --snapshot " + snap.string()).code == 0);
  const std::string text = read_file(snap);
  CHECK(text.rfind("# generation=5", 0) == 0);
  long total = 0;
  std::istringstream in(text);
  for (std::string line; std::getline(in, line);) {
    if (line.empty() || line[0] == '#') continue;
    long x = 0, c = 0;
    std::istringstream(line) >> x >> c;
    CHECK((x + 5) % 2 == 0);
    total += c;
  }
  CHECK(total == 32);
}

TEST_CASE("probe and scan subcommands run") {
  const Result conc = run("probe-concentration --set \"(-inf,0]\" --N 10 40 --delta 0.05 --n 8 --replicas 50");
  CHECK(conc.code == 0);
  const Result typ = run("probe-typical --set \"(-inf,0]\" --t 1 --n 16 --replicas 20");
  CHECK(typ.code == 0);
  const Result scan = run("clt-scan --set \"(-inf,0]\" --n 25 100 400");
  CHECK(scan.code == 0);
  CHECK(scan.out.find("400,") != std::string::npos);
}
