#include <algorithm>
#include <array>
#include <cstdio>
#include <filesystem>
#include <string>

#include <sys/wait.h>
#include <unistd.h>

#include <doctest.h>
#include <json.hpp>

namespace fs = std::filesystem;

namespace {

struct Run {
  int code = -1;
  std::string out;
};

// Runs the CLI with stderr discarded.
Run qlab(const std::string& args, const std::string& env = "") {
  std::string cmd = env + " " + std::string(QLAB_BIN) + " " + args + " 2>/dev/null";
  Run r;
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  std::array<char, 4096> buf{};
  std::size_t n = 0;
  while ((n = fread(buf.data(), 1, buf.size(), pipe)) > 0) r.out.append(buf.data(), n);
  int status = pclose(pipe);
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

fs::path scratch(const std::string& name) {
  fs::path p = fs::temp_directory_path() / ("qlab-cli-" + name + "-" + std::to_string(::getpid()));
  fs::remove_all(p);
  return p;
}

// JSON lines with the timing field removed.
std::string strip_timing(const std::string& lines) {
  std::string out;
  std::size_t start = 0;
  while (start < lines.size()) {
    std::size_t end = lines.find('\n', start);
    auto j = nlohmann::ordered_json::parse(lines.substr(start, end - start));
    j.erase("elapsed_ms");
    out += j.dump() + "\n";
    start = end + 1;
  }
  return out;
}

}  // namespace

TEST_SUITE("cli") {
  TEST_CASE("measure") {
    auto r = qlab("measure tt:2:0111 --measures D,RS,RC");
    CHECK(r.code == 0);
    CHECK(r.out == "tt:2:0111\n  D = 2\n  RS = 3/2\n  RC = 2\n");
    r = qlab("measure tt:1:01 --measures RS --format csv");
    CHECK(r.out == "function,RS\ntt:1:01,1\n");
    r = qlab("measure tt:2:0000 --measures RS,DS --format json");
    auto j = nlohmann::ordered_json::parse(r.out);
    CHECK(j["measures"]["RS"] == "0/1");
    CHECK(j["measures"]["DS"] == "0/1");
    CHECK(j["engine_version"].is_string());
    r = qlab("measure tt:2:0111 --measures Rbar,Rwc --eps 1/4 --format csv");
    CHECK(r.out == "function,Rbar(1/4),Rwc(1/4)\ntt:2:0111,1,2\n");
  }

  TEST_CASE("exit codes") {
    CHECK(qlab("measure tt:2:012 --measures D").code == 2);
    CHECK(qlab("measure tt:2:0111 --measures Q").code == 2);
    CHECK(qlab("measure tt:2:0111 --bogus").code == 2);
    CHECK(qlab("verify --theorems T9.9 --family all-total:2").code == 2);
    CHECK(qlab("verify --theorems T4.4 --family all-total:2").code == 2);
    CHECK(qlab("measure tt:5:01111111111111111111111111111111 --measures D").code == 3);
    CHECK(qlab("measure tt:3:01111111 --measures R0 --limit-domain 4").code == 3);
    CHECK(qlab("verify --theorems T8.1 --family all-total:5").code == 3);
    CHECK(qlab("scan --family all-total:1 --output /nonexistent-dir/x.csv").code == 4);
    CHECK(qlab("measure tt:2:0111 --cache-dir /proc/qlab-cache").code == 4);
    CHECK(qlab("construct sab tt:2:0000").code == 0);
    CHECK(qlab("bounds majority --eps 1/3 --k 4").code == 2);
  }

  TEST_CASE("verify") {
    auto r = qlab("verify --theorems T8.1 --family all-total:2");
    CHECK(r.code == 0);
    CHECK(r.out.find("T8.1: 16/16 pass") != std::string::npos);
    r = qlab("verify --theorems T8.1,CHAIN --family all-total:2 --format json");
    auto j = nlohmann::ordered_json::parse(r.out);
    CHECK(j["all_pass"] == true);
    CHECK(j["results"].size() == 2);
    CHECK(j["results"][1]["checked"] == 16);
  }

  TEST_CASE("scan") {
    auto r = qlab("scan --family all-total:2 --measures D,RS,RC --format csv");
    CHECK(r.code == 0);
    CHECK(std::count(r.out.begin(), r.out.end(), '\n') == 17);
    CHECK(r.out.find("\ntt:2:0111,2,3/2,2\n") != std::string::npos);
    r = qlab("scan --family all-total:1 --measures D,RS --format csv");
    CHECK(r.out.find("\ntt:1:01,1,1\n") != std::string::npos);
    r = qlab("scan --family list: --measures D,RS --format csv");
    CHECK(r.out == "function,D,RS\n");

    fs::path out = scratch("scan") += ".jsonl";
    CHECK(qlab("scan --family all-total:2 --measures RS --format json --output " + out.string()).code == 0);
    CHECK(fs::file_size(out) > 0);
    fs::remove(out);
  }

  TEST_CASE("job count and cache leave output unchanged") {
    const std::string args = "scan --family all-total:2 --measures D,RS,RSu,RC,'Rbar(1/4)',Rwc --format json";
    std::string base = strip_timing(qlab(args).out);
    CHECK(strip_timing(qlab(args + " --jobs 3").out) == base);
    fs::path dir = scratch("cache");
    CHECK(strip_timing(qlab(args + " --cache-dir " + dir.string()).out) == base);
    CHECK(!fs::is_empty(dir));
    CHECK(strip_timing(qlab(args + " --cache-dir " + dir.string() + " --jobs 2").out) == base);
    CHECK(strip_timing(qlab(args, "QLAB_CACHE_DIR=" + dir.string()).out) ==
          base);
    fs::remove_all(dir);
  }

  TEST_CASE("construct") {
    CHECK(qlab("construct sab tt:1:01").out == "ext:1:{*=0,+=1}\n");
    CHECK(qlab("construct usab tt:2:0111").out == "ext:2:{0*=0,0+=1,*0=0,+0=1}\n");
    CHECK(qlab("construct compose tt:2:0111 tt:2:0001").out.rfind("tt:4:", 0) == 0);
    CHECK(qlab("construct index 3").out == "tt:3:00110101\n");
    CHECK(qlab("construct sum tt:1:01 2").code == 0);
    CHECK(qlab("construct index-sum tt:1:01 1").out == "tt:3:00110101\n");
    CHECK(qlab("construct sab tt:2:0000").out == "(empty domain)\n");
    CHECK(qlab("construct nope tt:1:01").code == 2);
  }

  TEST_CASE("bounds") {
    CHECK(qlab("bounds majority --eps 1/3 --k 3").out.find("majority_error = 7/27") != std::string::npos);
    auto j = nlohmann::ordered_json::parse(qlab("bounds amplify --eps 1/3 --target 7/27 --format json").out);
    CHECK(j["exact_count"] == 3);
    CHECK(qlab("bounds truncate --expected 10 --delta 1/3").out.find("query_cap = 30") != std::string::npos);
    CHECK(qlab("bounds repeat --expected 3 --eps 2/3").out.find("expected_cost = 9") != std::string::npos);
    CHECK(qlab("bounds worstcase --eps 1/3").out.find("factor = 10") != std::string::npos);
    CHECK(qlab("bounds truncation-factor --eps 0 --delta 1/3").out.find("factor = 3/2") != std::string::npos);
  }
}
