#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "doctest.h"
#include "tperc/records.hpp"

namespace fs = std::filesystem;

namespace {

struct Run {
    int status = -1;
    std::string out;
};

Run cli(const std::string& args) {
    const fs::path dir = fs::temp_directory_path() / "tperc_cli_test";
    fs::create_directories(dir);
    const fs::path out = dir / "stdout.txt";
    const std::string cmd = "cd '" + dir.string() + "' && '" TPERC_CLI "' " + args + " > '" + out.string() + "' 2>/dev/null";
    const int raw = std::system(cmd.c_str());
    Run r;
    r.status = WIFEXITED(raw) ? WEXITSTATUS(raw) : -1;
    std::ifstream in(out);
    std::stringstream s;
    s << in.rdbuf();
    r.out = s.str();
    return r;
}

fs::path scratch(const std::string& name) { return fs::temp_directory_path() / "tperc_cli_test" / name; }

}  // namespace

TEST_CASE("formula prints the symmetric Cardy value") {
    const auto r = cli("formula --op cardy --lambda 0.5 --record none");
    CHECK(r.status == 0);
    CHECK(r.out == "op,argument,value,abs_error_bound\r\ncardy,0.5,0.5," + r.out.substr(r.out.rfind(',') + 1));
}

TEST_CASE("exit codes") {
    CHECK(cli("formula --op cardy --lambda 0.5 --no-such-flag").status == 2);
    CHECK(cli("no-such-command").status == 2);
    CHECK(cli("").status == 2);
    CHECK(cli("formula --op cardy --lambda 1.5 --record none").status == 3);
    CHECK(cli("formula --op hyp3f2 --x 0.99 --record none").status == 3);
    CHECK(cli("formula --op hyp3f2 --x 0.99 --lambda-cap 0.995 --record none").status == 0);
    CHECK(cli("simulate --domain diagonal --record none").status == 2);
    CHECK(cli("simulate --n 64 --truncation 8 --trials 10 --record none").status == 2);
    CHECK(cli("--help").status == 0);
}

TEST_CASE("window tables are byte-identical for a fixed seed") {
    const auto a = cli("windows --domain half --n 256 --eps 1.0 --trials 300 --seed 7 --record none");
    const auto b = cli("windows --domain half --n 256 --eps 1.0 --trials 300 --seed 7 --workers 2 --record none");
    CHECK(a.status == 0);
    CHECK(a.out == b.out);
    CHECK(a.out.rfind("domain,n,eps,truncation,trials,quantity,window,lo,hi,mean,std_error\r\n", 0) == 0);
    const auto c = cli("windows --domain half --n 256 --eps 1.0 --trials 300 --seed 8 --record none");
    CHECK(a.out != c.out);
}

TEST_CASE("config files sit between flags and defaults") {
    const auto kv = scratch("c.txt");
    std::ofstream(kv) << "# comment\ndomain = full\nn = 8,16\ntrials = 50\nseed = 3\n";
    const auto from_file = cli("simulate --config " + kv.string() + " --record none");
    CHECK(from_file.status == 0);
    CHECK(from_file.out.find("\r\nfull,16,256,50,") != std::string::npos);
    const auto flag_wins = cli("simulate --config " + kv.string() + " --trials 60 --record none");
    CHECK(flag_wins.out.find("\r\nfull,16,256,60,") != std::string::npos);

    const auto js = scratch("c.json");
    std::ofstream(js) << R"({"domain": "full", "n": [8, 16], "trials": 50, "seed": 3})";
    CHECK(cli("simulate --config " + js.string() + " --record none").out == from_file.out);

    std::ofstream(scratch("bad.txt")) << "frobnicate = 1\n";
    CHECK(cli("simulate --config " + scratch("bad.txt").string() + " --record none").status == 2);
}

TEST_CASE("runs append records that report and fit consume") {
    const auto rec = scratch("runs.jsonl");
    fs::remove(rec);
    const std::string r = " --record " + rec.string();
    for (const char* n : {"32", "64", "128"}) {
        CHECK(cli(std::string("windows --domain half --eps 1,0.5 --trials 200 --n ") + n + r).status == 0);
    }
    CHECK(cli("windows --domain half --eps 1,0.5 --trials 200 --n 32 --truncation 512" + r).status == 0);
    CHECK(cli("simulate --domain half --n 8,16,32,64,128 --trials 200" + r).status == 0);
    CHECK(cli("formula --op watts --lambda 0.3" + r).status == 0);
    const auto records = tperc::read_records(rec);
    CHECK(records.size() == 6);
    CHECK(records.back().command == "formula");

    const auto summary = scratch("summary.json");
    const auto rep = cli("report --domain half --from " + rec.string() + " --summary " + summary.string() + r);
    CHECK(rep.status == 0);
    CHECK(rep.out.find("\r\nn_fit,") != std::string::npos);
    CHECK(rep.out.find("\r\nextrapolated,") != std::string::npos);
    // The doubled-truncation run only supplies doubling deltas for n = 32.
    CHECK(rep.out.find("L,32,1,256,,,,L_hat,") != std::string::npos);
    CHECK(rep.out.find("L,32,1,512,") == std::string::npos);
    CHECK(fs::exists(summary));

    const auto fit = cli("fit --domain half --from " + rec.string() + r);
    CHECK(fit.status == 0);
    CHECK(fit.out.rfind("parameter,value,std_error\r\nA,", 0) == 0);
    CHECK(cli("report --domain full --from " + rec.string() + r).status == 2);
    CHECK(tperc::read_records(rec).size() == 8);
}

TEST_CASE("verify exits cleanly on the enumeration suite") {
    const auto v = cli("verify --suite enumeration --mc-trials 2000 --record none");
    CHECK(v.status == 0);
    CHECK(v.out.find(",false,") == std::string::npos);
}
