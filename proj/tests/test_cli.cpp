#define DOCTEST_CONFIG_IMPLEMENT
#include <doctest.h>

#include <sys/wait.h>
#include <unistd.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include <json.hpp>

namespace {

std::string g_cli;
std::filesystem::path g_tmp;

struct Outcome {
    int exit_code = -1;
    std::string out;
    std::string err;
};

std::string slurp(const std::filesystem::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

Outcome run_cli(const std::string& args) {
    static int counter = 0;
    const auto out_file = g_tmp / ("out" + std::to_string(counter));
    const auto err_file = g_tmp / ("err" + std::to_string(counter));
    ++counter;
    const std::string cmd = "'" + g_cli + "' " + args + " > '" + out_file.string() + "' 2> '" +
                            err_file.string() + "'";
    const int status = std::system(cmd.c_str());
    Outcome o;
    o.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    o.out = slurp(out_file);
    o.err = slurp(err_file);
    return o;
}

void write_file(const std::filesystem::path& p, const std::string& contents) {
    std::ofstream out(p, std::ios::binary);
    out << contents;
}

}  // namespace

TEST_CASE("bench --help lists the standard defaults") {
    const Outcome help = run_cli("bench --help");
    CHECK(help.exit_code == 0);
    CHECK(help.out.find("--delta0") != std::string::npos);
    CHECK(help.out.find("0.01") != std::string::npos);
    CHECK(help.out.find("--max-iters") != std::string::npos);
    CHECK(help.out.find("100") != std::string::npos);
}

TEST_CASE("bench report echoes the default config") {
    const auto report_path = g_tmp / "defaults.json";
    const Outcome r = run_cli("bench --synth q=8,M=3,n=7,k=2,noise=0.05,sep=4 --seed 1 --out '" +
                              report_path.string() + "'");
    REQUIRE(r.exit_code == 0);
    const auto doc = nlohmann::json::parse(slurp(report_path));
    CHECK(doc["config"]["delta0"].get<double>() == 0.01);
    CHECK(doc["config"]["max_iters"].get<int>() == 100);
    CHECK(doc["config"]["train_per_class"].get<int>() == 5);
    CHECK(doc["results"].contains("prc"));
    CHECK(doc["results"].contains("dprc"));
    CHECK(doc["results"].contains("lrc"));
    CHECK(doc["results"].contains("nn"));

    // confusion rows sum to each class's test count (7 per class, 5 in train)
    for (const auto& [name, entry] : doc["results"].items()) {
        std::size_t total = 0;
        for (const auto& row : entry["confusion"]) {
            std::size_t row_sum = 0;
            for (const auto& cell : row) row_sum += cell.get<std::size_t>();
            CHECK(row_sum == 2);
            total += row_sum;
        }
        CHECK(total == entry["total"].get<std::size_t>());
    }
}

TEST_CASE("bench is byte-identical across repeated runs") {
    const auto r1 = g_tmp / "rep1.json";
    const auto r2 = g_tmp / "rep2.json";
    const std::string args = "bench --synth q=10,M=4,n=8,k=2,noise=0.1,sep=3 --seed 9 --out ";
    CHECK(run_cli(args + "'" + r1.string() + "'").exit_code == 0);
    CHECK(run_cli(args + "'" + r2.string() + "'").exit_code == 0);
    const std::string a = slurp(r1);
    CHECK(!a.empty());
    CHECK(a == slurp(r2));
}

TEST_CASE("nn reaches full accuracy when test samples duplicate the training set") {
    const auto csv = g_tmp / "dup.csv";
    write_file(csv,
               "a,1,0\na,1,0\n"
               "b,5,5\nb,5,5\n");
    const auto report_path = g_tmp / "dup.json";
    const Outcome r = run_cli("bench --data '" + csv.string() +
                              "' --methods nn --train-per-class 1 --seed 0 --out '" +
                              report_path.string() + "'");
    REQUIRE(r.exit_code == 0);
    const auto doc = nlohmann::json::parse(slurp(report_path));
    CHECK(doc["results"]["nn"]["accuracy"].get<double>() == 1.0);
}

TEST_CASE("prc beats or matches nn on subspace-structured data") {
    const auto report_path = g_tmp / "subspace.json";
    const Outcome r = run_cli(
        "bench --synth q=20,M=5,n=10,k=3,noise=0.05,sep=5 --seed 7 --train-per-class 5 "
        "--methods prc,nn --out '" +
        report_path.string() + "'");
    REQUIRE(r.exit_code == 0);
    const auto doc = nlohmann::json::parse(slurp(report_path));
    CHECK(doc["results"]["prc"]["accuracy"].get<double>() >=
          doc["results"]["nn"]["accuracy"].get<double>());
}

TEST_CASE("trace with delta0=0 runs the full budget") {
    const auto trace_path = g_tmp / "full.csv";
    const Outcome r = run_cli(
        "trace --synth q=6,M=2,n=8,k=2,noise=0.2,sep=2 --seed 3 --query random "
        "--delta0 0 --max-iters 25 --out '" +
        trace_path.string() + "'");
    REQUIRE(r.exit_code == 0);
    const std::string text = slurp(trace_path);
    const auto lines = std::count(text.begin(), text.end(), '\n');
    CHECK(lines == 26);  // header + exactly max_iters rows
    CHECK(text.rfind("iteration,distance,delta\n", 0) == 0);
}

TEST_CASE("trace emits a single zero-distance row for an exact duplicate query") {
    const auto csv = g_tmp / "exact.csv";
    // class 'a' holds a duplicated sample; when the held-out pick is one of
    // the duplicates the query exactly matches a remaining model point
    write_file(csv,
               "a,1,1,0\na,1,1,0\na,4,0,1\na,0,3,2\n"
               "b,9,9,9\nb,8,8,8\n");
    bool saw_exact = false;
    for (int seed = 0; seed < 10 && !saw_exact; ++seed) {
        const auto trace_path = g_tmp / ("exact" + std::to_string(seed) + ".csv");
        const Outcome r = run_cli("trace --data '" + csv.string() + "' --class-id 0 --seed " +
                                  std::to_string(seed) + " --out '" + trace_path.string() + "'");
        REQUIRE(r.exit_code == 0);
        const std::string text = slurp(trace_path);
        if (text == "iteration,distance,delta\n1,0,0\n") saw_exact = true;
    }
    CHECK(saw_exact);
}

TEST_CASE("trace is byte-identical across repeated runs") {
    const auto t1 = g_tmp / "t1.csv";
    const auto t2 = g_tmp / "t2.csv";
    const std::string args =
        "trace --synth q=30,M=2,n=10,k=3,noise=0.3,sep=1 --seed 11 --query random --out ";
    CHECK(run_cli(args + "'" + t1.string() + "'").exit_code == 0);
    CHECK(run_cli(args + "'" + t2.string() + "'").exit_code == 0);
    const std::string a = slurp(t1);
    CHECK(!a.empty());
    CHECK(a == slurp(t2));
}

TEST_CASE("exit codes distinguish usage, data and numeric failures") {
    CHECK(run_cli("bench").exit_code == 2);                       // no data source
    CHECK(run_cli("bench --bogus-flag").exit_code == 2);          // unknown flag
    CHECK(run_cli("bench --data /nonexistent.csv").exit_code == 3);
    // PCA dimension larger than the data permits -> numeric error
    CHECK(run_cli("bench --synth q=4,M=2,n=3,k=1,noise=0,sep=1 --pca-dim 9").exit_code == 4);
}

int main(int argc, char** argv) {
    if (argc < 2) {
        std::fprintf(stderr, "usage: test_cli <path-to-prcbench>\n");
        return 1;
    }
    g_cli = argv[1];
    g_tmp = std::filesystem::temp_directory_path() /
            ("prc_cli_test_" + std::to_string(::getpid()));
    std::filesystem::create_directories(g_tmp);
    doctest::Context context;
    const int rc = context.run();
    std::filesystem::remove_all(g_tmp);
    return rc;
}
