// End-to-end checks of the command-line tool; argv[1] is the binary path.
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

namespace {

int failures = 0;

#define EXPECT(cond, msg)                            \
    do {                                             \
        if (!(cond)) {                               \
            std::fprintf(stderr, "FAIL: %s\n", msg); \
            ++failures;                              \
        }                                            \
    } while (0)

std::string g_cli;

int run(const std::string& args, const std::string& out_file) {
    const std::string cmd = g_cli + " " + args + " > " + out_file + " 2>&1";
    const int rc = std::system(cmd.c_str());
    return rc;
}

std::string slurp(const std::string& path) {
    std::ifstream in(path);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

// minimal CSV reader: rows of comma-separated doubles after a header line
std::vector<std::vector<double>> read_csv(const std::string& path) {
    std::ifstream in(path);
    std::vector<std::vector<double>> rows;
    std::string line;
    bool header = true;
    while (std::getline(in, line)) {
        if (header) {
            header = false;
            continue;
        }
        std::vector<double> row;
        std::stringstream ss(line);
        std::string tok;
        while (std::getline(ss, tok, ',')) row.push_back(std::stod(tok));
        if (!row.empty()) rows.push_back(row);
    }
    return rows;
}

}  // namespace

int main(int argc, char** argv) {
    if (argc < 2) {
        std::fprintf(stderr, "usage: test_cli <cli-binary>\n");
        return 2;
    }
    g_cli = argv[1];

    // no arguments: usage text, nonzero exit
    EXPECT(run("", "cli_noargs.txt") != 0, "no-args exit code");
    const std::string usage = slurp("cli_noargs.txt");
    EXPECT(usage.find("Usage") != std::string::npos ||
               usage.find("subcommand") != std::string::npos,
           "no-args usage text");

    // sphere profile CSV against the closed form
    EXPECT(run("profile --b 2 --x-end 1.9 --csv cli_p.csv --json cli_p.json "
               "--svg cli_p.svg",
               "cli_p.txt") == 0,
           "profile exit code");
    const auto rows = read_csv("cli_p.csv");
    EXPECT(rows.size() > 10, "profile row count");
    double dev = 0.0;
    for (const auto& r : rows) {
        dev = std::max(dev, std::abs(r[1] - std::sqrt(4.0 - r[0] * r[0])));
    }
    EXPECT(dev < 1e-8, "profile gamma matches the sphere");
    EXPECT(slurp("cli_p.svg").find("polyline") != std::string::npos,
           "profile svg emitted");
    EXPECT(slurp("cli_p.json").find("\"version\"") != std::string::npos,
           "json carries the version");

    // config file with flag override
    {
        std::ofstream cfg("cli_cfg.txt");
        cfg << "b=1\nx-end=1.2\ncsv=cli_c.csv\njson=cli_c.json\nsvg=cli_c.svg\n";
    }
    EXPECT(run("profile --config cli_cfg.txt --b 2", "cli_c.txt") == 0,
           "config run exit code");
    const std::string summary = slurp("cli_c.json");
    EXPECT(summary.find("\"b\": 2") != std::string::npos,
           "flag overrides the config file");
    EXPECT(summary.find("\"x_end\": 1.2") != std::string::npos,
           "config value survives");

    // unknown config key is rejected and named
    {
        std::ofstream cfg("cli_bad.txt");
        cfg << "b=1\nbogus-knob=3\n";
    }
    EXPECT(run("profile --config cli_bad.txt", "cli_bad_out.txt") != 0,
           "unknown key exit code");
    EXPECT(slurp("cli_bad_out.txt").find("bogus-knob") != std::string::npos,
           "unknown key named in the error");

    // p <= 2 rejected with a clear message
    EXPECT(run("lp-check --b 1 --p 1.5 --csv cli_l.csv --json cli_l.json "
               "--svg cli_l.svg",
               "cli_l.txt") != 0,
           "lp-check p=1.5 exit code");
    EXPECT(slurp("cli_l.txt").find("p must exceed 2") != std::string::npos,
           "lp-check error message");

    // taylor-audit carries the coefficient comparison row
    EXPECT(run("taylor-audit --b 2 --order 8 --csv cli_t.csv --json cli_t.json",
               "cli_t.txt") == 0,
           "taylor-audit exit code");
    const std::string audit = slurp("cli_t.json");
    EXPECT(audit.find("a4_reference") != std::string::npos, "a4 reference row");
    EXPECT(audit.find("ode_residual_slope") != std::string::npos,
           "residual slope row");

    if (failures == 0) std::printf("all CLI checks passed\n");
    return failures == 0 ? 0 : 1;
}
