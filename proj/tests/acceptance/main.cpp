#include <cstdio>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "cli.hpp"

namespace {

struct Run {
    int code = 0;
    std::string out;
};

Run selfcheck(const std::string& seed, const std::string& workers) {
    std::ostringstream out, err;
    const int code = steinfx::cli::run_cli({"selfcheck", "--seed", seed, "--workers", workers, "--check"}, out, err);
    if (!err.str().empty()) std::cerr << err.str();
    return {code, out.str()};
}

int count_passes(const std::string& report) {
    int n = 0;
    std::istringstream in(report);
    for (std::string line; std::getline(in, line);) n += line.rfind("[PASS] C", 0) == 0 ? 1 : 0;
    return n;
}

}  // namespace

int main(int argc, char** argv) {
    const std::string seed = argc > 1 ? argv[1] : "0";
    const std::string wide = argc > 2 ? argv[2] : "8";

    const Run serial = selfcheck(seed, "1");
    std::cout << serial.out;
    const Run parallel = selfcheck(seed, wide);
    const bool same = serial.out == parallel.out;
    std::cout << (same ? "[PASS]" : "[FAIL]") << " C12 selfcheck report is byte-identical for --workers 1 and --workers "
              << wide << '\n';

    const int passed = count_passes(serial.out) + (same ? 1 : 0);
    std::cout << '\n' << passed << " of 12 criteria passed\n";
    return passed == 12 && serial.code == 0 ? 0 : 1;
}
