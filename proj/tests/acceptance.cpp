// Runs every acceptance criterion and prints one line per criterion.

#include <cstdlib>
#include <iostream>
#include <string>

#include "axkatz_suite/criteria.hpp"

int main(int argc, char** argv) {
    axkatz::suite::Config cfg;
    std::string which = "all";
    for (int i = 1; i < argc; ++i) {
        const std::string arg = argv[i];
        if (arg == "--seed" && i + 1 < argc)
            cfg.seed = std::stoull(argv[++i]);
        else
            which = arg;
    }
    const bool ok = axkatz::suite::run(which, cfg, [](const axkatz::suite::CriterionResult& r) {
        std::cout << (r.pass ? "PASS" : "FAIL") << "  criterion " << r.id << "  " << r.name << "  ("
                  << r.checks << " checks, " << r.failures << " failed, " << r.seconds << " s";
        if (r.limit_seconds) std::cout << " of " << *r.limit_seconds << " s";
        std::cout << ")\n";
        for (const auto& f : r.failed) std::cout << "      " << f << "\n";
        std::cout.flush();
    });
    return ok ? EXIT_SUCCESS : EXIT_FAILURE;
}
