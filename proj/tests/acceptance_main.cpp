// Acceptance runner: one line per criterion, exit 0 iff all requested pass.
// Usage: acceptance [--only N]...
#include <cstdio>
#include <cstdlib>
#include <cstring>
#include <vector>

#include "fracb/acceptance.hpp"

int main(int argc, char** argv) {
    std::vector<int> only;
    for (int i = 1; i < argc; ++i) {
        if (std::strcmp(argv[i], "--only") == 0 && i + 1 < argc) {
            only.push_back(std::atoi(argv[++i]));
        } else {
            std::fprintf(stderr, "usage: %s [--only N]...\n", argv[0]);
            return 2;
        }
    }
    const auto results = fracb::run_acceptance(only);
    bool all = !results.empty();
    for (const auto& r : results) {
        std::printf("%s\n", fracb::format_criterion(r).c_str());
        std::fflush(stdout);
        all = all && r.pass;
    }
    return all ? 0 : 1;
}
