#include <cstdio>
#include <cstdlib>
#include <string>

#include "criteria.hpp"

// Usage: acceptance [criterion ids...]
int main(int argc, char **argv)
{
    std::vector<int> only;
    for (int i = 1; i < argc; ++i) {
        only.push_back(std::atoi(argv[i]));
    }
    int failed = 0;
    blochkit::acceptance::run_criteria(only, [&](const blochkit::acceptance::CriterionResult &r) {
        std::printf("%s %2d %s (%.1fs): %s\n", r.pass ? "PASS" : "FAIL", r.id, r.title.c_str(), r.seconds,
                    r.detail.c_str());
        std::fflush(stdout);
        failed += r.pass ? 0 : 1;
    });
    return failed == 0 ? 0 : 1;
}
