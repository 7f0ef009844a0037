// Runs the twelve acceptance criteria and prints one PASS/FAIL line each.
// Exit status is nonzero if any criterion fails.

#include <cstdio>
#include <cstdlib>
#include <string>

#include "zak/checks.hpp"

int main(int argc, char** argv) {
    zak::CheckContext ctx;
    if (argc > 1) ctx.seed = std::strtoull(argv[1], nullptr, 10);
    std::printf("seed %llu\n", static_cast<unsigned long long>(ctx.seed));
    bool ok = true;
    const auto& checks = zak::all_checks();
    for (std::size_t i = 0; i < checks.size(); ++i) {
        const auto r = zak::run_check(checks[i], ctx, int(i) + 1);
        std::printf("criterion %2d  %-52s %s  (%.1f s)\n", r.number, r.title.c_str(), r.pass() ? "PASS" : "FAIL", r.seconds);
        for (const auto& row : r.rows)
            if (!row.pass())
                std::printf("    %s: residual %.3e > tolerance %.1e  [%s]\n", row.name.c_str(), row.residual, row.tolerance,
                            row.identity.c_str());
        ok = ok && r.pass();
    }
    return ok ? 0 : 1;
}
