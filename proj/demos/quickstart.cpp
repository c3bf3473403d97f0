// Build an envelope for a user-supplied formula, refine it, and draw
// guaranteed samples.

#include <cstdio>

#include "ivmc/ivmc.hpp"

int main() {
    using namespace ivmc;

    const box domain(interval(-5.0, 5.0), 1);
    const expr_dag target = expr_dag::parse("exp(-x1^2/2) + 0.5*exp(-(x1-3)^2/50)", 1);

    partition part(target, domain, refine_scheme::integral);
    part.refine(target, 99);

    const interval bounds = part.acceptance_bounds();
    std::printf("partition size %zu, acceptance lower bound %.4f\n", part.size(), bounds.lo());

    trio_sampler sampler(target, part, /*seed=*/42);
    int accepted = 0;
    double sum = 0.0;
    const int trials = 20000;
    for (int i = 0; i < trials; ++i) {
        const sample_record rec = sampler.next();
        if (rec.mrs_accepted) {
            ++accepted;
            sum += rec.point[0];
        }
    }
    std::printf("empirical acceptance %.4f, sample mean %.4f over %d accepts\n",
                double(accepted) / trials, sum / accepted, accepted);
    return 0;
}
