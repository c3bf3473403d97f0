// Acceptance growth under refinement for a built-in benchmark target.

#include <cstdio>

#include "ivmc/ivmc.hpp"

int main() {
    using namespace ivmc;

    const auto spec = targets::g5();
    const expr_dag target = targets::build_target(spec);

    const std::vector<std::size_t> sizes{1, 10, 100, 1000};
    const auto curve = acceptance_sweep(target, spec.domain, refine_scheme::integral, sizes,
                                        sweep_caps{}, /*seed=*/1);
    std::printf("%14s %12s %12s\n", "partition", "guaranteed", "empirical");
    for (const auto& p : curve)
        std::printf("%14zu %12.5f %12.5f\n", p.partition_size, p.guaranteed_lower_bound,
                    p.empirical_acceptance);
    return 0;
}
