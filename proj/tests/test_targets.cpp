#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <sstream>
#include <vector>

#include "ivmc/quadrature.hpp"
#include "ivmc/target_config.hpp"
#include "ivmc/targets.hpp"

#include "support/stats.hpp"

using namespace ivmc;
using namespace ivmc::targets;

TEST_CASE("named mixture parameters") {
    const auto s1 = g1();
    REQUIRE(s1.components.size() == 1);
    CHECK(s1.components[0].weight == 1.0);
    CHECK(s1.components[0].mean[0] == -5.0);
    CHECK(s1.components[0].stdev[0] == 1.0);
    CHECK(s1.domain[0] == interval(-100, 100));

    const auto s2 = g2();
    REQUIRE(s2.components.size() == 2);
    CHECK(s2.components[0].weight + s2.components[1].weight == 1.0);

    const auto s5 = g5();
    REQUIRE(s5.components.size() == 5);
    double wsum = 0.0;
    for (const auto& c : s5.components) wsum += c.weight;
    CHECK(wsum == 1.0);
    CHECK(g5hat().domain[0] == interval(-1e100, 1e100));
}

TEST_CASE("mixture DAG matches the direct formula") {
    const auto spec = g5();
    const expr_dag f = build_target(spec);
    for (double x : {-15.0, -5.0, 3.0, 6.0, 50.0, 0.0, 42.17, -99.0}) {
        const std::vector<double> pt{x};
        const double dag = f.eval_point(pt);
        const double ref = reference_density(spec, pt);
        REQUIRE(dag == Catch::Approx(ref).epsilon(1e-12));
    }
}

TEST_CASE("levy DAG matches the direct formula") {
    levy_spec spec;
    const expr_dag f = build_target(spec);
    for (auto [x, y] : {std::pair{-1.3, -0.8}, {0.0, 0.0}, {10.0, -20.0}, {-50.0, 99.0}}) {
        const std::vector<double> pt{x, y};
        REQUIRE(f.eval_point(pt) == Catch::Approx(reference_density(spec, pt)).epsilon(1e-12));
    }
    // the shape is strictly positive on the domain
    rng r(5);
    for (int i = 0; i < 1000; ++i) {
        const std::vector<double> pt{r.uniform01() * 200.0 - 100.0,
                                     r.uniform01() * 200.0 - 100.0};
        REQUIRE(f.eval_point(pt) > 0.0);
    }
}

TEST_CASE("rosenbrock shape is 1 at the ridge point") {
    rosenbrock_spec spec;
    spec.dimension = 4;
    spec.domain = box(interval(-10, 10), 4);
    const expr_dag f = build_target(spec);
    CHECK(f.eval_point(std::vector<double>{1, 1, 1, 1}) == 1.0);
    CHECK(f.eval_point(std::vector<double>{0, 0, 0, 0}) ==
          Catch::Approx(std::exp(-3.0)).epsilon(1e-13));
}

TEST_CASE("needle DAG matches the direct formula") {
    needle_spec spec;
    spec.stdev2 = 0.01;
    const expr_dag f = build_target(spec);
    for (auto pt : {std::vector<double>{0, 0, 0}, {1, 1, 1}, {0.5, 0.5, 0.5}, {-9, 9, 0}}) {
        REQUIRE(f.eval_point(pt) == Catch::Approx(reference_density(spec, pt)).epsilon(1e-12));
    }
}

TEST_CASE("witchs hat geometry") {
    witchs_hat_spec spec; // D=2, center (2,2), R=1, m=0.05 over [-10,10]^2
    const witchs_hat_target hat(spec);
    CHECK(hat.hat_height() == Catch::Approx(3.0 / 3.14159265358979324).epsilon(1e-12));
    CHECK(hat.brim_level() == Catch::Approx(0.95 / 400.0).epsilon(1e-12));

    // point evaluation: peak at the center, brim far away, continuous at the rim
    const double peak = hat.eval_point(std::vector<double>{2.0, 2.0});
    CHECK(peak == Catch::Approx(0.05 * hat.hat_height() + hat.brim_level()).epsilon(1e-12));
    CHECK(hat.eval_point(std::vector<double>{-5.0, 7.0}) == hat.brim_level());
    const double at_rim = hat.eval_point(std::vector<double>{3.0, 2.0});
    CHECK(at_rim == Catch::Approx(hat.brim_level()).epsilon(1e-12));

    // box extension: the three cases all contain sampled point values
    rng r(7);
    for (const auto& side : {interval(1.8, 2.2), interval(5.0, 6.0), interval(0.0, 4.0)}) {
        const box X({side, side});
        const interval enc = hat.eval_box(X);
        for (int i = 0; i < 200; ++i) {
            std::vector<double> pt{side.lo() + r.uniform01() * diameter(side),
                                   side.lo() + r.uniform01() * diameter(side)};
            REQUIRE(enc.contains(hat.eval_point(pt)));
        }
    }

    // normalization: the 2-D shape integrates to 1 (cone plus brim)
    const double integral = simpson(
        [&](double x) {
            return simpson(
                [&](double y) {
                    return hat.eval_point(std::vector<double>{x, y});
                },
                -10.0, 10.0, 2000);
        },
        -10.0, 10.0, 2000);
    CHECK(integral == Catch::Approx(1.0).margin(1e-3));
}

TEST_CASE("every built-in target has a finite enclosure over its domain") {
    const auto check_finite = [](const auto& fn, const box& domain) {
        const interval enc = fn.eval_box(domain);
        REQUIRE(std::isfinite(enc.hi()));
        REQUIRE(enc.hi() > 0.0);
    };
    for (const auto& spec : {g1(), g2(), g5(), g5p(), g5pp(), g5hat()})
        check_finite(build_target(spec), spec.domain);
    check_finite(build_target(levy_spec{}), levy_spec{}.domain);
    check_finite(build_target(needle_spec{}), needle_spec{}.domain);
    check_finite(build_target(rosenbrock_spec{}), rosenbrock_spec{}.domain);
    check_finite(witchs_hat_target(witchs_hat_spec{}), witchs_hat_spec{}.domain);
}

TEST_CASE("quadrature oracle recovers known means") {
    // needle: equal-mass components at 0 and 1 per axis
    needle_spec nd;
    const auto nm = true_mean_oracle(nd, 4000);
    for (double v : nm) CHECK(v == Catch::Approx(0.5).margin(1e-6));

    // single truncated Gaussian centered far from the walls
    const auto m1 = true_mean_oracle(g1(), 4000);
    CHECK(m1[0] == Catch::Approx(-5.0).margin(1e-8));

    // two-component mixture against the closed-form truncated means
    const auto s2 = g2();
    const auto m2 = true_mean_oracle(s2, 4000);
    double mass = 0.0, mean = 0.0;
    for (const auto& c : s2.components) {
        const double cm = test_stats::gaussian_mass(c.mean[0], c.stdev[0], -100.0, 100.0);
        mass += c.weight * cm;
        mean += c.weight * cm *
                test_stats::truncated_gaussian_mean(c.mean[0], c.stdev[0], -100.0, 100.0);
    }
    mean /= mass;
    CHECK(m2[0] == Catch::Approx(mean).epsilon(1e-9));

    // witchs hat: mixing * center + (1 - mixing) * box midpoint, exactly
    witchs_hat_spec wh;
    const auto wm = true_mean_oracle(wh, 1500);
    CHECK(wm[0] == Catch::Approx(0.05 * 2.0).margin(2e-4));
    CHECK(wm[1] == Catch::Approx(0.05 * 2.0).margin(2e-4));
}

TEST_CASE("oracle rejects dimensions above three") {
    rosenbrock_spec spec;
    spec.dimension = 4;
    spec.domain = box(interval(-10, 10), 4);
    CHECK_THROWS_AS(true_mean_oracle(spec, 100), dimension_too_large);
}

TEST_CASE("spec validation") {
    gaussian_mixture_spec bad_w{{{-0.5, {0.0}, {1.0}}}, box(interval(-1, 1), 1)};
    CHECK_THROWS_AS(validate(bad_w), invalid_spec);
    gaussian_mixture_spec bad_sd{{{1.0, {0.0}, {0.0}}}, box(interval(-1, 1), 1)};
    CHECK_THROWS_AS(validate(bad_sd), invalid_spec);
    gaussian_mixture_spec bad_dim{{{1.0, {0.0, 0.0}, {1.0, 1.0}}}, box(interval(-1, 1), 1)};
    CHECK_THROWS_AS(validate(bad_dim), invalid_spec);
    CHECK_THROWS_AS(validate(levy_spec{-1.0}), invalid_spec);
    needle_spec bad_needle;
    bad_needle.stdev2 = 0.0;
    CHECK_THROWS_AS(validate(bad_needle), invalid_spec);
    rosenbrock_spec bad_rosen;
    bad_rosen.dimension = 1;
    CHECK_THROWS_AS(validate(bad_rosen), invalid_spec);
    witchs_hat_spec bad_hat;
    bad_hat.mixing = 1.5;
    CHECK_THROWS_AS(validate(bad_hat), invalid_spec);
}

TEST_CASE("target specs load from JSON") {
    using nlohmann::json;
    for (const char* name :
         {"g1", "g2", "g5", "g5p", "g5pp", "g5hat", "levy", "needle", "rosenbrock",
          "witchs_hat"}) {
        const target_spec spec = load_target_spec(json{{"name", name}});
        CHECK(domain_of(spec).size() >= 1);
    }

    const auto j = json::parse(R"({
        "name": "gaussian_mixture",
        "domain": [[-50, 50]],
        "components": [
            {"weight": 0.5, "mean": [-3], "stdev": [0.5]},
            {"weight": 0.5, "mean": [4], "stdev": [2.0]}
        ]
    })");
    const target_spec spec = load_target_spec(j);
    const auto* mix = std::get_if<gaussian_mixture_spec>(&spec);
    REQUIRE(mix != nullptr);
    CHECK(mix->components.size() == 2);
    CHECK(domain_of(spec)[0] == interval(-50, 50));

    const target_spec ndl = load_target_spec(
        json{{"name", "needle"}, {"stdev2", 1e-10}, {"domain", {{-10, 10}, {-10, 10}, {-10, 10}}}});
    CHECK(std::get<needle_spec>(ndl).stdev2 == 1e-10);

    const target_spec ros =
        load_target_spec(json{{"name", "rosenbrock"}, {"dimension", 5}});
    CHECK(domain_of(ros).size() == 5);

    CHECK_THROWS_AS(load_target_spec(json{{"name", "nope"}}), invalid_spec);
    CHECK_THROWS_AS(load_target_spec(json{{"no_name", 1}}), invalid_spec);
    CHECK_THROWS_AS(builtin_target("bogus"), invalid_spec);
}
