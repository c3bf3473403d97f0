// ivmc command-line driver: reproducible envelope construction, sampling
// and benchmark runs with CSV output.

#include <chrono>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <variant>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "ivmc/ivmc.hpp"
#include "ivmc/target_config.hpp"

namespace {

using namespace ivmc;

using built_target = std::variant<expr_dag, targets::witchs_hat_target>;

struct run_config {
    std::string config_file;
    std::string target_name;
    std::string formula;
    std::string target_spec_file;
    std::string domain_text;
    std::string scheme_text = "integral";
    std::size_t size = 1;
    std::size_t refine_budget = 0;
    std::uint64_t n = 10000;
    std::uint64_t max_trials = 100000;
    std::uint64_t seed = 0;
    std::string out = "-";
    unsigned workers = 1;
    bool timing = false;

    // per-target overrides
    std::optional<double> temperature;
    std::optional<double> sigma2;
    std::optional<std::size_t> rosen_dim;
    std::optional<double> hat_mixing;

    // sweep/compare/mse
    std::vector<std::size_t> sizes;
    // mse
    std::size_t n_mrs = 100;
    std::size_t n_reps = 500;
    std::string true_mean_text;
    std::size_t oracle_grid = 2000;
    // lmhs
    unsigned chains = 4;
    double cube_side = 6.0;
    std::size_t max_steps = 200000;
    std::size_t check_every = 200;
    double bw_threshold = 0.05;
};

// Domain text: one or more [lo,hi] groups, or [lo,hi]^D.
box parse_domain(const std::string& text) {
    std::vector<interval> sides;
    std::size_t pos = 0;
    const auto skip = [&] {
        while (pos < text.size() && (std::isspace(static_cast<unsigned char>(text[pos])) ||
                                     text[pos] == ',' || text[pos] == 'x'))
            ++pos;
    };
    skip();
    while (pos < text.size()) {
        if (text[pos] != '[') throw invalid_spec("domain must be [lo,hi] groups: " + text);
        const std::size_t close = text.find(']', pos);
        if (close == std::string::npos) throw invalid_spec("unterminated [lo,hi] in " + text);
        interval side(0.0);
        try {
            side = parse_interval(std::string_view(text).substr(pos, close - pos + 1));
        } catch (const error& e) {
            throw invalid_spec(std::string("bad domain: ") + e.what());
        }
        pos = close + 1;
        if (pos < text.size() && text[pos] == '^') {
            ++pos;
            std::size_t reps = 0;
            const auto res = std::from_chars(text.data() + pos, text.data() + text.size(), reps);
            if (res.ec != std::errc{} || reps == 0)
                throw invalid_spec("bad power in domain: " + text);
            pos = static_cast<std::size_t>(res.ptr - text.data());
            for (std::size_t i = 0; i < reps; ++i) sides.push_back(side);
        } else {
            sides.push_back(side);
        }
        skip();
    }
    if (sides.empty()) throw invalid_spec("empty domain: " + text);
    return box(std::move(sides));
}

std::string domain_to_string(const box& b) {
    std::string s;
    for (const interval& side : b) s += to_string(side);
    return s;
}

std::vector<double> parse_point(const std::string& text) {
    std::vector<double> v;
    std::size_t pos = 0;
    while (pos < text.size()) {
        std::size_t next = text.find(',', pos);
        if (next == std::string::npos) next = text.size();
        v.push_back(parse_double(std::string_view(text).substr(pos, next - pos)));
        pos = next + 1;
    }
    if (v.empty()) throw invalid_spec("empty point: " + text);
    return v;
}

struct resolved_target {
    built_target fn;
    box domain;
    std::string description;
    std::optional<targets::target_spec> spec; // set for spec-backed targets
};

resolved_target resolve_target(const run_config& c) {
    int sources = 0;
    sources += c.target_name.empty() ? 0 : 1;
    sources += c.formula.empty() ? 0 : 1;
    sources += c.target_spec_file.empty() ? 0 : 1;
    if (sources != 1)
        throw invalid_spec("give exactly one of --target, --formula, --target-spec");

    if (!c.formula.empty()) {
        if (c.domain_text.empty()) throw invalid_spec("--formula needs --domain");
        box domain = parse_domain(c.domain_text);
        expr_dag f = expr_dag::parse(c.formula, domain.size());
        return {built_target(std::move(f)), std::move(domain), "formula:" + c.formula,
                std::nullopt};
    }

    targets::target_spec spec = [&] {
        if (!c.target_spec_file.empty()) {
            std::ifstream in(c.target_spec_file);
            if (!in) throw invalid_spec("cannot open target spec file " + c.target_spec_file);
            nlohmann::json j;
            in >> j;
            return targets::load_target_spec(j);
        }
        return targets::builtin_target(c.target_name);
    }();

    std::visit(
        [&](auto& s) {
            using T = std::decay_t<decltype(s)>;
            if (!c.domain_text.empty()) s.domain = parse_domain(c.domain_text);
            if constexpr (std::is_same_v<T, targets::levy_spec>) {
                if (c.temperature) s.temperature = *c.temperature;
            } else if constexpr (std::is_same_v<T, targets::needle_spec>) {
                if (c.sigma2) s.stdev2 = *c.sigma2;
            } else if constexpr (std::is_same_v<T, targets::rosenbrock_spec>) {
                if (c.rosen_dim) {
                    s.dimension = *c.rosen_dim;
                    if (c.domain_text.empty()) s.domain = box(interval(-10.0, 10.0), s.dimension);
                }
            } else if constexpr (std::is_same_v<T, targets::witchs_hat_spec>) {
                if (c.hat_mixing) s.mixing = *c.hat_mixing;
            }
            targets::validate(s);
        },
        spec);

    built_target fn = std::visit(
        [](const auto& s) -> built_target { return targets::build_target(s); }, spec);
    box domain = targets::domain_of(spec);
    const std::string desc = c.target_spec_file.empty()
                                 ? c.target_name
                                 : "spec-file:" + c.target_spec_file;
    return {std::move(fn), std::move(domain), desc, std::move(spec)};
}

class output {
  public:
    explicit output(const std::string& path) {
        if (path != "-") {
            file_.open(path, std::ios::binary);
            if (!file_) throw error("cannot open output file " + path);
        }
    }
    std::ostream& stream() { return file_.is_open() ? file_ : std::cout; }

  private:
    std::ofstream file_;
};

// Every run echoes its complete effective configuration so the CSV alone
// reproduces the run.
void write_header(std::ostream& out, const char* command, const run_config& c,
                  const resolved_target& t) {
    out << "# ivmc " << command << "\n";
    out << "# target=" << t.description << "\n";
    if (!c.formula.empty()) out << "# formula=" << c.formula << "\n";
    out << "# domain=" << domain_to_string(t.domain) << "\n";
    out << "# scheme=" << c.scheme_text << "\n";
    out << "# size=" << c.size << "\n";
    out << "# refine-budget=" << c.refine_budget << "\n";
    out << "# n=" << c.n << "\n";
    out << "# max-trials=" << c.max_trials << "\n";
    out << "# seed=" << c.seed << "\n";
    out << "# workers=" << c.workers << "\n";
    out << "# timing=" << (c.timing ? 1 : 0) << "\n";
    if (c.temperature) out << "# temperature=" << format_double(*c.temperature) << "\n";
    if (c.sigma2) out << "# sigma2=" << format_double(*c.sigma2) << "\n";
    if (c.rosen_dim) out << "# rosen-dim=" << *c.rosen_dim << "\n";
    if (c.hat_mixing) out << "# hat-mixing=" << format_double(*c.hat_mixing) << "\n";
}

std::size_t effective_size(const run_config& c) {
    return c.refine_budget > 0 ? c.refine_budget + 1 : c.size;
}

template <typename F>
partition build_partition(const F& fn, const box& domain, const run_config& c,
                          std::size_t size) {
    partition part(fn, domain, parse_scheme(c.scheme_text));
    if (size > 1) part.refine(fn, size - 1);
    return part;
}

int cmd_sample(const run_config& c) {
    const resolved_target t = resolve_target(c);
    output out(c.out);
    return std::visit(
        [&](const auto& fn) {
            const auto wall0 = std::chrono::steady_clock::now();
            partition part = build_partition(fn, t.domain, c, effective_size(c));
            trio_sampler sampler(fn, part, c.seed);
            write_header(out.stream(), "sample", c, t);
            out.stream() << "# columns:";
            for (std::size_t k = 0; k < t.domain.size(); ++k)
                out.stream() << " x" << (k + 1);
            out.stream() << " weight mrs imhs\n";
            std::uint64_t accepted = 0, trials = 0;
            while (accepted < c.n && trials < c.max_trials) {
                const sample_record rec = sampler.next();
                ++trials;
                accepted += rec.mrs_accepted ? 1 : 0;
                for (double x : rec.point) out.stream() << format_double(x) << ",";
                out.stream() << format_double(rec.importance_weight) << ","
                             << (rec.mrs_accepted ? 1 : 0) << ","
                             << (rec.imhs_accepted ? 1 : 0) << "\n";
            }
            const double wall =
                std::chrono::duration<double>(std::chrono::steady_clock::now() - wall0).count();
            std::cerr << "accepted=" << accepted << " trials=" << trials
                      << " acceptance=" << (trials ? double(accepted) / double(trials) : 0.0)
                      << " guaranteed_lb=" << part.acceptance_bounds().lo()
                      << " wall_s=" << wall << "\n";
            return 0;
        },
        t.fn);
}

int cmd_sweep(const run_config& c, bool all_schemes) {
    if (c.sizes.empty()) throw invalid_spec("--sizes is required");
    const resolved_target t = resolve_target(c);
    output out(c.out);
    return std::visit(
        [&](const auto& fn) {
            write_header(out.stream(), all_schemes ? "compare" : "sweep", c, t);
            out.stream() << "# sizes=";
            for (std::size_t i = 0; i < c.sizes.size(); ++i)
                out.stream() << (i ? "," : "") << c.sizes[i];
            out.stream() << "\n# columns:" << (all_schemes ? " scheme" : "")
                         << " partition_size guaranteed_lower_bound empirical_acceptance"
                            " n_trials n_accepted"
                         << (c.timing ? " cpu_seconds" : "") << "\n";
            std::vector<refine_scheme> schemes;
            if (all_schemes)
                schemes = {refine_scheme::volume, refine_scheme::range, refine_scheme::integral};
            else
                schemes = {parse_scheme(c.scheme_text)};
            for (const refine_scheme scheme : schemes) {
                const auto pts = acceptance_sweep(fn, t.domain, scheme, c.sizes,
                                                  sweep_caps{c.n, c.max_trials}, c.seed);
                for (const auto& p : pts) {
                    if (all_schemes) out.stream() << name_of(scheme) << ",";
                    out.stream() << p.partition_size << ","
                                 << format_double(p.guaranteed_lower_bound) << ","
                                 << format_double(p.empirical_acceptance) << "," << p.n_trials
                                 << "," << p.n_accepted;
                    if (c.timing) out.stream() << "," << format_double(p.cpu_seconds);
                    out.stream() << "\n";
                }
            }
            return 0;
        },
        t.fn);
}

int cmd_mse(const run_config& c) {
    if (c.sizes.empty()) throw invalid_spec("--sizes is required");
    const resolved_target t = resolve_target(c);

    std::vector<double> true_mean;
    if (!c.true_mean_text.empty()) {
        true_mean = parse_point(c.true_mean_text);
    } else if (t.spec) {
        true_mean = targets::true_mean_of(*t.spec, c.oracle_grid);
    } else {
        throw invalid_spec("--formula targets need --true-mean");
    }
    if (true_mean.size() != t.domain.size())
        throw invalid_spec("--true-mean dimension does not match the domain");

    output out(c.out);
    return std::visit(
        [&](const auto& fn) {
            write_header(out.stream(), "mse", c, t);
            out.stream() << "# n-mrs=" << c.n_mrs << "\n# reps=" << c.n_reps
                         << "\n# true-mean=";
            for (std::size_t k = 0; k < true_mean.size(); ++k)
                out.stream() << (k ? "," : "") << format_double(true_mean[k]);
            out.stream() << "\n# columns: partition_size guaranteed_lower_bound"
                            " mean_acceptance mse_mrs mse_is mse_imhs\n";
            partition part(fn, t.domain, parse_scheme(c.scheme_text));
            for (std::size_t i = 0; i < c.sizes.size(); ++i) {
                if (c.sizes[i] < part.size())
                    throw invalid_spec("partition sizes must be ascending");
                part.refine(fn, c.sizes[i] - part.size());
                const mse_result r = mse_protocol(fn, part, c.n_mrs, c.n_reps, true_mean,
                                                  derive_seed(c.seed, i), c.workers);
                out.stream() << part.size() << ","
                             << format_double(part.acceptance_bounds().lo()) << ","
                             << format_double(r.mean_acceptance) << ","
                             << format_double(r.mse_mrs) << "," << format_double(r.mse_is)
                             << "," << format_double(r.mse_imhs) << "\n";
            }
            return 0;
        },
        t.fn);
}

int cmd_lmhs(const run_config& c) {
    const resolved_target t = resolve_target(c);
    output out(c.out);
    return std::visit(
        [&](const auto& fn) {
            write_header(out.stream(), "lmhs", c, t);
            out.stream() << "# chains=" << c.chains << "\n# cube-side="
                         << format_double(c.cube_side) << "\n# max-steps=" << c.max_steps
                         << "\n# check-every=" << c.check_every
                         << "\n# bw-threshold=" << format_double(c.bw_threshold) << "\n";
            const std::size_t dim = t.domain.size();

            std::vector<std::vector<std::vector<double>>> chains;
            for (unsigned k = 0; k < c.chains; ++k) {
                rng start_rng(derive_seed(c.seed, 1000000 + k));
                std::vector<double> start(dim);
                for (std::size_t d = 0; d < dim; ++d) {
                    const interval& side = t.domain[d];
                    start[d] = side.lo() + start_rng.uniform01() * (side.hi() - side.lo());
                }
                chains.push_back(
                    lmhs_run(fn, t.domain, start, c.cube_side, c.max_steps,
                             derive_seed(c.seed, k)));
            }

            out.stream() << "# columns: step";
            for (std::size_t d = 0; d < dim; ++d) out.stream() << " bw_ratio_x" << (d + 1);
            for (unsigned k = 0; k < c.chains; ++k)
                out.stream() << " running_mean_x1_chain" << (k + 1);
            out.stream() << "\n";

            std::vector<double> mean_x1(c.chains, 0.0);
            std::vector<double> sums(c.chains, 0.0);
            const auto traj = bw_trajectory(chains, c.check_every);
            std::size_t fired_at = 0;
            std::size_t ti = 0;
            std::vector<std::size_t> consumed(c.chains, 0);
            for (const auto& pt : traj) {
                for (unsigned k = 0; k < c.chains; ++k) {
                    while (consumed[k] < pt.step) {
                        sums[k] += chains[k][consumed[k]][0];
                        ++consumed[k];
                    }
                    mean_x1[k] = sums[k] / static_cast<double>(pt.step);
                }
                out.stream() << pt.step;
                bool all_below = true;
                for (double r : pt.ratio) {
                    out.stream() << "," << format_double(r);
                    all_below = all_below && r <= c.bw_threshold;
                }
                for (unsigned k = 0; k < c.chains; ++k)
                    out.stream() << "," << format_double(mean_x1[k]);
                out.stream() << "\n";
                if (all_below && fired_at == 0) fired_at = pt.step;
                ++ti;
            }
            out.stream() << "# burnin_fired=" << (fired_at > 0 ? 1 : 0) << "\n";
            out.stream() << "# burnin_fired_at=" << fired_at << "\n";
            return 0;
        },
        t.fn);
}

int cmd_partition_dump(const run_config& c) {
    const resolved_target t = resolve_target(c);
    output out(c.out);
    return std::visit(
        [&](const auto& fn) {
            partition part = build_partition(fn, t.domain, c, effective_size(c));
            write_header(out.stream(), "partition-dump", c, t);
            part.dump_csv(out.stream());
            return 0;
        },
        t.fn);
}

void add_common_flags(CLI::App* cmd, run_config& c) {
    cmd->add_option("--target", c.target_name,
                    "builtin target name (g1, g2, g5, g5p, g5pp, g5hat, levy, needle, "
                    "rosenbrock, witchs_hat)");
    cmd->add_option("--formula", c.formula, "target shape formula over x1..xN");
    cmd->add_option("--target-spec", c.target_spec_file, "JSON target spec file");
    cmd->add_option("--domain", c.domain_text, "domain as [lo,hi] groups or [lo,hi]^D");
    cmd->add_option("--scheme", c.scheme_text, "refinement scheme: volume, range, integral")
        ->check(CLI::IsMember({"volume", "range", "integral"}));
    cmd->add_option("--size", c.size, "partition size to refine to");
    cmd->add_option("--refine-budget", c.refine_budget,
                    "number of bisections (alternative to --size)");
    cmd->add_option("--n", c.n, "samples to draw (or accept cap for sweeps)");
    cmd->add_option("--max-trials", c.max_trials, "cap on proposals");
    cmd->add_option("--seed", c.seed, "64-bit RNG seed");
    cmd->add_option("--out", c.out, "output CSV path ('-' for stdout)");
    cmd->add_option("--workers", c.workers, "worker threads for replicate runs");
    cmd->add_flag("--timing", c.timing, "include cpu_seconds columns in CSV output");
    cmd->add_option("--temperature", [&c](const std::vector<std::string>& v) {
        c.temperature = parse_double(v[0]);
        return true;
    }, "levy temperature override")->expected(1);
    cmd->add_option("--sigma2", [&c](const std::vector<std::string>& v) {
        c.sigma2 = parse_double(v[0]);
        return true;
    }, "needle second-component stdev override")->expected(1);
    cmd->add_option("--rosen-dim", [&c](const std::vector<std::string>& v) {
        c.rosen_dim = static_cast<std::size_t>(std::stoull(v[0]));
        return true;
    }, "rosenbrock dimension override")->expected(1);
    cmd->add_option("--hat-mixing", [&c](const std::vector<std::string>& v) {
        c.hat_mixing = parse_double(v[0]);
        return true;
    }, "witchs hat mixing weight override")->expected(1);
    cmd->add_option("--config", c.config_file, "key=value config file; flags override it");
}

std::vector<std::size_t> parse_size_list(const std::string& text) {
    std::vector<std::size_t> out;
    std::size_t pos = 0;
    while (pos < text.size()) {
        std::size_t next = text.find(',', pos);
        if (next == std::string::npos) next = text.size();
        out.push_back(static_cast<std::size_t>(
            std::stoull(std::string(text.substr(pos, next - pos)))));
        pos = next + 1;
    }
    return out;
}

// Flat key=value config: every key mirrors a long flag of the parsed
// subcommand; values given on the command line win.
void apply_config_file(CLI::App* cmd, run_config& c) {
    if (c.config_file.empty()) return;
    std::ifstream in(c.config_file);
    if (!in) throw invalid_spec("cannot open config file " + c.config_file);

    const auto trim = [](const std::string& s) {
        const auto a = s.find_first_not_of(" \t\r");
        const auto b = s.find_last_not_of(" \t\r");
        return a == std::string::npos ? std::string() : s.substr(a, b - a + 1);
    };

    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        const std::string text = trim(line);
        if (text.empty() || text[0] == '#' || text[0] == ';') continue;
        const auto eq = text.find('=');
        if (eq == std::string::npos)
            throw invalid_spec("config line " + std::to_string(line_no) +
                               " is not key=value: " + text);
        const std::string key = trim(text.substr(0, eq));
        const std::string value = trim(text.substr(eq + 1));
        const std::string flag = "--" + key;
        const CLI::Option* opt = cmd->get_option_no_throw(flag);
        if (opt == nullptr)
            throw invalid_spec("unknown config key '" + key + "' for this command");
        if (opt->count() > 0) continue; // command line wins

        if (key == "target") c.target_name = value;
        else if (key == "formula") c.formula = value;
        else if (key == "target-spec") c.target_spec_file = value;
        else if (key == "domain") c.domain_text = value;
        else if (key == "scheme") c.scheme_text = value;
        else if (key == "size") c.size = std::stoull(value);
        else if (key == "refine-budget") c.refine_budget = std::stoull(value);
        else if (key == "n") c.n = std::stoull(value);
        else if (key == "max-trials") c.max_trials = std::stoull(value);
        else if (key == "seed") c.seed = std::stoull(value);
        else if (key == "out") c.out = value;
        else if (key == "workers") c.workers = static_cast<unsigned>(std::stoul(value));
        else if (key == "timing") c.timing = value == "1" || value == "true";
        else if (key == "temperature") c.temperature = parse_double(value);
        else if (key == "sigma2") c.sigma2 = parse_double(value);
        else if (key == "rosen-dim") c.rosen_dim = std::stoull(value);
        else if (key == "hat-mixing") c.hat_mixing = parse_double(value);
        else if (key == "sizes") c.sizes = parse_size_list(value);
        else if (key == "n-mrs") c.n_mrs = std::stoull(value);
        else if (key == "reps") c.n_reps = std::stoull(value);
        else if (key == "true-mean") c.true_mean_text = value;
        else if (key == "grid") c.oracle_grid = std::stoull(value);
        else if (key == "chains") c.chains = static_cast<unsigned>(std::stoul(value));
        else if (key == "cube-side") c.cube_side = parse_double(value);
        else if (key == "max-steps") c.max_steps = std::stoull(value);
        else if (key == "check-every") c.check_every = std::stoull(value);
        else if (key == "bw-threshold") c.bw_threshold = parse_double(value);
        else throw invalid_spec("unknown config key '" + key + "'");
    }
}

} // namespace

int main(int argc, char** argv) try {
    CLI::App app{"auto-validating rejection sampling over interval envelopes"};
    app.require_subcommand(1);

    run_config cfg;
    CLI::App* sample = app.add_subcommand("sample", "draw the coupled sampler trio as CSV");
    CLI::App* sweep = app.add_subcommand("sweep", "acceptance vs partition size");
    CLI::App* compare =
        app.add_subcommand("compare", "acceptance vs size for all three schemes");
    CLI::App* mse = app.add_subcommand("mse", "MSE protocol for the sampler trio");
    CLI::App* lmhs = app.add_subcommand("lmhs", "local MH chains with B/W diagnostics");
    CLI::App* pdump = app.add_subcommand("partition-dump", "partition boxes as CSV");

    for (CLI::App* cmd : {sample, sweep, compare, mse, lmhs, pdump}) add_common_flags(cmd, cfg);
    for (CLI::App* cmd : {sweep, compare, mse})
        cmd->add_option("--sizes", cfg.sizes, "ascending partition sizes")->delimiter(',');
    mse->add_option("--n-mrs", cfg.n_mrs, "accepted samples per replicate");
    mse->add_option("--reps", cfg.n_reps, "replicates");
    mse->add_option("--true-mean", cfg.true_mean_text, "known mean (comma separated)");
    mse->add_option("--grid", cfg.oracle_grid, "oracle quadrature grid per axis");
    lmhs->add_option("--chains", cfg.chains, "number of chains");
    lmhs->add_option("--cube-side", cfg.cube_side, "proposal cube side");
    lmhs->add_option("--max-steps", cfg.max_steps, "steps per chain");
    lmhs->add_option("--check-every", cfg.check_every, "B/W check stride");
    lmhs->add_option("--bw-threshold", cfg.bw_threshold, "burn-in threshold");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    try {
        if (sample->parsed()) {
            apply_config_file(sample, cfg);
            return cmd_sample(cfg);
        }
        if (sweep->parsed()) {
            apply_config_file(sweep, cfg);
            return cmd_sweep(cfg, false);
        }
        if (compare->parsed()) {
            apply_config_file(compare, cfg);
            return cmd_sweep(cfg, true);
        }
        if (mse->parsed()) {
            apply_config_file(mse, cfg);
            return cmd_mse(cfg);
        }
        if (lmhs->parsed()) {
            apply_config_file(lmhs, cfg);
            return cmd_lmhs(cfg);
        }
        if (pdump->parsed()) {
            apply_config_file(pdump, cfg);
            return cmd_partition_dump(cfg);
        }
        std::cerr << "no subcommand given\n";
        return 2;
    } catch (const parse_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const invalid_spec& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
} catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
}
