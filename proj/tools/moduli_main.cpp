// Command-line front end: classification verdicts, local models, Delta
// estimate verification, finite-field point counts, and combined reports.
//
// Exit codes: 0 success, 1 verification failure, 2 bad input.

#include "moduli/json_io.hpp"
#include "moduli/rng.hpp"

#include <CLI11.hpp>

#include <chrono>
#include <cstdlib>
#include <iostream>
#include <string>

namespace {

using moduli::Int;
using moduli::io::Json;
namespace lattice = moduli::lattice;
namespace classify_ns = moduli::classify;
namespace local_model = moduli::local_model;
namespace estimates = moduli::estimates;
namespace ffprobe = moduli::ffprobe;

constexpr const char* kBudgetEnvVar = "MODULI_BUDGET";

std::uint64_t budget_from_env(std::uint64_t fallback) {
    const char* raw = std::getenv(kBudgetEnvVar);
    if (!raw) return fallback;
    return std::strtoull(raw, nullptr, 10);
}

struct ClassifyArgs {
    std::string surface_path;
    std::string vector_text;
    bool v_general = false;
    std::string effective = "auto";
};

int run_classify(const ClassifyArgs& args) {
    Json sj = moduli::io::load_json_file(args.surface_path);
    lattice::SurfaceData surface = moduli::io::surface_from_json(sj);
    lattice::MukaiVector v = lattice::parse_mukai(args.vector_text);
    std::optional<bool> hint;
    if (args.effective == "yes") hint = true;
    if (args.effective == "no") hint = false;

    classify_ns::Verdict verdict = classify_ns::classify(surface, v, args.v_general, hint);
    Json out;
    out["input"] = Json{{"surface", sj},
                        {"v", lattice::format_mukai(v)},
                        {"v_general", args.v_general}};
    out["verdict"] = moduli::io::verdict_to_json(verdict);
    auto [m, v0] = lattice::primitive_decompose(v);
    out["star"] = moduli::io::star_report_to_json(lattice::check_star(surface, v0, hint));
    std::cout << out.dump(2) << "\n";

    auto row = [](const std::string& k, const std::string& v_) {
        std::cerr << "  " << k << std::string(k.size() < 20 ? 20 - k.size() : 1, ' ') << v_
                  << "\n";
    };
    row("case", classify_ns::to_string(verdict.label));
    row("v0 / m / e0", lattice::format_mukai(verdict.v0) + " / " + verdict.m.str() + " / " +
                           verdict.e0.str());
    row("dim", verdict.dim_m.str());
    row("sing codim", verdict.sing_codim ? verdict.sing_codim->str() : "-");
    row("locally factorial",
        verdict.locally_factorial ? (*verdict.locally_factorial ? "yes" : "no") : "-");
    row("resolution", classify_ns::to_string(verdict.resolution));
    return 0;
}

struct ModelArgs {
    std::string model_path;
    std::string type_text;  // "m:n,m:n,..."
    long long e0 = 0;
    std::uint64_t seed = 1;
    int probes = 0;
};

classify_ns::PolystableType parse_type(const std::string& text) {
    std::vector<std::pair<long long, long long>> parts;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        auto colon = item.find(':');
        if (colon == std::string::npos)
            throw std::invalid_argument("type parts look like m:n, e.g. \"1:2\"");
        parts.emplace_back(std::stoll(item.substr(0, colon)), std::stoll(item.substr(colon + 1)));
    }
    if (parts.empty()) throw std::invalid_argument("empty polystable type");
    return classify_ns::PolystableType(parts);
}

local_model::LocalModel model_from_args(const ModelArgs& args) {
    if (!args.model_path.empty())
        return moduli::io::model_from_json(moduli::io::load_json_file(args.model_path));
    if (args.type_text.empty())
        throw std::invalid_argument("need --model FILE or --type with --e0");
    return local_model::model_from_type(args.e0, parse_type(args.type_text));
}

int run_local_model(const ModelArgs& args) {
    local_model::LocalModel model = model_from_args(args);
    Json out;
    out["model"] = moduli::io::model_to_json(model);
    out["seed"] = args.seed;
    if (args.probes > 0) {
        Json probes = Json::array();
        for (int t = 0; t < args.probes; ++t) {
            local_model::PointU x = local_model::lagrangian_point(model, args.seed + t);
            Json p;
            p["seed"] = args.seed + t;
            p["mu_zero"] = local_model::mu_eval(model, x).is_zero();
            p["rank_dmu"] = local_model::jacobian_rank(model, x);
            p["stabilizer_dim"] = local_model::stabilizer_dim(model, x);
            probes.push_back(p);
        }
        out["lagrangian_probes"] = probes;
    }
    std::cout << out.dump(2) << "\n";
    return 0;
}

struct EstimatesArgs {
    std::string model_path;
    std::string type_text;
    long long e0 = 0;
    bool sweep = false;
    long long max_n = 6;
    long long max_d = 8;
    long long grid_max_s = 4;
    std::size_t samples = 200;
    std::uint64_t seed = 1;
};

int run_verify_estimates(const EstimatesArgs& args) {
    Json out;
    bool ok = true;
    if (args.sweep) {
        estimates::SweepConfig config;
        config.max_total = args.max_n;
        config.max_entry = args.max_d;
        config.grid_max_s = args.grid_max_s;
        config.samples_per_vector = args.samples;
        config.sample_seed = args.seed;
        estimates::SweepResult result = estimates::sweep_estimates(config);
        out = moduli::io::sweep_result_to_json(result);
        out["seed"] = args.seed;
        ok = result.ok();
    } else {
        ModelArgs margs{args.model_path, args.type_text, args.e0, 0, 0};
        local_model::LocalModel model = model_from_args(margs);
        if (model.slack() < 2) {
            std::cerr << "model has a < 2: outside the estimate hypotheses\n";
            return 2;
        }
        estimates::DeltaReport report = estimates::verify_bounds(model);
        out = moduli::io::delta_report_to_json(report);
        ok = report.ok();
    }
    std::cout << out.dump(2) << "\n";
    return ok ? 0 : 1;
}

struct CountArgs {
    std::string model_path;
    std::string type_text;
    long long e0 = 0;
    std::vector<std::uint64_t> primes;
    std::string strategy = "auto";
    std::uint64_t budget = 0;
    std::vector<int> mu_blocks;
};

int run_count_points(const CountArgs& args) {
    ModelArgs margs{args.model_path, args.type_text, args.e0, 0, 0};
    local_model::LocalModel model = model_from_args(margs);

    ffprobe::CountOptions opts;
    opts.budget = args.budget ? args.budget : budget_from_env(opts.budget);
    if (args.strategy == "exhaustive")
        opts.strategy = ffprobe::CountOptions::Strategy::Exhaustive;
    else if (args.strategy == "bilinear")
        opts.strategy = ffprobe::CountOptions::Strategy::Bilinear;
    else if (args.strategy != "auto")
        throw std::invalid_argument("strategy must be auto, exhaustive or bilinear");
    if (!args.mu_blocks.empty()) opts.mu_blocks = args.mu_blocks;

    Json out;
    out["model"] = moduli::io::model_to_json(model);
    out["budget"] = opts.budget;
    Json counts = Json::array();
    for (std::uint64_t q : args.primes) {
        auto start = std::chrono::steady_clock::now();
        ffprobe::CountResult result = ffprobe::count_points(model, q, opts);
        auto stop = std::chrono::steady_clock::now();
        Json cj = moduli::io::count_result_to_json(result);
        cj["runtime_ms"] =
            std::chrono::duration_cast<std::chrono::milliseconds>(stop - start).count();
        counts.push_back(cj);
    }
    out["counts"] = counts;
    if (args.primes.size() >= 2) {
        ffprobe::DimEstimate est = ffprobe::dim_estimate(model, args.primes, opts);
        char buf[32];
        std::snprintf(buf, sizeof(buf), "%.6f", est.slope);
        out["dim_estimate"] = Json{{"slope", std::string(buf)}, {"expected", est.expected}};
    }
    std::cout << out.dump(2) << "\n";
    return 0;
}

struct ReportArgs {
    std::string surface_path;
    std::string vector_text;
    bool v_general = false;
    std::string effective = "auto";
    std::uint64_t seed = 1;
    bool with_counts = false;
    long long max_count_dim = 16;
    long long max_model_total = 6;
};

int run_report(const ReportArgs& args) {
    Json sj = moduli::io::load_json_file(args.surface_path);
    lattice::SurfaceData surface = moduli::io::surface_from_json(sj);
    lattice::MukaiVector v = lattice::parse_mukai(args.vector_text);
    std::optional<bool> hint;
    if (args.effective == "yes") hint = true;
    if (args.effective == "no") hint = false;

    bool ok = true;
    Json out;
    out["input"] = Json{{"surface", sj},
                        {"v", lattice::format_mukai(v)},
                        {"v_general", args.v_general},
                        {"seed", args.seed}};

    classify_ns::Verdict verdict = classify_ns::classify(surface, v, args.v_general, hint);
    out["verdict"] = moduli::io::verdict_to_json(verdict);
    auto [m, v0] = lattice::primitive_decompose(v);
    out["star"] = moduli::io::star_report_to_json(lattice::check_star(surface, v0, hint));

    const bool abc_case = verdict.label == classify_ns::CaseLabel::A ||
                          verdict.label == classify_ns::CaseLabel::B ||
                          verdict.label == classify_ns::CaseLabel::C;
    long long mm = static_cast<long long>(m);
    if (abc_case && m >= 2 && mm <= args.max_model_total) {
        out["singular_locus"] =
            moduli::io::summary_to_json(classify_ns::singular_locus_summary(verdict.e0, mm));
    }
    if (abc_case && mm <= args.max_model_total && verdict.e0 <= 64) {
        long long e0 = static_cast<long long>(verdict.e0);
        Json models = Json::array();
        for (const auto& type : classify_ns::enumerate_types(mm)) {
            Json entry;
            entry["type"] = moduli::io::type_to_json(type);
            local_model::LocalModel model = local_model::model_from_type(e0, type);
            entry["model"] = moduli::io::model_to_json(model);
            if (type.total() >= 2 && model.slack() >= 2) {
                estimates::DeltaReport report = estimates::verify_bounds(model);
                entry["delta_report"] = moduli::io::delta_report_to_json(report);
                ok = ok && report.ok();
            }
            local_model::PointU x = local_model::lagrangian_point(model, args.seed);
            Json probe;
            probe["mu_zero"] = local_model::mu_eval(model, x).is_zero();
            probe["rank_dmu"] = local_model::jacobian_rank(model, x);
            probe["stabilizer_dim"] = local_model::stabilizer_dim(model, x);
            probe["rank_law_holds"] =
                probe["rank_dmu"].get<long long>() + probe["stabilizer_dim"].get<long long>() ==
                model.dim_g();
            ok = ok && probe["rank_law_holds"].get<bool>();
            entry["lagrangian_probe"] = probe;

            if (args.with_counts) {
                ffprobe::CountOptions opts;
                opts.budget = budget_from_env(1ull << 32);
                if (model.dim_u() <= args.max_count_dim) {
                    Json counts = Json::array();
                    for (std::uint64_t q : {2ull, 3ull}) {
                        Int total = 1;
                        for (long long i = 0; i < model.dim_u(); ++i) total *= q;
                        if (total > Int(opts.budget)) continue;
                        counts.push_back(moduli::io::count_result_to_json(
                            ffprobe::count_points(model, q, opts)));
                    }
                    entry["counts"] = counts;
                }
            }
            models.push_back(entry);
        }
        out["local_models"] = models;
    }
    std::cout << out.dump(2) << "\n";
    return ok ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"moduli-space classification and slice-model verification"};
    app.require_subcommand(1);

    ClassifyArgs cargs;
    CLI::App* c = app.add_subcommand("classify", "verdict for (surface, Mukai vector)");
    c->add_option("--surface", cargs.surface_path, "surface JSON file")->required();
    c->add_option("--v", cargs.vector_text, "Mukai vector \"r;c1,...,c_rho;a\"")->required();
    c->add_flag("--v-general", cargs.v_general, "assert the polarization is v-general");
    c->add_option("--effective", cargs.effective, "effectivity hint for c0: auto|yes|no");

    ModelArgs margs;
    CLI::App* lm = app.add_subcommand("local-model", "build and probe a slice model");
    lm->add_option("--model", margs.model_path, "model JSON file {\"n\":[...],\"D\":[[...]]}");
    lm->add_option("--type", margs.type_text, "polystable type, e.g. \"1:2\" or \"1:1,1:1\"");
    lm->add_option("--e0", margs.e0, "self-pairing of the primitive vector");
    lm->add_option("--seed", margs.seed, "seed for probe points");
    lm->add_option("--probes", margs.probes, "number of null-fibre probe points");

    EstimatesArgs eargs;
    CLI::App* ve = app.add_subcommand("verify-estimates", "check the Delta >= 3 bounds");
    ve->add_option("--model", eargs.model_path, "model JSON file");
    ve->add_option("--type", eargs.type_text, "polystable type");
    ve->add_option("--e0", eargs.e0, "self-pairing of the primitive vector");
    ve->add_flag("--sweep", eargs.sweep, "sweep all models within the bounds");
    ve->add_option("--max-n", eargs.max_n, "sweep cap on sum n_i");
    ve->add_option("--max-d", eargs.max_d, "sweep cap on D entries");
    ve->add_option("--grid-max-s", eargs.grid_max_s, "exhaustive D-grid up to this many vertices");
    ve->add_option("--samples", eargs.samples, "random D spot checks per dimension vector");
    ve->add_option("--seed", eargs.seed, "seed for spot checks");

    CountArgs kargs;
    CLI::App* cp = app.add_subcommand("count-points", "exact F_q point counts of the null-fibre");
    cp->add_option("--model", kargs.model_path, "model JSON file");
    cp->add_option("--type", kargs.type_text, "polystable type");
    cp->add_option("--e0", kargs.e0, "self-pairing of the primitive vector");
    cp->add_option("--q", kargs.primes, "prime(s) to count over")->required();
    cp->add_option("--strategy", kargs.strategy, "auto|exhaustive|bilinear");
    cp->add_option("--budget", kargs.budget,
                   "cap on q^dim U (default 2^32, or env " + std::string(kBudgetEnvVar) + ")");
    cp->add_option("--mu-blocks", kargs.mu_blocks, "restrict to these moment blocks");

    ReportArgs rargs;
    CLI::App* rp = app.add_subcommand("report", "combined report for (surface, Mukai vector)");
    rp->add_option("--surface", rargs.surface_path, "surface JSON file")->required();
    rp->add_option("--v", rargs.vector_text, "Mukai vector")->required();
    rp->add_flag("--v-general", rargs.v_general, "assert the polarization is v-general");
    rp->add_option("--effective", rargs.effective, "effectivity hint for c0: auto|yes|no");
    rp->add_option("--seed", rargs.seed, "seed for probe points");
    rp->add_flag("--with-counts", rargs.with_counts, "include small F_q counts");
    rp->add_option("--max-count-dim", rargs.max_count_dim, "count only models with dim U <= this");
    rp->add_option("--max-model-total", rargs.max_model_total,
                   "build local models only for multiplicity <= this");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (c->parsed()) return run_classify(cargs);
        if (lm->parsed()) return run_local_model(margs);
        if (ve->parsed()) return run_verify_estimates(eargs);
        if (cp->parsed()) return run_count_points(kargs);
        if (rp->parsed()) return run_report(rargs);
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return 1;
    }
    return 2;
}
