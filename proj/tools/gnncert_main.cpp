// gnncert command-line front end.
//
// Commands: bound {shallow|deep}, localize, simulate, validate, table, compare.
// A JSON config file (--config) mirrors the flags 1:1; flags override the file.
// Exit codes: 0 ok, 2 parse error, 3 domain error, 4 resource guard.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <thread>

#include "CLI11.hpp"
#include "json.hpp"

#include "gnncert/errors.hpp"
#include "gnncert/numeric.hpp"
#include "gnncert/serialize.hpp"

namespace {

using nlohmann::json;

struct CommonOpts {
    std::string activation = "relu";
    std::string act_base;              // custom activation base function
    double act_lip = -1.0;             // custom metadata; < 0 means unset
    double act_lip_sq = -1.0;
    std::string act_growth;            // "r1,r2,gamma"
    std::string input;                 // comma list
    std::string input_file;
    std::int64_t n0 = 0;               // optional; zero-vector input of this length
    std::string widths;                // comma list n1..nL
    std::int64_t n_out = 1;
    double cb = 1.0;
    double cw = 1.0;
    std::string format = "text";       // text | json | csv
    int quad_nodes = 200;
    std::int64_t samples = 0;
    std::uint64_t seed = 1;
    int workers = 0;                   // 0 -> hardware default
    double max_draws = 4e9;
    double max_store = 1e8;
};

std::vector<double> parse_double_list(const std::string& text) {
    std::vector<double> out;
    std::stringstream ss(text);
    std::string part;
    while (std::getline(ss, part, ',')) {
        try {
            out.push_back(std::stod(part));
        } catch (const std::exception&) {
            throw gnncert::DomainError("bad number '" + part + "' in list");
        }
    }
    return out;
}

std::vector<std::int64_t> parse_int_list(const std::string& text) {
    std::vector<std::int64_t> out;
    for (double v : parse_double_list(text)) out.push_back(static_cast<std::int64_t>(v));
    return out;
}

gnncert::ActivationSpec build_activation(const CommonOpts& o) {
    if (o.activation != "custom") return gnncert::make_activation(o.activation);
    if (o.act_base.empty())
        throw gnncert::DomainError("custom activation requires --act-base");
    const gnncert::ActivationSpec base = gnncert::make_activation(o.act_base);
    std::optional<double> lip, lip_sq;
    std::optional<gnncert::GrowthEnvelope> growth;
    if (o.act_lip >= 0.0) lip = o.act_lip;
    if (o.act_lip_sq >= 0.0) lip_sq = o.act_lip_sq;
    if (!o.act_growth.empty()) {
        const auto v = parse_double_list(o.act_growth);
        if (v.size() != 3) throw gnncert::DomainError("--act-growth needs r1,r2,gamma");
        growth = gnncert::GrowthEnvelope{v[0], v[1], v[2]};
    }
    return gnncert::make_custom_activation(base.eval_kind, lip, lip_sq, growth);
}

std::vector<double> build_input(const CommonOpts& o) {
    if (!o.input_file.empty()) {
        std::ifstream f(o.input_file);
        if (!f) throw gnncert::DomainError("cannot read input file '" + o.input_file + "'");
        std::vector<double> x;
        double v;
        while (f >> v) x.push_back(v);
        if (x.empty()) throw gnncert::DomainError("input file holds no numbers");
        return x;
    }
    if (!o.input.empty()) return parse_double_list(o.input);
    if (o.n0 > 0) return std::vector<double>(static_cast<std::size_t>(o.n0), 0.0);
    throw gnncert::DomainError("provide --input, --input-file or --n0");
}

gnncert::Architecture build_arch(const CommonOpts& o, const std::vector<double>& x) {
    gnncert::Architecture arch;
    arch.hidden = parse_int_list(o.widths);
    if (arch.hidden.empty()) throw gnncert::DomainError("provide --widths n1,...,nL");
    arch.depth = static_cast<int>(arch.hidden.size());
    arch.n_in = static_cast<std::int64_t>(x.size());
    if (o.n0 > 0 && o.n0 != arch.n_in)
        throw gnncert::DomainError("--n0 disagrees with the input length");
    arch.n_out = o.n_out;
    arch.cb = o.cb;
    arch.cw = o.cw;
    arch.validate();
    if (arch.depth > 16)
        std::cerr << "warning: depth > 16; quadrature error in the layer recursion "
                     "compounds geometrically\n";
    return arch;
}

gnncert::QuadratureScheme build_scheme(const CommonOpts& o) {
    gnncert::QuadratureScheme s;
    s.node_count = o.quad_nodes;
    s.validate();
    return s;
}

int effective_workers(const CommonOpts& o) {
    int w = o.workers > 0 ? o.workers
                          : static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));
    if (const char* cap = std::getenv("GNN_CERTIFY_THREADS")) {
        try {
            w = std::min(w, std::max(1, std::stoi(cap)));
        } catch (const std::exception&) {
            throw gnncert::DomainError("GNN_CERTIFY_THREADS is not an integer");
        }
    }
    return std::max(1, w);
}

// JSON config keys mirror the long option names (dashes become underscores).
void apply_config(const std::string& path, CommonOpts& o, std::string& rect_text,
                  std::string& preset, int& table_id, bool& table2_normalized) {
    std::ifstream f(path);
    if (!f) throw gnncert::DomainError("cannot read config file '" + path + "'");
    json cfg;
    try {
        f >> cfg;
    } catch (const json::exception& e) {
        throw gnncert::DomainError(std::string("config parse error: ") + e.what());
    }
    const auto str = [&cfg](const char* key, std::string& target) {
        if (cfg.contains(key)) target = cfg.at(key).get<std::string>();
    };
    str("activation", o.activation);
    str("act_base", o.act_base);
    if (cfg.contains("act_lip")) o.act_lip = cfg.at("act_lip").get<double>();
    if (cfg.contains("act_lip_sq")) o.act_lip_sq = cfg.at("act_lip_sq").get<double>();
    str("act_growth", o.act_growth);
    if (cfg.contains("input")) {
        if (cfg.at("input").is_array()) {
            std::string joined;
            for (const auto& v : cfg.at("input"))
                joined += (joined.empty() ? "" : ",") + gnncert::format_double(v.get<double>());
            o.input = joined;
        } else {
            o.input = cfg.at("input").get<std::string>();
        }
    }
    str("input_file", o.input_file);
    if (cfg.contains("n0")) o.n0 = cfg.at("n0").get<std::int64_t>();
    if (cfg.contains("widths")) {
        if (cfg.at("widths").is_array()) {
            std::string joined;
            for (const auto& v : cfg.at("widths"))
                joined += (joined.empty() ? "" : ",") + std::to_string(v.get<std::int64_t>());
            o.widths = joined;
        } else {
            o.widths = cfg.at("widths").get<std::string>();
        }
    }
    if (cfg.contains("nout")) o.n_out = cfg.at("nout").get<std::int64_t>();
    if (cfg.contains("cb")) o.cb = cfg.at("cb").get<double>();
    if (cfg.contains("cw")) o.cw = cfg.at("cw").get<double>();
    str("format", o.format);
    if (cfg.contains("quad_nodes")) o.quad_nodes = cfg.at("quad_nodes").get<int>();
    if (cfg.contains("samples")) o.samples = cfg.at("samples").get<std::int64_t>();
    if (cfg.contains("seed")) o.seed = cfg.at("seed").get<std::uint64_t>();
    if (cfg.contains("workers")) o.workers = cfg.at("workers").get<int>();
    if (cfg.contains("max_draws")) o.max_draws = cfg.at("max_draws").get<double>();
    if (cfg.contains("max_store")) o.max_store = cfg.at("max_store").get<double>();
    str("rect", rect_text);
    str("preset", preset);
    if (cfg.contains("id")) table_id = cfg.at("id").get<int>();
    if (cfg.contains("table2_normalized"))
        table2_normalized = cfg.at("table2_normalized").get<bool>();
}

void add_common_flags(CLI::App* cmd, CommonOpts& o, bool arch_flags, bool sim_flags,
                      CLI::Option** activation_opt = nullptr) {
    cmd->add_option("--format", o.format, "Output format: text, json or csv")
        ->check(CLI::IsMember({"text", "json", "csv"}));
    cmd->add_option("--quad-nodes", o.quad_nodes, "Quadrature nodes per panel (>= 8)");
    if (arch_flags) {
        CLI::Option* act =
            cmd->add_option("-a,--activation", o.activation,
                            "Activation name (relu, perceptron, sigmoid, tanh, sine, softplus, "
                            "swish, sqrt_relu, monomial:K, custom)");
        if (activation_opt) *activation_opt = act;
        cmd->add_option("--act-base", o.act_base, "Base catalog function for --activation custom");
        cmd->add_option("--act-lip", o.act_lip, "Custom activation: Lipschitz constant of sigma");
        cmd->add_option("--act-lip-sq", o.act_lip_sq,
                        "Custom activation: Lipschitz constant of sigma^2");
        cmd->add_option("--act-growth", o.act_growth,
                        "Custom activation: growth envelope r1,r2,gamma");
        cmd->add_option("--input", o.input, "Input vector as comma list");
        cmd->add_option("--input-file", o.input_file, "File of whitespace-separated input values");
        cmd->add_option("--n0", o.n0, "Input dimension (zero input vector if --input absent)");
        cmd->add_option("--widths", o.widths, "Hidden widths n1,...,nL");
        cmd->add_option("--nout", o.n_out, "Output dimension");
        cmd->add_option("--cb", o.cb, "Bias variance C_b > 0");
        cmd->add_option("--cw", o.cw, "Weight variance scale C_W > 0");
    }
    if (sim_flags) {
        cmd->add_option("-m,--samples", o.samples, "Monte-Carlo replicates");
        cmd->add_option("--seed", o.seed, "64-bit seed");
        cmd->add_option("--workers", o.workers, "Worker threads (0 = hardware)");
        cmd->add_option("--max-draws", o.max_draws, "Budget on total parameter draws");
        cmd->add_option("--max-store", o.max_store, "Budget on stored scalars (m * n_out)");
    }
}

void emit_bounds(const std::vector<gnncert::BoundReport>& reports, const std::string& format) {
    if (format == "json") {
        json arr = json::array();
        for (const auto& r : reports) arr.push_back(gnncert::to_json(r));
        std::cout << (reports.size() == 1 ? gnncert::to_json(reports[0]) : arr).dump(2) << "\n";
    } else if (format == "csv") {
        std::cout << gnncert::bounds_csv(reports);
    } else {
        std::cout << gnncert::bounds_text(reports);
    }
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Certified Gaussian-approximation bounds for random Gaussian neural networks"};
    app.require_subcommand(1);

    CommonOpts opts;
    std::string config_path;
    std::string bound_kind = "deep";
    std::string metric = "all";
    std::string rect_text;
    std::string preset = "all";
    std::string export_bin, export_csv;
    int table_id = 0;
    int collective_layer = 0;
    bool table2_normalized = false;

    app.add_option("--config", config_path, "JSON config mirroring the flags (flags override)");

    CLI::App* bound = app.add_subcommand("bound", "Certified distance bounds");
    bound->add_option("kind", bound_kind, "shallow or deep")
        ->check(CLI::IsMember({"shallow", "deep"}));
    bound->add_option("--metric", metric, "kolmogorov, tv, w1, convex or all");
    add_common_flags(bound, opts, true, false);

    CLI::App* localize = app.add_subcommand("localize", "Certified rectangle probabilities");
    localize->add_option("--rect", rect_text, "Rectangle lo:hi,lo:hi,... ('inf' allowed)");
    add_common_flags(localize, opts, true, false);

    CLI::App* simulate = app.add_subcommand("simulate", "Monte-Carlo sampling of the network");
    simulate->add_option("--layer", collective_layer,
                         "Sample the collective observable at this layer instead of outputs");
    simulate->add_option("--export", export_bin, "Write raw draws to a flat binary file");
    simulate->add_option("--export-csv", export_csv, "Write raw draws to a CSV file");
    add_common_flags(simulate, opts, true, true);

    CLI::App* validate = app.add_subcommand("validate", "Monte-Carlo bound-dominance checks");
    validate->add_option("--preset", preset, "shallow-relu, collective-relu, deep-relu or all");
    add_common_flags(validate, opts, false, true);

    CLI::App* table = app.add_subcommand("table", "Reproduce a built-in benchmark grid");
    table->add_option("--id", table_id, "Table id in 1..4")->required();
    table->add_flag("--table2-normalized", table2_normalized,
                    "Normalize the shallow grid by sqrt(cb + cw*O0)");
    add_common_flags(table, opts, false, false);

    CLI::App* compare = app.add_subcommand("compare", "Both shallow bound families side by side");
    CLI::Option* compare_activation = nullptr;
    add_common_flags(compare, opts, true, false, &compare_activation);

    // The config file supplies defaults; parse once to discover --config, apply,
    // then reparse so explicit flags win.
    try {
        for (int i = 1; i + 1 < argc; ++i)
            if (std::string(argv[i]) == "--config") config_path = argv[i + 1];
        if (!config_path.empty())
            apply_config(config_path, opts, rect_text, preset, table_id, table2_normalized);
    } catch (const gnncert::DomainError& e) {
        std::cerr << json{{"error", {{"type", "domain"}, {"message", e.what()}}}}.dump() << "\n";
        return 3;
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2; // help/version exit 0, any parse failure 2
    }

    try {
        const gnncert::QuadratureScheme scheme = build_scheme(opts);

        if (bound->parsed()) {
            const auto act = build_activation(opts);
            const auto x = build_input(opts);
            const auto arch = build_arch(opts, x);
            std::vector<gnncert::BoundReport> reports;
            if (bound_kind == "shallow") {
                const auto all = gnncert::shallow_bounds(act, arch, x, scheme);
                reports.assign(all.begin(), all.end());
            } else {
                reports.push_back(gnncert::deep_convex_bound(act, arch, x, scheme));
                reports.push_back(gnncert::deep_w1_bound(act, arch, x, scheme));
            }
            if (metric != "all") {
                const auto want = [&metric](const gnncert::BoundReport& r) {
                    const std::string name = gnncert::metric_name(r.metric);
                    if (metric == "tv") return name == "total_variation";
                    if (metric == "w1") return name == "wasserstein1";
                    return name == metric;
                };
                std::erase_if(reports, [&want](const auto& r) { return !want(r); });
                if (reports.empty())
                    throw gnncert::DomainError("metric '" + metric + "' unavailable for this kind");
            }
            emit_bounds(reports, opts.format);
        } else if (localize->parsed()) {
            const auto act = build_activation(opts);
            const auto x = build_input(opts);
            const auto arch = build_arch(opts, x);
            const gnncert::Rect rect = rect_text.empty()
                                           ? gnncert::Rect::whole_space(
                                                 static_cast<std::size_t>(arch.n_out))
                                           : gnncert::parse_rect(rect_text);
            const auto rep = gnncert::certified_interval(act, arch, x, rect, scheme);
            if (opts.format == "json")
                std::cout << gnncert::to_json(rep).dump(2) << "\n";
            else if (opts.format == "csv")
                std::cout << gnncert::localization_csv(rep);
            else
                std::cout << gnncert::localization_text(rep);
        } else if (simulate->parsed()) {
            const auto act = build_activation(opts);
            const auto x = build_input(opts);
            const auto arch = build_arch(opts, x);
            gnncert::SimulateLimits limits{opts.max_draws, opts.max_store};
            const std::int64_t m = opts.samples > 0 ? opts.samples : 10000;
            const int workers = effective_workers(opts);
            json out; // summary document; raw draws go through --export/--export-csv
            if (collective_layer > 0) {
                const auto draws = gnncert::sample_collective(act, arch, x, collective_layer, m,
                                                              opts.seed, workers, limits);
                const auto stats = gnncert::layer_stats(act, arch, x, scheme);
                const double target =
                    stats.o_seq[static_cast<std::size_t>(collective_layer - 1)];
                const auto rms = gnncert::collective_rms_error(draws, target);
                out = {{"kind", "collective"},
                       {"layer", collective_layer},
                       {"m", m},
                       {"seed", opts.seed},
                       {"target", target},
                       {"rms_error", gnncert::to_json(rms)}};
            } else {
                const auto batch =
                    gnncert::sample_outputs(act, arch, x, m, opts.seed, workers, limits);
                json mean = json::array(), var = json::array();
                for (std::int64_t c = 0; c < batch.n_out; ++c) {
                    std::vector<double> col(static_cast<std::size_t>(batch.m));
                    for (std::int64_t r = 0; r < batch.m; ++r)
                        col[static_cast<std::size_t>(r)] = batch.at(r, c);
                    const double mu = gnncert::pairwise_mean(col);
                    double ss = 0.0;
                    for (double v : col) ss += (v - mu) * (v - mu);
                    mean.push_back(mu);
                    var.push_back(ss / (static_cast<double>(batch.m) - 1.0));
                }
                if (!export_bin.empty()) gnncert::write_batch_binary(batch, export_bin);
                if (!export_csv.empty()) {
                    std::ofstream f(export_csv);
                    if (!f) throw gnncert::DomainError("cannot open '" + export_csv + "'");
                    gnncert::write_batch_csv(batch, f);
                }
                out = {{"kind", "outputs"},
                       {"m", batch.m},
                       {"n_out", batch.n_out},
                       {"seed", batch.seed},
                       {"fingerprint", batch.fingerprint},
                       {"mean", mean},
                       {"variance", var}};
            }
            if (opts.format == "csv") {
                std::cout << "key,value\n";
                for (const auto& [key, value] : out.items())
                    std::cout << key << "," << value.dump() << "\n";
            } else if (opts.format == "text") {
                for (const auto& [key, value] : out.items())
                    std::cout << key << "  " << value.dump() << "\n";
            } else {
                std::cout << out.dump(2) << "\n";
            }
        } else if (validate->parsed()) {
            const auto rep =
                gnncert::run_validate(preset, opts.samples, opts.seed, effective_workers(opts));
            if (opts.format == "json")
                std::cout << gnncert::to_json(rep).dump(2) << "\n";
            else if (opts.format == "csv")
                std::cout << gnncert::validation_csv(rep);
            else
                std::cout << gnncert::validation_text(rep);
            if (!rep.pass) return 1;
        } else if (table->parsed()) {
            std::cout << gnncert::reproduce_table(table_id, table2_normalized, scheme);
        } else if (compare->parsed()) {
            // Defaults match the built-in comparison configuration.
            if (compare_activation != nullptr && compare_activation->count() == 0 &&
                opts.activation == "relu")
                opts.activation = "monomial:3";
            if (opts.input.empty() && opts.input_file.empty() && opts.n0 == 0) opts.input = "1";
            if (opts.widths.empty()) opts.widths = "1";
            const auto act = build_activation(opts);
            const auto x = build_input(opts);
            const auto arch = build_arch(opts, x);
            const auto comp = gnncert::comparison_bounds(act, arch, x, scheme);
            const auto direct = gnncert::shallow_bounds(act, arch, x, scheme);
            std::vector<gnncert::BoundReport> reports(comp.begin(), comp.end());
            reports.insert(reports.end(), direct.begin(), direct.end());
            emit_bounds(reports, opts.format);
        }
    } catch (const gnncert::ResourceError& e) {
        std::cerr << json{{"error", {{"type", "resource"}, {"message", e.what()}}}}.dump() << "\n";
        return 4;
    } catch (const gnncert::DomainError& e) {
        std::cerr << json{{"error", {{"type", "domain"}, {"message", e.what()}}}}.dump() << "\n";
        return 3;
    } catch (const std::exception& e) {
        std::cerr << json{{"error", {{"type", "internal"}, {"message", e.what()}}}}.dump() << "\n";
        return 3;
    }
    return 0;
}
