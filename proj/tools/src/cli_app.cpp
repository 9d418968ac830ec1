#include "cli_app.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <optional>
#include <sstream>

#include "stochdom/convexity_test.hpp"
#include "stochdom/dominance_core.hpp"
#include "stochdom/rng.hpp"
#include "stochdom/ssd_conditions.hpp"

namespace stochdom::cli {

namespace {

using ordered_json = nlohmann::ordered_json;

constexpr const char* kToolVersion = "0.1.0";

struct CommonOptions {
    std::uint64_t seed = 42;
    int runs = 3000;
    double alpha = 0.1;
    std::string format = "text";
    std::string cache_dir = ".stochdom-cache";
    bool no_cache = false;

    std::optional<std::filesystem::path> cache() const {
        if (no_cache || cache_dir.empty()) return std::nullopt;
        return std::filesystem::path(cache_dir);
    }
};

void add_common(CLI::App* cmd, CommonOptions& opts) {
    cmd->add_option("--seed", opts.seed, "Random seed (echoed in the output)");
    cmd->add_option("--runs", opts.runs, "Monte Carlo runs for null tables");
    cmd->add_option("--alpha", opts.alpha, "Test level in (0,1)")
        ->check(CLI::Range(1e-9, 1.0 - 1e-9));
    cmd->add_option("--format", opts.format, "Output format")
        ->check(CLI::IsMember({"json", "csv", "text"}));
    cmd->add_option("--cache-dir", opts.cache_dir, "Null-table cache directory");
    cmd->add_flag("--no-cache", opts.no_cache, "Disable the null-table cache");
}

ordered_json envelope(const char* command, const CommonOptions& opts) {
    ordered_json doc;
    doc["tool"] = "stochdom";
    doc["version"] = kToolVersion;
    doc["command"] = command;
    doc["seed"] = opts.seed;
    return doc;
}

std::string fmt_double(double v) {
    std::ostringstream os;
    os << std::setprecision(12) << v;
    return os.str();
}

ConvexityClass parse_class(const std::string& name) {
    return convexity_class_from_string(name);
}

TransformKind transform_for_class_flag(const std::string& flag) {
    if (flag == "c") return TransformKind::uniform;
    if (flag == "ifr") return TransformKind::exponential;
    if (flag == "co") return TransformKind::odds;
    throw CLI::ValidationError("--transform", "expected one of c, ifr, co");
}

std::vector<double> read_sample_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open sample file: " + path);
    std::vector<double> values;
    std::string token;
    long line = 1;
    char c;
    std::string buffer;
    auto flush_token = [&]() {
        if (buffer.empty()) return;
        try {
            std::size_t used = 0;
            const double v = std::stod(buffer, &used);
            if (used != buffer.size()) throw std::invalid_argument(buffer);
            values.push_back(v);
        } catch (const std::exception&) {
            throw std::runtime_error("sample file " + path + " line " +
                                     std::to_string(line) + ": invalid number '" +
                                     buffer + "'");
        }
        buffer.clear();
    };
    while (in.get(c)) {
        if (c == '\n') {
            flush_token();
            ++line;
        } else if (c == ',' || c == ';' || std::isspace(static_cast<unsigned char>(c))) {
            flush_token();
        } else {
            buffer.push_back(c);
        }
    }
    flush_token();
    if (values.empty()) throw std::runtime_error("sample file is empty: " + path);
    return values;
}

ordered_json verdict_json(const DominanceVerdict& v) {
    ordered_json j;
    j["class"] = to_string(v.condition_checked);
    j["certified"] = v.certified;
    j["rank_ok"] = v.rank_ok;
    j["degree_ok"] = v.degree_ok;
    j["lhs"] = v.lhs;
    j["rhs"] = v.rhs;
    j["condition_used"] = v.condition_used ? to_string(v.condition_checked) : "none";
    return j;
}

void print_kv_block(std::ostream& out, const ordered_json& doc, int indent = 0) {
    for (const auto& [key, value] : doc.items()) {
        for (int k = 0; k < indent; ++k) out << "  ";
        if (value.is_object()) {
            out << key << ":\n";
            print_kv_block(out, value, indent + 1);
        } else if (value.is_array()) {
            out << key << ": " << value.dump() << "\n";
        } else {
            out << key << ": " << (value.is_string() ? value.get<std::string>()
                                                     : value.dump())
                << "\n";
        }
    }
}

void emit(std::ostream& out, const CommonOptions& opts, const ordered_json& doc) {
    if (opts.format == "json") {
        out << doc.dump(2) << "\n";
    } else if (opts.format == "csv") {
        for (const auto& [key, value] : doc.items()) {
            if (value.is_object() || value.is_array()) continue;
            out << key << ","
                << (value.is_string() ? value.get<std::string>() : value.dump()) << "\n";
        }
    } else {
        print_kv_block(out, doc);
    }
}

// ---------------------------------------------------------------- compare

struct CompareArgs {
    CommonOptions common;
    std::string class_name;
    std::string parent_spec;
    std::string x_spec;
    std::string y_spec;
    int i = 0, n = 0, j = 0, m = 0;
    int k_max = 0;
    bool verify_numeric = false;
};

std::vector<ConvexityClass> classes_to_check(const CompareArgs& args,
                                             const ParametricDistribution* reference,
                                             ordered_json& notes) {
    const std::vector<ConvexityClass> all = {ConvexityClass::C, ConvexityClass::CL,
                                             ConvexityClass::IFR, ConvexityClass::CO};
    if (!args.class_name.empty() && args.class_name != "all")
        return {parse_class(args.class_name)};
    if (args.class_name == "all" || reference == nullptr) return all;

    std::vector<ConvexityClass> member_of;
    for (ConvexityClass c : all)
        if (class_membership(*reference, c).member) member_of.push_back(c);
    if (member_of.empty())
        notes.push_back("reference distribution is in none of the catalog classes");
    return member_of;
}

int cmd_compare(const CompareArgs& args, std::ostream& out) {
    const OrderStatSpec si(args.i, args.n);
    const OrderStatSpec sj(args.j, args.m);

    ordered_json doc = envelope("compare", args.common);
    ordered_json notes = ordered_json::array();
    doc["i"] = args.i;
    doc["n"] = args.n;
    doc["j"] = args.j;
    doc["m"] = args.m;

    const bool two_sample = !args.x_spec.empty();
    std::optional<ParametricDistribution> x_dist, y_dist, parent;
    if (two_sample) {
        x_dist = ParametricDistribution::parse(args.x_spec);
        y_dist = ParametricDistribution::parse(args.y_spec);
        doc["x"] = x_dist->to_spec_string();
        doc["y"] = y_dist->to_spec_string();
    } else if (!args.parent_spec.empty()) {
        parent = ParametricDistribution::parse(args.parent_spec);
        doc["parent"] = parent->to_spec_string();
    }

    const ParametricDistribution* reference =
        two_sample ? (y_dist ? &*y_dist : nullptr) : (parent ? &*parent : nullptr);
    const auto classes = classes_to_check(args, reference, notes);

    std::optional<DominanceDegree> degree;
    if (two_sample) {
        ordered_json dj;
        const int k_max = args.k_max > 0 ? args.k_max : std::max(args.i, 64);
        dj["k_max"] = k_max;
        try {
            degree = dominance_degree(*x_dist, *y_dist, k_max);
            dj["applicable"] = true;
            dj["fsd"] = degree->fsd;
            if (!degree->fsd) {
                dj["k"] = degree->k;
                dj["certified_up_to"] = degree->certified_up_to;
                dj["exhausted"] = degree->exhausted;
            }
        } catch (const DegreeError& e) {
            dj["applicable"] = false;
            dj["reason"] = e.what();
        } catch (const DivergentMeanError& e) {
            dj["applicable"] = false;
            dj["reason"] = e.what();
        }
        doc["degree"] = dj;
    }

    ordered_json verdicts = ordered_json::array();
    bool any_certified = false;
    for (ConvexityClass c : classes) {
        DominanceVerdict v;
        if (two_sample) {
            if (degree) {
                v = corollary2(c, *degree, si, sj);
            } else {
                v = corollary1(c, si, sj);
                v.degree_ok = false;
                v.certified = false;
                v.condition_used = false;
            }
        } else {
            v = corollary1(c, si, sj);
        }
        any_certified = any_certified || v.certified;
        verdicts.push_back(verdict_json(v));
    }
    doc["verdicts"] = verdicts;
    doc["certified"] = any_certified;

    if (args.verify_numeric) {
        ordered_json oracle;
        const ParametricDistribution* dx = two_sample ? &*x_dist : (parent ? &*parent : nullptr);
        const ParametricDistribution* dy = two_sample ? &*y_dist : (parent ? &*parent : nullptr);
        if (dx == nullptr) {
            oracle["ran"] = false;
            oracle["reason"] = "numeric check needs --parent or --x/--y";
        } else if (!order_stat_mean_exists(*dx, si) || !order_stat_mean_exists(*dy, sj)) {
            oracle["ran"] = false;
            oracle["reason"] = "order-statistic mean diverges; verdict would be inconclusive";
        } else {
            const SsdResult r =
                ssd_numeric(order_stat_dist(*dx, si), order_stat_dist(*dy, sj));
            oracle["ran"] = true;
            oracle["verdict"] = r.verdict == SsdOutcome::holds    ? "holds"
                                : r.verdict == SsdOutcome::fails ? "fails"
                                                                 : "inconclusive";
            oracle["worst_gap"] = r.worst_gap;
            oracle["worst_x"] = std::isfinite(r.worst_x) ? ordered_json(r.worst_x)
                                                         : ordered_json("infinity");
            oracle["tolerance"] = r.tolerance;
        }
        doc["numeric_oracle"] = oracle;
    }
    if (!notes.empty()) doc["notes"] = notes;
    emit(out, args.common, doc);
    return 0;
}

// --------------------------------------------------------------- min-rank

struct MinRankArgs {
    CommonOptions common;
    std::string class_name = "co";
    int n = 0, j = 0, m = 0;
};

int cmd_min_rank(const MinRankArgs& args, std::ostream& out) {
    const OrderStatSpec sj(args.j, args.m);
    std::vector<MinRankStep> trace;
    const auto found = min_rank(parse_class(args.class_name), args.n, sj, &trace);

    ordered_json doc = envelope("min-rank", args.common);
    doc["class"] = args.class_name;
    doc["n"] = args.n;
    doc["j"] = args.j;
    doc["m"] = args.m;
    doc["min_rank"] = found ? ordered_json(*found) : ordered_json(nullptr);
    ordered_json steps = ordered_json::array();
    for (const auto& step : trace) {
        ordered_json s;
        s["i"] = step.i;
        s["certified"] = step.certified;
        steps.push_back(s);
    }
    doc["trace"] = steps;
    emit(out, args.common, doc);
    return 0;
}

// ------------------------------------------------------------ param-range

struct ParamRangeArgs {
    CommonOptions common;
    std::string family;
    std::vector<std::string> fixed;
    std::string free_name;
    double lo = 0.0, hi = 0.0, resolution = 1e-3;
    std::string y_spec;
    std::string class_name = "co";
    int i = 0, n = 0, j = 0, m = 0;
};

int cmd_param_range(const ParamRangeArgs& args, std::ostream& out) {
    ParamRangeRequest request;
    {
        // reuse the spec-string parser for the family name
        std::string probe = args.family + "(";
        bool found = false;
        for (Family f : {Family::uniform, Family::power_function, Family::logistic,
                         Family::gumbel, Family::exponential, Family::normal,
                         Family::beta, Family::gamma, Family::weibull, Family::cauchy,
                         Family::lognormal, Family::log_logistic, Family::pareto,
                         Family::dagum}) {
            if (args.family == to_string(f)) {
                request.family = f;
                found = true;
                break;
            }
        }
        if (!found) throw std::runtime_error("unknown family '" + args.family + "'");
    }
    for (const std::string& pair : args.fixed) {
        const auto eq = pair.find('=');
        if (eq == std::string::npos)
            throw std::runtime_error("--fix expects name=value, got '" + pair + "'");
        request.fixed[pair.substr(0, eq)] = std::stod(pair.substr(eq + 1));
    }
    request.free_name = args.free_name;
    request.lo = args.lo;
    request.hi = args.hi;
    request.resolution = args.resolution;

    const auto y = ParametricDistribution::parse(args.y_spec);
    const auto result = param_range_search(request, y, OrderStatSpec(args.i, args.n),
                                           OrderStatSpec(args.j, args.m),
                                           parse_class(args.class_name));

    ordered_json doc = envelope("param-range", args.common);
    doc["family"] = args.family;
    doc["free"] = args.free_name;
    doc["bounds"] = ordered_json::array({args.lo, args.hi});
    doc["y"] = y.to_spec_string();
    doc["class"] = args.class_name;
    doc["i"] = args.i;
    doc["n"] = args.n;
    doc["j"] = args.j;
    doc["m"] = args.m;
    doc["found"] = result.found;
    if (result.found) {
        doc["lo"] = result.lo;
        doc["hi"] = result.hi;
    }
    doc["predicate_evaluations"] = result.predicate_evaluations;
    ordered_json scan = ordered_json::array();
    for (const auto& step : result.scan) {
        ordered_json sj;
        sj["value"] = step.value;
        sj["certified"] = step.certified;
        scan.push_back(sj);
    }
    doc["scan"] = scan;
    if (!result.note.empty()) doc["note"] = result.note;
    emit(out, args.common, doc);
    return 0;
}

// -------------------------------------------------------- test-convexity

struct TestConvexityArgs {
    CommonOptions common;
    std::string sample_path;
    std::string transform;
    std::string null_table_path;
};

int cmd_test_convexity(const TestConvexityArgs& args, std::ostream& out,
                       std::ostream& err) {
    const TransformKind kind = transform_for_class_flag(args.transform);
    const std::vector<double> sample = read_sample_file(args.sample_path);
    const int n = static_cast<int>(sample.size());

    std::optional<NullTable> null;
    if (!args.null_table_path.empty()) {
        const std::filesystem::path path(args.null_table_path);
        std::ifstream in(path);
        if (!in) throw std::runtime_error("cannot open null table: " + args.null_table_path);
        std::string header, key;
        std::getline(in, header);
        std::getline(in, key);
        NullTable t;
        std::stringstream ks(key);
        std::string kind_name, field;
        std::getline(ks, kind_name, ',');
        std::getline(ks, field, ',');
        t.n = std::stoi(field);
        std::getline(ks, field, ',');
        t.runs = std::stoi(field);
        std::getline(ks, field, ',');
        t.seed = std::stoull(field);
        t.kind = transform_kind_from_string(kind_name);
        double v;
        while (in >> v) t.stats.push_back(v);
        t.low_precision = t.runs < 500;
        if (t.kind != kind || t.n != n ||
            static_cast<int>(t.stats.size()) != t.runs) {
            err << "warning: null table " << args.null_table_path
                << " does not match the sample (n=" << n
                << "); regenerating with runs=" << args.common.runs
                << " seed=" << args.common.seed << "\n";
        } else {
            null = std::move(t);
        }
    }
    if (!null)
        null = load_or_simulate_null(args.common.cache(), kind, n, args.common.runs,
                                     args.common.seed);

    const auto result = run_test(sample, kind, *null, args.common.alpha);

    ordered_json doc = envelope("test-convexity", args.common);
    doc["transform"] = args.transform;
    doc["n"] = n;
    doc["runs"] = result.runs;
    doc["alpha"] = result.alpha;
    doc["statistic"] = result.statistic;
    doc["p_value"] = result.p_value;
    doc["critical_value"] = result.critical_value;
    doc["decision"] = result.reject ? "reject" : "accept";
    if (null->low_precision)
        doc["warning"] = "null table built from fewer than 500 runs; low precision";
    if (result.jittered)
        doc["jitter_warning"] = "tied sample values were minimally separated";
    if (result.statistic > 0.9)
        doc["advisory"] =
            "statistic above 0.9; rule-of-thumb evidence against the hypothesis";

    if (args.common.format == "json") {
        ordered_json plot = ordered_json::array();
        for (std::size_t k = 0; k < result.plot_x.size(); ++k) {
            ordered_json row;
            row["x"] = result.plot_x[k];
            row["step"] = result.plot_step[k];
            row["gcm"] = result.plot_gcm[k];
            plot.push_back(row);
        }
        doc["gcm_nodes"] = plot;
        emit(out, args.common, doc);
    } else if (args.common.format == "csv") {
        emit(out, args.common, doc);
        out << "x,gcm\n";
        for (std::size_t k = 0; k < result.plot_x.size(); ++k)
            out << fmt_double(result.plot_x[k]) << ',' << fmt_double(result.plot_gcm[k])
                << "\n";
    } else {
        emit(out, args.common, doc);
        out << "gcm nodes (x, gcm):\n";
        for (std::size_t k = 0; k < result.plot_x.size(); ++k)
            out << "  " << fmt_double(result.plot_x[k]) << ' '
                << fmt_double(result.plot_gcm[k]) << "\n";
    }
    return 0;
}

// ------------------------------------------------------------- null-table

struct NullTableArgs {
    CommonOptions common;
    std::string transform = "co";
    int n = 0;
    int workers = 1;
};

int cmd_null_table(const NullTableArgs& args, std::ostream& out) {
    const TransformKind kind = transform_for_class_flag(args.transform);
    const NullTable table = load_or_simulate_null(args.common.cache(), kind, args.n,
                                                  args.common.runs, args.common.seed,
                                                  args.workers);
    if (args.common.format == "json") {
        ordered_json doc = envelope("null-table", args.common);
        doc["transform"] = args.transform;
        doc["n"] = table.n;
        doc["runs"] = table.runs;
        doc["low_precision"] = table.low_precision;
        doc["stats"] = table.stats;
        out << doc.dump(2) << "\n";
    } else {
        out << "kind,n,runs,seed\n"
            << to_string(table.kind) << ',' << table.n << ',' << table.runs << ','
            << table.seed << "\n";
        out << std::setprecision(17);
        for (double v : table.stats) out << v << "\n";
    }
    return 0;
}

// ----------------------------------------------------------------- tables

struct TablesArgs {
    CommonOptions common;
    std::string which;
    int replicates = 100;
    int runs_override = 0;
    int workers = 1;
};

int default_runs(int n, int runs_override) {
    if (runs_override > 0) return runs_override;
    return n <= 30 ? 3000 : 1000;
}

int cmd_tables(const TablesArgs& args, std::ostream& out) {
    out << "# seed," << args.common.seed << "\n";
    if (args.which == "table2") {
        const std::vector<int> sizes = {10, 15, 20, 25, 30, 40, 50, 75, 100};
        const std::vector<double> probs = {0.1, 0.2, 0.3, 0.4, 0.5,
                                           0.6, 0.7, 0.8, 0.9, 0.95};
        std::vector<NullTable> tables;
        bool low_precision = false;
        for (int n : sizes) {
            tables.push_back(load_or_simulate_null(
                args.common.cache(), TransformKind::odds, n,
                default_runs(n, args.runs_override),
                derive_seed(args.common.seed, 1u << 20 | static_cast<unsigned>(n)),
                args.workers));
            low_precision = low_precision || tables.back().low_precision;
        }
        if (low_precision) out << "# warning: fewer than 500 runs; low precision\n";
        out << "runs";
        for (const auto& t : tables) out << ',' << t.runs;
        out << "\np/n";
        for (int n : sizes) out << ',' << n;
        out << "\n";
        for (double p : probs) {
            out << p;
            for (const auto& t : tables)
                out << ',' << std::fixed << std::setprecision(3) << t.quantile(p)
                    << std::defaultfloat;
            out << "\n";
        }
        return 0;
    }
    if (args.which == "table3") {
        const std::vector<const char*> family_specs = {
            "gamma(a=2,b=1)",  "gamma(a=1,b=1)",  "gamma(a=0.5,b=1)",
            "pareto(a=2,b=1)", "pareto(a=1,b=1)", "pareto(a=0.5,b=1)"};
        std::vector<ParametricDistribution> families;
        for (const char* spec : family_specs)
            families.push_back(ParametricDistribution::parse(spec));
        const std::vector<int> sizes = {25, 50, 75, 100};

        if (args.replicates < 500 && args.runs_override > 0 && args.runs_override < 500)
            out << "# warning: fewer than 500 runs; low precision\n";
        out << "family/n";
        for (int n : sizes) out << ',' << n;
        out << "\n";
        for (std::size_t fi = 0; fi < families.size(); ++fi) {
            out << family_specs[fi];
            for (int n : sizes) {
                const auto rows = power_study(
                    {families[fi]}, {n}, args.replicates, args.common.alpha,
                    default_runs(n, args.runs_override), args.common.seed,
                    args.common.cache(), TransformKind::odds, args.workers);
                const auto& r = rows.front();
                out << ',' << std::fixed << std::setprecision(2) << r.mean_p << ';'
                    << r.sd_p << ';' << std::setprecision(0) << 100 * r.acceptance << '%'
                    << std::defaultfloat;
            }
            out << "\n";
        }
        return 0;
    }
    throw std::runtime_error("--which must be table2 or table3");
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Stochastic-dominance decisions for k-out-of-n system lifetimes"};
    app.require_subcommand(1);

    CompareArgs compare_args;
    CLI::App* compare = app.add_subcommand(
        "compare", "Check sufficient conditions for X_{i:n} >=_2 Y_{j:m}");
    add_common(compare, compare_args.common);
    compare->add_option("--class", compare_args.class_name,
                        "Convexity class: c, cl, ifr, co or all");
    compare->add_option("--parent", compare_args.parent_spec,
                        "One-sample parent distribution spec");
    compare->add_option("--x", compare_args.x_spec, "Two-sample X distribution spec");
    compare->add_option("--y", compare_args.y_spec, "Two-sample Y distribution spec")
        ->needs(compare->get_option("--x"));
    compare->add_option("--i", compare_args.i, "Rank i")->required();
    compare->add_option("--n", compare_args.n, "Sample size n")->required();
    compare->add_option("--j", compare_args.j, "Rank j")->required();
    compare->add_option("--m", compare_args.m, "Sample size m")->required();
    compare->add_option("--k-max", compare_args.k_max,
                        "Degree scan bound (default max(i, 64))");
    compare->add_flag("--verify-numeric", compare_args.verify_numeric,
                      "Confirm certified verdicts with the numeric SSD oracle");

    MinRankArgs min_rank_args;
    CLI::App* min_rank_cmd = app.add_subcommand(
        "min-rank", "Smallest rank i with X_{i:n} >=_2 X_{j:m} certified");
    add_common(min_rank_cmd, min_rank_args.common);
    min_rank_cmd->add_option("--class", min_rank_args.class_name, "Convexity class")
        ->required();
    min_rank_cmd->add_option("--n", min_rank_args.n, "Sample size n")->required();
    min_rank_cmd->add_option("--j", min_rank_args.j, "Rank j")->required();
    min_rank_cmd->add_option("--m", min_rank_args.m, "Sample size m")->required();

    ParamRangeArgs param_range_args;
    CLI::App* param_range_cmd = app.add_subcommand(
        "param-range", "Certified interval of one free family parameter");
    add_common(param_range_cmd, param_range_args.common);
    param_range_cmd->add_option("--family", param_range_args.family, "Family name")
        ->required();
    param_range_cmd->add_option("--fix", param_range_args.fixed,
                                "Fixed parameter name=value (repeatable)");
    param_range_cmd->add_option("--free", param_range_args.free_name,
                                "Free parameter name")
        ->required();
    param_range_cmd->add_option("--lo", param_range_args.lo, "Lower bound")->required();
    param_range_cmd->add_option("--hi", param_range_args.hi, "Upper bound")->required();
    param_range_cmd->add_option("--resolution", param_range_args.resolution,
                                "Boundary resolution");
    param_range_cmd->add_option("--y", param_range_args.y_spec, "Y distribution spec")
        ->required();
    param_range_cmd->add_option("--class", param_range_args.class_name,
                                "Convexity class of Y");
    param_range_cmd->add_option("--i", param_range_args.i, "Rank i")->required();
    param_range_cmd->add_option("--n", param_range_args.n, "Sample size n")->required();
    param_range_cmd->add_option("--j", param_range_args.j, "Rank j")->required();
    param_range_cmd->add_option("--m", param_range_args.m, "Sample size m")->required();

    TestConvexityArgs test_args;
    CLI::App* test_cmd = app.add_subcommand(
        "test-convexity", "Nonparametric convexity-class test of a sample");
    add_common(test_cmd, test_args.common);
    test_cmd->add_option("--sample", test_args.sample_path, "Sample file (text/CSV)")
        ->required();
    test_cmd->add_option("--transform", test_args.transform,
                         "Hypothesis class: c, ifr or co");
    test_cmd->add_flag_callback("--c", [&] { test_args.transform = "c"; },
                                "Test the convex-cdf class");
    test_cmd->add_flag_callback("--ifr", [&] { test_args.transform = "ifr"; },
                                "Test the increasing-failure-rate class");
    test_cmd->add_flag_callback("--co", [&] { test_args.transform = "co"; },
                                "Test the odds-convex class");
    test_cmd->add_option("--null-table", test_args.null_table_path,
                         "Explicit null-table CSV (regenerated on mismatch)");

    NullTableArgs null_args;
    CLI::App* null_cmd =
        app.add_subcommand("null-table", "Simulate or load a null table");
    add_common(null_cmd, null_args.common);
    null_cmd->add_option("--transform", null_args.transform, "Class: c, ifr or co");
    null_cmd->add_option("--n", null_args.n, "Sample size")->required();
    null_cmd->add_option("--workers", null_args.workers, "Worker threads");

    TablesArgs tables_args;
    CLI::App* tables_cmd =
        app.add_subcommand("tables", "Regenerate the simulation study tables");
    add_common(tables_cmd, tables_args.common);
    tables_cmd->add_option("--which", tables_args.which, "table2 or table3")
        ->required()
        ->check(CLI::IsMember({"table2", "table3"}));
    tables_cmd->add_option("--replicates", tables_args.replicates,
                           "Replicates per cell (table3)");
    tables_cmd
        ->add_option("--runs-override", tables_args.runs_override,
                     "Override the per-size null run counts")
        ->check(CLI::PositiveNumber);
    tables_cmd->add_option("--workers", tables_args.workers, "Worker threads");

    std::vector<const char*> argv;
    argv.push_back("stochdom");
    for (const std::string& a : args) argv.push_back(a.c_str());

    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) {  // --help
            out << app.help();
            return 0;
        }
        err << "error: " << e.what() << "\n";
        return 2;
    }

    try {
        if (compare->parsed()) {
            if (compare_args.class_name.empty() && compare_args.parent_spec.empty() &&
                compare_args.x_spec.empty())
                throw std::runtime_error(
                    "compare needs --class, --parent, or --x/--y to pick conditions");
            return cmd_compare(compare_args, out);
        }
        if (min_rank_cmd->parsed()) return cmd_min_rank(min_rank_args, out);
        if (param_range_cmd->parsed()) return cmd_param_range(param_range_args, out);
        if (test_cmd->parsed()) {
            if (test_args.transform.empty())
                throw std::runtime_error(
                    "test-convexity needs --transform or one of --c/--ifr/--co");
            return cmd_test_convexity(test_args, out, err);
        }
        if (null_cmd->parsed()) return cmd_null_table(null_args, out);
        if (tables_cmd->parsed()) return cmd_tables(tables_args, out);
    } catch (const SpecParseError& e) {
        err << "error: distribution spec, position " << e.position << ": " << e.what()
            << "\n";
        return 1;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return 1;
    }
    return 2;
}

}  // namespace stochdom::cli
