#include "gwloc/cli.hpp"

#include "gwloc/graphs.hpp"
#include "gwloc/invariants.hpp"
#include "gwloc/localization.hpp"
#include "gwloc/report.hpp"

#include <CLI11.hpp>

#include <chrono>
#include <cstdlib>
#include <iomanip>
#include <ostream>
#include <sstream>

namespace gwloc::cli {

namespace {

using invariants::ComputeOptions;
using invariants::CYType;
using invariants::InvariantReport;
using localization::WeightVector;

constexpr int kOverrideMaxDegree = 12;

struct RunConfig {
    std::string format = "text";
    int jobs = 1;
    std::string weights = "auto";
    bool allow_high_degree = false;

    int degree = 1;
    std::vector<int> type;
    int dim = 0;
    bool count = false;
    bool list = false;
    int which = 1;
    bool engine = false;
};

class UsageError : public std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

int default_jobs() {
    if (const char* env = std::getenv(kJobsEnv)) {
        try {
            const int jobs = std::stoi(env);
            if (jobs >= 1) {
                return jobs;
            }
        } catch (const std::exception&) {
        }
        throw UsageError(std::string(kJobsEnv) + " must be a positive integer");
    }
    return 1;
}

std::vector<int> parse_int_list(const std::string& text) {
    std::vector<int> out;
    std::stringstream in(text);
    std::string item;
    while (std::getline(in, item, ',')) {
        try {
            std::size_t used = 0;
            out.push_back(std::stoi(item, &used));
            if (used != item.size()) {
                throw UsageError("bad integer '" + item + "'");
            }
        } catch (const std::logic_error&) {
            throw UsageError("bad integer '" + item + "'");
        }
    }
    return out;
}

ComputeOptions compute_options(const RunConfig& cfg, int r, std::ostream& err) {
    ComputeOptions options;
    options.jobs = cfg.jobs;
    options.max_degree = cfg.allow_high_degree ? kOverrideMaxDegree : invariants::kDefaultMaxDegree;
    if (cfg.allow_high_degree) {
        err << "warning: degrees above " << invariants::kDefaultMaxDegree
            << " are slow, and instanton numbers need not equal curve counts there\n";
    }
    if (cfg.weights == "pow10") {
        options.weights = WeightVector::pow10(r);
    } else if (cfg.weights == "primes") {
        options.weights = WeightVector::primes(r);
    } else if (cfg.weights != "auto") {
        std::vector<Rational> values;
        std::stringstream in(cfg.weights);
        std::string item;
        while (std::getline(in, item, ',')) {
            values.push_back(Rational::parse(item));
        }
        if (static_cast<int>(values.size()) != r + 1) {
            throw UsageError("expected " + std::to_string(r + 1) + " weights");
        }
        options.weights = WeightVector::custom(std::move(values));
    }
    if (cfg.degree > options.max_degree) {
        throw UsageError("degree " + std::to_string(cfg.degree) + " exceeds the cap " +
                         std::to_string(options.max_degree) + " (see --allow-high-degree)");
    }
    return options;
}

void emit(const std::vector<InvariantReport>& reports, bool as_array, const RunConfig& cfg, std::ostream& out) {
    if (cfg.format == "json") {
        if (as_array) {
            report::Json array = report::Json::array();
            for (const auto& r : reports) {
                array.push_back(report::to_json(r));
            }
            out << array.dump() << '\n';
        } else {
            out << report::to_json(reports.back()).dump() << '\n';
        }
        return;
    }
    if (as_array) {
        for (const auto& r : reports) {
            out << report::to_text(r);
        }
    } else {
        out << report::to_text(reports.back());
    }
}

int run_series(const RunConfig& cfg, const CYType& type, const std::string& command, std::ostream& out,
               std::ostream& err) {
    const ComputeOptions options = compute_options(cfg, type.ambient_dim(), err);
    const auto reports = invariants::compute_series(type, cfg.degree, options, command);
    emit(reports, false, cfg, out);
    return kOk;
}

int run_lines(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
    if (cfg.dim < 2) {
        throw UsageError("lines needs --dim >= 2");
    }
    const int r = cfg.dim;
    RunConfig line_cfg = cfg;
    line_cfg.degree = 1;
    const ComputeOptions options = compute_options(line_cfg, r, err);
    const std::vector<int> degree{2 * r - 3};
    const WeightVector w = options.weights ? *options.weights : WeightVector::pow10(r);

    const auto start = std::chrono::steady_clock::now();
    const Rational value = cfg.engine ? invariants::gw_invariant(r, 1, degree, w, {options.jobs})
                                      : invariants::lines_closed_form(r, w);
    const auto stop = std::chrono::steady_clock::now();

    InvariantReport report;
    report.command = "lines";
    report.r = r;
    report.degree = 1;
    report.type = degree;
    report.N = value;
    if (!value.is_integer()) {
        throw invariants::IntegralityViolation(1, value);
    }
    report.n = value.numerator();
    report.graph_count = graphs::count_fixed_graphs(r, 1);
    report.weight_strategy = std::string(localization::to_string(w.strategy()));
    report.jobs = options.jobs;
    report.elapsed_ms = std::chrono::duration<double, std::milli>(stop - start).count();
    emit({report}, false, cfg, out);
    return kOk;
}

int run_graphs(const RunConfig& cfg, std::ostream& out) {
    if (cfg.dim < 1) {
        throw UsageError("graphs needs --dim >= 1");
    }
    if (cfg.list) {
        report::Json array = report::Json::array();
        for (graphs::DecoratedShape& s : graphs::decorated_shapes(cfg.degree)) {
            auto shared = std::make_shared<const graphs::DecoratedShape>(std::move(s));
            for (const graphs::FixedGraph& g : graphs::enumerate_labelings(shared, cfg.dim)) {
                if (cfg.format == "json") {
                    array.push_back(report::catalog_json(g));
                } else {
                    out << graphs::catalog_record(g) << '\n';
                }
            }
        }
        if (cfg.format == "json") {
            out << array.dump() << '\n';
        }
        return kOk;
    }
    const std::uint64_t count = graphs::count_fixed_graphs(cfg.dim, cfg.degree);
    if (cfg.format == "json") {
        report::Json j;
        j["command"] = "graphs";
        j["r"] = cfg.dim;
        j["degree"] = cfg.degree;
        j["graph_count"] = count;
        out << j.dump() << '\n';
    } else {
        out << count << '\n';
    }
    return kOk;
}

int run_table(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
    std::vector<CYType> types;
    if (cfg.which == 1) {
        types.push_back(CYType{{5}});
    } else if (cfg.which == 2) {
        for (const CYType& t : invariants::cy_types()) {
            if (t.codimension() > 1) {
                types.push_back(t);
            }
        }
    } else {
        throw UsageError("--which must be 1 or 2");
    }
    std::vector<std::vector<InvariantReport>> columns;
    for (const CYType& t : types) {
        const ComputeOptions options = compute_options(cfg, t.ambient_dim(), err);
        columns.push_back(invariants::compute_series(t, cfg.degree, options, cfg.which == 1 ? "quintic" : "cicy"));
    }
    if (cfg.format == "json") {
        report::Json array = report::Json::array();
        for (int d = 0; d < cfg.degree; ++d) {
            for (const auto& column : columns) {
                array.push_back(report::to_json(column[d]));
            }
        }
        out << array.dump() << '\n';
        return kOk;
    }
    out << std::left << std::setw(4) << "d";
    for (const CYType& t : types) {
        out << ' ' << std::setw(20) << t.to_string();
    }
    out << '\n';
    for (int d = 0; d < cfg.degree; ++d) {
        out << std::setw(4) << d + 1;
        for (const auto& column : columns) {
            out << ' ' << std::setw(20) << column[d].n->get_str();
        }
        out << '\n';
    }
    return kOk;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    RunConfig cfg;
    std::string type_text;

    CLI::App app{"Genus-zero Gromov-Witten invariants of Calabi-Yau complete intersections by torus localization"};
    app.require_subcommand(1);
    app.set_help_all_flag("--help-all");

    auto add_common = [&](CLI::App* sub) {
        sub->add_option("--format", cfg.format, "Output format")->check(CLI::IsMember({"text", "json"}));
        sub->add_option("--jobs", cfg.jobs, std::string("Worker threads (default from ") + kJobsEnv + ")")
            ->check(CLI::PositiveNumber);
        sub->add_option("--weights", cfg.weights, "auto, pow10, primes, or a comma-separated list of rationals");
        sub->add_flag("--allow-high-degree", cfg.allow_high_degree, "Permit degrees above 6");
    };

    auto* quintic = app.add_subcommand("quintic", "N_d and n_d of the quintic threefold in P^4");
    quintic->add_option("--degree", cfg.degree, "Curve degree")->required()->check(CLI::PositiveNumber);
    add_common(quintic);

    auto* cicy = app.add_subcommand("cicy", "N_d and n_d of a complete intersection Calabi-Yau threefold");
    cicy->add_option("--type", type_text, "Comma-separated degrees, e.g. 3,3")->required();
    cicy->add_option("--degree", cfg.degree, "Curve degree")->required()->check(CLI::PositiveNumber);
    add_common(cicy);

    auto* lines = app.add_subcommand("lines", "Lines on a general degree 2r-3 hypersurface in P^r");
    lines->add_option("--dim", cfg.dim, "Ambient dimension r >= 2")->required();
    lines->add_flag("--engine", cfg.engine, "Use the general Bott sum instead of the closed form");
    add_common(lines);

    auto* graphs_cmd = app.add_subcommand("graphs", "Count or list torus-fixed graphs");
    graphs_cmd->add_option("--dim", cfg.dim, "Ambient dimension r")->required();
    graphs_cmd->add_option("--degree", cfg.degree, "Curve degree")->required()->check(CLI::PositiveNumber);
    auto* count_flag = graphs_cmd->add_flag("--count", cfg.count, "Print the number of graphs");
    auto* list_flag = graphs_cmd->add_flag("--list", cfg.list, "Print one catalog record per graph");
    count_flag->excludes(list_flag);
    add_common(graphs_cmd);

    auto* table = app.add_subcommand("table", "Reproduce a table of instanton numbers");
    table->add_option("--which", cfg.which, "1: quintic, 2: the other four types")->required();
    table->add_option("--max-degree", cfg.degree, "Rows d = 1..max")->required()->check(CLI::PositiveNumber);
    add_common(table);

    std::vector<const char*> argv;
    for (const std::string& a : args) {
        argv.push_back(a.c_str());
    }
    try {
        cfg.jobs = default_jobs();
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::CallForHelp& e) {
        app.exit(e, out, err);
        return kOk;
    } catch (const CLI::CallForAllHelp& e) {
        app.exit(e, out, err);
        return kOk;
    } catch (const CLI::ParseError& e) {
        app.exit(e, out, err);
        return kInvalidArguments;
    } catch (const UsageError& e) {
        err << "error: " << e.what() << '\n';
        return kInvalidArguments;
    }

    try {
        if (quintic->parsed()) {
            return run_series(cfg, CYType{{5}}, "quintic", out, err);
        }
        if (cicy->parsed()) {
            return run_series(cfg, invariants::make_cy_type(parse_int_list(type_text)), "cicy", out, err);
        }
        if (lines->parsed()) {
            return run_lines(cfg, out, err);
        }
        if (graphs_cmd->parsed()) {
            return run_graphs(cfg, out);
        }
        return run_table(cfg, out, err);
    } catch (const localization::DegenerateWeights& e) {
        err << "error: " << e.what() << '\n';
        return kDegenerateWeights;
    } catch (const invariants::IntegralityViolation& e) {
        err << "error: " << e.what() << '\n';
        return kIntegralityViolation;
    } catch (const std::invalid_argument& e) {
        err << "error: " << e.what() << '\n';
        return kInvalidArguments;
    } catch (const std::domain_error& e) {
        err << "error: " << e.what() << '\n';
        return kInvalidArguments;
    }
}

}  // namespace gwloc::cli
