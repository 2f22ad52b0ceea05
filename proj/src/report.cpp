#include "gwloc/report.hpp"

#include <sstream>
#include <stdexcept>

namespace gwloc::report {

Json to_json(const invariants::InvariantReport& report) {
    Json j;
    j["command"] = report.command;
    j["r"] = report.r;
    j["degree"] = report.degree;
    j["type"] = report.type;
    j["N"] = report.N.to_string();
    if (const auto value = report.N.to_int64()) {
        j["N_int"] = *value;
    }
    j["n"] = report.n ? Json(report.n->get_str()) : Json(nullptr);
    j["graph_count"] = report.graph_count;
    j["weight_strategy"] = report.weight_strategy;
    j["jobs"] = report.jobs;
    j["elapsed_ms"] = report.elapsed_ms;
    return j;
}

invariants::InvariantReport from_json(const Json& j) {
    try {
        invariants::InvariantReport report;
        report.command = j.at("command").get<std::string>();
        report.r = j.at("r").get<int>();
        report.degree = j.at("degree").get<int>();
        report.type = j.at("type").get<std::vector<int>>();
        report.N = Rational::parse(j.at("N").get<std::string>());
        if (j.contains("N_int") && Rational(j.at("N_int").get<long>()) != report.N) {
            throw std::invalid_argument("N_int disagrees with N");
        }
        if (!j.at("n").is_null()) {
            report.n = mpz_class(j.at("n").get<std::string>(), 10);
        }
        report.graph_count = j.at("graph_count").get<std::uint64_t>();
        report.weight_strategy = j.at("weight_strategy").get<std::string>();
        report.jobs = j.at("jobs").get<int>();
        report.elapsed_ms = j.at("elapsed_ms").get<double>();
        return report;
    } catch (const nlohmann::json::exception& e) {
        throw std::invalid_argument(std::string("malformed report: ") + e.what());
    }
}

std::string to_text(const invariants::InvariantReport& report) {
    std::ostringstream out;
    std::string type = "(";
    for (std::size_t i = 0; i < report.type.size(); ++i) {
        type += (i ? "," : "") + std::to_string(report.type[i]);
    }
    type += ")";
    out << report.command << ' ' << type << " in P^" << report.r << ", degree " << report.degree << '\n';
    out << "N_" << report.degree << " = " << report.N << '\n';
    if (report.n) {
        out << "n_" << report.degree << " = " << report.n->get_str() << '\n';
    }
    out << "graphs: " << report.graph_count << ", weights: " << report.weight_strategy
        << ", jobs: " << report.jobs << ", elapsed: " << report.elapsed_ms << " ms\n";
    return out.str();
}

Json catalog_json(const graphs::FixedGraph& graph) {
    const graphs::DecoratedShape& s = *graph.decorated;
    Json edges = Json::array();
    const auto e = s.shape.edges();
    for (std::size_t k = 0; k < e.size(); ++k) {
        edges.push_back({e[k].u, e[k].v, s.degrees[k]});
    }
    Json j;
    j["key"] = s.key;
    j["edges"] = std::move(edges);
    j["labels"] = graph.labels;
    j["a_gamma"] = graphs::a_gamma(graph);
    return j;
}

}  // namespace gwloc::report
