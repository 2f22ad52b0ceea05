#include "gwloc/invariants.hpp"

#include "gwloc/graphs.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <numeric>
#include <thread>

namespace gwloc::invariants {

using localization::DegenerateWeights;
using localization::WeightStrategy;
using localization::WeightVector;

bool CYType::is_calabi_yau() const {
    if (degrees.empty()) {
        return false;
    }
    for (int d : degrees) {
        if (d < 2) {
            return false;
        }
    }
    return std::accumulate(degrees.begin(), degrees.end(), 0) == codimension() + 4;
}

std::string CYType::to_string() const {
    std::string out = "(";
    for (std::size_t i = 0; i < degrees.size(); ++i) {
        out += (i ? "," : "") + std::to_string(degrees[i]);
    }
    return out + ")";
}

std::vector<CYType> cy_types() {
    // sum d_i = k + 4 with every d_i >= 2 forces k <= 4.
    std::vector<CYType> out;
    for (int k = 1; k <= 4; ++k) {
        std::vector<int> parts(k, 2);
        auto recurse = [&](auto&& self, int index, int remaining, int cap) -> void {
            if (index == k) {
                if (remaining == 0) {
                    out.push_back(CYType{parts});
                }
                return;
            }
            for (int part = std::min(cap, remaining); part >= 2; --part) {
                parts[index] = part;
                self(self, index + 1, remaining - part, part);
            }
        };
        recurse(recurse, 0, k + 4, k + 4);
    }
    return out;
}

CYType make_cy_type(std::vector<int> degrees) {
    std::sort(degrees.begin(), degrees.end(), std::greater<>());
    CYType type{std::move(degrees)};
    if (!type.is_calabi_yau()) {
        throw std::invalid_argument("type " + type.to_string() + " is not a Calabi-Yau complete intersection");
    }
    return type;
}

int moduli_dim(int r, int d, int n) {
    if (r < 1 || d < 1 || n < 0) {
        throw std::invalid_argument("moduli_dim needs r, d >= 1 and n >= 0");
    }
    return r * d + r + d + n - 3;
}

namespace {

struct WorkUnit {
    std::size_t shape;
    int root_label;
};

}  // namespace

Rational gw_invariant(int r, int d, std::span<const int> bundle_degrees, const WeightVector& w,
                      SumOptions options) {
    if (r < 1 || d < 1) {
        throw std::invalid_argument("r and d must be positive");
    }
    if (w.r() != r) {
        throw std::invalid_argument("weight vector has the wrong length");
    }
    const auto check = localization::check_nondegenerate(r, d, w, bundle_degrees);
    if (!check.ok) {
        throw DegenerateWeights(*check.factor);
    }

    const std::vector<graphs::DecoratedShape> shapes = graphs::decorated_shapes(d);
    std::vector<WorkUnit> units;
    for (std::size_t s = 0; s < shapes.size(); ++s) {
        for (int root = 0; root <= r; ++root) {
            units.push_back({s, root});
        }
    }
    const std::vector<int> degrees(bundle_degrees.begin(), bundle_degrees.end());
    const int jobs = std::max(1, std::min<int>(options.jobs, static_cast<int>(units.size())));

    std::vector<mpq_class> partial(jobs);
    std::atomic<std::size_t> next{0};
    auto worker = [&](int id) {
        const localization::SummandEvaluator evaluator(w, d, degrees);
        mpq_class& sum = partial[id];
        for (std::size_t u = next++; u < units.size(); u = next++) {
            const graphs::DecoratedShape& shape = shapes[units[u].shape];
            graphs::for_each_labeling_with_root(shape, r, units[u].root_label, [&](std::span<const int> labels) {
                evaluator.accumulate(shape, labels, sum);
            });
        }
    };

    if (jobs == 1) {
        worker(0);
    } else {
        std::vector<std::exception_ptr> errors(jobs);
        std::vector<std::thread> threads;
        for (int id = 0; id < jobs; ++id) {
            threads.emplace_back([&, id] {
                try {
                    worker(id);
                } catch (...) {
                    errors[id] = std::current_exception();
                    next = units.size();
                }
            });
        }
        for (auto& t : threads) {
            t.join();
        }
        for (const auto& e : errors) {
            if (e) {
                std::rethrow_exception(e);
            }
        }
    }

    mpq_class total;
    for (const mpq_class& p : partial) {
        total += p;
    }
    return Rational(total);
}

Rational gw_invariant_reference(int r, int d, std::span<const int> bundle_degrees, const WeightVector& w) {
    Rational total;
    for (graphs::DecoratedShape& s : graphs::decorated_shapes(d)) {
        auto shared = std::make_shared<const graphs::DecoratedShape>(std::move(s));
        for (const graphs::FixedGraph& g : graphs::enumerate_labelings(shared, r)) {
            total += localization::bott_summand(g, w, bundle_degrees);
        }
    }
    return total;
}

std::vector<mpz_class> instanton_numbers(std::span<const Rational> invariants) {
    std::vector<mpz_class> out;
    const int count = static_cast<int>(invariants.size());
    for (int d = 1; d <= count; ++d) {
        Rational value = invariants[d - 1];
        for (int k = 2; k <= d; ++k) {
            if (d % k == 0) {
                const long cube = static_cast<long>(k) * k * k;
                value -= Rational(out[d / k - 1]) / Rational(cube);
            }
        }
        if (!value.is_integer()) {
            throw IntegralityViolation(d, value);
        }
        out.push_back(value.numerator());
    }
    return out;
}

std::vector<Rational> invariants_from_instantons(std::span<const mpz_class> instantons) {
    std::vector<Rational> out;
    const int count = static_cast<int>(instantons.size());
    for (int d = 1; d <= count; ++d) {
        Rational value;
        for (int k = 1; k <= d; ++k) {
            if (d % k == 0) {
                const long cube = static_cast<long>(k) * k * k;
                value += Rational(instantons[d / k - 1]) / Rational(cube);
            }
        }
        out.push_back(value);
    }
    return out;
}

Rational lines_closed_form(int r, const WeightVector& w) {
    if (r < 2) {
        throw std::invalid_argument("lines need r >= 2");
    }
    if (w.r() != r) {
        throw std::invalid_argument("weight vector has the wrong length");
    }
    const int m = 2 * r - 3;
    Rational total;
    for (int i = 0; i <= r; ++i) {
        for (int j = i + 1; j <= r; ++j) {
            Rational num(1);
            for (int a = 0; a <= m; ++a) {
                num *= Rational(a) * w[i] + Rational(m - a) * w[j];
            }
            Rational den(1);
            for (int k = 0; k <= r; ++k) {
                if (k != i && k != j) {
                    den *= (w[i] - w[k]) * (w[j] - w[k]);
                }
            }
            if (den.is_zero()) {
                throw DegenerateWeights("lines denominator for (" + std::to_string(i) + "," + std::to_string(j) + ")");
            }
            total += num / den;
        }
    }
    return total;
}

namespace {

struct Computed {
    Rational value;
    std::string strategy;
};

Computed compute_with_fallback(int r, int d, std::span<const int> degrees, const ComputeOptions& options) {
    if (options.weights) {
        if (options.weights->r() != r) {
            throw std::invalid_argument("explicit weights need " + std::to_string(r + 1) + " entries");
        }
        return {gw_invariant(r, d, degrees, *options.weights, {options.jobs}),
                std::string(localization::to_string(options.weights->strategy()))};
    }
    std::string last_failure;
    for (WeightStrategy strategy : {WeightStrategy::pow10, WeightStrategy::primes}) {
        const WeightVector w = WeightVector::make(strategy, r);
        const auto check = localization::check_nondegenerate(r, d, w, degrees);
        if (!check.ok) {
            last_failure = std::string(localization::to_string(strategy)) + ": " + *check.factor;
            continue;
        }
        return {gw_invariant(r, d, degrees, w, {options.jobs}), std::string(localization::to_string(strategy))};
    }
    throw DegenerateWeights("all weight strategies failed; last " + last_failure);
}

}  // namespace

std::vector<InvariantReport> compute_series(const CYType& type, int max_d, const ComputeOptions& options,
                                            const std::string& command) {
    if (max_d < 1) {
        throw std::invalid_argument("degree must be positive");
    }
    if (max_d > options.max_degree) {
        throw std::invalid_argument("degree " + std::to_string(max_d) + " exceeds the cap " +
                                    std::to_string(options.max_degree));
    }
    const int r = type.ambient_dim();
    std::vector<InvariantReport> reports;
    std::vector<Rational> values;
    for (int d = 1; d <= max_d; ++d) {
        const auto start = std::chrono::steady_clock::now();
        Computed c = compute_with_fallback(r, d, type.degrees, options);
        const auto stop = std::chrono::steady_clock::now();
        InvariantReport report;
        report.command = command;
        report.r = r;
        report.degree = d;
        report.type = type.degrees;
        report.N = c.value;
        report.graph_count = graphs::count_fixed_graphs(r, d);
        report.weight_strategy = c.strategy;
        report.jobs = options.jobs;
        report.elapsed_ms = std::chrono::duration<double, std::milli>(stop - start).count();
        values.push_back(c.value);
        reports.push_back(std::move(report));
    }
    const std::vector<mpz_class> n = instanton_numbers(values);
    for (std::size_t i = 0; i < reports.size(); ++i) {
        reports[i].n = n[i];
    }
    return reports;
}

Rational quintic_N(int d, int max_degree) {
    if (d < 1 || d > max_degree) {
        throw std::invalid_argument("degree out of range");
    }
    const std::vector<int> quintic{5};
    return gw_invariant(4, d, quintic, WeightVector::pow10(4));
}

}  // namespace gwloc::invariants
