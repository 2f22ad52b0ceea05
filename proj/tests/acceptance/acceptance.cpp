// End-to-end acceptance run: prints one PASS/FAIL line per criterion and
// exits non-zero if any criterion fails.

#include "gwloc/graphs.hpp"
#include "gwloc/invariants.hpp"
#include "gwloc/localization.hpp"

#include "../common/oracles.hpp"

#include <chrono>
#include <iostream>
#include <map>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

using namespace gwloc;
using invariants::CYType;
using invariants::InvariantReport;
using localization::WeightVector;

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
    return std::chrono::duration<double>(Clock::now() - start).count();
}

struct Criterion {
    bool ok = true;
    std::ostringstream detail;

    void expect(bool condition, const std::string& what) {
        if (!condition) {
            ok = false;
            detail << (detail.tellp() > 0 ? "; " : "") << what;
        }
    }
};

int failures = 0;

void report(int number, const std::string& title, Criterion& c, const std::string& timing = "") {
    std::cout << (c.ok ? "PASS" : "FAIL") << "  criterion " << number << ": " << title;
    if (!timing.empty()) {
        std::cout << " [" << timing << "]";
    }
    if (!c.ok) {
        std::cout << " -- " << c.detail.str();
        ++failures;
    }
    std::cout << std::endl;
}

std::string fmt_seconds(double s) {
    std::ostringstream out;
    out.precision(3);
    out << s << " s";
    return out.str();
}

std::vector<Rational> rationals(std::initializer_list<const char*> values) {
    std::vector<Rational> out;
    for (const char* v : values) {
        out.push_back(Rational::parse(v));
    }
    return out;
}

std::vector<mpz_class> integers(std::initializer_list<const char*> values) {
    std::vector<mpz_class> out;
    for (const char* v : values) {
        out.emplace_back(v);
    }
    return out;
}

struct Expected {
    CYType type;
    std::vector<Rational> N;
    std::vector<mpz_class> n;
};

struct Series {
    CYType type;
    std::vector<InvariantReport> reports;
    double seconds_to_3 = 0;
    double seconds_to_4 = 0;
};

Series compute(const CYType& type, int jobs) {
    Series s{type, {}, 0, 0};
    invariants::ComputeOptions options;
    options.jobs = jobs;
    s.reports = invariants::compute_series(type, 6, options, type.codimension() == 1 ? "quintic" : "cicy");
    for (const auto& r : s.reports) {
        if (r.degree <= 3) {
            s.seconds_to_3 += r.elapsed_ms / 1000;
        }
        if (r.degree <= 4) {
            s.seconds_to_4 += r.elapsed_ms / 1000;
        }
    }
    return s;
}

std::string name(const CYType& t, int d) { return t.to_string() + " d=" + std::to_string(d); }

void check_series(Criterion& c, const Series& s, const Expected& e, bool check_N, bool check_n) {
    for (int d = 1; d <= 6; ++d) {
        const auto& r = s.reports[d - 1];
        if (check_N) {
            c.expect(r.N == e.N[d - 1], "N " + name(e.type, d) + " = " + r.N.to_string());
        }
        if (check_n) {
            c.expect(r.n && *r.n == e.n[d - 1], "n " + name(e.type, d));
        }
    }
}

// Brute-force orbit-stabilizer check for all decorated shapes of degree
// <= 5 (hence <= 5 edges) and r <= 3. Each emitted labeling is mapped to its
// label-isomorphism class; the 1/a_Gamma weights of a class must add up to
// 1/(|label-preserving Aut| prod d_e), and the classes reached must account
// for every properly labeled decorated tree on a fixed vertex set.
bool orbit_stabilizer(std::string& why) {
    for (int r = 1; r <= 3; ++r) {
        for (int d = 1; d <= 5; ++d) {
            struct Class {
                Rational emitted;
                Rational expected;
                int n = 0;
                std::uint64_t aut = 0;
            };
            std::map<oracles::BruteKey, Class> classes;
            for (const auto& s : graphs::decorated_shapes(d)) {
                long prod = 1;
                for (int x : s.degrees) {
                    prod *= x;
                }
                graphs::for_each_labeling(s, r, [&](std::span<const int> labels) {
                    const auto t = oracles::from_fixed(s, std::vector<int>(labels.begin(), labels.end()));
                    auto [it, fresh] = classes.try_emplace(oracles::brute_key(t));
                    if (fresh) {
                        it->second.aut = oracles::brute_automorphisms(t);
                        it->second.expected = Rational(1) / Rational(static_cast<long>(it->second.aut) * prod);
                        it->second.n = t.n;
                    }
                    it->second.emitted += Rational(1) / Rational(static_cast<long>(graphs::a_gamma(s)));
                });
            }
            // Labeled decorated trees on vertex set {0..n-1}: n^(n-2) trees,
            // C(d-1, n-2) degree compositions, (r+1) r^(n-1) proper labelings.
            std::map<int, mpz_class> reached;
            for (const auto& [key, c] : classes) {
                if (c.emitted != c.expected) {
                    why = "class weight mismatch at r=" + std::to_string(r) + " d=" + std::to_string(d);
                    return false;
                }
                mpz_class factorial = 1;
                for (int k = 2; k <= c.n; ++k) {
                    factorial *= k;
                }
                reached[c.n] += factorial / c.aut;
            }
            for (int n = 2; n <= d + 1; ++n) {
                mpz_class total;
                mpz_ui_pow_ui(total.get_mpz_t(), n, n - 2);
                mpz_class binom;
                mpz_bin_uiui(binom.get_mpz_t(), d - 1, n - 2);
                mpz_class labelings;
                mpz_ui_pow_ui(labelings.get_mpz_t(), r, n - 1);
                total *= binom * labelings * (r + 1);
                if (reached[n] != total) {
                    why = "missing classes at r=" + std::to_string(r) + " d=" + std::to_string(d) +
                          " n=" + std::to_string(n);
                    return false;
                }
            }
        }
    }
    return true;
}

}  // namespace

int main() {
    const int jobs = static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));
    std::cout << "acceptance run with " << jobs << " job(s)" << std::endl;

    const std::vector<Expected> expected{
        {CYType{{5}},
         rationals({"2875", "4876875/8", "8564575000/27", "15517926796875/64", "229305888887648",
                    "248249742157695375"}),
         integers({"2875", "609250", "317206375", "242467530000", "229305888887625", "248249742118022000"})},
        {CYType{{4, 2}},
         rationals({"1280", "92448", "422690816/27", "3883914084", "29773082054656/25", "417874607302656"}),
         integers({"1280", "92288", "15655168", "3883902528", "1190923282176", "417874605342336"})},
        {CYType{{3, 3}},
         rationals({"1053", "423549/8", "6424365", "72925120125/64", "31223486573928/125",
                    "501287722516269/8"}),
         integers({"1053", "52812", "6424326", "1139448384", "249787892583", "62660964509532"})},
        {CYType{{3, 2, 2}},
         rationals({"720", "22518", "4834592/3", "672808059/4", "541923292944/25", "3195558106836"}),
         integers({"720", "22428", "1611504", "168199200", "21676931712", "3195557904564"})},
        {CYType{{2, 2, 2, 2}},
         rationals({"512", "9792", "11239424/27", "25705160", "244747968512/125", "511607926784/3"}),
         integers({"512", "9728", "416256", "25703936", "1957983744", "170535923200"})},
    };

    // Every N_d and n_d is computed once and shared by the criteria below.
    std::vector<Series> series;
    std::string integrality_error;
    for (const auto& e : expected) {
        const auto start = Clock::now();
        try {
            series.push_back(compute(e.type, jobs));
        } catch (const invariants::IntegralityViolation& ex) {
            integrality_error = ex.what();
            series.push_back(Series{e.type, {}, 0, 0});
        }
        std::cout << "  computed " << e.type.to_string() << " d=1..6 in " << fmt_seconds(seconds_since(start))
                  << std::endl;
    }
    auto complete = [](const Series& s) { return s.reports.size() == 6; };

    {
        Criterion c;
        c.expect(complete(series[0]), "quintic series incomplete");
        if (complete(series[0])) {
            check_series(c, series[0], expected[0], true, false);
            c.expect(series[0].seconds_to_4 < 60, "N_1..N_4 took " + fmt_seconds(series[0].seconds_to_4));
        }
        report(1, "quintic N_1..N_6", c, "N_1..N_4 in " + fmt_seconds(series[0].seconds_to_4));
    }
    {
        Criterion c;
        c.expect(complete(series[0]), "quintic series incomplete");
        if (complete(series[0])) {
            check_series(c, series[0], expected[0], false, true);
        }
        report(2, "quintic instanton numbers n_1..n_6", c);
    }
    {
        Criterion c;
        double desk = 0;
        for (std::size_t i = 1; i < series.size(); ++i) {
            c.expect(complete(series[i]), series[i].type.to_string() + " series incomplete");
            if (complete(series[i])) {
                check_series(c, series[i], expected[i], true, true);
                desk += series[i].seconds_to_3;
            }
        }
        c.expect(desk < 300, "d <= 3 took " + fmt_seconds(desk));
        report(3, "complete intersections: 24 instanton numbers and their N_d", c, "d<=3 in " + fmt_seconds(desk));
    }
    {
        Criterion c;
        const auto start = Clock::now();
        c.expect(graphs::count_fixed_graphs(4, 1) == 20, "(4,1)");
        c.expect(graphs::count_fixed_graphs(4, 2) == 100, "(4,2)");
        c.expect(graphs::count_fixed_graphs(1, 2) == 4, "(1,2)");
        std::uint64_t listed = 0;
        for (auto& s : graphs::decorated_shapes(2)) {
            graphs::for_each_labeling(s, 4, [&](std::span<const int>) { ++listed; });
        }
        c.expect(listed == 100, "enumerated (4,2) labelings");
        const double t = seconds_since(start);
        c.expect(t < 1, "took " + fmt_seconds(t));
        report(4, "fixed graph counts", c, fmt_seconds(t));
    }
    {
        Criterion c;
        auto a_gammas = [](int d, int edges) {
            std::multiset<std::uint64_t> out;
            for (const auto& s : graphs::decorated_shapes(d)) {
                if (edges == 0 || s.edge_count() == edges) {
                    out.insert(graphs::a_gamma(s));
                }
            }
            return out;
        };
        c.expect(a_gammas(3, 0) == std::multiset<std::uint64_t>{6, 2, 2, 6}, "d=3");
        c.expect(a_gammas(4, 0) == std::multiset<std::uint64_t>{8, 3, 8, 2, 4, 4, 2, 2, 24}, "d=4");
        c.expect(a_gammas(5, 5) == std::multiset<std::uint64_t>{2, 2, 2, 6, 8, 120}, "d=5");
        c.expect(a_gammas(6, 6) == std::multiset<std::uint64_t>{2, 2, 1, 6, 4, 8, 2, 6, 12, 24, 720}, "d=6");
        report(5, "a_Gamma catalog", c);
    }
    {
        Criterion c;
        const auto start = Clock::now();
        c.expect(invariants::lines_closed_form(4, WeightVector::pow10(4)) == Rational(2875), "r=4");
        c.expect(invariants::lines_closed_form(3, WeightVector::pow10(3)) == Rational(27), "r=3");
        c.expect(invariants::lines_closed_form(2, WeightVector::pow10(2)) == Rational(1), "r=2");
        for (int r = 2; r <= 7; ++r) {
            const auto w = WeightVector::pow10(r);
            const std::vector<int> bundle{2 * r - 3};
            c.expect(invariants::gw_invariant(r, 1, bundle, w, {jobs}) == invariants::lines_closed_form(r, w),
                     "engine r=" + std::to_string(r));
        }
        const double t = seconds_since(start);
        c.expect(t < 30, "took " + fmt_seconds(t));
        report(6, "lines on hypersurfaces", c, fmt_seconds(t));
    }
    {
        Criterion c;
        const auto start = Clock::now();

        // Weight independence.
        for (const CYType& t : invariants::cy_types()) {
            const int r = t.ambient_dim();
            for (int d = 1; d <= 3; ++d) {
                const Rational a = invariants::gw_invariant(r, d, t.degrees, WeightVector::pow10(r), {jobs});
                const Rational b = invariants::gw_invariant(r, d, t.degrees, WeightVector::primes(r), {jobs});
                c.expect(a == b, "weight dependence at " + name(t, d));
            }
        }

        // Per-graph homogeneity under lambda -> 3 lambda.
        for (const CYType& t : invariants::cy_types()) {
            const int r = t.ambient_dim();
            const auto w = WeightVector::pow10(r);
            const localization::SummandEvaluator base(w, 3, t.degrees);
            const localization::SummandEvaluator scaled(w.scaled(Rational(3)), 3, t.degrees);
            bool same = true;
            for (int d = 1; d <= 3; ++d) {
                for (const auto& s : graphs::decorated_shapes(d)) {
                    graphs::for_each_labeling(s, r, [&](std::span<const int> labels) {
                        same = same && base.summand(s, labels) == scaled.summand(s, labels);
                    });
                }
            }
            c.expect(same, "homogeneity at " + t.to_string());
        }

        // Label-permutation equivariance on random graphs.
        {
            std::mt19937 rng(1996);
            const auto types = invariants::cy_types();
            for (int trial = 0; trial < 100; ++trial) {
                const CYType& t = types[rng() % types.size()];
                const int r = t.ambient_dim();
                const int d = 1 + static_cast<int>(rng() % 4);
                auto shapes = graphs::decorated_shapes(d);
                auto shape = std::make_shared<const graphs::DecoratedShape>(shapes[rng() % shapes.size()]);
                std::vector<int> labels(shape->vertex_count());
                for (int v = 0; v < shape->vertex_count(); ++v) {
                    do {
                        labels[v] = static_cast<int>(rng() % (r + 1));
                    } while (v > 0 && labels[v] == labels[shape->parent[v]]);
                }
                const graphs::FixedGraph g{shape, labels};
                std::vector<int> sigma(r + 1);
                std::iota(sigma.begin(), sigma.end(), 0);
                std::shuffle(sigma.begin(), sigma.end(), rng);
                graphs::FixedGraph moved = g;
                for (int& l : moved.labels) {
                    l = sigma[l];
                }
                const auto w = WeightVector::pow10(r);
                c.expect(localization::bott_summand(moved, w.permuted(sigma), t.degrees) ==
                             localization::bott_summand(g, w, t.degrees),
                         "equivariance trial " + std::to_string(trial));
            }
        }

        // Orbit-stabilizer against brute force.
        {
            std::string why;
            c.expect(orbit_stabilizer(why), "orbit-stabilizer: " + why);
        }

        // Divisor-sum round trip and integrality for every computed sequence.
        c.expect(integrality_error.empty(), integrality_error);
        for (const Series& s : series) {
            if (!complete(s)) {
                continue;
            }
            std::vector<Rational> N;
            std::vector<mpz_class> n;
            for (const auto& r : s.reports) {
                N.push_back(r.N);
                c.expect(r.n.has_value(), "missing n at " + name(s.type, r.degree));
                n.push_back(r.n.value_or(0));
            }
            c.expect(invariants::invariants_from_instantons(n) == N, "round trip " + s.type.to_string());
            c.expect(invariants::instanton_numbers(N) == n, "inversion " + s.type.to_string());
        }

        // Determinism across worker counts.
        for (const Series& s : series) {
            if (!complete(s)) {
                continue;
            }
            const int r = s.type.ambient_dim();
            for (int d = 1; d <= 4; ++d) {
                const Rational one = invariants::gw_invariant(r, d, s.type.degrees, WeightVector::pow10(r), {1});
                const Rational eight = invariants::gw_invariant(r, d, s.type.degrees, WeightVector::pow10(r), {8});
                c.expect(one == eight && one == s.reports[d - 1].N, "jobs 1 vs 8 at " + name(s.type, d));
            }
        }
        report(7, "property suite", c, fmt_seconds(seconds_since(start)));
    }

    std::cout << (failures == 0 ? "all criteria passed" : std::to_string(failures) + " criteria failed")
              << std::endl;
    return failures == 0 ? 0 : 1;
}
