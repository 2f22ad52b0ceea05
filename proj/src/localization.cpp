#include "gwloc/localization.hpp"

#include <algorithm>
#include <set>
#include <sstream>

namespace gwloc::localization {

using graphs::DecoratedShape;
using graphs::FixedGraph;
using graphs::Flag;

namespace {

Rational factorial(int n) {
    Rational out(1);
    for (int k = 2; k <= n; ++k) {
        out *= Rational(k);
    }
    return out;
}

std::string lambda_name(int i) { return "lambda_" + std::to_string(i); }

// prod_{j != i} (lambda_i - lambda_j)
Rational tangent_euler(std::span<const Rational> w, int i) {
    Rational out(1);
    for (int j = 0; j < static_cast<int>(w.size()); ++j) {
        if (j != i) {
            out *= w[i] - w[j];
        }
    }
    return out;
}

Rational edge_euler_factor(std::span<const Rational> w, int i, int j, int degree) {
    const Rational diff = w[i] - w[j];
    Rational out = factorial(degree).pow(2) * diff.pow(2 * degree) / Rational(degree).pow(2 * degree);
    if (degree % 2 != 0) {
        out = -out;
    }
    for (int a = 0; a <= degree; ++a) {
        const int b = degree - a;
        const Rational point = (Rational(a) * w[i] + Rational(b) * w[j]) / Rational(degree);
        for (int k = 0; k < static_cast<int>(w.size()); ++k) {
            if (k != i && k != j) {
                out *= point - w[k];
            }
        }
    }
    return out;
}

Rational contribution_edge_factor(std::span<const Rational> w, int i, int j, int degree, int m) {
    Rational out(1);
    const int top = m * degree;
    for (int a = 0; a <= top; ++a) {
        out *= (Rational(a) * w[i] + Rational(top - a) * w[j]) / Rational(degree);
    }
    return out;
}

// sum_F omega_F^{-1} at a vertex.
Rational inverse_weight_sum(const FixedGraph& g, const WeightVector& w, int vertex) {
    Rational sum;
    for (const Flag& f : graphs::flags(g)) {
        if (f.vertex == vertex) {
            const Rational omega = flag_weight(g, f, w);
            sum += omega.inverse();
        }
    }
    return sum;
}

void check_labels(const FixedGraph& g, const WeightVector& w) {
    for (int label : g.labels) {
        if (label < 0 || label > w.r()) {
            throw std::invalid_argument("vertex label outside {0..r}");
        }
    }
}

}  // namespace

std::string_view to_string(WeightStrategy strategy) {
    switch (strategy) {
        case WeightStrategy::pow10:
            return "pow10";
        case WeightStrategy::primes:
            return "primes";
        case WeightStrategy::custom:
            return "custom";
    }
    return "custom";
}

WeightVector WeightVector::pow10(int r) {
    if (r < 1) {
        throw std::invalid_argument("r must be positive");
    }
    std::vector<Rational> weights;
    mpz_class power = 1;
    for (int i = 0; i <= r; ++i) {
        weights.emplace_back(power);
        power *= 10;
    }
    return WeightVector(std::move(weights), WeightStrategy::pow10);
}

WeightVector WeightVector::primes(int r) {
    if (r < 1) {
        throw std::invalid_argument("r must be positive");
    }
    std::vector<Rational> weights;
    // Plain primes collide already in degree 2: (3 + 7) / 2 = 5. Raising the
    // i-th prime to the (i + 1)-th power spreads the weights far enough apart.
    mpz_class p = 1;
    for (int i = 0; i <= r; ++i) {
        mpz_nextprime(p.get_mpz_t(), p.get_mpz_t());
        mpz_class power;
        mpz_pow_ui(power.get_mpz_t(), p.get_mpz_t(), static_cast<unsigned long>(i + 1));
        weights.emplace_back(power);
    }
    return WeightVector(std::move(weights), WeightStrategy::primes);
}

WeightVector WeightVector::custom(std::vector<Rational> weights) {
    if (weights.size() < 2) {
        throw std::invalid_argument("at least two weights are required");
    }
    for (std::size_t i = 0; i < weights.size(); ++i) {
        if (weights[i].is_zero()) {
            throw std::invalid_argument(lambda_name(static_cast<int>(i)) + " is zero");
        }
        for (std::size_t j = 0; j < i; ++j) {
            if (weights[i] == weights[j]) {
                throw std::invalid_argument(lambda_name(static_cast<int>(j)) + " = " +
                                            lambda_name(static_cast<int>(i)));
            }
        }
    }
    return WeightVector(std::move(weights), WeightStrategy::custom);
}

WeightVector WeightVector::make(WeightStrategy strategy, int r) {
    switch (strategy) {
        case WeightStrategy::pow10:
            return pow10(r);
        case WeightStrategy::primes:
            return primes(r);
        case WeightStrategy::custom:
            break;
    }
    throw std::invalid_argument("custom weights need explicit values");
}

WeightVector WeightVector::scaled(const Rational& t) const {
    std::vector<Rational> out;
    for (const Rational& x : weights_) {
        out.push_back(x * t);
    }
    return custom(std::move(out));
}

WeightVector WeightVector::permuted(std::span<const int> sigma) const {
    if (sigma.size() != weights_.size()) {
        throw std::invalid_argument("permutation size mismatch");
    }
    std::vector<Rational> out(weights_.size());
    for (std::size_t i = 0; i < weights_.size(); ++i) {
        out[sigma[i]] = weights_[i];
    }
    return custom(std::move(out));
}

Rational flag_weight(const FixedGraph& g, const Flag& f, const WeightVector& w) {
    const DecoratedShape& s = *g.decorated;
    const int other = graphs::opposite_vertex(s, f);
    return (w[g.labels[f.vertex]] - w[g.labels[other]]) / Rational(s.degrees[f.edge]);
}

Rational vertex_euler(const FixedGraph& g, const WeightVector& w) {
    check_labels(g, w);
    const DecoratedShape& s = *g.decorated;
    const auto all_flags = graphs::flags(g);
    Rational out(1);
    for (int v = 0; v < s.vertex_count(); ++v) {
        const int val = s.valence(v);
        const int label = g.labels[v];
        out *= tangent_euler(w.values(), label).pow(1 - val);
        if (val != 3) {
            const Rational sum = inverse_weight_sum(g, w, v);
            if (sum.is_zero()) {
                throw DegenerateWeights("sum of inverse flag weights at vertex " + std::to_string(v) +
                                        " (label " + std::to_string(label) + ")");
            }
            out *= sum.pow(3 - val);
        }
        for (const Flag& f : all_flags) {
            if (f.vertex == v) {
                out *= flag_weight(g, f, w);
            }
        }
    }
    return out;
}

Rational edge_euler(const FixedGraph& g, const WeightVector& w) {
    check_labels(g, w);
    const DecoratedShape& s = *g.decorated;
    Rational out(1);
    const auto edges = s.shape.edges();
    for (std::size_t k = 0; k < edges.size(); ++k) {
        out *= edge_euler_factor(w.values(), g.labels[edges[k].u], g.labels[edges[k].v], s.degrees[k]);
    }
    return out;
}

Rational normal_euler(const FixedGraph& g, const WeightVector& w) {
    return vertex_euler(g, w) * edge_euler(g, w);
}

Rational contribution_chern(const FixedGraph& g, const WeightVector& w, int m) {
    if (m < 1) {
        throw std::invalid_argument("bundle degree must be positive");
    }
    check_labels(g, w);
    const DecoratedShape& s = *g.decorated;
    Rational out(1);
    const auto edges = s.shape.edges();
    for (std::size_t k = 0; k < edges.size(); ++k) {
        out *= contribution_edge_factor(w.values(), g.labels[edges[k].u], g.labels[edges[k].v],
                                        s.degrees[k], m);
    }
    for (int v = 0; v < s.vertex_count(); ++v) {
        const int val = s.valence(v);
        if (val != 1) {
            out *= (Rational(m) * w[g.labels[v]]).pow(1 - val);
        }
    }
    return out;
}

int contribution_factor_count(const DecoratedShape& shape, int m) {
    int count = 0;
    for (int degree : shape.degrees) {
        count += m * degree + 1;
    }
    for (int v = 0; v < shape.vertex_count(); ++v) {
        count += 1 - shape.valence(v);
    }
    return count;
}

Rational bott_summand(const FixedGraph& g, const WeightVector& w, std::span<const int> bundle_degrees) {
    Rational numerator(1);
    for (int m : bundle_degrees) {
        numerator *= contribution_chern(g, w, m);
    }
    const Rational denominator = Rational(static_cast<long>(graphs::a_gamma(g))) * normal_euler(g, w);
    if (denominator.is_zero()) {
        throw DegenerateWeights("Euler class of the normal bundle vanishes");
    }
    return numerator / denominator;
}

NondegeneracyReport check_nondegenerate(int r, int d, std::span<const Rational> weights,
                                        std::span<const int> bundle_degrees) {
    NondegeneracyReport report;
    auto fail = [&](std::string key, std::string factor) {
        report.ok = false;
        report.graph_key = std::move(key);
        report.factor = std::move(factor);
        return report;
    };
    if (static_cast<int>(weights.size()) != r + 1) {
        return fail("", "expected " + std::to_string(r + 1) + " weights, got " +
                            std::to_string(weights.size()));
    }
    for (int i = 0; i <= r; ++i) {
        for (int j = 0; j < i; ++j) {
            if (weights[i] == weights[j]) {
                return fail("", "duplicate weight " + lambda_name(j) + " = " + lambda_name(i));
            }
        }
    }
    const bool needs_nonzero = !bundle_degrees.empty();

    for (const DecoratedShape& s : graphs::decorated_shapes(d)) {
        // Edge factors of the normal bundle.
        std::set<int> seen_degrees(s.degrees.begin(), s.degrees.end());
        for (int degree : seen_degrees) {
            for (int i = 0; i <= r; ++i) {
                for (int j = 0; j <= r; ++j) {
                    if (i == j) {
                        continue;
                    }
                    for (int a = 0; a <= degree; ++a) {
                        const Rational point =
                            (Rational(a) * weights[i] + Rational(degree - a) * weights[j]) / Rational(degree);
                        for (int k = 0; k <= r; ++k) {
                            if (k != i && k != j && point == weights[k]) {
                                std::ostringstream f;
                                f << "edge (" << i << "," << j << ") degree " << degree << ": (" << a
                                  << "*lambda_" << i << " + " << degree - a << "*lambda_" << j << ")/"
                                  << degree << " - lambda_" << k << " = 0";
                                return fail(s.key, f.str());
                            }
                        }
                    }
                }
            }
        }
        // Vertex factors: inverted weights and inverse-weight sums at
        // vertices of valence 2 or >= 4.
        for (int v = 0; v < s.vertex_count(); ++v) {
            const int val = s.valence(v);
            if (val >= 2 && needs_nonzero) {
                for (int i = 0; i <= r; ++i) {
                    if (weights[i].is_zero()) {
                        return fail(s.key, "vertex " + std::to_string(v) + " needs " + lambda_name(i) +
                                               " != 0");
                    }
                }
            }
            if (val == 1 || val == 3) {
                continue;
            }
            std::vector<int> incident;
            if (v > 0) {
                incident.push_back(s.degrees[v - 1]);
            }
            for (int c = 1; c < s.vertex_count(); ++c) {
                if (s.parent[c] == v) {
                    incident.push_back(s.degrees[c - 1]);
                }
            }
            std::sort(incident.begin(), incident.end());
            // Neighbor labels as a multiset within each group of equal degree.
            std::vector<int> nbr(incident.size(), 0);
            for (int i = 0; i <= r; ++i) {
                auto recurse = [&](auto&& self, std::size_t pos) -> bool {
                    if (pos == incident.size()) {
                        Rational sum;
                        for (std::size_t q = 0; q < incident.size(); ++q) {
                            sum += Rational(incident[q]) / (weights[i] - weights[nbr[q]]);
                        }
                        return !sum.is_zero();
                    }
                    int start = 0;
                    if (pos > 0 && incident[pos] == incident[pos - 1]) {
                        start = nbr[pos - 1];
                    }
                    for (int j = start; j <= r; ++j) {
                        if (j == i) {
                            continue;
                        }
                        nbr[pos] = j;
                        if (!self(self, pos + 1)) {
                            return false;
                        }
                    }
                    return true;
                };
                if (!recurse(recurse, 0)) {
                    std::ostringstream f;
                    f << "vertex " << v << " label " << i << ": sum of inverse flag weights vanishes for neighbor labels";
                    for (int j : nbr) {
                        f << ' ' << j;
                    }
                    return fail(s.key, f.str());
                }
            }
        }
    }
    return report;
}

NondegeneracyReport check_nondegenerate(int r, int d, const WeightVector& w,
                                        std::span<const int> bundle_degrees) {
    return check_nondegenerate(r, d, w.values(), bundle_degrees);
}

// --- SummandEvaluator --------------------------------------------------------

namespace {

void assign(mpz_class& num, mpz_class& den, const Rational& value) {
    num = value.raw().get_num();
    den = value.raw().get_den();
}

}  // namespace

SummandEvaluator::SummandEvaluator(const WeightVector& w, int max_edge_degree,
                                   std::vector<int> bundle_degrees)
    : r_(w.r()), max_degree_(max_edge_degree), bundle_degrees_(std::move(bundle_degrees)) {
    const int n = r_ + 1;
    const auto lam = w.values();
    edge_factors_.resize(static_cast<std::size_t>(n) * n * (max_degree_ + 1));
    inverse_weights_.resize(edge_factors_.size());
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
            if (i == j) {
                continue;
            }
            for (int degree = 1; degree <= max_degree_; ++degree) {
                // omega at both flags of the edge is moved here from the
                // vertex part: omega_ij * omega_ji = -(lambda_i - lambda_j)^2 / d^2.
                const Rational diff = lam[i] - lam[j];
                Rational value = edge_euler_factor(lam, i, j, degree) * (-(diff * diff)) /
                                 Rational(degree * degree);
                if (value.is_zero()) {
                    throw DegenerateWeights("edge factor (" + std::to_string(i) + "," + std::to_string(j) +
                                            ") degree " + std::to_string(degree));
                }
                value = value.inverse();
                for (int m : bundle_degrees_) {
                    value *= contribution_edge_factor(lam, i, j, degree, m);
                }
                const std::size_t idx = (static_cast<std::size_t>(i) * n + j) * (max_degree_ + 1) + degree;
                assign(edge_factors_[idx].num, edge_factors_[idx].den, value);
                assign(inverse_weights_[idx].num, inverse_weights_[idx].den, Rational(degree) / diff);
            }
        }
    }
    // Valence can reach the number of edges, at most the total degree.
    vertex_factors_.resize(static_cast<std::size_t>(n) * (max_degree_ + 1));
    for (int i = 0; i < n; ++i) {
        Rational base = tangent_euler(lam, i).inverse();
        for (int m : bundle_degrees_) {
            base *= Rational(m) * lam[i];
        }
        for (int val = 1; val <= max_degree_; ++val) {
            Rational value(1);
            if (val > 1) {
                if (base.is_zero()) {
                    throw DegenerateWeights(lambda_name(i) + " = 0 at a vertex of valence " + std::to_string(val));
                }
                value = base.pow(1 - val);
            }
            const std::size_t idx = static_cast<std::size_t>(i) * (max_degree_ + 1) + val;
            assign(vertex_factors_[idx].num, vertex_factors_[idx].den, value);
        }
    }
}

const SummandEvaluator::Factor& SummandEvaluator::edge_factor(int i, int j, int degree) const {
    return edge_factors_[(static_cast<std::size_t>(i) * (r_ + 1) + j) * (max_degree_ + 1) + degree];
}

const SummandEvaluator::Factor& SummandEvaluator::inverse_flag_weight(int i, int j, int degree) const {
    return inverse_weights_[(static_cast<std::size_t>(i) * (r_ + 1) + j) * (max_degree_ + 1) + degree];
}

void SummandEvaluator::product(const DecoratedShape& s, std::span<const int> labels, mpz_class& num,
                               mpz_class& den) const {
    const int n = s.vertex_count();
    if (s.total_degree() > max_degree_) {
        throw std::invalid_argument("shape degree exceeds the evaluator's cache");
    }
    num = 1;
    den = static_cast<unsigned long>(graphs::a_gamma(s));
    for (int v = 1; v < n; ++v) {
        const Factor& f = edge_factor(labels[s.parent[v]], labels[v], s.degrees[v - 1]);
        num *= f.num;
        den *= f.den;
    }
    // Valence and the inverse-weight sum at each vertex.
    thread_local std::vector<int> valence;
    valence.assign(n, 0);
    for (int v = 1; v < n; ++v) {
        ++valence[v];
        ++valence[s.parent[v]];
    }
    mpq_class sum;
    for (int v = 0; v < n; ++v) {
        const int val = valence[v];
        const Factor& vf = vertex_factors_[static_cast<std::size_t>(labels[v]) * (max_degree_ + 1) + val];
        if (val > 1) {
            num *= vf.num;
            den *= vf.den;
        }
        if (val == 3) {
            continue;
        }
        sum = 0;
        const int label = labels[v];
        auto add = [&](int other, int degree) {
            const Factor& x = inverse_flag_weight(label, labels[other], degree);
            mpq_class term(x.num, x.den);
            sum += term;
        };
        if (v > 0) {
            add(s.parent[v], s.degrees[v - 1]);
        }
        for (int c = v + 1; c < n; ++c) {
            if (s.parent[c] == v) {
                add(c, s.degrees[c - 1]);
            }
        }
        if (sgn(sum) == 0) {
            throw DegenerateWeights("sum of inverse flag weights at vertex " + std::to_string(v) + " (label " +
                                    std::to_string(label) + ")");
        }
        // The summand carries (sum)^{val - 3}.
        mpz_class p;
        if (val > 3) {
            mpz_pow_ui(p.get_mpz_t(), sum.get_num_mpz_t(), static_cast<unsigned long>(val - 3));
            num *= p;
            mpz_pow_ui(p.get_mpz_t(), sum.get_den_mpz_t(), static_cast<unsigned long>(val - 3));
            den *= p;
        } else {
            mpz_pow_ui(p.get_mpz_t(), sum.get_den_mpz_t(), static_cast<unsigned long>(3 - val));
            num *= p;
            mpz_pow_ui(p.get_mpz_t(), sum.get_num_mpz_t(), static_cast<unsigned long>(3 - val));
            den *= p;
        }
    }
}

Rational SummandEvaluator::summand(const DecoratedShape& s, std::span<const int> labels) const {
    mpz_class num, den;
    product(s, labels, num, den);
    return Rational(num, den);
}

void SummandEvaluator::accumulate(const DecoratedShape& s, std::span<const int> labels, mpq_class& sum) const {
    thread_local mpq_class term;
    product(s, labels, term.get_num(), term.get_den());
    term.canonicalize();
    sum += term;
}

}  // namespace gwloc::localization
