#pragma once

#include "gwloc/graphs.hpp"
#include "gwloc/rational.hpp"

#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

// Equivariant classes on a torus-fixed locus, evaluated exactly at a
// specialization lambda_0..lambda_r of the torus weights.
namespace gwloc::localization {

enum class WeightStrategy { pow10, primes, custom };

std::string_view to_string(WeightStrategy strategy);

/// Torus weights lambda_0..lambda_r: pairwise distinct and nonzero.
class WeightVector {
public:
    /// lambda_i = 10^i.
    static WeightVector pow10(int r);
    /// lambda_i = p_i^(i + 1), p_i the (i + 1)-th prime.
    static WeightVector primes(int r);
    /// Throws std::invalid_argument if the weights repeat or vanish, or if
    /// fewer than two are given.
    static WeightVector custom(std::vector<Rational> weights);
    static WeightVector make(WeightStrategy strategy, int r);

    int r() const { return static_cast<int>(weights_.size()) - 1; }
    const Rational& operator[](int i) const { return weights_[i]; }
    std::span<const Rational> values() const { return weights_; }
    WeightStrategy strategy() const { return strategy_; }

    /// t * lambda (tagged custom).
    WeightVector scaled(const Rational& t) const;
    /// lambda'_{sigma(i)} = lambda_i (tagged custom).
    WeightVector permuted(std::span<const int> sigma) const;

private:
    WeightVector(std::vector<Rational> weights, WeightStrategy strategy)
        : weights_(std::move(weights)), strategy_(strategy) {}

    std::vector<Rational> weights_;
    WeightStrategy strategy_ = WeightStrategy::custom;
};

/// Raised when a quantity that must be inverted vanishes at the chosen
/// weights.
class DegenerateWeights : public std::runtime_error {
public:
    explicit DegenerateWeights(std::string factor)
        : std::runtime_error("degenerate weights: " + factor), factor_(std::move(factor)) {}
    const std::string& factor() const { return factor_; }

private:
    std::string factor_;
};

struct NondegeneracyReport {
    bool ok = true;
    std::optional<std::string> graph_key;
    std::optional<std::string> factor;
};

/// omega_F = (lambda_{i(F)} - lambda_{j(F)}) / d_e.
Rational flag_weight(const graphs::FixedGraph& g, const graphs::Flag& f, const WeightVector& w);

/// Vertex part of the Euler class of the normal bundle:
///   prod_v (prod_{j != i_v} (lambda_{i_v} - lambda_j))^{1 - val v}
///          (sum_F omega_F^{-1})^{3 - val v} prod_F omega_F.
Rational vertex_euler(const graphs::FixedGraph& g, const WeightVector& w);

/// Edge part of the Euler class of the normal bundle:
///   prod_e (-1)^{d_e} (d_e!)^2 (lambda_i - lambda_j)^{2 d_e} / d_e^{2 d_e}
///          prod_{a + b = d_e, k != i, j} ((a lambda_i + b lambda_j) / d_e - lambda_k).
Rational edge_euler(const graphs::FixedGraph& g, const WeightVector& w);

/// vertex_euler * edge_euler.
Rational normal_euler(const graphs::FixedGraph& g, const WeightVector& w);

/// Equivariant top Chern class of H^0(C, f^* O(m)) restricted to the locus:
///   prod_e prod_{a + b = m d_e} (a lambda_i + b lambda_j) / d_e
///   * prod_v (m lambda_{i_v})^{1 - val v}.
Rational contribution_chern(const graphs::FixedGraph& g, const WeightVector& w, int m);

/// Number of scalar factors in contribution_chern, counting each inverted
/// vertex factor as -1. Equals m * d + 1, the rank of the bundle.
int contribution_factor_count(const graphs::DecoratedShape& shape, int m);

/// One Bott summand prod_m c^T(V^(m)) / (a_Gamma e^T(N_Gamma)).
Rational bott_summand(const graphs::FixedGraph& g, const WeightVector& w,
                      std::span<const int> bundle_degrees);

/// Scans every quantity that gets inverted by the localization formulas for
/// degree-d loci in P^r and reports the first one vanishing at `weights`.
NondegeneracyReport check_nondegenerate(int r, int d, std::span<const Rational> weights,
                                        std::span<const int> bundle_degrees);
NondegeneracyReport check_nondegenerate(int r, int d, const WeightVector& w,
                                        std::span<const int> bundle_degrees);

/// Memoized evaluator for bott_summand over many labelings. Per-edge and
/// per-vertex-label factors are cached on construction; one instance per
/// worker thread.
class SummandEvaluator {
public:
    SummandEvaluator(const WeightVector& w, int max_edge_degree, std::vector<int> bundle_degrees);

    /// Same value as bott_summand on the FixedGraph (shape, labels).
    Rational summand(const graphs::DecoratedShape& shape, std::span<const int> labels) const;

    /// sum += summand(shape, labels), without materializing a reduced
    /// intermediate product.
    void accumulate(const graphs::DecoratedShape& shape, std::span<const int> labels,
                    mpq_class& sum) const;

private:
    struct Factor {
        mpz_class num;
        mpz_class den;  // positive
    };

    const Factor& edge_factor(int i, int j, int degree) const;
    const Factor& inverse_flag_weight(int i, int j, int degree) const;
    void product(const graphs::DecoratedShape& shape, std::span<const int> labels, mpz_class& num,
                 mpz_class& den) const;

    int r_;
    int max_degree_;
    std::vector<int> bundle_degrees_;
    std::vector<Factor> edge_factors_;     // [i][j][degree]
    std::vector<Factor> inverse_weights_;  // [i][j][degree]
    std::vector<Factor> vertex_factors_;   // [i][valence]
};

}  // namespace gwloc::localization
