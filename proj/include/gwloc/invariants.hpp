#pragma once

#include "gwloc/localization.hpp"
#include "gwloc/rational.hpp"

#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace gwloc::invariants {

/// Complete intersection type (d_1 >= ... >= d_k >= 2) in P^{k+3}.
struct CYType {
    std::vector<int> degrees;

    int codimension() const { return static_cast<int>(degrees.size()); }
    int ambient_dim() const { return codimension() + 3; }
    /// sum d_i == k + 4.
    bool is_calabi_yau() const;
    std::string to_string() const;  // "(3,2,2)"

    friend bool operator==(const CYType&, const CYType&) = default;
};

/// The five Calabi-Yau complete-intersection threefolds in projective space:
/// (5), (4,2), (3,3), (3,2,2), (2,2,2,2).
std::vector<CYType> cy_types();

/// Throws std::invalid_argument unless `degrees` (any order) is one of the
/// five Calabi-Yau types. Returns it sorted non-increasing.
CYType make_cy_type(std::vector<int> degrees);

/// Dimension r d + r + d + n - 3 of the moduli space of n-pointed genus-zero
/// degree-d stable maps to P^r.
int moduli_dim(int r, int d, int n);

class IntegralityViolation : public std::runtime_error {
public:
    IntegralityViolation(int degree, const Rational& value)
        : std::runtime_error("instanton number for d = " + std::to_string(degree) +
                             " is not an integer: " + value.to_string()),
          degree_(degree) {}
    int degree() const { return degree_; }

private:
    int degree_;
};

struct SumOptions {
    int jobs = 1;
};

/// Bott sum over all fixed loci of degree-d maps to P^r:
///   sum_Gamma prod_i c^T(V^(d_i)) / (a_Gamma e^T(N_Gamma)).
/// Throws localization::DegenerateWeights if `w` fails the nondegeneracy
/// scan. The result is bit-identical for every job count.
Rational gw_invariant(int r, int d, std::span<const int> bundle_degrees,
                      const localization::WeightVector& w, SumOptions options = {});

/// Reference route: materializes every FixedGraph and sums bott_summand
/// without memoization. Only meant for small (r, d).
Rational gw_invariant_reference(int r, int d, std::span<const int> bundle_degrees,
                                const localization::WeightVector& w);

/// Inverts N_d = sum_{k | d} n_{d/k} / k^3 for d = 1..N.size(). Throws
/// IntegralityViolation when some n_d is not an integer.
std::vector<mpz_class> instanton_numbers(std::span<const Rational> invariants);

/// N_d = sum_{k | d} n_{d/k} / k^3.
std::vector<Rational> invariants_from_instantons(std::span<const mpz_class> instantons);

/// Number of lines on a general degree 2r-3 hypersurface in P^r:
///   sum_{i<j} prod_{a+b=2r-3} (a lambda_i + b lambda_j)
///             / prod_{k != i,j} (lambda_i - lambda_k)(lambda_j - lambda_k).
Rational lines_closed_form(int r, const localization::WeightVector& w);

constexpr int kDefaultMaxDegree = 6;

struct InvariantReport {
    std::string command;  // quintic, cicy, lines
    int r = 0;
    int degree = 0;
    std::vector<int> type;
    Rational N;
    std::optional<mpz_class> n;
    std::uint64_t graph_count = 0;
    std::string weight_strategy;
    int jobs = 1;
    double elapsed_ms = 0;
};

struct ComputeOptions {
    int jobs = 1;
    int max_degree = kDefaultMaxDegree;
    /// Explicit weights; when absent the strategies pow10 then primes are
    /// tried in order.
    std::optional<localization::WeightVector> weights;
};

/// N_1..N_max_d for `type` with weight fallback, each degree a report with
/// its instanton number filled in. Throws std::invalid_argument when
/// max_d exceeds options.max_degree, DegenerateWeights when every strategy
/// fails, IntegralityViolation from the inversion.
std::vector<InvariantReport> compute_series(const CYType& type, int max_d, const ComputeOptions& options,
                                            const std::string& command);

/// N_d of the quintic with the default weights.
Rational quintic_N(int d, int max_degree = kDefaultMaxDegree);

}  // namespace gwloc::invariants
