#pragma once

#include "qosa/models.hpp"

#include <cstddef>
#include <functional>
#include <optional>

namespace qosa::analytic {

enum class Branch { Low, High };

struct AlphaBranch {
    double alpha;
    Branch branch;

    // High for alpha >= 1/2.
    static AlphaBranch of(double alpha);
};

/// Closed-form quantile contrast indices of X1 and X2 for
/// Y = X1 + X2, X1 ~ Exp(1), X2 ~ -Exp(1).
double analytic_s_x1(double alpha);
double analytic_s_x2(double alpha);

/// CTE_alpha of Exp(1): 1 - ln(1 - alpha).
double exponential_cte(double alpha);

/// (1 / (1 - alpha)) * int_alpha^1 quantile(u) du by tanh-sinh quadrature,
/// relative tolerance 1e-10. The integrand is never evaluated at the
/// endpoints, so integrable singularities there are fine. Throws
/// NumericalError if the error estimate misses the tolerance.
double quadrature_cte(const std::function<double(double)>& quantile, double alpha);

struct IdentityCheck {
    double contrast_form;  // from min_theta E psi_alpha, by quadrature
    double cte_form;       // from the CTE rewriting, by quadrature
};

/// Computes the index of X1 (input = 1) or X2 (input = 2) of the additive
/// model twice: from the contrast definition and from the CTE identity, both
/// by numerical integration.
IdentityCheck verify_cte_identity(double alpha, std::size_t input);

/// Analytic truth for a built-in model, if one exists.
std::optional<double> known_index(const ModelSpec& model, double alpha, std::size_t input_index);

} // namespace qosa::analytic
