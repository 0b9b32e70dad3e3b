#pragma once

#include "sawkit/error.hpp"
#include "sawkit/numerics/series.hpp"

#include <Eigen/Dense>

#include <cstddef>
#include <functional>
#include <limits>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace sawkit::numerics
{

// y = f(x; p). `gradient`, when set, writes df/dp_j into its output span;
// otherwise a central finite-difference Jacobian is used.
struct Model
{
    using Value = std::function<double(double x, std::span<const double> p)>;
    using Gradient = std::function<void(double x, std::span<const double> p, std::span<double> out)>;

    std::size_t arity = 0;
    Value value;
    Gradient gradient;
    std::string name;
};

struct Interval
{
    double lower = -std::numeric_limits<double>::infinity();
    double upper = std::numeric_limits<double>::infinity();
};

struct LeastSquaresOptions
{
    std::size_t max_iterations = 200;
    double step_tolerance = 1e-10;      // scaled relative step
    double residual_tolerance = 1e-12;  // relative decrease of the squared residual
    double initial_damping = 1e-3;
    std::vector<Interval> bounds;       // empty, or one per parameter
};

struct FitResult
{
    std::vector<double> params;
    double residual_norm = 0;           // sqrt(sum of squared residuals)
    std::optional<Eigen::MatrixXd> covariance;
    bool converged = false;
    std::size_t iterations = 0;
    bool singular = false;              // rank-deficient Jacobian at the solution
    std::string message;
};

// Thrown by fitters built on least_squares; carries the solver diagnostics.
class FitError : public Error
{
public:
    FitError(const std::string& what, FitResult diagnostics = {});

    const FitResult& diagnostics() const noexcept { return diagnostics_; }

private:
    FitResult diagnostics_;
};

// Damped Gauss-Newton (Levenberg-Marquardt with Marquardt diagonal scaling).
// Damping is divided by 10 on an accepted step and multiplied by 10 on a
// rejected one. Parameters are projected onto `bounds` after every step.
//
// Throws ArgumentError on bad shapes or non-finite initial parameters and
// FitError when the model is non-finite at the initial point. A singular
// problem is not an exception: the result has converged=false, singular=true.
FitResult least_squares(const Model& model,
                        const Series& data,
                        std::span<const double> initial_params,
                        const LeastSquaresOptions& options = {});

// Jacobian the solver uses (analytic when the model provides one), rows =
// samples, columns = parameters. Exposed for tests and diagnostics.
Eigen::MatrixXd model_jacobian(const Model& model, std::span<const double> xs, std::span<const double> p);

// Central differences with a relative step; independent of Model::gradient.
Eigen::MatrixXd finite_difference_jacobian(const Model& model,
                                           std::span<const double> xs,
                                           std::span<const double> p,
                                           double relative_step = 1e-6);

} // namespace sawkit::numerics
