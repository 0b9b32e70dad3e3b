#include "sawkit/numerics/least_squares.hpp"

#include <algorithm>
#include <cmath>

namespace sawkit::numerics
{

FitError::FitError(const std::string& what, FitResult diagnostics)
    : Error(what)
    , diagnostics_(std::move(diagnostics))
{
}

namespace
{

constexpr double kMaxDamping = 1e16;

bool all_finite(const Eigen::VectorXd& v)
{
    return v.allFinite();
}

Eigen::VectorXd residuals(const Model& model, const Series& data, const Eigen::VectorXd& p)
{
    const std::span<const double> ps(p.data(), static_cast<std::size_t>(p.size()));
    Eigen::VectorXd r(static_cast<Eigen::Index>(data.size()));
    for(std::size_t i = 0; i < data.size(); ++i)
        r[static_cast<Eigen::Index>(i)] = model.value(data.x[i], ps) - data.y[i];
    return r;
}

void project(Eigen::VectorXd& p, const std::vector<Interval>& bounds)
{
    if(bounds.empty())
        return;
    for(Eigen::Index j = 0; j < p.size(); ++j)
        p[j] = std::clamp(p[j], bounds[static_cast<std::size_t>(j)].lower, bounds[static_cast<std::size_t>(j)].upper);
}

bool rank_deficient(const Eigen::MatrixXd& jac)
{
    if(jac.rows() < jac.cols())
        return true;
    Eigen::MatrixXd scaled = jac;
    for(Eigen::Index j = 0; j < scaled.cols(); ++j)
    {
        const double norm = scaled.col(j).norm();
        if(!(norm > 0) || !std::isfinite(norm))
            return true;
        scaled.col(j) /= norm;
    }
    Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(scaled);
    qr.setThreshold(1e-10);
    return qr.rank() < scaled.cols();
}

} // namespace

Eigen::MatrixXd finite_difference_jacobian(const Model& model,
                                           std::span<const double> xs,
                                           std::span<const double> p,
                                           double relative_step)
{
    Eigen::MatrixXd jac(static_cast<Eigen::Index>(xs.size()), static_cast<Eigen::Index>(p.size()));
    std::vector<double> work(p.begin(), p.end());
    for(std::size_t j = 0; j < p.size(); ++j)
    {
        const double h = relative_step * (p[j] != 0 ? std::abs(p[j]) : 1.0);
        for(std::size_t i = 0; i < xs.size(); ++i)
        {
            work[j] = p[j] + h;
            const double up = model.value(xs[i], work);
            work[j] = p[j] - h;
            const double down = model.value(xs[i], work);
            jac(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = (up - down) / (2 * h);
        }
        work[j] = p[j];
    }
    return jac;
}

Eigen::MatrixXd model_jacobian(const Model& model, std::span<const double> xs, std::span<const double> p)
{
    if(!model.gradient)
        return finite_difference_jacobian(model, xs, p);

    Eigen::MatrixXd jac(static_cast<Eigen::Index>(xs.size()), static_cast<Eigen::Index>(p.size()));
    std::vector<double> row(p.size());
    for(std::size_t i = 0; i < xs.size(); ++i)
    {
        model.gradient(xs[i], p, row);
        for(std::size_t j = 0; j < p.size(); ++j)
            jac(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = row[j];
    }
    return jac;
}

FitResult least_squares(const Model& model,
                        const Series& data,
                        std::span<const double> initial_params,
                        const LeastSquaresOptions& options)
{
    data.validate();
    const auto n = initial_params.size();
    if(n == 0 || n != model.arity)
        throw ArgumentError("initial parameter count does not match model arity");
    if(data.size() < n)
        throw ArgumentError("fewer data points than parameters");
    if(!options.bounds.empty() && options.bounds.size() != n)
        throw ArgumentError("bounds must be empty or one interval per parameter");
    for(double v : initial_params)
        if(!std::isfinite(v))
            throw ArgumentError("initial parameters must be finite");

    Eigen::VectorXd p = Eigen::Map<const Eigen::VectorXd>(initial_params.data(), static_cast<Eigen::Index>(n));
    project(p, options.bounds);

    Eigen::VectorXd r = residuals(model, data, p);
    if(!all_finite(r))
        throw FitError("model output is not finite at the initial parameters");
    double cost = r.squaredNorm();

    const std::span<const double> xs(data.x);
    auto span_of = [](const Eigen::VectorXd& v) {
        return std::span<const double>(v.data(), static_cast<std::size_t>(v.size()));
    };

    FitResult result;
    double damping = options.initial_damping;
    Eigen::VectorXd scale = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(n));
    Eigen::MatrixXd jac;
    bool done = false;

    while(!done && result.iterations < options.max_iterations)
    {
        ++result.iterations;
        jac = model_jacobian(model, xs, span_of(p));
        if(!jac.allFinite())
            throw FitError("model Jacobian is not finite", result);

        const Eigen::MatrixXd normal = jac.transpose() * jac;
        const Eigen::VectorXd gradient = jac.transpose() * r;
        scale = scale.cwiseMax(normal.diagonal());
        const double floor = std::max(scale.maxCoeff() * 1e-15, std::numeric_limits<double>::min());
        const Eigen::VectorXd diag = scale.cwiseMax(floor);

        if(cost == 0 || gradient.cwiseAbs().maxCoeff() == 0)
        {
            result.converged = true;
            result.message = "zero residual or zero gradient";
            break;
        }

        bool accepted = false;
        while(!accepted)
        {
            Eigen::MatrixXd damped = normal;
            damped.diagonal() += damping * diag;
            const Eigen::VectorXd step = damped.ldlt().solve(-gradient);

            Eigen::VectorXd trial = p + step;
            project(trial, options.bounds);
            Eigen::VectorXd trial_r;
            double trial_cost = std::numeric_limits<double>::infinity();
            if(step.allFinite())
            {
                trial_r = residuals(model, data, trial);
                if(all_finite(trial_r))
                    trial_cost = trial_r.squaredNorm();
            }

            if(trial_cost < cost)
            {
                const Eigen::VectorXd taken = trial - p;
                const double step_norm = diag.cwiseSqrt().cwiseProduct(taken).norm();
                const double param_norm = diag.cwiseSqrt().cwiseProduct(trial).norm();
                const double decrease = (cost - trial_cost) / cost;

                p = trial;
                r = trial_r;
                cost = trial_cost;
                damping = std::max(damping / 10, 1e-15);
                accepted = true;

                if(cost == 0 || step_norm <= options.step_tolerance * (param_norm + options.step_tolerance)
                   || decrease <= options.residual_tolerance)
                {
                    result.converged = true;
                    result.message = "converged";
                    done = true;
                }
            }
            else
            {
                damping *= 10;
                if(damping > kMaxDamping)
                {
                    // No descent direction left at working precision.
                    result.converged = true;
                    result.message = "no further decrease possible";
                    done = true;
                    break;
                }
            }
        }
    }

    if(!done && !result.converged)
        result.message = "iteration limit reached";

    result.params.assign(p.data(), p.data() + p.size());
    result.residual_norm = std::sqrt(cost);

    jac = model_jacobian(model, xs, span_of(p));
    if(!jac.allFinite() || rank_deficient(jac))
    {
        result.singular = true;
        result.converged = false;
        result.message = "singular normal equations (parameters not identifiable)";
    }
    else if(data.size() > n)
    {
        const Eigen::MatrixXd normal = jac.transpose() * jac;
        const double sigma2 = cost / static_cast<double>(data.size() - n);
        result.covariance = sigma2 * normal.inverse();
    }
    return result;
}

} // namespace sawkit::numerics
