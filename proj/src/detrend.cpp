#include "mffdfa/detrend.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "mffdfa/error.hpp"

namespace mffdfa {

double abscissa_value(std::size_t index, std::size_t length, Abscissa abscissa) noexcept
{
    const double t = static_cast<double>(index + 1);
    return abscissa == Abscissa::raw ? t : t / static_cast<double>(length);
}

std::vector<double> BasisFunction::regressors(double t) const
{
    std::vector<double> out;
    out.reserve(columns.size());
    for (const auto& phi : columns)
        out.push_back(phi(t));
    return out;
}

namespace {

double one(double) { return 1.0; }
double identity(double t) { return t; }

} // namespace

std::vector<BasisFunction> default_basis_set()
{
    return {
        {"quadratic", {[](double t) { return t * t; }, identity, one}},
        {"sin_square", {[](double t) { return std::sin(t * t); }, identity, one}},
        {"cubic", {[](double t) { return t * t * t; }, identity, one}},
    };
}

BasisFunction polynomial_basis(int order)
{
    if (order < 1 || order > 20)
        throw InputError("polynomial order must lie in [1, 20], got " + std::to_string(order));
    BasisFunction basis;
    basis.name = "poly" + std::to_string(order);
    for (int j = order; j >= 0; --j)
        basis.columns.emplace_back([j](double t) { return std::pow(t, j); });
    return basis;
}

SegmentFitter::SegmentFitter(const BasisFunction& basis, std::size_t length, Abscissa abscissa)
    : length_(length), parameters_(basis.parameter_count())
{
    if (parameters_ == 0)
        throw InputError("basis '" + basis.name + "' has no regressors");
    if (length_ < parameters_)
        throw InputError("segment of length " + std::to_string(length_) + " cannot fit basis '" +
                         basis.name + "' with " + std::to_string(parameters_) + " parameters");

    const auto rows = static_cast<Eigen::Index>(length_);
    const auto cols = static_cast<Eigen::Index>(parameters_);
    design_.resize(rows, cols);
    for (Eigen::Index i = 0; i < rows; ++i) {
        const double t = abscissa_value(static_cast<std::size_t>(i), length_, abscissa);
        for (Eigen::Index j = 0; j < cols; ++j)
            design_(i, j) = basis.columns[static_cast<std::size_t>(j)](t);
    }
    if (!design_.allFinite())
        throw NumericalError("basis '" + basis.name + "' is not finite on segments of length " +
                             std::to_string(length_));

    column_scale_.resize(cols);
    for (Eigen::Index j = 0; j < cols; ++j) {
        const double norm = design_.col(j).norm();
        column_scale_(j) = norm > 0.0 ? norm : 1.0;
        design_.col(j) /= column_scale_(j);
    }
    solver_.compute(design_);
    rank_ = solver_.rank();
}

void SegmentFitter::fit_values(std::span<const double> segment, std::span<double> fitted) const
{
    if (segment.size() != length_ || fitted.size() != length_)
        throw InputError("segment length " + std::to_string(segment.size()) +
                         " does not match fitter length " + std::to_string(length_));
    const Eigen::Map<const Eigen::VectorXd> y(segment.data(), static_cast<Eigen::Index>(length_));
    Eigen::Map<Eigen::VectorXd> out(fitted.data(), static_cast<Eigen::Index>(length_));
    const Eigen::VectorXd c = solver_.solve(y);
    out.noalias() = design_ * c;
}

FitResult SegmentFitter::fit(std::span<const double> segment) const
{
    if (segment.size() != length_)
        throw InputError("segment length " + std::to_string(segment.size()) +
                         " does not match fitter length " + std::to_string(length_));
    const Eigen::Map<const Eigen::VectorXd> y(segment.data(), static_cast<Eigen::Index>(length_));
    const Eigen::VectorXd c = solver_.solve(y);

    FitResult result;
    result.fitted.resize(length_);
    Eigen::Map<Eigen::VectorXd>(result.fitted.data(), static_cast<Eigen::Index>(length_)).noalias() =
        design_ * c;
    result.coefficients.resize(parameters_);
    for (std::size_t j = 0; j < parameters_; ++j)
        result.coefficients[j] = c(static_cast<Eigen::Index>(j)) / column_scale_(static_cast<Eigen::Index>(j));

    double ss = 0.0;
    for (std::size_t i = 0; i < length_; ++i) {
        const double r = segment[i] - result.fitted[i];
        ss += r * r;
    }
    result.ss_res = ss;
    result.rank_deficient = rank_deficient();
    result.r_squared = coefficient_of_determination(segment, result);
    return result;
}

FitResult fit_least_squares(std::span<const double> segment, const BasisFunction& basis, Abscissa abscissa)
{
    for (std::size_t i = 0; i < segment.size(); ++i) {
        if (!std::isfinite(segment[i]))
            throw InputError("non-finite segment value at index " + std::to_string(i));
    }
    return SegmentFitter(basis, segment.size(), abscissa).fit(segment);
}

double coefficient_of_determination(std::span<const double> segment, const FitResult& fit,
                                    double zero_tolerance)
{
    if (segment.empty())
        return 0.0;
    double mean = 0.0;
    for (double v : segment)
        mean += v;
    mean /= static_cast<double>(segment.size());
    double ss_tot = 0.0;
    for (double v : segment)
        ss_tot += (v - mean) * (v - mean);

    if (ss_tot == 0.0)
        return fit.ss_res <= zero_tolerance ? 1.0 : 0.0;
    return 1.0 - fit.ss_res / ss_tot;
}

std::size_t select_best(std::span<const double> r_squared) noexcept
{
    std::size_t best = 0;
    for (std::size_t j = 1; j < r_squared.size(); ++j) {
        if (r_squared[j] > r_squared[best] + kSelectionTieTolerance)
            best = j;
    }
    return best;
}

TrendSelection select_trend(std::span<const double> segment, std::span<const BasisFunction> bases,
                            Abscissa abscissa)
{
    if (bases.empty())
        throw InputError("trend selection needs at least one basis");

    std::vector<FitResult> fits;
    std::vector<double> scores;
    fits.reserve(bases.size());
    for (const auto& basis : bases) {
        fits.push_back(fit_least_squares(segment, basis, abscissa));
        scores.push_back(fits.back().r_squared);
    }
    const std::size_t best = select_best(scores);
    return {best, std::move(fits[best])};
}

DetrendPolicy DetrendPolicy::fixed_polynomial(int order)
{
    if (order < 1 || order > 10)
        throw InputError("fixed detrending order m must lie in [1, 10], got " + std::to_string(order));
    DetrendPolicy policy;
    policy.order_ = order;
    policy.bases_.push_back(polynomial_basis(order));
    return policy;
}

DetrendPolicy DetrendPolicy::flexible(std::vector<BasisFunction> bases)
{
    if (bases.empty())
        throw InputError("flexible detrending needs a non-empty basis set");
    DetrendPolicy policy;
    policy.flexible_ = true;
    policy.bases_ = std::move(bases);
    return policy;
}

std::size_t DetrendPolicy::max_parameter_count() const noexcept
{
    std::size_t p = 0;
    for (const auto& b : bases_)
        p = std::max(p, b.parameter_count());
    return p;
}

} // namespace mffdfa
