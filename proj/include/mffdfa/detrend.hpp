#pragma once

#include <cstddef>
#include <functional>
#include <span>
#include <string>
#include <vector>

#include <Eigen/Dense>

namespace mffdfa {

/// Where within-segment regressors are evaluated: at the sample counter
/// t = 1..s, or at t/s in (0, 1].
enum class Abscissa { raw, normalized };

double abscissa_value(std::size_t index, std::size_t length, Abscissa abscissa) noexcept;

/// A trend model linear in its parameters: trend(t) = sum_j c_j * phi_j(t).
struct BasisFunction {
    std::string name;
    std::vector<std::function<double(double)>> columns;

    std::size_t parameter_count() const noexcept { return columns.size(); }
    std::vector<double> regressors(double t) const;
};

/// The three-member flexible set, in order:
///   quadratic   a t^2 + b t + c
///   sin_square  a sin(t^2) + b t + c
///   cubic       a t^3 + b t + c
std::vector<BasisFunction> default_basis_set();

/// (t^m, ..., t, 1) for 1 <= m <= 20.
BasisFunction polynomial_basis(int order);

struct FitResult {
    std::vector<double> coefficients;
    std::vector<double> fitted;
    double ss_res = 0.0;
    double r_squared = 0.0;
    bool rank_deficient = false;
};

inline constexpr double kZeroTotalTolerance = 1e-12;
inline constexpr double kSelectionTieTolerance = 1e-12;

/// Least-squares fit of one basis at one segment length. The design matrix
/// is column-normalized and factored once by a complete orthogonal
/// decomposition, so fitting many segments of the same length reuses it.
/// Rank-deficient designs yield the minimum-norm solution and set
/// FitResult::rank_deficient.
class SegmentFitter {
public:
    SegmentFitter(const BasisFunction& basis, std::size_t length, Abscissa abscissa);

    std::size_t length() const noexcept { return length_; }
    std::size_t parameter_count() const noexcept { return parameters_; }
    bool rank_deficient() const noexcept { return static_cast<std::size_t>(rank_) < parameters_; }

    FitResult fit(std::span<const double> segment) const;

    /// Fitted values only, written into `fitted` (size length()).
    void fit_values(std::span<const double> segment, std::span<double> fitted) const;

private:
    std::size_t length_;
    std::size_t parameters_;
    Eigen::Index rank_ = 0;
    Eigen::MatrixXd design_;
    Eigen::VectorXd column_scale_;
    Eigen::CompleteOrthogonalDecomposition<Eigen::MatrixXd> solver_;
};

FitResult fit_least_squares(std::span<const double> segment, const BasisFunction& basis,
                            Abscissa abscissa = Abscissa::raw);

/// 1 - ss_res/ss_tot. A constant segment scores 1 when the fit reproduces it
/// (ss_res <= zero_tolerance) and 0 otherwise.
double coefficient_of_determination(std::span<const double> segment, const FitResult& fit,
                                    double zero_tolerance = kZeroTotalTolerance);

struct TrendSelection {
    std::size_t index = 0;
    FitResult fit;
};

/// Picks the basis with the highest R^2; differences within
/// kSelectionTieTolerance go to the earlier basis.
TrendSelection select_trend(std::span<const double> segment, std::span<const BasisFunction> bases,
                            Abscissa abscissa = Abscissa::raw);

/// Index of the winning score under the same tie rule as select_trend.
std::size_t select_best(std::span<const double> r_squared) noexcept;

/// Either a fixed polynomial of order m in [1, 10] (classical MFDFA-m) or a
/// flexible set chosen segment by segment.
class DetrendPolicy {
public:
    static DetrendPolicy fixed_polynomial(int order);
    static DetrendPolicy flexible(std::vector<BasisFunction> bases);
    static DetrendPolicy flexible() { return flexible(default_basis_set()); }

    bool is_flexible() const noexcept { return flexible_; }
    int order() const noexcept { return order_; }
    const std::vector<BasisFunction>& bases() const noexcept { return bases_; }
    std::size_t max_parameter_count() const noexcept;

private:
    DetrendPolicy() = default;

    bool flexible_ = false;
    int order_ = 0;
    std::vector<BasisFunction> bases_;
};

} // namespace mffdfa
