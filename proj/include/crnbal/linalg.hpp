#ifndef CRNBAL_LINALG_HPP
#define CRNBAL_LINALG_HPP

#include <Eigen/Dense>
#include <boost/multiprecision/cpp_int.hpp>

#include <cstddef>
#include <initializer_list>
#include <optional>
#include <string>
#include <vector>

namespace crnbal {

using Rational = boost::multiprecision::cpp_rational;
using Integer = boost::multiprecision::cpp_int;
using RationalVector = std::vector<Rational>;

double to_double(const Rational& q);
std::string to_string(const Rational& q);  // "p/q", or "p" when integral
bool is_integer(const Rational& q);

/// Dense row-major matrix over the rationals.
class RationalMatrix {
public:
    RationalMatrix() = default;
    RationalMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}
    RationalMatrix(std::initializer_list<std::initializer_list<long long>> rows);

    static RationalMatrix identity(std::size_t n);
    static RationalMatrix from_columns(const std::vector<RationalVector>& columns, std::size_t rows);

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }

    Rational& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
    const Rational& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

    RationalVector row(std::size_t i) const;
    RationalVector column(std::size_t j) const;
    RationalMatrix transpose() const;
    RationalMatrix select_columns(const std::vector<std::size_t>& cols) const;
    RationalMatrix select_rows(const std::vector<std::size_t>& rows) const;
    /// Stacks `below` under this matrix; column counts must agree.
    RationalMatrix vstack(const RationalMatrix& below) const;
    RationalMatrix hstack(const RationalMatrix& right) const;
    bool is_zero() const;

    Eigen::MatrixXd to_eigen() const;

    friend RationalMatrix operator*(const RationalMatrix& a, const RationalMatrix& b);
    friend RationalVector operator*(const RationalMatrix& a, const RationalVector& v);
    friend bool operator==(const RationalMatrix& a, const RationalMatrix& b) = default;

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<Rational> data_;
};

/// Rank over Q by fraction-free (Bareiss) elimination on the integer-scaled rows.
std::size_t rational_rank(const RationalMatrix& a);

/// Reduced row echelon form; `pivots` receives the pivot column of each nonzero row.
RationalMatrix rref(const RationalMatrix& a, std::vector<std::size_t>* pivots = nullptr);

/// Columns form a basis of ker(a).
RationalMatrix nullspace(const RationalMatrix& a);

/// Columns form a basis of the column space of `a` (a subset of its columns).
RationalMatrix column_space_basis(const RationalMatrix& a);

/// Columns form a basis of the orthogonal complement of the span of `basis` columns
/// inside Q^dim.
RationalMatrix orthogonal_complement(const RationalMatrix& basis, std::size_t dim);

/// Exact feasibility: a vector z with a*z = 0 and z_i >= 1 for all i, if one exists.
/// Phase-one simplex over Q with Bland's rule.
std::optional<RationalVector> positive_kernel_vector(const RationalMatrix& a);

/// Incremental exact echelon basis; used by the partition search.
class EchelonBasis {
public:
    explicit EchelonBasis(std::size_t dim = 0) : dim_(dim) {}
    /// Returns true when `v` increased the rank.
    bool insert(RationalVector v);
    std::size_t rank() const { return rows_.size(); }

private:
    std::size_t dim_;
    std::vector<RationalVector> rows_;
    std::vector<std::size_t> pivots_;
};

/// Numeric rank: singular values above rel_tol * sigma_max.
std::size_t numeric_rank(const Eigen::MatrixXd& a, double rel_tol = 1e-9);

/// Orthonormal basis (columns) for the column space, using the same threshold.
Eigen::MatrixXd orthonormal_column_basis(const Eigen::MatrixXd& a, double rel_tol = 1e-9);

/// Orthonormal basis for the orthogonal complement of the column space of `a` in R^rows.
Eigen::MatrixXd orthonormal_complement(const Eigen::MatrixXd& a, double rel_tol = 1e-9);

/// A real matrix with an optional exact rational twin. Ranks are exact whenever the
/// twin is present.
class MixedMatrix {
public:
    MixedMatrix() = default;
    explicit MixedMatrix(RationalMatrix exact);
    explicit MixedMatrix(Eigen::MatrixXd values);

    std::size_t rows() const { return static_cast<std::size_t>(values_.rows()); }
    std::size_t cols() const { return static_cast<std::size_t>(values_.cols()); }
    double operator()(std::size_t i, std::size_t j) const { return values_(i, j); }
    bool is_exact() const { return exact_.has_value(); }
    const std::optional<RationalMatrix>& exact() const { return exact_; }
    const Eigen::MatrixXd& values() const { return values_; }

    std::size_t rank() const;
    MixedMatrix transpose() const;
    MixedMatrix select_rows(const std::vector<std::size_t>& rows) const;
    MixedMatrix select_columns(const std::vector<std::size_t>& cols) const;
    MixedMatrix vstack(const MixedMatrix& below) const;
    MixedMatrix hstack(const MixedMatrix& right) const;

    /// Row equality: exact when both rows are rational, else within 1e-12.
    bool rows_equal(std::size_t i, std::size_t j) const;
    bool columns_equal(std::size_t i, std::size_t j) const;
    /// Entry rendered as "p/q" when exact, else shortest round-tripping decimal.
    std::string entry_string(std::size_t i, std::size_t j) const;

private:
    Eigen::MatrixXd values_;
    std::optional<RationalMatrix> exact_;
};

/// Basis of the column span: exact rref-based when exact, orthonormal otherwise.
MixedMatrix span_basis(const MixedMatrix& columns);
/// Basis of the orthogonal complement of the column span.
MixedMatrix complement_basis(const MixedMatrix& columns);

std::string format_double(double v);  // %.17g, round-trips
std::string format_sig(double v, int digits = 12);

}  // namespace crnbal

#endif  // CRNBAL_LINALG_HPP
