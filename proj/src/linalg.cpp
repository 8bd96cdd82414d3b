#include "crnbal/linalg.hpp"

#include "crnbal/errors.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <utility>

namespace crnbal {

std::string_view to_string(ErrorCode code) {
    switch (code) {
        case ErrorCode::DuplicateSpecies: return "DuplicateSpecies";
        case ErrorCode::DuplicateComplex: return "DuplicateComplex";
        case ErrorCode::DuplicateReaction: return "DuplicateReaction";
        case ErrorCode::SelfLoopReaction: return "SelfLoopReaction";
        case ErrorCode::UnusedComplex: return "UnusedComplex";
        case ErrorCode::UnusedSpecies: return "UnusedSpecies";
        case ErrorCode::InvalidComplex: return "InvalidComplex";
        case ErrorCode::InvalidIndex: return "InvalidIndex";
        case ErrorCode::NonPositiveState: return "NonPositiveState";
        case ErrorCode::NotApplicable: return "NotApplicable";
        case ErrorCode::NotRDK: return "NotRDK";
        case ErrorCode::EmptySelection: return "EmptySelection";
        case ErrorCode::NotAPartition: return "NotAPartition";
        case ErrorCode::TooLarge: return "TooLarge";
        case ErrorCode::NonIntegerComplex: return "NonIntegerComplex";
        case ErrorCode::DimensionMismatch: return "DimensionMismatch";
        case ErrorCode::InvalidKinetics: return "InvalidKinetics";
        case ErrorCode::ReferenceNotEquilibrium: return "ReferenceNotEquilibrium";
        case ErrorCode::NoEquilibria: return "NoEquilibria";
        case ErrorCode::NotComplexBalanced: return "NotComplexBalanced";
        case ErrorCode::ParseError: return "ParseError";
        case ErrorCode::UnknownSpecies: return "UnknownSpecies";
        case ErrorCode::MissingKineticsRow: return "MissingKineticsRow";
        case ErrorCode::NegativeRate: return "NegativeRate";
    }
    return "Unknown";
}

double to_double(const Rational& q) { return q.convert_to<double>(); }

std::string to_string(const Rational& q) { return q.str(); }

bool is_integer(const Rational& q) { return boost::multiprecision::denominator(q) == 1; }

RationalMatrix::RationalMatrix(std::initializer_list<std::initializer_list<long long>> rows) {
    rows_ = rows.size();
    cols_ = rows_ == 0 ? 0 : rows.begin()->size();
    data_.reserve(rows_ * cols_);
    for (const auto& r : rows) {
        if (r.size() != cols_) throw CrnError(ErrorCode::DimensionMismatch, "ragged matrix literal");
        for (long long v : r) data_.emplace_back(v);
    }
}

RationalMatrix RationalMatrix::identity(std::size_t n) {
    RationalMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
    return m;
}

RationalMatrix RationalMatrix::from_columns(const std::vector<RationalVector>& columns, std::size_t rows) {
    RationalMatrix m(rows, columns.size());
    for (std::size_t j = 0; j < columns.size(); ++j) {
        if (columns[j].size() != rows) throw CrnError(ErrorCode::DimensionMismatch, "column length");
        for (std::size_t i = 0; i < rows; ++i) m(i, j) = columns[j][i];
    }
    return m;
}

RationalVector RationalMatrix::row(std::size_t i) const {
    return RationalVector(data_.begin() + static_cast<std::ptrdiff_t>(i * cols_),
                          data_.begin() + static_cast<std::ptrdiff_t>((i + 1) * cols_));
}

RationalVector RationalMatrix::column(std::size_t j) const {
    RationalVector c(rows_);
    for (std::size_t i = 0; i < rows_; ++i) c[i] = (*this)(i, j);
    return c;
}

RationalMatrix RationalMatrix::transpose() const {
    RationalMatrix t(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
    return t;
}

RationalMatrix RationalMatrix::select_columns(const std::vector<std::size_t>& cols) const {
    RationalMatrix s(rows_, cols.size());
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t k = 0; k < cols.size(); ++k) s(i, k) = (*this)(i, cols[k]);
    return s;
}

RationalMatrix RationalMatrix::select_rows(const std::vector<std::size_t>& rows) const {
    RationalMatrix s(rows.size(), cols_);
    for (std::size_t k = 0; k < rows.size(); ++k)
        for (std::size_t j = 0; j < cols_; ++j) s(k, j) = (*this)(rows[k], j);
    return s;
}

RationalMatrix RationalMatrix::vstack(const RationalMatrix& below) const {
    if (below.cols_ != cols_) throw CrnError(ErrorCode::DimensionMismatch, "vstack column count");
    RationalMatrix s(rows_ + below.rows_, cols_);
    std::copy(data_.begin(), data_.end(), s.data_.begin());
    std::copy(below.data_.begin(), below.data_.end(), s.data_.begin() + static_cast<std::ptrdiff_t>(data_.size()));
    return s;
}

RationalMatrix RationalMatrix::hstack(const RationalMatrix& right) const {
    if (right.rows_ != rows_) throw CrnError(ErrorCode::DimensionMismatch, "hstack row count");
    RationalMatrix s(rows_, cols_ + right.cols_);
    for (std::size_t i = 0; i < rows_; ++i) {
        for (std::size_t j = 0; j < cols_; ++j) s(i, j) = (*this)(i, j);
        for (std::size_t j = 0; j < right.cols_; ++j) s(i, cols_ + j) = right(i, j);
    }
    return s;
}

bool RationalMatrix::is_zero() const {
    return std::all_of(data_.begin(), data_.end(), [](const Rational& q) { return q == 0; });
}

Eigen::MatrixXd RationalMatrix::to_eigen() const {
    Eigen::MatrixXd m(static_cast<Eigen::Index>(rows_), static_cast<Eigen::Index>(cols_));
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = 0; j < cols_; ++j)
            m(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = to_double((*this)(i, j));
    return m;
}

RationalMatrix operator*(const RationalMatrix& a, const RationalMatrix& b) {
    if (a.cols_ != b.rows_) throw CrnError(ErrorCode::DimensionMismatch, "matrix product");
    RationalMatrix c(a.rows_, b.cols_);
    for (std::size_t i = 0; i < a.rows_; ++i)
        for (std::size_t k = 0; k < a.cols_; ++k) {
            const Rational& aik = a(i, k);
            if (aik == 0) continue;
            for (std::size_t j = 0; j < b.cols_; ++j) c(i, j) += aik * b(k, j);
        }
    return c;
}

RationalVector operator*(const RationalMatrix& a, const RationalVector& v) {
    if (a.cols_ != v.size()) throw CrnError(ErrorCode::DimensionMismatch, "matrix-vector product");
    RationalVector out(a.rows_);
    for (std::size_t i = 0; i < a.rows_; ++i)
        for (std::size_t j = 0; j < a.cols_; ++j) out[i] += a(i, j) * v[j];
    return out;
}

std::size_t rational_rank(const RationalMatrix& a) {
    const std::size_t rows = a.rows();
    const std::size_t cols = a.cols();
    if (rows == 0 || cols == 0) return 0;

    // Clear denominators row by row, then eliminate over Z.
    std::vector<std::vector<Integer>> m(rows, std::vector<Integer>(cols));
    for (std::size_t i = 0; i < rows; ++i) {
        Integer l = 1;
        for (std::size_t j = 0; j < cols; ++j) {
            const Integer d = boost::multiprecision::denominator(a(i, j));
            l = boost::multiprecision::lcm(l, d);
        }
        for (std::size_t j = 0; j < cols; ++j) {
            const Rational scaled = a(i, j) * Rational(l);
            m[i][j] = boost::multiprecision::numerator(scaled);
        }
    }

    std::size_t rank = 0;
    Integer prev = 1;
    for (std::size_t col = 0; col < cols && rank < rows; ++col) {
        std::size_t pivot = rank;
        while (pivot < rows && m[pivot][col] == 0) ++pivot;
        if (pivot == rows) continue;
        std::swap(m[pivot], m[rank]);
        for (std::size_t i = rank + 1; i < rows; ++i) {
            for (std::size_t j = col + 1; j < cols; ++j) {
                m[i][j] = (m[rank][col] * m[i][j] - m[i][col] * m[rank][j]) / prev;
            }
            m[i][col] = 0;
        }
        prev = m[rank][col];
        ++rank;
    }
    return rank;
}

RationalMatrix rref(const RationalMatrix& a, std::vector<std::size_t>* pivots) {
    RationalMatrix m = a;
    std::vector<std::size_t> piv;
    std::size_t row = 0;
    for (std::size_t col = 0; col < m.cols() && row < m.rows(); ++col) {
        std::size_t p = row;
        while (p < m.rows() && m(p, col) == 0) ++p;
        if (p == m.rows()) continue;
        if (p != row)
            for (std::size_t j = 0; j < m.cols(); ++j) std::swap(m(p, j), m(row, j));
        const Rational inv = 1 / m(row, col);
        for (std::size_t j = col; j < m.cols(); ++j) m(row, j) *= inv;
        for (std::size_t i = 0; i < m.rows(); ++i) {
            if (i == row || m(i, col) == 0) continue;
            const Rational f = m(i, col);
            for (std::size_t j = col; j < m.cols(); ++j) m(i, j) -= f * m(row, j);
        }
        piv.push_back(col);
        ++row;
    }
    if (pivots) *pivots = std::move(piv);
    return m;
}

RationalMatrix nullspace(const RationalMatrix& a) {
    std::vector<std::size_t> piv;
    const RationalMatrix r = rref(a, &piv);
    std::vector<bool> is_pivot(a.cols(), false);
    for (std::size_t p : piv) is_pivot[p] = true;

    std::vector<RationalVector> basis;
    for (std::size_t f = 0; f < a.cols(); ++f) {
        if (is_pivot[f]) continue;
        RationalVector v(a.cols());
        v[f] = 1;
        for (std::size_t i = 0; i < piv.size(); ++i) v[piv[i]] = -r(i, f);
        basis.push_back(std::move(v));
    }
    return RationalMatrix::from_columns(basis, a.cols());
}

RationalMatrix column_space_basis(const RationalMatrix& a) {
    std::vector<std::size_t> piv;
    rref(a, &piv);
    return a.select_columns(piv);
}

RationalMatrix orthogonal_complement(const RationalMatrix& basis, std::size_t dim) {
    if (basis.cols() == 0) return RationalMatrix::identity(dim);
    return nullspace(basis.transpose());
}

std::optional<RationalVector> positive_kernel_vector(const RationalMatrix& a) {
    const std::size_t p = a.rows();
    const std::size_t m = a.cols();
    if (m == 0) return RationalVector{};
    if (p == 0) return RationalVector(m, Rational(1));

    // Substitute z = 1 + t, t >= 0: a t = -a 1.
    RationalVector b(p);
    for (std::size_t i = 0; i < p; ++i)
        for (std::size_t j = 0; j < m; ++j) b[i] -= a(i, j);

    // Tableau columns: t (m), artificials (p), rhs.
    const std::size_t width = m + p + 1;
    std::vector<RationalVector> tab(p, RationalVector(width));
    std::vector<std::size_t> basis(p);
    for (std::size_t i = 0; i < p; ++i) {
        const int sign = b[i] < 0 ? -1 : 1;
        for (std::size_t j = 0; j < m; ++j) tab[i][j] = sign * a(i, j);
        tab[i][m + i] = 1;
        tab[i][width - 1] = sign * b[i];
        basis[i] = m + i;
    }
    // Reduced costs of the phase-one objective (sum of artificials).
    RationalVector cost(width);
    for (std::size_t i = 0; i < p; ++i)
        for (std::size_t j = 0; j < m; ++j) cost[j] -= tab[i][j];
    for (std::size_t i = 0; i < p; ++i) cost[width - 1] -= tab[i][width - 1];

    for (;;) {
        std::size_t enter = width;
        for (std::size_t j = 0; j + 1 < width; ++j)
            if (cost[j] < 0) {
                enter = j;
                break;
            }
        if (enter == width) break;

        std::size_t leave = p;
        Rational best;
        for (std::size_t i = 0; i < p; ++i) {
            if (tab[i][enter] <= 0) continue;
            const Rational ratio = tab[i][width - 1] / tab[i][enter];
            if (leave == p || ratio < best || (ratio == best && basis[i] < basis[leave])) {
                leave = i;
                best = ratio;
            }
        }
        if (leave == p) break;  // unbounded direction; cannot happen in phase one

        const Rational piv = tab[leave][enter];
        for (auto& v : tab[leave]) v /= piv;
        for (std::size_t i = 0; i < p; ++i) {
            if (i == leave || tab[i][enter] == 0) continue;
            const Rational f = tab[i][enter];
            for (std::size_t j = 0; j < width; ++j) tab[i][j] -= f * tab[leave][j];
        }
        if (cost[enter] != 0) {
            const Rational f = cost[enter];
            for (std::size_t j = 0; j < width; ++j) cost[j] -= f * tab[leave][j];
        }
        basis[leave] = enter;
    }

    if (cost[width - 1] != 0) return std::nullopt;  // artificials could not be driven to zero

    RationalVector z(m, Rational(1));
    for (std::size_t i = 0; i < p; ++i)
        if (basis[i] < m) z[basis[i]] += tab[i][width - 1];
    return z;
}

bool EchelonBasis::insert(RationalVector v) {
    if (v.size() != dim_) throw CrnError(ErrorCode::DimensionMismatch, "echelon insert");
    for (std::size_t k = 0; k < rows_.size(); ++k) {
        const Rational f = v[pivots_[k]];
        if (f == 0) continue;
        for (std::size_t j = 0; j < dim_; ++j) v[j] -= f * rows_[k][j];
    }
    std::size_t pivot = 0;
    while (pivot < dim_ && v[pivot] == 0) ++pivot;
    if (pivot == dim_) return false;
    const Rational inv = 1 / v[pivot];
    for (auto& e : v) e *= inv;
    rows_.push_back(std::move(v));
    pivots_.push_back(pivot);
    return true;
}

std::size_t numeric_rank(const Eigen::MatrixXd& a, double rel_tol) {
    if (a.size() == 0) return 0;
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(a);
    const auto& s = svd.singularValues();
    if (s.size() == 0 || s(0) == 0.0) return 0;
    std::size_t r = 0;
    for (Eigen::Index i = 0; i < s.size(); ++i)
        if (s(i) > rel_tol * s(0)) ++r;
    return r;
}

Eigen::MatrixXd orthonormal_column_basis(const Eigen::MatrixXd& a, double rel_tol) {
    if (a.size() == 0) return Eigen::MatrixXd(a.rows(), 0);
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(a, Eigen::ComputeFullU);
    const std::size_t r = numeric_rank(a, rel_tol);
    return svd.matrixU().leftCols(static_cast<Eigen::Index>(r));
}

Eigen::MatrixXd orthonormal_complement(const Eigen::MatrixXd& a, double rel_tol) {
    const Eigen::Index n = a.rows();
    if (a.cols() == 0) return Eigen::MatrixXd::Identity(n, n);
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(a, Eigen::ComputeFullU);
    const auto r = static_cast<Eigen::Index>(numeric_rank(a, rel_tol));
    return svd.matrixU().rightCols(n - r);
}

MixedMatrix::MixedMatrix(RationalMatrix exact) : values_(exact.to_eigen()), exact_(std::move(exact)) {}

MixedMatrix::MixedMatrix(Eigen::MatrixXd values) : values_(std::move(values)) {}

std::size_t MixedMatrix::rank() const {
    return exact_ ? rational_rank(*exact_) : numeric_rank(values_);
}

MixedMatrix MixedMatrix::transpose() const {
    if (exact_) return MixedMatrix(exact_->transpose());
    return MixedMatrix(Eigen::MatrixXd(values_.transpose()));
}

MixedMatrix MixedMatrix::select_rows(const std::vector<std::size_t>& rows) const {
    if (exact_) return MixedMatrix(exact_->select_rows(rows));
    Eigen::MatrixXd s(static_cast<Eigen::Index>(rows.size()), values_.cols());
    for (std::size_t k = 0; k < rows.size(); ++k) s.row(static_cast<Eigen::Index>(k)) = values_.row(static_cast<Eigen::Index>(rows[k]));
    return MixedMatrix(std::move(s));
}

MixedMatrix MixedMatrix::select_columns(const std::vector<std::size_t>& cols) const {
    if (exact_) return MixedMatrix(exact_->select_columns(cols));
    Eigen::MatrixXd s(values_.rows(), static_cast<Eigen::Index>(cols.size()));
    for (std::size_t k = 0; k < cols.size(); ++k) s.col(static_cast<Eigen::Index>(k)) = values_.col(static_cast<Eigen::Index>(cols[k]));
    return MixedMatrix(std::move(s));
}

MixedMatrix MixedMatrix::vstack(const MixedMatrix& below) const {
    if (exact_ && below.exact_) return MixedMatrix(exact_->vstack(*below.exact_));
    if (below.cols() != cols()) throw CrnError(ErrorCode::DimensionMismatch, "vstack column count");
    Eigen::MatrixXd s(values_.rows() + below.values_.rows(), values_.cols());
    s << values_, below.values_;
    return MixedMatrix(std::move(s));
}

MixedMatrix MixedMatrix::hstack(const MixedMatrix& right) const {
    if (exact_ && right.exact_) return MixedMatrix(exact_->hstack(*right.exact_));
    if (right.rows() != rows()) throw CrnError(ErrorCode::DimensionMismatch, "hstack row count");
    Eigen::MatrixXd s(values_.rows(), values_.cols() + right.values_.cols());
    s << values_, right.values_;
    return MixedMatrix(std::move(s));
}

bool MixedMatrix::rows_equal(std::size_t i, std::size_t j) const {
    if (exact_) return exact_->row(i) == exact_->row(j);
    const auto d = (values_.row(static_cast<Eigen::Index>(i)) - values_.row(static_cast<Eigen::Index>(j))).cwiseAbs();
    return d.size() == 0 || d.maxCoeff() <= 1e-12;
}

bool MixedMatrix::columns_equal(std::size_t i, std::size_t j) const {
    if (exact_) return exact_->column(i) == exact_->column(j);
    const auto d = (values_.col(static_cast<Eigen::Index>(i)) - values_.col(static_cast<Eigen::Index>(j))).cwiseAbs();
    return d.size() == 0 || d.maxCoeff() <= 1e-12;
}

std::string MixedMatrix::entry_string(std::size_t i, std::size_t j) const {
    if (exact_) return to_string((*exact_)(i, j));
    return format_double(values_(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)));
}

MixedMatrix span_basis(const MixedMatrix& columns) {
    if (columns.exact()) return MixedMatrix(column_space_basis(*columns.exact()));
    return MixedMatrix(orthonormal_column_basis(columns.values()));
}

MixedMatrix complement_basis(const MixedMatrix& columns) {
    if (columns.exact()) {
        const RationalMatrix basis = column_space_basis(*columns.exact());
        return MixedMatrix(orthogonal_complement(basis, columns.rows()));
    }
    return MixedMatrix(orthonormal_complement(columns.values()));
}

std::string format_double(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    // Prefer the shortest representation that still round-trips.
    for (int prec = 1; prec <= 17; ++prec) {
        char shorter[64];
        std::snprintf(shorter, sizeof shorter, "%.*g", prec, v);
        if (std::strtod(shorter, nullptr) == v) return shorter;
    }
    return buf;
}

std::string format_sig(double v, int digits) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.*g", digits, v);
    return buf;
}

}  // namespace crnbal
