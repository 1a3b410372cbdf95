#pragma once

// Dense complex matrices and vectors of small order (n <= 8).
//
// Conventions used throughout the library:
//   inner(u, v)    = sum_i u_i * conj(v_i)          (linear in the first argument)
//   outer(u, v)    = u v*, entry (i,j) = u_i * conj(v_j)
//   hs_inner(A, B) = tr(B* A) = sum_ij A_ij * conj(B_ij)
//   adjoint(A)     = conjugate transpose

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <initializer_list>
#include <stdexcept>
#include <string>
#include <vector>

namespace ssv {

using Complex = std::complex<double>;

/// Maximum matrix order supported by the eigen/singular value routines.
inline constexpr int kMaxOrder = 8;

/// Error categories surfaced by the library.
enum class Err {
    non_square,
    shape_mismatch,
    unsupported_dimension,
    bad_param,
    not_unitary,
    not_unit_vector,
    degenerate_gram,
    convergence_failure,
    not_proper_subspace,
    not_strict_superspace,
    not_different_from_diag,
    not_in_scope,
    is_target_structure,
    separation_not_found,
    bad_slice_spec,
    parse_error,
};

class Error : public std::runtime_error {
public:
    Error(Err kind, const std::string& what) : std::runtime_error(what), kind_(kind) {}
    [[nodiscard]] Err kind() const { return kind_; }

private:
    Err kind_;
};

// ---------------------------------------------------------------------------
// CVector
// ---------------------------------------------------------------------------

using CVector = std::vector<Complex>;

[[nodiscard]] inline Complex inner(const CVector& u, const CVector& v) {
    if (u.size() != v.size()) throw Error(Err::shape_mismatch, "inner: length mismatch");
    Complex s = 0;
    for (std::size_t i = 0; i < u.size(); ++i) s += u[i] * std::conj(v[i]);
    return s;
}

[[nodiscard]] inline double norm(const CVector& u) {
    double s = 0;
    for (const auto& x : u) s += std::norm(x);
    return std::sqrt(s);
}

[[nodiscard]] inline CVector unit_vector(int n, int j) {
    CVector e(static_cast<std::size_t>(n), Complex(0));
    e[static_cast<std::size_t>(j)] = 1.0;
    return e;
}

[[nodiscard]] inline CVector scaled(const CVector& u, Complex c) {
    CVector r = u;
    for (auto& x : r) x *= c;
    return r;
}

[[nodiscard]] inline CVector conj(const CVector& u) {
    CVector r = u;
    for (auto& x : r) x = std::conj(x);
    return r;
}

[[nodiscard]] inline CVector normalized(const CVector& u) {
    double n = norm(u);
    if (n == 0.0) throw Error(Err::bad_param, "normalized: zero vector");
    return scaled(u, Complex(1.0 / n));
}

[[nodiscard]] inline CVector operator-(const CVector& u, const CVector& v) {
    if (u.size() != v.size()) throw Error(Err::shape_mismatch, "vector subtraction: length");
    CVector r = u;
    for (std::size_t i = 0; i < r.size(); ++i) r[i] -= v[i];
    return r;
}

[[nodiscard]] inline CVector operator+(const CVector& u, const CVector& v) {
    if (u.size() != v.size()) throw Error(Err::shape_mismatch, "vector addition: length");
    CVector r = u;
    for (std::size_t i = 0; i < r.size(); ++i) r[i] += v[i];
    return r;
}

// ---------------------------------------------------------------------------
// CMatrix
// ---------------------------------------------------------------------------

/// Dense row-major complex matrix.
struct CMatrix {
    int rows = 0;
    int cols = 0;
    std::vector<Complex> entries;

    CMatrix() = default;

    CMatrix(int r, int c)
        : rows(r), cols(c), entries(static_cast<std::size_t>(r) * static_cast<std::size_t>(c)) {
        if (r <= 0 || c <= 0) throw Error(Err::bad_param, "CMatrix: nonpositive dimension");
    }

    CMatrix(std::initializer_list<std::initializer_list<Complex>> data) {
        rows = static_cast<int>(data.size());
        if (rows == 0) throw Error(Err::bad_param, "CMatrix: empty initializer");
        cols = static_cast<int>(data.begin()->size());
        entries.reserve(static_cast<std::size_t>(rows) * static_cast<std::size_t>(cols));
        for (const auto& row : data) {
            if (static_cast<int>(row.size()) != cols)
                throw Error(Err::bad_param, "CMatrix: ragged initializer");
            entries.insert(entries.end(), row.begin(), row.end());
        }
    }

    [[nodiscard]] Complex& operator()(int i, int j) {
        return entries[static_cast<std::size_t>(i) * static_cast<std::size_t>(cols) +
                       static_cast<std::size_t>(j)];
    }
    [[nodiscard]] const Complex& operator()(int i, int j) const {
        return entries[static_cast<std::size_t>(i) * static_cast<std::size_t>(cols) +
                       static_cast<std::size_t>(j)];
    }

    [[nodiscard]] bool square() const { return rows == cols; }

    [[nodiscard]] static CMatrix zeros(int r, int c) { return CMatrix(r, c); }

    [[nodiscard]] static CMatrix identity(int n) {
        CMatrix m(n, n);
        for (int i = 0; i < n; ++i) m(i, i) = 1.0;
        return m;
    }

    /// Matrix unit E_ij: 1 at (i, j), zero elsewhere.
    [[nodiscard]] static CMatrix unit(int n, int i, int j) {
        CMatrix m(n, n);
        m(i, j) = 1.0;
        return m;
    }

    [[nodiscard]] static CMatrix diag(const CVector& d) {
        const int n = static_cast<int>(d.size());
        CMatrix m(n, n);
        for (int i = 0; i < n; ++i) m(i, i) = d[static_cast<std::size_t>(i)];
        return m;
    }
};

inline void require_square(const CMatrix& a, const char* op) {
    if (!a.square()) throw Error(Err::non_square, std::string(op) + ": matrix is not square");
}

inline void require_small(const CMatrix& a, const char* op) {
    if (a.rows > kMaxOrder || a.cols > kMaxOrder)
        throw Error(Err::unsupported_dimension,
                    std::string(op) + ": order exceeds " + std::to_string(kMaxOrder));
}

inline void require_same_shape(const CMatrix& a, const CMatrix& b, const char* op) {
    if (a.rows != b.rows || a.cols != b.cols)
        throw Error(Err::shape_mismatch, std::string(op) + ": shape mismatch");
}

[[nodiscard]] inline CMatrix operator+(const CMatrix& a, const CMatrix& b) {
    require_same_shape(a, b, "operator+");
    CMatrix r = a;
    for (std::size_t i = 0; i < r.entries.size(); ++i) r.entries[i] += b.entries[i];
    return r;
}

[[nodiscard]] inline CMatrix operator-(const CMatrix& a, const CMatrix& b) {
    require_same_shape(a, b, "operator-");
    CMatrix r = a;
    for (std::size_t i = 0; i < r.entries.size(); ++i) r.entries[i] -= b.entries[i];
    return r;
}

[[nodiscard]] inline CMatrix operator*(Complex c, const CMatrix& a) {
    CMatrix r = a;
    for (auto& x : r.entries) x *= c;
    return r;
}

[[nodiscard]] inline CMatrix operator*(const CMatrix& a, const CMatrix& b) {
    if (a.cols != b.rows) throw Error(Err::shape_mismatch, "operator*: inner dimension mismatch");
    CMatrix r(a.rows, b.cols);
    for (int i = 0; i < a.rows; ++i) {
        for (int k = 0; k < a.cols; ++k) {
            const Complex aik = a(i, k);
            if (aik == Complex(0)) continue;
            for (int j = 0; j < b.cols; ++j) r(i, j) += aik * b(k, j);
        }
    }
    return r;
}

[[nodiscard]] inline CVector operator*(const CMatrix& a, const CVector& v) {
    if (a.cols != static_cast<int>(v.size()))
        throw Error(Err::shape_mismatch, "matvec: dimension mismatch");
    CVector r(static_cast<std::size_t>(a.rows), Complex(0));
    for (int i = 0; i < a.rows; ++i) {
        Complex s = 0;
        for (int j = 0; j < a.cols; ++j) s += a(i, j) * v[static_cast<std::size_t>(j)];
        r[static_cast<std::size_t>(i)] = s;
    }
    return r;
}

[[nodiscard]] inline CMatrix transpose(const CMatrix& a) {
    CMatrix r(a.cols, a.rows);
    for (int i = 0; i < a.rows; ++i)
        for (int j = 0; j < a.cols; ++j) r(j, i) = a(i, j);
    return r;
}

[[nodiscard]] inline CMatrix conj(const CMatrix& a) {
    CMatrix r = a;
    for (auto& x : r.entries) x = std::conj(x);
    return r;
}

[[nodiscard]] inline CMatrix adjoint(const CMatrix& a) {
    CMatrix r(a.cols, a.rows);
    for (int i = 0; i < a.rows; ++i)
        for (int j = 0; j < a.cols; ++j) r(j, i) = std::conj(a(i, j));
    return r;
}

/// u v*: rank-one matrix with entry (i,j) = u_i * conj(v_j).
[[nodiscard]] inline CMatrix outer(const CVector& u, const CVector& v) {
    CMatrix r(static_cast<int>(u.size()), static_cast<int>(v.size()));
    for (int i = 0; i < r.rows; ++i)
        for (int j = 0; j < r.cols; ++j)
            r(i, j) = u[static_cast<std::size_t>(i)] * std::conj(v[static_cast<std::size_t>(j)]);
    return r;
}

[[nodiscard]] inline double frobenius_norm(const CMatrix& a) {
    double s = 0;
    for (const auto& x : a.entries) s += std::norm(x);
    return std::sqrt(s);
}

[[nodiscard]] inline double max_abs(const CMatrix& a) {
    double m = 0;
    for (const auto& x : a.entries) m = std::max(m, std::abs(x));
    return m;
}

[[nodiscard]] inline Complex trace(const CMatrix& a) {
    require_square(a, "trace");
    Complex s = 0;
    for (int i = 0; i < a.rows; ++i) s += a(i, i);
    return s;
}

/// tr(B* A) = sum_ij A_ij conj(B_ij).
[[nodiscard]] inline Complex hs_inner(const CMatrix& a, const CMatrix& b) {
    require_same_shape(a, b, "hs_inner");
    Complex s = 0;
    for (std::size_t i = 0; i < a.entries.size(); ++i)
        s += a.entries[i] * std::conj(b.entries[i]);
    return s;
}

[[nodiscard]] inline bool approx_equal(const CMatrix& a, const CMatrix& b, double tol) {
    if (a.rows != b.rows || a.cols != b.cols) return false;
    return frobenius_norm(a - b) <= tol;
}

[[nodiscard]] inline CVector column(const CMatrix& a, int j) {
    CVector v(static_cast<std::size_t>(a.rows));
    for (int i = 0; i < a.rows; ++i) v[static_cast<std::size_t>(i)] = a(i, j);
    return v;
}

[[nodiscard]] inline double unitary_defect(const CMatrix& u) {
    require_square(u, "unitary_defect");
    return frobenius_norm(adjoint(u) * u - CMatrix::identity(u.rows));
}

}  // namespace ssv
