/**
 * Dense linear-algebra kernel: rank, kernels, complements, solves and a small
 * subspace toolkit.
 *
 * Exact mode (Rational) uses Gaussian elimination with deterministic pivoting:
 * the first nonzero entry in column order is always chosen, so every basis
 * returned here is reproducible bit-for-bit. Float mode (double) goes through
 * a singular value decomposition with the relative cutoff kRankTolerance.
 */
#ifndef MFRAME_LINALG_HPP
#define MFRAME_LINALG_HPP

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

#include "mframe/matrix.hpp"

namespace mframe {

class LinalgError : public std::runtime_error
{
public:
    using std::runtime_error::runtime_error;
};

/// A list of linearly independent vectors spanning a subspace of T^ambient_dim.
template <Scalar T>
struct SubspaceBasis
{
    std::size_t ambient_dim = 0;
    std::vector<Vector<T>> vectors;

    std::size_t dim() const { return vectors.size(); }
    bool empty() const { return vectors.empty(); }

    /// Basis vectors as the columns of an ambient_dim x dim() matrix.
    Matrix<T> as_matrix() const { return Matrix<T>::from_columns(vectors, ambient_dim); }

    static SubspaceBasis from_matrix_columns(const Matrix<T>& m)
    {
        return SubspaceBasis{m.rows(), m.columns()};
    }
};

/// Reduced row echelon form together with its pivot columns.
struct Echelon
{
    Matrix<Rational> reduced;
    std::vector<std::size_t> pivots;
};

Echelon reduced_row_echelon(const Matrix<Rational>& m);

/// Fraction-free (Bareiss) elimination after clearing denominators row by row.
std::size_t rank_fraction_free(const Matrix<Rational>& m);

/// Singular values in decreasing order.
std::vector<double> singular_values(const Matrix<double>& m);

/// In float mode singular values at or below kRankTolerance * max(sigma_max, scale)
/// count as zero; pass the magnitude of the inputs as `scale` when the matrix may be
/// pure round-off. Exact mode ignores `scale`.
template <Scalar T>
std::size_t rank(const Matrix<T>& m, double scale = 0.0);

/// Right nullspace. Exact bases come from the reduced echelon form with entries
/// cleared to integers of gcd one; float bases are orthonormal.
template <Scalar T>
SubspaceBasis<T> kernel_basis(const Matrix<T>& m, double scale = 0.0);

/// Orthogonal complement of the column space; a basis of the left nullspace.
template <Scalar T>
SubspaceBasis<T> image_complement_basis(const Matrix<T>& m);

/// Basis of the column space. Exact mode returns the pivot columns of `m`
/// itself; float mode returns leading left singular vectors.
template <Scalar T>
SubspaceBasis<T> image_basis(const Matrix<T>& m, double scale = 0.0);

/// Some x with m x = b. Throws LinalgError if b is outside the column space.
template <Scalar T>
Vector<T> solve_in_image(const Matrix<T>& m, const Vector<T>& b);

/// Solve m X = b column by column.
template <Scalar T>
Matrix<T> solve_in_image(const Matrix<T>& m, const Matrix<T>& b);

template <Scalar T>
SubspaceBasis<T> intersect(const SubspaceBasis<T>& a, const SubspaceBasis<T>& b);

/// Orthogonal projection of v onto span(s).
template <Scalar T>
Vector<T> project_onto(const Vector<T>& v, const SubspaceBasis<T>& s);

/// Coefficients c with s.as_matrix() c = the orthogonal projection of v onto span(s).
template <Scalar T>
Vector<T> projection_coordinates(const Vector<T>& v, const SubspaceBasis<T>& s);

/// Orthogonal complement of `sub` inside `ambient_sub`. Throws if sub is not contained.
template <Scalar T>
SubspaceBasis<T> complement_within(const SubspaceBasis<T>& sub, const SubspaceBasis<T>& ambient_sub);

/// Result of a subspace comparison with the evidence behind it.
struct SubspaceVerdict
{
    bool holds = false;
    /// 0 when exact comparison succeeds; otherwise a rank deficit (exact) or
    /// the sine of the largest principal angle (float).
    double residual = 0.0;
};

/// span(inner) is contained in span(outer).
template <Scalar T>
SubspaceVerdict contains(const SubspaceBasis<T>& outer, const SubspaceBasis<T>& inner);

/// span(a) == span(b), by mutual containment.
template <Scalar T>
SubspaceVerdict same_subspace(const SubspaceBasis<T>& a, const SubspaceBasis<T>& b);

/// Clear denominators and divide out the content so entries are coprime integers.
Vector<Rational> primitive_integer_vector(const Vector<Rational>& v);

} // namespace mframe

#endif
