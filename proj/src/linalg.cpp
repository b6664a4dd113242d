#include "mframe/linalg.hpp"

#include <algorithm>
#include <cmath>

#include <Eigen/Dense>

namespace mframe {

namespace {

struct Svd
{
    Eigen::MatrixXd u;
    Eigen::VectorXd sigma;
    Eigen::MatrixXd v;
    std::size_t rank = 0;
};

Eigen::MatrixXd to_eigen(const Matrix<double>& m)
{
    Eigen::MatrixXd e(m.rows(), m.cols());
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j)
            e(i, j) = m(i, j);
    return e;
}

Vector<double> eigen_column(const Eigen::MatrixXd& e, Eigen::Index j)
{
    Vector<double> v(static_cast<std::size_t>(e.rows()));
    for (Eigen::Index i = 0; i < e.rows(); ++i)
        v[i] = e(i, j);
    return v;
}

Svd full_svd(const Matrix<double>& m, double scale = 0.0)
{
    Svd s;
    const auto rows = static_cast<Eigen::Index>(m.rows());
    const auto cols = static_cast<Eigen::Index>(m.cols());
    if (rows == 0 || cols == 0)
    {
        s.u = Eigen::MatrixXd::Identity(rows, rows);
        s.v = Eigen::MatrixXd::Identity(cols, cols);
        s.sigma = Eigen::VectorXd(0);
        return s;
    }
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(to_eigen(m), Eigen::ComputeFullU | Eigen::ComputeFullV);
    s.u = svd.matrixU();
    s.v = svd.matrixV();
    s.sigma = svd.singularValues();
    const double reference = std::max(s.sigma.size() > 0 ? s.sigma(0) : 0.0, scale);
    if (reference > 0.0)
        for (Eigen::Index i = 0; i < s.sigma.size(); ++i)
            if (s.sigma(i) > kRankTolerance * reference)
                ++s.rank;
    return s;
}

/// Minimum-norm least-squares solution; no consistency check.
Vector<double> pseudo_solve(const Svd& s, const Vector<double>& b)
{
    Eigen::VectorXd rhs(static_cast<Eigen::Index>(b.size()));
    for (std::size_t i = 0; i < b.size(); ++i)
        rhs(static_cast<Eigen::Index>(i)) = b[i];
    Eigen::VectorXd x = Eigen::VectorXd::Zero(s.v.rows());
    for (std::size_t k = 0; k < s.rank; ++k)
    {
        const auto kk = static_cast<Eigen::Index>(k);
        x += (s.u.col(kk).dot(rhs) / s.sigma(kk)) * s.v.col(kk);
    }
    return eigen_column(x, 0);
}

std::vector<Vector<Rational>> make_primitive(std::vector<Vector<Rational>> vs)
{
    for (auto& v : vs)
        v = primitive_integer_vector(v);
    return vs;
}

Matrix<double> orthonormal_columns(const SubspaceBasis<double>& s)
{
    return image_basis(s.as_matrix()).as_matrix();
}

} // namespace

Vector<Rational> primitive_integer_vector(const Vector<Rational>& v)
{
    Integer den_lcm = 1;
    for (const auto& x : v)
        if (x != 0)
            den_lcm = boost::multiprecision::lcm(den_lcm, Integer(denominator(x)));
    Integer content = 0;
    std::vector<Integer> ints;
    ints.reserve(v.size());
    for (const auto& x : v)
    {
        Integer n = numerator(x) * (den_lcm / denominator(x));
        content = boost::multiprecision::gcd(content, n);
        ints.push_back(std::move(n));
    }
    Vector<Rational> out(v.size());
    if (content == 0)
        return out;
    for (std::size_t i = 0; i < v.size(); ++i)
        out[i] = Rational(Integer(ints[i] / content));
    return out;
}

Echelon reduced_row_echelon(const Matrix<Rational>& m)
{
    Echelon e{m, {}};
    Matrix<Rational>& a = e.reduced;
    std::size_t r = 0;
    for (std::size_t c = 0; c < a.cols() && r < a.rows(); ++c)
    {
        std::size_t p = r;
        while (p < a.rows() && a(p, c) == 0)
            ++p;
        if (p == a.rows())
            continue;
        a.swap_rows(p, r);
        const Rational pivot = a(r, c);
        for (std::size_t j = c; j < a.cols(); ++j)
            a(r, j) /= pivot;
        for (std::size_t i = 0; i < a.rows(); ++i)
        {
            if (i == r || a(i, c) == 0)
                continue;
            const Rational factor = a(i, c);
            for (std::size_t j = c; j < a.cols(); ++j)
                if (a(r, j) != 0)
                    a(i, j) -= factor * a(r, j);
        }
        e.pivots.push_back(c);
        ++r;
    }
    return e;
}

std::size_t rank_fraction_free(const Matrix<Rational>& m)
{
    const std::size_t rows = m.rows();
    const std::size_t cols = m.cols();
    std::vector<std::vector<Integer>> a(rows, std::vector<Integer>(cols));
    for (std::size_t i = 0; i < rows; ++i)
    {
        Integer den_lcm = 1;
        for (std::size_t j = 0; j < cols; ++j)
            if (m(i, j) != 0)
                den_lcm = boost::multiprecision::lcm(den_lcm, Integer(denominator(m(i, j))));
        for (std::size_t j = 0; j < cols; ++j)
            a[i][j] = numerator(m(i, j)) * (den_lcm / denominator(m(i, j)));
    }

    Integer previous = 1;
    std::size_t r = 0;
    for (std::size_t c = 0; c < cols && r < rows; ++c)
    {
        std::size_t p = r;
        while (p < rows && a[p][c] == 0)
            ++p;
        if (p == rows)
            continue;
        std::swap(a[p], a[r]);
        for (std::size_t i = r + 1; i < rows; ++i)
        {
            for (std::size_t j = c + 1; j < cols; ++j)
                a[i][j] = (a[r][c] * a[i][j] - a[i][c] * a[r][j]) / previous;
            a[i][c] = 0;
        }
        previous = a[r][c];
        ++r;
    }
    return r;
}

std::vector<double> singular_values(const Matrix<double>& m)
{
    const Svd s = full_svd(m);
    return {s.sigma.data(), s.sigma.data() + s.sigma.size()};
}

template <Scalar T>
std::size_t rank(const Matrix<T>& m, double scale)
{
    if constexpr (is_exact_v<T>)
        return rank_fraction_free(m);
    else
        return full_svd(m, scale).rank;
}

template <Scalar T>
SubspaceBasis<T> kernel_basis(const Matrix<T>& m, double scale)
{
    SubspaceBasis<T> out{m.cols(), {}};
    if constexpr (is_exact_v<T>)
    {
        const Echelon e = reduced_row_echelon(m);
        std::vector<bool> is_pivot(m.cols(), false);
        for (auto p : e.pivots)
            is_pivot[p] = true;
        for (std::size_t f = 0; f < m.cols(); ++f)
        {
            if (is_pivot[f])
                continue;
            Vector<Rational> v(m.cols());
            v[f] = 1;
            for (std::size_t k = 0; k < e.pivots.size(); ++k)
                v[e.pivots[k]] = -e.reduced(k, f);
            out.vectors.push_back(std::move(v));
        }
        out.vectors = make_primitive(std::move(out.vectors));
    }
    else
    {
        const Svd s = full_svd(m, scale);
        for (auto j = static_cast<Eigen::Index>(s.rank); j < s.v.cols(); ++j)
            out.vectors.push_back(eigen_column(s.v, j));
    }
    return out;
}

template <Scalar T>
SubspaceBasis<T> image_complement_basis(const Matrix<T>& m)
{
    if constexpr (is_exact_v<T>)
        return kernel_basis(m.transpose());
    else
    {
        SubspaceBasis<double> out{m.rows(), {}};
        const Svd s = full_svd(m);
        for (auto j = static_cast<Eigen::Index>(s.rank); j < s.u.cols(); ++j)
            out.vectors.push_back(eigen_column(s.u, j));
        return out;
    }
}

template <Scalar T>
SubspaceBasis<T> image_basis(const Matrix<T>& m, double scale)
{
    SubspaceBasis<T> out{m.rows(), {}};
    if constexpr (is_exact_v<T>)
    {
        for (auto p : reduced_row_echelon(m).pivots)
            out.vectors.push_back(m.column(p));
    }
    else
    {
        const Svd s = full_svd(m, scale);
        for (std::size_t j = 0; j < s.rank; ++j)
            out.vectors.push_back(eigen_column(s.u, static_cast<Eigen::Index>(j)));
    }
    return out;
}

template <Scalar T>
Matrix<T> solve_in_image(const Matrix<T>& m, const Matrix<T>& b)
{
    if (b.rows() != m.rows())
        throw LinalgError("solve_in_image: right-hand side has wrong length");
    Matrix<T> x(m.cols(), b.cols());
    if constexpr (is_exact_v<T>)
    {
        const Echelon e = reduced_row_echelon(m.hstack(b));
        for (std::size_t k = 0; k < e.pivots.size(); ++k)
        {
            const std::size_t p = e.pivots[k];
            if (p >= m.cols())
                throw LinalgError("solve_in_image: right-hand side is not in the column space");
            for (std::size_t j = 0; j < b.cols(); ++j)
                x(p, j) = e.reduced(k, m.cols() + j);
        }
    }
    else
    {
        const Svd s = full_svd(m);
        const double sigma_max = s.sigma.size() > 0 ? s.sigma(0) : 0.0;
        for (std::size_t j = 0; j < b.cols(); ++j)
        {
            const Vector<double> rhs = b.column(j);
            const Vector<double> sol = pseudo_solve(s, rhs);
            const double residual = norm(subtract(m * sol, rhs));
            const double scale = sigma_max * norm(sol) + norm(rhs);
            if (residual > 1e-8 * scale + 1e-300)
                throw LinalgError("solve_in_image: right-hand side is not in the column space (residual " +
                                  format_short(residual) + ")");
            for (std::size_t i = 0; i < sol.size(); ++i)
                x(i, j) = sol[i];
        }
    }
    return x;
}

template <Scalar T>
Vector<T> solve_in_image(const Matrix<T>& m, const Vector<T>& b)
{
    return solve_in_image(m, Matrix<T>::from_columns({b}, b.size())).column(0);
}

template <Scalar T>
SubspaceBasis<T> intersect(const SubspaceBasis<T>& a, const SubspaceBasis<T>& b)
{
    if (a.ambient_dim != b.ambient_dim)
        throw LinalgError("intersect: ambient dimension mismatch");
    SubspaceBasis<T> out{a.ambient_dim, {}};
    if (a.empty() || b.empty())
        return out;
    Matrix<T> neg_b = b.as_matrix();
    for (std::size_t i = 0; i < neg_b.rows(); ++i)
        for (std::size_t j = 0; j < neg_b.cols(); ++j)
            neg_b(i, j) = -neg_b(i, j);
    const Matrix<T> am = a.as_matrix();
    const SubspaceBasis<T> k = kernel_basis(am.hstack(neg_b));
    std::vector<Vector<T>> pieces;
    for (const auto& kv : k.vectors)
    {
        Vector<T> coeffs(kv.begin(), kv.begin() + static_cast<std::ptrdiff_t>(a.dim()));
        pieces.push_back(am * coeffs);
    }
    if constexpr (is_exact_v<T>)
        out.vectors = make_primitive(std::move(pieces));
    else if (!pieces.empty())
        out = image_basis(Matrix<T>::from_columns(pieces, a.ambient_dim));
    return out;
}

template <Scalar T>
Vector<T> projection_coordinates(const Vector<T>& v, const SubspaceBasis<T>& s)
{
    if (v.size() != s.ambient_dim)
        throw LinalgError("project_onto: dimension mismatch");
    if (s.empty())
        return {};
    const Matrix<T> basis = s.as_matrix();
    if constexpr (is_exact_v<T>)
    {
        const Matrix<T> bt = basis.transpose();
        return solve_in_image(bt * basis, bt * v);
    }
    else
        return pseudo_solve(full_svd(basis), v);
}

template <Scalar T>
Vector<T> project_onto(const Vector<T>& v, const SubspaceBasis<T>& s)
{
    if (s.empty())
    {
        if (v.size() != s.ambient_dim)
            throw LinalgError("project_onto: dimension mismatch");
        return Vector<T>(v.size(), T(0));
    }
    return s.as_matrix() * projection_coordinates(v, s);
}

template <Scalar T>
SubspaceVerdict contains(const SubspaceBasis<T>& outer, const SubspaceBasis<T>& inner)
{
    if (outer.ambient_dim != inner.ambient_dim)
        throw LinalgError("contains: ambient dimension mismatch");
    if (inner.empty())
        return {true, 0.0};
    if constexpr (is_exact_v<T>)
    {
        const std::size_t base = rank(outer.as_matrix());
        const std::size_t joint = rank(outer.as_matrix().hstack(inner.as_matrix()));
        return {joint == base, static_cast<double>(joint - base)};
    }
    else
    {
        const Matrix<double> qi = orthonormal_columns(inner);
        const Matrix<double> qo = outer.empty() ? Matrix<double>(outer.ambient_dim, 0) : orthonormal_columns(outer);
        // Residual of the inner frame after removing its outer component.
        const Matrix<double> resid = qi - qo * (qo.transpose() * qi);
        const auto sv = singular_values(resid);
        const double sine = sv.empty() ? 0.0 : sv.front();
        return {sine <= kAngleTolerance, sine};
    }
}

template <Scalar T>
SubspaceVerdict same_subspace(const SubspaceBasis<T>& a, const SubspaceBasis<T>& b)
{
    if (a.dim() != b.dim())
        return {false, std::abs(static_cast<double>(a.dim()) - static_cast<double>(b.dim()))};
    const SubspaceVerdict ab = contains(a, b);
    const SubspaceVerdict ba = contains(b, a);
    return {ab.holds && ba.holds, std::max(ab.residual, ba.residual)};
}

template <Scalar T>
SubspaceBasis<T> complement_within(const SubspaceBasis<T>& sub, const SubspaceBasis<T>& ambient_sub)
{
    if (sub.ambient_dim != ambient_sub.ambient_dim)
        throw LinalgError("complement_within: ambient dimension mismatch");
    if (!contains(ambient_sub, sub).holds)
        throw LinalgError("complement_within: subspace is not contained in the ambient subspace");
    SubspaceBasis<T> out{ambient_sub.ambient_dim, {}};
    if (ambient_sub.empty())
        return out;
    const Matrix<T> amb = ambient_sub.as_matrix();
    const Matrix<T> gram = sub.empty() ? Matrix<T>(0, amb.cols()) : sub.as_matrix().transpose() * amb;
    const SubspaceBasis<T> k = kernel_basis(gram);
    std::vector<Vector<T>> pieces;
    for (const auto& kv : k.vectors)
        pieces.push_back(amb * kv);
    if constexpr (is_exact_v<T>)
        out.vectors = make_primitive(std::move(pieces));
    else if (!pieces.empty())
        out = image_basis(Matrix<T>::from_columns(pieces, amb.rows()));
    return out;
}

#define MFRAME_INSTANTIATE_LINALG(T)                                                              \
    template std::size_t rank<T>(const Matrix<T>&, double);                                             \
    template SubspaceBasis<T> kernel_basis<T>(const Matrix<T>&, double);                                \
    template SubspaceBasis<T> image_complement_basis<T>(const Matrix<T>&);                        \
    template SubspaceBasis<T> image_basis<T>(const Matrix<T>&, double);                                 \
    template Vector<T> solve_in_image<T>(const Matrix<T>&, const Vector<T>&);                     \
    template Matrix<T> solve_in_image<T>(const Matrix<T>&, const Matrix<T>&);                     \
    template SubspaceBasis<T> intersect<T>(const SubspaceBasis<T>&, const SubspaceBasis<T>&);     \
    template Vector<T> project_onto<T>(const Vector<T>&, const SubspaceBasis<T>&);                \
    template Vector<T> projection_coordinates<T>(const Vector<T>&, const SubspaceBasis<T>&);      \
    template SubspaceBasis<T> complement_within<T>(const SubspaceBasis<T>&, const SubspaceBasis<T>&); \
    template SubspaceVerdict contains<T>(const SubspaceBasis<T>&, const SubspaceBasis<T>&);       \
    template SubspaceVerdict same_subspace<T>(const SubspaceBasis<T>&, const SubspaceBasis<T>&);

MFRAME_INSTANTIATE_LINALG(Rational)
MFRAME_INSTANTIATE_LINALG(double)

#undef MFRAME_INSTANTIATE_LINALG

} // namespace mframe
