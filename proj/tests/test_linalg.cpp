#include <random>

#include "catch_amalgamated.hpp"
#include "mframe/linalg.hpp"
#include "mframe/structural.hpp"
#include "oracle.hpp"

using namespace mframe;
using Q = Rational;

namespace {

Matrix<Q> random_int_matrix(std::mt19937_64& rng, std::size_t rows, std::size_t cols, int lo, int hi)
{
    std::uniform_int_distribution<int> dist(lo, hi);
    Matrix<Q> m(rows, cols);
    for (std::size_t i = 0; i < rows; ++i)
        for (std::size_t j = 0; j < cols; ++j)
            m(i, j) = dist(rng);
    return m;
}

/// Random matrix of prescribed rank (product of two random factors), so exact and float paths meet rank deficiency.
Matrix<Q> random_low_rank(std::mt19937_64& rng, std::size_t rows, std::size_t cols, std::size_t r)
{
    return random_int_matrix(rng, rows, r, -3, 3) * random_int_matrix(rng, r, cols, -3, 3);
}

oracle::Dense to_dense(const Matrix<Q>& m)
{
    oracle::Dense d(m.rows(), std::vector<Q>(m.cols()));
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j)
            d[i][j] = m(i, j);
    return d;
}

} // namespace

TEST_CASE("rank of small matrices")
{
    CHECK(rank(Matrix<Q>::identity(3)) == 3);
    CHECK(rank(Matrix<Q>::from_rows({{1, 2}, {2, 4}})) == 1);
    CHECK(rank(Matrix<double>::from_rows({{1, 2}, {2, 4}})) == 1);
    CHECK(rank(Matrix<Q>(0, 4)) == 0);
    CHECK(rank(Matrix<Q>(3, 0)) == 0);
    CHECK(rank(Matrix<double>(2, 5)) == 0);
}

TEST_CASE("force boundary of the Desargues framework has rank 8")
{
    const Framework f = make_desargues(Q(1, 2));
    const Matrix<Q> d = assemble_boundary(build_force_cosheaf<Q>(f));
    CHECK(oracle::rank(to_dense(d)) == 8);
    CHECK(rank(d) == 8);
    CHECK(rank(assemble_boundary(build_force_cosheaf<double>(f))) == 8);
}

TEST_CASE("kernel bases")
{
    SECTION("zero matrix")
    {
        const auto k = kernel_basis(Matrix<Q>(2, 3));
        CHECK(k.dim() == 3);
        CHECK(k.ambient_dim == 3);
    }
    SECTION("moment boundary of the square")
    {
        const auto k = kernel_basis(assemble_boundary(build_moment_cosheaf<Q>(make_named("square"))));
        CHECK(k.dim() == 3);
    }
    SECTION("anchored boundary of Desargues")
    {
        const auto seq = build_sequence<Q>(make_desargues(Q(1, 2)));
        CHECK(kernel_basis(assemble_boundary(*seq.anchored)).dim() == 12);
    }
    SECTION("exact kernel vectors are primitive integer vectors")
    {
        const auto k = kernel_basis(Matrix<Q>::from_rows({{Q(1, 2), Q(1, 3), 1}, {1, Q(2, 3), 2}}));
        REQUIRE(k.dim() == 2);
        for (const auto& v : k.vectors)
        {
            Integer g = 0;
            for (const auto& x : v)
            {
                CHECK(denominator(x) == 1);
                g = boost::multiprecision::gcd(g, Integer(numerator(x)));
            }
            CHECK(g == 1);
        }
    }
}

TEST_CASE("image complements")
{
    CHECK(image_complement_basis(Matrix<Q>::identity(2)).empty());
    CHECK(image_complement_basis(Matrix<double>::identity(2)).empty());

    const auto seq = build_sequence<Q>(make_named("square"));
    CHECK(image_complement_basis(assemble_boundary(*seq.anchored)).empty());

    const Matrix<Q> bar = assemble_boundary(build_force_cosheaf<Q>(make_named("bar")));
    CHECK(bar.rows() == 4);
    CHECK(bar.cols() == 1);
    // independent check through the singular values of the float copy
    const auto sv = singular_values(bar.cast<double>());
    REQUIRE(sv.size() == 1);
    CHECK(sv[0] > 0.5);
    CHECK(image_complement_basis(bar).dim() == 3);
    const auto c = image_complement_basis(bar);
    for (const auto& v : c.vectors)
        CHECK(dot(v, bar.column(0)) == 0);
}

TEST_CASE("image bases")
{
    const Matrix<Q> m = Matrix<Q>::from_rows({{1, 2, 3}, {2, 4, 6}, {0, 0, 1}});
    const auto im = image_basis(m);
    CHECK(im.dim() == 2);
    // pivot columns of m itself
    CHECK(im.vectors[0] == m.column(0));
    CHECK(im.vectors[1] == m.column(2));
    CHECK(contains(im, SubspaceBasis<Q>::from_matrix_columns(m)).holds);
    const auto fim = image_basis(m.cast<double>());
    CHECK(fim.dim() == 2);
    CHECK(contains(fim, SubspaceBasis<double>::from_matrix_columns(m.cast<double>())).holds);
}

TEST_CASE("solve_in_image")
{
    const Vector<Q> b{3, -1, Q(2, 7)};
    CHECK(solve_in_image(Matrix<Q>::identity(3), b) == b);

    const Matrix<Q> col = Matrix<Q>::from_rows({{1}, {2}});
    CHECK(solve_in_image(col, Vector<Q>{2, 4}) == Vector<Q>{2});
    CHECK_THROWS_AS(solve_in_image(col, Vector<Q>{2, 5}), LinalgError);

    const Matrix<double> fcol = Matrix<double>::from_rows({{1}, {2}});
    const auto x = solve_in_image(fcol, Vector<double>{2, 4});
    REQUIRE(x.size() == 1);
    CHECK(x[0] == Catch::Approx(2.0));
    CHECK_THROWS_AS(solve_in_image(fcol, Vector<double>{2, 5}), LinalgError);
}

TEST_CASE("subspace toolkit")
{
    const SubspaceBasis<Q> xy{3, {{1, 0, 0}, {0, 1, 0}}};
    const SubspaceBasis<Q> xz{3, {{1, 0, 0}, {0, 0, 1}}};
    const auto meet = intersect(xy, xz);
    REQUIRE(meet.dim() == 1);
    CHECK(same_subspace(meet, SubspaceBasis<Q>{3, {{1, 0, 0}}}).holds);

    CHECK(project_onto(Vector<Q>{1, 1}, SubspaceBasis<Q>{2, {{1, 0}}}) == Vector<Q>{1, 0});
    const auto p = project_onto(Vector<double>{1, 1}, SubspaceBasis<double>{2, {{1, 0}}});
    CHECK(p[0] == Catch::Approx(1.0));
    CHECK(std::abs(p[1]) < 1e-15);

    const auto plane_in_space = complement_within(SubspaceBasis<Q>{3, {{1, 1, 0}}}, xy);
    REQUIRE(plane_in_space.dim() == 1);
    CHECK(dot(plane_in_space.vectors[0], Vector<Q>{1, 1, 0}) == 0);

    CHECK_THROWS_AS(complement_within(SubspaceBasis<Q>{3, {{0, 0, 1}}}, xy), LinalgError);
    CHECK_THROWS_AS(intersect(xy, SubspaceBasis<Q>{2, {{1, 0}}}), LinalgError);
    CHECK_THROWS_AS(project_onto(Vector<Q>{1, 1, 1}, SubspaceBasis<Q>{2, {{1, 0}}}), LinalgError);
}

TEST_CASE("mechanisms of the square form a line")
{
    const Framework f = make_named("square");
    const auto h = homology(build_force_cosheaf<Q>(f));
    CHECK(complement_within(rigid_body_space<Q>(f), h.h0).dim() == 1);
}

TEST_CASE("subspace comparison residuals")
{
    const SubspaceBasis<Q> a{3, {{1, 0, 0}, {0, 1, 0}}};
    const SubspaceBasis<Q> b{3, {{1, 1, 0}, {1, -1, 0}}};
    const SubspaceBasis<Q> c{3, {{1, 0, 0}, {0, 0, 1}}};
    CHECK(same_subspace(a, b).holds);
    CHECK(same_subspace(a, b).residual == 0.0);
    const auto bad = same_subspace(a, c);
    CHECK_FALSE(bad.holds);
    CHECK(bad.residual > 0.0);

    const SubspaceBasis<double> fa{3, {{1, 0, 0}, {0, 1, 0}}};
    const SubspaceBasis<double> fc{3, {{1, 0, 0}, {0, 0.6, 0.8}}};
    const auto angle = same_subspace(fa, fc);
    CHECK_FALSE(angle.holds);
    CHECK(angle.residual == Catch::Approx(0.8));
    CHECK(contains(fa, SubspaceBasis<double>{3, {{2, 3, 0}}}).holds);
}

TEST_CASE("rank properties on random integer matrices")
{
    std::mt19937_64 rng(20240611);
    std::uniform_int_distribution<std::size_t> size(1, 20), wide(1, 30), pick(0, 2);
    for (int trial = 0; trial < 100; ++trial)
    {
        const std::size_t rows = size(rng), cols = wide(rng);
        Matrix<Q> m;
        switch (pick(rng))
        {
        case 0:
            m = random_int_matrix(rng, rows, cols, -10, 10);
            break;
        case 1:
            m = random_low_rank(rng, rows, cols, std::min(rows, cols) / 2 + 1);
            break;
        default:
            m = random_int_matrix(rng, rows, cols, -1, 1);
            break;
        }
        const std::size_t r = rank(m);
        INFO("trial " << trial << " shape " << rows << "x" << cols);
        CHECK(r == oracle::rank(to_dense(m)));
        CHECK(r == rank_fraction_free(m));
        CHECK(r == reduced_row_echelon(m).pivots.size());
        CHECK(r == rank(m.transpose()));
        CHECK(r == rank(m.cast<double>()));

        const auto k = kernel_basis(m);
        const auto c = image_complement_basis(m);
        CHECK(k.dim() + r == cols);
        CHECK(c.dim() + r == rows);
        CHECK(image_basis(m).dim() == r);
        for (const auto& v : k.vectors)
            CHECK(is_zero(m * v));

        const Matrix<double> fm = m.cast<double>();
        const auto fk = kernel_basis(fm);
        CHECK(fk.dim() + r == cols);
        for (const auto& v : fk.vectors)
            CHECK(norm(fm * v) <= kRankTolerance * fm.norm() * norm(v));
        CHECK(same_subspace(k.empty() ? SubspaceBasis<double>{cols, {}} : SubspaceBasis<double>::from_matrix_columns(
                                                                                  k.as_matrix().cast<double>()),
                            fk)
                  .holds);
    }
}

TEST_CASE("primitive integer vectors")
{
    CHECK(primitive_integer_vector({Q(1, 2), Q(-1, 3), 0}) == Vector<Q>{3, -2, 0});
    CHECK(primitive_integer_vector({0, 0}) == Vector<Q>{0, 0});
    CHECK(primitive_integer_vector({4, 6}) == Vector<Q>{2, 3});
}
