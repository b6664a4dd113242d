#include "catch_amalgamated.hpp"
#include "corpus.hpp"
#include "mframe/structural.hpp"
#include "oracle.hpp"

using namespace mframe;
using Q = Rational;

namespace {

bool equals_dense(const Matrix<Q>& m, const oracle::Dense& d)
{
    if (m.rows() != d.size())
        return false;
    for (std::size_t i = 0; i < m.rows(); ++i)
    {
        if (m.cols() != d[i].size())
            return false;
        for (std::size_t j = 0; j < m.cols(); ++j)
            if (m(i, j) != d[i][j])
                return false;
    }
    return true;
}

Q det3(const Matrix<Q>& r)
{
    return r(0, 0) * (r(1, 1) * r(2, 2) - r(1, 2) * r(2, 1)) - r(0, 1) * (r(1, 0) * r(2, 2) - r(1, 2) * r(2, 0)) +
           r(0, 2) * (r(1, 0) * r(2, 1) - r(1, 1) * r(2, 0));
}

} // namespace

TEST_CASE("wedge products")
{
    CHECK(wedge(Vector<Q>{1, 0}, Vector<Q>{0, 1}) == Vector<Q>{1});
    CHECK(wedge(Vector<Q>{0, 1}, Vector<Q>{1, 0}) == Vector<Q>{-1});
    CHECK(wedge(Vector<Q>{2, 3}, Vector<Q>{4, 6}) == Vector<Q>{0});
    // yz, zx, xy ordering agrees with the cross product
    CHECK(wedge(Vector<Q>{1, 0, 0}, Vector<Q>{0, 1, 0}) == Vector<Q>{0, 0, 1});
    CHECK(wedge(Vector<Q>{0, 1, 0}, Vector<Q>{0, 0, 1}) == Vector<Q>{1, 0, 0});
    const Vector<Q> a{1, -2, Q(1, 3)}, b{4, 0, -1};
    CHECK(wedge(a, b) == Vector<Q>(oracle::cross({a[0], a[1], a[2]}, {b[0], b[1], b[2]})));
    const auto ab = wedge(a, b), ba = wedge(b, a);
    for (std::size_t i = 0; i < 3; ++i)
        CHECK(ab[i] == -ba[i]);
    CHECK(wedge_with(b) * a == ab);
    CHECK(wedge_with(Vector<Q>{3, 4}) * Vector<Q>{1, 0} == Vector<Q>{4});
    CHECK(bivector_dim(2) == 1);
    CHECK(force_couple_dim(3) == 6);
}

TEST_CASE("moment stalk maps move the force to the joint")
{
    const Framework f = parse_framework(std::string_view("dim 2\nv 0 0 0\nv 1 2 0\ne 0 1\n"));
    const auto m = build_moment_cosheaf<Q>(f);
    const Vector<Q> vertical{0, 0, 1};
    // moment about the head (2,0) of a unit upward force at the centre (1,0)
    CHECK(m.stalk_map(0, 1) * vertical == Vector<Q>{-1, 0, 1});
    CHECK(m.stalk_map(0, 0) * vertical == Vector<Q>{1, 0, 1});
    const Vector<Q> couple{1, 0, 0};
    CHECK(m.stalk_map(0, 0) * couple == couple);
    CHECK(m.stalk_map(0, 1) * couple == couple);
}

TEST_CASE("force cosheaf of a bar")
{
    const auto k = build_force_cosheaf<Q>(make_named("bar"));
    CHECK(k.edge_dims == std::vector<std::size_t>{1});
    CHECK(k.vertex_dims == std::vector<std::size_t>{2, 2});
    CHECK(k.stalk_map(0, 1).column(0) == Vector<Q>{1, 0});
    CHECK(k.stalk_map(0, 0).column(0) == Vector<Q>{1, 0});
}

TEST_CASE("boundaries agree with hand-built equilibrium matrices")
{
    for (const auto& entry : corpus::full())
    {
        INFO(entry.name);
        const auto seq = build_sequence<Q>(entry.framework);
        CHECK(equals_dense(assemble_boundary(*seq.force), oracle::truss_equilibrium(entry.framework)));
        CHECK(equals_dense(assemble_boundary(*seq.moment), oracle::frame_equilibrium(entry.framework)));
    }
}

TEST_CASE("homology dimensions agree with the oracle")
{
    for (const auto& entry : corpus::full())
    {
        INFO(entry.name);
        const auto seq = build_sequence<Q>(entry.framework);
        const auto want = oracle::dims(entry.framework);
        const auto hf = homology(*seq.force), hm = homology(*seq.moment), hn = homology(*seq.anchored);
        CHECK(hf.h1_dim() == want.h1f);
        CHECK(hf.h0_dim() == want.h0f);
        CHECK(hm.h1_dim() == want.h1m);
        CHECK(hm.h0_dim() == want.h0m);
        CHECK(hn.h1_dim() == want.h1n);
        CHECK(hn.h0_dim() == want.h0n);
        CHECK(rigid_body_space<Q>(entry.framework).dim() == want.rigid);
    }
}

TEST_CASE("phi and pi are cosheaf maps and compose to zero")
{
    for (const auto& entry : corpus::named())
    {
        INFO(entry.name);
        const auto seq = build_sequence<Q>(entry.framework);
        CHECK(check_cosheaf_map(seq.phi).passed);
        CHECK(check_cosheaf_map(seq.pi).passed);
        for (std::size_t v = 0; v < seq.phi.vertex_maps.size(); ++v)
            CHECK((seq.pi.vertex_maps[v] * seq.phi.vertex_maps[v]).is_zero());
        for (std::size_t e = 0; e < seq.phi.edge_maps.size(); ++e)
            CHECK((seq.pi.edge_maps[e] * seq.phi.edge_maps[e]).is_zero());

        const auto fseq = build_sequence<double>(entry.framework);
        CHECK(check_cosheaf_map(fseq.phi).passed);
        CHECK(check_cosheaf_map(fseq.pi).passed);
    }
    const auto standalone = build_anchored_cosheaf<Q>(make_named("square"));
    CHECK(homology(*standalone.cosheaf).h1_dim() == 4);
}

TEST_CASE("rigid body motions")
{
    CHECK(rigid_body_space<Q>(make_named("square")).dim() == 3);
    CHECK(rigid_body_space<Q>(make_named("box3d")).dim() == 6);
    // a bar in space cannot detect spin about its own axis
    const Framework bar3 = parse_framework(std::string_view("dim 3\nv 0 0 0 0\nv 1 1 1 1\ne 0 1\n"));
    CHECK(rigid_body_space<Q>(bar3).dim() == 5);

    for (const auto& entry : corpus::named())
    {
        const auto h0 = homology(build_force_cosheaf<Q>(entry.framework)).h0;
        CHECK(contains(h0, rigid_body_space<Q>(entry.framework)).holds);
    }
    const Framework split = parse_framework(std::string_view("dim 2\nv 0 0 0\nv 1 1 0\nv 2 5 5\nv 3 6 5\ne 0 1\ne 2 3\n"));
    CHECK_THROWS_AS(rigid_body_space<Q>(split), FrameworkError);
}

TEST_CASE("self-stresses are in equilibrium")
{
    const Framework d = make_desargues(Q(1, 2));
    const auto h = homology(build_force_cosheaf<Q>(d));
    REQUIRE(h.h1_dim() == 1);
    const auto a = oracle::truss_equilibrium(d);
    const auto& w = h.h1.vectors[0];
    for (const auto& row : a)
    {
        Q s = 0;
        for (std::size_t e = 0; e < row.size(); ++e)
            s += row[e] * w[e];
        CHECK(s == 0);
    }
}

TEST_CASE("dimensions are invariant under rigid motions")
{
    const Matrix<Q> r2 = Matrix<Q>::from_rows({{Q(3, 5), Q(-4, 5)}, {Q(4, 5), Q(3, 5)}});
    for (const auto& entry : corpus::full())
    {
        if (entry.framework.dim() != 2)
            continue;
        INFO(entry.name);
        const auto base = oracle::dims(entry.framework);
        const auto seq = build_sequence<Q>(transform(entry.framework, r2, Point{Q(7, 3), -1}));
        CHECK(homology(*seq.force).h1_dim() == base.h1f);
        CHECK(homology(*seq.moment).h1_dim() == base.h1m);
        CHECK(homology(*seq.anchored).h1_dim() == base.h1n);
    }

    const Matrix<Q> r3 = Matrix<Q>::from_rows({{Q(1, 9), Q(-4, 9), Q(8, 9)},
                                               {Q(8, 9), Q(4, 9), Q(1, 9)},
                                               {Q(-4, 9), Q(7, 9), Q(4, 9)}});
    REQUIRE(r3.transpose() * r3 == Matrix<Q>::identity(3));
    REQUIRE(det3(r3) == 1);
    for (const auto& entry : corpus::full())
    {
        if (entry.framework.dim() != 3)
            continue;
        INFO(entry.name);
        const auto base = oracle::dims(entry.framework);
        const auto seq = build_sequence<Q>(transform(entry.framework, r3, Point{1, Q(-1, 2), 3}));
        CHECK(homology(*seq.force).h0_dim() == base.h0f);
        CHECK(homology(*seq.moment).h1_dim() == base.h1m);
        CHECK(homology(*seq.anchored).h1_dim() == base.h1n);
    }
}

TEST_CASE("moment homology of connected frames in space")
{
    for (const auto& entry : corpus::full())
    {
        const Framework& f = entry.framework;
        if (f.dim() != 3)
            continue;
        INFO(entry.name);
        const auto h = homology(build_moment_cosheaf<Q>(f));
        CHECK(h.h0_dim() == 6);
        CHECK(h.h1_dim() == 6 * (f.edge_count() - f.vertex_count() + 1));
    }
}
