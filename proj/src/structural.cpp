#include "mframe/structural.hpp"

namespace mframe {

namespace {

std::vector<std::string> couple_labels(int n)
{
    if (n == 2)
        return {"M", "Fx", "Fy"};
    return {"Myz", "Mzx", "Mxy", "Fx", "Fy", "Fz"};
}

std::vector<std::string> force_labels(int n)
{
    if (n == 2)
        return {"Fx", "Fy"};
    return {"Fx", "Fy", "Fz"};
}

std::vector<std::string> moment_labels(int n)
{
    if (n == 2)
        return {"M"};
    return {"Myz", "Mzx", "Mxy"};
}

std::vector<std::string> anchored_edge_labels(int n)
{
    if (n == 2)
        return {"M", "V"};
    return {"Myz", "Mzx", "Mxy", "V1", "V2"};
}

/// Force-couple transfer from the edge centre to a point at offset `lever`.
template <Scalar T>
Matrix<T> couple_transfer(const Vector<T>& lever)
{
    const int n = static_cast<int>(lever.size());
    const std::size_t b = bivector_dim(n);
    Matrix<T> m = Matrix<T>::identity(force_couple_dim(n));
    m.set_block(0, b, wedge_with(lever));
    return m;
}

template <Scalar T>
Vector<T> negated(Vector<T> v)
{
    for (auto& x : v)
        x = -x;
    return v;
}

} // namespace

template <Scalar T>
Wedge2<T> wedge(const Vector<T>& a, const Vector<T>& b)
{
    if (a.size() != b.size() || (a.size() != 2 && a.size() != 3))
        throw std::invalid_argument("wedge: vectors must share dimension 2 or 3");
    if (a.size() == 2)
        return {a[0] * b[1] - a[1] * b[0]};
    return {a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], a[0] * b[1] - a[1] * b[0]};
}

template <Scalar T>
Matrix<T> wedge_with(const Vector<T>& lever)
{
    const auto& l = lever;
    if (l.size() == 2)
        return Matrix<T>::from_rows({{l[1], T(-l[0])}});
    if (l.size() == 3)
        return Matrix<T>::from_rows({{T(0), l[2], T(-l[1])}, {T(-l[2]), T(0), l[0]}, {l[1], T(-l[0]), T(0)}});
    throw std::invalid_argument("wedge_with: lever must have dimension 2 or 3");
}

template <Scalar T>
Cosheaf<T> build_force_cosheaf(const Framework& f)
{
    const int n = f.dim();
    Cosheaf<T> k;
    k.base = f.graph();
    k.vertex_dims.assign(f.vertex_count(), static_cast<std::size_t>(n));
    k.vertex_labels.assign(f.vertex_count(), force_labels(n));
    for (std::size_t e = 0; e < f.edge_count(); ++e)
    {
        const auto g = f.geometry<T>(e);
        const Matrix<T> column = Matrix<T>::from_columns({g.direction}, g.direction.size());
        k.edge_dims.push_back(1);
        k.edge_labels.push_back({"t"});
        k.tail_maps.push_back(column);
        k.head_maps.push_back(column);
    }
    k.validate();
    return k;
}

template <Scalar T>
Cosheaf<T> build_moment_cosheaf(const Framework& f)
{
    const int n = f.dim();
    const std::size_t d = force_couple_dim(n);
    Cosheaf<T> k;
    k.base = f.graph();
    k.vertex_dims.assign(f.vertex_count(), d);
    k.vertex_labels.assign(f.vertex_count(), couple_labels(n));
    for (std::size_t e = 0; e < f.edge_count(); ++e)
    {
        const auto g = f.geometry<T>(e);
        k.edge_dims.push_back(d);
        k.edge_labels.push_back(couple_labels(n));
        k.head_maps.push_back(couple_transfer(g.half_lever));
        k.tail_maps.push_back(couple_transfer(negated(g.half_lever)));
    }
    k.validate();
    return k;
}

template <Scalar T>
CosheafMap<T> build_phi(const Framework& f)
{
    const int n = f.dim();
    const std::size_t b = bivector_dim(n);
    const std::size_t d = force_couple_dim(n);
    CosheafMap<T> phi;
    phi.source = std::make_shared<const Cosheaf<T>>(build_force_cosheaf<T>(f));
    phi.target = std::make_shared<const Cosheaf<T>>(build_moment_cosheaf<T>(f));

    Matrix<T> vertex_embed(d, static_cast<std::size_t>(n));
    vertex_embed.set_block(b, 0, Matrix<T>::identity(static_cast<std::size_t>(n)));
    phi.vertex_maps.assign(f.vertex_count(), vertex_embed);
    for (std::size_t e = 0; e < f.edge_count(); ++e)
    {
        const auto g = f.geometry<T>(e);
        Matrix<T> edge_embed(d, 1);
        for (int i = 0; i < n; ++i)
            edge_embed(b + static_cast<std::size_t>(i), 0) = g.direction[i];
        phi.edge_maps.push_back(std::move(edge_embed));
    }
    return phi;
}

template <Scalar T>
StructuralSequence<T> build_sequence(const Framework& f)
{
    StructuralSequence<T> seq;
    seq.phi = build_phi<T>(f);
    seq.force = seq.phi.source;
    seq.moment = seq.phi.target;

    QuotientResult<T> q = quotient_cosheaf(seq.phi);
    auto anchored = std::make_shared<Cosheaf<T>>(*q.quotient);
    const int n = f.dim();
    anchored->vertex_labels.assign(f.vertex_count(), moment_labels(n));
    anchored->edge_labels.assign(f.edge_count(), anchored_edge_labels(n));
    anchored->validate();

    seq.anchored = anchored;
    seq.pi = std::move(q.projection);
    seq.pi.target = anchored;
    seq.vertex_sections = std::move(q.vertex_sections);
    seq.edge_sections = std::move(q.edge_sections);
    return seq;
}

template <Scalar T>
AnchoredCosheaf<T> build_anchored_cosheaf(const Framework& f)
{
    StructuralSequence<T> seq = build_sequence<T>(f);
    return {seq.anchored, std::move(seq.pi)};
}

template <Scalar T>
SubspaceBasis<T> rigid_body_space(const Framework& f)
{
    if (!f.connected())
        throw FrameworkError("rigid_body_space: framework is not connected");
    const auto n = static_cast<std::size_t>(f.dim());
    const std::size_t rows = n * f.vertex_count();
    std::vector<Vector<T>> generators;
    for (std::size_t k = 0; k < n; ++k)
    {
        Vector<T> t(rows, T(0));
        for (std::size_t v = 0; v < f.vertex_count(); ++v)
            t[n * v + k] = T(1);
        generators.push_back(std::move(t));
    }
    // Rotation generators as (axis pair a -> b): velocity component b gets +p_a, component a gets -p_b.
    std::vector<std::pair<std::size_t, std::size_t>> planes;
    if (n == 2)
        planes = {{0, 1}};
    else
        planes = {{1, 2}, {2, 0}, {0, 1}};
    for (auto [a, b] : planes)
    {
        Vector<T> r(rows, T(0));
        for (std::size_t v = 0; v < f.vertex_count(); ++v)
        {
            const auto& p = f.position(v);
            r[n * v + a] = scalar_from<T>(Rational(-p[b]));
            r[n * v + b] = scalar_from<T>(p[a]);
        }
        generators.push_back(std::move(r));
    }
    return image_basis(Matrix<T>::from_columns(generators, rows));
}

#define MFRAME_INSTANTIATE_STRUCTURAL(T)                                        \
    template Wedge2<T> wedge<T>(const Vector<T>&, const Vector<T>&);            \
    template Matrix<T> wedge_with<T>(const Vector<T>&);                         \
    template Cosheaf<T> build_force_cosheaf<T>(const Framework&);               \
    template Cosheaf<T> build_moment_cosheaf<T>(const Framework&);              \
    template CosheafMap<T> build_phi<T>(const Framework&);                      \
    template StructuralSequence<T> build_sequence<T>(const Framework&);         \
    template AnchoredCosheaf<T> build_anchored_cosheaf<T>(const Framework&);    \
    template SubspaceBasis<T> rigid_body_space<T>(const Framework&);

MFRAME_INSTANTIATE_STRUCTURAL(Rational)
MFRAME_INSTANTIATE_STRUCTURAL(double)

#undef MFRAME_INSTANTIATE_STRUCTURAL

} // namespace mframe
