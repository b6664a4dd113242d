#include "mframe/cosheaf.hpp"

#include <numeric>

namespace mframe {

namespace {

std::vector<std::size_t> prefix_offsets(const std::vector<std::size_t>& dims)
{
    std::vector<std::size_t> out(dims.size() + 1, 0);
    std::partial_sum(dims.begin(), dims.end(), out.begin() + 1);
    return out;
}

template <Scalar T>
Matrix<T> block_diagonal(const std::vector<Matrix<T>>& blocks)
{
    std::size_t rows = 0, cols = 0;
    for (const auto& b : blocks)
    {
        rows += b.rows();
        cols += b.cols();
    }
    Matrix<T> m(rows, cols);
    std::size_t r = 0, c = 0;
    for (const auto& b : blocks)
    {
        m.set_block(r, c, b);
        r += b.rows();
        c += b.cols();
    }
    return m;
}

std::vector<std::string> default_labels(std::size_t n)
{
    std::vector<std::string> out;
    for (std::size_t i = 0; i < n; ++i)
        out.push_back("q" + std::to_string(i));
    return out;
}

} // namespace

template <Scalar T>
void Cosheaf<T>::validate() const
{
    const std::size_t nv = base.vertex_count;
    const std::size_t ne = base.edge_count();
    if (vertex_dims.size() != nv || vertex_labels.size() != nv)
        throw CosheafError("cosheaf: vertex stalk data does not match the vertex count");
    if (edge_dims.size() != ne || edge_labels.size() != ne || tail_maps.size() != ne || head_maps.size() != ne)
        throw CosheafError("cosheaf: edge stalk data does not match the edge count");
    for (std::size_t v = 0; v < nv; ++v)
        if (vertex_labels[v].size() != vertex_dims[v])
            throw CosheafError("cosheaf: label count differs from stalk dimension at vertex " + std::to_string(v));
    for (std::size_t e = 0; e < ne; ++e)
    {
        const Edge& ed = base.edges[e];
        if (edge_labels[e].size() != edge_dims[e])
            throw CosheafError("cosheaf: label count differs from stalk dimension at edge " + std::to_string(e));
        if (tail_maps[e].rows() != vertex_dims[ed.tail] || tail_maps[e].cols() != edge_dims[e] ||
            head_maps[e].rows() != vertex_dims[ed.head] || head_maps[e].cols() != edge_dims[e])
            throw CosheafError("cosheaf: stalk map shape mismatch at edge " + std::to_string(e));
    }
}

template <Scalar T>
const Matrix<T>& Cosheaf<T>::stalk_map(std::size_t e, std::size_t v) const
{
    const Edge& ed = base.edges.at(e);
    if (v == ed.head)
        return head_maps[e];
    if (v == ed.tail)
        return tail_maps[e];
    throw CosheafError("vertex " + std::to_string(v) + " is not incident to edge " + std::to_string(e));
}

template <Scalar T>
std::vector<std::size_t> Cosheaf<T>::vertex_offsets() const
{
    return prefix_offsets(vertex_dims);
}

template <Scalar T>
std::vector<std::size_t> Cosheaf<T>::edge_offsets() const
{
    return prefix_offsets(edge_dims);
}

template <Scalar T>
std::size_t Cosheaf<T>::c0_dim() const
{
    return std::accumulate(vertex_dims.begin(), vertex_dims.end(), std::size_t{0});
}

template <Scalar T>
std::size_t Cosheaf<T>::c1_dim() const
{
    return std::accumulate(edge_dims.begin(), edge_dims.end(), std::size_t{0});
}

template <Scalar T>
Vector<T> chain_pack(const Cosheaf<T>& k, const Chain<T>& chain)
{
    const auto& dims = chain.degree == 0 ? k.vertex_dims : k.edge_dims;
    if (chain.degree != 0 && chain.degree != 1)
        throw CosheafError("chain degree must be 0 or 1");
    if (chain.components.size() != dims.size())
        throw CosheafError("chain has the wrong number of cells");
    Vector<T> flat;
    for (std::size_t c = 0; c < dims.size(); ++c)
    {
        if (chain.components[c].size() != dims[c])
            throw CosheafError("chain component " + std::to_string(c) + " has the wrong dimension");
        flat.insert(flat.end(), chain.components[c].begin(), chain.components[c].end());
    }
    return flat;
}

template <Scalar T>
Chain<T> chain_unpack(const Cosheaf<T>& k, int degree, const Vector<T>& flat)
{
    if (degree != 0 && degree != 1)
        throw CosheafError("chain degree must be 0 or 1");
    const auto& dims = degree == 0 ? k.vertex_dims : k.edge_dims;
    const auto offsets = prefix_offsets(dims);
    if (flat.size() != offsets.back())
        throw CosheafError("flat chain has the wrong length");
    Chain<T> chain{degree, {}};
    for (std::size_t c = 0; c < dims.size(); ++c)
        chain.components.emplace_back(flat.begin() + static_cast<std::ptrdiff_t>(offsets[c]),
                                      flat.begin() + static_cast<std::ptrdiff_t>(offsets[c + 1]));
    return chain;
}

template <Scalar T>
Matrix<T> CosheafMap<T>::chain_matrix(int degree) const
{
    if (degree == 0)
        return block_diagonal(vertex_maps);
    if (degree == 1)
        return block_diagonal(edge_maps);
    throw CosheafError("chain degree must be 0 or 1");
}

template <Scalar T>
Matrix<T> assemble_boundary(const Cosheaf<T>& k)
{
    k.validate();
    const auto vo = k.vertex_offsets();
    const auto eo = k.edge_offsets();
    Matrix<T> d(vo.back(), eo.back());
    for (std::size_t e = 0; e < k.base.edge_count(); ++e)
    {
        const Edge& ed = k.base.edges[e];
        d.set_block(vo[ed.head], eo[e], k.head_maps[e], T(1));
        d.set_block(vo[ed.tail], eo[e], k.tail_maps[e], T(-1));
    }
    return d;
}

template <Scalar T>
HomologyResult<T> homology(const Cosheaf<T>& k)
{
    HomologyResult<T> h;
    h.boundary = assemble_boundary(k);
    h.h1 = kernel_basis(h.boundary);
    h.h0 = image_complement_basis(h.boundary);
    return h;
}

template <Scalar T>
MapVerdict check_cosheaf_map(const CosheafMap<T>& m)
{
    if (!m.source || !m.target)
        throw CosheafError("cosheaf map is missing its source or target");
    const Cosheaf<T>& src = *m.source;
    const Cosheaf<T>& tgt = *m.target;
    if (!(src.base == tgt.base))
        throw CosheafError("cosheaf map: source and target live over different graphs");
    if (m.vertex_maps.size() != src.base.vertex_count || m.edge_maps.size() != src.base.edge_count())
        throw CosheafError("cosheaf map: wrong number of stalk maps");
    for (std::size_t v = 0; v < src.base.vertex_count; ++v)
        if (m.vertex_maps[v].rows() != tgt.vertex_dims[v] || m.vertex_maps[v].cols() != src.vertex_dims[v])
            throw CosheafError("cosheaf map: shape mismatch at vertex " + std::to_string(v));
    for (std::size_t e = 0; e < src.base.edge_count(); ++e)
        if (m.edge_maps[e].rows() != tgt.edge_dims[e] || m.edge_maps[e].cols() != src.edge_dims[e])
            throw CosheafError("cosheaf map: shape mismatch at edge " + std::to_string(e));

    MapVerdict verdict;
    for (std::size_t e = 0; e < src.base.edge_count(); ++e)
    {
        const Edge& ed = src.base.edges[e];
        for (std::size_t v : {ed.tail, ed.head})
        {
            const Matrix<T> lhs = tgt.stalk_map(e, v) * m.edge_maps[e];
            const Matrix<T> rhs = m.vertex_maps[v] * src.stalk_map(e, v);
            const Matrix<T> diff = lhs - rhs;
            bool ok;
            double residual;
            if constexpr (is_exact_v<T>)
            {
                ok = diff.is_zero();
                residual = diff.norm();
            }
            else
            {
                residual = diff.norm();
                ok = residual <= 1e-9 * (lhs.norm() + rhs.norm() + 1.0);
            }
            if (!ok)
            {
                verdict.passed = false;
                verdict.failures.push_back({e, v, residual});
            }
        }
    }
    return verdict;
}

template <Scalar T>
QuotientResult<T> quotient_cosheaf(const CosheafMap<T>& m)
{
    const MapVerdict verdict = check_cosheaf_map(m);
    if (!verdict.passed)
        throw CosheafError("quotient_cosheaf: the map does not commute with the stalk maps");
    const Cosheaf<T>& tgt = *m.target;

    // complement basis K, projection (K^T K)^{-1} K^T, section K
    auto split = [](const Matrix<T>& embed, const std::string& where, Matrix<T>& projection, Matrix<T>& section) {
        if (rank(embed) != embed.cols())
            throw CosheafError("quotient_cosheaf: map is not injective at " + where);
        const SubspaceBasis<T> complement = image_complement_basis(embed);
        section = complement.empty() ? Matrix<T>(embed.rows(), 0) : complement.as_matrix();
        const Matrix<T> st = section.transpose();
        projection = section.cols() == 0 ? Matrix<T>(0, embed.rows()) : solve_in_image(st * section, st);
    };

    auto q = std::make_shared<Cosheaf<T>>();
    q->base = tgt.base;
    QuotientResult<T> out;
    out.projection.source = m.target;

    const std::size_t nv = tgt.base.vertex_count;
    const std::size_t ne = tgt.base.edge_count();
    out.projection.vertex_maps.resize(nv);
    out.projection.edge_maps.resize(ne);
    out.vertex_sections.resize(nv);
    out.edge_sections.resize(ne);

    for (std::size_t v = 0; v < nv; ++v)
    {
        split(m.vertex_maps[v], "vertex " + std::to_string(v), out.projection.vertex_maps[v], out.vertex_sections[v]);
        q->vertex_dims.push_back(out.vertex_sections[v].cols());
        q->vertex_labels.push_back(default_labels(out.vertex_sections[v].cols()));
    }
    for (std::size_t e = 0; e < ne; ++e)
    {
        split(m.edge_maps[e], "edge " + std::to_string(e), out.projection.edge_maps[e], out.edge_sections[e]);
        q->edge_dims.push_back(out.edge_sections[e].cols());
        q->edge_labels.push_back(default_labels(out.edge_sections[e].cols()));
    }
    for (std::size_t e = 0; e < ne; ++e)
    {
        const Edge& ed = tgt.base.edges[e];
        q->tail_maps.push_back(out.projection.vertex_maps[ed.tail] * tgt.tail_maps[e] * out.edge_sections[e]);
        q->head_maps.push_back(out.projection.vertex_maps[ed.head] * tgt.head_maps[e] * out.edge_sections[e]);
    }
    q->validate();
    out.quotient = q;
    out.projection.target = q;
    return out;
}

template <Scalar T>
Cosheaf<T> constant_cosheaf(const Graph& g)
{
    Cosheaf<T> k;
    k.base = g;
    k.vertex_dims.assign(g.vertex_count, 1);
    k.edge_dims.assign(g.edge_count(), 1);
    k.vertex_labels.assign(g.vertex_count, {"x"});
    k.edge_labels.assign(g.edge_count(), {"x"});
    k.tail_maps.assign(g.edge_count(), Matrix<T>::identity(1));
    k.head_maps.assign(g.edge_count(), Matrix<T>::identity(1));
    return k;
}

template <Scalar T>
CosheafMap<T> identity_map(std::shared_ptr<const Cosheaf<T>> k)
{
    CosheafMap<T> m;
    m.source = k;
    m.target = k;
    for (auto d : k->vertex_dims)
        m.vertex_maps.push_back(Matrix<T>::identity(d));
    for (auto d : k->edge_dims)
        m.edge_maps.push_back(Matrix<T>::identity(d));
    return m;
}

#define MFRAME_INSTANTIATE_COSHEAF(T)                                             \
    template struct Cosheaf<T>;                                                   \
    template struct CosheafMap<T>;                                                \
    template Vector<T> chain_pack<T>(const Cosheaf<T>&, const Chain<T>&);         \
    template Chain<T> chain_unpack<T>(const Cosheaf<T>&, int, const Vector<T>&);  \
    template Matrix<T> assemble_boundary<T>(const Cosheaf<T>&);                   \
    template HomologyResult<T> homology<T>(const Cosheaf<T>&);                    \
    template MapVerdict check_cosheaf_map<T>(const CosheafMap<T>&);               \
    template QuotientResult<T> quotient_cosheaf<T>(const CosheafMap<T>&);         \
    template Cosheaf<T> constant_cosheaf<T>(const Graph&);                        \
    template CosheafMap<T> identity_map<T>(std::shared_ptr<const Cosheaf<T>>);

MFRAME_INSTANTIATE_COSHEAF(Rational)
MFRAME_INSTANTIATE_COSHEAF(double)

#undef MFRAME_INSTANTIATE_COSHEAF

} // namespace mframe
