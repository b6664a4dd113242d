/**
 * Cellular cosheaves over the graph of a framework.
 *
 * A cosheaf attaches a vector space (stalk) to every vertex and edge and a
 * linear map from each edge stalk to the stalks of its two endpoints. Chains
 * are flattened in vertex/edge list order, each cell contributing its stalk
 * coordinates in order; the boundary matrix uses the same ordering.
 */
#ifndef MFRAME_COSHEAF_HPP
#define MFRAME_COSHEAF_HPP

#include <memory>
#include <stdexcept>
#include <string>
#include <vector>

#include "mframe/framework.hpp"
#include "mframe/linalg.hpp"

namespace mframe {

class CosheafError : public std::runtime_error
{
public:
    using std::runtime_error::runtime_error;
};

template <Scalar T>
struct Cosheaf
{
    Graph base;
    std::vector<std::size_t> vertex_dims;
    std::vector<std::size_t> edge_dims;
    /// Per edge e: the stalk map K_e -> K_tail(e), a vertex_dim x edge_dim matrix.
    std::vector<Matrix<T>> tail_maps;
    /// Per edge e: the stalk map K_e -> K_head(e).
    std::vector<Matrix<T>> head_maps;
    std::vector<std::vector<std::string>> vertex_labels;
    std::vector<std::vector<std::string>> edge_labels;

    /// Throws CosheafError if shapes, labels or incidences are inconsistent.
    void validate() const;

    /// Stalk map from edge e to its endpoint v.
    const Matrix<T>& stalk_map(std::size_t e, std::size_t v) const;

    std::vector<std::size_t> vertex_offsets() const;
    std::vector<std::size_t> edge_offsets() const;
    std::size_t c0_dim() const;
    std::size_t c1_dim() const;
};

/// Per-cell components of a 0-chain (vertices) or 1-chain (edges).
template <Scalar T>
struct Chain
{
    int degree = 1;
    std::vector<Vector<T>> components;
};

template <Scalar T>
Vector<T> chain_pack(const Cosheaf<T>& k, const Chain<T>& chain);

template <Scalar T>
Chain<T> chain_unpack(const Cosheaf<T>& k, int degree, const Vector<T>& flat);

/// Stalk-wise linear maps between two cosheaves over the same graph.
template <Scalar T>
struct CosheafMap
{
    std::shared_ptr<const Cosheaf<T>> source;
    std::shared_ptr<const Cosheaf<T>> target;
    std::vector<Matrix<T>> vertex_maps;
    std::vector<Matrix<T>> edge_maps;

    /// Block-diagonal chain-level matrix in the given degree.
    Matrix<T> chain_matrix(int degree) const;
};

struct IncidenceFailure
{
    std::size_t edge = 0;
    std::size_t vertex = 0;
    double residual = 0.0;
};

struct MapVerdict
{
    bool passed = true;
    std::vector<IncidenceFailure> failures;
};

template <Scalar T>
struct HomologyResult
{
    Matrix<T> boundary;
    /// Basis of ker(boundary) in C1.
    SubspaceBasis<T> h1;
    /// Basis of the orthogonal complement of im(boundary) in C0.
    SubspaceBasis<T> h0;

    std::size_t h1_dim() const { return h1.dim(); }
    std::size_t h0_dim() const { return h0.dim(); }
};

/// Block (v, e) is +K_{e>v} when v is the head of e, -K_{e>v} when v is the tail.
template <Scalar T>
Matrix<T> assemble_boundary(const Cosheaf<T>& k);

template <Scalar T>
HomologyResult<T> homology(const Cosheaf<T>& k);

/// Verifies target_map(e, v) * map_e == map_v * source_map(e, v) at every incidence.
/// Throws CosheafError on shape mismatches.
template <Scalar T>
MapVerdict check_cosheaf_map(const CosheafMap<T>& m);

template <Scalar T>
struct QuotientResult
{
    std::shared_ptr<const Cosheaf<T>> quotient;
    /// The projection target -> quotient.
    CosheafMap<T> projection;
    /// Right inverses of the stalk projections, with image orthogonal to the embedded source.
    std::vector<Matrix<T>> vertex_sections;
    std::vector<Matrix<T>> edge_sections;
};

/**
 * Quotient of m.target by the image of an injective cosheaf map. Each quotient
 * stalk is realized as the orthogonal complement of im(m) in the target stalk;
 * the projection is the orthogonal projection written in complement coordinates,
 * and the induced stalk maps are projection * target_map * section.
 */
template <Scalar T>
QuotientResult<T> quotient_cosheaf(const CosheafMap<T>& m);

/// The classical cosheaf: every stalk one-dimensional, every map the identity.
template <Scalar T>
Cosheaf<T> constant_cosheaf(const Graph& g);

template <Scalar T>
CosheafMap<T> identity_map(std::shared_ptr<const Cosheaf<T>> k);

} // namespace mframe

#endif
