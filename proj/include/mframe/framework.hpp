/**
 * Geometric frameworks (G, p): a graph with oriented edges and a straight-line
 * realization of its vertices in the plane or in space.
 *
 * Coordinates are always held as exact rationals. The arithmetic mode only
 * changes how degeneracy is judged (exact equality versus a scale-relative
 * tolerance) and which scalar type downstream computations use.
 */
#ifndef MFRAME_FRAMEWORK_HPP
#define MFRAME_FRAMEWORK_HPP

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "mframe/matrix.hpp"
#include "mframe/scalar.hpp"

namespace mframe {

class FrameworkError : public std::runtime_error
{
public:
    using std::runtime_error::runtime_error;
};

/// Malformed framework text.
class ParseError : public FrameworkError
{
public:
    using FrameworkError::FrameworkError;
};

/// Well-formed text describing an invalid framework (dangling id, zero-length edge, ...).
class ValidationError : public FrameworkError
{
public:
    using FrameworkError::FrameworkError;
};

using Point = std::vector<Rational>;

/// Oriented edge; the boundary convention treats `head` as the vertex the edge points towards.
struct Edge
{
    std::size_t tail = 0;
    std::size_t head = 0;

    friend bool operator==(const Edge&, const Edge&) = default;
};

/// Combinatorial part of a framework, shared by every cosheaf built over it.
struct Graph
{
    std::size_t vertex_count = 0;
    std::vector<Edge> edges;

    std::size_t edge_count() const { return edges.size(); }
    friend bool operator==(const Graph&, const Graph&) = default;
};

bool is_connected(const Graph& g);

template <Scalar T>
struct EdgeGeometry
{
    Vector<T> direction;   // p_head - p_tail
    Vector<T> half_lever;  // direction / 2
    double length = 0.0;
};

class Framework
{
public:
    /// Validates on construction; throws ValidationError.
    Framework(int dim, std::vector<Point> positions, std::vector<Edge> edges,
              Arithmetic mode = Arithmetic::Exact);

    int dim() const { return dim_; }
    Arithmetic mode() const { return mode_; }
    std::size_t vertex_count() const { return positions_.size(); }
    std::size_t edge_count() const { return graph_.edges.size(); }
    const Point& position(std::size_t v) const { return positions_.at(v); }
    const std::vector<Point>& positions() const { return positions_; }
    const Edge& edge(std::size_t e) const { return graph_.edges.at(e); }
    const std::vector<Edge>& edges() const { return graph_.edges; }
    const Graph& graph() const { return graph_; }
    bool connected() const { return connected_; }

    template <Scalar T>
    EdgeGeometry<T> geometry(std::size_t e) const
    {
        const Edge& ed = edge(e);
        EdgeGeometry<T> g;
        g.direction.resize(dim_);
        g.half_lever.resize(dim_);
        double len2 = 0.0;
        for (int i = 0; i < dim_; ++i)
        {
            const Rational d = positions_[ed.head][i] - positions_[ed.tail][i];
            g.direction[i] = scalar_from<T>(d);
            g.half_lever[i] = scalar_from<T>(Rational(d / 2));
            len2 += to_double(d) * to_double(d);
        }
        g.length = std::sqrt(len2);
        return g;
    }

    /// Same graph, new coordinates (re-validated).
    Framework with_positions(std::vector<Point> positions) const;
    Framework with_mode(Arithmetic mode) const;

private:
    int dim_;
    Arithmetic mode_;
    std::vector<Point> positions_;
    Graph graph_;
    bool connected_ = false;
};

/// Scale-relative degeneracy threshold used in float mode.
double geometric_epsilon(const std::vector<Point>& positions);

Framework parse_framework(std::istream& in, Arithmetic mode = Arithmetic::Exact);
Framework parse_framework(std::string_view text, Arithmetic mode = Arithmetic::Exact);
Framework load_framework(const std::filesystem::path& path, Arithmetic mode = Arithmetic::Exact);

std::string format_framework(const Framework& f);
void save_framework(const Framework& f, const std::filesystem::path& path);

/**
 * Two triangles in perspective from the origin: outer vertices (0,4), (-3,-2),
 * (3,-2), inner vertices scaled by t, joined by three connectors whose lines all
 * pass through the origin. Vertices 0-2 are outer, 3-5 inner.
 */
Framework make_desargues(const Rational& t);

/// bar, triangle, square, box3d, desargues, random2d, random3d.
Framework make_named(std::string_view name, std::uint64_t seed = 0);

/**
 * Shift every coordinate by magnitude * k / 2^20 with k drawn uniformly from
 * [-2^20, 2^20] by a 64-bit Mersenne twister seeded with `seed`.
 */
Framework perturb(const Framework& f, const Rational& magnitude, std::uint64_t seed);

/// Apply p -> rotation * p + translation to every vertex.
Framework transform(const Framework& f, const Matrix<Rational>& rotation, const Point& translation);
Framework reorient_edge(const Framework& f, std::size_t e);
/// Vertex v of `f` becomes vertex perm[v] of the result.
Framework permute_vertices(const Framework& f, const std::vector<std::size_t>& perm);

} // namespace mframe

#endif
