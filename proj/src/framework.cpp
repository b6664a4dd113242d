#include "mframe/framework.hpp"

#include "mframe/linalg.hpp"

#include <algorithm>
#include <fstream>
#include <numeric>
#include <random>
#include <set>
#include <sstream>

namespace mframe {

namespace {

std::string vertex_text(std::size_t v) { return "vertex " + std::to_string(v); }

std::string edge_text(std::size_t e, const Edge& ed)
{
    return "edge " + std::to_string(e) + " (" + std::to_string(ed.tail) + " -> " + std::to_string(ed.head) + ")";
}

double squared_distance(const Point& a, const Point& b)
{
    double s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i)
    {
        const double d = to_double(a[i]) - to_double(b[i]);
        s += d * d;
    }
    return s;
}

std::vector<std::string> tokenize(const std::string& line)
{
    std::istringstream in(line.substr(0, line.find('#')));
    std::vector<std::string> out;
    std::string tok;
    while (in >> tok)
        out.push_back(tok);
    return out;
}

std::size_t parse_index(const std::string& tok, std::size_t line_no)
{
    if (tok.empty() || !std::all_of(tok.begin(), tok.end(), [](char c) { return c >= '0' && c <= '9'; }))
        throw ParseError("line " + std::to_string(line_no) + ": expected a non-negative integer id, got '" + tok + "'");
    try
    {
        return std::stoul(tok);
    }
    catch (const std::exception&)
    {
        throw ParseError("line " + std::to_string(line_no) + ": id out of range '" + tok + "'");
    }
}

/// Raw 64-bit draws are fixed by the standard, unlike std::uniform_int_distribution.
std::uint64_t draw(std::mt19937_64& rng, std::uint64_t bound)
{
    return rng() % bound;
}

std::int64_t draw_between(std::mt19937_64& rng, std::int64_t lo, std::int64_t hi)
{
    return lo + static_cast<std::int64_t>(draw(rng, static_cast<std::uint64_t>(hi - lo + 1)));
}

bool collinear(const std::vector<Point>& pts)
{
    if (pts.size() < 3)
        return true;
    Matrix<Rational> diffs(pts.size() - 1, pts[0].size());
    for (std::size_t i = 1; i < pts.size(); ++i)
        for (std::size_t k = 0; k < pts[0].size(); ++k)
            diffs(i - 1, k) = pts[i][k] - pts[0][k];
    return rank(diffs) < 2;
}

Framework random_framework(int dim, std::uint64_t seed)
{
    std::mt19937_64 rng(seed);
    const std::size_t max_vertices = dim == 2 ? 15 : 10;
    for (;;)
    {
        const std::size_t nv = 3 + draw(rng, max_vertices - 2);
        std::vector<Point> pts;
        std::set<std::vector<std::int64_t>> used;
        while (pts.size() < nv)
        {
            std::vector<std::int64_t> raw(dim);
            for (auto& x : raw)
                x = draw_between(rng, -40, 40);
            if (!used.insert(raw).second)
                continue;
            Point p;
            for (auto x : raw)
                p.push_back(Rational(x, 4));
            pts.push_back(std::move(p));
        }
        if (dim == 3 && collinear(pts))
            continue;

        std::vector<Edge> edges;
        std::set<std::pair<std::size_t, std::size_t>> seen;
        auto add = [&](std::size_t a, std::size_t b) {
            if (a == b || !seen.insert({std::min(a, b), std::max(a, b)}).second)
                return;
            if (draw(rng, 2) == 0)
                edges.push_back({a, b});
            else
                edges.push_back({b, a});
        };
        for (std::size_t i = 1; i < nv; ++i)
            add(static_cast<std::size_t>(draw(rng, i)), i);
        const std::size_t extra = draw(rng, nv + 3);
        for (std::size_t k = 0; k < extra; ++k)
            add(static_cast<std::size_t>(draw(rng, nv)), static_cast<std::size_t>(draw(rng, nv)));

        try
        {
            Framework f(dim, std::move(pts), std::move(edges));
            if (f.connected())
                return f;
        }
        catch (const ValidationError&)
        {
        }
    }
}

Point point(std::initializer_list<int> xs)
{
    Point p;
    for (int x : xs)
        p.push_back(Rational(x));
    return p;
}

} // namespace

bool is_connected(const Graph& g)
{
    if (g.vertex_count == 0)
        return true;
    std::vector<std::size_t> parent(g.vertex_count);
    std::iota(parent.begin(), parent.end(), std::size_t{0});
    auto find = [&](std::size_t x) {
        while (parent[x] != x)
            x = parent[x] = parent[parent[x]];
        return x;
    };
    std::size_t components = g.vertex_count;
    for (const auto& e : g.edges)
    {
        const std::size_t a = find(e.tail), b = find(e.head);
        if (a != b)
        {
            parent[a] = b;
            --components;
        }
    }
    return components == 1;
}

double geometric_epsilon(const std::vector<Point>& positions)
{
    if (positions.empty())
        return 0.0;
    const std::size_t dim = positions.front().size();
    double diag2 = 0.0;
    for (std::size_t k = 0; k < dim; ++k)
    {
        double lo = to_double(positions.front()[k]);
        double hi = lo;
        for (const auto& p : positions)
        {
            lo = std::min(lo, to_double(p[k]));
            hi = std::max(hi, to_double(p[k]));
        }
        diag2 += (hi - lo) * (hi - lo);
    }
    return 1e-9 * std::sqrt(diag2);
}

Framework::Framework(int dim, std::vector<Point> positions, std::vector<Edge> edges, Arithmetic mode)
    : dim_(dim), mode_(mode), positions_(std::move(positions)), graph_{positions_.size(), std::move(edges)}
{
    if (dim_ != 2 && dim_ != 3)
        throw ValidationError("ambient dimension must be 2 or 3, got " + std::to_string(dim_));
    for (std::size_t v = 0; v < positions_.size(); ++v)
        if (positions_[v].size() != static_cast<std::size_t>(dim_))
            throw ValidationError(vertex_text(v) + " has " + std::to_string(positions_[v].size()) +
                                  " coordinates, expected " + std::to_string(dim_));

    const double eps = geometric_epsilon(positions_);
    std::set<std::pair<std::size_t, std::size_t>> seen;
    for (std::size_t e = 0; e < graph_.edges.size(); ++e)
    {
        const Edge& ed = graph_.edges[e];
        if (ed.tail >= positions_.size() || ed.head >= positions_.size())
            throw ValidationError(edge_text(e, ed) + " references a vertex that does not exist");
        if (ed.tail == ed.head)
            throw ValidationError(edge_text(e, ed) + " is a self-loop");
        if (!seen.insert({std::min(ed.tail, ed.head), std::max(ed.tail, ed.head)}).second)
            throw ValidationError(edge_text(e, ed) + " duplicates an earlier edge");
        const bool degenerate = mode_ == Arithmetic::Exact
                                    ? positions_[ed.tail] == positions_[ed.head]
                                    : std::sqrt(squared_distance(positions_[ed.tail], positions_[ed.head])) <= eps;
        if (degenerate)
            throw ValidationError(edge_text(e, ed) + " is a zero-length edge");
    }
    connected_ = is_connected(graph_);
}

Framework Framework::with_positions(std::vector<Point> positions) const
{
    return Framework(dim_, std::move(positions), graph_.edges, mode_);
}

Framework Framework::with_mode(Arithmetic mode) const
{
    return Framework(dim_, positions_, graph_.edges, mode);
}

Framework parse_framework(std::istream& in, Arithmetic mode)
{
    int dim = 0;
    std::vector<std::pair<std::size_t, Point>> vertices;
    std::vector<Edge> edges;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line))
    {
        ++line_no;
        const auto tok = tokenize(line);
        if (tok.empty())
            continue;
        const std::string where = "line " + std::to_string(line_no) + ": ";
        if (tok[0] == "dim")
        {
            if (dim != 0)
                throw ParseError(where + "repeated dim header");
            if (tok.size() != 2 || (tok[1] != "2" && tok[1] != "3"))
                throw ParseError(where + "expected 'dim 2' or 'dim 3'");
            dim = tok[1] == "2" ? 2 : 3;
        }
        else if (tok[0] == "v")
        {
            if (dim == 0)
                throw ParseError(where + "vertex before dim header");
            if (tok.size() != static_cast<std::size_t>(dim) + 2)
                throw ParseError(where + "expected 'v <id>' followed by " + std::to_string(dim) + " coordinates");
            Point p;
            for (int k = 0; k < dim; ++k)
            {
                try
                {
                    p.push_back(parse_rational(tok[2 + k]));
                }
                catch (const std::invalid_argument& ex)
                {
                    throw ParseError(where + ex.what());
                }
            }
            vertices.emplace_back(parse_index(tok[1], line_no), std::move(p));
        }
        else if (tok[0] == "e")
        {
            if (dim == 0)
                throw ParseError(where + "edge before dim header");
            if (tok.size() != 3)
                throw ParseError(where + "expected 'e <tail> <head>'");
            edges.push_back({parse_index(tok[1], line_no), parse_index(tok[2], line_no)});
        }
        else
            throw ParseError(where + "unknown record '" + tok[0] + "'");
    }
    if (dim == 0)
        throw ParseError("missing dim header");

    std::vector<Point> positions(vertices.size());
    std::vector<bool> filled(vertices.size(), false);
    for (auto& [id, p] : vertices)
    {
        if (id >= vertices.size())
            throw ValidationError(vertex_text(id) + ": ids must be dense and 0-based");
        if (filled[id])
            throw ValidationError(vertex_text(id) + " is defined twice");
        filled[id] = true;
        positions[id] = std::move(p);
    }
    return Framework(dim, std::move(positions), std::move(edges), mode);
}

Framework parse_framework(std::string_view text, Arithmetic mode)
{
    std::istringstream in{std::string(text)};
    return parse_framework(in, mode);
}

Framework load_framework(const std::filesystem::path& path, Arithmetic mode)
{
    std::ifstream in(path);
    if (!in)
        throw ParseError("cannot open " + path.string());
    return parse_framework(in, mode);
}

std::string format_framework(const Framework& f)
{
    std::ostringstream out;
    out << "dim " << f.dim() << '\n';
    for (std::size_t v = 0; v < f.vertex_count(); ++v)
    {
        out << "v " << v;
        for (const auto& x : f.position(v))
            out << ' ' << format_rational(x);
        out << '\n';
    }
    for (const auto& e : f.edges())
        out << "e " << e.tail << ' ' << e.head << '\n';
    return out.str();
}

void save_framework(const Framework& f, const std::filesystem::path& path)
{
    std::ofstream out(path);
    if (!out)
        throw FrameworkError("cannot write " + path.string());
    out << format_framework(f);
}

Framework make_desargues(const Rational& t)
{
    if (t <= 0 || t >= 1)
        throw ValidationError("desargues scale must lie strictly between 0 and 1");
    const std::vector<Point> outer = {point({0, 4}), point({-3, -2}), point({3, -2})};
    std::vector<Point> positions = outer;
    for (const auto& q : outer)
        positions.push_back({Rational(t * q[0]), Rational(t * q[1])});
    std::vector<Edge> edges = {{0, 1}, {1, 2}, {2, 0}, {3, 4}, {4, 5}, {5, 3}, {0, 3}, {1, 4}, {2, 5}};
    return Framework(2, std::move(positions), std::move(edges));
}

Framework make_named(std::string_view name, std::uint64_t seed)
{
    if (name == "bar")
        return Framework(2, {point({0, 0}), point({1, 0})}, {{0, 1}});
    if (name == "triangle")
        return Framework(2, {point({0, 0}), point({4, 0}), point({0, 3})}, {{0, 1}, {1, 2}, {2, 0}});
    if (name == "square")
        return Framework(2, {point({0, 0}), point({1, 0}), point({1, 1}), point({0, 1})},
                         {{0, 1}, {1, 2}, {2, 3}, {3, 0}});
    if (name == "box3d")
    {
        std::vector<Point> pts;
        for (int z = 0; z < 2; ++z)
            for (int y = 0; y < 2; ++y)
                for (int x = 0; x < 2; ++x)
                    pts.push_back(point({x, y, z}));
        std::vector<Edge> edges;
        for (std::size_t a = 0; a < 8; ++a)
            for (std::size_t bit : {1u, 2u, 4u})
                if ((a & bit) == 0)
                    edges.push_back({a, a | bit});
        return Framework(3, std::move(pts), std::move(edges));
    }
    if (name == "desargues")
        return make_desargues(Rational(1, 2));
    if (name == "random2d")
        return random_framework(2, seed);
    if (name == "random3d")
        return random_framework(3, seed);
    throw FrameworkError("unknown framework name '" + std::string(name) + "'");
}

Framework perturb(const Framework& f, const Rational& magnitude, std::uint64_t seed)
{
    if (magnitude < 0)
        throw FrameworkError("perturbation magnitude must be non-negative");
    constexpr std::int64_t kSteps = std::int64_t{1} << 20;
    std::mt19937_64 rng(seed);
    std::vector<Point> positions = f.positions();
    for (auto& p : positions)
        for (auto& x : p)
        {
            const std::int64_t k = draw_between(rng, -kSteps, kSteps);
            x += magnitude * Rational(k, kSteps);
        }
    return f.with_positions(std::move(positions));
}

Framework transform(const Framework& f, const Matrix<Rational>& rotation, const Point& translation)
{
    const auto n = static_cast<std::size_t>(f.dim());
    if (rotation.rows() != n || rotation.cols() != n || translation.size() != n)
        throw FrameworkError("transform: dimension mismatch");
    std::vector<Point> positions;
    for (const auto& p : f.positions())
    {
        Point q = rotation * p;
        for (std::size_t k = 0; k < n; ++k)
            q[k] += translation[k];
        positions.push_back(std::move(q));
    }
    return f.with_positions(std::move(positions));
}

Framework reorient_edge(const Framework& f, std::size_t e)
{
    std::vector<Edge> edges = f.edges();
    std::swap(edges.at(e).tail, edges.at(e).head);
    return Framework(f.dim(), f.positions(), std::move(edges), f.mode());
}

Framework permute_vertices(const Framework& f, const std::vector<std::size_t>& perm)
{
    if (perm.size() != f.vertex_count())
        throw FrameworkError("permute_vertices: permutation has wrong length");
    std::vector<Point> positions(f.vertex_count());
    std::vector<bool> hit(f.vertex_count(), false);
    for (std::size_t v = 0; v < perm.size(); ++v)
    {
        if (perm[v] >= perm.size() || hit[perm[v]])
            throw FrameworkError("permute_vertices: not a permutation");
        hit[perm[v]] = true;
        positions[perm[v]] = f.position(v);
    }
    std::vector<Edge> edges;
    for (const auto& e : f.edges())
        edges.push_back({perm[e.tail], perm[e.head]});
    return Framework(f.dim(), std::move(positions), std::move(edges), f.mode());
}

} // namespace mframe
