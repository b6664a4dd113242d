#include "mframe/les.hpp"

#include <algorithm>
#include <future>
#include <random>

namespace mframe {

namespace {

template <Scalar T>
SubspaceBasis<T> lift(const SubspaceBasis<T>& coords, const SubspaceBasis<T>& basis)
{
    SubspaceBasis<T> out{basis.ambient_dim, {}};
    if (coords.empty())
        return out;
    const Matrix<T> b = basis.as_matrix();
    for (const auto& c : coords.vectors)
        out.vectors.push_back(b * c);
    return out;
}

/// Orthogonal-projection coordinates of every column of y in the basis s.
template <Scalar T>
Matrix<T> projection_coordinates(const Matrix<T>& y, const SubspaceBasis<T>& s)
{
    if (s.empty())
        return Matrix<T>(0, y.cols());
    if constexpr (is_exact_v<T>)
    {
        const Matrix<T> bt = s.as_matrix().transpose();
        return solve_in_image(bt * s.as_matrix(), bt * y);
    }
    else
    {
        std::vector<Vector<T>> cols;
        for (std::size_t j = 0; j < y.cols(); ++j)
            cols.push_back(mframe::projection_coordinates(y.column(j), s));
        return Matrix<T>::from_columns(cols, s.dim());
    }
}

/// `scale` bounds the magnitude of a correct entry; it sets the float rank cutoff.
template <Scalar T>
InducedMap<T> finish(Matrix<T> matrix, double scale)
{
    InducedMap<T> m;
    m.rank = rank(matrix, scale);
    m.kernel = kernel_basis(matrix, scale);
    m.image = image_basis(matrix, scale);
    m.matrix = std::move(matrix);
    return m;
}

LesCheck make_check(std::string id, std::string description, const SubspaceVerdict& v)
{
    return {std::move(id), std::move(description), v.holds, v.residual};
}

LesCheck make_check(std::string id, std::string description, long long lhs, long long rhs)
{
    return {std::move(id), std::move(description), lhs == rhs,
            static_cast<double>(lhs > rhs ? lhs - rhs : rhs - lhs)};
}

template <Scalar T>
double max_inner_product(const SubspaceBasis<T>& a, const SubspaceBasis<T>& b)
{
    double worst = 0.0;
    for (const auto& x : a.vectors)
        for (const auto& y : b.vectors)
        {
            const double scale = std::max(norm(x) * norm(y), 1e-300);
            worst = std::max(worst, std::abs(to_double(dot(x, y))) / scale);
        }
    return worst;
}

} // namespace

template <Scalar T>
InducedMap<T> induced_map(const CosheafMap<T>& m, int degree, const HomologyResult<T>& source,
                          const HomologyResult<T>& target)
{
    const MapVerdict verdict = check_cosheaf_map(m);
    if (!verdict.passed)
        throw LesError("induced_map: the cosheaf map does not satisfy the commuting condition");
    if (degree != 0 && degree != 1)
        throw LesError("induced_map: degree must be 0 or 1");

    const Matrix<T> chain = m.chain_matrix(degree);
    const SubspaceBasis<T>& src = degree == 1 ? source.h1 : source.h0;
    const SubspaceBasis<T>& tgt = degree == 1 ? target.h1 : target.h0;
    if (chain.cols() != src.ambient_dim || chain.rows() != tgt.ambient_dim)
        throw LesError("induced_map: homology bases do not match the map's chain spaces");

    if (src.empty())
        return finish(Matrix<T>(tgt.dim(), 0), chain.norm());
    const Matrix<T> y = chain * src.as_matrix();
    if (degree == 0)
        return finish(projection_coordinates(y, tgt), chain.norm());
    // the image of a cycle is a cycle, so it has exact coordinates in the target basis
    const Matrix<T> tgt_basis = tgt.empty() ? Matrix<T>(tgt.ambient_dim, 0) : tgt.as_matrix();
    try
    {
        return finish(solve_in_image(tgt_basis, y), chain.norm());
    }
    catch (const LinalgError& ex)
    {
        throw LesError(std::string("induced_map: image of a cycle is not a cycle: ") + ex.what());
    }
}

template <Scalar T>
ConnectingMap<T> connecting_map(const StructuralSequence<T>& seq, const HomologyResult<T>& force,
                                const HomologyResult<T>& anchored, const std::vector<Matrix<T>>* edge_sections)
{
    const auto& sections = edge_sections ? *edge_sections : seq.edge_sections;
    const Cosheaf<T>& moment = *seq.moment;
    const Cosheaf<T>& anch = *seq.anchored;
    if (sections.size() != anch.base.edge_count())
        throw LesError("connecting_map: one section per edge is required");
    const Matrix<T> moment_boundary = assemble_boundary(moment);
    const auto vo = moment.vertex_offsets();

    double section_norm = 0.0;
    for (const auto& sec : sections)
        section_norm = std::max(section_norm, sec.norm());

    ConnectingMap<T> out;
    for (const auto& cycle : anchored.h1.vectors)
    {
        const Chain<T> w = chain_unpack(anch, 1, cycle);
        Chain<T> lifted{1, {}};
        for (std::size_t e = 0; e < w.components.size(); ++e)
            lifted.components.push_back(sections[e] * w.components[e]);
        const Vector<T> pushed = moment_boundary * chain_pack(moment, lifted);

        Chain<T> pulled{0, {}};
        for (std::size_t v = 0; v < moment.base.vertex_count; ++v)
        {
            const Vector<T> y(pushed.begin() + static_cast<std::ptrdiff_t>(vo[v]),
                              pushed.begin() + static_cast<std::ptrdiff_t>(vo[v + 1]));
            try
            {
                pulled.components.push_back(solve_in_image(seq.phi.vertex_maps[v], y));
            }
            catch (const LinalgError&)
            {
                throw LesError("connecting_map: residual moment at vertex " + std::to_string(v) +
                               " after pushing a cycle through the boundary");
            }
        }
        out.resultants.push_back(chain_pack(*seq.force, pulled));
    }
    const Matrix<T> coords =
        projection_coordinates(Matrix<T>::from_columns(out.resultants, force.h0.ambient_dim), force.h0);
    const Matrix<T> h0_basis = force.h0.empty() ? Matrix<T>(force.h0.ambient_dim, 0) : force.h0.as_matrix();
    const Matrix<T> velocities = h0_basis * coords;
    for (std::size_t j = 0; j < velocities.cols(); ++j)
        out.velocities.push_back(velocities.column(j));
    out.map = finish(coords, moment_boundary.norm() * section_norm);
    return out;
}

template <Scalar T>
ConnectingMap<T> connecting_map(const Framework& f)
{
    const StructuralSequence<T> seq = build_sequence<T>(f);
    return connecting_map(seq, homology(*seq.force), homology(*seq.anchored));
}

template <Scalar T>
std::vector<Matrix<T>> randomized_sections(const StructuralSequence<T>& seq, std::uint64_t seed)
{
    std::mt19937_64 rng(seed);
    std::vector<Matrix<T>> out;
    for (std::size_t e = 0; e < seq.edge_sections.size(); ++e)
    {
        const Matrix<T>& s = seq.edge_sections[e];
        const Matrix<T>& embed = seq.phi.edge_maps[e];
        Matrix<T> coeffs(embed.cols(), s.cols());
        for (std::size_t i = 0; i < coeffs.rows(); ++i)
            for (std::size_t j = 0; j < coeffs.cols(); ++j)
                coeffs(i, j) = T(static_cast<long>(rng() % 19) - 9);
        out.push_back(s + embed * coeffs);
    }
    return out;
}

template <Scalar T>
LesAnalysis<T> analyze(const Framework& f)
{
    LesAnalysis<T> a;
    a.seq = build_sequence<T>(f);
    a.force = homology(*a.seq.force);
    a.moment = homology(*a.seq.moment);
    a.anchored = homology(*a.seq.anchored);
    a.phi1 = induced_map(a.seq.phi, 1, a.force, a.moment);
    a.pi1 = induced_map(a.seq.pi, 1, a.moment, a.anchored);
    a.phi0 = induced_map(a.seq.phi, 0, a.force, a.moment);
    a.pi0 = induced_map(a.seq.pi, 0, a.moment, a.anchored);
    a.theta = connecting_map(a.seq, a.force, a.anchored);

    a.anchored_from_frame = lift(a.pi1.image, a.anchored.h1);
    a.anchored_orthogonal = complement_within(a.anchored_from_frame, a.anchored.h1);

    a.connected = f.connected();
    if (a.connected)
    {
        a.rigid = rigid_body_space<T>(f);
        a.mechanisms = complement_within(a.rigid, a.force.h0);
    }
    return a;
}

bool LesReport::all_passed() const
{
    return std::all_of(checks.begin(), checks.end(), [](const LesCheck& c) { return c.passed; }) &&
           std::all_of(counting.begin(), counting.end(),
                       [](const CountingRule& r) { return !r.applicable || r.holds; });
}

const LesCheck* LesReport::check(const std::string& id) const
{
    for (const auto& c : checks)
        if (c.id == id)
            return &c;
    return nullptr;
}

const CountingRule* LesReport::rule(const std::string& name) const
{
    for (const auto& r : counting)
        if (r.name == name)
            return &r;
    return nullptr;
}

namespace {

std::vector<CountingRule> counting_table(const Framework& f, const HomologyDims& force, const HomologyDims& moment,
                                         const HomologyDims& anchored, std::size_t rigid, std::size_t mechanisms)
{
    const auto nv = static_cast<long long>(f.vertex_count());
    const auto ne = static_cast<long long>(f.edge_count());
    const long long n = f.dim();
    const long long couple = n == 2 ? 3 : 6;
    const long long h1f = static_cast<long long>(force.h1), h0f = static_cast<long long>(force.h0);
    const long long h1m = static_cast<long long>(moment.h1), h0m = static_cast<long long>(moment.h0);
    const long long h1n = static_cast<long long>(anchored.h1);
    const long long r = static_cast<long long>(rigid), m = static_cast<long long>(mechanisms);

    const long long cycle_count = couple * (ne - nv + 1);
    const long long reduced_maxwell = ne - n * nv + couple;
    const bool ok = f.connected();

    std::vector<CountingRule> rules = {
        {"maxwell-calladine", "n|V| - |E| = rigid + mechanisms - dim H1 F", n * nv - ne, r + m - h1f, ok, false},
        {"circuit-rank", n == 2 ? "dim H1 M = 3(|E| - |V| + 1)" : "dim H1 M = 6(|E| - |V| + 1)", cycle_count, h1m,
         ok, false},
        {"frame-freedoms", n == 2 ? "dim H0 M = 3" : "dim H0 M = 6", couple, h0m, ok, false},
        {"anchored-count", n == 2 ? "dim H1 N = 2|E| - |V|" : "dim H1 N = 5|E| - 3|V|",
         n == 2 ? 2 * ne - nv : 5 * ne - 3 * nv, h1n, ok, false},
        {"anchored-decomposition",
         "cycle count - reduced Maxwell count = dim H1 M - (dim H1 F - mechanisms)", cycle_count - reduced_maxwell,
         h1m - (h1f - m), ok, false},
        {"count-difference", "dim H1 N = (dim H1 M - dim H0 M) - (dim H1 F - dim H0 F)", h1n,
         (h1m - h0m) - (h1f - h0f), ok, false},
        {"les-euler", "(dim H1 F - mechanisms) + dim H1 N - dim H1 M = 0", 0, (h1f - m) + h1n - h1m, ok, false},
    };
    for (auto& rule : rules)
        rule.holds = rule.applicable && rule.expected == rule.computed;
    return rules;
}

} // namespace

template <Scalar T>
LesReport summarize(const LesAnalysis<T>& a, const Framework& f)
{
    LesReport r;
    r.mode = is_exact_v<T> ? Arithmetic::Exact : Arithmetic::Float;
    r.dim = f.dim();
    r.vertices = f.vertex_count();
    r.edges = f.edge_count();
    r.connected = a.connected;
    r.force = {a.force.h1_dim(), a.force.h0_dim()};
    r.moment = {a.moment.h1_dim(), a.moment.h0_dim()};
    r.anchored = {a.anchored.h1_dim(), a.anchored.h0_dim()};
    r.rigid_dim = a.rigid.dim();
    r.mechanism_dim = a.mechanisms.dim();
    r.rank_phi1 = a.phi1.rank;
    r.rank_pi1 = a.pi1.rank;
    r.rank_theta = a.theta.map.rank;
    r.rank_phi0 = a.phi0.rank;
    r.rank_pi0 = a.pi0.rank;
    r.counting = counting_table(f, r.force, r.moment, r.anchored, r.rigid_dim, r.mechanism_dim);
    if (!a.connected)
        return r;

    const auto h1f = static_cast<long long>(r.force.h1);
    const auto h1m = static_cast<long long>(r.moment.h1);
    const auto h1n = static_cast<long long>(r.anchored.h1);
    const auto mech = static_cast<long long>(r.mechanism_dim);

    r.checks.push_back(make_check("a", "phi* is injective on H1 F", static_cast<long long>(r.rank_phi1), h1f));
    r.checks.push_back(make_check("b", "im phi* = ker pi* in H1 M",
                                  same_subspace(lift(a.phi1.image, a.moment.h1), lift(a.pi1.kernel, a.moment.h1))));
    r.checks.push_back(make_check("c", "im pi* = ker theta in H1 N",
                                  same_subspace(lift(a.pi1.image, a.anchored.h1),
                                                lift(a.theta.map.kernel, a.anchored.h1))));
    r.checks.push_back(make_check("d", "im theta = mechanisms of F",
                                  same_subspace(lift(a.theta.map.image, a.force.h0), a.mechanisms)));
    r.checks.push_back(make_check("d0", "im theta = ker phi* in H0 F",
                                  same_subspace(lift(a.theta.map.image, a.force.h0), lift(a.phi0.kernel, a.force.h0))));
    {
        const double overlap = max_inner_product(lift(a.theta.map.image, a.force.h0), a.rigid);
        const bool ok = is_exact_v<T> ? overlap == 0.0 : overlap <= kAngleTolerance;
        r.checks.push_back({"d1", "im theta is orthogonal to the rigid-body motions", ok, overlap});
    }
    r.checks.push_back(make_check("e", "H0 N = 0", static_cast<long long>(r.anchored.h0), 0));
    r.checks.push_back(make_check("e0", "phi* maps H0 F onto H0 M", static_cast<long long>(r.rank_phi0),
                                  static_cast<long long>(r.moment.h0)));
    r.checks.push_back(make_check("f", "(dim H1 F - dim mechanisms) + dim H1 N - dim H1 M = 0",
                                  (h1f - mech) + h1n - h1m, 0));
    r.checks.push_back(make_check("g", "dim H1 N = rank pi* + rank theta", h1n,
                                  static_cast<long long>(r.rank_pi1 + r.rank_theta)));
    return r;
}

template <Scalar T>
LesReport verify_les(const Framework& f)
{
    return summarize(analyze<T>(f), f);
}

template <Scalar T>
std::vector<CountingRule> counting_rules(const Framework& f)
{
    return verify_les<T>(f).counting;
}

std::vector<ScanRow> perturbation_scan(const Framework& f, const std::vector<Rational>& magnitudes,
                                       const std::vector<std::uint64_t>& seeds)
{
    if (!f.connected())
        throw LesError("perturbation_scan: framework is not connected");
    std::vector<std::future<ScanRow>> pending;
    for (const auto& magnitude : magnitudes)
        for (auto seed : seeds)
            pending.push_back(std::async(std::launch::async, [&f, magnitude, seed] {
                ScanRow row;
                row.magnitude = magnitude;
                row.seed = seed;
                try
                {
                    const Framework moved = perturb(f, magnitude, seed);
                    const LesAnalysis<Rational> a = analyze<Rational>(moved);
                    row.force = {a.force.h1_dim(), a.force.h0_dim()};
                    row.moment = {a.moment.h1_dim(), a.moment.h0_dim()};
                    row.anchored = {a.anchored.h1_dim(), a.anchored.h0_dim()};
                    row.rank_phi1 = a.phi1.rank;
                    row.rank_pi1 = a.pi1.rank;
                    row.rank_theta = a.theta.map.rank;
                }
                catch (const FrameworkError& ex)
                {
                    row.valid = false;
                    row.error = ex.what();
                }
                return row;
            }));
    std::vector<ScanRow> rows;
    rows.reserve(pending.size());
    for (auto& p : pending)
        rows.push_back(p.get());
    return rows;
}

#define MFRAME_INSTANTIATE_LES(T)                                                                              \
    template InducedMap<T> induced_map<T>(const CosheafMap<T>&, int, const HomologyResult<T>&,                 \
                                          const HomologyResult<T>&);                                           \
    template ConnectingMap<T> connecting_map<T>(const StructuralSequence<T>&, const HomologyResult<T>&,        \
                                                const HomologyResult<T>&, const std::vector<Matrix<T>>*);      \
    template ConnectingMap<T> connecting_map<T>(const Framework&);                                             \
    template std::vector<Matrix<T>> randomized_sections<T>(const StructuralSequence<T>&, std::uint64_t);       \
    template LesAnalysis<T> analyze<T>(const Framework&);                                                      \
    template LesReport summarize<T>(const LesAnalysis<T>&, const Framework&);                                  \
    template LesReport verify_les<T>(const Framework&);                                                        \
    template std::vector<CountingRule> counting_rules<T>(const Framework&);

MFRAME_INSTANTIATE_LES(Rational)
MFRAME_INSTANTIATE_LES(double)

#undef MFRAME_INSTANTIATE_LES

} // namespace mframe
