#include "mframe/report.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <numbers>
#include <sstream>

#include "json.hpp"

namespace mframe {

using Json = nlohmann::ordered_json;

std::uint64_t fnv1a64(std::string_view bytes)
{
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char c : bytes)
    {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    return h;
}

std::string digest_string(std::string_view bytes)
{
    char buf[32];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(fnv1a64(bytes)));
    return std::string("fnv1a64:") + buf;
}

namespace {

Json scalar_json(const Rational& x) { return format_rational(x); }
Json scalar_json(double x) { return x; }

template <Scalar T>
Json vector_json(const Vector<T>& v)
{
    Json out = Json::array();
    for (const auto& x : v)
        out.push_back(scalar_json(x));
    return out;
}

/// Splits a flat chain into per-cell arrays.
template <Scalar T>
Json chain_json(const Cosheaf<T>& k, int degree, const Vector<T>& flat)
{
    Json out = Json::array();
    for (const auto& c : chain_unpack(k, degree, flat).components)
        out.push_back(vector_json(c));
    return out;
}

template <Scalar T>
Json basis_json(const Cosheaf<T>& k, int degree, const SubspaceBasis<T>& b)
{
    Json out = Json::array();
    for (const auto& v : b.vectors)
        out.push_back(chain_json(k, degree, v));
    return out;
}

template <Scalar T>
Json matrix_json(const Matrix<T>& m)
{
    Json out = Json::array();
    for (std::size_t i = 0; i < m.rows(); ++i)
    {
        Json row = Json::array();
        for (std::size_t j = 0; j < m.cols(); ++j)
            row.push_back(scalar_json(m(i, j)));
        out.push_back(std::move(row));
    }
    return out;
}

Json dims_json(const HomologyDims& d) { return Json{{"h1", d.h1}, {"h0", d.h0}}; }

std::string status_of(const LesReport& r)
{
    if (!r.connected)
        return "not-applicable";
    return r.all_passed() ? "pass" : "fail";
}

template <Scalar T>
SubspaceBasis<T> lift_coords(const SubspaceBasis<T>& coords, const SubspaceBasis<T>& basis)
{
    SubspaceBasis<T> out{basis.ambient_dim, {}};
    for (const auto& c : coords.vectors)
        out.vectors.push_back(basis.as_matrix() * c);
    return out;
}

std::string pad(std::string s, std::size_t width)
{
    if (s.size() < width)
        s.append(width - s.size(), ' ');
    return s;
}

std::string lpad(const std::string& s, std::size_t width)
{
    return s.size() < width ? std::string(width - s.size(), ' ') + s : s;
}

} // namespace

template <Scalar T>
std::string report_json(const LesAnalysis<T>& a, const LesReport& r, const ReportOptions& opt)
{
    Json doc;
    doc["schema"] = kReportSchema;
    doc["tool"] = {{"name", kToolName}, {"version", kToolVersion}};
    doc["input"] = {{"name", opt.input_name}, {"digest", opt.input_digest}};
    doc["mode"] = r.mode == Arithmetic::Exact ? "exact" : "float";
    doc["framework"] = {{"dim", r.dim}, {"vertices", r.vertices}, {"edges", r.edges}, {"connected", r.connected}};
    doc["homology"] = {{"F", dims_json(r.force)}, {"M", dims_json(r.moment)}, {"N", dims_json(r.anchored)}};
    if (opt.dims_only)
        return doc.dump(2) + "\n";

    doc["rigid_dim"] = r.rigid_dim;
    doc["mechanism_dim"] = r.mechanism_dim;
    doc["ranks"] = {{"phi1", r.rank_phi1}, {"pi1", r.rank_pi1}, {"theta", r.rank_theta},
                    {"phi0", r.rank_phi0}, {"pi0", r.rank_pi0}};

    Json checks = Json::array();
    for (const auto& c : r.checks)
        checks.push_back(
            {{"id", c.id}, {"description", c.description}, {"passed", c.passed}, {"residual", c.residual}});
    doc["checks"] = std::move(checks);

    Json rules = Json::array();
    for (const auto& c : r.counting)
    {
        Json rule = {{"name", c.name}, {"formula", c.formula}, {"applicable", c.applicable}};
        if (c.applicable)
        {
            rule["expected"] = c.expected;
            rule["computed"] = c.computed;
            rule["holds"] = c.holds;
        }
        rules.push_back(std::move(rule));
    }
    doc["counting_rules"] = std::move(rules);

    doc["mechanisms"] = basis_json(*a.seq.force, 0, lift_coords(a.theta.map.image, a.force.h0));
    Json resultants = Json::array();
    for (const auto& x : a.theta.resultants)
        resultants.push_back(chain_json(*a.seq.force, 0, x));
    doc["theta"] = {{"matrix", matrix_json(a.theta.map.matrix)}, {"resultants", std::move(resultants)}};

    if (opt.chains)
        doc["chains"] = {
            {"F", {{"h1", basis_json(*a.seq.force, 1, a.force.h1)}, {"h0", basis_json(*a.seq.force, 0, a.force.h0)}}},
            {"M",
             {{"h1", basis_json(*a.seq.moment, 1, a.moment.h1)}, {"h0", basis_json(*a.seq.moment, 0, a.moment.h0)}}},
            {"N",
             {{"h1", basis_json(*a.seq.anchored, 1, a.anchored.h1)},
              {"h0", basis_json(*a.seq.anchored, 0, a.anchored.h0)}}},
        };
    doc["status"] = status_of(r);
    return doc.dump(2) + "\n";
}

std::string report_text(const LesReport& r, const ReportOptions& opt)
{
    std::ostringstream os;
    os << kToolName << ' ' << kToolVersion << "  input " << opt.input_name << "  " << opt.input_digest << '\n';
    os << "framework  dim " << r.dim << "  |V| " << r.vertices << "  |E| " << r.edges << "  "
       << (r.connected ? "connected" : "disconnected") << "  mode " << (r.mode == Arithmetic::Exact ? "exact" : "float")
       << "\n\n";
    os << "          " << lpad("F", 5) << lpad("M", 5) << lpad("N", 5) << '\n';
    os << "dim H1    " << lpad(std::to_string(r.force.h1), 5) << lpad(std::to_string(r.moment.h1), 5)
       << lpad(std::to_string(r.anchored.h1), 5) << '\n';
    os << "dim H0    " << lpad(std::to_string(r.force.h0), 5) << lpad(std::to_string(r.moment.h0), 5)
       << lpad(std::to_string(r.anchored.h0), 5) << '\n';
    if (opt.dims_only)
        return os.str();

    os << '\n';
    if (r.connected)
        os << "rigid " << r.rigid_dim << "  mechanisms " << r.mechanism_dim << '\n';
    os << "rank  phi* " << r.rank_phi1 << "  pi* " << r.rank_pi1 << "  theta " << r.rank_theta << "  phi*(H0) "
       << r.rank_phi0 << "  pi*(H0) " << r.rank_pi0 << "\n\n";

    os << "checks\n";
    if (r.checks.empty())
        os << "  not applicable (disconnected framework)\n";
    for (const auto& c : r.checks)
        os << "  " << (c.passed ? "pass" : "FAIL") << "  " << pad(c.id, 3) << pad(c.description, 54) << " residual "
           << format_short(c.residual) << '\n';

    os << "\ncounting rules\n";
    for (const auto& c : r.counting)
    {
        os << "  " << (c.applicable ? (c.holds ? "pass" : "FAIL") : "n/a ") << "  " << pad(c.name, 24);
        if (c.applicable)
            os << pad(std::to_string(c.expected) + " = " + std::to_string(c.computed), 12);
        else
            os << pad("", 12);
        os << c.formula << '\n';
    }
    os << "\nstatus " << status_of(r) << '\n';
    return os.str();
}

std::string scan_csv(const std::vector<ScanRow>& rows)
{
    std::ostringstream os;
    os << "magnitude,seed,h1_F,h0_F,h1_M,h0_M,h1_N,h0_N,rank_phi,rank_pi,rank_theta,status\n";
    for (const auto& r : rows)
    {
        os << format_rational(r.magnitude) << ',' << r.seed << ',';
        if (r.valid)
            os << r.force.h1 << ',' << r.force.h0 << ',' << r.moment.h1 << ',' << r.moment.h0 << ',' << r.anchored.h1
               << ',' << r.anchored.h0 << ',' << r.rank_phi1 << ',' << r.rank_pi1 << ',' << r.rank_theta << ",ok\n";
        else
            os << ",,,,,,,,,skipped\n";
    }
    return os.str();
}

GeneratorRef parse_generator(std::string_view text)
{
    const auto colon = text.find(':');
    if (colon == std::string_view::npos)
        throw ReportError("generator must look like SPACE:INDEX, got '" + std::string(text) + "'");
    GeneratorRef g;
    g.space = std::string(text.substr(0, colon));
    const std::string_view idx = text.substr(colon + 1);
    if (g.space != "F" && g.space != "M" && g.space != "N" && g.space != "Nperp")
        throw ReportError("unknown generator space '" + g.space + "' (expected F, M, N or Nperp)");
    if (idx.empty() || !std::all_of(idx.begin(), idx.end(), [](char c) { return c >= '0' && c <= '9'; }))
        throw ReportError("generator index must be a non-negative integer, got '" + std::string(idx) + "'");
    g.index = std::stoul(std::string(idx));
    return g;
}

template <Scalar T>
Vector<T> select_generator(const LesAnalysis<T>& a, const GeneratorRef& g)
{
    const SubspaceBasis<T>* basis = nullptr;
    std::string what;
    if (g.space == "F")
        basis = &a.force.h1, what = "H1 F";
    else if (g.space == "M")
        basis = &a.moment.h1, what = "H1 M";
    else if (g.space == "N")
        basis = &a.anchored.h1, what = "H1 N";
    else if (g.space == "Nperp")
        basis = &a.anchored_orthogonal, what = "the complement of im pi* in H1 N";
    else
        throw ReportError("unknown generator space '" + g.space + "'");
    if (basis->empty())
        throw ReportError("no generators: " + what + " is zero");
    if (g.index >= basis->dim())
        throw ReportError("generator index " + std::to_string(g.index) + " out of range: " + what + " has dimension " +
                          std::to_string(basis->dim()));
    return basis->vectors[g.index];
}

template <Scalar T>
Vector<T> resultant_of(const LesAnalysis<T>& a, const Vector<T>& anchored_cycle)
{
    const std::size_t len = a.seq.force->c0_dim();
    Vector<T> out(len, T(0));
    if (a.anchored.h1.empty())
        return out;
    const Vector<T> coords = solve_in_image(a.anchored.h1.as_matrix(), anchored_cycle);
    for (std::size_t j = 0; j < coords.size(); ++j)
        for (std::size_t i = 0; i < len; ++i)
            out[i] += coords[j] * a.theta.resultants[j][i];
    return out;
}

namespace {

struct Projected
{
    double x = 0.0;
    double y = 0.0;
};

/// Cabinet-style oblique projection for 3D input.
Projected project(const std::vector<double>& p)
{
    if (p.size() == 2)
        return {p[0], p[1]};
    const double c = 0.5 * std::cos(std::numbers::pi / 6), s = 0.5 * std::sin(std::numbers::pi / 6);
    return {p[0] + c * p[2], p[1] + s * p[2]};
}

std::string fmt(double x)
{
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.2f", x);
    return std::string(std::strcmp(buf, "-0.00") == 0 ? "0.00" : buf);
}

std::string xml_escape(const std::string& s)
{
    std::string out;
    for (char c : s)
    {
        if (c == '<')
            out += "&lt;";
        else if (c == '>')
            out += "&gt;";
        else if (c == '&')
            out += "&amp;";
        else
            out += c;
    }
    return out;
}

} // namespace

template <Scalar T>
std::string render_svg(const LesAnalysis<T>& a, const Framework& f, const SvgOptions& opt)
{
    const Vector<T> cycle = select_generator(a, opt.generator);
    const std::string& space = opt.generator.space;
    const bool anchored = space == "N" || space == "Nperp";
    const Cosheaf<T>& k = space == "F" ? *a.seq.force : space == "M" ? *a.seq.moment : *a.seq.anchored;
    const Chain<T> edge_values = chain_unpack(k, 1, cycle);

    const std::size_t nv = f.vertex_count();
    const auto n = static_cast<std::size_t>(f.dim());
    std::vector<Projected> pos(nv);
    for (std::size_t v = 0; v < nv; ++v)
    {
        std::vector<double> p;
        for (const auto& c : f.position(v))
            p.push_back(to_double(c));
        pos[v] = project(p);
    }

    std::vector<Projected> arrows(nv);
    double longest = 0.0;
    if (anchored)
    {
        const Vector<T> res = resultant_of(a, cycle);
        for (std::size_t v = 0; v < nv; ++v)
        {
            std::vector<double> r;
            for (std::size_t i = 0; i < n; ++i)
                r.push_back(to_double(res[n * v + i]));
            arrows[v] = project(r);
            longest = std::max(longest, std::hypot(arrows[v].x, arrows[v].y));
        }
    }

    double xmin = pos[0].x, xmax = pos[0].x, ymin = pos[0].y, ymax = pos[0].y;
    for (const auto& p : pos)
    {
        xmin = std::min(xmin, p.x), xmax = std::max(xmax, p.x);
        ymin = std::min(ymin, p.y), ymax = std::max(ymax, p.y);
    }
    const double width = 640, height = 640, margin = 100, arrow_px = 60;
    const double span = std::max({xmax - xmin, ymax - ymin, 1e-12});
    const double scale = (width - 2 * margin) / span;
    const double ox = margin + 0.5 * ((width - 2 * margin) - scale * (xmax - xmin));
    const double oy = margin + 0.5 * ((height - 2 * margin) - scale * (ymax - ymin));
    auto sx = [&](double x) { return ox + scale * (x - xmin); };
    auto sy = [&](double y) { return height - (oy + scale * (y - ymin)); };

    std::ostringstream os;
    os << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
       << "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"" << width << "\" height=\"" << height
       << "\" viewBox=\"0 0 " << width << ' ' << height << "\">\n"
       << "  <title>" << xml_escape(space + ":" + std::to_string(opt.generator.index)) << "</title>\n"
       << "  <defs><marker id=\"head\" viewBox=\"0 0 10 10\" refX=\"9\" refY=\"5\" markerWidth=\"6\" "
          "markerHeight=\"6\" orient=\"auto\"><path d=\"M0,0 L10,5 L0,10 z\" fill=\"#1a9641\"/></marker></defs>\n"
       << "  <rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";

    os << "  <g id=\"edges\" stroke-linecap=\"round\">\n";
    for (std::size_t e = 0; e < f.edge_count(); ++e)
    {
        const Edge& ed = f.edge(e);
        const auto& values = edge_values.components[e];
        std::string colour = "#444444";
        if (space == "F")
        {
            const double t = to_double(values[0]);
            colour = t > 0 ? "#d7191c" : t < 0 ? "#2c7bb6" : "#999999";
        }
        os << "    <line x1=\"" << fmt(sx(pos[ed.tail].x)) << "\" y1=\"" << fmt(sy(pos[ed.tail].y)) << "\" x2=\""
           << fmt(sx(pos[ed.head].x)) << "\" y2=\"" << fmt(sy(pos[ed.head].y)) << "\" stroke=\"" << colour
           << "\" stroke-width=\"3\"/>\n";
    }
    os << "  </g>\n";

    if (opt.values)
    {
        os << "  <g id=\"edge-values\" font-family=\"monospace\" font-size=\"11\" fill=\"#222222\" "
              "text-anchor=\"middle\">\n";
        for (std::size_t e = 0; e < f.edge_count(); ++e)
        {
            const Edge& ed = f.edge(e);
            std::string label;
            const auto& values = edge_values.components[e];
            for (std::size_t i = 0; i < values.size(); ++i)
            {
                if (i)
                    label += " ";
                label += k.edge_labels[e][i] + "=" + format_short(to_double(values[i]));
            }
            const double mx = 0.5 * (sx(pos[ed.tail].x) + sx(pos[ed.head].x));
            const double my = 0.5 * (sy(pos[ed.tail].y) + sy(pos[ed.head].y));
            os << "    <text x=\"" << fmt(mx) << "\" y=\"" << fmt(my - 6) << "\">" << xml_escape(label) << "</text>\n";
        }
        os << "  </g>\n";
    }

    if (anchored && longest > 0.0)
    {
        os << "  <g id=\"resultants\" stroke=\"#1a9641\" stroke-width=\"2.5\" marker-end=\"url(#head)\">\n";
        for (std::size_t v = 0; v < nv; ++v)
        {
            const double len = std::hypot(arrows[v].x, arrows[v].y);
            if (len <= 1e-12 * longest)
                continue;
            const double x0 = sx(pos[v].x), y0 = sy(pos[v].y);
            const double x1 = x0 + arrow_px * arrows[v].x / longest;
            const double y1 = y0 - arrow_px * arrows[v].y / longest;
            os << "    <line x1=\"" << fmt(x0) << "\" y1=\"" << fmt(y0) << "\" x2=\"" << fmt(x1) << "\" y2=\""
               << fmt(y1) << "\"/>\n";
        }
        os << "  </g>\n";
    }

    os << "  <g id=\"vertices\" font-family=\"monospace\" font-size=\"12\">\n";
    for (std::size_t v = 0; v < nv; ++v)
    {
        os << "    <circle cx=\"" << fmt(sx(pos[v].x)) << "\" cy=\"" << fmt(sy(pos[v].y))
           << "\" r=\"4\" fill=\"black\"/>\n";
        os << "    <text x=\"" << fmt(sx(pos[v].x) + 6) << "\" y=\"" << fmt(sy(pos[v].y) + 14) << "\">" << v
           << "</text>\n";
    }
    os << "  </g>\n</svg>\n";
    return os.str();
}

#define MFRAME_INSTANTIATE_REPORT(T)                                                                           \
    template std::string report_json<T>(const LesAnalysis<T>&, const LesReport&,           \
                                        const ReportOptions&);                                                 \
    template std::string render_svg<T>(const LesAnalysis<T>&, const Framework&, const SvgOptions&);            \
    template Vector<T> select_generator<T>(const LesAnalysis<T>&, const GeneratorRef&);                        \
    template Vector<T> resultant_of<T>(const LesAnalysis<T>&, const Vector<T>&);

MFRAME_INSTANTIATE_REPORT(Rational)
MFRAME_INSTANTIATE_REPORT(double)

#undef MFRAME_INSTANTIATE_REPORT

} // namespace mframe
