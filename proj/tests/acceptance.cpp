// Acceptance run: one PASS/FAIL line per criterion, nonzero exit if any fails.
#include <chrono>
#include <functional>
#include <iomanip>
#include <iostream>
#include <random>
#include <sstream>

#include "corpus.hpp"
#include "json.hpp"
#include "mframe/cli.hpp"
#include "mframe/les.hpp"

using namespace mframe;
using Q = Rational;
using Json = nlohmann::ordered_json;

namespace {

const std::string kData = MFRAME_DATA_DIR;

struct Outcome
{
    bool passed = true;
    std::string detail;

    void require(bool ok, const std::string& what)
    {
        if (!ok && passed)
        {
            passed = false;
            detail = what;
        }
    }
};

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0)
{
    return std::chrono::duration<double>(Clock::now() - t0).count();
}

bool criterion(int id, const std::string& title, const std::function<void(Outcome&)>& body)
{
    Outcome o;
    const auto t0 = Clock::now();
    try
    {
        body(o);
    }
    catch (const std::exception& ex)
    {
        o.passed = false;
        o.detail = std::string("exception: ") + ex.what();
    }
    std::ostringstream line;
    line << (o.passed ? "PASS" : "FAIL") << "  " << id << "  " << title << "  (" << std::fixed << std::setprecision(2)
         << seconds_since(t0) << " s)";
    if (!o.passed)
        line << "  " << o.detail;
    std::cout << line.str() << std::endl;
    return o.passed;
}

Json analyze_json(const std::string& file)
{
    std::ostringstream out, err;
    const int code = run_cli({"mframe", "analyze", kData + "/" + file, "--json"}, out, err);
    if (code != kExitOk)
        throw std::runtime_error("analyze " + file + " exited with " + std::to_string(code) + ": " + err.str());
    return Json::parse(out.str());
}

bool dims_are(const Json& h, std::size_t h1, std::size_t h0)
{
    return h["h1"] == h1 && h["h0"] == h0;
}

/// Everything that analyze reports as a number.
std::vector<std::size_t> signature(const LesReport& r)
{
    return {r.force.h1,  r.force.h0,   r.moment.h1, r.moment.h0,   r.anchored.h1, r.anchored.h0, r.rigid_dim,
            r.mechanism_dim, r.rank_phi1, r.rank_pi1, r.rank_theta, r.rank_phi0,   r.rank_pi0};
}

Framework rigidly_moved(const Framework& f)
{
    if (f.dim() == 2)
        return transform(f, Matrix<Q>::from_rows({{Q(3, 5), Q(-4, 5)}, {Q(4, 5), Q(3, 5)}}), Point{Q(7, 3), -1});
    return transform(f,
                     Matrix<Q>::from_rows({{Q(1, 9), Q(-4, 9), Q(8, 9)},
                                           {Q(8, 9), Q(4, 9), Q(1, 9)},
                                           {Q(-4, 9), Q(7, 9), Q(4, 9)}}),
                     Point{1, Q(-1, 2), 3});
}

std::vector<std::size_t> rotated_order(std::size_t n)
{
    std::vector<std::size_t> p(n);
    for (std::size_t i = 0; i < n; ++i)
        p[i] = (n - 1 - i + n / 2) % n;
    return p;
}

} // namespace

int main()
{
    const auto corpus = corpus::full();
    bool all = true;

    all &= criterion(1, "square frame homology table", [](Outcome& o) {
        const auto t0 = Clock::now();
        const Json j = analyze_json("square.fw");
        const double t = seconds_since(t0);
        o.require(j["mode"] == "exact", "not exact mode");
        o.require(dims_are(j["homology"]["F"], 0, 4), "F dims");
        o.require(dims_are(j["homology"]["M"], 3, 3), "M dims");
        o.require(dims_are(j["homology"]["N"], 4, 0), "N dims");
        o.require(t < 1.0, "runtime " + std::to_string(t) + " s");
    });

    all &= criterion(2, "Desargues homology table and ranks", [](Outcome& o) {
        const auto t0 = Clock::now();
        const Json j = analyze_json("desargues.fw");
        const double t = seconds_since(t0);
        const Framework expected = make_desargues(Q(1, 2));
        o.require(format_framework(load_framework(kData + "/desargues.fw")) == format_framework(expected),
                  "data file differs from make_desargues(1/2)");
        o.require(dims_are(j["homology"]["F"], 1, 4), "F dims");
        o.require(dims_are(j["homology"]["M"], 12, 3), "M dims");
        o.require(dims_are(j["homology"]["N"], 12, 0), "N dims");
        o.require(j["ranks"]["phi1"] == 1, "rank phi*");
        o.require(j["ranks"]["pi1"] == 11, "rank pi*");
        o.require(j["ranks"]["theta"] == 1, "rank theta");
        o.require(t < 5.0, "runtime " + std::to_string(t) + " s");
    });

    all &= criterion(3, "counting rules on 25 planar and 25 spatial random frameworks", [](Outcome& o) {
        const auto t0 = Clock::now();
        for (const char* kind : {"random2d", "random3d"})
            for (std::uint64_t seed = 1; seed <= 25; ++seed)
            {
                const Framework f = make_named(kind, seed);
                const std::string tag = std::string(kind) + "/" + std::to_string(seed);
                o.require(f.connected(), tag + " disconnected");
                o.require(f.vertex_count() <= (f.dim() == 2 ? 15u : 10u), tag + " too large");
                const auto rules = counting_rules<Q>(f);
                for (const auto& rule : rules)
                    if (rule.name == "maxwell-calladine" || rule.name == "circuit-rank" ||
                        rule.name == "anchored-count")
                        o.require(rule.applicable && rule.holds, tag + " " + rule.name);
            }
        const double t = seconds_since(t0);
        o.require(t < 60.0, "runtime " + std::to_string(t) + " s");
    });

    all &= criterion(4, "exactness checks on the corpus", [&](Outcome& o) {
        for (const auto& entry : corpus)
        {
            const LesReport r = verify_les<Q>(entry.framework);
            o.require(r.checks.size() == 10, entry.name + " missing checks");
            for (const auto& c : r.checks)
                o.require(c.passed, entry.name + " check " + c.id);
        }
    });

    all &= criterion(5, "image of theta equals the mechanisms", [&](Outcome& o) {
        for (const auto& entry : corpus)
        {
            const auto a = analyze<Q>(entry.framework);
            SubspaceBasis<Q> image{a.force.h0.ambient_dim, {}};
            if (!a.theta.map.image.empty())
                for (const auto& c : a.theta.map.image.vectors)
                    image.vectors.push_back(a.force.h0.as_matrix() * c);
            o.require(contains(image, a.mechanisms).holds, entry.name + " mechanisms not in image");
            o.require(contains(a.mechanisms, image).holds, entry.name + " image not in mechanisms");
        }
        const auto sq = analyze<Q>(make_named("square"));
        o.require(sq.theta.map.image.dim() == 1, "square image is not a line");
        if (sq.theta.map.image.dim() != 1)
            return;
        const Vector<Q> v = sq.force.h0.as_matrix() * sq.theta.map.image.vectors[0];
        const Q corner = abs_value(v[0]);
        o.require(corner != 0, "square corner 0 does not move");
        for (const auto& x : v)
            o.require(abs_value(x) == corner, "square components differ in magnitude");
    });

    all &= criterion(6, "Desargues perturbation migration", [](Outcome& o) {
        std::vector<std::uint64_t> seeds;
        for (std::uint64_t s = 1; s <= 10; ++s)
            seeds.push_back(s);
        const auto rows = perturbation_scan(make_desargues(Q(1, 2)), {Q(0), Q(1, 100)}, seeds);
        o.require(rows.size() == 20, "row count");
        for (const auto& row : rows)
        {
            const std::string tag = "seed " + std::to_string(row.seed);
            o.require(row.valid, tag + " skipped: " + row.error);
            if (row.magnitude == 0)
            {
                o.require(row.force == HomologyDims{1, 4} && row.moment == HomologyDims{12, 3} &&
                              row.anchored == HomologyDims{12, 0},
                          tag + " baseline dims");
                o.require(row.rank_phi1 == 1 && row.rank_pi1 == 11 && row.rank_theta == 1, tag + " baseline ranks");
            }
            else
            {
                o.require(row.force == HomologyDims{0, 3} && row.moment == HomologyDims{12, 3} &&
                              row.anchored == HomologyDims{12, 0},
                          tag + " perturbed dims");
                o.require(row.rank_phi1 == 0 && row.rank_pi1 == 12, tag + " perturbed ranks");
            }
        }
    });

    all &= criterion(7, "float ranks agree with exact ranks", [&](Outcome& o) {
        for (const auto& entry : corpus)
            o.require(signature(verify_les<Q>(entry.framework)) == signature(verify_les<double>(entry.framework)),
                      entry.name);
        std::mt19937_64 rng(7);
        std::uniform_int_distribution<std::size_t> size(1, 24);
        std::uniform_int_distribution<int> entry(-6, 6);
        for (int trial = 0; trial < 100; ++trial)
        {
            const std::size_t rows = size(rng), cols = size(rng), inner = size(rng) / 2 + 1;
            Matrix<Q> a(rows, inner), b(inner, cols);
            for (std::size_t i = 0; i < rows; ++i)
                for (std::size_t k = 0; k < inner; ++k)
                    a(i, k) = entry(rng);
            for (std::size_t k = 0; k < inner; ++k)
                for (std::size_t j = 0; j < cols; ++j)
                    b(k, j) = entry(rng);
            const Matrix<Q> m = a * b;
            o.require(rank(m) == rank(m.cast<double>()), "random matrix " + std::to_string(trial));
        }
    });

    all &= criterion(8, "theta is independent of the section", [&](Outcome& o) {
        for (const auto& entry : corpus)
        {
            const auto seq = build_sequence<Q>(entry.framework);
            const auto hf = homology(*seq.force), hn = homology(*seq.anchored);
            const auto s1 = randomized_sections(seq, 1), s2 = randomized_sections(seq, 2);
            const auto t1 = connecting_map(seq, hf, hn, &s1), t2 = connecting_map(seq, hf, hn, &s2);
            o.require(s1 != s2, entry.name + " sections coincide");
            o.require(t1.map.matrix == t2.map.matrix, entry.name + " matrices differ");
            o.require(t1.velocities == t2.velocities, entry.name + " projected resultants differ");
        }
    });

    all &= criterion(9, "reorientation, relabelling and rigid motions", [&](Outcome& o) {
        for (const auto& entry : corpus)
        {
            const Framework& f = entry.framework;
            const auto base = signature(verify_les<Q>(f));
            for (std::size_t e = 0; e < f.edge_count(); ++e)
                o.require(signature(verify_les<Q>(reorient_edge(f, e))) == base,
                          entry.name + " edge " + std::to_string(e) + " reversed");
            o.require(signature(verify_les<Q>(permute_vertices(f, rotated_order(f.vertex_count())))) == base,
                      entry.name + " permuted");
            o.require(signature(verify_les<Q>(rigidly_moved(f))) == base, entry.name + " moved");
        }
    });

    std::cout << (all ? "all criteria passed" : "some criteria failed") << std::endl;
    return all ? 0 : 1;
}
