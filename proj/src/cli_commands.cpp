#include "mframe/cli.hpp"

#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "mframe/report.hpp"

namespace mframe {

namespace {

std::string read_file(const std::string& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw ParseError("cannot open '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_file(const std::string& path, const std::string& text)
{
    std::ofstream out(path, std::ios::binary);
    if (!out)
        throw std::runtime_error("cannot write '" + path + "'");
    out << text;
    if (!out)
        throw std::runtime_error("write failed for '" + path + "'");
}

template <Scalar T>
int analyze_as(const Framework& f, const AnalyzeOptions& opt, const ReportOptions& ropt, std::ostream& out,
               std::ostream& err)
{
    const LesAnalysis<T> a = analyze<T>(f);
    const LesReport r = summarize(a, f);
    const std::string text = opt.json ? report_json(a, r, ropt) : report_text(r, ropt);
    out << text;
    if (!opt.output.empty())
        write_file(opt.output, text);
    if (!r.connected)
    {
        err << "warning: framework is disconnected; exactness checks and counting rules do not apply\n";
        return kExitOk;
    }
    if (opt.dims_only)
        return r.all_passed() ? kExitOk : kExitCheckFailed;
    if (!r.all_passed())
    {
        for (const auto& c : r.checks)
            if (!c.passed)
                err << "check " << c.id << " failed (" << c.description << "), residual " << format_short(c.residual)
                    << '\n';
        for (const auto& c : r.counting)
            if (c.applicable && !c.holds)
                err << "counting rule " << c.name << " failed: expected " << c.expected << ", computed " << c.computed
                    << '\n';
        return kExitCheckFailed;
    }
    return kExitOk;
}

template <Scalar T>
int svg_as(const Framework& f, const SvgCommandOptions& opt)
{
    const LesAnalysis<T> a = analyze<T>(f);
    SvgOptions sopt;
    sopt.generator = parse_generator(opt.generator);
    sopt.values = opt.values;
    write_file(opt.output, render_svg(a, f, sopt));
    return kExitOk;
}

/// Runs `body`, mapping exceptions onto exit codes.
template <typename Body>
int guarded(std::ostream& err, Body&& body)
{
    try
    {
        return body();
    }
    catch (const FrameworkError& ex)
    {
        err << "error: " << ex.what() << '\n';
        return kExitInvalidInput;
    }
    catch (const ReportError& ex)
    {
        err << "error: " << ex.what() << '\n';
        return kExitInvalidInput;
    }
    catch (const std::invalid_argument& ex)
    {
        err << "error: " << ex.what() << '\n';
        return kExitInvalidInput;
    }
    catch (const LesError& ex)
    {
        err << "error: " << ex.what() << '\n';
        return kExitCheckFailed;
    }
    catch (const std::exception& ex)
    {
        err << "error: " << ex.what() << '\n';
        return kExitInvalidInput;
    }
}

} // namespace

int cmd_analyze(const AnalyzeOptions& opt, std::ostream& out, std::ostream& err)
{
    return guarded(err, [&] {
        const std::string bytes = read_file(opt.input);
        const Framework f = parse_framework(std::string_view(bytes), opt.mode);
        ReportOptions ropt;
        ropt.input_name = opt.input;
        ropt.input_digest = digest_string(bytes);
        ropt.dims_only = opt.dims_only;
        ropt.chains = opt.chains;
        if (opt.mode == Arithmetic::Exact)
            return analyze_as<Rational>(f, opt, ropt, out, err);
        return analyze_as<double>(f, opt, ropt, out, err);
    });
}

std::vector<std::uint64_t> expand_seed_list(const std::vector<std::string>& items)
{
    auto parse_u64 = [](const std::string& s) {
        if (s.empty() || s.find_first_not_of("0123456789") != std::string::npos)
            throw std::invalid_argument("malformed seed '" + s + "'");
        return static_cast<std::uint64_t>(std::stoull(s));
    };
    std::vector<std::uint64_t> out;
    for (const auto& item : items)
    {
        std::stringstream ss(item);
        std::string part;
        while (std::getline(ss, part, ','))
        {
            if (const auto dots = part.find(".."); dots != std::string::npos)
            {
                const std::uint64_t lo = parse_u64(part.substr(0, dots));
                const std::uint64_t hi = parse_u64(part.substr(dots + 2));
                if (hi < lo || hi - lo > 100000)
                    throw std::invalid_argument("bad seed range '" + part + "'");
                for (std::uint64_t s = lo; s <= hi; ++s)
                    out.push_back(s);
            }
            else
                out.push_back(parse_u64(part));
        }
    }
    return out;
}

int cmd_scan(const ScanOptions& opt, std::ostream& out, std::ostream& err)
{
    return guarded(err, [&] {
        const Framework f = load_framework(opt.input, Arithmetic::Exact);
        std::vector<Rational> magnitudes;
        for (const auto& item : opt.magnitudes)
        {
            std::stringstream ss(item);
            std::string part;
            while (std::getline(ss, part, ','))
            {
                Rational m = parse_rational(part);
                if (m < 0)
                    throw std::invalid_argument("magnitude must be non-negative, got '" + part + "'");
                magnitudes.push_back(std::move(m));
            }
        }
        if (magnitudes.empty())
            throw std::invalid_argument("at least one magnitude is required");
        const auto seeds = expand_seed_list(opt.seeds);
        if (seeds.empty())
            throw std::invalid_argument("at least one seed is required");
        const auto rows = perturbation_scan(f, magnitudes, seeds);
        const std::string csv = scan_csv(rows);
        out << csv;
        if (!opt.output.empty())
            write_file(opt.output, csv);
        for (const auto& r : rows)
            if (!r.valid)
                err << "warning: magnitude " << format_rational(r.magnitude) << " seed " << r.seed
                    << " skipped: " << r.error << '\n';
        return static_cast<int>(kExitOk);
    });
}

int cmd_svg(const SvgCommandOptions& opt, std::ostream& out, std::ostream& err)
{
    return guarded(err, [&] {
        const Framework f = load_framework(opt.input, opt.mode);
        const int code = opt.mode == Arithmetic::Exact ? svg_as<Rational>(f, opt) : svg_as<double>(f, opt);
        out << "wrote " << opt.output << '\n';
        return code;
    });
}

int cmd_generate(const GenerateOptions& opt, std::ostream& out, std::ostream& err)
{
    return guarded(err, [&] {
        Framework f = [&] {
            if (opt.name == "desargues" && opt.scale)
                return make_desargues(parse_rational(*opt.scale));
            if (opt.scale)
                throw std::invalid_argument("--scale only applies to desargues");
            return make_named(opt.name, opt.seed);
        }();
        const std::string text = format_framework(f);
        if (opt.output.empty())
            out << text;
        else
            write_file(opt.output, text);
        return static_cast<int>(kExitOk);
    });
}

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err)
{
    CLI::App app{"Force, moment and anchored cosheaf analysis of bar frameworks", "mframe"};
    app.require_subcommand(1);
    app.set_version_flag("--version", std::string(kToolVersion));

    const std::map<std::string, Arithmetic> modes{{"exact", Arithmetic::Exact}, {"float", Arithmetic::Float}};

    AnalyzeOptions aopt;
    auto* analyze_cmd = app.add_subcommand("analyze", "Homology, exact sequence checks and counting rules");
    analyze_cmd->add_option("file", aopt.input, "Framework file")->required();
    analyze_cmd->add_option("--mode", aopt.mode, "exact or float")
        ->transform(CLI::CheckedTransformer(modes, CLI::ignore_case));
    analyze_cmd->add_flag("--json", aopt.json, "Emit the JSON report");
    analyze_cmd->add_flag("--dims-only", aopt.dims_only, "Only the homology dimension table");
    analyze_cmd->add_flag("--chains", aopt.chains, "List every homology basis vector (JSON)");
    analyze_cmd->add_option("-o,--out", aopt.output, "Also write the report here");

    ScanOptions sopt;
    auto* scan_cmd = app.add_subcommand("scan", "Homology under random perturbations (CSV)");
    scan_cmd->add_option("file", sopt.input, "Framework file")->required();
    scan_cmd->add_option("-m,--magnitude", sopt.magnitudes, "Magnitudes, comma separated")->required();
    scan_cmd->add_option("-s,--seeds", sopt.seeds, "Seeds: list and/or ranges like 1..10");
    scan_cmd->add_option("-o,--out", sopt.output, "Also write the CSV here");

    SvgCommandOptions vopt;
    auto* svg_cmd = app.add_subcommand("svg", "Draw a homology generator");
    svg_cmd->add_option("file", vopt.input, "Framework file")->required();
    svg_cmd->add_option("-g,--generator", vopt.generator, "F:i, M:i, N:i or Nperp:i (0-based)")->required();
    svg_cmd->add_option("-o,--out", vopt.output, "Output SVG path")->required();
    svg_cmd->add_option("--mode", vopt.mode, "exact or float")
        ->transform(CLI::CheckedTransformer(modes, CLI::ignore_case));
    bool no_values = false;
    svg_cmd->add_flag("--no-svg-values", no_values, "Omit per-edge value labels");

    GenerateOptions gopt;
    std::string scale;
    auto* gen_cmd = app.add_subcommand("generate", "Write a named framework");
    gen_cmd->add_option("name", gopt.name, "bar, triangle, square, box3d, desargues, random2d, random3d")
        ->required();
    gen_cmd->add_option("--seed", gopt.seed, "Seed for random frameworks");
    gen_cmd->add_option("--scale", scale, "Inner triangle scale for desargues, e.g. 1/2");
    gen_cmd->add_option("-o,--out", gopt.output, "Output path (default stdout)");

    std::vector<const char*> argv;
    for (const auto& a : args)
        argv.push_back(a.c_str());
    try
    {
        app.parse(static_cast<int>(argv.size()), argv.data());
    }
    catch (const CLI::ParseError& ex)
    {
        const int code = app.exit(ex, out, err);
        return code == 0 ? kExitOk : kExitInvalidInput;
    }

    if (analyze_cmd->parsed())
        return cmd_analyze(aopt, out, err);
    if (scan_cmd->parsed())
        return cmd_scan(sopt, out, err);
    if (svg_cmd->parsed())
    {
        vopt.values = !no_values;
        return cmd_svg(vopt, out, err);
    }
    if (!scale.empty())
        gopt.scale = scale;
    return cmd_generate(gopt, out, err);
}

} // namespace mframe
