/**
 * Serialization of analysis results: text and JSON reports, scan CSV, SVG diagrams.
 *
 * JSON reports carry `"schema": 1`. Exact-mode scalars are written as "p/q"
 * strings, float-mode scalars as JSON numbers.
 */
#ifndef MFRAME_REPORT_HPP
#define MFRAME_REPORT_HPP

#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "mframe/les.hpp"

namespace mframe {

inline constexpr const char* kToolName = "mframe";
inline constexpr const char* kToolVersion = "0.1.0";
inline constexpr int kReportSchema = 1;

class ReportError : public std::runtime_error
{
public:
    using std::runtime_error::runtime_error;
};

std::uint64_t fnv1a64(std::string_view bytes);
/// "fnv1a64:" followed by 16 hex digits.
std::string digest_string(std::string_view bytes);

struct ReportOptions
{
    std::string input_name;
    std::string input_digest;
    bool dims_only = false;
    /// Include every homology basis vector as a per-cell listing.
    bool chains = false;
};

template <Scalar T>
std::string report_json(const LesAnalysis<T>& a, const LesReport& r, const ReportOptions& opt);

std::string report_text(const LesReport& r, const ReportOptions& opt);

std::string scan_csv(const std::vector<ScanRow>& rows);

/// Generator selection for diagrams: space F, M or N (H1 bases) or Nperp (the part of
/// H1 N orthogonal to pi*(H1 M)), with a 0-based index.
struct GeneratorRef
{
    std::string space;
    std::size_t index = 0;
};

/// Parses "space:index"; throws ReportError.
GeneratorRef parse_generator(std::string_view text);

struct SvgOptions
{
    GeneratorRef generator;
    bool values = true;
};

/// Throws ReportError when the generator does not exist.
template <Scalar T>
std::string render_svg(const LesAnalysis<T>& a, const Framework& f, const SvgOptions& opt);

/// The H1 cycle selected by `g`, as a vector in C1 of its cosheaf.
template <Scalar T>
Vector<T> select_generator(const LesAnalysis<T>& a, const GeneratorRef& g);

/// Vertex resultants (a C0 F vector) of an arbitrary anchored cycle, by linearity of theta.
template <Scalar T>
Vector<T> resultant_of(const LesAnalysis<T>& a, const Vector<T>& anchored_cycle);

} // namespace mframe

#endif
