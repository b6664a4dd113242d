/**
 * Long exact sequence of the structural cosheaves
 *
 *   0 -> H1 F -> H1 M -> H1 N -> H0 F -> H0 M -> H0 N -> 0
 *
 * with the induced maps phi*, pi* and the connecting homomorphism theta, plus
 * the exactness checks and counting rules evaluated on a framework.
 *
 * H0 classes are represented by vectors orthogonal to the image of the
 * boundary, so every map into H0 ends with an orthogonal projection.
 */
#ifndef MFRAME_LES_HPP
#define MFRAME_LES_HPP

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "mframe/cosheaf.hpp"
#include "mframe/structural.hpp"

namespace mframe {

class LesError : public std::runtime_error
{
public:
    using std::runtime_error::runtime_error;
};

/// A linear map between homology spaces, in the coordinates of their bases.
template <Scalar T>
struct InducedMap
{
    /// (dim target) x (dim source).
    Matrix<T> matrix;
    std::size_t rank = 0;
    /// In source homology coordinates.
    SubspaceBasis<T> kernel;
    /// In target homology coordinates.
    SubspaceBasis<T> image;
};

template <Scalar T>
InducedMap<T> induced_map(const CosheafMap<T>& m, int degree, const HomologyResult<T>& source,
                          const HomologyResult<T>& target);

template <Scalar T>
struct ConnectingMap
{
    /// H1 N coordinates -> H0 F coordinates.
    InducedMap<T> map;
    /// Per H1 N basis cycle: the vertex resultant forces, a vector in C0 F.
    std::vector<Vector<T>> resultants;
    /// Per H1 N basis cycle: the projection of the resultants onto the H0 F representatives.
    std::vector<Vector<T>> velocities;
};

/**
 * theta: H1 N -> H0 F. Each cycle is lifted edge-wise through a section of pi,
 * pushed through the moment boundary, pulled back through phi at every vertex
 * and projected onto the H0 F representatives. `edge_sections` defaults to the
 * orthogonal sections stored in `seq`.
 */
template <Scalar T>
ConnectingMap<T> connecting_map(const StructuralSequence<T>& seq, const HomologyResult<T>& force,
                                const HomologyResult<T>& anchored,
                                const std::vector<Matrix<T>>* edge_sections = nullptr);

template <Scalar T>
ConnectingMap<T> connecting_map(const Framework& f);

/// Alternative right inverses of pi: each orthogonal section plus phi_e times a random integer row.
template <Scalar T>
std::vector<Matrix<T>> randomized_sections(const StructuralSequence<T>& seq, std::uint64_t seed);

/// Everything computed along the sequence, with bases kept for reporting.
template <Scalar T>
struct LesAnalysis
{
    StructuralSequence<T> seq;
    HomologyResult<T> force;
    HomologyResult<T> moment;
    HomologyResult<T> anchored;
    InducedMap<T> phi1;
    InducedMap<T> pi1;
    InducedMap<T> phi0;
    InducedMap<T> pi0;
    ConnectingMap<T> theta;
    bool connected = false;
    /// Only filled for connected frameworks.
    SubspaceBasis<T> rigid;
    SubspaceBasis<T> mechanisms;
    /// pi*(H1 M) as cycles in C1 N, and its orthogonal complement inside H1 N.
    SubspaceBasis<T> anchored_from_frame;
    SubspaceBasis<T> anchored_orthogonal;
};

template <Scalar T>
LesAnalysis<T> analyze(const Framework& f);

struct HomologyDims
{
    std::size_t h1 = 0;
    std::size_t h0 = 0;
    friend bool operator==(const HomologyDims&, const HomologyDims&) = default;
};

struct LesCheck
{
    std::string id;
    std::string description;
    bool passed = false;
    /// Zero on success; a rank deficit (exact mode) or principal-angle sine (float mode) otherwise.
    double residual = 0.0;
};

struct CountingRule
{
    std::string name;
    std::string formula;
    long long expected = 0;
    long long computed = 0;
    bool applicable = true;
    bool holds = false;
};

struct LesReport
{
    Arithmetic mode = Arithmetic::Exact;
    int dim = 2;
    std::size_t vertices = 0;
    std::size_t edges = 0;
    bool connected = false;
    HomologyDims force;
    HomologyDims moment;
    HomologyDims anchored;
    std::size_t rigid_dim = 0;
    std::size_t mechanism_dim = 0;
    std::size_t rank_phi1 = 0;
    std::size_t rank_pi1 = 0;
    std::size_t rank_theta = 0;
    std::size_t rank_phi0 = 0;
    std::size_t rank_pi0 = 0;
    std::vector<LesCheck> checks;
    std::vector<CountingRule> counting;

    bool all_passed() const;
    const LesCheck* check(const std::string& id) const;
    const CountingRule* rule(const std::string& name) const;
};

template <Scalar T>
LesReport summarize(const LesAnalysis<T>& a, const Framework& f);

/// analyze + summarize. Exactness checks are skipped on disconnected input.
template <Scalar T>
LesReport verify_les(const Framework& f);

/// The counting-rule table alone; rules are marked not applicable on disconnected input.
template <Scalar T>
std::vector<CountingRule> counting_rules(const Framework& f);

struct ScanRow
{
    Rational magnitude;
    std::uint64_t seed = 0;
    bool valid = true;
    std::string error;
    HomologyDims force;
    HomologyDims moment;
    HomologyDims anchored;
    std::size_t rank_phi1 = 0;
    std::size_t rank_pi1 = 0;
    std::size_t rank_theta = 0;
};

/// One row per (magnitude, seed), magnitudes outermost; rows are evaluated
/// concurrently and returned in input order. Exact arithmetic throughout.
std::vector<ScanRow> perturbation_scan(const Framework& f, const std::vector<Rational>& magnitudes,
                                       const std::vector<std::uint64_t>& seeds);

} // namespace mframe

#endif
