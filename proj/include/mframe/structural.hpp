/**
 * The three structural cosheaves over a framework and the maps between them:
 *
 *   F  axial forces of a pin-jointed truss   (edge: 1 scalar, vertex: force vector)
 *   M  force-couples of a rigid moment frame (moment bivector + force vector)
 *   N  anchored frame, the quotient M / phi(F) (moments and shears only)
 *
 * with the embedding phi: F -> M and the projection pi: M -> N.
 *
 * Stalk coordinates of M are ordered (M, Fx, Fy) in the plane and
 * (Myz, Mzx, Mxy, Fx, Fy, Fz) in space.
 */
#ifndef MFRAME_STRUCTURAL_HPP
#define MFRAME_STRUCTURAL_HPP

#include <memory>

#include "mframe/cosheaf.hpp"
#include "mframe/framework.hpp"

namespace mframe {

/// Components of a ⋀²ℝⁿ element: one (n = 2) or three (n = 3, order yz, zx, xy).
template <Scalar T>
using Wedge2 = Vector<T>;

inline std::size_t bivector_dim(int n) { return n == 2 ? 1 : 3; }
inline std::size_t force_couple_dim(int n) { return bivector_dim(n) + static_cast<std::size_t>(n); }

template <Scalar T>
Wedge2<T> wedge(const Vector<T>& a, const Vector<T>& b);

/// The bivector-valued linear map F -> F ∧ lever, as a bivector_dim x n matrix.
template <Scalar T>
Matrix<T> wedge_with(const Vector<T>& lever);

template <Scalar T>
Cosheaf<T> build_force_cosheaf(const Framework& f);

template <Scalar T>
Cosheaf<T> build_moment_cosheaf(const Framework& f);

/// phi: F -> M; zero moment, force along the bar direction.
template <Scalar T>
CosheafMap<T> build_phi(const Framework& f);

/// The short exact sequence 0 -> F -> M -> N -> 0 over one framework.
template <Scalar T>
struct StructuralSequence
{
    std::shared_ptr<const Cosheaf<T>> force;
    std::shared_ptr<const Cosheaf<T>> moment;
    std::shared_ptr<const Cosheaf<T>> anchored;
    CosheafMap<T> phi;
    CosheafMap<T> pi;
    /// Right inverses of pi per stalk, orthogonal to phi's image.
    std::vector<Matrix<T>> vertex_sections;
    std::vector<Matrix<T>> edge_sections;
};

template <Scalar T>
StructuralSequence<T> build_sequence(const Framework& f);

template <Scalar T>
struct AnchoredCosheaf
{
    std::shared_ptr<const Cosheaf<T>> cosheaf;
    CosheafMap<T> pi;
};

template <Scalar T>
AnchoredCosheaf<T> build_anchored_cosheaf(const Framework& f);

/**
 * Translations and infinitesimal rotations about the origin evaluated at the
 * vertex positions, as vectors in C0 F. Dependent generators (e.g. the spin of
 * a collinear framework about its own axis) are dropped.
 * Throws FrameworkError on disconnected input.
 */
template <Scalar T>
SubspaceBasis<T> rigid_body_space(const Framework& f);

} // namespace mframe

#endif
