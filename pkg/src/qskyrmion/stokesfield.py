"""Position-conditioned states of photon B and quantum Stokes fields.

Conditioning the joint density matrix on photon A being found at position r
leaves a 2x2 operator on photon B's polarization space; its Pauli
expectation values form the Stokes texture whose topology the rest of the
package measures.  Convention: P1 is the +1 eigenstate of sigma_3, and
(S1, S2, S3) follow (sigma_x, sigma_y, sigma_z) in the (P1, P2) basis.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .biphoton import DensityMatrix4, _as_matrix
from .lgmodes import CoeffField, GridSpec

DEGENERACY_EPS = 1e-6

SIGMA = {
    1: np.array([[0, 1], [1, 0]], dtype=complex),
    2: np.array([[0, -1j], [1j, 0]], dtype=complex),
    3: np.array([[1, 0], [0, -1]], dtype=complex),
}


@dataclass
class StokesField:
    """Grid-sampled Stokes parameters (S0, S1, S2, S3) of photon B.

    ``mask`` marks points excluded upstream (envelope underflow); Stokes
    values there are zeroed.  ``noise_weight`` carries the channel weight p
    of the source density matrix when known.
    """

    s0: np.ndarray
    s1: np.ndarray
    s2: np.ndarray
    s3: np.ndarray
    mask: np.ndarray
    grid: GridSpec
    noise_weight: float | None = None

    def vector_norm(self) -> np.ndarray:
        return np.sqrt(self.s1**2 + self.s2**2 + self.s3**2)


@dataclass
class UnitVectorField:
    """Unit 3-vector field over a grid, with a mask for degenerate points.

    ``collapsed`` is set when every point was degenerate (zero vector), the
    maximally-mixed limit in which the texture contracts to a single point.
    """

    vectors: np.ndarray  # shape (n, n, 3)
    mask: np.ndarray
    grid: GridSpec
    collapsed: bool = False

    @property
    def masked_fraction(self) -> float:
        return float(self.mask.mean())


def _conditional_blocks(rho, coeffs: CoeffField) -> np.ndarray:
    """2x2 conditional operators at every grid point, shape (n, n, 2, 2).

    Contracts the full 4x4 matrix with the position overlaps
    (<r|ell1>, <r|ell2>) = (a(r), b(r)); the overall factor matches the
    convention in which the identity's diagonal position element is 2*I_2,
    so channel outputs give p |chi><chi| + (1-p)/2 I_2 with unit trace.
    """
    m = _as_matrix(rho).reshape(2, 2, 2, 2)  # [iA, jB, iA', jB']
    v = np.stack([coeffs.a, coeffs.b])  # (2, n, n)
    blocks = 2.0 * np.einsum("imn,kmn,ijkl->mnjl", v, v.conj(), m, optimize=True)
    return blocks


def conditional_state(rho, coeffs: CoeffField, point: tuple[int, int]) -> np.ndarray:
    """Conditional 2x2 state of photon B at one grid point.

    For an isotropic-channel output at weight p this equals
    p |chi(r)><chi(r)| + (1-p)/2 * I_2 with |chi(r)> = a(r)|P1> + b(r)|P2>.
    Built from the full 4x4 matrix, so reconstructed density matrices flow
    through the identical path as analytic ones.

    Parameters
    ----------
    rho : DensityMatrix4 or (4, 4) array
    coeffs : CoeffField
    point : (int, int)
        Grid indices (i, j).

    Returns
    -------
    (2, 2) complex ndarray
    """
    i, j = point
    if coeffs.mask[i, j]:
        raise ValueError(f"grid point {point} is masked (envelope underflow)")
    m = _as_matrix(rho).reshape(2, 2, 2, 2)
    v = np.array([coeffs.a[i, j], coeffs.b[i, j]])
    return 2.0 * np.einsum("i,k,ijkl->jl", v, v.conj(), m)


def stokes_field(rho, coeffs: CoeffField, grid: GridSpec | None = None) -> StokesField:
    """Quantum Stokes fields S_i(r) = Tr(sigma_i <r|rho|r>) over the grid.

    S0 is the trace of the conditional operator (1 for channel outputs).
    Masked coefficient points produce zeroed, masked Stokes values.

    Parameters
    ----------
    rho : DensityMatrix4 or (4, 4) array
    coeffs : CoeffField
    grid : GridSpec, optional
        Must match ``coeffs.grid`` when given.
    """
    if grid is not None and grid != coeffs.grid:
        raise ValueError("grid does not match the one the coefficients were computed on")
    blocks = _conditional_blocks(rho, coeffs)
    s0 = blocks[..., 0, 0].real + blocks[..., 1, 1].real
    s1 = 2.0 * blocks[..., 0, 1].real
    s2 = -2.0 * blocks[..., 0, 1].imag
    s3 = blocks[..., 0, 0].real - blocks[..., 1, 1].real
    mask = coeffs.mask.copy()
    s0, s1, s2, s3 = (np.where(mask, 0.0, s) for s in (s0, s1, s2, s3))
    noise_weight = rho.noise_weight if isinstance(rho, DensityMatrix4) else None
    return StokesField(
        s0=s0, s1=s1, s2=s2, s3=s3,
        mask=mask, grid=coeffs.grid, noise_weight=noise_weight,
    )


def projection_pair(rho, coeffs: CoeffField, point: tuple[int, int], axis: int):
    """Intensities of the +/- projector pair for one Pauli axis at a point.

    Returns ``(i_plus, i_minus, noise_share)`` where
    i_pm = Tr(P_i^pm <r|rho|r>) and ``noise_share`` = (1-p)/2 is the common
    additive contribution the isotropic noise makes to both projections;
    their difference i_plus - i_minus is the Stokes component S_i(r).

    Requires a density matrix carrying its channel ``noise_weight``.
    """
    if axis not in (1, 2, 3):
        raise ValueError(f"axis must be 1, 2 or 3, got {axis}")
    if not isinstance(rho, DensityMatrix4) or rho.noise_weight is None:
        raise ValueError("projection_pair needs a channel output with a recorded noise weight")
    cond = conditional_state(rho, coeffs, point)
    p_plus = 0.5 * (np.eye(2) + SIGMA[axis])
    p_minus = 0.5 * (np.eye(2) - SIGMA[axis])
    i_plus = float(np.trace(p_plus @ cond).real)
    i_minus = float(np.trace(p_minus @ cond).real)
    noise_share = 0.5 * (1.0 - rho.noise_weight)
    return i_plus, i_minus, noise_share


def normalize_stokes(field: StokesField, eps: float = DEGENERACY_EPS) -> UnitVectorField:
    """Map the Stokes vector field onto the unit sphere.

    Each (S1, S2, S3) is divided by its Euclidean norm; points with norm
    below ``eps`` are masked as degenerate.  A field whose every point is
    degenerate (the p = 0 maximally mixed limit) comes back fully masked
    with ``collapsed`` set instead of raising.
    """
    if not eps > 0:
        raise ValueError("eps must be positive")
    vec = np.stack([field.s1, field.s2, field.s3], axis=-1)
    norm = np.linalg.norm(vec, axis=-1)
    degenerate = (norm < eps) | field.mask
    safe = np.where(norm == 0.0, 1.0, norm)
    unit = np.where(degenerate[..., None], 0.0, vec / safe[..., None])
    collapsed = bool(degenerate.all())
    return UnitVectorField(vectors=unit, mask=degenerate, grid=field.grid, collapsed=collapsed)
