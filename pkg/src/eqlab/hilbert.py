"""Finite computational representations of the canonical and affine operator algebras.

Two concrete bases are supported:

* ``FockBasis`` -- truncated number basis for the canonical pair (Q, P).
  Ladder matrices are exact below the cutoff, so [Q, P] = i*hbar holds
  exactly once the top level is projected out.

* ``HalfLineGrid`` -- grid on (0, infinity) for the affine pair (Q, D),
  D = (QP + PQ)/2.  Vectors on half-line grids always live in the
  *weighted representation* c_i = psi(x_i) * sqrt(w_i) with w_i the
  quadrature weights, so the plain Euclidean inner product of amplitude
  vectors equals the L2(dx) inner product of wavefunctions.  On a
  logarithmic grid this makes the dilation generator an exactly
  anti-symmetric stencil, hence D exactly Hermitian.

Half-line Schroedinger problems with an x**-2 spike are solved through the
similarity substitution psi = x**nu * phi, where nu(nu-1) equals the spike
coefficient (in units of hbar**2 / 2 mu).  The substitution removes the
spike exactly, turns the problem into a Sturm-Liouville form for the smooth
factor phi, and selects the boundary branch through the choice of root:
the larger root gives the regular (Friedrichs) realization, the smaller one
the singular realization whose density carries the |x|**(2 nu) profile.
The cell mass of the first grid node is extended analytically down to
x = 0, which accounts for the power-law tail of the singular branch
without resolving it on the grid.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from enum import Enum
from typing import Callable, Sequence

import numpy as np
from scipy import sparse
from scipy.linalg import eigh, eigh_tridiagonal
from scipy.sparse.linalg import eigsh, splu

from .errors import (
    ConfigurationError,
    ContractViolationError,
    DomainError,
    NoSolutionError,
    NumericalResolutionError,
)

HERMITICITY_TOL = 1e-12
FIDUCIAL_TOL = 1e-10

# 6th-order central first-derivative weights (offsets -3..3)
_D6 = np.array([-1.0 / 60, 3.0 / 20, -3.0 / 4, 0.0, 3.0 / 4, -3.0 / 20, 1.0 / 60])


class BasisKind(str, Enum):
    FOCK = "FockBasis"
    HALF_LINE_GRID = "HalfLineGrid"


class GridScale(str, Enum):
    UNIFORM = "Uniform"
    LOGARITHMIC = "Logarithmic"


class FiducialCondition(str, Enum):
    CANONICAL_GROUND = "CanonicalGround"
    AFFINE_BETA_TILDE = "AffineBetaTilde"
    ROTSYM_ZETA = "RotsymZeta"


@dataclass(frozen=True)
class QuantizationParams:
    """Physical parameters of a quantization sector.

    hbar is a runtime parameter everywhere in this package; nothing assumes
    hbar = 1.  omega fixes the canonical fiducial (omega*Q + i*P)|0> = 0,
    beta_tilde the affine one [(Q - 1) + i*D/beta_tilde]|b> = 0, and mass
    enters the multi-oscillator and lattice site models.
    """

    hbar: float = 1.0
    omega: float = 1.0
    beta_tilde: float = 1.0
    mass: float = 1.0

    def __post_init__(self):
        for name in ("hbar", "omega", "beta_tilde", "mass"):
            if not getattr(self, name) > 0.0:
                raise ConfigurationError(f"QuantizationParams.{name} must be strictly positive")


@dataclass(frozen=True)
class BasisSpec:
    kind: BasisKind
    dimension: int
    grid_lo: float = 0.0
    grid_hi: float = 0.0
    grid_scale: GridScale = GridScale.LOGARITHMIC

    def __post_init__(self):
        if self.dimension < 8:
            raise ConfigurationError("basis dimension must be at least 8")
        if self.kind == BasisKind.HALF_LINE_GRID:
            if not (0.0 < self.grid_lo < self.grid_hi):
                raise DomainError("half-line grid needs 0 < grid_lo < grid_hi (affine sector requires Q > 0)")

    @staticmethod
    def fock(dimension: int) -> "BasisSpec":
        return BasisSpec(BasisKind.FOCK, dimension)

    @staticmethod
    def halfline(dimension: int, lo: float, hi: float,
                 scale: GridScale = GridScale.LOGARITHMIC) -> "BasisSpec":
        return BasisSpec(BasisKind.HALF_LINE_GRID, dimension, lo, hi, scale)

    def grid(self) -> np.ndarray:
        """Grid points x_i > 0 (half-line bases only)."""
        if self.kind != BasisKind.HALF_LINE_GRID:
            raise ConfigurationError("grid() is only defined for HalfLineGrid bases")
        if self.grid_scale == GridScale.LOGARITHMIC:
            return np.exp(np.linspace(math.log(self.grid_lo), math.log(self.grid_hi), self.dimension))
        return np.linspace(self.grid_lo, self.grid_hi, self.dimension)

    def quadrature_weights(self) -> np.ndarray:
        """Weights w_i with sum w_i |psi(x_i)|^2 ~ integral |psi|^2 dx."""
        x = self.grid()
        if self.grid_scale == GridScale.LOGARITHMIC:
            h = math.log(self.grid_hi / self.grid_lo) / (self.dimension - 1)
            return h * x
        h = (self.grid_hi - self.grid_lo) / (self.dimension - 1)
        return np.full(self.dimension, h)


def default_halfline_basis(length_scale: float, dimension: int = 2000) -> BasisSpec:
    """Logarithmic grid on [1e-4 * l, 40 * l]; resolves the x -> 0 spike
    and the Gaussian tail at double precision."""
    return BasisSpec.halfline(dimension, 1e-4 * length_scale, 40.0 * length_scale)


@dataclass(frozen=True)
class OperatorMatrix:
    basis: BasisSpec
    entries: np.ndarray
    hermitian_flag: bool = True

    def __post_init__(self):
        entries = np.ascontiguousarray(self.entries, dtype=complex)
        entries.setflags(write=False)
        object.__setattr__(self, "entries", entries)
        if entries.shape != (self.basis.dimension, self.basis.dimension):
            raise ConfigurationError("entries shape must match basis dimension")
        if self.hermitian_flag:
            dev = np.linalg.norm(entries - entries.conj().T)
            scale = max(np.linalg.norm(entries), 1.0)
            if dev / scale > HERMITICITY_TOL:
                raise ContractViolationError(
                    f"operator flagged Hermitian deviates from its adjoint by {dev / scale:.3e}")

    def sparse(self) -> sparse.csr_matrix:
        return sparse.csr_matrix(self.entries)

    def __matmul__(self, other):
        if isinstance(other, OperatorMatrix):
            return self.entries @ other.entries
        return self.entries @ other


@dataclass(frozen=True)
class FiducialVector:
    basis: BasisSpec
    amplitudes: np.ndarray
    condition: FiducialCondition
    residual: float

    def __post_init__(self):
        amp = np.ascontiguousarray(self.amplitudes, dtype=complex)
        amp.setflags(write=False)
        object.__setattr__(self, "amplitudes", amp)
        if abs(np.linalg.norm(amp) - 1.0) > 1e-12:
            raise ContractViolationError("fiducial amplitudes must have unit norm")


@dataclass(frozen=True)
class SpectrumResult:
    eigenvalues: np.ndarray
    e0_subtracted: bool
    solver_meta: dict = field(default_factory=dict)

    def __post_init__(self):
        ev = np.asarray(self.eigenvalues, dtype=float)
        ev.setflags(write=False)
        object.__setattr__(self, "eigenvalues", ev)
        if np.any(np.diff(ev) < -1e-12 * max(1.0, np.abs(ev).max())):
            raise ContractViolationError("eigenvalues must be nondecreasing")
        if self.e0_subtracted and ev.size and abs(ev[0]) > self.solver_meta.get("tolerance", 1e-8):
            raise ContractViolationError("e0_subtracted spectra must start at 0")


# ---------------------------------------------------------------------------
# ladder / canonical operators
# ---------------------------------------------------------------------------

def ladder(dimension: int) -> np.ndarray:
    """Annihilation matrix a with a|n> = sqrt(n)|n-1>, truncated at `dimension`."""
    return np.diag(np.sqrt(np.arange(1.0, dimension)), k=1).astype(complex)


def build_canonical_ops(params: QuantizationParams, basis: BasisSpec):
    """Position and momentum matrices on a truncated Fock basis.

    Q = sqrt(hbar/2 omega) (a + a+),  P = i sqrt(hbar omega / 2) (a+ - a),
    so (omega Q + i P) is proportional to a and annihilates the basis vacuum.
    [Q, P] = i hbar holds exactly on the subspace below the top level; the
    truncation corrupts only the last diagonal entry of the commutator.
    """
    if basis.kind != BasisKind.FOCK:
        raise ConfigurationError("build_canonical_ops requires a FockBasis")
    a = ladder(basis.dimension)
    lq = math.sqrt(params.hbar / (2.0 * params.omega))
    lp = math.sqrt(params.hbar * params.omega / 2.0)
    Q = lq * (a + a.conj().T)
    P = 1j * lp * (a.conj().T - a)
    return (OperatorMatrix(basis, Q, hermitian_flag=True),
            OperatorMatrix(basis, P, hermitian_flag=True))


def top_level_projector(dimension: int) -> np.ndarray:
    """Projector that removes the top Fock level (where truncation bites)."""
    pi = np.eye(dimension, dtype=complex)
    pi[-1, -1] = 0.0
    return pi


def commutator(A: np.ndarray, B: np.ndarray) -> np.ndarray:
    return A @ B - B @ A


# ---------------------------------------------------------------------------
# half-line grid operators
# ---------------------------------------------------------------------------

def _skew_stencil(n: int, h: float) -> sparse.csr_matrix:
    """6th-order central derivative, clipped at the edges.

    Clipping keeps the matrix exactly anti-symmetric (entry (i,j) exists iff
    (j,i) does), which is what makes -i*hbar*M exactly Hermitian.  The edge
    rows are then *not* consistent derivative approximations; operator
    identities are asserted on interior points only.
    """
    diags, offs = [], []
    for k in range(-3, 4):
        w = _D6[k + 3]
        if w == 0.0:
            continue
        diags.append(np.full(n - abs(k), w))
        offs.append(k)
    return sparse.diags(diags, offs, format="csr") / h


def _onesided_stencil(offsets: np.ndarray) -> np.ndarray:
    """Derivative weights for arbitrary integer offsets (order len-1)."""
    A = np.vander(offsets.astype(float), increasing=True).T
    b = np.zeros(len(offsets))
    b[1] = 1.0
    return np.linalg.solve(A, b)


def _consistent_derivative(n: int, h: float) -> np.ndarray:
    """6th-order derivative matrix that stays consistent at the edges
    (one-sided stencils there); used for defining-equation solves, where
    Hermiticity is not required but edge consistency is."""
    M = _skew_stencil(n, h).toarray()
    width = 3
    for i in range(width):
        offs = np.arange(7) - i
        M[i, :] = 0.0
        M[i, i + offs[0]: i + offs[-1] + 1] = _onesided_stencil(offs) / h
        j = n - 1 - i
        offs = -(np.arange(7) - i)[::-1]
        M[j, :] = 0.0
        M[j, j + offs[0]: j + offs[-1] + 1] = _onesided_stencil(offs) / h
    return M


def build_affine_ops(params: QuantizationParams, basis: BasisSpec):
    """Q (diagonal, positive) and D = -i hbar (x d/dx + 1/2) on a half-line grid.

    In the weighted representation the logarithmic-grid D reduces to
    -i hbar d/dy with y = ln x, discretized by an anti-symmetric stencil;
    on a uniform grid the symmetrized product -i hbar (X M + M X)/2 is used.
    Both are exactly Hermitian.  [Q, D] = i hbar Q holds on interior points
    applied to grid-resolved vectors, to stencil order.
    """
    if basis.kind != BasisKind.HALF_LINE_GRID:
        raise ConfigurationError("build_affine_ops requires a HalfLineGrid basis")
    if basis.grid_lo <= 0.0:
        raise DomainError("affine sector requires Q > 0, so grid_lo must be positive")
    n = basis.dimension
    x = basis.grid()
    if basis.grid_scale == GridScale.LOGARITHMIC:
        h = math.log(basis.grid_hi / basis.grid_lo) / (n - 1)
        D = (-1j * params.hbar) * _skew_stencil(n, h).toarray()
    else:
        h = (basis.grid_hi - basis.grid_lo) / (n - 1)
        M = _skew_stencil(n, h)
        X = sparse.diags(x)
        D = (-1j * params.hbar) * (0.5 * (X @ M + M @ X)).toarray()
    Q = np.diag(x).astype(complex)
    return (OperatorMatrix(basis, Q, hermitian_flag=True),
            OperatorMatrix(basis, D, hermitian_flag=True))


def affine_commutator_error(Q: OperatorMatrix, D: OperatorMatrix, params: QuantizationParams,
                            test_vectors: Sequence[np.ndarray], margin: int = 5) -> float:
    """Max-normalized interior error of ([Q, D] - i hbar Q) applied to
    smooth test vectors."""
    Qm, Dm = Q.entries, D.entries
    worst = 0.0
    for c in test_vectors:
        lhs = Qm @ (Dm @ c) - Dm @ (Qm @ c)
        rhs = 1j * params.hbar * (Qm @ c)
        interior = slice(margin, len(c) - margin)
        err = np.max(np.abs(lhs[interior] - rhs[interior])) / np.max(np.abs(rhs))
        worst = max(worst, err)
    return worst


# ---------------------------------------------------------------------------
# fiducial solver
# ---------------------------------------------------------------------------

def _least_null_vector(A: sparse.spmatrix, n: int, seed: int = 7):
    """Unit vector minimizing ||A c|| via shift-inverted iteration on A^H A."""
    AhA = (A.conj().T @ A).tocsc()
    real_problem = not np.iscomplexobj(AhA.data) or np.abs(AhA.data.imag).max() == 0.0
    if real_problem:
        AhA = AhA.real
    shift = 1e-30 * max(abs(AhA.diagonal()).max(), 1.0)
    lu = splu(AhA + shift * sparse.eye(n, format="csc"))
    rng = np.random.default_rng(seed)
    v = rng.normal(size=n) if real_problem else rng.normal(size=n) + 0j
    v /= np.linalg.norm(v)
    prev = np.inf
    for _ in range(200):
        v = lu.solve(v)
        v /= np.linalg.norm(v)
        res = np.linalg.norm(A @ v)
        if abs(prev - res) <= 1e-3 * res + 1e-16:
            break
        prev = res
    return v, float(np.linalg.norm(A @ v))


def _fix_phase(v: np.ndarray) -> np.ndarray:
    k = int(np.argmax(np.abs(v)))
    ph = v[k] / abs(v[k])
    return v * ph.conjugate()


def solve_fiducial(condition: FiducialCondition, params: QuantizationParams,
                   basis: BasisSpec, operators, zeta: float | None = None,
                   tol: float = FIDUCIAL_TOL) -> FiducialVector:
    """Solve a defining (annihilation-type) equation for its normalized null vector.

    Returns the least-singular-value vector of the defining operator, with
    phase fixed so the largest-magnitude amplitude is real positive, and the
    defining-equation residual recorded.  A residual above `tol` signals bad
    basis coverage and raises NoSolutionError.

    operators: (Q, P) for CanonicalGround, (Q, D) for AffineBetaTilde,
    (Q, P, S, R) on a two-mode Fock product for RotsymZeta (zeta required).
    """
    n = basis.dimension if condition != FiducialCondition.ROTSYM_ZETA else operators[0].shape[0]
    if condition == FiducialCondition.CANONICAL_GROUND:
        Q, P = operators
        A = sparse.csr_matrix(params.omega * Q.entries + 1j * P.entries)
        v, res = _least_null_vector(A, basis.dimension)
    elif condition == FiducialCondition.AFFINE_BETA_TILDE:
        if params.beta_tilde / params.hbar <= 0.0:
            raise NoSolutionError("affine fiducial is non-normalizable for beta_tilde/hbar <= 0")
        Q, _D = operators
        if basis.grid_scale != GridScale.LOGARITHMIC:
            raise ConfigurationError("affine fiducial solve expects a logarithmic grid")
        h = math.log(basis.grid_hi / basis.grid_lo) / (basis.dimension - 1)
        # i D / beta = (hbar/beta) d/dy in the weighted representation; use the
        # edge-consistent derivative so the defining operator is accurate on
        # every row (the Hermitian D trades edge consistency for symmetry).
        M = _consistent_derivative(basis.dimension, h)
        A = sparse.csr_matrix(np.diag(basis.grid() - 1.0) + (params.hbar / params.beta_tilde) * M)
        v, res = _least_null_vector(A, basis.dimension)
    elif condition == FiducialCondition.ROTSYM_ZETA:
        if zeta is None or not (0.0 < zeta < 1.0):
            raise DomainError("RotsymZeta needs 0 < zeta < 1")
        Qm, Pm, Sm, Rm = [op.entries if isinstance(op, OperatorMatrix) else op for op in operators]
        m = params.mass
        A1 = m * (Qm + zeta * Sm) + 1j * Pm
        A2 = m * (Sm + zeta * Qm) + 1j * Rm
        G = sparse.csr_matrix(A1.conj().T @ A1 + A2.conj().T @ A2)
        dim = G.shape[0]
        if dim <= 1200:
            w, vecs = eigh(G.toarray(), subset_by_index=[0, 0])
        else:
            w, vecs = eigsh(G, k=1, which="SA")
        v = vecs[:, 0]
        res = math.sqrt(max(w[0].real, 0.0))
    else:
        raise ConfigurationError(f"unknown fiducial condition {condition}")

    if res > tol:
        raise NoSolutionError(
            f"defining-equation residual {res:.3e} above tolerance {tol:.1e}; basis coverage insufficient")
    v = _fix_phase(v / np.linalg.norm(v))
    return FiducialVector(basis=basis, amplitudes=v, condition=condition, residual=res)


# ---------------------------------------------------------------------------
# eigensolver
# ---------------------------------------------------------------------------

def _tridiagonal_parts(H: np.ndarray):
    """Return (diag, offdiag) if H is real symmetric tridiagonal, else None."""
    if np.abs(H.imag).max() > 0.0:
        return None
    Hr = H.real
    mask = np.ones_like(Hr, dtype=bool)
    idx = np.arange(Hr.shape[0])
    mask[idx, idx] = False
    mask[idx[:-1], idx[:-1] + 1] = False
    mask[idx[:-1] + 1, idx[:-1]] = False
    if np.any(Hr[mask] != 0.0):
        return None
    return np.diag(Hr).copy(), np.diag(Hr, k=1).copy()


def eigen_spectrum(H: OperatorMatrix, n_levels: int, subtract_e0: bool = False,
                   meta: dict | None = None) -> SpectrumResult:
    """Lowest n_levels eigenvalues of a Hermitian operator, ascending.

    With subtract_e0 the spectrum is shifted so the ground level sits at 0;
    this is the constant counterterm that realizes a vanishing zero-point
    energy.  Real symmetric tridiagonal matrices take a fast LAPACK path.
    """
    if n_levels < 1 or n_levels > H.basis.dimension:
        raise ConfigurationError("n_levels must be between 1 and the basis dimension")
    if not H.hermitian_flag:
        raise ContractViolationError("eigen_spectrum requires a Hermitian operator")
    parts = _tridiagonal_parts(H.entries)
    if parts is not None:
        w = eigh_tridiagonal(parts[0], parts[1], eigvals_only=True,
                             select="i", select_range=(0, n_levels - 1))
    else:
        w = eigh(H.entries, eigvals_only=True, subset_by_index=[0, n_levels - 1])
    w = np.sort(np.real(w))
    info = {"dimension": H.basis.dimension, "basis_kind": H.basis.kind.value}
    if meta:
        info.update(meta)
    if subtract_e0:
        info["e0"] = float(w[0])
        w = w - w[0]
    return SpectrumResult(eigenvalues=w, e0_subtracted=subtract_e0, solver_meta=info)


def richardson_extrapolate(values: Sequence[np.ndarray], steps: Sequence[float]) -> np.ndarray:
    """Neville extrapolation to step 0 of values with leading error ~ step.

    Pass steps = h**2 for second-order schemes.
    """
    tab = [np.asarray(v, dtype=float) for v in values]
    xs = list(steps)
    k = len(tab)
    for j in range(1, k):
        for i in range(k - j):
            tab[i] = tab[i + 1] + (tab[i + 1] - tab[i]) * xs[i + j] / (xs[i] - xs[i + j])
    return tab[0]


# ---------------------------------------------------------------------------
# half-line Sturm-Liouville machinery (similarity-transformed)
# ---------------------------------------------------------------------------

def spike_roots(F: float) -> tuple[float, float]:
    """Roots nu of nu(nu-1) = F: (regular, singular) boundary exponents."""
    disc = F + 0.25
    if disc < 0.0:
        raise DomainError("spike coefficient below the -1/4 bound; operator not bounded below")
    r = math.sqrt(disc)
    return 0.5 + r, 0.5 - r


@dataclass(frozen=True)
class HalflineProblem:
    """One solved half-line eigenproblem in the psi = x^nu * phi form."""
    nu: float
    y: np.ndarray              # log-grid nodes actually used (right Dirichlet node dropped)
    phi: np.ndarray            # columns: smooth factors, M-normalized
    cell_mass: np.ndarray      # integral of x^{2 nu} dx over each control volume
    energies: np.ndarray

    def density(self) -> np.ndarray:
        """|psi|^2 of the ground column on the nodes (half-line, unnormalized
        beyond the analytic-tail-aware M-normalization)."""
        x = np.exp(self.y)
        return np.abs(self.phi[:, 0]) ** 2 * x ** (2.0 * self.nu)


def halfline_solve(n: int, nu: float, potential: Callable[[np.ndarray], np.ndarray],
                   kin: float, lo: float, hi: float, k: int = 8,
                   tail_potential: Callable[[float], float] | None = None,
                   want_vectors: bool = False):
    """Flux-form solve of  -kin x^{-2nu} (x^{2nu} phi')' + V(x) phi = E phi.

    kin = hbar^2 / (2 mu).  The matrix is assembled as K phi = E M phi with
    lumped diagonal mass and symmetrized to a plain tridiagonal problem.
    Node 0's control volume extends to x = 0, carrying the analytic tail
    mass x^{2nu+1}/(2nu+1) of the singular branch; `tail_potential` may
    supply the analytic integral of V * x^{2nu} over that cell.
    """
    if not 2.0 * nu + 1.0 > 0.0:
        raise DomainError("x^{2 nu} must be integrable at the origin (2 nu + 1 > 0)")
    y = np.linspace(math.log(lo), math.log(hi), n)
    h = y[1] - y[0]
    x = np.exp(y)
    a = 2.0 * nu + 1.0
    P = np.exp((2.0 * nu - 1.0) * (y[:-1] + 0.5 * h))         # stiffness weight at half points
    edges = np.concatenate(([y[0] - 0.5 * h], y[:-1] + 0.5 * h, [y[-1] + 0.5 * h]))
    Iedge = np.exp(a * edges) / a
    M = np.diff(Iedge)
    M[0] = Iedge[1]                                            # tail cell reaches x = 0
    Koff = -kin * P / h
    Kdiag = np.empty(n)
    Kdiag[0] = kin * P[0] / h
    Kdiag[1:-1] = kin * (P[:-1] + P[1:]) / h
    Kdiag[-1] = kin * P[-1] / h
    Vd = potential(x) * M
    if tail_potential is not None:
        Vd[0] = tail_potential(float(np.exp(edges[1])))
    # Dirichlet on the right: drop the last node
    d = (Kdiag[:-1] + Vd[:-1])
    Mi = M[:-1]
    s = 1.0 / np.sqrt(Mi)
    dt = d * s * s
    et = Koff[:-1] * s[:-1] * s[1:]
    if want_vectors:
        w, v = eigh_tridiagonal(dt, et, select="i", select_range=(0, k - 1))
        phi = v * s[:, None]
        nrm = np.sqrt(np.sum(phi ** 2 * Mi[:, None], axis=0))
        phi = phi / nrm
        return HalflineProblem(nu=nu, y=y[:-1], phi=phi, cell_mass=Mi, energies=w)
    w = eigh_tridiagonal(dt, et, eigvals_only=True, select="i", select_range=(0, k - 1))
    return w


def spiked_hamiltonian(params: QuantizationParams, basis: BasisSpec, F: float = 0.75,
                       branch: str = "regular", mu: float = 1.0,
                       potential: Callable[[np.ndarray], np.ndarray] | None = None) -> OperatorMatrix:
    """Spiked-oscillator Hamiltonian as a dense (tridiagonal) OperatorMatrix.

    H = (1/2)(-hbar^2/mu d^2/dx^2 + F hbar^2/mu x^-2 + mu m^2 x^2) in the
    similarity-transformed phi representation; eigenvalues are those of the
    chosen self-adjoint branch.  Default potential is the harmonic one.
    """
    if basis.kind != BasisKind.HALF_LINE_GRID or basis.grid_scale != GridScale.LOGARITHMIC:
        raise ConfigurationError("spiked_hamiltonian expects a logarithmic half-line basis")
    kin = params.hbar ** 2 / (2.0 * mu)
    nu_reg, nu_sing = spike_roots(F)
    nu = nu_reg if branch == "regular" else nu_sing
    V = potential if potential is not None else (lambda x: 0.5 * mu * params.mass ** 2 * x ** 2)
    n = basis.dimension
    y = np.linspace(math.log(basis.grid_lo), math.log(basis.grid_hi), n)
    h = y[1] - y[0]
    x = np.exp(y)
    a = 2.0 * nu + 1.0
    P = np.exp((2.0 * nu - 1.0) * (y[:-1] + 0.5 * h))
    edges = np.concatenate(([y[0] - 0.5 * h], y[:-1] + 0.5 * h, [y[-1] + 0.5 * h]))
    Iedge = np.exp(a * edges) / a
    M = np.diff(Iedge)
    M[0] = Iedge[1]
    Kdiag = np.empty(n)
    Kdiag[0] = kin * P[0] / h
    Kdiag[1:-1] = kin * (P[:-1] + P[1:]) / h
    Kdiag[-1] = kin * P[-1] / h
    s = 1.0 / np.sqrt(M)
    dt = (Kdiag + V(x) * M) * s * s
    et = (-kin * P / h) * s[:-1] * s[1:]
    H = np.diag(dt).astype(complex)
    H[np.arange(n - 1), np.arange(1, n)] = et
    H[np.arange(1, n), np.arange(n - 1)] = et
    return OperatorMatrix(basis, H, hermitian_flag=True)


def spiked_spectrum(params: QuantizationParams, F: float = 0.75, branch: str = "regular",
                    n_levels: int = 6, subtract_e0: bool = True, n_grid: int = 4000,
                    mu: float = 1.0, lo_scale: float = 1e-2, hi_scale: float = 40.0,
                    refine: bool = True) -> SpectrumResult:
    """Spiked-oscillator levels with grid-refinement (Richardson) control.

    The harmonic length sqrt(hbar/(m mu)) sets the grid window.  With
    refine=True the scheme's O(h^2) eigenvalue error is extrapolated over
    n_grid/2 and n_grid and the difference is reported as the
    discretization-error estimate in solver_meta.
    """
    ell = math.sqrt(params.hbar / (params.mass * mu))
    lo, hi = lo_scale * ell, hi_scale * ell
    nu_reg, nu_sing = spike_roots(F)
    nu = nu_reg if branch == "regular" else nu_sing
    if branch == "singular":
        lo = min(lo, 3e-3 * ell)
    kin = params.hbar ** 2 / (2.0 * mu)
    V = lambda x: 0.5 * mu * params.mass ** 2 * x ** 2
    grids = [n_grid // 2, n_grid] if refine else [n_grid]
    vals = [halfline_solve(n, nu, V, kin, lo, hi, k=n_levels) for n in grids]
    if refine:
        hsq = [1.0 / n ** 2 for n in grids]
        w = richardson_extrapolate(vals, hsq)
        est = float(np.max(np.abs(w - vals[-1])))
    else:
        w, est = vals[0], float("nan")
    meta = {"grid": n_grid, "branch": branch, "F": F,
            "discretization_error": est, "tolerance": 1e-8}
    e0 = float(w[0])
    if subtract_e0:
        meta["e0"] = e0
        w = w - e0
    return SpectrumResult(eigenvalues=np.asarray(w), e0_subtracted=subtract_e0, solver_meta=meta)


# ---------------------------------------------------------------------------
# full-line grid machinery (canonical site problems)
# ---------------------------------------------------------------------------

def fullline_ground(n: int, L: float, mu: float, potential: Callable[[np.ndarray], np.ndarray],
                    hbar: float, k: int = 1):
    """Lowest k eigenpairs of -hbar^2/(2 mu) d^2/dx^2 + V on [-L, L], Dirichlet."""
    x = np.linspace(-L, L, n)
    h = x[1] - x[0]
    kin = hbar ** 2 / (2.0 * mu)
    d = 2.0 * kin / h ** 2 + potential(x)
    e = np.full(n - 1, -kin / h ** 2)
    w, v = eigh_tridiagonal(d, e, select="i", select_range=(0, k - 1))
    psi = v / math.sqrt(h)      # unit L2(dx) norm
    return w, x, psi
