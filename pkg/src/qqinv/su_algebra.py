"""su(n) matrix bases and their structure-constant tensors.

Three orthogonal Hermitian bases are provided, normalized so that
tr(t_A t_B) = 2 delta_AB:

* ``su2-pauli``    -- the three Pauli matrices,
* ``su3-gellmann`` -- the eight Gell-Mann matrices,
* ``su6-tensor``   -- the 35 tensor-product generators of su(6), enumerated
  qubit-block first:

      t_i      = sigma_i x I3 / sqrt(3)      i = 1..3
      t_{3+a}  = I2 x lambda_a / sqrt(2)     a = 1..8
      t_{11+a} = sigma_1 x lambda_a / sqrt(2)
      t_{19+a} = sigma_2 x lambda_a / sqrt(2)
      t_{27+a} = sigma_3 x lambda_a / sqrt(2)

From a basis the totally symmetric tensor d_ABC and totally antisymmetric
tensor f_ABC are computed via

    d_ABC = (1/4) tr({t_A, t_B} t_C),    f_ABC = (-i/4) tr([t_A, t_B] t_C),

and the standard identity families relating them (Jacobi, mixed d/f, the two
ff<->dd exchange identities, and the su(3)-only cyclic dd identity) are
verified by exhaustive contraction.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

HERMITICITY_TOL = 1e-12
ORTHONORMALITY_TOL = 1e-9
IDENTITY_TOL = 1e-9
CLOSED_FORM_TOL = 1e-10

BASIS_LABELS = ("su2-pauli", "su3-gellmann", "su6-tensor")

# -- defining matrices -------------------------------------------------------

PAULI = np.array([
    [[0, 1], [1, 0]],
    [[0, -1j], [1j, 0]],
    [[1, 0], [0, -1]],
], dtype=complex)


def _gellmann() -> np.ndarray:
    g = np.zeros((8, 3, 3), dtype=complex)
    sym_pairs = [(0, (0, 1)), (3, (0, 2)), (5, (1, 2))]
    for k, (i, j) in sym_pairs:
        g[k, i, j] = g[k, j, i] = 1
        g[k + 1, i, j] = -1j
        g[k + 1, j, i] = 1j
    g[2] = np.diag([1, -1, 0])
    g[7] = np.diag([1, 1, -2]) / math.sqrt(3)
    return g


GELL_MANN = _gellmann()


@dataclass(frozen=True)
class SuBasis:
    """An orthogonal Hermitian basis of su(n), tr(t_A t_B) = 2 delta_AB."""

    label: str
    n: int
    elements: np.ndarray  # shape (n^2 - 1, n, n), complex

    def __len__(self) -> int:
        return self.elements.shape[0]


@dataclass(frozen=True)
class StructureConstants:
    """Dense d/f tensors of an su(n) basis, indexed [A, B, C] zero-based."""

    n: int
    d: np.ndarray
    f: np.ndarray

    @property
    def dim(self) -> int:
        return self.d.shape[0]


@dataclass(frozen=True)
class IdentityReport:
    """Max absolute violation of each structure-constant identity family."""

    n: int
    violations: dict[str, float]
    tolerance: float = IDENTITY_TOL
    method: str = "exhaustive-einsum"
    seed: int | None = None

    @property
    def passed(self) -> bool:
        return all(v <= self.tolerance for v in self.violations.values())


@lru_cache(maxsize=None)
def build_basis(label: str) -> SuBasis:
    """Construct one of the three supported bases.

    Raises ValueError for an unknown label.
    """
    if label == "su2-pauli":
        return SuBasis(label, 2, PAULI.copy())
    if label == "su3-gellmann":
        return SuBasis(label, 3, GELL_MANN.copy())
    if label == "su6-tensor":
        i2 = np.eye(2, dtype=complex)
        i3 = np.eye(3, dtype=complex)
        elems = [np.kron(PAULI[i], i3) / math.sqrt(3) for i in range(3)]
        elems += [np.kron(i2, GELL_MANN[a]) / math.sqrt(2) for a in range(8)]
        for i in range(3):
            elems += [np.kron(PAULI[i], GELL_MANN[a]) / math.sqrt(2) for a in range(8)]
        return SuBasis(label, 6, np.array(elems))
    raise ValueError(f"unknown basis label {label!r}; expected one of {BASIS_LABELS}")


def basis_defects(basis: SuBasis) -> dict[str, float]:
    """Max deviations from Hermiticity, tracelessness and orthonormality."""
    t = basis.elements
    herm = np.abs(t - t.conj().transpose(0, 2, 1)).max()
    tr = np.abs(np.einsum("aii->a", t)).max()
    gram = np.einsum("aij,bji->ab", t, t)
    ortho = np.abs(gram - 2 * np.eye(len(basis))).max()
    return {"hermiticity": float(herm), "trace": float(tr), "orthonormality": float(ortho)}


@lru_cache(maxsize=None)
def structure_constants(label: str) -> StructureConstants:
    """d/f tensors of the basis with the given label (cached)."""
    return structure_constants_of(build_basis(label))


def structure_constants_of(basis: SuBasis) -> StructureConstants:
    """Compute d_ABC and f_ABC from the anticommutator/commutator traces.

    The input basis must satisfy tr(t_A t_B) = 2 delta_AB; anything else is
    rejected since the defining trace formulas assume that normalization.
    """
    defects = basis_defects(basis)
    if defects["orthonormality"] > ORTHONORMALITY_TOL:
        raise ValueError(
            f"basis is not orthonormal: max |tr(t_A t_B) - 2 delta| = "
            f"{defects['orthonormality']:.3e}"
        )
    t = basis.elements
    abc = np.einsum("aij,bjk,cki->abc", t, t, t)
    acb = np.einsum("aij,cjk,bki->abc", t, t, t)
    d = (abc + acb) / 4
    f = -1j * (abc - acb) / 4
    residue = max(np.abs(d.imag).max(), np.abs(f.imag).max())
    if residue > HERMITICITY_TOL:
        raise ValueError(f"imaginary residue {residue:.3e} in structure constants")
    return StructureConstants(basis.n, np.ascontiguousarray(d.real), np.ascontiguousarray(f.real))


def verify_structure_identities(sc: StructureConstants) -> IdentityReport:
    """Evaluate every identity family over all free-index tuples.

    Families (delta is the Kronecker tensor, n the defining dimension):

      jacobi_ff:   f_abc f_cpq + f_bpc f_caq + f_pac f_cbq = 0
      mixed_df:    d_abc f_cpq + d_bpc f_caq + d_pac f_cbq = 0
      ff_to_dd:    f_abc f_cpq = d_apc d_cbq - d_aqc d_cbp
                               + (2/n)(d_ap d_bq - d_aq d_bp)
      ff_dd_sym:   f_abc f_cpq + f_aqc f_cpb = 2 d_apc d_cbq - d_abc d_cpq
                               - d_aqc d_cbp
                               + (2/n)(2 d_ap d_bq - d_ab d_pq - d_aq d_bp)
      dd_cyclic (su(3) only):
                   d_abc d_cpq + d_bpc d_caq + d_pac d_cbq
                               = (1/3)(d_ab d_pq + d_ap d_bq + d_aq d_bp)
    """
    d, f, n = sc.d, sc.f, sc.n
    k = sc.dim
    eye = np.eye(k)

    def cyc(x, y):
        return (np.einsum("abc,cpq->abpq", x, y)
                + np.einsum("bpc,caq->abpq", x, y)
                + np.einsum("pac,cbq->abpq", x, y))

    ff = np.einsum("abc,cpq->abpq", f, f)
    dpq = np.einsum("apc,cbq->abpq", d, d)
    daq = np.einsum("aqc,cbp->abpq", d, d)
    dd_pair = np.einsum("abc,cpq->abpq", d, d)
    dl_ap_bq = np.einsum("ap,bq->abpq", eye, eye)
    dl_aq_bp = np.einsum("aq,bp->abpq", eye, eye)
    dl_ab_pq = np.einsum("ab,pq->abpq", eye, eye)

    violations = {
        "jacobi_ff": float(np.abs(cyc(f, f)).max()),
        "mixed_df": float(np.abs(cyc(d, f)).max()),
        "ff_to_dd": float(np.abs(
            ff - dpq + daq - (2.0 / n) * (dl_ap_bq - dl_aq_bp)).max()),
        "ff_dd_sym": float(np.abs(
            ff + np.einsum("aqc,cpb->abpq", f, f)
            - 2 * dpq + dd_pair + daq
            - (2.0 / n) * (2 * dl_ap_bq - dl_ab_pq - dl_aq_bp)).max()),
    }
    if n == 3:
        rhs = (dl_ab_pq + dl_ap_bq + dl_aq_bp) / 3.0
        violations["dd_cyclic"] = float(np.abs(cyc(d, d) - rhs).max())
    return IdentityReport(n=n, violations=violations)


def closure_max_violation(basis: SuBasis, sc: StructureConstants,
                          pairs: int = 250, seed: int = 202) -> float:
    """Max violation of t_A t_B = (2/n) delta_AB I + (d_ABC + i f_ABC) t_C
    over a seeded random sample of index pairs."""
    rng = np.random.default_rng(seed)
    t = basis.elements
    k = len(basis)
    eye = np.eye(basis.n)
    worst = 0.0
    for _ in range(pairs):
        a, b = rng.integers(0, k, size=2)
        lhs = t[a] @ t[b]
        rhs = (2.0 / basis.n) * (1.0 if a == b else 0.0) * eye
        rhs = rhs + np.einsum("c,cij->ij", sc.d[a, b] + 1j * sc.f[a, b], t)
        worst = max(worst, float(np.abs(lhs - rhs).max()))
    return worst


# -- symmetrized traces -------------------------------------------------------

def symmetrized_trace(basis: SuBasis, indices) -> float:
    """(1/k!) sum over permutations p of tr(t_{p(1)} ... t_{p(k)}).

    Ground truth by explicit permutation sum; 2 <= k <= 6. Indices are
    zero-based positions in the basis.
    """
    idx = tuple(int(i) for i in indices)
    if not 2 <= len(idx) <= 6:
        raise ValueError(f"need 2..6 indices, got {len(idx)}")
    k = len(basis)
    if any(i < 0 or i >= k for i in idx):
        raise ValueError(f"index out of range for basis of size {k}: {idx}")
    t = basis.elements
    total = 0.0 + 0.0j
    for perm in itertools.permutations(idx):
        m = t[perm[0]]
        for p in perm[1:]:
            m = m @ t[p]
        total += np.trace(m)
    return float((total / math.factorial(len(idx))).real)


def _closed_form_term(d: np.ndarray, n: int, idx: tuple[int, ...]) -> float:
    dl = lambda a, b: 1.0 if a == b else 0.0
    if len(idx) == 2:
        a, b = idx
        return 2.0 * dl(a, b)
    if len(idx) == 3:
        a, b, c = idx
        return 2.0 * d[a, b, c]
    if len(idx) == 4:
        a, b, c, e = idx
        return (4.0 / n) * dl(a, b) * dl(c, e) + 2.0 * float(d[a, b] @ d[:, c, e])
    if len(idx) == 5:
        a, b, c, e, g = idx
        return ((4.0 / n) * (d[a, b, c] * dl(e, g) + dl(a, b) * d[c, e, g])
                + 2.0 * float(d[a, b] @ d[:, c, :] @ d[:, e, g]))
    a, b, c, e, g, h = idx
    return ((8.0 / n ** 2) * dl(a, b) * dl(c, e) * dl(g, h)
            + (4.0 / n) * (float(d[a, b] @ d[:, c, e]) * dl(g, h)
                           + dl(a, b) * float(d[c, e] @ d[:, g, h]))
            + (4.0 / n) * d[a, b, c] * d[e, g, h]
            + 2.0 * float(d[a, b] @ d[:, c, :] @ d[:, e, :] @ d[:, g, h]))


def symmetrized_trace_closed(sc: StructureConstants, indices) -> float:
    """Closed form of the symmetrized trace via delta/d contractions.

    The tabulated contraction patterns fix one index placement; the full
    symmetrized trace is their average over all permutations of the free
    indices, which is what this evaluates.
    """
    idx = tuple(int(i) for i in indices)
    if not 2 <= len(idx) <= 6:
        raise ValueError(f"need 2..6 indices, got {len(idx)}")
    perms = list(itertools.permutations(idx))
    return sum(_closed_form_term(sc.d, sc.n, p) for p in perms) / len(perms)


# -- JSON export --------------------------------------------------------------

def to_json_dict(label: str, zero_tol: float = 1e-12) -> dict:
    """Basis + structure-constant dump with 1-based indices.

    Entries list each nonzero component once with A <= B <= C; the remaining
    components follow from total (anti)symmetry.
    """
    basis = build_basis(label)
    sc = structure_constants(label)
    k = sc.dim

    def entries(tensor):
        out = []
        for a in range(k):
            for b in range(a, k):
                for c in range(b, k):
                    v = float(tensor[a, b, c])
                    if abs(v) > zero_tol:
                        out.append([a + 1, b + 1, c + 1, v])
        return out

    return {"label": basis.label, "n": basis.n,
            "d": entries(sc.d), "f": entries(sc.f)}
