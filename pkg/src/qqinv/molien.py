"""Molien/Poincare series of local-unitary invariant rings by exact
constant-term extraction over the maximal torus.

The number of linearly independent invariant polynomials of degree d under a
compact group action on V is the q^d coefficient of the group average of
1/det(I - q pi(g)).  On the maximal torus pi(g) is diagonal with monomial
entries x^w, one integer exponent vector w per weight of V, and the average
becomes a constant-term extraction against the Weyl density:

    c_d = (1/|W|) CT_x [ prod_{roots r} (1 - x^r)
                         * [q^d] prod_{weights w} 1/(1 - q x^w) ]

All arithmetic is exact: coefficients are integers throughout, int64 when a
proven a-priori bound fits and arbitrary-precision Python integers
otherwise.  No floating point enters this module.

Weight systems for the conjugation action on traceless Hermitian matrices
are built in for SU(2)xSU(2) (15 weights, torus coordinates z, w) and
SU(2)xSU(3) (35 weights, torus coordinates x, y, z).  A second "reduced"
backend integrates the symmetry-reduced kernels of those two groups and is
normalized by its own degree-0 term; it must agree with the Weyl backend.

The rational closed forms of both series are bundled for cross-validation:
the two-qubit form exactly as printed, the qubit-qutrit numerator completed
from its printed prefix by palindromy (N(q) = q^75 N(1/q)).
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from functools import lru_cache

from . import _kernels

import numpy as np

DEFAULT_DEGREE_CAP = 20
INT64_SAFE_LIMIT = 2 ** 62

GROUP_LABELS = ("su2xsu2", "su2xsu3")


@dataclass(frozen=True)
class WeightSystem:
    """Integer torus data of a representation: weights, roots, |W|."""

    rank: int
    weights: tuple[tuple[int, ...], ...]
    roots: tuple[tuple[int, ...], ...]
    weyl_order: int
    label: str = ""

    def validate(self) -> None:
        for w in self.weights + self.roots:
            if len(w) != self.rank:
                raise ValueError(f"vector {w} does not have rank {self.rank}")
        for axis in range(self.rank):
            if sum(w[axis] for w in self.weights) != 0:
                raise ValueError(f"weight coordinates do not sum to 0 on axis {axis}")
        roots = list(self.roots)
        for r in self.roots:
            neg = tuple(-x for x in r)
            if roots.count(neg) != roots.count(r):
                raise ValueError(f"roots are not paired: {r} vs {neg}")
        if self.weyl_order < 1:
            raise ValueError("weyl_order must be positive")


def _pairwise_products(left: list[tuple[int, ...]], right: list[tuple[int, ...]]):
    return [l + r for l in left for r in right]


@lru_cache(maxsize=None)
def adjoint_weight_system(spec: str) -> WeightSystem:
    """Weight system of the conjugation action on traceless Hermitian
    matrices for "su2xsu2" or "su2xsu3".

    Weights are the pairwise products of the diagonal torus entries of the
    two factors with one zero weight removed (the trace direction), leaving
    dim su(4) = 15 resp. dim su(6) = 35 weights.  Roots are the nonzero
    adjoint weights of each factor; |W| = 4 resp. 12.
    """
    su2 = [(0,), (0,), (1,), (-1,)]
    if spec == "su2xsu2":
        weights = _pairwise_products(su2, su2)
        weights.remove((0, 0))
        roots = [(1, 0), (-1, 0), (0, 1), (0, -1)]
        ws = WeightSystem(2, tuple(weights), tuple(roots), 4, label=spec)
    elif spec == "su2xsu3":
        su3 = [(0, 0), (0, 0), (0, 0),
               (1, 0), (0, 1), (1, 1), (-1, 0), (0, -1), (-1, -1)]
        weights = _pairwise_products(su2, su3)
        weights.remove((0, 0, 0))
        roots = [(1, 0, 0), (-1, 0, 0)]
        roots += [(0,) + r for r in su3[3:]]
        ws = WeightSystem(3, tuple(weights), tuple(roots), 12, label=spec)
    else:
        raise ValueError(f"unknown group spec {spec!r}; expected one of {GROUP_LABELS}")
    ws.validate()
    return ws


# -- Laurent polynomial helpers (exact, dict-based, for small factors) --------

def _laurent_mul(p: dict, q: dict) -> dict:
    out: dict[tuple[int, ...], int] = {}
    for e1, c1 in p.items():
        for e2, c2 in q.items():
            key = tuple(a + b for a, b in zip(e1, e2))
            val = out.get(key, 0) + c1 * c2
            if val:
                out[key] = val
            elif key in out:
                del out[key]
    return out


def _root_polynomial(roots, rank: int) -> dict:
    """Expanded prod over roots r of (1 - x^r), exact integer coefficients."""
    poly = {(0,) * rank: 1}
    for r in roots:
        poly = _laurent_mul(poly, {(0,) * rank: 1, tuple(r): -1})
    return poly


def _reduced_kernel(label: str) -> dict:
    """Symmetry-reduced constant-term kernel replacing the Weyl density.

    su2xsu2:  z^-1 w^-1 (1 - z)^2 (1 - w)^2
    su2xsu3:  (1 - x^-1)(1 - y^-1)(1 - z^-1)(1 - (yz)^-1)
    """
    if label == "su2xsu2":
        poly = {(-1, -1): 1}
        for axis in (0, 1):
            lin = {(0, 0): 1}
            step = tuple(1 if i == axis else 0 for i in range(2))
            lin[step] = -2
            lin[tuple(2 * s for s in step)] = 1
            poly = _laurent_mul(poly, lin)
        return poly
    if label == "su2xsu3":
        poly = {(0, 0, 0): 1}
        for term in ((-1, 0, 0), (0, -1, 0), (0, 0, -1), (0, -1, -1)):
            poly = _laurent_mul(poly, {(0, 0, 0): 1, term: -1})
        return poly
    raise ValueError(f"reduced backend is only defined for {GROUP_LABELS}, got {label!r}")


# -- truncated product of 1/(1 - q x^w) factors --------------------------------

def _padded_weights(ws_weights, rank: int) -> list[tuple[int, int, int]]:
    return [tuple(w) + (0,) * (3 - rank) for w in ws_weights]


def _coefficient_bound(n_weights: int, max_degree: int) -> int:
    """Every coefficient of the truncated product is a nonnegative count of
    weight multisets, hence bounded by C(m + d - 1, d)."""
    return math.comb(n_weights + max_degree - 1, max_degree)


def _build_product_boxes(weights, rank: int, max_degree: int,
                         dtype, engine: str) -> tuple[np.ndarray, tuple[int, int, int]]:
    if rank > 3:
        raise ValueError(f"torus rank {rank} not supported (max 3)")
    padded = sorted(_padded_weights(weights, rank))
    spans = [max((abs(w[axis]) for w in padded), default=0) * max_degree
             for axis in range(3)]
    shape = (max_degree + 1,) + tuple(2 * s + 1 for s in spans)
    coeffs = np.zeros(shape, dtype=dtype)
    center = tuple(spans)
    coeffs[(0,) + center] = 1
    for w in padded:
        _kernels.apply_factor(coeffs, w, engine)
    return coeffs, center


def _select_dtype_engine(n_weights: int, max_degree: int, kernel_abs_sum: int,
                         engine: str | None) -> tuple[type, str]:
    bound = _coefficient_bound(n_weights, max_degree) * max(1, kernel_abs_sum)
    if engine == "object" or bound >= INT64_SAFE_LIMIT:
        return object, "numpy"
    if engine is None:
        engine = _kernels.default_engine()
    return np.int64, engine


@dataclass(frozen=True)
class TruncatedTorusSeries:
    """q-truncated series whose q^d coefficients are exact-integer Laurent
    polynomials in the torus variables, keyed by exponent vector."""

    max_q_degree: int
    rank: int
    coeffs: tuple[dict, ...] = field(repr=False)

    @classmethod
    def from_weight_factors(cls, weights, rank: int, max_q_degree: int,
                            engine: str | None = None) -> "TruncatedTorusSeries":
        """Expand prod over weights w of 1/(1 - q x^w) through q^max_q_degree."""
        dtype, eng = _select_dtype_engine(len(weights), max_q_degree, 1, engine)
        boxes, center = _build_product_boxes(weights, rank, max_q_degree, dtype, eng)
        dicts = []
        for d in range(max_q_degree + 1):
            box = boxes[d]
            poly = {}
            for pos in np.argwhere(box != 0):
                key = tuple(int(p - c) for p, c in zip(pos, center))[:rank]
                poly[key] = int(box[tuple(pos)])
            dicts.append(poly)
        return cls(max_q_degree, rank, tuple(dicts))

    def constant_term(self, degree: int) -> int:
        return self.coeffs[degree].get((0,) * self.rank, 0)


def _extract_constant_terms(boxes: np.ndarray, center, kernel: dict,
                            rank: int) -> list[int]:
    """CT per q-degree of kernel * series, looking coefficients up at the
    negated kernel exponents (out-of-box lookups are exact zeros)."""
    max_degree = boxes.shape[0] - 1
    shape = boxes.shape[1:]
    out = []
    for d in range(max_degree + 1):
        box = boxes[d]
        total = 0
        for exp, coef in kernel.items():
            pos = tuple(c - e for c, e in
                        zip(center, tuple(exp) + (0,) * (3 - rank)))
            if all(0 <= p < s for p, s in zip(pos, shape)):
                total += int(coef) * int(box[pos])
        out.append(total)
    return out


def molien_series(ws: WeightSystem, max_degree: int, *,
                  backend: str = "weyl", engine: str | None = None,
                  degree_cap: int = DEFAULT_DEGREE_CAP) -> list[int]:
    """Exact invariant counts c_0..c_max_degree for the weight system.

    backend "weyl" averages against the full root product with the explicit
    1/|W| normalization; "reduced" (built-in groups only) integrates the
    symmetry-reduced kernel normalized by its degree-0 constant term.
    engine picks the inner loop: "numba", "numpy" or "object"
    (arbitrary-precision); by default the fastest exact one is used, and the
    object path is forced whenever the proven coefficient bound could
    overflow int64.

    Requests beyond degree_cap are rejected so that runaway degrees fail
    fast; pass a larger degree_cap explicitly to override.
    """
    if max_degree < 0:
        raise ValueError("max_degree must be >= 0")
    if max_degree > degree_cap:
        raise ValueError(
            f"max_degree {max_degree} exceeds the resource cap {degree_cap}; "
            f"pass degree_cap explicitly to override")
    if backend == "weyl":
        kernel = _root_polynomial(ws.roots, ws.rank)
        divisor = ws.weyl_order
    elif backend == "reduced":
        kernel = _reduced_kernel(ws.label)
        divisor = None  # normalized by the degree-0 term below
    else:
        raise ValueError(f"unknown backend {backend!r}")

    abs_sum = sum(abs(c) for c in kernel.values())
    dtype, eng = _select_dtype_engine(len(ws.weights), max_degree, abs_sum, engine)
    boxes, center = _build_product_boxes(ws.weights, ws.rank, max_degree, dtype, eng)
    raw = _extract_constant_terms(boxes, center, kernel, ws.rank)

    if divisor is None:
        divisor = raw[0]
        if divisor <= 0:
            raise ArithmeticError("reduced kernel has non-positive degree-0 term")
    out = []
    for d, value in enumerate(raw):
        if value % divisor:
            raise ArithmeticError(
                f"constant term {value} at degree {d} is not divisible by {divisor}")
        out.append(value // divisor)
    return out


# -- rational closed forms ------------------------------------------------------

def rational_series(numerator, denominator_exponents, max_degree: int) -> list[int]:
    """Taylor coefficients 0..max_degree of N(q) / prod (1 - q^deg)^mult,
    exact integer arithmetic."""
    for deg, mult in denominator_exponents:
        if deg < 1:
            raise ValueError(f"denominator degree must be >= 1, got {deg}")
        if mult < 1:
            raise ValueError(f"denominator multiplicity must be >= 1, got {mult}")
    series = [int(c) for c in numerator[:max_degree + 1]]
    series += [0] * (max_degree + 1 - len(series))
    for deg, mult in denominator_exponents:
        for _ in range(mult):
            for i in range(deg, max_degree + 1):
                series[i] += series[i - deg]
    return series


def palindromy_check(numerator, denominator_exponents, sign: int,
                     top_degree: int) -> bool:
    """Whether M(1/q) = sign * q^(-top_degree) * M(q) for the rational form.

    Checked on coefficient bookkeeping alone: the numerator list must be a
    (possibly sign-flipped) palindrome, every denominator factor contributes
    (1 - q^-deg) = -q^-deg (1 - q^deg), and the net degree shift must match.
    """
    num = [int(c) for c in numerator]
    if num == num[::-1]:
        num_sign = 1
    elif num == [-c for c in num[::-1]]:
        num_sign = -1
    else:
        return False
    den_degree = sum(deg * mult for deg, mult in denominator_exponents)
    den_sign = -1 if sum(mult for _, mult in denominator_exponents) % 2 else 1
    actual_sign = num_sign * den_sign
    actual_degree = den_degree - (len(num) - 1)
    return actual_sign == sign and actual_degree == top_degree


@dataclass(frozen=True)
class RationalForm:
    numerator: tuple[int, ...]
    denominator: tuple[tuple[int, int], ...]
    palindromic_sign: int
    palindromic_degree: int

    def series(self, max_degree: int) -> list[int]:
        return rational_series(self.numerator, self.denominator, max_degree)


TWO_QUBIT_RATIONAL = RationalForm(
    numerator=(1, 0, 0, 0, 1, 1, 3, 2, 2, 3, 1, 1, 0, 0, 0, 1),
    denominator=((2, 3), (3, 2), (4, 3), (6, 1)),
    palindromic_sign=-1,
    palindromic_degree=15,
)

#: Printed prefix of the qubit-qutrit numerator (degree -> coefficient); the
#: elided middle is filled in by complete_numerator_by_palindromy.
QUBIT_QUTRIT_NUMERATOR_PREFIX = {
    0: 1, 4: 4, 5: 9, 6: 38, 7: 69, 8: 173, 9: 347, 10: 733, 11: 1403,
    12: 2796, 13: 5091, 14: 9286, 15: 16058, 16: 27208, 17: 44250,
    18: 70537, 19: 108430, 20: 163158, 21: 238264, 22: 339974, 23: 472130,
    24: 641187, 25: 848615, 26: 1098643, 27: 1388741, 28: 1717327,
    29: 2075836, 30: 2456389, 31: 2843020, 32: 3222408, 33: 3575226,
    34: 3884797, 35: 4133599, 36: 4308636, 37: 4398377, 38: 4398377,
    69: 38, 70: 9, 71: 4, 75: 1,
}

QUBIT_QUTRIT_DENOMINATOR = ((2, 3), (3, 4), (4, 5), (5, 4), (6, 5), (7, 2), (8, 1))


def complete_numerator_by_palindromy(prefix: dict[int, int],
                                     top_degree: int) -> tuple[int, ...]:
    """Fill unstated numerator coefficients with their mirror images.

    Any coefficient stated on both sides of the mirror must agree; an
    inconsistent prefix is reported by raising, never patched over.
    """
    coeffs = [None] * (top_degree + 1)
    for k, v in prefix.items():
        coeffs[k] = int(v)
    for k in range(top_degree + 1):
        mirror = top_degree - k
        if coeffs[k] is not None and coeffs[mirror] is not None:
            if coeffs[k] != coeffs[mirror]:
                raise ArithmeticError(
                    f"numerator prefix breaks palindromy at degrees {k}/{mirror}: "
                    f"{coeffs[k]} != {coeffs[mirror]}")
        elif coeffs[k] is not None:
            coeffs[mirror] = coeffs[k]
    # degrees stated on neither side of the mirror are absent terms
    return tuple(0 if c is None else c for c in coeffs)


@lru_cache(maxsize=1)
def qubit_qutrit_rational() -> RationalForm:
    return RationalForm(
        numerator=complete_numerator_by_palindromy(QUBIT_QUTRIT_NUMERATOR_PREFIX, 75),
        denominator=QUBIT_QUTRIT_DENOMINATOR,
        palindromic_sign=1,
        palindromic_degree=35,
    )


def rational_form_for(label: str) -> RationalForm:
    if label == "su2xsu2":
        return TWO_QUBIT_RATIONAL
    if label == "su2xsu3":
        return qubit_qutrit_rational()
    raise ValueError(f"no rational form for {label!r}")
