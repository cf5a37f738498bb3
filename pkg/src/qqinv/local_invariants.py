"""Trace-word invariants of qubit-qutrit states.

A trace word is a product of the matrices alpha, beta, gamma (letters 'a',
'b', 'g') followed by a matrix trace.  Because the trace is cyclic and
alpha and beta commute (they act on different tensor factors), words are
identified modulo cyclic rotation and adjacent a<->b swaps; the canonical
representative is the lexicographic minimum of the equivalence class.

The trace values are polynomials in (a, b, C) invariant under conjugation
by SU(2) x SU(3).  This module enumerates canonical words, evaluates them,
finds the words whose trace vanishes identically (the kernel), verifies the
exchange identities between specific traces and structure-constant
contractions, measures ranks of invariant collections, and produces
finite-difference evidence for functional independence.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from . import casimir_positivity, states, su_algebra
from .states import QubitQutritState

LETTERS = "abg"
LETTER_NAMES = {"a": "alpha", "b": "beta", "g": "gamma"}

DEFAULT_PANEL_SEED = 20260
DEFAULT_PANEL_SIZE = 200
KERNEL_TOL = 1e-9
CHECK_TOL = 1e-9
IMAG_TOL = 1e-9
RANK_EPS = 1e-12
JACOBIAN_STEP = 1e-5
JACOBIAN_PARAM_SCALE = 0.3

#: linearly independent invariants that are not products of lower ones
LISTED_DEGREE2 = ("aa", "bb", "gg")
LISTED_DEGREE3 = ("bbb", "ggg", "abg", "bgg")
LISTED_DEGREE4 = ("gggg", "aggg", "bggg", "agag", "bbgg", "bgbg", "abbg", "abgg")

_EPSILON3 = np.zeros((3, 3, 3))
for _p in itertools.permutations(range(3)):
    _i, _j, _k = _p
    _EPSILON3[_p] = (_j - _i) * (_k - _i) * (_k - _j) / 2


@dataclass(frozen=True, order=True)
class TraceWord:
    """Canonical word over {alpha, beta, gamma}; letters is e.g. 'abgg'."""

    letters: str

    @property
    def multidegree(self) -> tuple[int, int, int]:
        return (self.letters.count("a"), self.letters.count("b"),
                self.letters.count("g"))

    def __str__(self) -> str:
        return self.letters


@lru_cache(maxsize=None)
def canonical_form(word: str) -> str:
    """Lexicographic minimum over the closure of cyclic rotations and
    adjacent alpha/beta swaps (breadth-first over the tiny class)."""
    if not word or any(ch not in LETTERS for ch in word):
        raise ValueError(f"word must be nonempty over {LETTERS!r}, got {word!r}")
    seen = {word}
    stack = [word]
    while stack:
        w = stack.pop()
        for r in range(1, len(w)):
            rot = w[r:] + w[:r]
            if rot not in seen:
                seen.add(rot)
                stack.append(rot)
        for i in range(len(w) - 1):
            if w[i] != w[i + 1] and {w[i], w[i + 1]} == {"a", "b"}:
                swp = w[:i] + w[i + 1] + w[i] + w[i + 2:]
                if swp not in seen:
                    seen.add(swp)
                    stack.append(swp)
    return min(seen)


def trace_word(word: str) -> TraceWord:
    return TraceWord(canonical_form(word))


@lru_cache(maxsize=None)
def enumerate_words(degree: int) -> tuple[TraceWord, ...]:
    """All canonical words of the given length, sorted. 1 <= degree <= 8."""
    if not 1 <= degree <= 8:
        raise ValueError(f"degree must be in 1..8, got {degree}")
    reps = {canonical_form("".join(t))
            for t in itertools.product(LETTERS, repeat=degree)}
    return tuple(TraceWord(w) for w in sorted(reps))


def _letter_matrices(state: QubitQutritState) -> dict[str, np.ndarray]:
    return {"a": states.alpha_matrix(state),
            "b": states.beta_matrix(state),
            "g": states.gamma_matrix(state)}


def _eval_on(mats: dict[str, np.ndarray], word: str) -> complex:
    m = mats[word[0]]
    for ch in word[1:]:
        m = m @ mats[ch]
    return complex(np.trace(m))


def eval_trace_complex(word, state: QubitQutritState) -> complex:
    """Trace of the word's matrix product, imaginary part and all.

    Words of degree >= 5 whose class is not closed under reversal can have
    genuinely complex traces; real and imaginary parts are then separately
    invariant polynomials."""
    w = word.letters if isinstance(word, TraceWord) else canonical_form(word)
    return _eval_on(_letter_matrices(state), w)


def eval_trace(word, state: QubitQutritState, imag_tol: float = IMAG_TOL) -> float:
    """Real trace of the word's matrix product; a word whose trace picks up
    an imaginary part beyond imag_tol is flagged by raising, never truncated."""
    val = eval_trace_complex(word, state)
    if abs(val.imag) > imag_tol:
        w = word.letters if isinstance(word, TraceWord) else word
        raise ValueError(
            f"trace of word {w!r} has imaginary part {val.imag:.3e}")
    return val.real


def random_panel(seed: int = DEFAULT_PANEL_SEED,
                 size: int = DEFAULT_PANEL_SIZE) -> list[QubitQutritState]:
    """Seeded Ginibre state panel used by all identity checks."""
    return [states.random_density(seed + i) for i in range(size)]


@dataclass(frozen=True)
class KernelResult:
    degree: int
    words: tuple[TraceWord, ...]
    seed: int
    panel_size: int
    threshold: float


def _kernel_words(degree, panel, tol):
    mats = [_letter_matrices(s) for s in panel]
    out = []
    for w in enumerate_words(degree):
        if max(abs(_eval_on(m, w.letters)) for m in mats) < tol:
            out.append(w)
    return tuple(out)


def kernel_at_degree(degree: int, seed: int = DEFAULT_PANEL_SEED,
                     panel_size: int = DEFAULT_PANEL_SIZE,
                     tol: float = KERNEL_TOL) -> KernelResult:
    """Canonical words whose trace vanishes on the whole seeded panel."""
    if degree > 6:
        raise ValueError(f"kernel enumeration supports degree <= 6, got {degree}")
    panel = random_panel(seed, panel_size)
    return KernelResult(degree, _kernel_words(degree, panel, tol), seed,
                        panel_size, tol)


@lru_cache(maxsize=None)
def nonkernel_words(degree: int, seed: int = DEFAULT_PANEL_SEED) -> tuple[TraceWord, ...]:
    panel = random_panel(seed, DEFAULT_PANEL_SIZE)
    dead = set(_kernel_words(degree, panel, KERNEL_TOL))
    return tuple(w for w in enumerate_words(degree) if w not in dead)


# -- identity checks ------------------------------------------------------------

def _su3_constants() -> su_algebra.StructureConstants:
    return su_algebra.structure_constants("su3-gellmann")


def sign_relation_check(seed: int = DEFAULT_PANEL_SEED,
                        panel_size: int = DEFAULT_PANEL_SIZE,
                        tol: float = CHECK_TOL) -> bool:
    """tr(a b g g) = -tr(a g b g) across the panel."""
    return sign_relation_violation(seed, panel_size) < tol


def sign_relation_violation(seed: int = DEFAULT_PANEL_SEED,
                            panel_size: int = DEFAULT_PANEL_SIZE) -> float:
    worst = 0.0
    for s in random_panel(seed, panel_size):
        mats = _letter_matrices(s)
        worst = max(worst, abs(_eval_on(mats, "abgg") + _eval_on(mats, "agbg")))
    return float(worst)


def gamma3_formula_check(seed: int = DEFAULT_PANEL_SEED,
                         panel_size: int = DEFAULT_PANEL_SIZE,
                         tol: float = CHECK_TOL) -> bool:
    """tr(g^3) = -4 eps_ijk f_abc C_ia C_jb C_kc across the panel."""
    return gamma3_formula_violation(seed, panel_size) < tol


def gamma3_formula_violation(seed: int = DEFAULT_PANEL_SEED,
                             panel_size: int = DEFAULT_PANEL_SIZE) -> float:
    f3 = _su3_constants().f
    worst = 0.0
    for s in random_panel(seed, panel_size):
        lhs = eval_trace("ggg", s)
        rhs = -4.0 * np.einsum("ijk,abc,ia,jb,kc->", _EPSILON3, f3, s.C, s.C, s.C)
        worst = max(worst, abs(lhs - rhs))
    return float(worst)


def i004_identity_check(seed: int = DEFAULT_PANEL_SEED,
                        panel_size: int = DEFAULT_PANEL_SIZE,
                        tol: float = CHECK_TOL) -> bool:
    """Degree-(0,0,4) exchange identity between the d- and f-contracted
    correlation invariants:

        d_abc d_cpq G_ab G_pq = (2/3) f_apc f_cbq G_ab G_pq
                                - (1/3) [ (tr G)^2 - 2 tr(G^2) ],  G = C^T C.
    """
    return i004_identity_violation(seed, panel_size) < tol


def i004_identity_violation(seed: int = DEFAULT_PANEL_SEED,
                            panel_size: int = DEFAULT_PANEL_SIZE) -> float:
    sc = _su3_constants()
    worst = 0.0
    for s in random_panel(seed, panel_size):
        G = s.C.T @ s.C
        lhs = np.einsum("abc,cpq,ab,pq->", sc.d, sc.d, G, G)
        ff = np.einsum("apc,cbq,ab,pq->", sc.f, sc.f, G, G)
        rhs = (2.0 / 3.0) * ff - (np.trace(G) ** 2 - 2.0 * np.trace(G @ G)) / 3.0
        worst = max(worst, abs(lhs - rhs))
    return float(worst)


def multidegree_relations_check(seed: int = DEFAULT_PANEL_SEED,
                                panel_size: int = DEFAULT_PANEL_SIZE) -> dict[str, float]:
    """Max violations of the relations tying same-multidegree traces to
    explicit (a, b, C) contractions:

      (2,0,2): tr(a a g g) + tr(a g a g) = 8 a C C^T a
               tr(a a g g) = (1/6) tr(a a) tr(g g)
      (0,2,2): tr(b b g g) - (1/6) tr(b b) tr(g g)
                   = 4 d_{j1 j2 k} d_{k j3 j4} b_{j1} b_{j2} (C^T C)_{j3 j4}
               tr(b b g g) + tr(b g b g)
                   = 8 [ (2/3) b C^T C b
                         + d_{j1 j2 k} d_{k j3 j4} b_{j1} b_{j3} (C^T C)_{j2 j4} ]
    """
    d3 = _su3_constants().d
    worst = dict.fromkeys(("aagg_agag", "aagg_product", "bbgg_product",
                           "bbgg_bgbg"), 0.0)
    for s in random_panel(seed, panel_size):
        mats = _letter_matrices(s)
        G = s.C.T @ s.C
        aagg = _eval_on(mats, "aagg").real
        bbgg = _eval_on(mats, "bbgg").real
        taa = _eval_on(mats, "aa").real
        tbb = _eval_on(mats, "bb").real
        tgg = _eval_on(mats, "gg").real
        r = abs(aagg + _eval_on(mats, "agag").real
                - 8.0 * s.a @ (s.C @ s.C.T) @ s.a)
        worst["aagg_agag"] = max(worst["aagg_agag"], r)
        r = abs(aagg - taa * tgg / 6.0)
        worst["aagg_product"] = max(worst["aagg_product"], r)
        r = abs(bbgg - tbb * tgg / 6.0
                - 4.0 * np.einsum("abk,kcd,a,b,cd->", d3, d3, s.b, s.b, G))
        worst["bbgg_product"] = max(worst["bbgg_product"], r)
        r = abs(bbgg + _eval_on(mats, "bgbg").real
                - 8.0 * ((2.0 / 3.0) * s.b @ G @ s.b
                         + np.einsum("abk,kcd,a,c,bd->", d3, d3, s.b, s.b, G)))
        worst["bbgg_bgbg"] = max(worst["bbgg_bgbg"], r)
    return {k: float(v) for k, v in worst.items()}


def product_relation_violation(seed: int = DEFAULT_PANEL_SEED,
                               panel_size: int = DEFAULT_PANEL_SIZE) -> float:
    """tr(a a b b) = (1/6) tr(a a) tr(b b) across the panel."""
    worst = 0.0
    for s in random_panel(seed, panel_size):
        mats = _letter_matrices(s)
        worst = max(worst, abs(_eval_on(mats, "aabb").real
                               - _eval_on(mats, "aa").real
                               * _eval_on(mats, "bb").real / 6.0))
    return float(worst)


def casimir_decomposition_check(seed: int = DEFAULT_PANEL_SEED,
                                panel_size: int = DEFAULT_PANEL_SIZE) -> dict[str, float]:
    """Max violation of the expansions of 6 c_2, 6 c_3 and 6 c_4 over the
    trace scalars, against the trace-route Casimir values."""
    worst = {"c2": 0.0, "c3": 0.0, "c4": 0.0}
    for s in random_panel(seed, panel_size):
        mats = _letter_matrices(s)
        t = lambda w: _eval_on(mats, w).real
        c2, c3, c4, _, _ = casimir_positivity.casimirs_from_traces(s).raw
        worst["c2"] = max(worst["c2"], abs(6 * c2 - (t("aa") + t("bb") + t("gg"))))
        worst["c3"] = max(worst["c3"], abs(
            6 * c3 - (t("bbb") + t("ggg") + 3 * t("bgg") + 6 * t("abg"))))
        dec4 = ((t("aa") * (2 * t("bb") + t("gg"))
                 + 0.25 * t("bb") ** 2 - 0.5 * t("gg") ** 2
                 - t("bb") * t("gg")) / 3.0
                + 4 * (t("aggg") + t("bggg") + t("bbgg") + t("abgg")
                       + 3 * t("abbg"))
                + 2 * (t("agag") + t("bgbg"))
                + t("gggg"))
        worst["c4"] = max(worst["c4"], abs(6 * c4 - dec4))
    return {k: float(v) for k, v in worst.items()}


# -- ranks and independence -----------------------------------------------------

def _product_candidates(degree: int, seed: int) -> list[tuple[str, ...]]:
    """Multisets of lower-degree non-kernel words with total degree equal to
    degree (products of at least two invariants)."""
    pools = {d: [w.letters for w in nonkernel_words(d, seed)]
             for d in range(1, degree)}

    def partitions(total, max_part):
        if total == 0:
            yield ()
            return
        for part in range(min(total, max_part), 0, -1):
            for rest in partitions(total - part, part):
                yield (part,) + rest

    out = set()
    for part in partitions(degree, degree - 1):
        if len(part) < 2 or any(not pools[p] for p in part):
            continue
        sizes = {p: part.count(p) for p in set(part)}
        per_size = [list(itertools.combinations_with_replacement(pools[p], c))
                    for p, c in sorted(sizes.items())]
        for combo in itertools.product(*per_size):
            out.add(tuple(sorted(itertools.chain.from_iterable(combo))))
    return sorted(out)


def _numerical_rank(matrix: np.ndarray, eps: float = RANK_EPS) -> int:
    sing = np.linalg.svd(matrix, compute_uv=False)
    if sing.size == 0 or sing[0] == 0.0:
        return 0
    return int((sing > max(matrix.shape) * eps * sing[0]).sum())


def rank_at_degree(degree: int, include_products: bool,
                   seed: int = DEFAULT_PANEL_SEED) -> int:
    """Numerical rank of the evaluation matrix of all degree-d candidate
    invariants (non-kernel words, plus lower-degree products when asked) on
    at least twice as many seeded random states as candidates.

    Degrees 2 and 3 give 3 and 4, the full invariant counts.  At degree 4
    the candidates span only 14 of the 15 invariant dimensions: the trace
    identities tr(a a b b) = (1/6) tr(a a) tr(b b) and its alpha/gamma
    analogue make two of the products redundant, and the missing direction
    (correlation_quartic_ff) is not a trace word.  See
    degree4_completion_rank for the restored count."""
    if degree > 6:
        raise ValueError(f"rank evaluation supports degree <= 6, got {degree}")
    candidates: list[tuple[str, ...]] = [(w.letters,) for w in nonkernel_words(degree, seed)]
    if include_products:
        candidates += _product_candidates(degree, seed)
    needed = sorted({w for cand in candidates for w in cand})
    n_states = 2 * len(candidates)
    panel = [states.random_density(seed + 1000 + i) for i in range(n_states)]
    rows = []
    for s in panel:
        mats = _letter_matrices(s)
        values = {w: _eval_on(mats, w).real for w in needed}
        rows.append([np.prod([values[w] for w in cand]) for cand in candidates])
    return _numerical_rank(np.array(rows))


def correlation_quartic_ff(state: QubitQutritState) -> float:
    """f_apc f_cbq G_ab G_pq with G = C^T C, the f-contracted quartic in the
    correlation matrix.  This degree-(0,0,4) invariant lies outside the span
    of trace words and their products: together with them it completes the
    15-dimensional space of degree-4 invariants (see rank_at_degree)."""
    sc = _su3_constants()
    G = state.C.T @ state.C
    return float(np.einsum("apc,cbq,ab,pq->", sc.f, sc.f, G, G))


def correlation_quartic_dd(state: QubitQutritState) -> float:
    """d_abc d_cpq G_ab G_pq with G = C^T C; related to correlation_quartic_ff
    by the exchange identity verified in i004_identity_check."""
    sc = _su3_constants()
    G = state.C.T @ state.C
    return float(np.einsum("abc,cpq,ab,pq->", sc.d, sc.d, G, G))


def degree4_completion_rank(seed: int = DEFAULT_PANEL_SEED) -> int:
    """Rank of the degree-4 evaluation matrix when the f-contracted
    correlation quartic is adjoined to the trace words and products.

    Trace words plus products span a 14-dimensional subspace of the
    15-dimensional degree-4 invariant space; adjoining the quartic restores
    the full count, so this returns 15."""
    candidates = [(w.letters,) for w in nonkernel_words(4, seed)]
    candidates += _product_candidates(4, seed)
    needed = sorted({w for cand in candidates for w in cand})
    n_states = 2 * (len(candidates) + 1)
    panel = [states.random_density(seed + 1000 + i) for i in range(n_states)]
    rows = []
    for s in panel:
        mats = _letter_matrices(s)
        values = {w: _eval_on(mats, w).real for w in needed}
        row = [np.prod([values[w] for w in cand]) for cand in candidates]
        row.append(correlation_quartic_ff(s))
        rows.append(row)
    return _numerical_rank(np.array(rows))


def _params_to_state(vec: np.ndarray) -> QubitQutritState:
    return QubitQutritState(vec[:3], vec[3:11], vec[11:].reshape(3, 8))


def finite_difference_jacobian(words, point: np.ndarray,
                               step: float = JACOBIAN_STEP) -> np.ndarray:
    """Central-difference Jacobian, shape (35, len(words))."""
    J = np.zeros((35, len(words)))
    for p in range(35):
        up = point.copy()
        up[p] += step
        dn = point.copy()
        dn[p] -= step
        mu = _letter_matrices(_params_to_state(up))
        md = _letter_matrices(_params_to_state(dn))
        for j, w in enumerate(words):
            letters = w.letters if isinstance(w, TraceWord) else w
            J[p, j] = (_eval_on(mu, letters).real
                       - _eval_on(md, letters).real) / (2 * step)
    return J


def jacobian_rank(words, point: np.ndarray, step: float = JACOBIAN_STEP) -> int:
    return _numerical_rank(finite_difference_jacobian(words, point, step))


def independence_evidence(degree_cap: int, seed: int = DEFAULT_PANEL_SEED,
                          points: int = 3) -> int:
    """Max observed Jacobian rank of all non-kernel words of degree <=
    degree_cap at seeded random points (parameters uniform in +-0.3).

    The returned rank can never exceed 24, the dimension of the quotient of
    the su(6) adjoint orbit space by the local action (35 - 11)."""
    if not 1 <= degree_cap <= 8:
        raise ValueError(f"degree_cap must be in 1..8, got {degree_cap}")
    words = [w for d in range(1, degree_cap + 1) for w in nonkernel_words(d, seed)]
    rng = np.random.default_rng(seed)
    best = 0
    for _ in range(points):
        pt = rng.uniform(-JACOBIAN_PARAM_SCALE, JACOBIAN_PARAM_SCALE, 35)
        best = max(best, jacobian_rank(words, pt))
    return best


def listed_invariants_through_degree4() -> tuple[TraceWord, ...]:
    """The 3 + 4 + 8 invariants that are not products of lower-order ones."""
    return tuple(TraceWord(w) for w in
                 LISTED_DEGREE2 + LISTED_DEGREE3 + LISTED_DEGREE4)


# -- invariance under conjugation -------------------------------------------------

_CASIMIR_SELECTORS = ("C2", "C3", "C4", "C5", "C6")


def _evaluate_selector(selector, state: QubitQutritState) -> float:
    if isinstance(selector, TraceWord):
        return eval_trace(selector, state)
    if isinstance(selector, str) and selector in _CASIMIR_SELECTORS:
        k = int(selector[1])
        return casimir_positivity.casimirs_from_traces(state).normalized[k - 2]
    if isinstance(selector, str):
        return eval_trace(selector, state)
    raise ValueError(f"unknown invariant selector {selector!r}")


def invariance_test(selector, trials: int, seed: int = DEFAULT_PANEL_SEED,
                    unitary: str | None = None) -> float:
    """Max |value before - value after| over seeded random conjugations.

    Trace words are conjugated by local unitaries k1 x k2, Casimir selectors
    by global SU(6) unitaries; pass unitary="local"/"global" to override
    (e.g. a trace word under a global unitary is the negative control)."""
    if trials < 1:
        raise ValueError("trials must be >= 1")
    if unitary is None:
        unitary = "global" if (isinstance(selector, str)
                               and selector in _CASIMIR_SELECTORS) else "local"
    draw = (states.random_local_unitary if unitary == "local"
            else states.random_global_unitary)
    worst = 0.0
    for i in range(trials):
        s = states.random_density(seed + 7000 + i)
        u = draw(seed + 9000 + i)
        before = _evaluate_selector(selector, s)
        after = _evaluate_selector(selector, states.conjugate(s, u))
        worst = max(worst, abs(after - before))
    return worst
